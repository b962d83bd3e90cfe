#include "doctest.h"

#include <map>
#include <set>

#include "superpairs/classify.hpp"
#include "superpairs/satake.hpp"

using namespace qsp;

namespace {
SatakePair make(const std::string& dsl) {
  return SatakePair::build(parse_diagram(dsl));
}
}  // namespace

TEST_CASE("admissible examples") {
  // isotropic node attached to a single black A1
  SatakePair p1 = make("A: x o ; bullet: {2} ; tau: id");
  CHECK(p1.admissible());
  // two black A1 nodes flanking an isotropic node
  SatakePair p2 = make("A: o x o ; bullet: {1,3} ; tau: id");
  CHECK(p2.admissible());
  // the quasi-split two-node diagram with the swap
  SatakePair p3 = make("A: x x ; tau: (1 2)");
  CHECK(p3.admissible());
  // a black-isotropic-black shape with tau swapping the outer nodes
  SatakePair p4 = make("A: x o x ; bullet: {2} ; tau: (1 3)");
  CHECK(p4.admissible());
}

TEST_CASE("non-admissible examples") {
  // even white next to a black A1: condition 3 fails
  SatakePair q1 = make("A: o o ; bullet: {2} ; tau: id");
  CHECK_FALSE(q1.admissible());
  CHECK(q1.verdict().failed == std::vector<int>{3});
  // a lone isotropic node: condition 4 fails
  SatakePair q2 = make("A: x");
  CHECK_FALSE(q2.admissible());
  CHECK(q2.verdict().failed == std::vector<int>{4});
  // black pair requiring the swap, given the identity: condition 2 fails
  SatakePair q3 = make("A: x o o ; bullet: {2,3} ; tau: id");
  bool has2 = false;
  for (int c : q3.verdict().failed) has2 |= c == 2;
  CHECK(has2);
}

TEST_CASE("input errors are distinct from non-admissibility") {
  // tau moving a white to a black node
  CHECK_THROWS_AS(make("A: x o ; bullet: {2} ; tau: (1 2)"), satake_error);
  // odd black node without appendix mode
  CHECK_THROWS_AS(make("B: x b ; bullet: {2}"), satake_error);
}

TEST_CASE("theta order") {
  CHECK(make("A: x o ; bullet: {2}").theta_order() == 2);
  CHECK(make("A: o x o ; bullet: {1,3}").theta_order() == 4);
  CHECK(make("A: x x ; tau: (1 2)").theta_order() == 2);
}

TEST_CASE("ranks") {
  auto r1 = make("A: x x ; tau: (1 2)").ranks();
  CHECK(r1 == std::pair<int, int>{1, 0});
  // the gl(m|2n) diagram of the duality section at m=2, n=1
  auto r2 = make("A: o x o ; bullet: {3}").ranks();
  CHECK(r2.first == 1);
  SatakePair even = make("A: o");
  CHECK(even.ranks() == std::pair<int, int>{0, 1});
}

TEST_CASE("sign function") {
  // swapped isotropic pair with nontrivial rho pairing
  SatakePair p = make("A: x o x ; bullet: {2} ; tau: (1 3)");
  int i = 0, t = 2;
  long e = p.datum().pair(p.datum().simple(i), p.black().rho2v);
  CHECK(p.s_sign(i) * p.s_sign(t) ==
        ((e % 2 + 2) % 2 == 0 ? 1 : -1) * p.s_sign(t) * p.s_sign(t));
  CHECK(p.s_sign(i) == (e % 2 == 0 ? p.s_sign(t) : -p.s_sign(t)));
  for (int b : p.bullet()) CHECK(p.s_sign(b) == 1);
}

TEST_CASE("theta involution and fixed lattice") {
  for (auto dsl : {"A: x o ; bullet: {2}", "A: x o x ; bullet: {2} ; tau: (1 3)",
                   "C: x o o ; bullet: {2,3}", "D: o x x ; bullet: {1} ; tau: (2 3)"}) {
    SatakePair p = make(dsl);
    size_t r = p.datum().rank();
    // Theta^2 = 1 on X
    for (size_t j = 0; j < r; ++j) {
      XVec v = p.theta(p.theta(p.datum().simple(static_cast<int>(j))));
      CHECK(v == p.datum().simple(static_cast<int>(j)));
    }
    // when the black action of tau matches -w, Theta fixes every black
    // simple root (this is what puts K_beta into the i-Cartan part); the
    // restriction of -w alone permutes them by tau_bullet
    for (int b : p.bullet()) {
      CHECK(p.theta(p.datum().simple(b)) == p.datum().simple(b));
      XVec v = act_x(p.black().w_on_x, p.datum().simple(b));
      for (auto& x : v) x = -x;
      CHECK(v == p.datum().simple(p.black().tau_bullet[b]));
    }
    // fixed lattice vectors are fixed
    for (const auto& h : p.y_fixed_basis()) CHECK(p.in_y_fixed(h));
  }
}

TEST_CASE("exclusion condition") {
  CHECK_FALSE(make("A: o x o ; bullet: {1,3}").exclusion_clean());
  CHECK(make("A: x o ; bullet: {2}").exclusion_clean());
  CHECK(make("A: o x o ; bullet: {3}").exclusion_clean());
}

TEST_CASE("parameter validation") {
  SatakePair p = make("A: x x ; tau: (1 2)");
  ParamSet ps = default_params(p);
  CHECK(validate_parameters(p, ps).ok);
  // kappa outside I_ns is rejected
  ps.kappa[0] = Rat(1);
  auto v = validate_parameters(p, ps);
  CHECK_FALSE(v.ok);

  // distinct sigmas on a diagram where 4.4 applies: black A1 between two
  // swapped isotropic nodes has Theta(alpha_1) = -alpha_3, (a1,a3) = 0
  SatakePair q = make("A: x o x ; bullet: {2} ; tau: (1 3)");
  ParamSet qs = default_params(q);
  CHECK(validate_parameters(q, qs).ok);
  qs.sigma[0] = Rat::q(2);
  auto vq = validate_parameters(q, qs);
  CHECK_FALSE(vq.ok);

  // quasik mode rejects nonzero kappa
  SatakePair b = make("B: o b ; bullet: {}");
  // single even white with no black part: I_ns = {1}; kappa allowed normally
  ParamSet bs = default_params(b);
  bs.kappa[0] = Rat(1);
  CHECK(validate_parameters(b, bs).ok);
  CHECK_FALSE(validate_parameters(b, bs, /*quasik=*/true).ok);
}

TEST_CASE("wp parameter gate on the two-node pair") {
  // conditions (5.2)-(5.4) for the x-o pair need sigma_1 = zeta_4 q^{-1}
  SatakePair p = make("A: x o ; bullet: {2}");
  ParamSet ps = default_params(p);
  CHECK_FALSE(validate_parameters(p, ps, false, /*wp=*/true).ok);
  ps.sigma[0] = Rat::zeta(4) * Rat::q(-1);
  CHECK(validate_parameters(p, ps, false, /*wp=*/true).ok);
}

TEST_CASE("appendix shapes") {
  SatakePair p = make("B: x b ; bullet: {2} ; mode: appendixA");
  CHECK(p.admissible());
  CHECK(p.appendix_mode());
  CHECK(p.black().w_word == std::vector<int>{1});
  // the IV shape with the extra black head
  SatakePair q = make("B: o x o o b ; bullet: {1,3,4,5} ; mode: appendixA");
  CHECK(q.admissible());
  CHECK(q.black().w_word == std::vector<int>{0, 2, 3, 4, 3, 2});
  // a non-matching shape is rejected
  CHECK_THROWS_AS(make("B: x o b ; bullet: {3} ; mode: appendixA"),
                  satake_error);
}

TEST_CASE("admissibility invariant under relabeling") {
  SatakePair p = make("A: o x o ; bullet: {1,3} ; labels: 3 2 1");
  CHECK(p.admissible());
  SatakePair q = make("A: o x o ; bullet: {1,3}");
  CHECK(pair_key(p) == pair_key(q));
}

TEST_CASE("rank one classification: odd kind") {
  auto found = enumerate_rank1('o', 5);
  auto expected = expected_rank1('o', 5);
  // several data can realize the same table picture (e.g. the gl(2|2) and
  // osp(4|2) forms of the black-iso-black shape), so compare label sets
  std::set<std::tuple<std::string, int, long>> f, e;
  for (auto& x : found) f.insert({x.label, x.rank, x.alpha});
  for (auto& x : expected) e.insert({x.label, x.rank, x.alpha});
  for (auto& x : found) {
    CAPTURE(x.dsl);
    CHECK(x.label != "?");
  }
  CHECK(f == e);
}

TEST_CASE("rank one classification: even kind") {
  auto found = enumerate_rank1('e', 5);
  auto expected = expected_rank1('e', 5);
  std::set<std::tuple<std::string, int, long>> f, e;
  for (auto& x : found) f.insert({x.label, x.rank, x.alpha});
  for (auto& x : expected) e.insert({x.label, x.rank, x.alpha});
  for (auto& x : found) {
    CAPTURE(x.dsl);
    CHECK(x.label != "?");
  }
  CHECK(f == e);
}

TEST_CASE("theta orders across the odd rank one table") {
  auto found = enumerate_rank1('o', 5);
  std::set<std::string> order2, order4;
  for (auto& x : found) (x.theta_order == 2 ? order2 : order4).insert(x.label);
  std::set<std::string> expect2{"sAI", "sAIII11", "sAIV", "sBII",
                                "sCI", "sDI",     "sDIII", "sDIV"};
  CHECK(order2 == expect2);
  for (auto& lab : order2) CHECK_FALSE(order4.count(lab));
}

#include "doctest.h"

#include <set>

#include "superpairs/rootdata.hpp"
#include "superpairs/weyl.hpp"

using namespace qsp;

TEST_CASE("gl(m|2n) chain conventions") {
  // the chain with one odd node at position m and 2n odd basis directions:
  // d_j = 1 for j <= m and d_j = -1 afterwards
  for (int m : {1, 2, 3})
    for (int n : {1, 2}) {
      std::vector<int> signs(m, 1);
      signs.insert(signs.end(), 2 * n, -1);
      RootDatum dt = gl_chain(signs);
      CHECK(static_cast<int>(dt.rank()) == m + 2 * n - 1);
      for (int j = 0; j < m + 2 * n - 1; ++j) {
        CHECK(dt.d(j) == (j < m ? 1 : -1));
        CHECK(dt.node(j).isotropic == (j == m - 1));
        CHECK(dt.a(j, j) == (j == m - 1 ? 0 : 2));
      }
    }
}

TEST_CASE("isotropic nodes have a_ii = 0") {
  RootDatum dt = parse_datum("A: o x o x");
  for (size_t i = 0; i < dt.rank(); ++i)
    CHECK((dt.a(i, i) == 0) == dt.node(i).isotropic);
}

TEST_CASE("connected two-node isotropic chain") {
  // the quasi-split gl(1|2)-type datum: (alpha_1, alpha_2) = +-1, d = (1, -1)
  RootDatum dt = parse_datum("A: x x");
  CHECK(dt.node(0).isotropic);
  CHECK(dt.node(1).isotropic);
  CHECK(dt.d(0) == 1);
  CHECK(dt.d(1) == -1);
  CHECK(dt.form(0, 1) == 1);
  CHECK(dt.a(0, 1) == 1);
  CHECK(dt.a(1, 0) == -1);
}

TEST_CASE("three-node chain with even middle") {
  // x o x with black-able middle: Cartan ((0,1,0),(-1,2,-1),(0,-1,0)),
  // d = (1,-1,-1)
  RootDatum dt = parse_datum("A: x o x");
  CHECK(dt.d() == std::vector<long>{1, -1, -1});
  CHECK(dt.a(0, 1) == 1);
  CHECK(dt.a(1, 0) == -1);
  CHECK(dt.a(1, 2) == -1);
  CHECK(dt.a(2, 1) == -1);
  CHECK(dt.node(0).isotropic);
  CHECK_FALSE(dt.node(1).odd);
  CHECK(dt.node(2).isotropic);
}

TEST_CASE("form symmetry and parity additivity") {
  for (auto dsl : {"A: x o o", "B: x o b", "C: x o o", "D: o x o o",
                   "D: o x x", "DA: v1 ; alpha: 2", "F: v1", "G: v1"}) {
    RootDatum dt = parse_datum(dsl);
    for (size_t i = 0; i < dt.rank(); ++i)
      for (size_t j = 0; j < dt.rank(); ++j)
        CHECK(dt.form(i, j) == dt.form(j, i));
    // parity is additive on the lattice and matches decorations on simples
    XVec v = dt.zero_x();
    int par = 0;
    for (size_t i = 0; i < dt.rank(); ++i) {
      v[i] += 2;
      v[(i + 1) % dt.rank()] += 1;
      par = (par + (dt.node(i).odd ? 2 : 0) +
             (dt.node((i + 1) % dt.rank()).odd ? 1 : 0)) %
            2;
      CHECK(dt.parity(v) == par);
      CHECK(dt.parity(dt.simple(i)) == (dt.node(i).odd ? 1 : 0));
    }
  }
}

TEST_CASE("osp chains") {
  // B family: short tail is even or non-isotropic odd depending on letters
  RootDatum b1 = parse_datum("B: x b");  // letters e d
  CHECK(b1.node(0).isotropic);
  CHECK(b1.node(1).odd);
  CHECK_FALSE(b1.node(1).isotropic);
  CHECK(b1.a(1, 1) == 2);
  CHECK(b1.form(1, 1) == -2);
  CHECK(b1.d(1) == -1);
  CHECK(b1.form(0, 1) == 2);

  RootDatum b2 = parse_datum("B: x o");  // letters d e: even short tail
  CHECK_FALSE(b2.node(1).odd);
  CHECK(b2.form(1, 1) == 2);

  // classical so(2r+1)
  RootDatum bcl = parse_datum("B: o o o");
  CHECK(bcl.a(1, 2) == -1);
  CHECK(bcl.a(2, 1) == -2);

  // C family: long tail
  RootDatum c = parse_datum("C: x o o");
  CHECK(c.node(0).isotropic);
  CHECK(c.form(2, 2) == -4);
  CHECK(c.a(1, 2) == -2);
  CHECK(c.a(2, 1) == -1);

  // D family isotropic fork: double bond between the forks, opposite d signs
  RootDatum dde = parse_datum("D: o x x");
  CHECK(dde.node(1).isotropic);
  CHECK(dde.node(2).isotropic);
  CHECK(dde.form(1, 2) == -2);
  CHECK(dde.d(1) == -dde.d(2));
  CHECK(dde.form(0, 1) == dde.form(0, 2));

  // even fork
  RootDatum dee = parse_datum("D: x o o");
  CHECK(dee.form(1, 2) == 0);
  CHECK(dee.form(1, 1) == 2);
}

TEST_CASE("exceptional variant tables") {
  CHECK(f4_variant_count() == 5);
  CHECK(g3_variant_count() == 4);
  // every variant is a valid datum; parities and bond patterns vary
  std::set<int> f4_iso_counts, g3_iso_counts;
  for (int v = 1; v <= f4_variant_count(); ++v) {
    RootDatum dt = f4_datum(v);
    int iso = 0;
    for (auto& n : dt.nodes()) iso += n.isotropic;
    f4_iso_counts.insert(iso);
  }
  // one variant with a single isotropic node (distinguished), others with 2, 3
  CHECK(f4_iso_counts.count(1) == 1);
  bool g3_has_noniso = false;
  for (int v = 1; v <= g3_variant_count(); ++v) {
    RootDatum dt = g3_datum(v);
    for (auto& n : dt.nodes())
      if (n.odd && !n.isotropic) g3_has_noniso = true;
  }
  CHECK(g3_has_noniso);  // the variant with the non-isotropic odd node exists
}

TEST_CASE("G(3) variant with non-isotropic odd node matches the explicit data") {
  // simple roots eps, eps - (d1+d2)/2, d2 with norms -2, 0, 6 and
  // products (a1,a2) = -2, (a2,a3) = -3, (a1,a3) = 0
  bool found = false;
  for (int v = 1; v <= g3_variant_count(); ++v) {
    RootDatum dt = g3_datum(v);
    for (size_t i = 0; i < 3 && !found; ++i)
      for (size_t j = 0; j < 3 && !found; ++j)
        for (size_t k = 0; k < 3 && !found; ++k) {
          if (i == j || j == k || i == k) continue;
          if (dt.node(i).odd && !dt.node(i).isotropic && dt.form(i, i) == -2 &&
              dt.node(j).isotropic && dt.form(j, j) == 0 &&
              !dt.node(k).odd && dt.form(k, k) == 6 &&
              std::abs(dt.form(i, j)) == 2 && std::abs(dt.form(j, k)) == 3 &&
              dt.form(i, k) == 0)
            found = true;
        }
  }
  CHECK(found);
}

TEST_CASE("D(2|1;a) variants") {
  for (long alpha : {1L, 2L, 3L}) {
    RootDatum v1 = d21a_datum(1, alpha);
    CHECK(v1.node(0).isotropic);
    std::multiset<long> edges{v1.form(0, 1), v1.form(0, 2)};
    CHECK(edges == std::multiset<long>{-1, 1 + alpha});
    CHECK(v1.form(1, 2) == 0);

    RootDatum v2 = d21a_datum(2, alpha);
    std::multiset<long> edges2{v2.form(0, 1), v2.form(0, 2)};
    CHECK(edges2 == std::multiset<long>{-alpha, 1 + alpha});

    RootDatum v3 = d21a_datum(3, alpha);
    std::multiset<long> tri{v3.form(0, 1), v3.form(0, 2), v3.form(1, 2)};
    CHECK(tri == std::multiset<long>{1, alpha, -1 - alpha});
    for (int i = 0; i < 3; ++i) CHECK(v3.node(i).isotropic);
  }
}

TEST_CASE("weyl data on black subsystems") {
  // single A1 black node adjacent to an isotropic node: alpha_i(rho2v) = +-1
  {
    RootDatum dt = parse_datum("A: x o");
    BlackData bd = black_data(dt, {1});
    CHECK(bd.pos_roots.size() == 1);
    CHECK(bd.w_word == std::vector<int>{1});
    CHECK(std::abs(dt.pair(dt.simple(0), bd.rho2v)) == 1);
  }
  // two disconnected A1 nodes flanking an isotropic one: alpha_j(rho2v) = +-2
  {
    RootDatum dt = parse_datum("A: o x o");
    BlackData bd = black_data(dt, {0, 2});
    CHECK(bd.pos_roots.size() == 2);
    CHECK(std::abs(dt.pair(dt.simple(1), bd.rho2v)) == 2);
  }
  // an A2 black pair: -w swaps the two nodes (brute-force orbit check)
  {
    RootDatum dt = parse_datum("A: x o o");
    BlackData bd = black_data(dt, {1, 2});
    CHECK(bd.pos_roots.size() == 3);
    CHECK(bd.w_word.size() == 3);
    CHECK(bd.tau_bullet[1] == 2);
    CHECK(bd.tau_bullet[2] == 1);
    // w maps positive black roots to negatives
    for (const auto& root : bd.pos_roots) {
      XVec img = apply_word_x(dt, bd.w_word, root);
      bool negative = true;
      for (long x : img) negative = negative && x <= 0;
      CHECK(negative);
    }
  }
  // rank <= 5 sweep: word length equals the number of positive roots and the
  // longest element flips the positive system
  for (auto dsl : {"B: o o o o", "C: o o o o", "D: o o o o", "F4: .", "G2: ."}) {
    RootDatum dt = parse_datum(dsl);
    std::vector<int> all(dt.rank());
    for (size_t i = 0; i < dt.rank(); ++i) all[i] = static_cast<int>(i);
    BlackData bd = black_data(dt, all);
    CHECK(bd.w_word.size() == bd.pos_roots.size());
    for (const auto& root : bd.pos_roots) {
      XVec img = apply_word_x(dt, bd.w_word, root);
      for (long x : img) CHECK(x <= 0);
    }
    for (size_t j = 0; j < dt.rank(); ++j)
      CHECK(dt.pair(dt.simple(j), bd.rho2v) % 1 == 0);  // integral by storage
  }
}

TEST_CASE("fixed sublattice") {
  // theta = -r_2 on Y for the x-o pair: fixed lattice is spanned by h_2
  RootDatum dt = parse_datum("A: x o");
  BlackData bd = black_data(dt, {1});
  IMat theta(2, std::vector<long>(2, 0));
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) theta[i][j] = -bd.w_on_y[i][j];
  auto basis = fixed_sublattice(theta);
  REQUIRE(basis.size() == 1);
  CHECK((basis[0] == YVec{0, 1} || basis[0] == YVec{0, -1}));
}

TEST_CASE("DSL round trip and JSON") {
  for (auto dsl :
       {"A: x o ; bullet: {2} ; tau: id", "A: x x ; bullet: {} ; tau: (1 2)",
        "D: o x x ; bullet: {1} ; tau: (2 3)",
        "DA: v1 ; alpha: 2 ; bullet: {2,3} ; tau: id"}) {
    DiagramSpec spec = parse_diagram(dsl);
    std::string canon = canonical_dsl(spec);
    DiagramSpec spec2 = parse_diagram(canon);
    CHECK(spec2.datum.same_data(spec.datum));
    CHECK(spec2.bullet == spec.bullet);
    CHECK(spec2.tau == spec.tau);
    CHECK(canonical_dsl(spec2) == canon);
  }
  auto j = parse_datum("A: x o").to_json();
  CHECK(j["cartan"][0][0] == 0);
  CHECK(j["d"][1] == -1);
  CHECK(j["parity"][0] == 1);
}

TEST_CASE("bad input is rejected") {
  CHECK_THROWS_AS(parse_datum("Z: o o"), datum_error);
  CHECK_THROWS_AS(parse_datum("C: o o x"), datum_error);  // long tail not even
  CHECK_THROWS_AS(parse_datum("A: o b o"), datum_error);
  CHECK_THROWS_AS(parse_datum("D: o x o"), datum_error);  // mixed fork
  CHECK_THROWS_AS(d21a_datum(1, 0), datum_error);
}

#include "doctest.h"

#include <random>

#include "superpairs/qcoeff.hpp"

using namespace qsp;

namespace {

std::mt19937_64 rng(20240901);

Rat random_rat(int max_terms = 3, int max_deg = 4) {
  std::uniform_int_distribution<int> nterm(1, max_terms), deg(-max_deg, max_deg),
      coef(-5, 5);
  Rat r(0);
  int n = nterm(rng);
  for (int k = 0; k < n; ++k) r += Rat(coef(rng)) * Rat::q(deg(rng));
  return r;
}

}  // namespace

TEST_CASE("field arithmetic basics") {
  Rat q = Rat::q();
  Rat x = q - q.inverse();
  CHECK((x * x.inverse()).is_one());
  CHECK(q + q.inverse() == Rat::parse("(q^2+1)/q"));
  CHECK_THROWS_AS(Rat(0).inverse(), division_by_zero);
  CHECK(Rat::parse("(q - q^-1)*(q + q^-1)") == Rat::parse("q^2 - q^-2"));
}

TEST_CASE("field axioms on random samples") {
  for (int t = 0; t < 1000; ++t) {
    Rat a = random_rat(), b = random_rat(), c = random_rat();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
  }
}

TEST_CASE("quantum integers") {
  CHECK(quantum_int(1, 1).is_one());
  CHECK(quantum_int(2, 1) == Rat::parse("q + q^-1"));
  CHECK(quantum_int(3, -1) == Rat::parse("q^-2 + 1 + q^2"));
  // [a+1] = q^d [a] + q^{-d a}
  for (int d : {1, -1, 2, -2, 3, -3})
    for (long a = -20; a <= 20; ++a)
      CHECK(quantum_int(a + 1, d) ==
            Rat::q(d) * quantum_int(a, d) + Rat::q(static_cast<int>(-d * a)));
}

TEST_CASE("quantum binomials") {
  for (long a : {-3L, 0L, 2L, 5L})
    for (int d : {1, -2}) CHECK(quantum_binom(a, 0, d).is_one());
  CHECK(quantum_binom(2, 1, 1) == quantum_int(2, 1));
  CHECK(quantum_binom(3, 2, 1) == quantum_binom(3, 1, 1));
  // Pascal-type recurrence as an extra cross-check
  for (long a = 1; a <= 6; ++a)
    for (unsigned k = 1; k <= 4; ++k)
      CHECK(quantum_binom(a, k, 1) ==
            Rat::q(static_cast<int>(k)) * quantum_binom(a - 1, k, 1) +
                Rat::q(static_cast<int>(k - a)) * quantum_binom(a - 1, k - 1, 1));
}

TEST_CASE("specialization") {
  mpq_class two(2), three(3), one(1);
  CHECK(Rat::parse("q + q^-1").specialize(two) == Cyclo(mpq_class(5, 2)));
  CHECK_THROWS_AS(Rat::parse("1/(q-1)").specialize(one), pole_error);
  // expand (q^3 - q^-3)/(q - q^-1) at q=3 by the independent Laurent form
  // q^2 + 1 + q^-2 -> 9 + 1 + 1/9 = 91/9
  CHECK(quantum_int(3, 1).specialize(three) == Cyclo(mpq_class(91, 9)));
  // the defining quotient has a removable singularity at q=1: in lowest terms
  // there is no pole, and the value is the classical integer
  CHECK_FALSE(quantum_int(3, 1).has_pole_at(one));
  CHECK(quantum_int(3, 1).specialize(one) == Cyclo(3));
}

TEST_CASE("specialize is a ring homomorphism") {
  mpq_class pt(7, 3);
  for (int t = 0; t < 200; ++t) {
    Rat a = random_rat(), b = random_rat();
    if (a.has_pole_at(pt) || b.has_pole_at(pt)) continue;
    CHECK((a + b).specialize(pt) == a.specialize(pt) + b.specialize(pt));
    CHECK((a * b).specialize(pt) == a.specialize(pt) * b.specialize(pt));
  }
}

TEST_CASE("bar involution") {
  for (int t = 0; t < 200; ++t) {
    Rat a = random_rat(), b = random_rat();
    CHECK(a.bar().bar() == a);
    CHECK((a * b).bar() == a.bar() * b.bar());
    CHECK((a + b).bar() == a.bar() + b.bar());
  }
  CHECK(Rat::q(3).bar() == Rat::q(-3));
  CHECK(quantum_int(5, 2).bar() == quantum_int(5, 2));
}

TEST_CASE("cyclotomic values") {
  Cyclo i = Cyclo::zeta(4);
  CHECK(i * i == Cyclo(-1));
  CHECK(i.conj() == -i);
  CHECK((i * i.inverse()) == Cyclo(1));
  Cyclo z12 = Cyclo::zeta(12);
  Cyclo w = z12 * z12 * z12;  // a primitive 4th root
  CHECK(w == i);
  CHECK(Cyclo::zeta(8, 2) * Cyclo::zeta(8, 2) == Cyclo(-1));
  // bar conjugates zeta as well
  Rat zi = Rat::zeta(4);
  CHECK(zi.bar() == -zi);
  CHECK((zi * Rat::q()).bar() == -zi * Rat::q(-1));
}

TEST_CASE("string round trip") {
  for (int t = 0; t < 50; ++t) {
    Rat a = random_rat();
    CHECK(Rat::parse(a.str()) == a);
  }
  Rat z = Rat::zeta(4) * Rat::q(-2) + Rat(3);
  CHECK(Rat::parse(z.str()) == z);
}

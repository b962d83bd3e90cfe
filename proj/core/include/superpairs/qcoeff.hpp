// Exact arithmetic in K(q) where K = Q(zeta_N) is a cyclotomic extension of
// the rationals, plus quantum integers, factorials and binomials.
//
// The extension order N is a per-process session value: data that need roots
// of unity (odd symmetrizers, some parameter sets) enlarge it via
// field_order_require(); plain type-A computations stay in Q and take a fast
// path throughout.

#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsp {

struct field_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct division_by_zero : field_error {
  division_by_zero() : field_error("division by zero") {}
};
struct pole_error : field_error {
  pole_error() : field_error("specialization hits a pole") {}
};

// Session-wide cyclotomic order. Grows by lcm, never shrinks.
int field_order();
void field_order_require(int n);
void field_order_reset(int n = 1);  // tests only

// An element of Q(zeta_N): coefficient vector modulo the N-th cyclotomic
// polynomial. order_ == 1 means a plain rational (the fast path).
class Cyclo {
 public:
  Cyclo() : order_(1), c_(1, mpq_class(0)) {}
  Cyclo(long n) : order_(1), c_(1, mpq_class(n)) {}
  Cyclo(const mpq_class& r) : order_(1), c_(1, r) {}
  static Cyclo zeta(int order, long power = 1);

  int order() const { return order_; }
  bool is_zero() const;
  bool is_rational() const { return order_ == 1; }
  const mpq_class& rational() const;  // requires is_rational()

  Cyclo operator-() const;
  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  Cyclo inverse() const;  // throws division_by_zero on 0

  // Galois: zeta -> zeta^t, gcd(t, order) = 1.
  Cyclo galois(long t) const;
  Cyclo conj() const;  // zeta -> zeta^{-1}

  bool operator==(const Cyclo& o) const;
  bool operator!=(const Cyclo& o) const { return !(*this == o); }
  bool operator<(const Cyclo& o) const;  // canonical, for map keys

  std::string str() const;

 private:
  void canonicalize();  // drop to the smallest cyclotomic subfield we track
  Cyclo lifted(int m) const;  // order_ | m
  friend Cyclo add_impl(const Cyclo&, const Cyclo&, int sign);
  friend Cyclo mul_impl(const Cyclo&, const Cyclo&);

  int order_;
  std::vector<mpq_class> c_;
};

inline Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
inline Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
inline Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }

// Dense polynomial in q over K. Internal helper for Rat.
class QPoly {
 public:
  QPoly() {}
  explicit QPoly(Cyclo c) {
    if (!c.is_zero()) c_.push_back(std::move(c));
  }
  static QPoly monomial(const Cyclo& c, int deg);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 if 0
  const Cyclo& coeff(int i) const;
  const Cyclo& lead() const { return c_.back(); }

  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  QPoly operator-() const;
  QPoly mul_monomial(const Cyclo& c, int deg) const;

  // division with remainder by a nonzero divisor
  static void divmod(const QPoly& a, const QPoly& b, QPoly& quo, QPoly& rem);
  static QPoly gcd(QPoly a, QPoly b);  // monic gcd

  QPoly reversed() const;  // q -> 1/q times q^degree, coefficients conjugated
  Cyclo eval(const mpq_class& q0, long galois_t = 1) const;

  bool operator==(const QPoly& o) const { return c_ == o.c_; }
  bool operator<(const QPoly& o) const;
  std::string str() const;

 private:
  void trim();
  std::vector<Cyclo> c_;  // c_[i] is the q^i coefficient; no trailing zeros
};

// An element of K(q): numerator/denominator in lowest terms, denominator
// monic. Values compare and hash canonically.
class Rat {
 public:
  Rat() : num_(), den_(QPoly(Cyclo(1))) {}
  Rat(long n) : num_(QPoly(Cyclo(n))), den_(QPoly(Cyclo(1))) {}
  Rat(const Cyclo& c) : num_(QPoly(c)), den_(QPoly(Cyclo(1))) {}
  Rat(QPoly num, QPoly den);  // reduces

  static Rat q(int e = 1);  // q^e, e may be negative
  static Rat zeta(int order, long power = 1) { return Rat(Cyclo::zeta(order, power)); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }

  Rat operator-() const;
  Rat& operator+=(const Rat& o);
  Rat& operator-=(const Rat& o);
  Rat& operator*=(const Rat& o);
  Rat& operator/=(const Rat& o);  // throws division_by_zero
  Rat inverse() const;

  // bar involution: q -> q^{-1}, zeta -> zeta^{-1}
  Rat bar() const;

  // exact evaluation at q = q0 (with optional Galois twist zeta -> zeta^t);
  // throws pole_error if the denominator vanishes there.
  Cyclo specialize(const mpq_class& q0, long galois_t = 1) const;
  bool has_pole_at(const mpq_class& q0) const;

  bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const;

  std::string str() const;
  static Rat parse(const std::string& s);  // throws field_error on bad input

 private:
  QPoly num_, den_;
};

inline Rat operator+(Rat a, const Rat& b) { return a += b; }
inline Rat operator-(Rat a, const Rat& b) { return a -= b; }
inline Rat operator*(Rat a, const Rat& b) { return a *= b; }
inline Rat operator/(Rat a, const Rat& b) { return a /= b; }

// [a]_{q^d} = (q^{da} - q^{-da}) / (q^d - q^{-d})
Rat quantum_int(long a, int d);
// [k]_d!
Rat quantum_factorial(unsigned k, int d);
// [a choose k]_{q^d}
Rat quantum_binom(long a, unsigned k, int d);

}  // namespace qsp

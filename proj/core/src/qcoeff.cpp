#include "superpairs/qcoeff.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace qsp {

namespace {

int g_field_order = 1;

using QVec = std::vector<mpq_class>;  // dense poly over Q, used for Phi_N only

void qvec_trim(QVec& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

QVec qvec_mul(const QVec& a, const QVec& b) {
  if (a.empty() || b.empty()) return {};
  QVec r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  qvec_trim(r);
  return r;
}

// a mod b, b monic
QVec qvec_mod(QVec a, const QVec& b) {
  qvec_trim(a);
  while (a.size() >= b.size()) {
    mpq_class c = a.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    qvec_trim(a);
  }
  return a;
}

QVec qvec_divexact(QVec a, const QVec& b) {
  QVec quo(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
  qvec_trim(a);
  while (a.size() >= b.size()) {
    mpq_class c = a.back() / b.back();
    size_t shift = a.size() - b.size();
    quo[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    qvec_trim(a);
  }
  return quo;
}

const QVec& cyclotomic(int n) {
  static std::map<int, QVec> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1 divided by all proper cyclotomic factors
  QVec p(n + 1, mpq_class(0));
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = qvec_divexact(std::move(p), cyclotomic(d));
  return cache.emplace(n, std::move(p)).first->second;
}

int phi_degree(int n) { return static_cast<int>(cyclotomic(n).size()) - 1; }

}  // namespace

int field_order() { return g_field_order; }

void field_order_require(int n) {
  if (n <= 0) throw field_error("cyclotomic order must be positive");
  g_field_order = std::lcm(g_field_order, n);
}

void field_order_reset(int n) { g_field_order = std::max(1, n); }

// ---------------------------------------------------------------------------
// Cyclo

Cyclo Cyclo::zeta(int order, long power) {
  if (order <= 0) throw field_error("bad cyclotomic order");
  field_order_require(order);
  long p = power % order;
  if (p < 0) p += order;
  if (order == 1 || p == 0) return Cyclo(1);
  if (order == 2) return Cyclo(p == 1 ? -1 : 1);
  Cyclo z;
  z.order_ = order;
  z.c_.assign(phi_degree(order), mpq_class(0));
  QVec raw(static_cast<size_t>(p) + 1, mpq_class(0));
  raw[p] = 1;
  raw = qvec_mod(std::move(raw), cyclotomic(order));
  for (size_t i = 0; i < raw.size(); ++i) z.c_[i] = raw[i];
  z.canonicalize();
  return z;
}

bool Cyclo::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

const mpq_class& Cyclo::rational() const {
  if (order_ != 1) throw field_error("not a rational value");
  return c_[0];
}

void Cyclo::canonicalize() {
  if (order_ == 1) return;
  bool rat = true;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) {
      rat = false;
      break;
    }
  if (rat) {
    mpq_class v = c_.empty() ? mpq_class(0) : c_[0];
    order_ = 1;
    c_.assign(1, v);
  }
}

Cyclo Cyclo::lifted(int m) const {
  if (m == order_) return *this;
  if (m % order_ != 0) throw field_error("bad cyclotomic lift");
  int k = m / order_;
  QVec raw(static_cast<size_t>(phi_degree(order_) - 1) * k + 1, mpq_class(0));
  // order 1: phi degree is 1, c_ has the constant only
  raw.assign(static_cast<size_t>((c_.size() - 1) * k + 1), mpq_class(0));
  for (size_t i = 0; i < c_.size(); ++i) raw[i * k] = c_[i];
  raw = qvec_mod(std::move(raw), cyclotomic(m));
  Cyclo r;
  r.order_ = m;
  r.c_.assign(phi_degree(m), mpq_class(0));
  for (size_t i = 0; i < raw.size(); ++i) r.c_[i] = raw[i];
  return r;
}

Cyclo add_impl(const Cyclo& a, const Cyclo& b, int sign) {
  if (a.order_ == b.order_) {
    Cyclo r = a;
    for (size_t i = 0; i < r.c_.size(); ++i)
      r.c_[i] += sign > 0 ? b.c_[i] : -b.c_[i];
    r.canonicalize();
    return r;
  }
  int m = std::lcm(a.order_, b.order_);
  return add_impl(a.lifted(m), b.lifted(m), sign);
}

Cyclo mul_impl(const Cyclo& a, const Cyclo& b) {
  if (a.order_ == 1 || b.order_ == 1) {
    const Cyclo& scal = a.order_ == 1 ? a : b;
    const Cyclo& other = a.order_ == 1 ? b : a;
    Cyclo r = other;
    for (auto& x : r.c_) x *= scal.c_[0];
    r.canonicalize();
    return r;
  }
  int m = std::lcm(a.order_, b.order_);
  Cyclo x = a.lifted(m), y = b.lifted(m);
  QVec xa(x.c_.begin(), x.c_.end()), ya(y.c_.begin(), y.c_.end());
  QVec prod = qvec_mod(qvec_mul(xa, ya), cyclotomic(m));
  Cyclo r;
  r.order_ = m;
  r.c_.assign(phi_degree(m), mpq_class(0));
  for (size_t i = 0; i < prod.size(); ++i) r.c_[i] = prod[i];
  r.canonicalize();
  return r;
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) { return *this = add_impl(*this, o, 1); }
Cyclo& Cyclo::operator-=(const Cyclo& o) { return *this = add_impl(*this, o, -1); }
Cyclo& Cyclo::operator*=(const Cyclo& o) { return *this = mul_impl(*this, o); }

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw division_by_zero();
  if (order_ == 1) {
    Cyclo r;
    r.c_[0] = 1 / c_[0];
    return r;
  }
  // extended Euclid: u * this + v * Phi = 1
  QVec a(c_.begin(), c_.end());
  qvec_trim(a);
  QVec b = cyclotomic(order_);
  QVec u0{mpq_class(1)}, u1{};
  while (!b.empty()) {
    // a = s*b + r
    QVec r = a, s;
    qvec_trim(r);
    s.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, mpq_class(0));
    while (r.size() >= b.size() && !r.empty()) {
      mpq_class c = r.back() / b.back();
      size_t shift = r.size() - b.size();
      if (s.size() <= shift) s.resize(shift + 1, mpq_class(0));
      s[shift] += c;
      for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
      qvec_trim(r);
    }
    QVec u2 = u0;
    {
      QVec su1 = qvec_mul(s, u1);
      if (u2.size() < su1.size()) u2.resize(su1.size(), mpq_class(0));
      for (size_t i = 0; i < su1.size(); ++i) u2[i] -= su1[i];
      qvec_trim(u2);
    }
    a = b;
    b = r;
    u0 = u1;
    u1 = u2;
  }
  // a is the gcd (a nonzero constant, since Phi_N has no roots in the field
  // generated so far that divide our element... in fact gcd must be constant
  // because the element is invertible in the quotient field)
  if (a.size() != 1) throw field_error("cyclotomic inverse failed");
  mpq_class scale = 1 / a[0];
  QVec inv = qvec_mod(std::move(u0), cyclotomic(order_));
  Cyclo r;
  r.order_ = order_;
  r.c_.assign(phi_degree(order_), mpq_class(0));
  for (size_t i = 0; i < inv.size(); ++i) r.c_[i] = inv[i] * scale;
  r.canonicalize();
  return r;
}

Cyclo Cyclo::galois(long t) const {
  if (order_ == 1) return *this;
  long tt = t % order_;
  if (tt < 0) tt += order_;
  if (std::gcd(tt, static_cast<long>(order_)) != 1)
    throw field_error("galois exponent not coprime to the order");
  QVec raw(static_cast<size_t>(order_) * c_.size(), mpq_class(0));
  for (size_t i = 0; i < c_.size(); ++i) raw[(i * tt) % order_] += c_[i];
  raw = qvec_mod(std::move(raw), cyclotomic(order_));
  Cyclo r;
  r.order_ = order_;
  r.c_.assign(phi_degree(order_), mpq_class(0));
  for (size_t i = 0; i < raw.size(); ++i) r.c_[i] = raw[i];
  r.canonicalize();
  return r;
}

Cyclo Cyclo::conj() const { return galois(-1); }

bool Cyclo::operator==(const Cyclo& o) const {
  if (order_ == o.order_) return c_ == o.c_;
  int m = std::lcm(order_, o.order_);
  return lifted(m).c_ == o.lifted(m).c_;
}

bool Cyclo::operator<(const Cyclo& o) const {
  if (order_ != o.order_) {
    int m = std::lcm(order_, o.order_);
    Cyclo a = lifted(m), b = o.lifted(m);
    return a.c_ < b.c_;
  }
  return c_ < o.c_;
}

std::string Cyclo::str() const {
  if (order_ == 1) return c_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[i].get_str();
    if (i > 0) os << "*zeta" << order_ << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------------------
// QPoly

void QPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

QPoly QPoly::monomial(const Cyclo& c, int deg) {
  QPoly p;
  if (c.is_zero()) return p;
  p.c_.assign(deg + 1, Cyclo());
  p.c_[deg] = c;
  return p;
}

const Cyclo& QPoly::coeff(int i) const {
  static const Cyclo zero;
  if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
  return c_[i];
}

QPoly QPoly::operator+(const QPoly& o) const {
  QPoly r;
  r.c_.resize(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.c_.size(); ++i) {
    if (i < c_.size()) r.c_[i] += c_[i];
    if (i < o.c_.size()) r.c_[i] += o.c_[i];
  }
  r.trim();
  return r;
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

QPoly QPoly::operator*(const QPoly& o) const {
  QPoly r;
  if (is_zero() || o.is_zero()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, Cyclo());
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j].is_zero()) continue;
      r.c_[i + j] += c_[i] * o.c_[j];
    }
  }
  r.trim();
  return r;
}

QPoly QPoly::mul_monomial(const Cyclo& c, int deg) const {
  QPoly r;
  if (c.is_zero() || is_zero()) return r;
  r.c_.assign(c_.size() + deg, Cyclo());
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i + deg] = c_[i] * c;
  r.trim();
  return r;
}

void QPoly::divmod(const QPoly& a, const QPoly& b, QPoly& quo, QPoly& rem) {
  if (b.is_zero()) throw division_by_zero();
  quo = QPoly();
  rem = a;
  Cyclo lead_inv = b.lead().inverse();
  if (rem.degree() >= b.degree())
    quo.c_.assign(rem.degree() - b.degree() + 1, Cyclo());
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    Cyclo c = rem.lead() * lead_inv;
    int shift = rem.degree() - b.degree();
    quo.c_[shift] += c;
    for (size_t i = 0; i < b.c_.size(); ++i)
      rem.c_[shift + i] -= c * b.c_[i];
    rem.trim();
  }
  quo.trim();
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  // monic
  Cyclo inv = a.lead().inverse();
  for (auto& c : a.c_) c = c * inv;
  return a;
}

QPoly QPoly::reversed() const {
  QPoly r = *this;
  std::reverse(r.c_.begin(), r.c_.end());
  for (auto& c : r.c_) c = c.conj();
  r.trim();
  return r;
}

Cyclo QPoly::eval(const mpq_class& q0, long galois_t) const {
  Cyclo acc;
  for (size_t i = c_.size(); i-- > 0;) {
    acc *= Cyclo(q0);
    acc += galois_t == 1 ? c_[i] : c_[i].galois(galois_t);
  }
  return acc;
}

bool QPoly::operator<(const QPoly& o) const {
  if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

std::string QPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    std::string cs = c_[i].str();
    if (!first) os << " + ";
    first = false;
    bool wrap = cs.find_first_of("+-") != std::string::npos && cs.size() > 1 &&
                !(cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos);
    if (i == 0) {
      os << (wrap ? "(" + cs + ")" : cs);
    } else {
      if (cs == "1")
        ;
    else if (cs == "-1")
        os << "-";
      else
        os << (wrap ? "(" + cs + ")" : cs) << "*";
      os << "q";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Rat

Rat::Rat(QPoly num, QPoly den) {
  if (den.is_zero()) throw division_by_zero();
  if (num.is_zero()) {
    num_ = QPoly();
    den_ = QPoly(Cyclo(1));
    return;
  }
  QPoly g = QPoly::gcd(num, den);
  if (g.degree() > 0) {
    QPoly q, r;
    QPoly::divmod(num, g, q, r);
    num = q;
    QPoly::divmod(den, g, q, r);
    den = q;
  }
  Cyclo inv = den.lead().inverse();
  num_ = num.mul_monomial(inv, 0);
  den_ = den.mul_monomial(inv, 0);
}

Rat Rat::q(int e) {
  if (e >= 0) return Rat(QPoly::monomial(Cyclo(1), e), QPoly(Cyclo(1)));
  return Rat(QPoly(Cyclo(1)), QPoly::monomial(Cyclo(1), -e));
}

bool Rat::is_one() const {
  return den_.degree() == 0 && num_.degree() == 0 && !num_.is_zero() &&
         num_.coeff(0) == Cyclo(1);
}

Rat Rat::operator-() const {
  Rat r = *this;
  r.num_ = -r.num_;
  return r;
}

Rat& Rat::operator+=(const Rat& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  *this = Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  return *this;
}

Rat& Rat::operator-=(const Rat& o) { return *this += -o; }

Rat& Rat::operator*=(const Rat& o) {
  if (is_zero() || o.is_zero()) return *this = Rat();
  *this = Rat(num_ * o.num_, den_ * o.den_);
  return *this;
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw division_by_zero();
  *this = Rat(num_ * o.den_, den_ * o.num_);
  return *this;
}

Rat Rat::inverse() const {
  if (is_zero()) throw division_by_zero();
  return Rat(den_, num_);
}

Rat Rat::bar() const {
  if (is_zero()) return *this;
  Rat r(num_.reversed(), den_.reversed());
  int shift = den_.degree() - num_.degree();
  return r * Rat::q(shift);
}

Cyclo Rat::specialize(const mpq_class& q0, long galois_t) const {
  Cyclo d = den_.eval(q0, galois_t);
  if (d.is_zero()) throw pole_error();
  return num_.eval(q0, galois_t) * d.inverse();
}

bool Rat::has_pole_at(const mpq_class& q0) const {
  return den_.eval(q0).is_zero();
}

bool Rat::operator<(const Rat& o) const {
  if (!(num_ == o.num_)) return num_ < o.num_;
  return den_ < o.den_;
}

std::string Rat::str() const {
  if (is_zero()) return "0";
  std::string n = num_.str();
  if (den_.degree() == 0) return n;
  bool wrapn = n.find_first_of("+-", 1) != std::string::npos || n.find(' ') != std::string::npos;
  std::string d = den_.str();
  bool wrapd = d.find_first_of("+-*^", 1) != std::string::npos || d.find(' ') != std::string::npos;
  return (wrapn ? "(" + n + ")" : n) + "/" + (wrapd ? "(" + d + ")" : d);
}

// ---------------------------------------------------------------------------
// parser: integers, q, i, zetaN, + - * / ^ ( )

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& str) : s(str) {}

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw field_error("parse error at position " + std::to_string(pos) + ": " + msg);
  }

  Rat expr() {
    Rat r = eat('-') ? -term() : term();
    for (;;) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }

  Rat term() {
    Rat r = factor();
    for (;;) {
      if (eat('*'))
        r *= factor();
      else if (eat('/'))
        r /= factor();
      else
        return r;
    }
  }

  long integer() {
    skip();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return std::stol(s.substr(start, pos - start));
  }

  Rat factor() {
    if (eat('-')) return -factor();
    Rat base = atom();
    skip();
    if (eat('^')) {
      long e = integer();
      Rat r(1);
      Rat b = e < 0 ? base.inverse() : base;
      for (long k = 0; k < std::abs(e); ++k) r *= b;
      return r;
    }
    return base;
  }

  Rat atom() {
    skip();
    if (pos >= s.size()) fail("unexpected end");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Rat r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == 'q') {
      ++pos;
      return Rat::q();
    }
    if (c == 'i' && (pos + 1 == s.size() || !std::isalnum(static_cast<unsigned char>(s[pos + 1])))) {
      ++pos;
      return Rat::zeta(4, 1);
    }
    if (s.compare(pos, 4, "zeta") == 0) {
      pos += 4;
      long n = integer();
      return Rat::zeta(static_cast<int>(n), 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') return Rat(integer());
    fail("unexpected character");
  }
};

}  // namespace

Rat Rat::parse(const std::string& s) {
  Parser p(s);
  Rat r = p.expr();
  p.skip();
  if (p.pos != s.size()) p.fail("trailing input");
  return r;
}

// ---------------------------------------------------------------------------
// quantum integers

Rat quantum_int(long a, int d) {
  if (d == 0) throw field_error("zero symmetrizer");
  if (a == 0) return Rat(0);
  long n = std::abs(a);
  Rat r(0);
  for (long k = 0; k < n; ++k) r += Rat::q(static_cast<int>(d * (n - 1 - 2 * k)));
  return a > 0 ? r : -r;
}

Rat quantum_factorial(unsigned k, int d) {
  Rat r(1);
  for (unsigned t = 1; t <= k; ++t) r *= quantum_int(t, d);
  return r;
}

Rat quantum_binom(long a, unsigned k, int d) {
  Rat r(1);
  for (unsigned t = 0; t < k; ++t) r *= quantum_int(a - static_cast<long>(t), d);
  return r / quantum_factorial(k, d);
}

}  // namespace qsp

#include "superpairs/weyl.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <set>

namespace qsp {

XVec reflect_x(const RootDatum& dt, int i, const XVec& v) {
  // r_i(v) = v - v(h_i) alpha_i
  long c = 0;
  for (size_t j = 0; j < dt.rank(); ++j) c += v[j] * dt.a(i, j);
  XVec r = v;
  r[i] -= c;
  return r;
}

YVec reflect_y(const RootDatum& dt, int i, const YVec& v) {
  // r_i(h) = h - alpha_i(h) h_i
  long c = 0;
  for (size_t j = 0; j < dt.rank(); ++j) c += v[j] * dt.a(j, i);
  YVec r = v;
  r[i] -= c;
  return r;
}

XVec apply_word_x(const RootDatum& dt, const std::vector<int>& word, XVec v) {
  for (size_t k = word.size(); k-- > 0;) v = reflect_x(dt, word[k], v);
  return v;
}

YVec apply_word_y(const RootDatum& dt, const std::vector<int>& word, YVec v) {
  for (size_t k = word.size(); k-- > 0;) v = reflect_y(dt, word[k], v);
  return v;
}

namespace {

bool is_positive(const XVec& v) {
  bool nonzero = false;
  for (long x : v) {
    if (x < 0) return false;
    if (x > 0) nonzero = true;
  }
  return nonzero;
}

constexpr size_t kRootCap = 4096;

void fill_black_common(const RootDatum& dt, BlackData& bd) {
  // enumerate positive roots of the black subsystem with their coroots
  std::set<XVec> seen;
  std::vector<std::pair<XVec, YVec>> pool;
  for (int i : bd.bullet) {
    XVec a = dt.simple(i);
    YVec h(dt.rank(), 0);
    h[i] = 1;
    if (seen.insert(a).second) pool.emplace_back(a, h);
  }
  for (size_t k = 0; k < pool.size(); ++k) {
    auto [root, coroot] = pool[k];
    for (int i : bd.bullet) {
      XVec r = reflect_x(dt, i, root);
      if (!is_positive(r)) continue;
      if (seen.insert(r).second) {
        pool.emplace_back(r, reflect_y(dt, i, coroot));
        if (pool.size() > kRootCap)
          throw weyl_error("black subsystem is not of finite type");
      }
    }
  }
  bd.rho2 = dt.zero_x();
  bd.rho2v = dt.zero_y();
  for (auto& [root, coroot] : pool) {
    bd.pos_roots.push_back(root);
    bd.pos_coroots.push_back(coroot);
    for (size_t j = 0; j < dt.rank(); ++j) {
      bd.rho2[j] += root[j];
      bd.rho2v[j] += coroot[j];
    }
  }
}

void fill_word_action(const RootDatum& dt, BlackData& bd) {
  size_t r = dt.rank();
  bd.w_on_x.assign(r, std::vector<long>(r, 0));
  bd.w_on_y.assign(r, std::vector<long>(r, 0));
  for (size_t j = 0; j < r; ++j) {
    XVec img = apply_word_x(dt, bd.w_word, dt.simple(j));
    for (size_t i = 0; i < r; ++i) bd.w_on_x[i][j] = img[i];
    YVec h(r, 0);
    h[j] = 1;
    YVec imh = apply_word_y(dt, bd.w_word, h);
    for (size_t i = 0; i < r; ++i) bd.w_on_y[i][j] = imh[i];
  }
  // induced permutation on black nodes where -w(alpha_i) is again a black
  // simple (always the case for a genuine longest element; the appendix
  // substitute words may move some black simples elsewhere, marked by -1)
  bd.tau_bullet.assign(r, -1);
  for (size_t i = 0; i < r; ++i) bd.tau_bullet[i] = static_cast<int>(i);
  for (int i : bd.bullet) {
    XVec img = apply_word_x(dt, bd.w_word, dt.simple(i));
    for (auto& x : img) x = -x;
    int target = -1;
    for (int j : bd.bullet)
      if (img == dt.simple(j)) target = j;
    bd.tau_bullet[i] = target;
  }
}

}  // namespace

BlackData black_data(const RootDatum& dt, const std::vector<int>& bullet) {
  BlackData bd;
  bd.bullet = bullet;
  std::sort(bd.bullet.begin(), bd.bullet.end());
  for (int i : bd.bullet)
    if (dt.node(i).isotropic)
      throw weyl_error("black nodes must be non-isotropic");
  fill_black_common(dt, bd);

  // longest element by greedy descent at the smallest index: extend the word
  // w = r_{i_1} ... r_{i_k} on the right while w(alpha_i) stays positive
  std::vector<int> word;
  auto image = [&](int i) { return apply_word_x(dt, word, dt.simple(i)); };
  bool progress = true;
  while (progress) {
    progress = false;
    for (int i : bd.bullet) {
      if (is_positive(image(i))) {
        word.push_back(i);
        progress = true;
        break;
      }
    }
    if (word.size() > bd.pos_roots.size())
      throw weyl_error("descent did not terminate");
  }
  if (word.size() != bd.pos_roots.size())
    throw weyl_error("reduced word length mismatch");
  bd.w_word = word;
  fill_word_action(dt, bd);
  return bd;
}

BlackData black_data_with_word(const RootDatum& dt,
                               const std::vector<int>& bullet,
                               const std::vector<int>& word) {
  BlackData bd;
  bd.bullet = bullet;
  std::sort(bd.bullet.begin(), bd.bullet.end());
  bd.w_word = word;
  fill_black_common(dt, bd);
  fill_word_action(dt, bd);
  return bd;
}

XVec act_x(const IMat& m, const XVec& v) {
  size_t r = v.size();
  XVec out(r, 0);
  for (size_t j = 0; j < r; ++j) {
    if (v[j] == 0) continue;
    for (size_t i = 0; i < r; ++i) out[i] += m[i][j] * v[j];
  }
  return out;
}

YVec act_y(const IMat& m, const YVec& v) { return act_x(m, v); }

std::vector<YVec> fixed_sublattice(const IMat& theta_on_y) {
  // kernel of (theta - id) over Q, scaled to primitive integer vectors; the
  // kernel lattice of an integer matrix is saturated, so this is a Z-basis
  size_t r = theta_on_y.size();
  std::vector<std::vector<mpq_class>> m(r, std::vector<mpq_class>(r));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j)
      m[i][j] = mpq_class(theta_on_y[i][j] - (i == j ? 1 : 0));
  std::vector<int> pivot_col;
  size_t row = 0;
  for (size_t col = 0; col < r && row < r; ++col) {
    size_t p = row;
    while (p < r && m[p][col] == 0) ++p;
    if (p == r) continue;
    std::swap(m[p], m[row]);
    mpq_class inv = 1 / m[row][col];
    for (size_t j = 0; j < r; ++j) m[row][j] *= inv;
    for (size_t i = 0; i < r; ++i) {
      if (i == row || m[i][col] == 0) continue;
      mpq_class f = m[i][col];
      for (size_t j = 0; j < r; ++j) m[i][j] -= f * m[row][j];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }
  std::vector<bool> is_pivot(r, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<YVec> basis;
  for (size_t free = 0; free < r; ++free) {
    if (is_pivot[free]) continue;
    std::vector<mpq_class> v(r, 0);
    v[free] = 1;
    for (size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = -m[k][free];
    mpz_class lcm = 1;
    for (auto& x : v) {
      mpz_class den = x.get_den();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
      lcm = lcm / g * den;
    }
    YVec iv(r, 0);
    mpz_class content = 0;
    for (size_t j = 0; j < r; ++j) {
      mpq_class scaled = v[j] * lcm;
      iv[j] = mpz_class(scaled.get_num()).get_si();
      mpz_class a = abs(mpz_class(scaled.get_num()));
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), a.get_mpz_t());
    }
    if (content > 1)
      for (auto& x : iv) x /= content.get_si();
    basis.push_back(iv);
  }
  return basis;
}

}  // namespace qsp

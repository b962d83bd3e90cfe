#include "superpairs/satake.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace qsp {

namespace {

// appendix shapes: a chain 0..n whose tail is a non-isotropic odd node inside
// the black set, with a single white head node, optionally preceded by one
// extra black even node (the IV shapes). Returns the substitute braid word
// head..tail..head (with the extra node in front when present), or nullopt.
std::optional<std::vector<int>> appendix_word(const RootDatum& dt,
                                              const std::vector<int>& bullet,
                                              const std::vector<int>& white) {
  if (white.size() != 1) return std::nullopt;
  int w = white[0];
  int tail = -1;
  for (int i : bullet)
    if (dt.node(i).odd && !dt.node(i).isotropic) {
      if (tail >= 0) return std::nullopt;  // at most one odd black node
      tail = i;
    }
  if (tail < 0) return std::nullopt;
  // simple path from the white head to the tail through black nodes
  auto adjacent = [&](int i, int j) { return i != j && dt.form(i, j) != 0; };
  std::vector<int> chain;
  {
    std::vector<int> prev(dt.rank(), -2);
    std::vector<int> stack{w};
    prev[w] = -1;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      if (cur == tail) break;
      for (size_t j = 0; j < dt.rank(); ++j) {
        int jj = static_cast<int>(j);
        if (prev[jj] != -2 || !adjacent(cur, jj)) continue;
        if (std::find(bullet.begin(), bullet.end(), jj) == bullet.end())
          continue;
        prev[jj] = cur;
        stack.push_back(jj);
      }
    }
    if (prev[tail] == -2) return std::nullopt;
    for (int cur = tail; cur != -1; cur = prev[cur]) chain.push_back(cur);
    std::reverse(chain.begin(), chain.end());
  }
  std::set<int> used(chain.begin(), chain.end());
  // remaining black nodes: none (III) or a single even node attached to the
  // white head (IV)
  std::vector<int> extra;
  for (int i : bullet)
    if (!used.count(i)) extra.push_back(i);
  if (extra.size() > 1) return std::nullopt;
  if (extra.size() == 1 &&
      (dt.node(extra[0]).odd || !adjacent(extra[0], w)))
    return std::nullopt;
  std::vector<int> word;
  if (!extra.empty()) word.push_back(extra[0]);
  for (size_t k = 1; k < chain.size(); ++k) word.push_back(chain[k]);
  for (size_t k = chain.size() - 1; k-- > 1;) word.push_back(chain[k]);
  return word;
}

}  // namespace

SatakePair SatakePair::build(const DiagramSpec& spec) {
  SatakePair p;
  p.datum_ = spec.datum;
  p.bullet_ = spec.bullet;
  p.tau_ = spec.tau;
  p.appendix_ = spec.appendix_mode;
  size_t r = p.datum_.rank();
  std::sort(p.bullet_.begin(), p.bullet_.end());
  p.black_mask_.assign(r, false);
  for (int i : p.bullet_) {
    if (i < 0 || i >= static_cast<int>(r)) throw satake_error("bad black node");
    p.black_mask_[i] = true;
  }
  for (size_t i = 0; i < r; ++i)
    if (!p.black_mask_[i]) p.white_.push_back(static_cast<int>(i));

  // structural input checks
  if (p.tau_.size() != r) throw satake_error("tau size mismatch");
  for (size_t i = 0; i < r; ++i) {
    int t = p.tau_[i];
    if (t < 0 || t >= static_cast<int>(r) ||
        p.tau_[t] != static_cast<int>(i))
      throw satake_error("tau is not an involution");
    if (p.black_mask_[i] != p.black_mask_[t])
      throw satake_error("tau does not stabilize the black set");
  }
  if (!p.datum_.parity_preserved(p.tau_))
    throw satake_error("tau does not preserve parities");
  if (!p.datum_.form_preserved(p.tau_))
    throw satake_error("tau does not preserve the bilinear form");

  for (int i : p.bullet_) {
    const Node& n = p.datum_.node(i);
    if (n.isotropic) throw satake_error("isotropic nodes cannot be black");
    if (n.odd && !p.appendix_)
      throw satake_error("odd black nodes need appendixA mode");
  }

  // harmonize the symmetrizer signs of swapped isotropic orbits: the datum
  // convention requires d_i = -d_{tau i} there (the form is untouched)
  {
    IMat a = p.datum_.cartan();
    std::vector<long> d = p.datum_.d();
    bool changed = false;
    for (size_t i = 0; i < r; ++i) {
      int t = p.tau_[i];
      if (static_cast<int>(i) < t && p.datum_.node(i).odd &&
          p.datum_.node(i).isotropic && d[i] == d[t]) {
        d[t] = -d[t];
        for (size_t j = 0; j < r; ++j) a[t][j] = -a[t][j];
        changed = true;
      }
    }
    if (changed) {
      RootDatum harmonized(p.datum_.nodes(), a, d, p.datum_.family());
      harmonized.set_dsl(p.datum_.dsl());
      p.datum_ = harmonized;
    }
  }

  // black data: either genuine Weyl data or the appendix substitute word
  if (p.appendix_) {
    auto word = appendix_word(p.datum_, p.bullet_, p.white_);
    if (!word) throw satake_error("diagram is not of an appendix shape");
    p.t_word_ = *word;
    p.blackdata_ = black_data_with_word(p.datum_, p.bullet_, p.t_word_);
  } else {
    p.blackdata_ = black_data(p.datum_, p.bullet_);
    p.t_word_ = p.blackdata_.w_word;
  }

  // Theta = -w o tau on X (plain permutation) and on Y (parity-twisted)
  p.theta_x_.assign(r, std::vector<long>(r, 0));
  p.theta_y_.assign(r, std::vector<long>(r, 0));
  for (size_t j = 0; j < r; ++j) {
    XVec img = act_x(p.blackdata_.w_on_x, p.datum_.simple(p.tau_[j]));
    for (size_t i = 0; i < r; ++i) p.theta_x_[i][j] = -img[i];
    YVec h(r, 0);
    long sgn = (p.tau_[j] != static_cast<int>(j) && p.datum_.node(j).odd) ? -1 : 1;
    h[p.tau_[j]] = sgn;
    YVec imh = act_y(p.blackdata_.w_on_y, h);
    for (size_t i = 0; i < r; ++i) p.theta_y_[i][j] = -imh[i];
  }
  p.yfix_ = fixed_sublattice(p.theta_y_);

  // sign function
  p.s_sign_.assign(r, 1);
  for (size_t i = 0; i < r; ++i) {
    int t = p.tau_[i];
    if (t > static_cast<int>(i) && !p.black_mask_[i]) {
      long e = p.datum_.pair(p.datum_.simple(static_cast<int>(i)),
                             p.blackdata_.rho2v);
      p.s_sign_[t] = (e % 2 == 0) ? 1 : -1;
    }
  }

  // I_ns
  for (int i : p.white_) {
    if (p.tau_[i] != i) continue;
    bool ok = true;
    for (int j : p.bullet_)
      if (p.datum_.a(j, i) != 0) ok = false;  // alpha_i(h_j) = a_{ji}
    if (ok) p.ins_.push_back(i);
  }

  // admissibility conditions (tau^2 = id was enforced above, so condition 1
  // holds whenever construction succeeds)
  AdmissibilityVerdict v;
  if (p.appendix_) {
    // the appendix shapes are admissible by fiat; anything else was rejected
    v.admissible = true;
  } else {
    for (int i : p.bullet_)
      if (p.tau_[i] != p.blackdata_.tau_bullet[i]) {
        v.failed.push_back(2);
        break;
      }
    bool c3 = true, c4 = true;
    for (int j : p.white_) {
      if (p.tau_[j] != j) continue;
      long e = p.datum_.pair(p.datum_.simple(j), p.blackdata_.rho2v);
      if (p.datum_.node(j).isotropic) {
        if (e == 0) c4 = false;
      } else {
        if (e % 2 != 0) c3 = false;
      }
    }
    if (!c3) v.failed.push_back(3);
    if (!c4) v.failed.push_back(4);
    v.admissible = v.failed.empty();
  }
  p.verdict_ = v;
  return p;
}

bool SatakePair::in_y_fixed(const YVec& h) const {
  return act_y(theta_y_, h) == h;
}

long SatakePair::s_sign(const XVec& v) const {
  long e = 0;
  for (size_t i = 0; i < v.size(); ++i)
    if (s_sign_[i] < 0) e += v[i];
  return (e % 2 == 0) ? 1 : -1;
}

int SatakePair::theta_order() const {
  for (int i : white_) {
    if (tau_[i] != i || !datum_.node(i).odd) continue;
    long e = datum_.pair(datum_.simple(i), blackdata_.rho2v);
    if (e % 2 == 0) return 4;
  }
  return 2;
}

std::pair<int, int> SatakePair::ranks() const {
  int odd = 0, even = 0;
  for (int i : white_) {
    if (tau_[i] < i) continue;  // one representative per orbit
    if (datum_.node(i).isotropic)
      ++odd;
    else
      ++even;
  }
  return {odd, even};
}

bool SatakePair::exclusion_clean() const {
  // black - isotropic white - black subpath
  for (int j : white_) {
    if (!datum_.node(j).isotropic) continue;
    int black_neighbors = 0;
    for (int i : bullet_)
      if (datum_.form(i, j) != 0) ++black_neighbors;
    if (black_neighbors >= 2) return false;
  }
  // the sFII shape: an F-family pair whose single white node is isotropic and
  // carries a triple bond
  if (datum_.family() == "F" && white_.size() == 1) {
    int w = white_[0];
    if (datum_.node(w).isotropic) {
      for (size_t j = 0; j < datum_.rank(); ++j)
        if (j != static_cast<size_t>(w) && std::abs(datum_.form(w, j)) == 3)
          return false;
    }
  }
  return true;
}

std::string SatakePair::dsl() const {
  DiagramSpec spec;
  spec.datum = datum_;
  spec.bullet = bullet_;
  spec.tau = tau_;
  spec.appendix_mode = appendix_;
  return canonical_dsl(spec);
}

nlohmann::ordered_json SatakePair::to_json() const {
  nlohmann::ordered_json j;
  j["dsl"] = dsl();
  j["datum"] = datum_.to_json();
  j["bullet"] = nlohmann::ordered_json::array();
  for (int i : bullet_) j["bullet"].push_back(datum_.node(i).label);
  j["admissible"] = verdict_.admissible;
  j["failed_conditions"] = verdict_.failed;
  if (verdict_.admissible) {
    auto [ro, re] = ranks();
    j["real_odd_rank"] = ro;
    j["real_even_rank"] = re;
    j["theta_order"] = theta_order();
    j["exclusion_clean"] = exclusion_clean();
  }
  return j;
}

// ---------------------------------------------------------------------------
// parameters

const Rat& ParamSet::sigma_at(int i) const {
  static const Rat one(1);
  auto it = sigma.find(i);
  return it == sigma.end() ? one : it->second;
}

const Rat& ParamSet::kappa_at(int i) const {
  static const Rat zero(0);
  auto it = kappa.find(i);
  return it == kappa.end() ? zero : it->second;
}

Rat ParamSet::sigma_bar_at(int i) const {
  auto it = sigma_bar.find(i);
  if (it != sigma_bar.end()) return it->second;
  return sigma_at(i).bar();
}

ParamSet default_params(const SatakePair& pair) {
  ParamSet p;
  for (int i : pair.white()) {
    p.sigma[i] = Rat(1);
    p.kappa[i] = Rat(0);
  }
  return p;
}

ParamSet params_from_json(const SatakePair& pair, const nlohmann::json& j) {
  ParamSet p = default_params(pair);
  auto read = [&](const char* key, std::map<int, Rat>& target) {
    if (!j.contains(key)) return;
    for (auto& [lab, val] : j.at(key).items()) {
      int i = pair.datum().index_of_label(lab);
      if (i < 0) throw satake_error("unknown node label in params: " + lab);
      target[i] = Rat::parse(val.get<std::string>());
    }
  };
  read("sigma", p.sigma);
  read("kappa", p.kappa);
  read("sigma_bar", p.sigma_bar);
  for (int i : pair.white())
    if (p.sigma_at(i).is_zero()) throw satake_error("sigma must be nonzero");
  return p;
}

nlohmann::ordered_json params_to_json(const ParamSet& p) {
  nlohmann::ordered_json j;
  j["sigma"] = nlohmann::ordered_json::object();
  j["kappa"] = nlohmann::ordered_json::object();
  for (auto& [i, v] : p.sigma) j["sigma"][std::to_string(i + 1)] = v.str();
  for (auto& [i, v] : p.kappa) j["kappa"][std::to_string(i + 1)] = v.str();
  return j;
}

ParamVerdict validate_parameters(const SatakePair& pair, const ParamSet& p,
                                 bool quasik_mode, bool wp_mode) {
  ParamVerdict v;
  const RootDatum& dt = pair.datum();
  auto fail = [&](const std::string& which) {
    v.ok = false;
    v.failures.push_back(which);
  };

  // kappa support condition
  for (int i : pair.white()) {
    const Rat& k = p.kappa_at(i);
    if (k.is_zero()) continue;
    bool allowed = std::find(pair.i_ns().begin(), pair.i_ns().end(), i) !=
                   pair.i_ns().end();
    if (allowed)
      for (int kk : pair.i_ns()) {
        if (kk == i) continue;
        if (dt.a(kk, i) % 2 != 0) allowed = false;  // alpha_i(h_k) = a_{ki}
      }
    if (!allowed) fail("4.2");
    if (quasik_mode) fail("kappa0");
  }

  for (int i : pair.white()) {
    int t = pair.tau(i);
    if (t != i) {
      bool cond44 = dt.form(i, t) == 0 &&
                    pair.theta(dt.simple(i)) ==
                        [&] {
                          XVec m = dt.simple(t);
                          for (auto& x : m) x = -x;
                          return m;
                        }();
      if (cond44 && !(p.sigma_at(i) == p.sigma_at(t))) fail("4.4");
    }
    if (dt.node(i).odd && dt.form(i, t) % 2 == 0 &&
        !(p.sigma_at(i) == p.sigma_at(t)))
      fail("4.5");
  }

  if (wp_mode) {
    for (int i : pair.white()) {
      int t = pair.tau(i);
      if (!p.kappa_at(i).is_zero() &&
          !(p.sigma_at(i) == Rat::q(-static_cast<int>(dt.d(i)))))
        fail("5.2");
      // sigma_i = (-1)^{alpha_i(2rho_v)} q^{-(alpha_i, w alpha_{tau i} + 2rho)}
      //           q_{tau i} q_i^{-1} bar(sigma_{tau i})
      long sgn_e = dt.pair(dt.simple(i), pair.black().rho2v);
      XVec wat = act_x(pair.black().w_on_x, dt.simple(t));
      for (size_t k = 0; k < wat.size(); ++k) wat[k] += pair.black().rho2[k];
      long expo = dt.form(dt.simple(i), wat);
      Rat rhs = Rat(sgn_e % 2 == 0 ? 1 : -1) * Rat::q(static_cast<int>(-expo)) *
                Rat::q(static_cast<int>(dt.d(t))) *
                Rat::q(static_cast<int>(-dt.d(i))) * p.sigma_bar_at(t);
      if (!(p.sigma_at(i) == rhs)) fail("5.3");
      if (!(p.sigma_at(i).inverse() == p.sigma_bar_at(i))) fail("5.4");
    }
  }
  return v;
}

}  // namespace qsp

// Super Satake diagrams: a bicolored root datum with an involution, the
// derived black Weyl data, the lattice involution Theta with its fixed
// sublattices, admissibility verdicts, sign function, rank profile, and
// parameter validation.

#pragma once

#include "superpairs/qcoeff.hpp"
#include "superpairs/rootdata.hpp"
#include "superpairs/weyl.hpp"

namespace qsp {

struct satake_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AdmissibilityVerdict {
  bool admissible = false;
  std::vector<int> failed;  // failed condition numbers among 1..4
};

class SatakePair {
 public:
  // throws satake_error on structural input errors (tau not an involution or
  // not structure-preserving, bullet not stable, illegal black nodes);
  // non-admissibility is a verdict, not an error
  static SatakePair build(const DiagramSpec& spec);

  const RootDatum& datum() const { return datum_; }
  const std::vector<int>& bullet() const { return bullet_; }
  const std::vector<int>& white() const { return white_; }
  bool is_black(int i) const { return black_mask_[i]; }
  int tau(int i) const { return tau_[i]; }
  const std::vector<int>& tau() const { return tau_; }
  bool appendix_mode() const { return appendix_; }
  const BlackData& black() const { return blackdata_; }

  const AdmissibilityVerdict& verdict() const { return verdict_; }
  bool admissible() const { return verdict_.admissible; }

  const IMat& theta_x() const { return theta_x_; }
  const IMat& theta_y() const { return theta_y_; }
  XVec theta(const XVec& v) const { return act_x(theta_x_, v); }
  const std::vector<YVec>& y_fixed_basis() const { return yfix_; }
  bool in_y_fixed(const YVec& h) const;

  int s_sign(int i) const { return s_sign_[i]; }
  long s_sign(const XVec& v) const;  // multiplicative extension, +-1
  const std::vector<int>& i_ns() const { return ins_; }

  // 2 iff alpha_i(2 rho_bullet^vee) is odd for every tau-fixed odd white i
  int theta_order() const;
  std::pair<int, int> ranks() const;  // (real odd rank, real even rank)
  // no sFII shape and no black-isotropic-black subpath
  bool exclusion_clean() const;

  std::string dsl() const;
  nlohmann::ordered_json to_json() const;

 private:
  RootDatum datum_;
  std::vector<int> bullet_, white_;
  std::vector<bool> black_mask_;
  std::vector<int> tau_;
  bool appendix_ = false;
  std::vector<int> t_word_;  // the braid word standing in for w_bullet
  BlackData blackdata_;
  IMat theta_x_, theta_y_;
  std::vector<YVec> yfix_;
  std::vector<int> s_sign_;
  std::vector<int> ins_;
  AdmissibilityVerdict verdict_;
};

// --- parameters --------------------------------------------------------------

struct ParamSet {
  std::map<int, Rat> sigma;      // per white node, nonzero
  std::map<int, Rat> kappa;      // per white node
  std::map<int, Rat> sigma_bar;  // declared bar images (default: bar of value)

  const Rat& sigma_at(int i) const;
  const Rat& kappa_at(int i) const;
  Rat sigma_bar_at(int i) const;
};

ParamSet default_params(const SatakePair& pair);  // sigma = 1, kappa = 0
ParamSet params_from_json(const SatakePair& pair, const nlohmann::json& j);
nlohmann::ordered_json params_to_json(const ParamSet& p);

struct ParamVerdict {
  bool ok = true;
  std::vector<std::string> failures;  // "4.2", "4.4", "4.5", "kappa0", "5.2"...
};

// quasik_mode additionally requires kappa = 0; wp_mode adds the three
// anti-involution compatibility constraints
ParamVerdict validate_parameters(const SatakePair& pair, const ParamSet& p,
                                 bool quasik_mode = false, bool wp_mode = false);

}  // namespace qsp

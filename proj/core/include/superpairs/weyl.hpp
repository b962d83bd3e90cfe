// Data attached to a black subset of nodes: the positive subsystem with
// coroots, the longest element as a deterministic reduced word, its action on
// the full lattices, rho-pairings, and the induced involution on black nodes.

#pragma once

#include <optional>

#include "superpairs/rootdata.hpp"

namespace qsp {

struct weyl_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BlackData {
  std::vector<int> bullet;  // sorted node indices
  std::vector<XVec> pos_roots;
  std::vector<YVec> pos_coroots;
  std::vector<int> w_word;  // reduced word for the longest element
  IMat w_on_x;              // column j = image of alpha_j (all nodes)
  IMat w_on_y;              // column j = image of h_j
  XVec rho2;                // sum of positive black roots  (= 2 rho_bullet)
  YVec rho2v;               // sum of positive black coroots (= 2 rho^vee)
  std::vector<int> tau_bullet;  // full-size permutation; -w maps alpha_i to
                                // alpha_{tau_bullet[i]} for black i, identity
                                // elsewhere
};

// Reflection at node i on X resp. Y: v - <pairing> * simple.
XVec reflect_x(const RootDatum& dt, int i, const XVec& v);
YVec reflect_y(const RootDatum& dt, int i, const YVec& v);

XVec apply_word_x(const RootDatum& dt, const std::vector<int>& word, XVec v);
YVec apply_word_y(const RootDatum& dt, const std::vector<int>& word, YVec v);

// Requires the black subsystem to be of finite type (enumeration bounded);
// throws weyl_error otherwise. Black nodes must be non-isotropic.
BlackData black_data(const RootDatum& dt, const std::vector<int>& bullet);

// Appendix-mode替代 word: for a chain 0..n with a non-isotropic odd tail the
// role of the longest element is played by r_1 ... r_{n-1} r_n r_{n-1} ... r_1
// (optionally preceded by an extra disconnected black node). The word is in
// node indices; the associated BlackData carries the word's action and the
// black subsystem data needed elsewhere.
BlackData black_data_with_word(const RootDatum& dt,
                               const std::vector<int>& bullet,
                               const std::vector<int>& word);

// matrix-vector helpers for the stored actions
XVec act_x(const IMat& m, const XVec& v);
YVec act_y(const IMat& m, const YVec& v);

// integer kernel basis of (theta - id) on Y, saturated
std::vector<YVec> fixed_sublattice(const IMat& theta_on_y);

}  // namespace qsp

// Root data for the basic Lie superalgebra families: index set with parities
// and isotropy flags, Cartan matrix, symmetrizers, bilinear form, and the
// diagram DSL used by the CLI.
//
// Conventions. a[i][j] = alpha_j(h_i) and (alpha_i, alpha_j) = d_i a[i][j]
// with d_i nonzero integers, gcd |d_i| = 1. a_ii = 0 exactly at isotropic odd
// nodes; all other nodes have a_ii = 2 (non-isotropic odd nodes are handled
// like short even nodes, with the form rescaled so that symmetrizers stay
// integral).

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace qsp {

struct datum_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using XVec = std::vector<long>;  // root lattice element, simple-root coords
using YVec = std::vector<long>;  // coroot lattice element, simple-coroot coords
using IMat = std::vector<std::vector<long>>;

struct Node {
  std::string label;
  bool odd = false;
  bool isotropic = false;  // implies odd
};

class RootDatum {
 public:
  RootDatum() {}
  RootDatum(std::vector<Node> nodes, IMat cartan, std::vector<long> d,
            std::string family = "");

  size_t rank() const { return nodes_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int i) const { return nodes_[i]; }
  const IMat& cartan() const { return a_; }
  long a(int i, int j) const { return a_[i][j]; }
  long d(int i) const { return d_[i]; }
  const std::vector<long>& d() const { return d_; }
  const std::string& family() const { return family_; }

  long form(int i, int j) const { return d_[i] * a_[i][j]; }
  long form(const XVec& x, const XVec& y) const;
  // alpha(h) for alpha in X, h in Y
  long pair(const XVec& alpha, const YVec& h) const;
  int parity(const XVec& x) const;  // 0 or 1
  bool parity_preserved(const std::vector<int>& perm) const;
  bool form_preserved(const std::vector<int>& perm) const;

  int index_of_label(const std::string& label) const;  // -1 if absent

  XVec simple(int i) const;
  XVec zero_x() const { return XVec(rank(), 0); }
  YVec zero_y() const { return YVec(rank(), 0); }
  // embed X into Y: alpha_i -> d_i h_i (so that K_{alpha_i} = K_{h_i}^{d_i})
  YVec embed(const XVec& x) const;

  nlohmann::ordered_json to_json() const;
  std::string dsl() const { return dsl_; }
  void set_dsl(const std::string& s) { dsl_ = s; }

  bool same_data(const RootDatum& o) const {
    return a_ == o.a_ && d_ == o.d_ && parities_equal(o);
  }

 private:
  bool parities_equal(const RootDatum& o) const;
  void validate() const;

  std::vector<Node> nodes_;
  IMat a_;
  std::vector<long> d_;
  std::string family_;
  std::string dsl_;
};

// --- family constructors ----------------------------------------------------

// gl chain from a +-1 sign sequence of length rank+1 (+1 even basis vector)
RootDatum gl_chain(const std::vector<int>& signs);

enum class OspTail {
  Short,   // B row: last simple root is the short basis vector itself
  Long,    // C-style: last simple root is 2*delta
  ForkEE,  // D row: even fork
  ForkDE,  // D row: isotropic double-bonded fork (letters ..., delta, eps)
};

// osp chain from a letter sequence over {'e','d'} (eps = even direction,
// delta = odd direction) and a tail kind; letters.size() == rank for Short and
// Long, rank for forks as well (the last two letters feed the fork).
RootDatum osp_chain(const std::vector<char>& letters, OspTail tail);

// exceptional families; variants are indexed in a deterministic order
// computed from the odd-reflection orbit of a fixed simple system
int f4_variant_count();
RootDatum f4_datum(int variant);  // 1-based
int g3_variant_count();
RootDatum g3_datum(int variant);
RootDatum d21a_datum(int variant, long alpha);  // variants 1,2,3

// purely even classical data (for real even rank classification)
RootDatum classical_f4();
RootDatum classical_g2();

// --- diagram DSL -------------------------------------------------------------
//
//   entry  := family ':' body (';' clause)*
//   family := A | B | C | D | OSPL | F | G | DA | F4 | G2
//   body   := decorations (o = even, x = isotropic odd, b = non-isotropic odd)
//             or 'v<k>' for F/G/DA variants
//   clause := 'bullet:' '{' labels '}' | 'tau:' ('id' | cycles) |
//             'alpha:' int | 'mode:' 'appendixA' | 'labels:' names
//
// Examples:  "A: x o ; bullet: {2} ; tau: id"
//            "A: x x ; tau: (1 2)"
//            "DA: v1 ; alpha: 2 ; bullet: {2,3}"
struct DiagramSpec {
  RootDatum datum;
  std::vector<int> bullet;          // node indices
  std::vector<int> tau;             // permutation of node indices
  bool appendix_mode = false;
};

DiagramSpec parse_diagram(const std::string& dsl);
RootDatum parse_datum(const std::string& dsl);  // datum part only

std::string canonical_dsl(const DiagramSpec& spec);

}  // namespace qsp

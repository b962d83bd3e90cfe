#include "superpairs/rootdata.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace qsp {

namespace {

long igcd(long a, long b) { return std::gcd(std::abs(a), std::abs(b)); }

std::vector<std::string> default_labels(size_t r) {
  std::vector<std::string> l;
  for (size_t i = 0; i < r; ++i) l.push_back(std::to_string(i + 1));
  return l;
}

}  // namespace

RootDatum::RootDatum(std::vector<Node> nodes, IMat cartan, std::vector<long> d,
                     std::string family)
    : nodes_(std::move(nodes)), a_(std::move(cartan)), d_(std::move(d)),
      family_(std::move(family)) {
  validate();
}

void RootDatum::validate() const {
  size_t r = nodes_.size();
  if (a_.size() != r || d_.size() != r) throw datum_error("size mismatch");
  long g = 0;
  for (size_t i = 0; i < r; ++i) {
    if (a_[i].size() != r) throw datum_error("cartan not square");
    if (d_[i] == 0) throw datum_error("zero symmetrizer");
    g = igcd(g, d_[i]);
    if (nodes_[i].isotropic && !nodes_[i].odd)
      throw datum_error("isotropic node must be odd");
    if ((a_[i][i] == 0) != nodes_[i].isotropic)
      throw datum_error("a_ii = 0 iff isotropic");
    if (!nodes_[i].isotropic && a_[i][i] != 2)
      throw datum_error("a_ii = 2 at non-isotropic nodes");
    for (size_t j = 0; j < r; ++j)
      if (d_[i] * a_[i][j] != d_[j] * a_[j][i])
        throw datum_error("not symmetrizable");
  }
  if (r > 0 && g != 1) throw datum_error("gcd of symmetrizers is not 1");
}

long RootDatum::form(const XVec& x, const XVec& y) const {
  long s = 0;
  for (size_t i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < rank(); ++j) s += x[i] * y[j] * form(i, j);
  }
  return s;
}

long RootDatum::pair(const XVec& alpha, const YVec& h) const {
  long s = 0;
  for (size_t i = 0; i < rank(); ++i) {
    if (h[i] == 0) continue;
    for (size_t j = 0; j < rank(); ++j) s += h[i] * alpha[j] * a_[i][j];
  }
  return s;
}

int RootDatum::parity(const XVec& x) const {
  long s = 0;
  for (size_t i = 0; i < rank(); ++i)
    if (nodes_[i].odd) s += x[i];
  return static_cast<int>(((s % 2) + 2) % 2);
}

bool RootDatum::parity_preserved(const std::vector<int>& perm) const {
  for (size_t i = 0; i < rank(); ++i) {
    if (nodes_[i].odd != nodes_[perm[i]].odd) return false;
    if (nodes_[i].isotropic != nodes_[perm[i]].isotropic) return false;
  }
  return true;
}

bool RootDatum::form_preserved(const std::vector<int>& perm) const {
  for (size_t i = 0; i < rank(); ++i)
    for (size_t j = 0; j < rank(); ++j)
      if (form(i, j) != form(perm[i], perm[j])) return false;
  return true;
}

int RootDatum::index_of_label(const std::string& label) const {
  for (size_t i = 0; i < rank(); ++i)
    if (nodes_[i].label == label) return static_cast<int>(i);
  return -1;
}

XVec RootDatum::simple(int i) const {
  XVec x(rank(), 0);
  x[i] = 1;
  return x;
}

YVec RootDatum::embed(const XVec& x) const {
  YVec h(rank(), 0);
  for (size_t i = 0; i < rank(); ++i) h[i] = x[i] * d_[i];
  return h;
}

bool RootDatum::parities_equal(const RootDatum& o) const {
  if (rank() != o.rank()) return false;
  for (size_t i = 0; i < rank(); ++i)
    if (nodes_[i].odd != o.nodes_[i].odd ||
        nodes_[i].isotropic != o.nodes_[i].isotropic)
      return false;
  return true;
}

nlohmann::ordered_json RootDatum::to_json() const {
  nlohmann::ordered_json j;
  j["family"] = family_;
  j["rank"] = rank();
  j["labels"] = nlohmann::ordered_json::array();
  j["parity"] = nlohmann::ordered_json::array();
  j["isotropic"] = nlohmann::ordered_json::array();
  for (const auto& n : nodes_) {
    j["labels"].push_back(n.label);
    j["parity"].push_back(n.odd ? 1 : 0);
    j["isotropic"].push_back(n.isotropic);
  }
  j["cartan"] = a_;
  j["d"] = d_;
  return j;
}

// ---------------------------------------------------------------------------
// gl and osp chains

RootDatum gl_chain(const std::vector<int>& signs) {
  size_t r = signs.size() - 1;
  if (signs.size() < 2) throw datum_error("gl chain needs rank >= 1");
  for (int s : signs)
    if (s != 1 && s != -1) throw datum_error("signs must be +-1");
  std::vector<Node> nodes(r);
  IMat B(r, std::vector<long>(r, 0));
  std::vector<long> d(r);
  auto labels = default_labels(r);
  for (size_t i = 0; i < r; ++i) {
    bool odd = signs[i] != signs[i + 1];
    nodes[i] = Node{labels[i], odd, odd};
    B[i][i] = signs[i] + signs[i + 1];
    if (i + 1 < r) B[i][i + 1] = B[i + 1][i] = -signs[i + 1];
    d[i] = signs[i];
  }
  IMat a(r, std::vector<long>(r, 0));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) a[i][j] = B[i][j] / d[i];
  RootDatum dt(std::move(nodes), std::move(a), std::move(d), "A");
  std::string body;
  for (size_t i = 0; i < r; ++i)
    body += (dt.node(i).isotropic ? "x " : "o ");
  if (!body.empty()) body.pop_back();
  dt.set_dsl("A: " + body);
  return dt;
}

RootDatum osp_chain(const std::vector<char>& letters, OspTail tail) {
  size_t r = letters.size();
  if (r < 1) throw datum_error("empty osp chain");
  for (char c : letters)
    if (c != 'e' && c != 'd') throw datum_error("letters must be e or d");
  bool has_e = std::count(letters.begin(), letters.end(), 'e') > 0;

  // basis norms: Short uses (+2, -2); Long/forks use (+1, -1); purely even
  // data get the positive sign
  auto val = [&](size_t i) -> long {
    long unit = (tail == OspTail::Short) ? 2 : 1;
    if (!has_e) return unit;  // classical sp / osp(1|2n)-free positive data
    return letters[i] == 'e' ? unit : -unit;
  };

  std::vector<Node> nodes(r);
  IMat B(r, std::vector<long>(r, 0));
  std::vector<long> d(r);
  auto labels = default_labels(r);
  auto chain_node = [&](size_t i) {
    bool odd = letters[i] != letters[i + 1];
    nodes[i] = Node{labels[i], odd, odd};
    B[i][i] = val(i) + val(i + 1);
    B[i][i + 1] = B[i + 1][i] = -val(i + 1);
    d[i] = odd ? (val(i) > 0 ? 1 : -1) : B[i][i] / 2;
  };

  switch (tail) {
    case OspTail::Short: {
      for (size_t i = 0; i + 1 < r; ++i) chain_node(i);
      bool odd = letters[r - 1] == 'd';
      nodes[r - 1] = Node{labels[r - 1], odd, false};
      B[r - 1][r - 1] = val(r - 1);
      if (r >= 2) B[r - 2][r - 1] = B[r - 1][r - 2] = -val(r - 1);
      d[r - 1] = val(r - 1) / 2;
      break;
    }
    case OspTail::Long: {
      if (letters[r - 1] != 'd')
        throw datum_error("long tail requires a d letter last");
      if (r == 1) return gl_chain({1, 1});  // sp(2) = sl(2)
      for (size_t i = 0; i + 2 < r; ++i) chain_node(i);
      {
        size_t i = r - 2;
        bool odd = letters[i] != letters[i + 1];
        nodes[i] = Node{labels[i], odd, odd};
        B[i][i] = val(i) + val(i + 1);
        d[i] = odd ? (val(i) > 0 ? 1 : -1) : B[i][i] / 2;
      }
      nodes[r - 1] = Node{labels[r - 1], false, false};
      B[r - 1][r - 1] = 4 * val(r - 1);
      B[r - 2][r - 1] = B[r - 1][r - 2] = -2 * val(r - 1);
      d[r - 1] = 2 * val(r - 1);
      break;
    }
    case OspTail::ForkEE:
    case OspTail::ForkDE: {
      if (r < 2) throw datum_error("fork needs rank >= 2");
      bool de = tail == OspTail::ForkDE;
      if (de && !(letters[r - 2] == 'd' && letters[r - 1] == 'e'))
        throw datum_error("isotropic fork requires letters ... d e");
      if (!de && !(letters[r - 2] == 'e' && letters[r - 1] == 'e'))
        throw datum_error("even fork requires letters ... e e");
      for (size_t i = 0; i + 2 < r; ++i) chain_node(i);
      long u = val(r - 2), v = val(r - 1);
      for (size_t f : {r - 2, r - 1}) {
        nodes[f] = Node{labels[f], de, de};
        B[f][f] = u + v;
      }
      B[r - 2][r - 1] = B[r - 1][r - 2] = u - v;
      if (r >= 3) {
        B[r - 3][r - 2] = B[r - 2][r - 3] = -u;
        B[r - 3][r - 1] = B[r - 1][r - 3] = -u;
      }
      if (de) {
        d[r - 2] = u > 0 ? 1 : -1;
        d[r - 1] = -d[r - 2];
      } else {
        d[r - 2] = d[r - 1] = (u + v) / 2;
      }
      break;
    }
  }

  IMat a(r, std::vector<long>(r, 0));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) {
      if (B[i][j] % d[i] != 0) throw datum_error("non-integral cartan entry");
      a[i][j] = B[i][j] / d[i];
    }
  const char* fam = tail == OspTail::Short  ? "B"
                    : tail == OspTail::Long ? "C"
                                            : "D";
  if (tail == OspTail::Long && std::count(letters.begin(), letters.end(), 'e') > 1)
    fam = "OSPL";
  RootDatum dt(std::move(nodes), std::move(a), std::move(d), fam);
  std::string body;
  for (size_t i = 0; i < r; ++i) {
    if (dt.node(i).isotropic)
      body += "x ";
    else if (dt.node(i).odd)
      body += "b ";
    else
      body += "o ";
  }
  if (!body.empty()) body.pop_back();
  dt.set_dsl(std::string(fam) + ": " + body);
  return dt;
}

// ---------------------------------------------------------------------------
// exceptional families via odd reflections in an explicit realization

namespace {

struct Realization {
  std::vector<mpq_class> diag;            // basis form, true scale
  std::vector<std::vector<long>> roots2;  // doubled coordinates, all roots
  std::vector<bool> odd;
};

mpq_class rform(const Realization& R, const std::vector<long>& u2,
                const std::vector<long>& v2) {
  mpq_class s = 0;
  for (size_t i = 0; i < R.diag.size(); ++i) s += R.diag[i] * u2[i] * v2[i];
  return s / 4;
}

int root_index(const Realization& R, const std::vector<long>& v2) {
  for (size_t i = 0; i < R.roots2.size(); ++i)
    if (R.roots2[i] == v2) return static_cast<int>(i);
  return -1;
}

std::vector<long> vneg(std::vector<long> v) {
  for (auto& x : v) x = -x;
  return v;
}
std::vector<long> vadd(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RootDatum datum_from_system(const Realization& R,
                            const std::vector<std::vector<long>>& sys,
                            const std::string& fam) {
  size_t r = sys.size();
  std::vector<Node> nodes(r);
  IMat B(r, std::vector<long>(r, 0));
  std::vector<long> d(r);
  auto labels = default_labels(r);
  for (size_t i = 0; i < r; ++i) {
    int ri = root_index(R, sys[i]);
    if (ri < 0) throw datum_error("simple system element is not a root");
    mpq_class nrm = rform(R, sys[i], sys[i]);
    if (nrm.get_den() != 1) throw datum_error("non-integral norm");
    long norm = nrm.get_num().get_si();
    bool odd = R.odd[ri];
    bool iso = norm == 0;
    nodes[i] = Node{labels[i], odd, iso};
    for (size_t j = 0; j < r; ++j) {
      mpq_class f = rform(R, sys[i], sys[j]);
      if (f.get_den() != 1) throw datum_error("non-integral form value");
      B[i][j] = f.get_num().get_si();
    }
    if (!iso && norm % 2 != 0)
      throw datum_error("odd norm at non-isotropic node");
    d[i] = iso ? 1 : norm / 2;
  }
  IMat a(r, std::vector<long>(r, 0));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) {
      if (B[i][j] % d[i] != 0) throw datum_error("non-integral cartan entry");
      a[i][j] = B[i][j] / d[i];
    }
  return RootDatum(std::move(nodes), std::move(a), std::move(d), fam);
}

// canonical string key of a datum up to node relabeling and global form sign
std::string datum_key_impl(const RootDatum& dt) {
  size_t r = dt.rank();
  std::vector<int> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    for (int sflip = 0; sflip < 2; ++sflip) {
      std::ostringstream os;
      for (size_t i = 0; i < r; ++i)
        os << dt.node(perm[i]).odd << dt.node(perm[i]).isotropic << '|';
      for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
          os << (sflip ? -dt.form(perm[i], perm[j])
                       : dt.form(perm[i], perm[j]))
             << ',';
      std::string s = os.str();
      if (best.empty() || s < best) best = s;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<RootDatum> odd_reflection_orbit(const Realization& R,
                                            std::vector<std::vector<long>> seed,
                                            const std::string& fam) {
  std::set<std::vector<std::vector<long>>> seen;
  std::vector<std::vector<std::vector<long>>> queue;
  auto norm_sys = [](std::vector<std::vector<long>> s) {
    std::sort(s.begin(), s.end());
    return s;
  };
  queue.push_back(seed);
  seen.insert(norm_sys(seed));
  std::map<std::string, RootDatum> classes;
  while (!queue.empty()) {
    auto sys = queue.back();
    queue.pop_back();
    RootDatum dt = datum_from_system(R, sys, fam);
    classes.emplace(datum_key_impl(dt), dt);
    for (size_t k = 0; k < sys.size(); ++k) {
      int ri = root_index(R, sys[k]);
      if (!(R.odd[ri] && rform(R, sys[k], sys[k]) == 0)) continue;
      std::vector<std::vector<long>> next;
      for (size_t j = 0; j < sys.size(); ++j) {
        if (j == k)
          next.push_back(vneg(sys[k]));
        else if (rform(R, sys[j], sys[k]) != 0)
          next.push_back(vadd(sys[j], sys[k]));
        else
          next.push_back(sys[j]);
      }
      if (seen.insert(norm_sys(next)).second) queue.push_back(next);
    }
  }
  std::vector<RootDatum> out;
  for (auto& [k, v] : classes) out.push_back(v);
  return out;
}

const Realization& f4_realization() {
  static Realization R = [] {
    Realization r;
    r.diag = {2, 2, 2, -6};
    auto push = [&](std::vector<long> v, bool odd) {
      r.roots2.push_back(std::move(v));
      r.odd.push_back(odd);
    };
    for (int i = 0; i < 3; ++i)
      for (int s : {2, -2}) {
        std::vector<long> v(4, 0);
        v[i] = s;
        push(v, false);
      }
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        for (int si : {2, -2})
          for (int sj : {2, -2}) {
            std::vector<long> v(4, 0);
            v[i] = si;
            v[j] = sj;
            push(v, false);
          }
    push({0, 0, 0, 2}, false);
    push({0, 0, 0, -2}, false);
    for (int a : {1, -1})
      for (int b : {1, -1})
        for (int c : {1, -1})
          for (int e : {1, -1}) push({a, b, c, e}, true);
    return r;
  }();
  return R;
}

const std::vector<RootDatum>& f4_variants() {
  static std::vector<RootDatum> v = [] {
    auto orbit = odd_reflection_orbit(
        f4_realization(),
        {{-1, -1, -1, 1}, {0, 0, 2, 0}, {0, 2, -2, 0}, {2, -2, 0, 0}}, "F");
    // The family table we follow lists five diagrams; the odd-reflection
    // orbit contains a sixth (a chain with an adjacent isotropic pair) which
    // the table does not carry. Keep the published list.
    std::vector<RootDatum> keep;
    for (auto& dt : orbit) {
      int iso = 0, maxdeg = 0;
      for (size_t i = 0; i < dt.rank(); ++i) {
        iso += dt.node(i).isotropic;
        int deg = 0;
        for (size_t j = 0; j < dt.rank(); ++j)
          if (j != i && dt.form(i, j) != 0) ++deg;
        maxdeg = std::max(maxdeg, deg);
      }
      bool path = maxdeg <= 2;
      bool chain_with_iso_pair = path && iso == 2;
      if (!chain_with_iso_pair) keep.push_back(dt);
    }
    return keep;
  }();
  return v;
}

const Realization& g3_realization() {
  static Realization R = [] {
    Realization r;
    r.diag = {-2, 2, 6};
    auto push = [&](std::vector<long> v, bool odd) {
      r.roots2.push_back(std::move(v));
      r.odd.push_back(odd);
    };
    // G2 part: short +-d1, +-(d1 +- d2)/2; long +-d2, +-(3 d1 +- d2)/2
    for (int s : {1, -1}) {
      push({0, 2 * s, 0}, false);
      push({0, 0, 2 * s}, false);
      for (int t : {1, -1}) {
        push({0, s, s * t}, false);
        push({0, 3 * s, s * t}, false);
      }
    }
    push({4, 0, 0}, false);
    push({-4, 0, 0}, false);
    push({2, 0, 0}, true);
    push({-2, 0, 0}, true);
    for (int s : {1, -1})
      for (int u : {1, -1}) {
        push({2 * s, 2 * u, 0}, true);
        for (int t : {1, -1}) push({2 * s, u, u * t}, true);
      }
    return r;
  }();
  return R;
}

const std::vector<RootDatum>& g3_variants() {
  static std::vector<RootDatum> v = odd_reflection_orbit(
      g3_realization(), {{2, -1, -1}, {0, 2, 0}, {0, -3, 1}}, "G");
  return v;
}

}  // namespace

int f4_variant_count() { return static_cast<int>(f4_variants().size()); }

RootDatum f4_datum(int variant) {
  const auto& v = f4_variants();
  if (variant < 1 || variant > static_cast<int>(v.size()))
    throw datum_error("no such F variant");
  RootDatum dt = v[variant - 1];
  dt.set_dsl("F: v" + std::to_string(variant));
  return dt;
}

int g3_variant_count() { return static_cast<int>(g3_variants().size()); }

RootDatum g3_datum(int variant) {
  const auto& v = g3_variants();
  if (variant < 1 || variant > static_cast<int>(v.size()))
    throw datum_error("no such G variant");
  RootDatum dt = v[variant - 1];
  dt.set_dsl("G: v" + std::to_string(variant));
  return dt;
}

RootDatum d21a_datum(int variant, long alpha) {
  if (alpha <= 0)
    throw datum_error("D(2|1;a) needs a positive integer parameter");
  auto labels = default_labels(3);
  std::vector<Node> nodes(3);
  IMat B(3, std::vector<long>(3, 0));
  std::vector<long> d(3);
  switch (variant) {
    case 1:
      nodes = {Node{labels[0], true, true}, Node{labels[1], false, false},
               Node{labels[2], false, false}};
      B = {{0, -1, 1 + alpha}, {-1, 2, 0}, {1 + alpha, 0, -2 * (1 + alpha)}};
      d = {1, 1, -(1 + alpha)};
      break;
    case 2:
      nodes = {Node{labels[0], true, true}, Node{labels[1], false, false},
               Node{labels[2], false, false}};
      B = {{0, -alpha, 1 + alpha},
           {-alpha, 2 * alpha, 0},
           {1 + alpha, 0, -2 * (1 + alpha)}};
      d = {1, alpha, -(1 + alpha)};
      break;
    case 3:
      nodes = {Node{labels[0], true, true}, Node{labels[1], true, true},
               Node{labels[2], true, true}};
      B = {{0, 1, alpha}, {1, 0, -1 - alpha}, {alpha, -1 - alpha, 0}};
      d = {1, 1, 1};
      break;
    default:
      throw datum_error("no such D(2|1;a) variant");
  }
  IMat a(3, std::vector<long>(3, 0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (B[i][j] % d[i] != 0) throw datum_error("non-integral cartan entry");
      a[i][j] = B[i][j] / d[i];
    }
  RootDatum dt(std::move(nodes), std::move(a), std::move(d), "DA");
  dt.set_dsl("DA: v" + std::to_string(variant) +
             " ; alpha: " + std::to_string(alpha));
  return dt;
}

RootDatum classical_f4() {
  std::vector<Node> nodes(4);
  auto labels = default_labels(4);
  for (int i = 0; i < 4; ++i) nodes[i] = Node{labels[i], false, false};
  IMat a = {{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}};
  std::vector<long> d = {2, 2, 1, 1};
  return RootDatum(std::move(nodes), std::move(a), std::move(d), "F4");
}

RootDatum classical_g2() {
  std::vector<Node> nodes(2);
  auto labels = default_labels(2);
  for (int i = 0; i < 2; ++i) nodes[i] = Node{labels[i], false, false};
  IMat a = {{2, -1}, {-3, 2}};
  std::vector<long> d = {3, 1};
  return RootDatum(std::move(nodes), std::move(a), std::move(d), "G2");
}

// ---------------------------------------------------------------------------
// diagram DSL

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

// letters of an osp decoration string, reconstructed backwards from the tail
std::vector<char> letters_from_decorations(const std::vector<std::string>& deco,
                                           OspTail tail) {
  size_t r = deco.size();
  if (r == 0) throw datum_error("empty decoration list");
  std::vector<char> let(r);
  auto flip = [](char c) { return c == 'e' ? 'd' : 'e'; };
  switch (tail) {
    case OspTail::Short:
      let[r - 1] = deco[r - 1] == "b" ? 'd' : 'e';
      break;
    case OspTail::Long:
      if (deco[r - 1] != "o") throw datum_error("long tail node must be even");
      let[r - 1] = 'd';
      break;
    default:
      throw datum_error("internal: fork letters handled separately");
  }
  for (size_t i = r - 1; i-- > 0;) {
    if (deco[i] == "b")
      throw datum_error("b decoration only allowed at a short tail");
    if (deco[i] != "o" && deco[i] != "x")
      throw datum_error("bad decoration: " + deco[i]);
    let[i] = deco[i] == "x" ? flip(let[i + 1]) : let[i + 1];
  }
  return let;
}

std::vector<int> parse_perm(const std::string& spec, const RootDatum& dt) {
  std::vector<int> perm(dt.rank());
  std::iota(perm.begin(), perm.end(), 0);
  std::string s = strip(spec);
  if (s == "id" || s.empty()) return perm;
  size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos >= s.size()) break;
    if (s[pos] != '(') throw datum_error("bad tau spec: " + spec);
    size_t close = s.find(')', pos);
    if (close == std::string::npos) throw datum_error("bad tau spec: " + spec);
    auto cyc = words(s.substr(pos + 1, close - pos - 1));
    std::vector<int> idx;
    for (auto& lab : cyc) {
      int i = dt.index_of_label(lab);
      if (i < 0) throw datum_error("unknown node label in tau: " + lab);
      idx.push_back(i);
    }
    for (size_t k = 0; k < idx.size(); ++k)
      perm[idx[k]] = idx[(k + 1) % idx.size()];
    pos = close + 1;
  }
  return perm;
}

}  // namespace

RootDatum parse_datum(const std::string& dsl) { return parse_diagram(dsl).datum; }

DiagramSpec parse_diagram(const std::string& dsl) {
  auto parts = split(dsl, ';');
  if (parts.empty()) throw datum_error("empty diagram spec");
  auto head = split(parts[0], ':');
  if (head.size() != 2) throw datum_error("expected 'FAMILY: body'");
  std::string fam = strip(head[0]);
  std::string body = strip(head[1]);

  std::string bullet_spec, tau_spec = "id", labels_spec;
  long alpha = 1;
  bool appendix = false;
  for (size_t k = 1; k < parts.size(); ++k) {
    auto kv = split(parts[k], ':');
    if (kv.size() != 2) throw datum_error("bad clause: " + parts[k]);
    std::string key = strip(kv[0]), val = strip(kv[1]);
    if (key == "bullet")
      bullet_spec = val;
    else if (key == "tau")
      tau_spec = val;
    else if (key == "alpha")
      alpha = std::stol(val);
    else if (key == "labels")
      labels_spec = val;
    else if (key == "mode" && val == "appendixA")
      appendix = true;
    else
      throw datum_error("unknown clause: " + key);
  }

  RootDatum dt;
  auto deco = words(body);
  if (fam == "A") {
    std::vector<int> signs{1};
    for (auto& w : deco) {
      if (w == "o")
        signs.push_back(signs.back());
      else if (w == "x")
        signs.push_back(-signs.back());
      else
        throw datum_error("A family nodes are o or x");
    }
    dt = gl_chain(signs);
  } else if (fam == "B") {
    dt = osp_chain(letters_from_decorations(deco, OspTail::Short),
                   OspTail::Short);
  } else if (fam == "C" || fam == "OSPL") {
    auto let = letters_from_decorations(deco, OspTail::Long);
    if (fam == "C" && std::count(let.begin(), let.end(), 'e') > 1)
      throw datum_error("C family admits at most one even direction");
    dt = osp_chain(let, OspTail::Long);
  } else if (fam == "D") {
    size_t r = deco.size();
    if (r < 2) throw datum_error("D family needs rank >= 2");
    OspTail tail;
    std::vector<char> let(r);
    if (deco[r - 1] == "o" && deco[r - 2] == "o") {
      tail = OspTail::ForkEE;
      let[r - 1] = let[r - 2] = 'e';
    } else if (deco[r - 1] == "x" && deco[r - 2] == "x") {
      tail = OspTail::ForkDE;
      let[r - 2] = 'd';
      let[r - 1] = 'e';
    } else {
      throw datum_error("D family fork nodes must both be o or both x");
    }
    for (size_t i = r - 2; i-- > 0;) {
      char next = let[i + 1];
      if (deco[i] == "x")
        let[i] = next == 'e' ? 'd' : 'e';
      else if (deco[i] == "o")
        let[i] = next;
      else
        throw datum_error("D family nodes are o or x");
    }
    dt = osp_chain(let, tail);
  } else if (fam == "F" || fam == "G") {
    int variant = 0;
    if (deco.size() == 1 && deco[0].size() >= 2 && deco[0][0] == 'v')
      variant = std::stoi(deco[0].substr(1));
    else
      throw datum_error(fam + " family takes a variant id, e.g. '" + fam +
                        ": v1'");
    dt = fam == "F" ? f4_datum(variant) : g3_datum(variant);
  } else if (fam == "DA") {
    int variant = 0;
    if (deco.size() == 1 && deco[0].size() >= 2 && deco[0][0] == 'v')
      variant = std::stoi(deco[0].substr(1));
    else
      throw datum_error("DA family takes a variant id, e.g. 'DA: v1'");
    dt = d21a_datum(variant, alpha);
  } else if (fam == "F4") {
    dt = classical_f4();
  } else if (fam == "G2") {
    dt = classical_g2();
  } else {
    throw datum_error("unknown family: " + fam);
  }

  if (!labels_spec.empty()) {
    auto labs = words(labels_spec);
    if (labs.size() != dt.rank()) throw datum_error("label count mismatch");
    std::vector<Node> nodes = dt.nodes();
    for (size_t i = 0; i < nodes.size(); ++i) nodes[i].label = labs[i];
    RootDatum relabeled(nodes, dt.cartan(), dt.d(), dt.family());
    relabeled.set_dsl(dt.dsl());
    dt = relabeled;
  }
  if (dt.dsl().empty()) dt.set_dsl(fam + ": " + body);

  DiagramSpec spec;
  spec.datum = dt;
  spec.appendix_mode = appendix;
  if (!bullet_spec.empty()) {
    std::string inner = strip(bullet_spec);
    if (inner.size() < 2 || inner.front() != '{' || inner.back() != '}')
      throw datum_error("bullet clause must be {...}");
    inner = inner.substr(1, inner.size() - 2);
    for (auto& part : split(inner, ',')) {
      std::string lab = strip(part);
      if (lab.empty()) continue;
      int i = spec.datum.index_of_label(lab);
      if (i < 0) throw datum_error("unknown bullet label: " + lab);
      spec.bullet.push_back(i);
    }
    std::sort(spec.bullet.begin(), spec.bullet.end());
    spec.bullet.erase(std::unique(spec.bullet.begin(), spec.bullet.end()),
                      spec.bullet.end());
  }
  spec.tau = parse_perm(tau_spec, spec.datum);
  return spec;
}

std::string canonical_dsl(const DiagramSpec& spec) {
  std::ostringstream os;
  os << spec.datum.dsl();
  os << " ; bullet: {";
  for (size_t k = 0; k < spec.bullet.size(); ++k)
    os << (k ? "," : "") << spec.datum.node(spec.bullet[k]).label;
  os << "}";
  std::ostringstream ts;
  bool id = true;
  for (size_t i = 0; i < spec.tau.size(); ++i)
    if (spec.tau[i] > static_cast<int>(i)) {
      ts << "(" << spec.datum.node(i).label << " "
         << spec.datum.node(spec.tau[i]).label << ")";
      id = false;
    }
  os << " ; tau: " << (id ? "id" : ts.str());
  if (spec.appendix_mode) os << " ; mode: appendixA";
  return os.str();
}

}  // namespace qsp

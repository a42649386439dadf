#pragma once

// Finite Coxeter systems: Cartan data, positive roots, weights, group
// elements, words, Demazure products, weak order, sorting words, reflection
// length, permutahedra.
//
// Group elements are stored as signed permutations of the positive roots,
// which makes descent tests O(1) and products O(N) in pure integer
// arithmetic.  The exact matrix acting on root coordinates is derived from
// the permutation on demand (each column is plus or minus a tabulated root).

#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "brickpoly/exactnum.hpp"

namespace brickpoly {

using Word = std::vector<int>;  // generator indices, 0-based internally

inline Word word_from_one_based(const std::vector<int>& v) {
  Word w;
  w.reserve(v.size());
  for (int x : v) w.push_back(x - 1);
  return w;
}
inline std::vector<int> word_to_one_based(const Word& w) {
  std::vector<int> v;
  v.reserve(w.size());
  for (int x : w) v.push_back(x + 1);
  return v;
}

struct NotFiniteType : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GroupTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Small dynamic bitset keyed by positive-root indices.
class IndexSet {
 public:
  IndexSet() : n_(0) {}
  explicit IndexSet(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  size_t size() const { return n_; }
  void set(size_t i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(size_t i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
  bool test(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  size_t count() const {
    size_t c = 0;
    for (uint64_t x : w_) c += std::popcount(x);
    return c;
  }
  bool subset_of(const IndexSet& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  IndexSet operator&(const IndexSet& o) const {
    IndexSet r(n_);
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
  }
  IndexSet operator|(const IndexSet& o) const {
    IndexSet r(n_);
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
    return r;
  }
  IndexSet operator^(const IndexSet& o) const {
    IndexSet r(n_);
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] ^ o.w_[i];
    return r;
  }
  IndexSet complement() const {
    IndexSet r(n_);
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
    if (n_ & 63) r.w_.back() &= (uint64_t(1) << (n_ & 63)) - 1;
    return r;
  }
  bool operator==(const IndexSet& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const IndexSet& o) const { return !(*this == o); }
  bool operator<(const IndexSet& o) const { return w_ < o.w_; }
  bool empty() const {
    for (uint64_t x : w_)
      if (x) return false;
    return true;
  }
  std::vector<int> to_indices() const {
    std::vector<int> out;
    for (size_t i = 0; i < n_; ++i)
      if (test(i)) out.push_back(static_cast<int>(i));
    return out;
  }

 private:
  size_t n_;
  std::vector<uint64_t> w_;
};

// Signed permutation of the positive roots; entry i holds the signed image
// of root i, encoded as +-(index+1).
using RootPerm = std::vector<int16_t>;

inline int16_t perm_apply(const RootPerm& p, int16_t s) {
  return s > 0 ? p[s - 1] : static_cast<int16_t>(-p[-s - 1]);
}
inline RootPerm perm_compose(const RootPerm& u, const RootPerm& v) {
  RootPerm r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = perm_apply(u, v[i]);
  return r;
}
inline RootPerm perm_inverse(const RootPerm& p) {
  RootPerm r(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    int16_t im = p[i];
    if (im > 0)
      r[im - 1] = static_cast<int16_t>(i + 1);
    else
      r[-im - 1] = static_cast<int16_t>(-(static_cast<int>(i) + 1));
  }
  return r;
}

class GroupElement;
struct GroupList;

// ---------------------------------------------------------------------------
enum class GroupFamily { A, B, D, E, F, G, H, I2, Custom };

class CoxeterSystem : public std::enable_shared_from_this<CoxeterSystem> {
 public:
  // "A".."I2" descriptors; dihedral order passes through `dihedral`.
  static std::shared_ptr<const CoxeterSystem> build(const std::string& type, int rank,
                                                    unsigned dihedral = 0);
  static std::shared_ptr<const CoxeterSystem> from_coxeter_matrix(
      const std::vector<std::vector<unsigned>>& m);
  // Explicit Cartan data (used by parabolic restriction).
  static std::shared_ptr<const CoxeterSystem> from_cartan(
      std::shared_ptr<const Field> field, const std::vector<std::vector<Scalar>>& cartan,
      const std::vector<std::vector<unsigned>>& cox, const std::vector<Scalar>& norms,
      GroupFamily family = GroupFamily::Custom);

  int rank() const { return n_; }
  int positive_root_count() const { return N_; }
  GroupFamily family() const { return family_; }
  const std::string& type_name() const { return type_name_; }
  const std::shared_ptr<const Field>& field() const { return field_; }
  const std::vector<std::vector<unsigned>>& coxeter_matrix() const { return cox_; }
  const Scalar& cartan(int s, int t) const { return cartan_[s][t]; }
  const Scalar& root_norm(int s) const { return norms_[s]; }

  const ExactVector& root_vec(int i) const { return roots_[i]; }
  const ExactVector& root_weight_vec(int i) const { return roots_weight_[i]; }
  // Signed index of an exact root-coordinate vector; throws if not a root.
  int root_index(const ExactVector& v) const;

  const Word& longest_word() const { return w0_word_; }
  const RootPerm& longest_perm() const { return w0_perm_; }
  int psi(int s) const { return psi_[s]; }  // conjugation of generators by w0

  const RootPerm& gen_perm(int s) const { return gen_perm_[s]; }
  const RootPerm& reflection_perm(int root) const { return refl_perm_[root]; }

  // -- coordinate plumbing ---------------------------------------------------
  // root coordinates: basis of simple roots; weight coordinates: basis of
  // fundamental weights.  Since alpha_s = sum_t a_ts omega_t, the coordinate
  // change for x = sum r_s alpha_s = sum v_t omega_t is v_t = sum_s a_ts r_s.
  ExactVector root_to_weight(const ExactVector& r) const { return wgt_from_root_.apply(r); }
  ExactVector weight_to_root(const ExactVector& v) const { return root_from_wgt_.apply(v); }
  const ExactVector& simple_root_weight_vec(int s) const { return alpha_weight_[s]; }

  Scalar pair_rw(const ExactVector& root_coords, const ExactVector& weight_coords) const {
    Scalar acc = field_->zero();
    for (int s = 0; s < n_; ++s)
      acc += root_coords[s] * weight_coords[s] * half_norm_[s];
    return acc;
  }
  Scalar inner_rr(const ExactVector& x, const ExactVector& y) const {
    return pair_rw(x, root_to_weight(y));
  }
  Scalar inner_ww(const ExactVector& x, const ExactVector& y) const {
    return pair_rw(weight_to_root(x), y);
  }

  // In-place generator action, O(n).
  void apply_gen_root_coords(int s, ExactVector& x) const {
    Scalar acc = field_->zero();
    for (int t = 0; t < n_; ++t) acc += cartan_[s][t] * x[t];
    x[s] -= acc;
  }
  void apply_gen_weight_coords(int s, ExactVector& v) const {
    // s(sum v_t omega_t) = sum v_t omega_t - v_s alpha_s
    const ExactVector& a = alpha_weight_[s];
    Scalar vs = v[s];
    if (vs.is_zero()) return;
    for (int t = 0; t < n_; ++t) v[t] -= vs * a[t];
  }
  ExactVector reflect_root_coords(int root, ExactVector x) const {
    // s_beta(x) = x - (2<x,beta>/<beta,beta>) beta
    const ExactVector& beta = roots_[root];
    Scalar c = (inner_rr(x, beta) + inner_rr(x, beta)) / root_norm_of_root_[root];
    for (int t = 0; t < n_; ++t) x[t] -= c * beta[t];
    return x;
  }

  GroupElement identity_element() const;
  GroupElement longest_element() const;
  GroupElement reflection_element(int root) const;

  ExactVector zero_vec() const { return ExactVector(n_, field_->zero()); }
  ExactVector basis_vec(int s) const {
    ExactVector v = zero_vec();
    v[s] = field_->one();
    return v;
  }
  ExactVector balanced_point() const {  // q = sum of fundamental weights
    return ExactVector(n_, field_->one());
  }

  std::string describe() const;

 private:
  friend class GroupElement;
  CoxeterSystem() = default;
  void finish_build();

  int n_ = 0, N_ = 0;
  GroupFamily family_ = GroupFamily::Custom;
  std::string type_name_;
  std::shared_ptr<const Field> field_;
  std::vector<std::vector<unsigned>> cox_;
  std::vector<std::vector<Scalar>> cartan_;
  std::vector<Scalar> norms_;       // d_s = <alpha_s, alpha_s>
  std::vector<Scalar> half_norm_;   // d_s / 2
  std::vector<ExactVector> roots_;  // positive roots, simples first
  std::vector<ExactVector> roots_weight_;
  std::vector<Scalar> root_norm_of_root_;  // <beta,beta> per positive root
  std::vector<ExactVector> alpha_weight_;    // alpha_s in weight coordinates
  ExactMatrix wgt_from_root_, root_from_wgt_;
  std::map<std::vector<Rat>, int> root_lookup_;
  std::vector<RootPerm> gen_perm_;
  std::vector<RootPerm> refl_perm_;
  Word w0_word_;
  RootPerm w0_perm_;
  std::vector<int> psi_;
};

// ---------------------------------------------------------------------------
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(std::shared_ptr<const CoxeterSystem> sys, RootPerm perm)
      : sys_(std::move(sys)), perm_(std::move(perm)) {}

  const std::shared_ptr<const CoxeterSystem>& system() const { return sys_; }
  const RootPerm& perm() const { return perm_; }

  bool is_identity() const {
    for (size_t i = 0; i < perm_.size(); ++i)
      if (perm_[i] != static_cast<int16_t>(i + 1)) return false;
    return true;
  }
  int length() const {
    int l = 0;
    for (int16_t x : perm_)
      if (x < 0) ++l;
    return l;
  }
  bool right_descent(int s) const { return perm_[s] < 0; }  // w(alpha_s) < 0
  int16_t image_of_root(int16_t signed_idx) const { return perm_apply(perm_, signed_idx); }

  GroupElement mult_gen_right(int s) const {
    const RootPerm& g = sys_->gen_perm(s);
    RootPerm r(perm_.size());
    for (size_t i = 0; i < perm_.size(); ++i) r[i] = perm_apply(perm_, g[i]);
    return GroupElement(sys_, std::move(r));
  }
  GroupElement mult_gen_left(int s) const {
    const RootPerm& g = sys_->gen_perm(s);
    RootPerm r(perm_.size());
    for (size_t i = 0; i < perm_.size(); ++i) r[i] = perm_apply(g, perm_[i]);
    return GroupElement(sys_, std::move(r));
  }
  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    return GroupElement(a.sys_, perm_compose(a.perm_, b.perm_));
  }
  GroupElement inverse() const { return GroupElement(sys_, perm_inverse(perm_)); }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.perm_ == b.perm_;
  }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }

  // Lexicographically smallest reduced word, by peeling left descents.
  Word canonical_word() const {
    Word out;
    RootPerm vinv = perm_inverse(perm_);
    int n = sys_->rank();
    for (;;) {
      int s = -1;
      for (int t = 0; t < n; ++t)
        if (vinv[t] < 0) {
          s = t;
          break;
        }
      if (s < 0) break;
      out.push_back(s);
      const RootPerm& g = sys_->gen_perm(s);
      RootPerm nx(vinv.size());
      for (size_t i = 0; i < vinv.size(); ++i) nx[i] = perm_apply(vinv, g[i]);
      vinv = std::move(nx);
    }
    return out;
  }

  // Inversion set as root indices, in the order given by a reduced word
  // (canonical word when none is supplied).
  std::vector<int> inversion_roots(const Word* reduced = nullptr) const {
    Word w = reduced ? *reduced : canonical_word();
    std::vector<int> out;
    out.reserve(w.size());
    RootPerm prefix(perm_.size());
    for (size_t i = 0; i < prefix.size(); ++i) prefix[i] = static_cast<int16_t>(i + 1);
    for (int s : w) {
      out.push_back(std::abs(perm_apply(prefix, static_cast<int16_t>(s + 1))) - 1);
      const RootPerm& g = sys_->gen_perm(s);
      RootPerm nx(prefix.size());
      for (size_t i = 0; i < prefix.size(); ++i) nx[i] = perm_apply(prefix, g[i]);
      prefix = std::move(nx);
    }
    return out;
  }

  IndexSet inversion_set() const {
    RootPerm inv = perm_inverse(perm_);
    IndexSet s(perm_.size());
    for (size_t i = 0; i < perm_.size(); ++i)
      if (inv[i] < 0) s.set(i);
    return s;
  }

  ExactMatrix matrix() const {  // action on root coordinates
    int n = sys_->rank();
    ExactMatrix m(n, n, sys_->field()->zero());
    for (int s = 0; s < n; ++s) {
      int16_t im = perm_[s];
      const ExactVector& v = sys_->root_vec(std::abs(im) - 1);
      for (int t = 0; t < n; ++t) m.at(t, s) = im > 0 ? v[t] : -v[t];
    }
    return m;
  }
  ExactVector act_root_coords(const ExactVector& x) const { return matrix().apply(x); }
  ExactVector act_weight_coords(const ExactVector& v) const {
    return sys_->root_to_weight(matrix().apply(sys_->weight_to_root(v)));
  }

 private:
  std::shared_ptr<const CoxeterSystem> sys_;
  RootPerm perm_;
};

inline GroupElement CoxeterSystem::identity_element() const {
  RootPerm p(N_);
  for (int i = 0; i < N_; ++i) p[i] = static_cast<int16_t>(i + 1);
  return GroupElement(shared_from_this(), std::move(p));
}
inline GroupElement CoxeterSystem::longest_element() const {
  return GroupElement(shared_from_this(), w0_perm_);
}
inline GroupElement CoxeterSystem::reflection_element(int root) const {
  return GroupElement(shared_from_this(), refl_perm_[root]);
}

// ---------------------------------------------------------------------------
// System construction.

namespace detail {

inline std::vector<std::vector<unsigned>> chain_matrix(int n) {
  std::vector<std::vector<unsigned>> m(n, std::vector<unsigned>(n, 2));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  for (int i = 0; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = 3;
  return m;
}

}  // namespace detail

inline std::shared_ptr<const CoxeterSystem> CoxeterSystem::build(const std::string& type,
                                                                 int rank, unsigned dihedral) {
  std::string t = type;
  for (auto& c : t) c = static_cast<char>(toupper(c));
  auto sys = std::shared_ptr<CoxeterSystem>(new CoxeterSystem());
  auto integer_cartan_from = [&](const std::vector<std::vector<unsigned>>& cox,
                                 const std::vector<long>& dnum,
                                 const std::vector<std::vector<long>>& a) {
    sys->cox_ = cox;
    sys->field_ = Field::rationals();
    int n = static_cast<int>(cox.size());
    sys->cartan_.assign(n, std::vector<Scalar>(n));
    sys->norms_.resize(n);
    for (int i = 0; i < n; ++i) {
      sys->norms_[i] = Scalar(Rat(dnum[i]));
      for (int j = 0; j < n; ++j) sys->cartan_[i][j] = Scalar(Rat(a[i][j]));
    }
  };

  if (t == "A" || t == "B" || t == "C" || t == "D" || t == "E" || t == "F" || t == "G") {
    int n = rank;
    if (n < 1) throw std::invalid_argument("rank must be positive");
    std::vector<std::vector<unsigned>> cox;
    std::vector<std::vector<long>> a;
    std::vector<long> d;
    auto init_simply_laced = [&](const std::vector<std::pair<int, int>>& edges) {
      cox.assign(n, std::vector<unsigned>(n, 2));
      for (int i = 0; i < n; ++i) cox[i][i] = 1;
      a.assign(n, std::vector<long>(n, 0));
      for (int i = 0; i < n; ++i) a[i][i] = 2;
      for (auto [u, v] : edges) {
        cox[u][v] = cox[v][u] = 3;
        a[u][v] = a[v][u] = -1;
      }
      d.assign(n, 2);
    };
    if (t == "A") {
      std::vector<std::pair<int, int>> e;
      for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
      init_simply_laced(e);
      sys->family_ = GroupFamily::A;
    } else if (t == "B" || t == "C") {
      if (n < 2) throw std::invalid_argument("type B needs rank >= 2");
      std::vector<std::pair<int, int>> e;
      for (int i = 1; i + 1 < n; ++i) e.push_back({i, i + 1});
      init_simply_laced(e);
      // generator 0 is the sign change; its root e_1 is short
      cox[0][1] = cox[1][0] = 4;
      a[0][1] = -2;
      a[1][0] = -1;
      d[0] = 1;
      sys->family_ = GroupFamily::B;
    } else if (t == "D") {
      if (n < 3) throw std::invalid_argument("type D needs rank >= 3");
      std::vector<std::pair<int, int>> e{{0, 2}, {1, 2}};
      for (int i = 2; i + 1 < n; ++i) e.push_back({i, i + 1});
      init_simply_laced(e);
      sys->family_ = GroupFamily::D;
    } else if (t == "E") {
      if (n < 6 || n > 8) throw std::invalid_argument("type E needs rank 6..8");
      std::vector<std::pair<int, int>> e{{0, 2}, {1, 3}, {2, 3}};
      for (int i = 3; i + 1 < n; ++i) e.push_back({i, i + 1});
      init_simply_laced(e);
      sys->family_ = GroupFamily::E;
    } else if (t == "F") {
      if (n != 4) throw std::invalid_argument("type F needs rank 4");
      init_simply_laced({{0, 1}, {2, 3}});
      cox[1][2] = cox[2][1] = 4;
      a[1][2] = -1;
      a[2][1] = -2;
      d = {2, 2, 1, 1};
      sys->family_ = GroupFamily::F;
    } else {  // G2
      if (n != 2) throw std::invalid_argument("type G needs rank 2");
      init_simply_laced({});
      cox[0][1] = cox[1][0] = 6;
      a[0][1] = -3;
      a[1][0] = -1;
      d = {2, 6};
      sys->family_ = GroupFamily::G;
    }
    integer_cartan_from(cox, d, a);
    sys->type_name_ = t + std::to_string(n);
  } else if (t == "H") {
    if (rank != 3 && rank != 4) throw std::invalid_argument("type H needs rank 3 or 4");
    int n = rank;
    auto cox = detail::chain_matrix(n);
    cox[0][1] = cox[1][0] = 5;
    sys->cox_ = cox;
    sys->field_ = Field::for_bond_orders({5});
    sys->cartan_.assign(n, std::vector<Scalar>(n));
    sys->norms_.assign(n, sys->field_->from_int(2));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j)
          sys->cartan_[i][j] = sys->field_->from_int(2);
        else
          sys->cartan_[i][j] = -sys->field_->two_cos_pi_over(cox[i][j]);
      }
    sys->family_ = GroupFamily::H;
    sys->type_name_ = "H" + std::to_string(n);
  } else if (t == "I" || t == "I2") {
    unsigned m = dihedral ? dihedral : static_cast<unsigned>(rank);
    if (m < 3) throw std::invalid_argument("dihedral order must be >= 3");
    std::vector<std::vector<unsigned>> cox{{1, m}, {m, 1}};
    return from_coxeter_matrix(cox);
  } else {
    throw std::invalid_argument("unknown type: " + type);
  }
  sys->finish_build();
  return sys;
}

inline std::shared_ptr<const CoxeterSystem> CoxeterSystem::from_coxeter_matrix(
    const std::vector<std::vector<unsigned>>& m) {
  int n = static_cast<int>(m.size());
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m[i].size()) != n) throw std::invalid_argument("matrix not square");
    if (m[i][i] != 1) throw std::invalid_argument("diagonal of Coxeter matrix must be 1");
    for (int j = 0; j < n; ++j) {
      if (i != j && (m[i][j] < 2 || m[i][j] != m[j][i]))
        throw std::invalid_argument("invalid Coxeter matrix");
    }
  }
  auto sys = std::shared_ptr<CoxeterSystem>(new CoxeterSystem());
  sys->cox_ = m;
  sys->family_ = GroupFamily::Custom;
  sys->type_name_ = "custom";

  std::set<unsigned> entries;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) entries.insert(m[i][j]);
  bool crystallographic = true;
  for (unsigned e : entries)
    if (e != 2 && e != 3 && e != 4 && e != 6) crystallographic = false;

  if (crystallographic) {
    // Assign compatible squared norms along a spanning forest; the diagram of
    // a finite group is a forest so this never meets an inconsistent cycle.
    std::vector<Rat> d(n, Rat(0));
    bool consistent = true;
    for (int root = 0; root < n && consistent; ++root) {
      if (d[root] != 0) continue;
      d[root] = 2;
      std::deque<int> q{root};
      while (!q.empty() && consistent) {
        int u = q.front();
        q.pop_front();
        for (int v = 0; v < n; ++v) {
          if (v == u || m[u][v] == 2) continue;
          Rat ratio = m[u][v] == 3 ? Rat(1) : (m[u][v] == 4 ? Rat(1, 2) : Rat(1, 3));
          Rat dv = d[u] * ratio;
          if (d[v] == 0) {
            d[v] = dv;
            q.push_back(v);
          } else if (d[v] != dv && d[v] != d[u] / ratio) {
            consistent = false;
          }
        }
      }
    }
    if (consistent) {
      sys->field_ = Field::rationals();
      sys->norms_.resize(n);
      sys->cartan_.assign(n, std::vector<Scalar>(n));
      for (int i = 0; i < n; ++i) {
        sys->norms_[i] = Scalar(d[i]);
        for (int j = 0; j < n; ++j) {
          if (i == j) {
            sys->cartan_[i][j] = Scalar(Rat(2));
          } else if (m[i][j] == 2) {
            sys->cartan_[i][j] = Scalar(Rat(0));
          } else {
            // <a_i, a_j> = -sqrt(d_i d_j) cos-term, rational for these bonds
            Rat prod = d[i] * d[j];
            Rat inner2;  // 4 <a_i,a_j>^2 = d_i d_j (2cos)^2
            unsigned mm = m[i][j];
            Rat c2 = mm == 3 ? Rat(1) : (mm == 4 ? Rat(2) : Rat(3));
            // inner = -sqrt(prod * c2)/2; exactness guaranteed by construction
            Rat inner_sq = prod * c2 / 4;
            // take exact square root of a rational known to be a square
            auto isqrt = [](const Int& x) {
              Int r = boost::multiprecision::sqrt(x);
              if (r * r != x) throw std::logic_error("norm assignment not a perfect square");
              return r;
            };
            Rat inner = -Rat(isqrt(numerator(inner_sq)), isqrt(denominator(inner_sq)));
            sys->cartan_[i][j] = Scalar(inner * 2 / d[i]);
          }
        }
      }
      sys->finish_build();
      return sys;
    }
  }
  // Symmetrized Cartan matrix over the cyclotomic real field.
  sys->field_ = Field::for_bond_orders(entries.empty() ? std::set<unsigned>{2} : entries);
  sys->norms_.assign(n, sys->field_->from_int(2));
  sys->cartan_.assign(n, std::vector<Scalar>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j)
        sys->cartan_[i][j] = sys->field_->from_int(2);
      else
        sys->cartan_[i][j] = -sys->field_->two_cos_pi_over(m[i][j]);
    }
  sys->finish_build();
  return sys;
}

inline std::shared_ptr<const CoxeterSystem> CoxeterSystem::from_cartan(
    std::shared_ptr<const Field> field, const std::vector<std::vector<Scalar>>& cartan,
    const std::vector<std::vector<unsigned>>& cox, const std::vector<Scalar>& norms,
    GroupFamily family) {
  auto sys = std::shared_ptr<CoxeterSystem>(new CoxeterSystem());
  sys->field_ = std::move(field);
  sys->cartan_ = cartan;
  sys->cox_ = cox;
  sys->norms_ = norms;
  sys->family_ = family;
  sys->type_name_ = "custom";
  sys->finish_build();
  return sys;
}

inline void CoxeterSystem::finish_build() {
  n_ = static_cast<int>(cartan_.size());
  half_norm_.resize(n_);
  for (int s = 0; s < n_; ++s) half_norm_[s] = norms_[s] / field_->from_int(2);

  // Close the simple roots under simple reflections, keeping the vectors with
  // non-negative root coordinates.
  constexpr size_t kRootCap = 1000000;
  auto flatten = [&](const ExactVector& v) {
    std::vector<Rat> key;
    key.reserve(v.size() * field_->degree());
    for (const auto& s : v)
      for (const auto& c : s.coeffs()) key.push_back(c);
    return key;
  };
  std::map<std::vector<Rat>, int> seen;
  std::vector<ExactVector> pool;
  std::deque<int> work;
  for (int s = 0; s < n_; ++s) {
    ExactVector v = zero_vec();
    v[s] = field_->one();
    seen.emplace(flatten(v), static_cast<int>(pool.size()));
    pool.push_back(std::move(v));
    work.push_back(s);
  }
  while (!work.empty()) {
    int idx = work.front();
    work.pop_front();
    for (int s = 0; s < n_; ++s) {
      ExactVector img = pool[idx];
      apply_gen_root_coords(s, img);
      bool nonneg = true;
      for (const auto& c : img)
        if (c.sign() < 0) {
          nonneg = false;
          break;
        }
      if (!nonneg) continue;
      auto key = flatten(img);
      if (seen.count(key)) continue;
      if (pool.size() >= kRootCap)
        throw NotFiniteType("positive root enumeration exceeded cap; not a finite type");
      seen.emplace(std::move(key), static_cast<int>(pool.size()));
      work.push_back(static_cast<int>(pool.size()));
      pool.push_back(std::move(img));
    }
  }

  // Simples first (generator order), the rest sorted by height then lex.
  std::vector<int> order;
  for (int s = 0; s < n_; ++s) order.push_back(s);
  std::vector<int> rest;
  for (size_t i = n_; i < pool.size(); ++i) rest.push_back(static_cast<int>(i));
  auto height = [&](int i) {
    Scalar h = field_->zero();
    for (const auto& c : pool[i]) h += c;
    return h;
  };
  std::sort(rest.begin(), rest.end(), [&](int a, int b) {
    Scalar ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return vec_lex_less(pool[a], pool[b]);
  });
  order.insert(order.end(), rest.begin(), rest.end());
  roots_.clear();
  for (int i : order) roots_.push_back(pool[i]);
  N_ = static_cast<int>(roots_.size());
  if (N_ > std::numeric_limits<int16_t>::max() - 1)
    throw NotFiniteType("too many positive roots for the signed-permutation encoding");
  root_lookup_.clear();
  for (int i = 0; i < N_; ++i) root_lookup_.emplace(flatten(roots_[i]), i);

  // Weight-coordinate data: v_t = sum_s a_ts r_s.
  wgt_from_root_ = ExactMatrix(n_, n_, field_->zero());
  for (int t = 0; t < n_; ++t)
    for (int s = 0; s < n_; ++s) wgt_from_root_.at(t, s) = cartan_[t][s];
  root_from_wgt_ = wgt_from_root_.inverse();
  alpha_weight_.resize(n_);
  for (int s = 0; s < n_; ++s) alpha_weight_[s] = wgt_from_root_.apply(basis_vec(s));
  roots_weight_.resize(N_);
  root_norm_of_root_.resize(N_);
  for (int i = 0; i < N_; ++i) {
    roots_weight_[i] = wgt_from_root_.apply(roots_[i]);
    root_norm_of_root_[i] = pair_rw(roots_[i], roots_weight_[i]);
  }

  // Generator permutations of the positive roots.
  gen_perm_.assign(n_, RootPerm(N_));
  for (int s = 0; s < n_; ++s)
    for (int i = 0; i < N_; ++i) {
      ExactVector img = roots_[i];
      apply_gen_root_coords(s, img);
      bool nonneg = true;
      for (const auto& c : img)
        if (c.sign() < 0) {
          nonneg = false;
          break;
        }
      if (nonneg) {
        gen_perm_[s][i] = static_cast<int16_t>(root_lookup_.at(flatten(img)) + 1);
      } else {
        gen_perm_[s][i] =
            static_cast<int16_t>(-(root_lookup_.at(flatten(vec_neg(std::move(img)))) + 1));
      }
    }

  // Reflection permutation for every positive root.
  refl_perm_.assign(N_, RootPerm(N_));
  for (int b = 0; b < N_; ++b) {
    for (int i = 0; i < N_; ++i) {
      ExactVector img = reflect_root_coords(b, roots_[i]);
      bool nonneg = true;
      for (const auto& c : img)
        if (c.sign() < 0) {
          nonneg = false;
          break;
        }
      if (nonneg) {
        refl_perm_[b][i] = static_cast<int16_t>(root_lookup_.at(flatten(img)) + 1);
      } else {
        refl_perm_[b][i] =
            static_cast<int16_t>(-(root_lookup_.at(flatten(vec_neg(std::move(img)))) + 1));
      }
    }
  }

  // Greedy longest word: always append the smallest ascent.
  RootPerm w(N_);
  for (int i = 0; i < N_; ++i) w[i] = static_cast<int16_t>(i + 1);
  w0_word_.clear();
  for (;;) {
    int s = -1;
    for (int t = 0; t < n_; ++t)
      if (w[t] > 0) {
        s = t;
        break;
      }
    if (s < 0) break;
    w0_word_.push_back(s);
    w = perm_compose(w, gen_perm_[s]);
    if (w0_word_.size() > static_cast<size_t>(N_))
      throw std::logic_error("longest-word computation overran");
  }
  w0_perm_ = std::move(w);
  if (static_cast<int>(w0_word_.size()) != N_)
    throw std::logic_error("longest word has unexpected length");

  psi_.resize(n_);
  for (int s = 0; s < n_; ++s) {
    int16_t im = w0_perm_[s];
    if (im >= 0 || -im > n_) throw std::logic_error("w0 does not negate the simple roots");
    psi_[s] = -im - 1;
  }

  // Defining relations, checked on build.
  for (int s = 0; s < n_; ++s)
    for (int t = 0; t < n_; ++t) {
      ExactVector at = basis_vec(t);
      apply_gen_root_coords(s, at);
      ExactVector expect = basis_vec(t);
      for (int u = 0; u < n_; ++u) expect[u] -= (u == s ? cartan_[s][t] : field_->zero());
      if (!vec_eq(at, expect)) throw std::logic_error("Cartan action check failed");
      ExactVector wt = basis_vec(t);
      apply_gen_weight_coords(s, wt);
      ExactVector wexpect = basis_vec(t);
      if (s == t)
        for (int u = 0; u < n_; ++u) wexpect[u] -= alpha_weight_[s][u];
      if (!vec_eq(wt, wexpect)) throw std::logic_error("weight action check failed");
    }
}

inline int CoxeterSystem::root_index(const ExactVector& v) const {
  std::vector<Rat> key;
  key.reserve(v.size() * field_->degree());
  for (const auto& s : v)
    for (const auto& c : s.coeffs()) key.push_back(c);
  auto it = root_lookup_.find(key);
  if (it != root_lookup_.end()) return it->second + 1;
  ExactVector neg = vec_neg(v);
  key.clear();
  for (const auto& s : neg)
    for (const auto& c : s.coeffs()) key.push_back(c);
  it = root_lookup_.find(key);
  if (it != root_lookup_.end()) return -(it->second + 1);
  throw std::invalid_argument("vector is not a root");
}

inline std::string CoxeterSystem::describe() const {
  return type_name_ + " (rank " + std::to_string(n_) + ", " + std::to_string(N_) +
         " positive roots)";
}

// ---------------------------------------------------------------------------
// Word-level operations.

inline GroupElement word_to_element(const std::shared_ptr<const CoxeterSystem>& sys,
                                    const Word& w) {
  GroupElement e = sys->identity_element();
  for (int s : w) {
    if (s < 0 || s >= sys->rank()) throw std::invalid_argument("letter out of range");
    e = e.mult_gen_right(s);
  }
  return e;
}

inline GroupElement demazure_product(const std::shared_ptr<const CoxeterSystem>& sys,
                                     const Word& q) {
  GroupElement e = sys->identity_element();
  for (int s : q) {
    if (s < 0 || s >= sys->rank()) throw std::invalid_argument("letter out of range");
    if (!e.right_descent(s)) e = e.mult_gen_right(s);
  }
  return e;
}

inline int length_of(const GroupElement& w) { return w.length(); }

// Does the word (or its prefix of length `limit`) contain a reduced
// expression of rho?  Greedy right-to-left scan.
inline bool word_contains(const std::shared_ptr<const CoxeterSystem>& sys, const Word& q,
                          const GroupElement& rho,
                          size_t limit = std::numeric_limits<size_t>::max()) {
  GroupElement v = rho;
  int len = v.length();
  for (size_t i = std::min(q.size(), limit); i-- > 0 && len > 0;) {
    if (v.right_descent(q[i])) {
      v = v.mult_gen_right(q[i]);
      --len;
    }
  }
  return len == 0;
}

// The c-sorting word of w: lexicographically first reduced subword of c^inf.
inline Word c_sorting_word(const std::shared_ptr<const CoxeterSystem>& sys, const Word& c,
                           const GroupElement& w) {
  if (static_cast<int>(c.size()) != sys->rank())
    throw std::invalid_argument("Coxeter element word must use every generator once");
  std::vector<bool> used(sys->rank(), false);
  for (int s : c) {
    if (s < 0 || s >= sys->rank() || used[s])
      throw std::invalid_argument("Coxeter element word must use every generator once");
    used[s] = true;
  }
  Word out;
  RootPerm vinv = perm_inverse(w.perm());
  int remaining = w.length();
  while (remaining > 0) {
    int took = 0;
    for (int s : c) {
      if (vinv[s] < 0) {  // s is a left descent of the remaining quotient
        out.push_back(s);
        vinv = perm_compose(vinv, sys->gen_perm(s));
        --remaining;
        ++took;
        if (remaining == 0) break;
      }
    }
    if (took == 0) throw std::logic_error("sorting word scan stalled");
  }
  return out;
}

// Split a sorting word into its passes over c; true iff supports are nested.
inline std::vector<std::vector<int>> sorting_word_passes(const Word& c, const Word& sorted) {
  std::vector<std::vector<int>> passes;
  size_t ci = 0;
  passes.emplace_back();
  for (int s : sorted) {
    for (;;) {
      if (ci == c.size()) {
        ci = 0;
        passes.emplace_back();
      }
      if (c[ci] == s) {
        passes.back().push_back(s);
        ++ci;
        break;
      }
      ++ci;
    }
  }
  return passes;
}

inline bool is_c_sortable(const std::shared_ptr<const CoxeterSystem>& sys, const Word& c,
                          const GroupElement& w) {
  Word sw = c_sorting_word(sys, c, w);
  auto passes = sorting_word_passes(c, sw);
  for (size_t p = 1; p < passes.size(); ++p) {
    std::set<int> prev(passes[p - 1].begin(), passes[p - 1].end());
    for (int s : passes[p])
      if (!prev.count(s)) return false;
  }
  return true;
}

struct CoverReflections {
  std::vector<int> roots;           // positive-root index of each cover reflection
  std::vector<GroupElement> refls;  // same order
  GroupElement product;             // left-to-right product
};

// Cover reflections t with tw = ws < w, ordered by the position of their
// roots along the inversion sequence of w (c-sorting order when c is given).
inline CoverReflections cover_reflections(const std::shared_ptr<const CoxeterSystem>& sys,
                                          const GroupElement& w, const Word* c = nullptr) {
  std::vector<int> cover_roots;
  for (int s = 0; s < sys->rank(); ++s)
    if (w.right_descent(s)) cover_roots.push_back(-w.perm()[s] - 1);
  Word rw = c ? c_sorting_word(sys, *c, w) : w.canonical_word();
  std::vector<int> seq = w.inversion_roots(&rw);
  std::vector<int> pos(sys->positive_root_count(), -1);
  for (size_t i = 0; i < seq.size(); ++i) pos[seq[i]] = static_cast<int>(i);
  std::sort(cover_roots.begin(), cover_roots.end(), [&](int a, int b) { return pos[a] < pos[b]; });
  CoverReflections out;
  out.roots = cover_roots;
  out.product = sys->identity_element();
  for (int r : cover_roots) {
    out.refls.push_back(sys->reflection_element(r));
    out.product = out.product * out.refls.back();
  }
  return out;
}

// Reflection length equals the codimension of the fixed space for finite
// reflection groups, which gives an enumeration-free exact computation.
inline int reflection_length(const GroupElement& w) {
  auto sys = w.system();
  int n = sys->rank();
  ExactMatrix m = w.matrix();
  for (int i = 0; i < n; ++i) m.at(i, i) -= sys->field()->one();
  return static_cast<int>(m.rank());
}

inline bool is_noncrossing_partition(const std::shared_ptr<const CoxeterSystem>& sys,
                                     const Word& c, const GroupElement& w) {
  GroupElement cx = word_to_element(sys, c);
  return reflection_length(w) + reflection_length(w.inverse() * cx) == sys->rank();
}

// ---------------------------------------------------------------------------
// Group enumeration (capped breadth-first walk of the weak order).

inline size_t default_group_cap() {
  if (const char* env = std::getenv("BRICK_GROUP_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<size_t>(v);
  }
  return 100000;
}

struct GroupList {
  std::shared_ptr<const CoxeterSystem> sys;
  std::vector<GroupElement> elements;    // sorted by (length, permutation)
  std::vector<IndexSet> inversion_sets;  // aligned with elements

  int index_of(const GroupElement& w) const {
    auto it = index.find(key_of(w.perm()));
    if (it == index.end()) throw std::logic_error("element not in enumeration");
    return it->second;
  }

  static std::string key_of(const RootPerm& p) {
    // images of the simple roots determine the element
    return std::string(reinterpret_cast<const char*>(p.data()),
                       sizeof(int16_t) * std::min<size_t>(p.size(), 16));
  }
  std::unordered_map<std::string, int> index;
};

inline GroupList enumerate_group(const std::shared_ptr<const CoxeterSystem>& sys,
                                 size_t cap = default_group_cap()) {
  int n = sys->rank();
  auto key_of = [&](const RootPerm& p) {
    return std::string(reinterpret_cast<const char*>(p.data()),
                       sizeof(int16_t) * std::min<size_t>(p.size(), 16));
  };
  std::unordered_set<std::string> seen;
  std::deque<RootPerm> queue;
  std::vector<RootPerm> all;
  RootPerm id(sys->positive_root_count());
  for (int i = 0; i < sys->positive_root_count(); ++i) id[i] = static_cast<int16_t>(i + 1);
  seen.insert(key_of(id));
  queue.push_back(id);
  while (!queue.empty()) {
    RootPerm w = std::move(queue.front());
    queue.pop_front();
    all.push_back(w);
    for (int s = 0; s < n; ++s) {
      if (w[s] < 0) continue;  // only walk upward in weak order
      RootPerm ws = perm_compose(w, sys->gen_perm(s));
      auto k = key_of(ws);
      if (seen.count(k)) continue;
      if (seen.size() >= cap)
        throw GroupTooLarge("group enumeration exceeded cap " + std::to_string(cap) +
                            "; raise BRICK_GROUP_CAP to override");
      seen.insert(std::move(k));
      queue.push_back(std::move(ws));
    }
  }
  auto length_of_perm = [](const RootPerm& p) {
    int l = 0;
    for (int16_t x : p)
      if (x < 0) ++l;
    return l;
  };
  std::sort(all.begin(), all.end(), [&](const RootPerm& a, const RootPerm& b) {
    int la = length_of_perm(a), lb = length_of_perm(b);
    if (la != lb) return la < lb;
    return a < b;
  });
  GroupList out;
  out.sys = sys;
  out.elements.reserve(all.size());
  out.inversion_sets.reserve(all.size());
  for (size_t i = 0; i < all.size(); ++i) {
    out.index.emplace(GroupList::key_of(all[i]), static_cast<int>(i));
    GroupElement e(sys, std::move(all[i]));
    out.inversion_sets.push_back(e.inversion_set());
    out.elements.push_back(std::move(e));
  }
  return out;
}

// Element with a prescribed biclosed inversion set, by peeling simple roots.
inline GroupElement element_from_inversion_set(const std::shared_ptr<const CoxeterSystem>& sys,
                                               IndexSet inv) {
  Word w;
  int guard = sys->positive_root_count() + 1;
  while (!inv.empty()) {
    if (--guard < 0) throw std::invalid_argument("set is not an inversion set");
    int s = -1;
    for (int t = 0; t < sys->rank(); ++t)
      if (inv.test(t)) {
        s = t;
        break;
      }
    if (s < 0) throw std::invalid_argument("set is not an inversion set");
    w.push_back(s);
    IndexSet next(inv.size());
    const RootPerm& g = sys->gen_perm(s);
    for (size_t i = 0; i < inv.size(); ++i) {
      if (!inv.test(i) || static_cast<int>(i) == s) continue;
      int16_t im = g[i];  // s(beta_i), positive since beta_i != alpha_s
      if (im < 0) throw std::invalid_argument("set is not an inversion set");
      next.set(im - 1);
    }
    inv = std::move(next);
  }
  return word_to_element(sys, w);
}

// ---------------------------------------------------------------------------
// Permutahedron.

struct Permutahedron {
  ExactVector base_point;  // weight coordinates
  std::vector<GroupElement> group;
  std::vector<ExactVector> vertices;  // weight coordinates, aligned with group
  struct FacetIneq {
    ExactVector normal;  // weight coordinates of w(omega_s)
    Scalar rhs;          // <omega_s, q>
    int base_weight;     // the s with normal in the orbit of omega_s
  };
  std::vector<FacetIneq> facets;  // deduplicated by normal
};

inline Permutahedron permutahedron(const std::shared_ptr<const CoxeterSystem>& sys,
                                   const ExactVector& q_weight,
                                   size_t cap = default_group_cap()) {
  for (const auto& c : q_weight)
    if (c.sign() <= 0) throw std::invalid_argument("point is not interior to the chamber");
  GroupList g = enumerate_group(sys, cap);
  Permutahedron out;
  out.base_point = q_weight;
  std::map<std::vector<Rat>, size_t> normal_seen;
  auto flatten = [&](const ExactVector& v) {
    std::vector<Rat> key;
    for (const auto& s : v)
      for (const auto& c : s.coeffs()) key.push_back(c);
    return key;
  };
  for (auto& w : g.elements) {
    ExactMatrix m = w.matrix();
    auto act_weight = [&](const ExactVector& v) {
      return sys->root_to_weight(m.apply(sys->weight_to_root(v)));
    };
    out.vertices.push_back(act_weight(q_weight));
    for (int s = 0; s < sys->rank(); ++s) {
      ExactVector normal = act_weight(sys->basis_vec(s));
      auto key = flatten(normal);
      if (normal_seen.count(key)) continue;
      normal_seen.emplace(std::move(key), out.facets.size());
      Scalar rhs = sys->pair_rw(sys->weight_to_root(sys->basis_vec(s)), q_weight);
      out.facets.push_back({std::move(normal), std::move(rhs), s});
    }
    out.group.push_back(std::move(w));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classical coordinates for types A and B (output adapters; all internal
// computation stays in root/weight coordinates).

inline std::vector<Rat> classical_from_root_coords(const std::shared_ptr<const CoxeterSystem>& sys,
                                                   const ExactVector& r) {
  int n = sys->rank();
  if (sys->family() == GroupFamily::A) {
    std::vector<Rat> e(n + 1, Rat(0));
    for (int p = 0; p < n; ++p) {
      Rat c = r[p].rational();
      e[p + 1] += c;
      e[p] -= c;
    }
    return e;
  }
  if (sys->family() == GroupFamily::B) {
    std::vector<Rat> e(n, Rat(0));
    e[0] += r[0].rational();
    for (int p = 1; p < n; ++p) {
      Rat c = r[p].rational();
      e[p] += c;
      e[p - 1] -= c;
    }
    return e;
  }
  throw std::invalid_argument("classical coordinates only for types A and B");
}

// Coordinate sum of the classical image of a type-A point given in weight
// coordinates.  The conventional type-A weights sit off the essential
// hyperplane, and the permutation action preserves coordinate sums, so the
// classical image of a W-orbit point w(x0) carries the coordinate sum of x0,
// not of the abstract image.  Pass the orbit representative to pin it down.
inline Rat classical_orbit_sum(const std::shared_ptr<const CoxeterSystem>& sys,
                               const ExactVector& rep_weight_coords) {
  int n = sys->rank();
  Rat sum(0);
  for (int p = 0; p < n; ++p) sum += rep_weight_coords[p].rational() * Rat(n - p);
  return sum;
}

inline std::vector<Rat> classical_from_weight_coords(
    const std::shared_ptr<const CoxeterSystem>& sys, const ExactVector& v,
    const std::optional<Rat>& orbit_sum = std::nullopt) {
  int n = sys->rank();
  if (sys->family() == GroupFamily::A) {
    // omega_p = e_{p+1} + ... + e_n (0-based ambient indices)
    std::vector<Rat> e(n + 1, Rat(0));
    for (int p = 0; p < n; ++p) {
      Rat c = v[p].rational();
      for (int q = p + 1; q <= n; ++q) e[q] += c;
    }
    if (orbit_sum) {
      Rat cur(0);
      for (const Rat& x : e) cur += x;
      Rat shift = (*orbit_sum - cur) / Rat(n + 1);
      for (Rat& x : e) x += shift;
    }
    return e;
  }
  if (sys->family() == GroupFamily::B) {
    // omega_0 = (e_0+...+e_{n-1})/2, omega_p = e_p + ... + e_{n-1}
    std::vector<Rat> e(n, Rat(0));
    Rat half(1, 2);
    for (int q = 0; q < n; ++q) e[q] += v[0].rational() * half;
    for (int p = 1; p < n; ++p) {
      Rat c = v[p].rational();
      for (int q = p; q < n; ++q) e[q] += c;
    }
    return e;
  }
  throw std::invalid_argument("classical coordinates only for types A and B");
}

// One-line notation (type A: values 1..n+1; type B: signed values).
inline std::vector<int> one_line(const GroupElement& w) {
  auto sys = w.system();
  int n = sys->rank();
  if (sys->family() == GroupFamily::A) {
    std::vector<int> img(n + 2, 0);  // img[i] = w(i), 1-based ambient
    // chain through classical images of the simple roots e_{p+1}-e_p
    std::vector<std::vector<Rat>> cls(n);
    for (int p = 0; p < n; ++p) {
      int16_t im = w.perm()[p];
      ExactVector rv = sys->root_vec(std::abs(im) - 1);
      if (im < 0) rv = vec_neg(std::move(rv));
      cls[p] = classical_from_root_coords(sys, rv);
    }
    // w(e_1) has a free choice resolved by permutation property; derive all
    // pairwise differences w(e_{p+1}) - w(e_p) = cls[p].
    std::vector<int> delta_pos(n + 1, 0);
    // Represent w(e_i) as unknown unit vectors; cls[p] = u_{p+1} - u_p where
    // u_i = e_{w(i)}.  Scan to identify indices.
    // Start: u_1 is determined once the full multiset of +-e entries is laid
    // out; instead, reconstruct by marching: assign positions greedily.
    std::vector<int> u(n + 2, 0);
    // Unknown u_1..u_{n+1}; each cls[p] = e_b - e_a fixes u_{p+2}=b,u_{p+1}=a
    for (int p = 0; p < n; ++p) {
      int a = -1, b = -1;
      for (int q = 0; q <= n; ++q) {
        if (cls[p][q] == Rat(1)) b = q + 1;
        if (cls[p][q] == Rat(-1)) a = q + 1;
      }
      if (a < 0 || b < 0) throw std::logic_error("image is not a type A root");
      if (u[p + 1] == 0)
        u[p + 1] = a;
      else if (u[p + 1] != a)
        throw std::logic_error("inconsistent one-line reconstruction");
      u[p + 2] = b;
    }
    if (n == 0) u[1] = 1;
    std::vector<int> out(u.begin() + 1, u.end());
    return out;
  }
  if (sys->family() == GroupFamily::B) {
    // signed images of e_0..e_{n-1}: e_0 = alpha_0, e_p = e_{p-1} + alpha_p
    std::vector<int> out;
    std::vector<Rat> cur(n, Rat(0));
    std::vector<Rat> acc(n, Rat(0));
    for (int p = 0; p < n; ++p) {
      int16_t im = w.perm()[p];
      ExactVector rv = sys->root_vec(std::abs(im) - 1);
      if (im < 0) rv = vec_neg(std::move(rv));
      auto cls = classical_from_root_coords(sys, rv);
      for (int q = 0; q < n; ++q) acc[q] += cls[q];
      int val = 0;
      for (int q = 0; q < n; ++q) {
        if (acc[q] == Rat(1)) val = q + 1;
        if (acc[q] == Rat(-1)) val = -(q + 1);
      }
      if (val == 0) throw std::logic_error("image is not a signed unit vector");
      out.push_back(val);
    }
    return out;
  }
  throw std::invalid_argument("one-line notation only for types A and B");
}

inline GroupElement element_from_one_line(const std::shared_ptr<const CoxeterSystem>& sys,
                                          std::vector<int> v) {
  int n = sys->rank();
  Word reversed;
  if (sys->family() == GroupFamily::A) {
    if (static_cast<int>(v.size()) != n + 1) throw std::invalid_argument("one-line length");
    for (;;) {
      int p = -1;
      for (int i = 0; i + 1 <= n; ++i)
        if (v[i] > v[i + 1]) {
          p = i;
          break;
        }
      if (p < 0) break;
      std::swap(v[p], v[p + 1]);
      reversed.push_back(p);
    }
  } else if (sys->family() == GroupFamily::B) {
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("one-line length");
    for (;;) {
      int p = -1;
      if (v[0] < 0) p = 0;
      if (p < 0)
        for (int i = 0; i + 1 < n; ++i)
          if (v[i] > v[i + 1]) {
            p = i + 1;
            break;
          }
      if (p < 0) break;
      if (p == 0)
        v[0] = -v[0];
      else
        std::swap(v[p - 1], v[p]);
      reversed.push_back(p);
    }
  } else {
    throw std::invalid_argument("one-line input only for types A and B");
  }
  // v was reduced to the identity by right multiplications, so the element is
  // the product of those generators in reverse order.
  Word w(reversed.rbegin(), reversed.rend());
  return word_to_element(sys, w);
}

}  // namespace brickpoly

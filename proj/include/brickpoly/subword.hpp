#pragma once

// Subword complexes of spherical type: facet enumeration through flips, the
// root and weight functions on positions, greedy facets and their spanning
// trees, facet reconstruction from root data, halfspace faces, and parabolic
// restriction.
//
// Positions are 1-based throughout, matching the usual presentation of these
// complexes; generator letters stay 0-based.  The root function is tabulated
// as signed indices into the ambient positive-root list, so flips and facet
// enumeration run in integer arithmetic.

#include <mutex>
#include <queue>

#include "brickpoly/coxeter.hpp"

namespace brickpoly {

using Facet = std::vector<int>;  // strictly increasing 1-based positions

struct NotRealizing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Negative greedy facet of an arbitrary pair (Q, rho): sweep from the right,
// selecting positions as long as the remainder stays spellable on the left.
inline Facet negative_greedy_facet_of(const std::shared_ptr<const CoxeterSystem>& sys,
                                      const Word& q, const GroupElement& rho) {
  GroupElement v = rho;
  Facet sel;
  for (size_t k = q.size(); k-- > 0;) {
    int s = q[k];
    if (!v.right_descent(s)) {
      sel.push_back(static_cast<int>(k + 1));
    } else if (word_contains(sys, q, v, k)) {
      sel.push_back(static_cast<int>(k + 1));
    } else {
      v = v.mult_gen_right(s);
    }
  }
  if (!v.is_identity())
    throw std::invalid_argument("element has no reduced expression inside the word");
  std::reverse(sel.begin(), sel.end());
  return sel;
}

inline Facet positive_greedy_facet_of(const std::shared_ptr<const CoxeterSystem>& sys,
                                      const Word& q, const GroupElement& rho) {
  Word rev(q.rbegin(), q.rend());
  Facet g = negative_greedy_facet_of(sys, rev, rho.inverse());
  Facet out;
  for (size_t i = g.size(); i-- > 0;) out.push_back(static_cast<int>(q.size()) + 1 - g[i]);
  return out;
}

class SubwordComplex : public std::enable_shared_from_this<SubwordComplex> {
 public:
  // If the Demazure product falls short of the longest element, the word is
  // completed by the canonical reduced word of delta(Q)^{-1} w0.
  static std::shared_ptr<const SubwordComplex> build(
      std::shared_ptr<const CoxeterSystem> sys, Word q) {
    auto ctx = std::shared_ptr<SubwordComplex>(new SubwordComplex());
    ctx->sys_ = std::move(sys);
    ctx->original_size_ = static_cast<int>(q.size());
    GroupElement delta = demazure_product(ctx->sys_, q);
    if (delta != ctx->sys_->longest_element()) {
      ctx->completion_ = (delta.inverse() * ctx->sys_->longest_element()).canonical_word();
      q.insert(q.end(), ctx->completion_.begin(), ctx->completion_.end());
    }
    ctx->q_ = std::move(q);
    ctx->m_ = static_cast<int>(ctx->q_.size());
    ctx->facet_size_ = ctx->m_ - ctx->sys_->positive_root_count();
    return ctx;
  }

  const std::shared_ptr<const CoxeterSystem>& system() const { return sys_; }
  const Word& word() const { return q_; }
  int size() const { return m_; }
  int original_size() const { return original_size_; }
  const Word& completion() const { return completion_; }
  int facet_size() const { return facet_size_; }
  int letter(int pos) const { return q_[pos - 1]; }  // 1-based position

  // ---- root and weight functions -----------------------------------------
  // Signed ambient root index of r(I, k) for every position k.
  std::vector<int16_t> root_map(const Facet& I) const {
    std::vector<int16_t> rm(m_);
    RootPerm sigma(sys_->positive_root_count());
    for (size_t i = 0; i < sigma.size(); ++i) sigma[i] = static_cast<int16_t>(i + 1);
    size_t next = 0;
    for (int k = 1; k <= m_; ++k) {
      int s = q_[k - 1];
      rm[k - 1] = sigma[s];
      if (next < I.size() && I[next] == k) {
        ++next;
      } else {
        sigma = perm_compose(sigma, sys_->gen_perm(s));
      }
    }
    return rm;
  }

  ExactVector root_vector(int signed_idx) const {
    ExactVector v = sys_->root_vec(std::abs(signed_idx) - 1);
    return signed_idx > 0 ? v : vec_neg(std::move(v));
  }

  std::vector<int> root_configuration_indices(const Facet& I) const {
    auto rm = root_map(I);
    std::vector<int> out;
    out.reserve(I.size());
    for (int i : I) out.push_back(rm[i - 1]);
    return out;
  }
  std::vector<ExactVector> root_configuration(const Facet& I) const {
    std::vector<ExactVector> out;
    for (int r : root_configuration_indices(I)) out.push_back(root_vector(r));
    return out;
  }

  // Weight coordinates of w(I, k) for every position, by a prefix walk: only
  // the image of one fundamental weight changes at each unused position.
  std::vector<ExactVector> weight_map(const Facet& I) const {
    int n = sys_->rank();
    std::vector<ExactVector> state;
    state.reserve(n);
    for (int s = 0; s < n; ++s) state.push_back(sys_->basis_vec(s));
    auto rm = root_map(I);
    std::vector<ExactVector> out;
    out.reserve(m_);
    size_t next = 0;
    for (int k = 1; k <= m_; ++k) {
      int s = q_[k - 1];
      out.push_back(state[s]);
      if (next < I.size() && I[next] == k) {
        ++next;
      } else {
        // sigma <- sigma q_k turns sigma(omega_s) into sigma(omega_s) - sigma(alpha_s),
        // and sigma(alpha_s) is exactly the tabulated root at this position.
        int16_t r = rm[k - 1];
        const ExactVector& rw = sys_->root_weight_vec(std::abs(r) - 1);
        for (int t = 0; t < n; ++t) state[s][t] = r > 0 ? state[s][t] - rw[t] : state[s][t] + rw[t];
      }
    }
    return out;
  }

  // ---- flips ---------------------------------------------------------------
  // The unique exchange j for i in I, scanning the tabulated root function.
  std::pair<Facet, int> flip(const Facet& I, int i) const {
    auto rm = root_map(I);
    int j = flip_partner(I, i, rm);
    return {exchanged(I, i, j), j};
  }

  // All flips of I: (i, j, J) triples.
  struct FlipTriple {
    int i, j;
    Facet target;
  };
  std::vector<FlipTriple> flips(const Facet& I) const {
    auto rm = root_map(I);
    std::vector<FlipTriple> out;
    out.reserve(I.size());
    for (int i : I) {
      int j = flip_partner(I, i, rm);
      out.push_back({i, j, exchanged(I, i, j)});
    }
    return out;
  }

  // ---- facet enumeration ---------------------------------------------------
  const std::vector<Facet>& facets() const {
    std::call_once(facets_once_, [&] {
      std::set<Facet> seen;
      std::deque<std::pair<Facet, std::vector<int16_t>>> queue;
      Facet start = positive_greedy_facet();
      queue.emplace_back(start, root_map(start));
      seen.insert(start);
      while (!queue.empty()) {
        auto [I, rm] = std::move(queue.front());
        queue.pop_front();
        for (int i : I) {
          int j = flip_partner(I, i, rm);
          Facet J = exchanged(I, i, j);
          if (seen.count(J)) continue;
          seen.insert(J);
          std::vector<int16_t> rm2 = rm;
          apply_flip_window(rm2, i, j);
          queue.emplace_back(std::move(J), std::move(rm2));
        }
      }
      facets_.assign(seen.begin(), seen.end());
    });
    return facets_;
  }

  bool is_facet(const Facet& I) const {
    if (static_cast<int>(I.size()) != facet_size_) return false;
    for (size_t t = 0; t + 1 < I.size(); ++t)
      if (I[t] >= I[t + 1]) return false;
    if (!I.empty() && (I.front() < 1 || I.back() > m_)) return false;
    GroupElement e = sys_->identity_element();
    size_t next = 0;
    for (int k = 1; k <= m_; ++k) {
      if (next < I.size() && I[next] == k) {
        ++next;
        continue;
      }
      int s = q_[k - 1];
      if (e.right_descent(s)) return false;  // complement word not reduced
      e = e.mult_gen_right(s);
    }
    return true;
  }

  // Update a tabulated root map across the flip I -> (I \ i) u j: conjugate
  // the window strictly between min and max by the reflection in r(I, i).
  void apply_flip_window(std::vector<int16_t>& rm, int i, int j) const {
    int target = std::abs(rm[i - 1]);
    const RootPerm& refl = sys_->reflection_perm(target - 1);
    int lo = std::min(i, j), hi = std::max(i, j);
    for (int k = lo + 1; k <= hi; ++k) rm[k - 1] = perm_apply(refl, rm[k - 1]);
  }

  int flip_partner(const Facet& I, int i, const std::vector<int16_t>& rm) const {
    int target = std::abs(rm[i - 1]);
    size_t next = 0;
    for (int k = 1; k <= m_; ++k) {
      if (next < I.size() && I[next] == k) {
        ++next;
        continue;
      }
      if (rm[k - 1] == target) return k;  // complement roots are positive
    }
    throw std::logic_error("flip partner not found");
  }

  // ---- realizing test ------------------------------------------------------
  bool is_realizing() const { return rank_defect() == 0; }
  int rank_defect() const {
    std::call_once(rank_once_, [&] {
      Facet f = positive_greedy_facet();
      auto cfg = root_configuration(f);
      if (cfg.empty()) {
        rank_defect_ = sys_->rank();
      } else {
        rank_defect_ = sys_->rank() - static_cast<int>(ExactMatrix::from_rows(cfg).rank());
      }
    });
    return rank_defect_;
  }

  // ---- greedy facets, indices and trees ------------------------------------
  Facet positive_greedy_facet() const {
    return positive_greedy_facet_of(sys_, q_, sys_->longest_element());
  }
  Facet negative_greedy_facet() const {
    return negative_greedy_facet_of(sys_, q_, sys_->longest_element());
  }
  Facet greedy_facet(int sign) const {
    return sign >= 0 ? positive_greedy_facet() : negative_greedy_facet();
  }

  // Largest x with I cap [x] equal to the negative greedy facet of the prefix
  // (smallest x with the mirrored property for the positive index).  Indices
  // are always taken on the completed word; a completion, when one was
  // needed, sits at the tail and behaves like any other suffix.
  int greedy_index(const Facet& I, int sign) const {
    std::vector<GroupElement> prefix(m_ + 1, sys_->identity_element());
    {
      GroupElement cur = sys_->identity_element();
      size_t next = 0;
      for (int k = 1; k <= m_; ++k) {
        if (next < I.size() && I[next] == k) {
          ++next;
        } else {
          cur = cur.mult_gen_right(q_[k - 1]);
        }
        prefix[k] = cur;
      }
    }
    if (sign < 0) {
      for (int x = m_; x >= 0; --x) {
        Facet want(I.begin(), std::lower_bound(I.begin(), I.end(), x + 1));
        Word qx(q_.begin(), q_.begin() + x);
        if (negative_greedy_facet_of(sys_, qx, prefix[x]) == want) return x;
      }
    } else {
      GroupElement full = prefix[m_];
      for (int x = 0; x <= m_; ++x) {
        auto lb = std::lower_bound(I.begin(), I.end(), x + 1);
        Facet want;
        for (auto it = lb; it != I.end(); ++it) want.push_back(*it - x);
        Word qx(q_.begin() + x, q_.end());
        GroupElement sigma = prefix[x].inverse() * full;
        if (positive_greedy_facet_of(sys_, qx, sigma) == want) return x + 1;
      }
    }
    throw std::logic_error("greedy index scan failed");
  }

  struct GreedyTree {
    int sign;
    Facet root;
    struct Arc {
      Facet from, to;
      int i, j;  // increasing flip witnessed by the arc
    };
    std::vector<Arc> arcs;
  };

  // Induction-free arc characterization of the canonical spanning trees of
  // the increasing flip graph.
  GreedyTree greedy_tree(int sign) const {
    const auto& all = facets();
    GreedyTree tree;
    tree.sign = sign;
    tree.root = sign < 0 ? negative_greedy_facet() : positive_greedy_facet();
    std::map<Facet, int> gidx;
    for (const auto& I : all) gidx.emplace(I, greedy_index(I, sign));
    for (const auto& I : all) {
      for (const auto& f : flips(I)) {
        if (f.i >= f.j) continue;  // consider each increasing flip once
        if (sign < 0) {
          if (f.j <= gidx.at(f.target)) tree.arcs.push_back({I, f.target, f.i, f.j});
        } else {
          if (gidx.at(I) <= f.i) tree.arcs.push_back({I, f.target, f.i, f.j});
        }
      }
    }
    if (tree.arcs.size() + 1 != all.size())
      throw std::logic_error("greedy arcs do not form a spanning tree");
    return tree;
  }

  // ---- reconstruction from root data ---------------------------------------
  // Left-to-right sweep consuming the given multiset of root-configuration
  // values (signed roots).
  Facet facet_from_root_configuration(const std::vector<ExactVector>& roots) const {
    std::multiset<int> remaining;
    for (const auto& v : roots) remaining.insert(sys_->root_index(v));
    Facet I;
    RootPerm sigma = identity_perm();
    for (int k = 1; k <= m_; ++k) {
      int s = q_[k - 1];
      int cand = sigma[s];
      auto it = remaining.find(cand);
      if (it != remaining.end()) {
        remaining.erase(it);
        I.push_back(k);
      } else {
        sigma = perm_compose(sigma, sys_->gen_perm(s));
      }
    }
    if (!remaining.empty())
      throw std::invalid_argument("values are not the root configuration of a facet");
    finish_reconstruction(I);
    return I;
  }

  // Positive part only: positions whose running root turns negative are
  // forced into the facet.
  Facet facet_from_positive_part(const std::vector<ExactVector>& roots) const {
    std::multiset<int> remaining;
    for (const auto& v : roots) {
      int idx = sys_->root_index(v);
      if (idx < 0) throw std::invalid_argument("positive part contains a negative root");
      remaining.insert(idx);
    }
    Facet I;
    RootPerm sigma = identity_perm();
    for (int k = 1; k <= m_; ++k) {
      int s = q_[k - 1];
      int cand = sigma[s];
      auto it = remaining.find(cand);
      if (it != remaining.end()) {
        remaining.erase(it);
        I.push_back(k);
      } else if (cand < 0) {
        I.push_back(k);  // forced: complement positions carry positive roots
      } else {
        sigma = perm_compose(sigma, sys_->gen_perm(s));
      }
    }
    if (!remaining.empty())
      throw std::invalid_argument("values are not the positive part of a root configuration");
    finish_reconstruction(I);
    return I;
  }

  // Negative part only: right-to-left sweep with suffix products.
  Facet facet_from_negative_part(const std::vector<ExactVector>& roots) const {
    std::multiset<int> remaining;
    for (const auto& v : roots) {
      int idx = sys_->root_index(v);
      if (idx > 0) throw std::invalid_argument("negative part contains a positive root");
      remaining.insert(idx);
    }
    Facet I;
    RootPerm tau_inv = identity_perm();
    const RootPerm& w0 = sys_->longest_perm();
    for (int k = m_; k >= 1; --k) {
      int s = q_[k - 1];
      // candidate r(I,k) for k in I equals w0 tau_k^{-1}(alpha_s)
      int cand = perm_apply(w0, tau_inv[s]);
      if (cand > 0) {
        I.push_back(k);  // complement positions carry negative candidates here
      } else {
        auto it = remaining.find(cand);
        if (it != remaining.end()) {
          remaining.erase(it);
          I.push_back(k);
        } else {
          tau_inv = perm_compose(tau_inv, sys_->gen_perm(s));
        }
      }
    }
    if (!remaining.empty())
      throw std::invalid_argument("values are not the negative part of a root configuration");
    std::reverse(I.begin(), I.end());
    finish_reconstruction(I);
    return I;
  }

  // ---- halfspace faces ------------------------------------------------------
  // Facets whose root configuration pairs non-negatively with the covector
  // (given in weight coordinates).
  std::vector<Facet> halfspace_facets(const ExactVector& f_weight) const {
    int N = sys_->positive_root_count();
    std::vector<int> sgn(N);
    for (int i = 0; i < N; ++i) sgn[i] = sys_->pair_rw(sys_->root_vec(i), f_weight).sign();
    std::vector<Facet> out;
    for (const auto& I : facets()) {
      auto rm = root_map(I);
      bool ok = true;
      for (int i : I) {
        int16_t r = rm[i - 1];
        int s = r > 0 ? sgn[r - 1] : -sgn[-r - 1];
        if (s < 0) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(I);
    }
    return out;
  }

  // ---- parabolic restriction -------------------------------------------------
  struct ParabolicRestriction {
    std::shared_ptr<const CoxeterSystem> subsystem;
    std::shared_ptr<const SubwordComplex> complex;
    std::vector<int> positions;                      // ambient positions of the subword
    std::vector<ExactVector> simple_roots_ambient;   // ambient coords of the new simples
    Facet mapped_facet;
  };

  ParabolicRestriction parabolic_restriction(const Facet& I) const;

 private:
  SubwordComplex() = default;

  RootPerm identity_perm() const {
    RootPerm p(sys_->positive_root_count());
    for (size_t i = 0; i < p.size(); ++i) p[i] = static_cast<int16_t>(i + 1);
    return p;
  }

  static Facet exchanged(const Facet& I, int i, int j) {
    Facet J;
    J.reserve(I.size());
    for (int x : I)
      if (x != i) J.push_back(x);
    J.insert(std::upper_bound(J.begin(), J.end(), j), j);
    return J;
  }

  void finish_reconstruction(const Facet& I) const {
    if (!is_facet(I))
      throw std::invalid_argument("reconstruction sweep did not produce a facet");
  }

  std::shared_ptr<const CoxeterSystem> sys_;
  Word q_;
  Word completion_;
  int original_size_ = 0;
  int m_ = 0;
  int facet_size_ = 0;
  mutable std::once_flag facets_once_;
  mutable std::vector<Facet> facets_;
  mutable std::once_flag rank_once_;
  mutable int rank_defect_ = 0;
};

inline SubwordComplex::ParabolicRestriction SubwordComplex::parabolic_restriction(
    const Facet& I) const {
  auto cfg = root_configuration(I);
  if (!cfg.empty() &&
      ExactMatrix::from_rows(cfg).rank() != cfg.size())
    throw std::invalid_argument("root configuration is not linearly independent");

  int N = sys_->positive_root_count();
  // Positive roots of the subsystem spanned by the configuration.
  std::vector<ExactVector> basis = cfg;
  ExactMatrix span_t = ExactMatrix::from_rows(basis).transpose();
  std::vector<bool> in_sub(N, false);
  std::vector<int> sub_roots;
  for (int i = 0; i < N; ++i) {
    if (basis.empty()) break;
    if (span_t.solve(sys_->root_vec(i)).has_value()) {
      in_sub[i] = true;
      sub_roots.push_back(i);
    }
  }
  // Simple system: the positive roots whose reflection permutes the others.
  std::vector<int> simples;
  for (int b : sub_roots) {
    const RootPerm& refl = sys_->reflection_perm(b);
    bool simple = true;
    for (int g : sub_roots) {
      if (g == b) continue;
      if (perm_apply(refl, static_cast<int16_t>(g + 1)) < 0) {
        simple = false;
        break;
      }
    }
    if (simple) simples.push_back(b);
  }
  int n2 = static_cast<int>(simples.size());
  if (n2 != static_cast<int>(cfg.size()))
    throw std::logic_error("parabolic simple system has unexpected rank");

  // Cartan data of the subsystem from ambient inner products.
  std::vector<std::vector<Scalar>> cartan(n2, std::vector<Scalar>(n2));
  std::vector<std::vector<unsigned>> cox(n2, std::vector<unsigned>(n2, 2));
  std::vector<Scalar> norms(n2);
  for (int s = 0; s < n2; ++s) {
    const ExactVector& as = sys_->root_vec(simples[s]);
    norms[s] = sys_->inner_rr(as, as);
    for (int t = 0; t < n2; ++t) {
      const ExactVector& at = sys_->root_vec(simples[t]);
      Scalar inner = sys_->inner_rr(as, at);
      cartan[s][t] = (inner + inner) / norms[s];
    }
    cox[s][s] = 1;
  }
  for (int s = 0; s < n2; ++s)
    for (int t = s + 1; t < n2; ++t) {
      // order of the product of the two reflections
      RootPerm prod = perm_compose(sys_->reflection_perm(simples[s]),
                                   sys_->reflection_perm(simples[t]));
      RootPerm cur = prod;
      unsigned order = 1;
      RootPerm id = identity_perm();
      while (cur != id) {
        cur = perm_compose(cur, prod);
        ++order;
        if (order > 10000) throw std::logic_error("reflection product order overflow");
      }
      cox[s][t] = cox[t][s] = order;
    }
  auto sub_sys = CoxeterSystem::from_cartan(sys_->field(), cartan, cox, norms);

  // Express an ambient subsystem root in the new simple basis.
  ExactMatrix simple_t =
      ExactMatrix::from_rows([&] {
        std::vector<ExactVector> rows;
        for (int b : simples) rows.push_back(sys_->root_vec(b));
        return rows;
      }())
          .transpose();
  auto sub_index_of_ambient = [&](int signed_ambient) {
    ExactVector v = sys_->root_vec(std::abs(signed_ambient) - 1);
    if (signed_ambient < 0) v = vec_neg(std::move(v));
    auto coords = simple_t.solve(v);
    if (!coords) throw std::logic_error("root not in parabolic span");
    return sub_sys->root_index(*coords);
  };

  // Scan the word, keeping positions whose root lies in the subsystem.
  auto rm = root_map(I);
  std::vector<int> positions;
  Word sub_word;
  Facet mapped;
  RootPerm sigma(sub_sys->positive_root_count());
  for (size_t i = 0; i < sigma.size(); ++i) sigma[i] = static_cast<int16_t>(i + 1);
  RootPerm sigma_inv = sigma;
  size_t next = 0;
  for (int k = 1; k <= m_; ++k) {
    bool in_facet = next < I.size() && I[next] == k;
    if (in_facet) ++next;
    int16_t r = rm[k - 1];
    if (!in_sub[std::abs(r) - 1]) continue;
    int sub_target = sub_index_of_ambient(r);
    int letter_signed = perm_apply(sigma_inv, static_cast<int16_t>(sub_target));
    if (letter_signed <= 0 || letter_signed > sub_sys->rank())
      throw std::logic_error("restriction scan produced a non-simple letter");
    int letter = letter_signed - 1;
    positions.push_back(k);
    sub_word.push_back(letter);
    if (in_facet) {
      mapped.push_back(static_cast<int>(positions.size()));
    } else {
      sigma = perm_compose(sigma, sub_sys->gen_perm(letter));
      sigma_inv = perm_inverse(sigma);
    }
  }

  ParabolicRestriction out;
  out.subsystem = sub_sys;
  out.complex = SubwordComplex::build(sub_sys, sub_word);
  if (!out.complex->completion().empty())
    throw std::logic_error("restricted word is not spherical");
  out.positions = std::move(positions);
  for (int b : simples) out.simple_roots_ambient.push_back(sys_->root_vec(b));
  out.mapped_facet = std::move(mapped);
  return out;
}

}  // namespace brickpoly

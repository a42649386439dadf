#pragma once

// Brick vectors and polytopes over a spherical subword complex: per-vertex
// realization certificates, the chamber-to-facet map kappa with its fibers,
// the increasing flip order, normal-cone chamber unions, and the Minkowski
// decomposition into orbit polytopes.

#include <future>
#include <thread>

#include "brickpoly/subword.hpp"

namespace brickpoly {

// Per-generator positive scaling; empty means all ones.
using GeneratorScaling = std::vector<Scalar>;

inline void check_scaling(const std::shared_ptr<const CoxeterSystem>& sys,
                          const GeneratorScaling& lambda) {
  if (lambda.empty()) return;
  if (static_cast<int>(lambda.size()) != sys->rank())
    throw std::invalid_argument("scaling must assign a value to every generator");
  for (const auto& l : lambda)
    if (l.sign() <= 0) throw std::invalid_argument("scaling values must be positive");
}

// Sum of the (scaled) weight function over all positions, in weight coords.
inline ExactVector brick_vector(const std::shared_ptr<const SubwordComplex>& ctx, const Facet& I,
                                const GeneratorScaling& lambda = {}) {
  auto sys = ctx->system();
  check_scaling(sys, lambda);
  auto wm = ctx->weight_map(I);
  ExactVector b = sys->zero_vec();
  for (int k = 1; k <= ctx->size(); ++k) {
    const Scalar* scale = lambda.empty() ? nullptr : &lambda[ctx->letter(k)];
    for (int t = 0; t < sys->rank(); ++t)
      b[t] += scale ? (*scale) * wm[k - 1][t] : wm[k - 1][t];
  }
  return b;
}

// Coordinate sum of the classical image of a brick vector (type A only).
inline Rat classical_brick_sum(const std::shared_ptr<const SubwordComplex>& ctx,
                               const GeneratorScaling& lambda = {}) {
  auto sys = ctx->system();
  Rat sum(0);
  for (int k = 1; k <= ctx->size(); ++k) {
    Rat coef = lambda.empty() ? Rat(1) : lambda[ctx->letter(k)].rational();
    sum += coef * Rat(sys->rank() - ctx->letter(k));
  }
  return sum;
}

// ---------------------------------------------------------------------------
struct BrickPolytope {
  std::shared_ptr<const SubwordComplex> ctx;
  GeneratorScaling lambda;
  std::vector<Facet> facets;           // ctx->facets() order
  std::vector<ExactVector> vertices;   // brick vectors, weight coordinates
  std::vector<ExactVector> witnesses;  // covector certifying each vertex
  bool certified = false;
};

// Witness covector strictly inside the normal cone at I: the sum of the dual
// basis of the root configuration, so that <r(I,i), f> = 1 for all i in I.
inline ExactVector witness_covector(const std::shared_ptr<const SubwordComplex>& ctx,
                                    const Facet& I) {
  auto sys = ctx->system();
  int n = sys->rank();
  auto cfg = ctx->root_configuration(I);
  if (static_cast<int>(cfg.size()) != n) throw NotRealizing("facet has deficient rank");
  ExactVector rhs(n, sys->field()->one());
  // <r_i, f> with f in weight coordinates is linear with matrix rows
  // (r_i)_s d_s / 2.
  ExactMatrix pairing(n, n, sys->field()->zero());
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < n; ++s)
      pairing.at(i, s) = cfg[i][s] * sys->root_norm(s) / sys->field()->from_int(2);
  auto f = pairing.solve(rhs);
  if (!f) throw std::logic_error("witness system is singular");
  return *f;
}

inline BrickPolytope brick_polytope(const std::shared_ptr<const SubwordComplex>& ctx,
                                    const GeneratorScaling& lambda = {}, bool parallel = false) {
  if (!ctx->is_realizing())
    throw NotRealizing("word is not realizing (rank defect " +
                       std::to_string(ctx->rank_defect()) + ")");
  auto sys = ctx->system();
  BrickPolytope out;
  out.ctx = ctx;
  out.lambda = lambda;
  out.facets = ctx->facets();
  size_t F = out.facets.size();
  out.vertices.resize(F);
  out.witnesses.resize(F);
  auto fill = [&](size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) {
      out.vertices[i] = brick_vector(ctx, out.facets[i], lambda);
      out.witnesses[i] = witness_covector(ctx, out.facets[i]);
    }
  };
  if (parallel && F > 8) {
    unsigned workers = std::max(2u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> futs;
    size_t chunk = (F + workers - 1) / workers;
    for (size_t lo = 0; lo < F; lo += chunk)
      futs.push_back(std::async(std::launch::async, fill, lo, std::min(F, lo + chunk)));
    for (auto& f : futs) f.get();
  } else {
    fill(0, F);
  }
  // certify: f_I is uniquely maximized at vertex I
  out.certified = true;
  for (size_t i = 0; i < F && out.certified; ++i) {
    Scalar vi = sys->inner_ww(out.witnesses[i], out.vertices[i]);
    for (size_t j = 0; j < F; ++j) {
      if (i == j) continue;
      if ((vi - sys->inner_ww(out.witnesses[i], out.vertices[j])).sign() <= 0) {
        out.certified = false;
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Vertex cones: the cone of the polytope at a brick vector is spanned by the
// negated root configuration.
struct VertexCone {
  Facet facet;
  std::vector<ExactVector> generators;  // negated root configuration, root coords
};

inline VertexCone vertex_cone(const std::shared_ptr<const SubwordComplex>& ctx, const Facet& I) {
  VertexCone c;
  c.facet = I;
  for (auto& v : ctx->root_configuration(I)) c.generators.push_back(vec_neg(std::move(v)));
  return c;
}

// Exact membership of a root-coordinate vector in the simplicial cone spanned
// by the generators (which must be a basis).
inline bool cone_contains(const std::shared_ptr<const CoxeterSystem>& sys,
                          const std::vector<ExactVector>& gens, const ExactVector& x) {
  ExactMatrix m = ExactMatrix::from_rows(gens).transpose();
  auto coeffs = m.solve(x);
  if (!coeffs) return false;
  for (const auto& c : *coeffs)
    if (c.sign() < 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// The map kappa: w maps to the unique facet whose root configuration sits
// inside w(Phi+).  Flip walk from the positive greedy facet, smallest
// offending position first.
inline Facet kappa(const std::shared_ptr<const SubwordComplex>& ctx, const GroupElement& w) {
  if (!ctx->is_realizing())
    throw NotRealizing("kappa requires a realizing word");
  RootPerm winv = perm_inverse(w.perm());
  Facet I = ctx->positive_greedy_facet();
  auto rm = ctx->root_map(I);
  long guard = 0;
  for (;;) {
    int pick = 0;
    for (int i : I) {
      if (perm_apply(winv, rm[i - 1]) < 0) {  // r(I,i) outside w(Phi+)
        pick = i;
        break;
      }
    }
    if (pick == 0) return I;
    int j = ctx->flip_partner(I, pick, rm);
    ctx->apply_flip_window(rm, pick, j);
    Facet J;
    J.reserve(I.size());
    for (int x : I)
      if (x != pick) J.push_back(x);
    J.insert(std::upper_bound(J.begin(), J.end(), j), j);
    I = std::move(J);
    if (++guard > 100000000L) throw std::logic_error("kappa walk did not terminate");
  }
}

// Positive-root index sets R+(I) and R-(I) (the latter negated into Phi+).
inline std::pair<IndexSet, IndexSet> root_config_split(
    const std::shared_ptr<const SubwordComplex>& ctx, const Facet& I) {
  int N = ctx->system()->positive_root_count();
  IndexSet plus(N), minus(N);
  for (int r : ctx->root_configuration_indices(I)) {
    if (r > 0)
      plus.set(r - 1);
    else
      minus.set(-r - 1);
  }
  return {plus, minus};
}

// Exact fiber of kappa over I: all w with R-(I) <= inv(w) <= Phi+ \ R+(I).
inline std::vector<GroupElement> kappa_fiber(const std::shared_ptr<const SubwordComplex>& ctx,
                                             const Facet& I, const GroupList& group) {
  auto [plus, minus] = root_config_split(ctx, I);
  std::vector<GroupElement> out;
  for (size_t i = 0; i < group.elements.size(); ++i) {
    const IndexSet& inv = group.inversion_sets[i];
    if (!minus.subset_of(inv)) continue;
    if (!(inv & plus).empty()) continue;
    out.push_back(group.elements[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Two-root cone tables: for each pair of positive roots, which positive roots
// lie in their non-negative span.  Cached per system.
inline const std::vector<std::vector<IndexSet>>& two_root_cone_table(
    const std::shared_ptr<const CoxeterSystem>& sys) {
  // the cached shared_ptr pins the system so keys can never be reused
  static std::map<const CoxeterSystem*,
                  std::pair<std::shared_ptr<const CoxeterSystem>, std::vector<std::vector<IndexSet>>>>
      cache;
  static std::mutex mx;
  std::lock_guard<std::mutex> lock(mx);
  auto it = cache.find(sys.get());
  if (it != cache.end()) return it->second.second;
  int N = sys->positive_root_count();
  std::vector<std::vector<IndexSet>> table(N, std::vector<IndexSet>(N, IndexSet(N)));
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) {
      IndexSet members(N);
      ExactMatrix span =
          ExactMatrix::from_rows({sys->root_vec(i), sys->root_vec(j)}).transpose();
      for (int k = 0; k < N; ++k) {
        auto coeffs = span.solve(sys->root_vec(k));
        if (!coeffs) continue;
        // coefficients: first multiplies root i, second root j
        if ((*coeffs)[0].sign() >= 0 && (*coeffs)[1].sign() >= 0) members.set(k);
      }
      // the span matrix for i == j degenerates; handle the ray directly
      if (i == j) {
        members = IndexSet(N);
        members.set(i);
      }
      table[i][j] = members;
      table[j][i] = table[i][j];
    }
  return cache.emplace(sys.get(), std::make_pair(sys, std::move(table))).first->second.second;
}

inline bool closed_under_combinations(const std::shared_ptr<const CoxeterSystem>& sys,
                                      const IndexSet& U) {
  const auto& table = two_root_cone_table(sys);
  int N = sys->positive_root_count();
  for (int i = 0; i < N; ++i) {
    if (!U.test(i)) continue;
    for (int j = i; j < N; ++j) {
      if (!U.test(j)) continue;
      if (!table[i][j].subset_of(U)) return false;
    }
  }
  return true;
}

inline bool is_biclosed(const std::shared_ptr<const CoxeterSystem>& sys, const IndexSet& U) {
  return closed_under_combinations(sys, U) && closed_under_combinations(sys, U.complement());
}

struct FiberBounds {
  IndexSet wedge;  // intersection of the inversion sets over the fiber
  IndexSet vee;    // union of the inversion sets over the fiber
  std::optional<GroupElement> meet, join;
};

// Iterative two-sequence closure computing the meet/join data of a fiber
// without enumerating the group.
inline FiberBounds fiber_meet_join(const std::shared_ptr<const SubwordComplex>& ctx,
                                   const Facet& I) {
  auto sys = ctx->system();
  const auto& table = two_root_cone_table(sys);
  int N = sys->positive_root_count();
  auto [plus, minus] = root_config_split(ctx, I);
  IndexSet wedge = minus, veebar = plus;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < N; ++a) {
      if (!wedge.test(a)) {
        bool add = false;
        // non-negative combination of two wedge roots
        for (int i = 0; i < N && !add; ++i) {
          if (!wedge.test(i)) continue;
          for (int j = i; j < N && !add; ++j)
            if (wedge.test(j) && table[i][j].test(a)) add = true;
        }
        // or: some wedge root is a combination of a and a veebar root
        for (int b = 0; b < N && !add; ++b) {
          if (!veebar.test(b)) continue;
          for (int g = 0; g < N && !add; ++g)
            if (wedge.test(g) && table[a][b].test(g)) add = true;
        }
        if (add) {
          wedge.set(a);
          changed = true;
        }
      }
      if (!veebar.test(a)) {
        bool add = false;
        for (int i = 0; i < N && !add; ++i) {
          if (!veebar.test(i)) continue;
          for (int j = i; j < N && !add; ++j)
            if (veebar.test(j) && table[i][j].test(a)) add = true;
        }
        for (int b = 0; b < N && !add; ++b) {
          if (!wedge.test(b)) continue;
          for (int g = 0; g < N && !add; ++g)
            if (veebar.test(g) && table[a][b].test(g)) add = true;
        }
        if (add) {
          veebar.set(a);
          changed = true;
        }
      }
    }
  }
  FiberBounds out;
  out.wedge = wedge;
  out.vee = veebar.complement();
  if (is_biclosed(sys, out.wedge)) out.meet = element_from_inversion_set(sys, out.wedge);
  if (is_biclosed(sys, out.vee)) out.join = element_from_inversion_set(sys, out.vee);
  return out;
}

// ---------------------------------------------------------------------------
// Increasing flip order.
struct FlipPoset {
  std::vector<Facet> facets;                  // canonical order
  std::vector<std::pair<int, int>> covers;    // Hasse diagram (from, to)
  std::vector<IndexSet> above;                // above[i] = strictly greater elements
  int source = -1, sink = -1;
  bool is_lattice = false;

  bool leq(int i, int j) const { return i == j || above[i].test(j); }
};

inline FlipPoset increasing_flip_poset(const std::shared_ptr<const SubwordComplex>& ctx) {
  FlipPoset p;
  p.facets = ctx->facets();
  size_t F = p.facets.size();
  std::map<Facet, int> idx;
  for (size_t i = 0; i < F; ++i) idx.emplace(p.facets[i], static_cast<int>(i));
  std::vector<std::vector<int>> up(F);
  std::vector<std::pair<int, int>> arcs;
  for (size_t i = 0; i < F; ++i)
    for (const auto& f : ctx->flips(p.facets[i]))
      if (f.i < f.j) {
        up[i].push_back(idx.at(f.target));
        arcs.push_back({static_cast<int>(i), idx.at(f.target)});
      }
  // reachability by reverse-topological accumulation (flip arcs are acyclic)
  std::vector<int> order;
  std::vector<int> indeg(F, 0);
  for (size_t i = 0; i < F; ++i)
    for (int j : up[i]) ++indeg[j];
  std::deque<int> queue;
  for (size_t i = 0; i < F; ++i)
    if (indeg[i] == 0) queue.push_back(static_cast<int>(i));
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (int j : up[v])
      if (--indeg[j] == 0) queue.push_back(j);
  }
  if (order.size() != F) throw std::logic_error("increasing flip graph has a cycle");
  p.above.assign(F, IndexSet(F));
  for (size_t t = F; t-- > 0;) {
    int v = order[t];
    for (int j : up[v]) {
      p.above[v].set(j);
      p.above[v] = p.above[v] | p.above[j];
    }
  }
  // Hasse covers: an arc is a cover unless a longer path joins its endpoints
  for (auto [a, b] : arcs) {
    bool cover = true;
    for (int k : up[a]) {
      if (k != b && p.above[k].test(b)) {
        cover = false;
        break;
      }
    }
    if (cover) p.covers.push_back({a, b});
  }
  std::sort(p.covers.begin(), p.covers.end());
  p.covers.erase(std::unique(p.covers.begin(), p.covers.end()), p.covers.end());
  // unique source and sink
  std::vector<int> indeg2(F, 0), outdeg2(F, 0);
  for (auto [a, b] : arcs) {
    ++outdeg2[a];
    ++indeg2[b];
  }
  for (size_t i = 0; i < F; ++i) {
    if (indeg2[i] == 0) p.source = static_cast<int>(i);
    if (outdeg2[i] == 0) p.sink = static_cast<int>(i);
  }
  // lattice flag by exhaustive meet/join existence
  p.is_lattice = true;
  for (size_t x = 0; x < F && p.is_lattice; ++x)
    for (size_t y = x + 1; y < F && p.is_lattice; ++y) {
      // meet: unique maximal common lower bound
      std::vector<int> lower, upper;
      for (size_t z = 0; z < F; ++z) {
        if (p.leq(static_cast<int>(z), static_cast<int>(x)) &&
            p.leq(static_cast<int>(z), static_cast<int>(y)))
          lower.push_back(static_cast<int>(z));
        if (p.leq(static_cast<int>(x), static_cast<int>(z)) &&
            p.leq(static_cast<int>(y), static_cast<int>(z)))
          upper.push_back(static_cast<int>(z));
      }
      auto unique_extreme = [&](const std::vector<int>& zs, bool want_max) {
        int best = -1;
        for (int z : zs) {
          bool extreme = true;
          for (int other : zs)
            if (want_max ? !p.leq(other, z) : !p.leq(z, other)) {
              extreme = false;
              break;
            }
          if (extreme) {
            best = z;
            break;
          }
        }
        return best >= 0;
      };
      if (!unique_extreme(lower, true) || !unique_extreme(upper, false)) p.is_lattice = false;
    }
  return p;
}

// Cross-check of the cover relation against weak-order covers inside fibers.
inline bool flip_poset_matches_weak_order(const std::shared_ptr<const SubwordComplex>& ctx,
                                          const FlipPoset& poset, const GroupList& group) {
  size_t F = poset.facets.size();
  std::vector<std::vector<int>> fiber_of(F);
  std::vector<int> facet_of(group.elements.size());
  std::map<Facet, int> idx;
  for (size_t i = 0; i < F; ++i) idx.emplace(poset.facets[i], static_cast<int>(i));
  for (size_t e = 0; e < group.elements.size(); ++e) {
    int f = idx.at(kappa(ctx, group.elements[e]));
    facet_of[e] = f;
    fiber_of[f].push_back(static_cast<int>(e));
  }
  // each weak-order cover maps to equality or an increasing-flip cover
  for (size_t e = 0; e < group.elements.size(); ++e) {
    for (int s = 0; s < group.sys->rank(); ++s) {
      if (group.elements[e].perm()[s] < 0) continue;
      int e2 = group.index_of(group.elements[e].mult_gen_right(s));
      int a = facet_of[e], b = facet_of[e2];
      if (a == b) continue;
      bool is_cover = std::find(poset.covers.begin(), poset.covers.end(),
                                std::make_pair(a, b)) != poset.covers.end();
      if (!is_cover) return false;
    }
  }
  // each cover is witnessed by a weak-order cover between its fibers
  for (auto [a, b] : poset.covers) {
    bool witnessed = false;
    for (int e : fiber_of[a]) {
      for (int s = 0; s < group.sys->rank() && !witnessed; ++s) {
        if (group.elements[e].perm()[s] < 0) continue;
        int e2 = group.index_of(group.elements[e].mult_gen_right(s));
        if (facet_of[e2] == b) witnessed = true;
      }
      if (witnessed) break;
    }
    if (!witnessed) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Normal cone of a vertex as the union of the chambers of its fiber.
struct NormalConeChambers {
  Facet facet;
  std::vector<ExactVector> generators;  // negated root configuration
  std::vector<GroupElement> chamber_elements;
  bool refinement_verified = false;  // every chamber sits inside the cone polar
};

inline NormalConeChambers normal_cone_chambers(const std::shared_ptr<const SubwordComplex>& ctx,
                                               const Facet& I, const GroupList& group) {
  NormalConeChambers out;
  out.facet = I;
  out.generators = vertex_cone(ctx, I).generators;
  out.chamber_elements = kappa_fiber(ctx, I, group);
  auto sys = ctx->system();
  auto cfg = ctx->root_configuration(I);
  out.refinement_verified = true;
  for (const auto& w : out.chamber_elements) {
    for (int s = 0; s < sys->rank() && out.refinement_verified; ++s) {
      ExactVector ray = w.act_weight_coords(sys->basis_vec(s));
      for (const auto& r : cfg)
        if (sys->pair_rw(r, ray).sign() < 0) {
          out.refinement_verified = false;
          break;
        }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Minkowski summands conv{ w(I,k) : I facet } and their orbit-polytope
// certificate.
struct MinkowskiSummand {
  int position = 0;
  std::vector<ExactVector> vertices;  // distinct weight values, lex sorted
  bool equal_norms = false;
  bool edges_root_directed = false;
  bool maximizers_consistent = false;

  bool certified() const { return equal_norms && edges_root_directed && maximizers_consistent; }
};

inline MinkowskiSummand minkowski_summand(const std::shared_ptr<const SubwordComplex>& ctx, int k,
                                          const BrickPolytope& poly) {
  auto sys = ctx->system();
  MinkowskiSummand out;
  out.position = k;
  const auto& facets = poly.facets;
  std::vector<ExactVector> value_of(facets.size());
  for (size_t i = 0; i < facets.size(); ++i)
    value_of[i] = ctx->weight_map(facets[i])[k - 1];
  std::vector<ExactVector> distinct = value_of;
  std::sort(distinct.begin(), distinct.end(), vec_lex_less);
  distinct.erase(std::unique(distinct.begin(), distinct.end(), vec_eq), distinct.end());
  out.vertices = distinct;

  // equal squared norms (vertices lie in one W-orbit sphere)
  out.equal_norms = true;
  if (!distinct.empty()) {
    Scalar norm0 = sys->inner_ww(distinct[0], distinct[0]);
    for (const auto& v : distinct)
      if (sys->inner_ww(v, v) != norm0) out.equal_norms = false;
  }

  // ridge adjacency: values split by a flip differ along a root direction
  out.edges_root_directed = true;
  std::map<Facet, size_t> idx;
  for (size_t i = 0; i < facets.size(); ++i) idx.emplace(facets[i], i);
  for (size_t i = 0; i < facets.size() && out.edges_root_directed; ++i) {
    for (const auto& f : ctx->flips(facets[i])) {
      if (f.i >= f.j) continue;
      size_t j = idx.at(f.target);
      if (vec_eq(value_of[i], value_of[j])) continue;
      ExactVector diff = sys->weight_to_root(vec_sub(value_of[i], value_of[j]));
      // parallel to some root?
      bool parallel = false;
      for (int r = 0; r < sys->positive_root_count() && !parallel; ++r) {
        const ExactVector& beta = sys->root_vec(r);
        int pivot = -1;
        for (int t = 0; t < sys->rank(); ++t)
          if (!beta[t].is_zero()) {
            pivot = t;
            break;
          }
        if (pivot < 0 || diff[pivot].is_zero()) continue;
        Scalar c = diff[pivot] / beta[pivot];
        bool ok = true;
        for (int t = 0; t < sys->rank(); ++t)
          if (diff[t] != c * beta[t]) {
            ok = false;
            break;
          }
        if (ok) parallel = true;
      }
      if (!parallel) out.edges_root_directed = false;
    }
  }

  // each facet's witness maximizes its own value over the whole summand
  out.maximizers_consistent = true;
  for (size_t i = 0; i < facets.size() && out.maximizers_consistent; ++i) {
    Scalar vi = sys->inner_ww(poly.witnesses[i], value_of[i]);
    for (size_t j = 0; j < facets.size(); ++j)
      if ((vi - sys->inner_ww(poly.witnesses[i], value_of[j])).sign() < 0) {
        out.maximizers_consistent = false;
        break;
      }
  }
  return out;
}

}  // namespace brickpoly

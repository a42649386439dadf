#pragma once

// Command line front end: JSON/DOT artifacts and verification suites on top
// of the library.  Exit codes: 0 success, 1 verification failure, 2 bad
// input or refused computation.

#include <random>

#include <CLI11.hpp>
#include <iostream>

#include "brickpoly/json_io.hpp"

namespace brickpoly::cli {

inline std::vector<int> parse_csv_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoi(tok));
  }
  return out;
}

inline std::vector<Rat> parse_csv_rats(const std::string& s) {
  std::vector<Rat> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(rat_from_string(tok));
  }
  return out;
}

struct Config {
  std::string type;
  int rank = 0;
  unsigned dihedral = 0;
  std::string group_descriptor;  // JSON: {"type":"A","rank":3} or {"coxeter_matrix":[[..]]}
  std::string coxeter_matrix;
  std::string word;
  std::string c_word;
  bool use_cluster = false;
  bool classical = false;
  bool floats = false;
  bool parallel = false;
  size_t cap = 0;  // 0: use default (environment override applies)

  size_t group_cap() const { return cap ? cap : default_group_cap(); }

  std::shared_ptr<const CoxeterSystem> build_system() const {
    if (!group_descriptor.empty()) {
      auto j = nlohmann::json::parse(group_descriptor);
      if (j.contains("coxeter_matrix"))
        return CoxeterSystem::from_coxeter_matrix(
            j["coxeter_matrix"].get<std::vector<std::vector<unsigned>>>());
      return CoxeterSystem::build(j.at("type").get<std::string>(), j.value("rank", 0),
                                  j.value("m", 0u));
    }
    if (!coxeter_matrix.empty()) {
      auto j = nlohmann::json::parse(coxeter_matrix);
      std::vector<std::vector<unsigned>> m;
      for (const auto& row : j) m.push_back(row.get<std::vector<unsigned>>());
      return CoxeterSystem::from_coxeter_matrix(m);
    }
    if (type.empty()) throw std::invalid_argument("specify --type/--rank or --coxeter-matrix");
    return CoxeterSystem::build(type, rank, dihedral);
  }

  Word parse_word(const std::string& s) const { return word_from_one_based(parse_csv_ints(s)); }

  Word resolve_word(const std::shared_ptr<const CoxeterSystem>& sys) const {
    if (!word.empty() && !(use_cluster || (!c_word.empty() && word.empty())))
      return parse_word(word);
    if (!c_word.empty()) {
      Word c = parse_word(c_word);
      Word q = c;
      Word sorting = c_sorting_word(sys, c, sys->longest_element());
      q.insert(q.end(), sorting.begin(), sorting.end());
      return q;
    }
    if (!word.empty()) return parse_word(word);
    throw std::invalid_argument("specify --word or --c (optionally with --cluster)");
  }

  JsonOptions json_options() const { return JsonOptions{classical, floats}; }
};

inline GroupElement parse_element(const std::shared_ptr<const CoxeterSystem>& sys,
                                  const std::string& spec) {
  if (spec.rfind("oneline:", 0) == 0) {
    return element_from_one_line(sys, parse_csv_ints(spec.substr(8)));
  }
  return word_to_element(sys, word_from_one_based(parse_csv_ints(spec)));
}

// ---------------------------------------------------------------------------
// Subcommand bodies.

inline Json facets_body(const Config& cfg) {
  auto sys = cfg.build_system();
  auto ctx = SubwordComplex::build(sys, cfg.resolve_word(sys));
  Json out;
  out["schema_version"] = 1;
  out["group"] = group_json(sys);
  out["word"] = word_json(ctx->word());
  out["completion"] = word_json(ctx->completion());
  out["facet_size"] = ctx->facet_size();
  out["facet_count"] = ctx->facets().size();
  Json fs = Json::array();
  for (const auto& f : ctx->facets()) fs.push_back(facet_json(f));
  out["facets"] = fs;
  return out;
}

inline Json brick_body(const Config& cfg) {
  auto sys = cfg.build_system();
  auto ctx = SubwordComplex::build(sys, cfg.resolve_word(sys));
  auto opt = cfg.json_options();
  auto poly = brick_polytope(ctx, {}, cfg.parallel);
  Json out;
  out["schema_version"] = 1;
  out["group"] = group_json(sys);
  out["word"] = word_json(ctx->word());
  Json fs = Json::array(), bv = Json::array(), certs = Json::array();
  for (size_t i = 0; i < poly.facets.size(); ++i) {
    fs.push_back(facet_json(poly.facets[i]));
    bv.push_back(vector_json(poly.vertices[i], opt));
    certs.push_back(Json{{"facet", facet_json(poly.facets[i])},
                         {"witness", vector_json(poly.witnesses[i], opt)}});
  }
  out["facets"] = fs;
  out["brick_vectors"] = bv;
  if (cfg.classical && has_classical(sys)) {
    Json cb = Json::array();
    Rat target = classical_brick_sum(ctx);
    for (const auto& v : poly.vertices)
      cb.push_back(classical_point_json(sys, v, target, opt));
    out["brick_vectors_classical"] = cb;
  }
  out["realizing"] = true;
  out["certificates"] = certs;
  if (poly.facets.size() <= 3000) {
    out["lattice"] = increasing_flip_poset(ctx).is_lattice;
  } else {
    out["lattice"] = nullptr;
  }
  return out;
}

inline Json kappa_body(const Config& cfg, const std::string& element_spec) {
  auto sys = cfg.build_system();
  auto ctx = SubwordComplex::build(sys, cfg.resolve_word(sys));
  GroupElement w = parse_element(sys, element_spec);
  Json out;
  out["schema_version"] = 1;
  out["element"] = element_json(w);
  out["facet"] = facet_json(kappa(ctx, w));
  return out;
}

inline Json fiber_body(const Config& cfg, const std::string& facet_spec) {
  auto sys = cfg.build_system();
  auto ctx = SubwordComplex::build(sys, cfg.resolve_word(sys));
  Facet I = parse_csv_ints(facet_spec);
  std::sort(I.begin(), I.end());
  if (!ctx->is_facet(I)) throw std::invalid_argument("positions do not form a facet");
  auto opt = cfg.json_options();
  auto group = enumerate_group(sys, cfg.group_cap());
  auto fib = kappa_fiber(ctx, I, group);
  auto bounds = fiber_meet_join(ctx, I);
  Json out;
  out["schema_version"] = 1;
  out["facet"] = facet_json(I);
  Json elems = Json::array();
  for (const auto& w : fib) elems.push_back(element_json(w));
  out["elements"] = elems;
  auto roots_json = [&](const IndexSet& s) {
    Json a = Json::array();
    for (int i : s.to_indices()) a.push_back(vector_json(sys->root_vec(i), opt));
    return a;
  };
  out["wedge_roots"] = roots_json(bounds.wedge);
  out["vee_roots"] = roots_json(bounds.vee);
  out["meet"] = bounds.meet ? element_json(*bounds.meet) : Json(nullptr);
  out["join"] = bounds.join ? element_json(*bounds.join) : Json(nullptr);
  return out;
}

inline std::string poset_dot(const FlipPoset& poset) {
  std::ostringstream os;
  os << "digraph increasing_flips {\n";
  for (const auto& f : poset.facets) os << "  \"" << facet_label(f) << "\";\n";
  for (auto [a, b] : poset.covers)
    os << "  \"" << facet_label(poset.facets[a]) << "\" -> \"" << facet_label(poset.facets[b])
       << "\";\n";
  os << "}\n";
  return os.str();
}

inline Json poset_body(const Config& cfg) {
  auto sys = cfg.build_system();
  auto ctx = SubwordComplex::build(sys, cfg.resolve_word(sys));
  auto poset = increasing_flip_poset(ctx);
  Json out;
  out["schema_version"] = 1;
  Json fs = Json::array();
  for (const auto& f : poset.facets) fs.push_back(facet_json(f));
  out["facets"] = fs;
  Json covers = Json::array();
  for (auto [a, b] : poset.covers) covers.push_back(Json::array({a, b}));
  out["covers"] = covers;
  out["source"] = facet_json(poset.facets[poset.source]);
  out["sink"] = facet_json(poset.facets[poset.sink]);
  out["lattice"] = poset.is_lattice;
  return out;
}

inline Json minkowski_body(const Config& cfg) {
  auto sys = cfg.build_system();
  auto ctx = SubwordComplex::build(sys, cfg.resolve_word(sys));
  auto opt = cfg.json_options();
  auto poly = brick_polytope(ctx, {}, cfg.parallel);
  Json out;
  out["schema_version"] = 1;
  Json summands = Json::array();
  bool all_certified = true;
  for (int k = 1; k <= ctx->size(); ++k) {
    auto s = minkowski_summand(ctx, k, poly);
    all_certified = all_certified && s.certified();
    Json sj;
    sj["position"] = k;
    Json vs = Json::array();
    for (const auto& v : s.vertices) vs.push_back(vector_json(v, opt));
    sj["vertices"] = vs;
    if (cfg.classical && has_classical(sys)) {
      Json cv = Json::array();
      Rat target = classical_orbit_sum(sys, sys->basis_vec(ctx->letter(k)));
      for (const auto& v : s.vertices) cv.push_back(classical_point_json(sys, v, target, opt));
      sj["vertices_classical"] = cv;
    }
    sj["equal_norms"] = s.equal_norms;
    sj["edges_root_directed"] = s.edges_root_directed;
    sj["maximizers_consistent"] = s.maximizers_consistent;
    sj["certified"] = s.certified();
    summands.push_back(sj);
  }
  out["summands"] = summands;
  // the weight function sums back to the brick vectors by construction; the
  // reported flag asserts the maximizer decomposition is certified throughout
  out["w_matroid_certified"] = all_certified;
  return out;
}

inline Json cluster_body(const Config& cfg) {
  auto sys = cfg.build_system();
  if (cfg.c_word.empty()) throw std::invalid_argument("cluster mode needs --c");
  auto cc = ClusterComplex::build(sys, cfg.parse_word(cfg.c_word));
  auto opt = cfg.json_options();
  Json out;
  out["schema_version"] = 1;
  out["group"] = group_json(sys);
  out["c"] = word_json(cc->coxeter_word());
  out["sorting_word"] = word_json(cc->sorting_word());
  out["cluster_word"] = word_json(cc->complex()->word());
  Json rows = Json::array();
  for (const auto& I : cc->complex()->facets()) {
    Json row;
    row["facet"] = facet_json(I);
    Json cl = Json::array();
    for (int r : cc->facet_to_cluster(I)) {
      ExactVector v = cc->complex()->root_vector(r);
      cl.push_back(vector_json(v, opt));
    }
    row["cluster"] = cl;
    GroupElement v = cc->facet_to_sortable(I);
    Json sortable = element_json(v);
    sortable["sorting_word"] = word_json(c_sorting_word(sys, cc->coxeter_word(), v));
    row["sortable"] = sortable;
    row["ncp"] = element_json(cc->facet_to_ncp(I));
    Json sub = Json::array();
    for (const auto& b : cc->fixed_space(cc->facet_to_ncp(I))) sub.push_back(vector_json(b, opt));
    row["subspace"] = sub;
    rows.push_back(row);
  }
  out["facets"] = rows;
  return out;
}

inline Json assoc_body(const Config& cfg, const std::string& q_spec) {
  auto sys = cfg.build_system();
  if (cfg.c_word.empty()) throw std::invalid_argument("assoc mode needs --c");
  auto cc = ClusterComplex::build(sys, cfg.parse_word(cfg.c_word));
  auto opt = cfg.json_options();
  ExactVector q;
  if (q_spec.empty()) {
    q = sys->balanced_point();
  } else {
    auto rats = parse_csv_rats(q_spec);
    if (static_cast<int>(rats.size()) != sys->rank())
      throw std::invalid_argument("--q needs one weight coordinate per generator");
    for (const auto& r : rats) q.push_back(sys->field()->from_rat(r));
  }
  auto cmp = cc->associahedron_by_removal(q, cfg.group_cap());
  Json out;
  out["schema_version"] = 1;
  out["q"] = vector_json(q, opt);
  out["translation"] = vector_json(cmp.translation_vec, opt);
  if (cfg.classical && has_classical(sys)) {
    GeneratorScaling lam = cmp.lambda;
    out["translation_classical"] =
        classical_point_json(sys, cmp.translation_vec, cc->classical_translation_sum(lam), opt);
  }
  Json kept = Json::array();
  for (const auto& ineq : cmp.kept) {
    Json kj{{"normal", vector_json(ineq.normal, opt)}, {"rhs", scalar_json(ineq.rhs, opt)}};
    if (cfg.classical && has_classical(sys))
      kj["normal_classical"] = classical_point_json(
          sys, ineq.normal, classical_orbit_sum(sys, sys->basis_vec(ineq.base_weight)), opt);
    kept.push_back(kj);
  }
  out["kept_inequalities"] = kept;
  out["permutahedron_facet_count"] = cmp.permutahedron_facets;
  out["comparison"] = cmp.equal();
  return out;
}

// ---------------------------------------------------------------------------
// Verification suites: one line per check, nonzero exit on failure.

class SuiteRunner {
 public:
  explicit SuiteRunner(std::ostream& out) : out_(out) {}
  void check(const std::string& name, bool ok) {
    out_ << (ok ? "ok " : "FAIL ") << name << "\n";
    if (!ok) failed_ = true;
  }
  template <typename F>
  void run(const std::string& name, F&& f) {
    bool ok = false;
    try {
      ok = f();
    } catch (const std::exception& e) {
      out_ << "FAIL " << name << " (" << e.what() << ")\n";
      failed_ = true;
      return;
    }
    check(name, ok);
  }
  bool failed() const { return failed_; }

 private:
  std::ostream& out_;
  bool failed_ = false;
};

inline void verify_exactnum(SuiteRunner& r) {
  r.run("field.crystallographic-collapse", [] {
    return Field::for_bond_orders({2, 3, 4, 6})->is_rational();
  });
  r.run("field.golden-identity", [] {
    auto f = Field::for_bond_orders({5});
    Scalar t = f->two_cos_pi_over(5);
    return (t * t - t - f->one()).is_zero() && t.sign() == 1;
  });
  r.run("field.heptagon-minpoly", [] {
    auto f = Field::for_bond_orders({7});
    auto mp = f->min_poly();
    return mp == std::vector<Rat>{Rat(1), Rat(-2), Rat(-1), Rat(1)};
  });
}

inline void verify_coxeter(SuiteRunner& r, const Config& cfg) {
  auto sys = cfg.build_system();
  r.run("coxeter.longest-word-length", [&] {
    return static_cast<int>(sys->longest_word().size()) == sys->positive_root_count();
  });
  r.run("coxeter.length-step-law", [&] {
    GroupElement w = sys->identity_element();
    std::mt19937 rng(17);
    for (int step = 0; step < 200; ++step) {
      int s = static_cast<int>(rng() % sys->rank());
      int expect = w.perm()[s] > 0 ? w.length() + 1 : w.length() - 1;
      GroupElement ws = w.mult_gen_right(s);
      if (ws.length() != expect) return false;
      w = ws;
    }
    return true;
  });
  r.run("coxeter.demazure-of-longest", [&] {
    return demazure_product(sys, sys->longest_word()) == sys->longest_element();
  });
}

inline void verify_subword(SuiteRunner& r, const Config& cfg) {
  auto sys = cfg.build_system();
  auto ctx = SubwordComplex::build(sys, cfg.resolve_word(sys));
  r.run("subword.root-bijection", [&] {
    for (const auto& I : ctx->facets()) {
      auto rm = ctx->root_map(I);
      std::set<int> seen;
      for (int k = 1; k <= ctx->size(); ++k) {
        if (std::binary_search(I.begin(), I.end(), k)) continue;
        if (rm[k - 1] <= 0 || !seen.insert(rm[k - 1]).second) return false;
      }
      if (static_cast<int>(seen.size()) != sys->positive_root_count()) return false;
    }
    return true;
  });
  r.run("subword.flip-involution-and-window", [&] {
    for (const auto& I : ctx->facets()) {
      auto rm = ctx->root_map(I);
      for (const auto& f : ctx->flips(I)) {
        auto [back, i2] = ctx->flip(f.target, f.j);
        if (back != I || i2 != f.i) return false;
        auto upd = rm;
        ctx->apply_flip_window(upd, f.i, f.j);
        if (upd != ctx->root_map(f.target)) return false;
      }
    }
    return true;
  });
  r.run("subword.greedy-trees-span", [&] {
    auto neg = ctx->greedy_tree(-1);
    auto pos = ctx->greedy_tree(+1);
    return neg.arcs.size() + 1 == ctx->facets().size() &&
           pos.arcs.size() + 1 == ctx->facets().size();
  });
  r.run("subword.root-configuration-injective", [&] {
    std::set<std::multiset<int>> seen;
    for (const auto& I : ctx->facets()) {
      auto cfg2 = ctx->root_configuration_indices(I);
      if (!seen.insert(std::multiset<int>(cfg2.begin(), cfg2.end())).second) return false;
    }
    return true;
  });
}

inline void verify_brick(SuiteRunner& r, const Config& cfg) {
  auto sys = cfg.build_system();
  auto ctx = SubwordComplex::build(sys, cfg.resolve_word(sys));
  if (!ctx->is_realizing()) {
    r.check("brick.realizing", false);
    return;
  }
  auto poly = brick_polytope(ctx, {}, cfg.parallel);
  r.check("brick.certificates", poly.certified);
  r.run("brick.flip-difference-law", [&] {
    for (size_t i = 0; i < poly.facets.size(); ++i) {
      auto rm = ctx->root_map(poly.facets[i]);
      for (const auto& f : ctx->flips(poly.facets[i])) {
        ExactVector bj = brick_vector(ctx, f.target);
        ExactVector diff = sys->weight_to_root(vec_sub(poly.vertices[i], bj));
        ExactVector root = ctx->root_vector(rm[f.i - 1]);
        int pivot = -1;
        for (int t = 0; t < sys->rank(); ++t)
          if (!root[t].is_zero()) {
            pivot = t;
            break;
          }
        Scalar c = diff[pivot] / root[pivot];
        if (c.sign() <= 0 || !vec_eq(diff, vec_scale(root, c))) return false;
      }
    }
    return true;
  });
  r.run("brick.minkowski-certificates", [&] {
    for (int k = 1; k <= ctx->size(); ++k)
      if (!minkowski_summand(ctx, k, poly).certified()) return false;
    return true;
  });
  try {
    auto group = enumerate_group(sys, cfg.group_cap());
    r.run("brick.fibers-partition", [&] {
      size_t total = 0;
      for (const auto& I : ctx->facets()) total += kappa_fiber(ctx, I, group).size();
      return total == group.elements.size();
    });
    r.run("brick.poset-weak-order-quotient", [&] {
      return flip_poset_matches_weak_order(ctx, increasing_flip_poset(ctx), group);
    });
  } catch (const GroupTooLarge&) {
    r.check("brick.fibers-partition (skipped: group over cap)", true);
  }
}

inline void verify_cambrian_suite(SuiteRunner& r, const Config& cfg) {
  auto sys = cfg.build_system();
  if (cfg.c_word.empty()) throw std::invalid_argument("cambrian suite needs --c");
  auto cc = ClusterComplex::build(sys, cfg.parse_word(cfg.c_word));
  r.run("cambrian.bijection-roundtrips", [&] {
    for (const auto& I : cc->complex()->facets()) {
      if (cc->cluster_to_facet(cc->facet_to_cluster(I)) != I) return false;
      auto [back, sortable] = cc->sortable_to_facet(cc->facet_to_sortable(I));
      if (!sortable || back != I) return false;
      if (cc->subspace_to_facet(cc->fixed_space(cc->facet_to_ncp(I))) != I) return false;
    }
    return true;
  });
  r.run("cambrian.cluster-ncp-product", [&] {
    for (const auto& I : cc->complex()->facets()) {
      GroupElement w = cc->facet_to_ncp(I);
      if (!is_noncrossing_partition(sys, cc->coxeter_word(), w)) return false;
      if (!(cc->cluster_to_ncp(cc->facet_to_cluster(I)) == w)) return false;
    }
    return true;
  });
  r.run("cambrian.skips-equal-root-configuration", [&] {
    for (const auto& I : cc->complex()->facets()) {
      GroupElement v = cc->facet_to_sortable(I);
      auto skips = cc->skips_set(v);
      auto cfg2 = cc->complex()->root_configuration_indices(I);
      std::multiset<int> a(skips.begin(), skips.end()), b(cfg2.begin(), cfg2.end());
      if (a != b) return false;
    }
    return true;
  });
  r.run("cambrian.associahedron-removal", [&] {
    return cc->associahedron_by_removal(sys->balanced_point(), cfg.group_cap()).equal();
  });
  try {
    auto group = enumerate_group(sys, cfg.group_cap());
    r.run("cambrian.lattice-and-fan", [&] {
      auto v = cc->verify_cambrian(group);
      return v.lattice_iso && v.fan_iso;
    });
    r.run("cambrian.singleton-agreement", [&] {
      for (const auto& w : group.elements) cc->singleton_report(w, group);
      return true;
    });
  } catch (const GroupTooLarge&) {
    r.check("cambrian.lattice-and-fan (skipped: group over cap)", true);
  }
}

inline int verify_body(const Config& cfg, const std::string& suite, std::ostream& out) {
  SuiteRunner runner(out);
  if (suite == "exactnum") {
    verify_exactnum(runner);
  } else if (suite == "coxeter") {
    verify_coxeter(runner, cfg);
  } else if (suite == "subword") {
    verify_subword(runner, cfg);
  } else if (suite == "brick") {
    verify_brick(runner, cfg);
  } else if (suite == "cambrian") {
    verify_cambrian_suite(runner, cfg);
  } else if (suite == "all") {
    verify_exactnum(runner);
    verify_coxeter(runner, cfg);
    if (!cfg.word.empty() || !cfg.c_word.empty()) {
      verify_subword(runner, cfg);
      verify_brick(runner, cfg);
    }
    if (!cfg.c_word.empty()) verify_cambrian_suite(runner, cfg);
  } else {
    throw std::invalid_argument("unknown suite: " + suite);
  }
  return runner.failed() ? 1 : 0;
}

// ---------------------------------------------------------------------------
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"brick polytopes of spherical subword complexes"};
  app.fallthrough();
  Config cfg;
  app.add_option("--type", cfg.type, "group family: A,B,C,D,E,F,G,H,I2");
  app.add_option("--rank", cfg.rank, "rank of the group");
  app.add_option("--dihedral", cfg.dihedral, "bond order m for type I2");
  app.add_option("--group", cfg.group_descriptor,
                 "JSON descriptor, e.g. {\"type\":\"A\",\"rank\":3}");
  app.add_option("--coxeter-matrix", cfg.coxeter_matrix, "explicit Coxeter matrix as JSON");
  app.add_option("--word", cfg.word, "word as comma separated 1-based generator indices");
  app.add_option("--c", cfg.c_word, "Coxeter element word");
  app.add_flag("--cluster", cfg.use_cluster, "use the cluster word of --c");
  app.add_flag("--classical", cfg.classical, "add classical coordinates (types A and B)");
  app.add_flag("--float", cfg.floats, "numeric output instead of exact strings");
  app.add_flag("--parallel", cfg.parallel, "parallel certificate checks");
  app.add_option("--cap", cfg.cap, "group enumeration cap (default 100000 or BRICK_GROUP_CAP)");

  auto* cmd_facets = app.add_subcommand("facets", "facet list of the subword complex");
  auto* cmd_brick = app.add_subcommand("brick", "brick vectors and realization certificates");
  auto* cmd_flip = app.add_subcommand("flipgraph", "flip graph as DOT");
  auto* cmd_tree = app.add_subcommand("greedy-tree", "greedy flip tree as DOT");
  std::string sign = "-";
  cmd_tree->add_option("--sign", sign, "+ or -")->required();
  auto* cmd_kappa = app.add_subcommand("kappa", "facet attached to a group element");
  std::string element_spec;
  cmd_kappa->add_option("--element", element_spec, "reduced word 1,2,... or oneline:...")
      ->required();
  auto* cmd_fiber = app.add_subcommand("fiber", "fiber data of a facet");
  std::string facet_spec;
  cmd_fiber->add_option("--facet", facet_spec, "comma separated positions")->required();
  auto* cmd_poset = app.add_subcommand("poset", "increasing flip order");
  bool poset_as_dot = false;
  cmd_poset->add_flag("--dot", poset_as_dot, "emit the Hasse diagram as DOT");
  auto* cmd_mink = app.add_subcommand("minkowski", "Minkowski summands and certificates");
  auto* cmd_cluster = app.add_subcommand("cluster", "full bijection table for a cluster word");
  auto* cmd_assoc = app.add_subcommand("assoc", "associahedron by permutahedron facet removal");
  std::string q_spec;
  cmd_assoc->add_option("--q", q_spec, "interior point, weight coordinates");
  auto* cmd_verify = app.add_subcommand("verify", "invariant suites");
  std::string suite;
  cmd_verify->add_option("--suite", suite, "exactnum|coxeter|subword|brick|cambrian|all")
      ->required();
  app.require_subcommand(1);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_facets->parsed()) {
      out << facets_body(cfg).dump(2) << "\n";
    } else if (cmd_brick->parsed()) {
      out << brick_body(cfg).dump(2) << "\n";
    } else if (cmd_flip->parsed()) {
      auto sys = cfg.build_system();
      out << flip_graph_dot(SubwordComplex::build(sys, cfg.resolve_word(sys)));
    } else if (cmd_tree->parsed()) {
      auto sys = cfg.build_system();
      auto ctx = SubwordComplex::build(sys, cfg.resolve_word(sys));
      out << greedy_tree_dot(ctx->greedy_tree(sign == "+" ? +1 : -1));
    } else if (cmd_kappa->parsed()) {
      out << kappa_body(cfg, element_spec).dump(2) << "\n";
    } else if (cmd_fiber->parsed()) {
      out << fiber_body(cfg, facet_spec).dump(2) << "\n";
    } else if (cmd_poset->parsed()) {
      if (poset_as_dot) {
        auto sys = cfg.build_system();
        out << poset_dot(increasing_flip_poset(SubwordComplex::build(sys, cfg.resolve_word(sys))));
      } else {
        out << poset_body(cfg).dump(2) << "\n";
      }
    } else if (cmd_mink->parsed()) {
      out << minkowski_body(cfg).dump(2) << "\n";
    } else if (cmd_cluster->parsed()) {
      out << cluster_body(cfg).dump(2) << "\n";
    } else if (cmd_assoc->parsed()) {
      out << assoc_body(cfg, q_spec).dump(2) << "\n";
    } else if (cmd_verify->parsed()) {
      return verify_body(cfg, suite, out);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotRealizing& e) {
    err << "refused: " << e.what() << "\n";
    return 2;
  } catch (const GroupTooLarge& e) {
    err << "refused: " << e.what() << "\n";
    return 2;
  } catch (const NotFiniteType& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace brickpoly::cli

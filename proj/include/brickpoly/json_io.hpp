#pragma once

// JSON and DOT serialization.  All numeric output is exact ("p/q" strings,
// extension elements as coefficient lists) unless the float view is asked
// for; key order is fixed so identical invocations are byte-identical.

#include <nlohmann/json.hpp>

#include "brickpoly/cambrian.hpp"

namespace brickpoly {

using Json = nlohmann::ordered_json;

struct JsonOptions {
  bool classical = false;  // add classical coordinate views (types A and B)
  bool floats = false;     // numeric view instead of exact strings
};

inline Json scalar_json(const Scalar& s, const JsonOptions& opt) {
  if (opt.floats) return s.to_double();
  if (s.field().is_rational()) return rat_to_string(s.coeffs()[0]);
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(rat_to_string(c));
  return Json{{"field", Json{{"m", s.field().generator_order()}}}, {"coeffs", coeffs}};
}

inline Json vector_json(const ExactVector& v, const JsonOptions& opt) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(scalar_json(s, opt));
  return a;
}

inline Json rat_vector_json(const std::vector<Rat>& v, const JsonOptions& opt) {
  Json a = Json::array();
  for (const auto& r : v) {
    if (opt.floats)
      a.push_back(rat_to_double(r));
    else
      a.push_back(rat_to_string(r));
  }
  return a;
}

inline Json facet_json(const Facet& f) { return Json(f); }

inline Json word_json(const Word& w) { return Json(word_to_one_based(w)); }

inline bool has_classical(const std::shared_ptr<const CoxeterSystem>& sys) {
  return sys->family() == GroupFamily::A || sys->family() == GroupFamily::B;
}

inline Json element_json(const GroupElement& w, const JsonOptions& opt = {}) {
  auto sys = w.system();
  Json out;
  if (sys->family() == GroupFamily::A) {
    out["one_line"] = one_line(w);
  } else if (sys->family() == GroupFamily::B) {
    out["signed_one_line"] = one_line(w);
  }
  out["word"] = word_json(w.canonical_word());
  (void)opt;
  return out;
}

inline Json group_json(const std::shared_ptr<const CoxeterSystem>& sys) {
  Json g;
  g["type"] = sys->type_name();
  g["rank"] = sys->rank();
  g["positive_roots"] = sys->positive_root_count();
  g["field_degree"] = sys->field()->degree();
  return g;
}

// classical view of a weight-coordinate point whose orbit representative (in
// weight coordinates) is known; for type B the representative is ignored
inline Json classical_point_json(const std::shared_ptr<const CoxeterSystem>& sys,
                                 const ExactVector& v, const Rat& orbit_sum,
                                 const JsonOptions& opt) {
  return rat_vector_json(
      classical_from_weight_coords(sys, v,
                                   sys->family() == GroupFamily::A
                                       ? std::optional<Rat>(orbit_sum)
                                       : std::nullopt),
      opt);
}

// ---------------------------------------------------------------------------
// DOT exports.

inline std::string facet_label(const Facet& f) {
  std::string s;
  for (size_t i = 0; i < f.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(f[i]);
  }
  return s;
}

inline std::string flip_graph_dot(const std::shared_ptr<const SubwordComplex>& ctx) {
  std::ostringstream os;
  os << "digraph flips {\n";
  for (const auto& I : ctx->facets()) os << "  \"" << facet_label(I) << "\";\n";
  for (const auto& I : ctx->facets())
    for (const auto& f : ctx->flips(I)) {
      if (f.i >= f.j) continue;  // orient increasing, list each edge once
      os << "  \"" << facet_label(I) << "\" -> \"" << facet_label(f.target) << "\" [label=\""
         << f.i << "\xe2\x86\x92" << f.j << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

inline std::string greedy_tree_dot(const SubwordComplex::GreedyTree& tree) {
  std::ostringstream os;
  os << "digraph greedy" << (tree.sign < 0 ? "_negative" : "_positive") << " {\n";
  os << "  \"" << facet_label(tree.root) << "\" [shape=doublecircle];\n";
  for (const auto& a : tree.arcs)
    os << "  \"" << facet_label(a.from) << "\" -> \"" << facet_label(a.to) << "\" [label=\""
       << a.i << "\xe2\x86\x92" << a.j << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace brickpoly

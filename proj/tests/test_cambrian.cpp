#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "brickpoly/cambrian.hpp"

using namespace brickpoly;

namespace {

std::shared_ptr<const CoxeterSystem> A(int n) { return CoxeterSystem::build("A", n); }

std::shared_ptr<const ClusterComplex> cc3() {
  static auto cc = ClusterComplex::build(A(3), word_from_one_based({1, 2, 3}));
  return cc;
}

std::vector<Rat> rvec(std::vector<int> v) { return std::vector<Rat>(v.begin(), v.end()); }

std::vector<Rat> cls_signed_root(const std::shared_ptr<const CoxeterSystem>& sys, int idx) {
  ExactVector v = sys->root_vec(std::abs(idx) - 1);
  if (idx < 0) v = vec_neg(std::move(v));
  return classical_from_root_coords(sys, v);
}

GroupElement elem(const std::shared_ptr<const CoxeterSystem>& sys, std::vector<int> ol) {
  return element_from_one_line(sys, std::move(ol));
}

// all reduced words of the distinct Coxeter elements (one canonical word each)
std::vector<Word> all_coxeter_words(const std::shared_ptr<const CoxeterSystem>& sys) {
  int n = sys->rank();
  Word perm;
  for (int i = 0; i < n; ++i) perm.push_back(i);
  std::map<RootPerm, Word> by_element;
  do {
    GroupElement c = word_to_element(sys, perm);
    auto it = by_element.find(c.perm());
    if (it == by_element.end() || perm < it->second) by_element[c.perm()] = perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<Word> out;
  for (auto& [k, w] : by_element) out.push_back(w);
  return out;
}

}  // namespace

TEST_CASE("cluster complex of the linear Coxeter element") {
  auto cc = cc3();
  CHECK(cc->complex()->word() == word_from_one_based({1, 2, 3, 1, 2, 3, 1, 2, 1}));
  CHECK(cc->complex()->size() == 9);
  CHECK(cc->complex()->facets().size() == 14);
  std::set<Facet> expect{{1, 2, 3}, {2, 3, 4}, {3, 4, 5}, {4, 5, 6}, {5, 6, 7},
                         {6, 7, 8}, {6, 8, 9}, {4, 6, 9}, {3, 5, 7}, {2, 4, 9},
                         {1, 3, 7}, {1, 7, 8}, {1, 8, 9}, {1, 2, 9}};
  std::set<Facet> got(cc->complex()->facets().begin(), cc->complex()->facets().end());
  CHECK(got == expect);
}

TEST_CASE("almost positive roots are listed in the paper order") {
  auto cc = cc3();
  std::vector<std::vector<Rat>> expect{
      rvec({1, -1, 0, 0}), rvec({0, 1, -1, 0}), rvec({0, 0, 1, -1}),
      rvec({-1, 1, 0, 0}), rvec({-1, 0, 1, 0}), rvec({-1, 0, 0, 1}),
      rvec({0, -1, 1, 0}), rvec({0, -1, 0, 1}), rvec({0, 0, -1, 1})};
  REQUIRE(cc->almost_positive().size() == expect.size());
  for (size_t i = 0; i < expect.size(); ++i)
    CHECK(cls_signed_root(cc->system(), cc->almost_positive()[i]) == expect[i]);
}

TEST_CASE("facet to cluster and back") {
  auto cc = cc3();
  auto cl = cc->facet_to_cluster({4, 6, 9});
  REQUIRE(cl.size() == 3);
  CHECK(cls_signed_root(cc->system(), cl[0]) == rvec({-1, 1, 0, 0}));
  CHECK(cls_signed_root(cc->system(), cl[1]) == rvec({-1, 0, 0, 1}));
  CHECK(cls_signed_root(cc->system(), cl[2]) == rvec({0, 0, -1, 1}));
  CHECK(cc->cluster_to_facet(cl) == Facet{4, 6, 9});
  // the first n positions give the negated simple roots
  auto neg = cc->facet_to_cluster(cc->iota_facet());
  for (int s = 0; s < 3; ++s) CHECK(neg[s] == -(s + 1));
  // positions 6, 8, 9
  auto cl2 = cc->facet_to_cluster({6, 8, 9});
  CHECK(cls_signed_root(cc->system(), cl2[0]) == rvec({-1, 0, 0, 1}));
  CHECK(cls_signed_root(cc->system(), cl2[1]) == rvec({0, -1, 0, 1}));
  CHECK(cls_signed_root(cc->system(), cl2[2]) == rvec({0, 0, -1, 1}));
  // round trips over every facet
  for (const auto& I : cc->complex()->facets())
    CHECK(cc->cluster_to_facet(cc->facet_to_cluster(I)) == I);
  CHECK_THROWS_AS(cc->cluster_to_facet({99}), std::invalid_argument);
}

TEST_CASE("cluster and root configuration determine each other") {
  auto cc = cc3();
  for (const auto& I : cc->complex()->facets()) {
    auto conv = cc->cluster_root_conversion(I);
    CHECK(conv.verified);
  }
  auto conv = cc->cluster_root_conversion({4, 6, 9});
  CHECK(conv.split == 0);
  CHECK(cls_signed_root(cc->system(), conv.alphas[2]) == rvec({0, 0, 1, -1}));
  CHECK(conv.alphas[2] == -conv.betas[2]);
  // the product of the configuration reflections recovers the Coxeter element
  GroupElement prod = cc->system()->identity_element();
  for (int p = 0; p < 3; ++p)
    prod = prod * cc->system()->reflection_element(std::abs(conv.alphas[p]) - 1);
  CHECK(one_line(prod) == std::vector<int>{2, 3, 4, 1});
}

TEST_CASE("facet to sortable element") {
  auto cc = cc3();
  auto sys = cc->system();
  GroupElement v = cc->facet_to_sortable({4, 6, 9});
  CHECK(one_line(v) == std::vector<int>{2, 4, 3, 1});
  CHECK(c_sorting_word(sys, cc->coxeter_word(), v) == word_from_one_based({1, 2, 3, 2}));
  CHECK(cc->facet_to_sortable(cc->iota_facet()).is_identity());
  CHECK(cc->facet_to_sortable({6, 8, 9}) == sys->longest_element());
  CHECK(c_sorting_word(sys, cc->coxeter_word(), sys->longest_element()) ==
        word_from_one_based({1, 2, 3, 1, 2, 1}));
  // mutually inverse on all facets; backward flags non-sortables
  for (const auto& I : cc->complex()->facets()) {
    auto [back, sortable] = cc->sortable_to_facet(cc->facet_to_sortable(I));
    CHECK(sortable);
    CHECK(back == I);
  }
  auto [f, sortable] = cc->sortable_to_facet(elem(sys, {3, 4, 1, 2}));
  CHECK(!sortable);
  CHECK(f == kappa(cc->complex(), elem(sys, {3, 4, 1, 2})));
}

TEST_CASE("skip sets") {
  auto cc = cc3();
  auto sys = cc->system();
  auto e_skips = cc->skips_set(sys->identity_element());
  CHECK(e_skips == std::vector<int>({1, 2, 3}));  // the simple roots
  auto s2431 = cc->skips_set(elem(sys, {2, 4, 3, 1}));
  std::multiset<std::vector<Rat>> got;
  for (int r : s2431) got.insert(cls_signed_root(sys, r));
  std::multiset<std::vector<Rat>> expect{rvec({0, -1, 1, 0}), rvec({1, 0, -1, 0}),
                                         rvec({0, 0, 1, -1})};
  CHECK(got == expect);
  for (int r : cc->skips_set(sys->longest_element())) CHECK(r < 0);
  CHECK_THROWS_AS(cc->skips_set(elem(sys, {3, 4, 1, 2})), std::invalid_argument);
}

TEST_CASE("skip sets equal root configurations across all Coxeter elements") {
  auto sys = A(3);
  auto group = enumerate_group(sys);
  for (const Word& c : all_coxeter_words(sys)) {
    auto cc = ClusterComplex::build(sys, c);
    for (const auto& w : group.elements) {
      if (!is_c_sortable(sys, c, w)) continue;
      auto skips = cc->skips_set(w);
      auto cfg = cc->complex()->root_configuration_indices(cc->sortable_to_facet(w).first);
      std::multiset<int> a(skips.begin(), skips.end()), b(cfg.begin(), cfg.end());
      CHECK(a == b);
    }
  }
}

TEST_CASE("noncrossing partitions from facets and clusters") {
  auto cc = cc3();
  auto sys = cc->system();
  GroupElement ncp = cc->facet_to_ncp({4, 6, 9});
  CHECK(one_line(ncp) == std::vector<int>{3, 2, 4, 1});
  CHECK(cc->facet_to_ncp(cc->iota_facet()).is_identity());
  GroupElement ncp2 = cc->cluster_to_ncp(cc->facet_to_cluster({4, 6, 9}));
  CHECK(ncp2 == ncp);
  // identity from the worked example: s_{e4-e3} s_{e4-e1} = (34)(14) = 3241
  for (const auto& I : cc->complex()->facets()) {
    GroupElement w = cc->facet_to_ncp(I);
    CHECK(is_noncrossing_partition(sys, cc->coxeter_word(), w));
    CHECK(cc->cluster_to_ncp(cc->facet_to_cluster(I)) == w);
    // diagram commutes through the sortable element's cover reflections
    GroupElement v = cc->facet_to_sortable(I);
    auto cov = cover_reflections(sys, v, &cc->coxeter_word());
    CHECK(cov.product == w);
  }
}

TEST_CASE("fixed spaces and the inverse recursion") {
  auto cc = cc3();
  auto sys = cc->system();
  GroupElement ncp = cc->facet_to_ncp({4, 6, 9});
  auto fix = cc->fixed_space(ncp);
  REQUIRE(fix.size() == 1);  // essential fixed line of {x1 = x3 = x4}
  // the classical span of the fixed space plus the invariant line is
  // { x1 = x3 = x4 }
  auto cls = classical_from_root_coords(sys, fix[0]);
  CHECK(cls[0] == cls[2]);
  CHECK(cls[0] == cls[3]);
  CHECK(cc->subspace_to_facet(fix) == Facet{4, 6, 9});
  // identity: full space goes to the leading facet
  auto e_fix = cc->fixed_space(sys->identity_element());
  CHECK(e_fix.size() == 3);
  CHECK(cc->subspace_to_facet(e_fix) == cc->iota_facet());
  // round trips over every facet
  for (const auto& I : cc->complex()->facets())
    CHECK(cc->subspace_to_facet(cc->fixed_space(cc->facet_to_ncp(I))) == I);
  // garbage subspaces are flagged
  std::vector<ExactVector> junk{sys->basis_vec(0)};
  CHECK_THROWS_AS(cc->subspace_to_facet(junk), std::invalid_argument);
}

TEST_CASE("ncs recursion works for every Coxeter element of rank 3") {
  auto sys = A(3);
  for (const Word& c : all_coxeter_words(sys)) {
    auto cc = ClusterComplex::build(sys, c);
    for (const auto& I : cc->complex()->facets())
      CHECK(cc->subspace_to_facet(cc->fixed_space(cc->facet_to_ncp(I))) == I);
  }
}

TEST_CASE("downward projection") {
  auto cc = cc3();
  auto sys = cc->system();
  auto group = enumerate_group(sys);
  CHECK(one_line(cc->pi_down(elem(sys, {3, 1, 2, 4}), group)) == std::vector<int>{1, 3, 2, 4});
  CHECK(one_line(cc->pi_down(elem(sys, {4, 3, 1, 2}), group)) == std::vector<int>{1, 4, 3, 2});
  CHECK(kappa(cc->complex(), elem(sys, {3, 1, 2, 4})) == Facet{1, 3, 7});
  CHECK(kappa(cc->complex(), elem(sys, {4, 3, 1, 2})) == Facet{1, 8, 9});
  for (const auto& w : group.elements)
    if (is_c_sortable(sys, cc->coxeter_word(), w)) CHECK(cc->pi_down(w, group) == w);
}

TEST_CASE("singletons") {
  auto cc = cc3();
  auto sys = cc->system();
  auto group = enumerate_group(sys);
  CHECK(cc->singleton_report(sys->identity_element(), group).is_singleton);
  CHECK(cc->singleton_report(sys->longest_element(), group).is_singleton);
  auto rep = cc->singleton_report(elem(sys, {1, 3, 2, 4}), group);
  CHECK(!rep.is_singleton);  // shares its facet {1,3,7} with 3124
  // all six characterizations agree for every element (throws otherwise)
  int singles = 0;
  for (const auto& w : group.elements)
    if (cc->singleton_report(w, group).is_singleton) ++singles;
  CHECK(singles > 2);
}

TEST_CASE("associahedron by facet removal") {
  auto cc = cc3();
  auto sys = cc->system();
  auto cmp = cc->associahedron_by_removal(sys->balanced_point());
  CHECK(classical_from_weight_coords(sys, cmp.translation_vec,
                                     cc->classical_translation_sum()) ==
        rvec({3, 2, 3, 6}));
  CHECK(cmp.equal());
  CHECK(cmp.permutahedron_facets == 14);
  std::set<std::vector<Rat>> normals;
  for (const auto& ineq : cmp.kept) {
    std::vector<Rat> k;
    for (const auto& s : ineq.normal)
      for (const auto& c : s.coeffs()) k.push_back(c);
    normals.insert(k);
  }
  CHECK(normals.size() == 9);  // facet count of the 3-dimensional associahedron
  CHECK_THROWS_AS(cc->associahedron_by_removal(sys->zero_vec()), std::invalid_argument);
}

TEST_CASE("scaled associahedron for a non-balanced interior point") {
  auto cc = cc3();
  auto sys = cc->system();
  ExactVector q{Scalar(Rat(1)), Scalar(Rat(2)), Scalar(Rat(1, 2))};
  auto cmp = cc->associahedron_by_removal(q);
  CHECK(cmp.equal());
  CHECK(cmp.lambda.size() == 3);
}

TEST_CASE("Cambrian lattice and fan checks for small types") {
  for (int n : {2, 3}) {
    auto sys = A(n);
    auto group = enumerate_group(sys);
    for (const Word& c : all_coxeter_words(sys)) {
      auto cc = ClusterComplex::build(sys, c);
      auto v = cc->verify_cambrian(group);
      CAPTURE(n, word_to_one_based(c));
      CHECK(v.lattice_iso);
      CHECK(v.fan_iso);
    }
  }
}

TEST_CASE("weight configuration normality on cluster words") {
  auto cc = cc3();
  auto sys = cc->system();
  auto ctx = cc->complex();
  std::set<std::vector<Rat>> all_normals, expected;
  auto key = [&](const ExactVector& v) {
    std::vector<Rat> k;
    for (const auto& s : v)
      for (const auto& c : s.coeffs()) k.push_back(c);
    return k;
  };
  for (const auto& I : ctx->facets()) {
    auto wm = ctx->weight_map(I);
    auto rm = ctx->root_map(I);
    for (int i : I) {
      all_normals.insert(key(wm[i - 1]));
      for (int j : I) {
        Scalar pr = sys->pair_rw(ctx->root_vector(rm[j - 1]), wm[i - 1]);
        if (i == j)
          CHECK(pr.sign() > 0);
        else
          CHECK(pr.is_zero());
      }
    }
  }
  for (int s = 0; s < sys->rank(); ++s) expected.insert(key(sys->basis_vec(s)));
  for (int p = 1; p <= sys->positive_root_count(); ++p)
    expected.insert(key(cc->facet_normal_weight(p)));
  CHECK(all_normals == expected);
}

TEST_CASE("facet counts match the Catalan numbers for small ranks") {
  auto a2 = A(2);
  for (const Word& c : all_coxeter_words(a2))
    CHECK(ClusterComplex::build(a2, c)->complex()->facets().size() == 5);
  auto a3 = A(3);
  for (const Word& c : all_coxeter_words(a3))
    CHECK(ClusterComplex::build(a3, c)->complex()->facets().size() == 14);
}

TEST_CASE("commutation utilities") {
  auto sys = A(3);
  Word a = word_from_one_based({1, 3, 2});
  Word b = word_from_one_based({3, 1, 2});
  auto pm = commutation_map(sys, a, b);
  CHECK(pm == std::vector<int>({2, 1, 3}));
  CHECK_THROWS_AS(commutation_map(sys, word_from_one_based({1, 2}),
                                  word_from_one_based({2, 1})),
                  std::invalid_argument);
  auto cls = commutation_class(sys, word_from_one_based({1, 3}));
  CHECK(cls.size() == 2);
  CHECK(coxeter_word_with_final(sys, word_from_one_based({2, 1, 3}), 0) ==
        word_from_one_based({2, 3, 1}));
  CHECK_THROWS_AS(coxeter_word_with_final(sys, word_from_one_based({1, 2, 3}), 0),
                  std::invalid_argument);
}

TEST_CASE("golden-field cluster complex of the icosahedral group") {
  auto sys = CoxeterSystem::build("H", 3);
  auto cc = ClusterComplex::build(sys, word_from_one_based({1, 2, 3}));
  CHECK(cc->complex()->facets().size() == 32);
  // bijection roundtrips exercise the extension-field arithmetic end to end
  auto group = enumerate_group(sys);
  for (const auto& I : cc->complex()->facets()) {
    auto [back, sortable] = cc->sortable_to_facet(cc->facet_to_sortable(I));
    CHECK(sortable);
    CHECK(back == I);
    CHECK(cc->cluster_to_facet(cc->facet_to_cluster(I)) == I);
    GroupElement ncp = cc->facet_to_ncp(I);
    CHECK(is_noncrossing_partition(sys, cc->coxeter_word(), ncp));
    CHECK(cc->subspace_to_facet(cc->fixed_space(ncp)) == I);
    CHECK(cc->cluster_root_conversion(I).verified);
  }
  auto v = cc->verify_cambrian(group);
  CHECK(v.lattice_iso);
  CHECK(v.fan_iso);
  CHECK(cc->associahedron_by_removal(sys->balanced_point()).equal());
}

TEST_CASE("environment variable overrides the enumeration cap") {
  setenv("BRICK_GROUP_CAP", "7", 1);
  CHECK(default_group_cap() == 7);
  CHECK_THROWS_AS(enumerate_group(A(3)), GroupTooLarge);
  unsetenv("BRICK_GROUP_CAP");
  CHECK(default_group_cap() == 100000);
}

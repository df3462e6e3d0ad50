#include <random>

#include "doctest.h"
#include "gammadepth/twovar.hpp"
#include "test_util.hpp"

using namespace gd;

namespace {

Polynomial P(const Ring& R, const char* f) { return parse_polynomial(R, f); }

Submodule I(const Ring& R, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> ps;
  for (const char* g : gens) ps.push_back(P(R, g));
  return ideal(R, ps);
}

Submodule power_of_max(const Ring& R, int d) {
  std::vector<Polynomial> ps;
  for (const auto& m : Monomial::all_of_degree(R.nvars(), d)) ps.push_back(Polynomial::monomial(R, m));
  return ideal(R, ps);
}

// Random proper ideal of K[x1, x2] whose quotient has projective dimension 2.
Submodule random_pd2_ideal(std::mt19937_64& rng, const Ring& R) {
  std::uniform_int_distribution<int> ng(2, 4), deg(1, 4), nt(1, 2);
  while (true) {
    std::vector<Polynomial> gens;
    int k = ng(rng);
    for (int g = 0; g < k; ++g) gens.push_back(test::random_homogeneous(rng, R, deg(rng), nt(rng)));
    Submodule J = ideal(R, gens);
    if (J.is_zero() || J.is_whole()) continue;
    if (minimal_resolution(PresentedModule(J.ambient(), J)).length() == 2) return J;
  }
}

}  // namespace

TEST_CASE("beta formula examples") {
  Ring R(2);
  auto r = beta_formula_check(I(R, {"x1^2", "x1x2", "x2^3"}), 5, 1);
  CHECK(r.applicable);
  CHECK(r.pd == 2);
  CHECK(r.beta1 == 3);
  CHECK(r.indeg_generators == 2);
  CHECK(r.indeg_torsion == Degree(0));
  CHECK(r.formula_holds);
  CHECK(r.cwl);
  CHECK(r.full_gamma_depth);
  CHECK(r.agree);

  auto m2 = beta_formula_check(power_of_max(R, 2), 5, 1);
  CHECK(m2.beta1 == 3);
  CHECK(m2.agree);
  CHECK(m2.cwl);

  // Complete intersection: 2 != 2 - 0 + 1, and not componentwise linear.
  auto ci = beta_formula_check(I(R, {"x1^2", "x2^3"}), 5, 1);
  CHECK(ci.applicable);
  CHECK(!ci.formula_holds);
  CHECK(!ci.cwl);
  CHECK(ci.agree);

  // Principal ideals have pd 1 and are routed around the formula.
  auto pr = beta_formula_check(I(R, {"x1x2 + x2^2"}), 5, 1);
  CHECK(!pr.applicable);
  CHECK(pr.pd == 1);
  CHECK(pr.cwl);
  CHECK(pr.full_gamma_depth);

  CHECK_THROWS_AS(beta_formula_check(I(Ring(3), {"x1"}), 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(beta_formula_check(Submodule::zero(GradedFreeModule(R, {0})), 1, 1), std::invalid_argument);
}

TEST_CASE("beta formula on random ideals") {
  Ring R(2);
  std::mt19937_64 rng(77);
  int cwl = 0;
  for (int trial = 0; trial < 30; ++trial) {
    Submodule J = random_pd2_ideal(rng, R);
    CAPTURE(J.to_string());
    auto r = beta_formula_check(J, 10, static_cast<std::uint64_t>(trial));
    CHECK(r.applicable);
    CHECK(r.agree);
    CHECK(r.cwl == r.full_gamma_depth);
    cwl += r.cwl;
  }
  CHECK(cwl > 0);
  CHECK(cwl < 30);
}

TEST_CASE("decomposition examples") {
  Ring R(2);
  auto d = decompose_cwl_ideal(I(R, {"x1^2", "x1x2", "x2^3"}));
  REQUIRE(d.decomposition);
  const auto& parts = d.decomposition->parts;
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].d == 2);
  CHECK(parts[0].e == 1);
  CHECK(parts[0].f == P(R, "x1"));
  CHECK(parts[1].d == 3);
  CHECK(parts[1].e == 0);
  CHECK(parts[1].f == P(R, "1"));
  CHECK(d.decomposition->divides == std::vector<bool>{true});
  CHECK(d.decomposition->verified);

  for (int k = 1; k <= 4; ++k) {
    auto p = decompose_cwl_ideal(power_of_max(R, k));
    REQUIRE(p.decomposition);
    CHECK(p.decomposition->parts.size() == 1);
    CHECK(p.decomposition->parts[0].d == k);
    CHECK(p.decomposition->parts[0].e == 0);
  }

  auto xm2 = decompose_cwl_ideal(I(R, {"x1^3", "x1^2x2", "x1x2^2"}));
  REQUIRE(xm2.decomposition);
  REQUIRE(xm2.decomposition->parts.size() == 1);
  CHECK(xm2.decomposition->parts[0].d == 3);
  CHECK(xm2.decomposition->parts[0].e == 1);
  CHECK(xm2.decomposition->parts[0].f == P(R, "x1"));

  auto ci = decompose_cwl_ideal(I(R, {"x1^2", "x2^3"}));
  CHECK(!ci.decomposition);
  CHECK(ci.refusal == "I is not componentwise linear");
  auto pr = decompose_cwl_ideal(I(R, {"x1"}));
  CHECK(!pr.decomposition);
  CHECK(!pr.refusal.empty());
}

TEST_CASE("building ideals from decompositions") {
  Ring R(2);
  Submodule built = build_cwl_ideal({CwlPart{2, 1, P(R, "x1")}, CwlPart{3, 0, P(R, "1")}});
  CHECK(built.same_as(I(R, {"x1^2", "x1x2", "x2^3"})));
  CHECK(built.minimal_generators().size() == 3);
  CHECK(socle(PresentedModule(built.ambient(), built)).dims.total() == 2);

  CHECK(build_cwl_ideal({CwlPart{3, 0, P(R, "1")}}).same_as(power_of_max(R, 3)));
  Submodule x2m2 = build_cwl_ideal({CwlPart{4, 2, P(R, "x1^2")}});
  CHECK(x2m2.same_as(I(R, {"x1^4", "x1^3x2", "x1^2x2^2"})));
  CHECK(is_componentwise_linear(x2m2).verdict);

  CHECK_THROWS_AS(build_cwl_ideal({}), std::invalid_argument);
  CHECK_THROWS_AS(build_cwl_ideal({CwlPart{1, 2, P(R, "x1^2")}}), std::invalid_argument);
  CHECK_THROWS_AS(build_cwl_ideal({CwlPart{2, 1, P(R, "x1")}, CwlPart{3, 1, P(R, "x2")}}), std::invalid_argument);
  CHECK_THROWS_AS(build_cwl_ideal({CwlPart{2, 1, P(R, "x1")}, CwlPart{2, 0, P(R, "1")}}), std::invalid_argument);
  CHECK(check_parts({CwlPart{3, 2, P(R, "x1^2")}, CwlPart{4, 1, P(R, "x2")}}) == "f_2 does not divide f_1");
  CHECK(check_parts({CwlPart{3, 1, P(R, "x1")}}).empty());
}

TEST_CASE("round trip and corollary dimensions on random decompositions") {
  Ring R(2);
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    auto parts = test::random_cwl_parts(rng, R);
    REQUIRE(check_parts(parts).empty());
    Submodule J = build_cwl_ideal(parts);
    CAPTURE(J.to_string());
    PresentedModule M(J.ambient(), J);
    int d1 = parts.front().d, er = parts.back().e;
    CHECK(static_cast<int>(J.minimal_generators().size()) == d1 - er + 1);
    CHECK(socle(M).dims.total() == d1 - er);
    CHECK(is_componentwise_linear(J).verdict);

    auto dec = decompose_cwl_ideal(J);
    REQUIRE(dec.decomposition);
    CHECK(dec.decomposition->verified);
    REQUIRE(dec.decomposition->parts.size() == parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      CHECK(dec.decomposition->parts[i].d == parts[i].d);
      CHECK(dec.decomposition->parts[i].e == parts[i].e);
      CHECK(dec.decomposition->parts[i].f == parts[i].f.monic());
    }
    CHECK(build_cwl_ideal(dec.decomposition->parts).same_as(J));
  }
}

TEST_CASE("principal modules: alternative gamma test and alpha = d - e") {
  Ring R(2);
  std::mt19937_64 rng(31);
  int certified = 0;
  for (int trial = 0; trial < 25; ++trial) {
    Submodule J = random_pd2_ideal(rng, R);
    PresentedModule M(J.ambient(), J);
    CAPTURE(J.to_string());
    int d = J.minimal_generator_degrees().front();
    Submodule sat = saturate(J);
    int e = sat.minimal_generator_degrees().front();
    Submodule Jd = component(J, d);
    Submodule Jd_sat = saturate(Jd);
    for (int k = 0; k < 3; ++k) {
      LinearForm z = k == 0 ? LinearForm::variable(R, trial % 2) : test::random_form(rng, R);
      CAPTURE(z.to_string());
      CHECK(principal_gamma_test(M, z) == is_gamma_regular(M, z).verdict);
      // z regular on C<d> M modulo its torsion.
      if (Jd_sat.contains(colon_by_linear(Jd_sat, z))) {
        ++certified;
        CHECK(alpha(M, z) == d - e);
      }
    }
  }
  CHECK(certified > 10);
}

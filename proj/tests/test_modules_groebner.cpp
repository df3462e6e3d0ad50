#include <random>
#include <thread>

#include "doctest.h"
#include "gammadepth/groebner.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace gd;

namespace {

Submodule I(const Ring& R, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> ps;
  for (const char* g : gens) ps.push_back(parse_polynomial(R, g));
  return ideal(R, ps);
}

FreeElement E(const Ring& R, const char* f) {
  return FreeElement(GradedFreeModule(R, {0}), {parse_polynomial(R, f)});
}

}  // namespace

TEST_CASE("free elements") {
  Ring R(2);
  GradedFreeModule F(R, {0, 1});
  FreeElement v(F, {parse_polynomial(R, "x1^2"), parse_polynomial(R, "x2")});
  CHECK(v.degree() == 2);
  CHECK(v.to_string() == "[x1^2 | x2]");
  CHECK_THROWS(FreeElement(F, {parse_polynomial(R, "x1"), parse_polynomial(R, "x2")}));
  CHECK_THROWS(FreeElement(F, {parse_polynomial(R, "x1 + x2^2"), Polynomial(R)}));
  CHECK((v - v).is_zero());
  CHECK(v.times(parse_polynomial(R, "x1 - x2")).degree() == 3);
}

TEST_CASE("groebner basis examples") {
  Ring R(2);
  auto U = I(R, {"x1^2", "x1x2", "x2^3"});
  CHECK(U.groebner_basis().size() == 3);
  CHECK(U.same_as(groebner_basis(U)));

  Ring R1(1);
  auto P = I(R1, {"x1"});
  REQUIRE(P.groebner_basis().size() == 1);
  CHECK(P.groebner_basis()[0] == E(R1, "x1"));

  GradedFreeModule F(R, {0, 1});
  Submodule W(F, {FreeElement(F, {parse_polynomial(R, "x1"), parse_polynomial(R, "1")}),
                  FreeElement(F, {Polynomial::constant(R, 1), Polynomial(R)}),
                  FreeElement(F, {Polynomial(R), Polynomial::constant(R, 1)})});
  CHECK(W.is_whole());
  CHECK(W.groebner_basis().size() == 2);
  for (const auto& g : W.groebner_basis()) CHECK(g.terms().front().mono.is_one());
  CHECK(W.minimal_generators().size() == 2);
}

TEST_CASE("normal form examples") {
  Ring R(2);
  auto U = I(R, {"x1^2", "x1x2", "x2^3"});
  CHECK(U.normal_form(E(R, "x1^2")).is_zero());
  CHECK(U.normal_form(E(R, "x2^2")) == E(R, "x2^2"));
  CHECK(U.normal_form(FreeElement(U.ambient())).is_zero());
  CHECK_THROWS(U.normal_form(FreeElement(GradedFreeModule(R, {0, 0}))));
}

TEST_CASE("kernel of a map examples") {
  Ring R(2);
  GradedFreeModule S(R, {2, 2, 2});
  PresentedModule target(GradedFreeModule(R, {0}));
  std::vector<FreeElement> imgs{E(R, "x1^2"), E(R, "x1x2"), E(R, "x2^2")};
  Submodule K = kernel_of_map(S, target, imgs);
  CHECK(K.minimal_generators().size() == 2);
  CHECK(K.minimal_generator_degrees() == std::vector<int>{3, 3});
  Submodule expected(S, {FreeElement(S, {parse_polynomial(R, "x2"), parse_polynomial(R, "-x1"), Polynomial(R)}),
                         FreeElement(S, {Polynomial(R), parse_polynomial(R, "x2"), parse_polynomial(R, "-x1")})});
  CHECK(K.same_as(expected));

  std::vector<FreeElement> zeros(3, FreeElement(target.free()));
  CHECK(kernel_of_map(S, target, zeros).is_whole());

  GradedFreeModule S0(R, {0});
  CHECK(kernel_of_map(S0, target, {E(R, "1")}).is_zero());

  CHECK_THROWS(kernel_of_map(GradedFreeModule(R, {1}), target, {E(R, "x1^2")}));
}

TEST_CASE("colon and saturation examples") {
  Ring R(2);
  auto U = I(R, {"x1^2", "x1x2", "x2^3"});
  CHECK(colon_by_linear(U, LinearForm::variable(R, 1)).same_as(I(R, {"x1", "x2^2"})));
  CHECK(colon_by_linear(U, LinearForm::variable(R, 0)).same_as(I(R, {"x1", "x2"})));
  auto whole = Submodule::whole(U.ambient());
  CHECK(colon_by_linear(whole, LinearForm::variable(R, 0)).is_whole());

  CHECK(colon_by_maximal(U).same_as(I(R, {"x1", "x2^2"})));
  CHECK(colon_by_maximal(Submodule::zero(U.ambient())).is_zero());
  CHECK(colon_by_maximal(I(R, {"x1", "x2"})).is_whole());
  CHECK(colon_by_maximal(whole).is_whole());

  CHECK(saturate(U).is_whole());
  CHECK(saturate(I(R, {"x1^2", "x1x2"})).same_as(I(R, {"x1"})));
  CHECK(saturate(I(R, {"x1"})).same_as(I(R, {"x1"})));
  CHECK(saturate(whole).is_whole());
}

TEST_CASE("hilbert function examples") {
  Ring R(2);
  auto m2 = PresentedModule(GradedFreeModule(R, {0}), I(R, {"x1^2", "x1x2", "x2^2"}));
  auto h = hilbert_function(m2, 0, 3);
  CHECK(h[0] == 1);
  CHECK(h[1] == 2);
  CHECK(h[2] == 0);
  CHECK(h[3] == 0);
  auto hr = hilbert_function(PresentedModule(GradedFreeModule(R, {0})), 0, 2);
  CHECK(hr.dims() == std::map<int, std::int64_t>{{0, 1}, {1, 2}, {2, 3}});
  auto M = PresentedModule(GradedFreeModule(R, {0}), I(R, {"x1^2", "x1x2", "x2^3"}));
  auto hm = hilbert_function(M, 0, 3);
  CHECK(hm.dims() == std::map<int, std::int64_t>{{0, 1}, {1, 2}, {2, 1}});
  CHECK(hm.deg() == Degree(2));
  CHECK(hm.indeg() == Degree(0));
  CHECK(GradedVectorSpaceDims().deg().is_neg_inf());
  CHECK(GradedVectorSpaceDims().indeg().is_pos_inf());

  CHECK(hilbert_series(M).finite_length() == 4);
  CHECK(!hilbert_series(PresentedModule(GradedFreeModule(R, {0}), I(R, {"x1"}))).finite_length());
  CHECK(quotient_dimension(I(R, {"x1", "x2^2"}), I(R, {"x1^2", "x1x2", "x2^3"})) == 2);
  CHECK(!quotient_dimension(I(R, {"x1"}), Submodule::zero(GradedFreeModule(R, {0}))));
}

TEST_CASE("random submodules against dense linear algebra") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + trial % 2;
    Ring R(n);
    std::vector<int> twists = trial % 3 == 0 ? std::vector<int>{0} : std::vector<int>{0, 1};
    GradedFreeModule F(R, twists);
    Submodule U = test::random_submodule(rng, F, 1 + trial % 4, 3);
    PresentedModule M(F, U);
    CAPTURE(U.to_string());

    // Membership soundness and GB idempotence.
    for (const auto& g : U.generators()) CHECK(U.contains(g));
    Submodule G = groebner_basis(U);
    CHECK(G.groebner_basis().size() == U.groebner_basis().size());
    CHECK(G.same_as(U));

    auto hq = hilbert_function(M, 0, 8);
    auto hu = hilbert_function(U, 0, 8);
    auto hf = hilbert_function(PresentedModule(F), 0, 8);
    auto series = hilbert_series(M).expand(0, 8);
    for (int j = 0; j <= 8; ++j) {
      CHECK(hu[j] == oracle::dim_submodule(U, j));
      CHECK(hf[j] == hu[j] + hq[j]);
      CHECK(series[static_cast<std::size_t>(j)] == hq[j]);
    }

    // Minimal generator count in each degree equals dim U_j - dim (mU)_j.
    Submodule mU = U.times_max_ideal_power(1);
    auto degs = U.minimal_generator_degrees();
    for (int j = 0; j <= 7; ++j) {
      long c = std::count(degs.begin(), degs.end(), j);
      CHECK(c == oracle::dim_submodule(U, j) - oracle::dim_submodule(mU, j));
    }

    LinearForm z = test::random_form(rng, R);
    Submodule C = colon_by_linear(U, z);
    Submodule Cm = colon_by_maximal(U);
    Submodule S = saturate(U);
    CHECK(C.contains(U));
    CHECK(S.contains(C));
    CHECK(S.contains(Cm));
    CHECK(saturate(S).same_as(S));
    std::vector<Polynomial> vars;
    for (int i = 0; i < n; ++i) vars.push_back(Polynomial::variable(R, i));
    for (int j = 0; j <= 5; ++j) {
      CHECK(oracle::dim_submodule(C, j) == oracle::dim_colon(U, {z.to_polynomial()}, j));
      CHECK(oracle::dim_submodule(Cm, j) == oracle::dim_colon(U, vars, j));
    }
    for (const auto& g : C.generators()) CHECK(U.contains(g.times(z.to_polynomial())));
  }
}

TEST_CASE("intersection") {
  Ring R(2);
  auto A = I(R, {"x1"});
  auto B = I(R, {"x2"});
  CHECK(intersect(A, B).same_as(I(R, {"x1x2"})));
}

TEST_CASE("module text format") {
  const char* text = "ring 2 32003\nfree 1 1\n[x1 | -x2]\n[x2^2 | 0]\n";
  PresentedModule M = parse_presented_module(text);
  CHECK(M.free().rank() == 2);
  CHECK(M.relations().generators().size() == 2);
  CHECK(format_presented_module(M) == text);
  CHECK(format_presented_module(parse_presented_module(format_presented_module(M))) == text);
  try {
    parse_presented_module("ring 2 32003\nfree 0\n[x1^^2]\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(parse_presented_module("ring 2 32003\nfree 0 0\n[x1]\n"), ParseError);
  CHECK_THROWS_AS(parse_presented_module("free 0\n"), ParseError);
}

TEST_CASE("zero module is detected") {
  Ring R(2);
  GradedFreeModule F(R, {0, 2});
  PresentedModule Z(F, Submodule::whole(F));
  CHECK(Z.is_zero());
  CHECK(hilbert_function(Z, 0, 5).is_zero());
  CHECK(!PresentedModule(F).is_zero());
}

TEST_CASE("concurrent readers share one basis") {
  Ring R(3);
  std::mt19937_64 rng(5);
  Submodule U = test::random_submodule(rng, GradedFreeModule(R, {0}), 4, 3);
  std::vector<std::size_t> sizes(8);
  std::vector<std::thread> ts;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    ts.emplace_back([&, i] { sizes[i] = U.groebner_basis().size(); });
  }
  for (auto& t : ts) t.join();
  for (auto s : sizes) CHECK(s == sizes[0]);
}

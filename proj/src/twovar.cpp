#include "gammadepth/twovar.hpp"

#include <algorithm>
#include <stdexcept>

namespace gd {

namespace {

void require_plane_ideal(const Submodule& I) {
  const GradedFreeModule& F = I.ambient();
  if (F.ring().nvars() != 2) throw std::invalid_argument("two-variable statements need a ring in two variables");
  if (F.rank() != 1 || F.twist(0) != 0) throw std::invalid_argument("expected an ideal of R");
  if (I.is_zero()) throw std::invalid_argument("the ideal is zero");
  if (I.is_whole()) throw std::invalid_argument("the ideal is the unit ideal");
}

FreeElement as_element(const Polynomial& f) { return FreeElement(GradedFreeModule(f.ring(), {0}), {f}); }

Submodule multiples(const Polynomial& f, int k) {
  const Ring& R = f.ring();
  std::vector<FreeElement> gens;
  for (const auto& m : Monomial::all_of_degree(R.nvars(), k)) gens.push_back(as_element(f.times_monomial(m)));
  return Submodule(GradedFreeModule(R, {0}), std::move(gens));
}

std::vector<int> generation_degrees(const Submodule& I) {
  std::vector<int> d = I.minimal_generator_degrees();
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

}  // namespace

bool divides(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero()) return g.is_zero();
  return ideal(f.ring(), {f}).contains(as_element(g));
}

BetaFormulaReport beta_formula_check(const Submodule& I, int trials, std::uint64_t seed) {
  require_plane_ideal(I);
  BetaFormulaReport r;
  PresentedModule M(I.ambient(), I);
  BettiTable b = minimal_resolution(M);
  r.pd = b.length();
  r.cwl = is_componentwise_linear(I).verdict;
  r.full_gamma_depth = gamma_depth(M, trials, seed).depth == 2;
  if (r.pd != 2) return r;
  r.applicable = true;
  r.beta1 = b.total(1);
  r.indeg_generators = I.minimal_generator_degrees().front();
  r.indeg_torsion = local_cohomology_zero(M).dims.indeg();
  r.formula_holds = r.indeg_torsion.is_finite() && r.beta1 == r.indeg_generators - r.indeg_torsion.value() + 1;
  r.agree = r.formula_holds == r.full_gamma_depth;
  return r;
}

DecomposeResult decompose_cwl_ideal(const Submodule& I) {
  require_plane_ideal(I);
  DecomposeResult out;
  int pd = minimal_resolution(PresentedModule(I.ambient(), I)).length();
  if (pd != 2) {
    out.refusal = "R/I has projective dimension " + std::to_string(pd) + ", not 2";
    return out;
  }
  if (!is_componentwise_linear(I).verdict) {
    out.refusal = "I is not componentwise linear";
    return out;
  }
  CwlDecomposition dec;
  bool ok = true;
  for (int d : generation_degrees(I)) {
    Submodule comp = component(I, d);
    Submodule saturated = saturate(comp);
    const auto& sat = saturated.minimal_generators();
    if (sat.size() != 1) {
      out.refusal = "saturation of the degree " + std::to_string(d) + " component is not principal";
      return out;
    }
    Polynomial f = sat.front().component(0).monic();
    int e = f.degree();
    ok = ok && d >= e && comp.same_as(multiples(f, d - e));
    dec.parts.push_back(CwlPart{d, e, f});
  }
  for (std::size_t i = 0; i + 1 < dec.parts.size(); ++i) {
    dec.divides.push_back(divides(dec.parts[i + 1].f, dec.parts[i].f));
    ok = ok && dec.divides.back();
  }
  dec.verified = ok && build_cwl_ideal(dec.parts).same_as(I);
  out.decomposition = std::move(dec);
  return out;
}

std::string check_parts(const std::vector<CwlPart>& parts) {
  if (parts.empty()) return "no parts";
  const Ring& R = parts.front().f.ring();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    if (!(p.f.ring() == R)) return "parts live in different rings";
    if (p.f.is_zero() || !p.f.is_homogeneous()) return "f_" + std::to_string(i + 1) + " is not a nonzero form";
    if (p.f.degree() != p.e) return "e_" + std::to_string(i + 1) + " differs from deg f_" + std::to_string(i + 1);
    if (p.d < p.e) return "d_" + std::to_string(i + 1) + " < e_" + std::to_string(i + 1);
    if (i == 0) continue;
    const auto& q = parts[i - 1];
    if (p.d <= q.d) return "generation degrees are not strictly increasing";
    if (p.e >= q.e) return "degrees of f are not strictly decreasing";
    if (!divides(p.f, q.f)) return "f_" + std::to_string(i + 1) + " does not divide f_" + std::to_string(i);
  }
  return "";
}

Submodule build_cwl_ideal(const std::vector<CwlPart>& parts) {
  std::string bad = check_parts(parts);
  if (!bad.empty()) throw std::invalid_argument("malformed decomposition: " + bad);
  const Ring& R = parts.front().f.ring();
  std::vector<FreeElement> gens;
  for (const auto& p : parts) {
    auto part = multiples(p.f, p.d - p.e).generators();
    gens.insert(gens.end(), part.begin(), part.end());
  }
  return Submodule(GradedFreeModule(R, {0}), std::move(gens));
}

bool principal_gamma_test(const PresentedModule& M, const LinearForm& z) {
  auto a = alpha(M, z);
  return a && *a == socle(M).dims.total();
}

}  // namespace gd

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gammadepth/gamma.hpp"

namespace gd {

// Principal modules R/I over K[x1, x2].

struct BetaFormulaReport {
  int pd = 0;
  /// False when pd(R/I) != 2; the formula is then not tested.
  bool applicable = false;
  std::int64_t beta1 = 0;
  int indeg_generators = 0;
  /// indeg of Gamma_m(R/I); +inf when R/I has no torsion.
  Degree indeg_torsion = Degree::pos_inf();
  /// beta1 == indeg(I (x) k) - indeg(Gamma_m M) + 1.
  bool formula_holds = false;
  /// gamma-depth(R/I) == 2, from a randomized search.
  bool full_gamma_depth = false;
  /// Syz_1 = I componentwise linear, from the resolutions of its components.
  bool cwl = false;
  bool agree = false;
};

/// Throws std::invalid_argument unless the ring has two variables and
/// I is a nonzero proper ideal.
BetaFormulaReport beta_formula_check(const Submodule& I, int trials, std::uint64_t seed);

struct CwlPart {
  /// Generation degree.
  int d = 0;
  /// deg f.
  int e = 0;
  /// Monic with respect to the leading term.
  Polynomial f;
};

struct CwlDecomposition {
  std::vector<CwlPart> parts;
  /// divides[i]: f_{i+1} divides f_i.
  std::vector<bool> divides;
  /// Each component equals its part and the parts sum to the ideal.
  bool verified = false;
};

struct DecomposeResult {
  std::optional<CwlDecomposition> decomposition;
  /// Why no decomposition was produced.
  std::string refusal;
};

/// I = m^{d_1-e_1} f_1 + ... + m^{d_r-e_r} f_r with f_i generating the
/// saturation of I<d_i>. Refuses when R/I does not have projective dimension 2
/// or I is not componentwise linear.
DecomposeResult decompose_cwl_ideal(const Submodule& I);

/// Empty when the parts are well formed, else the violated condition:
/// d strictly increasing, e_i = deg f_i, d_i >= e_i, e strictly decreasing,
/// f_{i+1} | f_i.
std::string check_parts(const std::vector<CwlPart>& parts);

/// Sum of m^{d_i - e_i} f_i. Throws std::invalid_argument on malformed parts.
Submodule build_cwl_ideal(const std::vector<CwlPart>& parts);

/// f | g in R.
bool divides(const Polynomial& f, const Polynomial& g);

/// For R/I over two variables: z is gamma-regular iff dim(0 :_M z) = dim soc M.
bool principal_gamma_test(const PresentedModule& M, const LinearForm& z);

}  // namespace gd

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gammadepth/degree.hpp"
#include "gammadepth/module.hpp"

namespace gd {

/// Submodule generated by the reduced Gröbner basis of U.
Submodule groebner_basis(const Submodule& U);

/// Remainder of v modulo U.
FreeElement normal_form(const FreeElement& v, const Submodule& U);

/// Kernel of the graded map source -> target.free()/target.relations()
/// sending the k-th basis vector to images[k]. images[k] must be zero or of
/// degree source.twist(k).
Submodule kernel_of_map(const GradedFreeModule& source, const PresentedModule& target,
                        const std::vector<FreeElement>& images);

/// U :_F z.
Submodule colon_by_linear(const Submodule& U, const LinearForm& z);
/// U :_F (x1, ..., xn).
Submodule colon_by_maximal(const Submodule& U);
/// U :_F m^infinity.
Submodule saturate(const Submodule& U);
/// U intersected with W (same ambient module).
Submodule intersect(const Submodule& U, const Submodule& W);

/// Dimensions of a graded vector space, degree -> dim, zero entries omitted.
class GradedVectorSpaceDims {
 public:
  GradedVectorSpaceDims() = default;
  explicit GradedVectorSpaceDims(std::map<int, std::int64_t> dims);

  std::int64_t operator[](int j) const;
  const std::map<int, std::int64_t>& dims() const { return dims_; }
  std::int64_t total() const;
  bool is_zero() const { return dims_.empty(); }
  /// Largest degree with a nonzero entry; -inf when zero.
  Degree deg() const;
  /// Smallest degree with a nonzero entry; +inf when zero.
  Degree indeg() const;

  bool operator==(const GradedVectorSpaceDims& o) const { return dims_ == o.dims_; }
  std::string to_string() const;

 private:
  std::map<int, std::int64_t> dims_;
};

/// dim_K (F/U)_j for j in [lo, hi], by counting standard monomials.
GradedVectorSpaceDims hilbert_function(const PresentedModule& M, int lo, int hi);
/// dim_K U_j for j in [lo, hi].
GradedVectorSpaceDims hilbert_function(const Submodule& U, int lo, int hi);

/// Hilbert series of F/U as numerator(u) / (1 - u)^n. The numerator may
/// have negative powers of u when twists are negative, so it is stored with
/// an explicit offset: numerator = sum_k coeffs[k] u^(offset + k).
struct HilbertSeries {
  int nvars = 0;
  int offset = 0;
  std::vector<std::int64_t> coeffs;

  /// dim_K of the module when finite (numerator divisible by (1-u)^n).
  std::optional<std::int64_t> finite_length() const;
  /// Per-degree dimensions when the module has finite length.
  std::optional<GradedVectorSpaceDims> finite_dims() const;
  /// Coefficients of the series in degrees [lo, hi].
  std::vector<std::int64_t> expand(int lo, int hi) const;
};

HilbertSeries hilbert_series(const PresentedModule& M);

/// dim_K W/U for U contained in W, or nullopt when infinite.
std::optional<std::int64_t> quotient_dimension(const Submodule& W, const Submodule& U);
/// Per-degree dimensions of W/U when it has finite length, else nullopt.
std::optional<GradedVectorSpaceDims> quotient_dims(const Submodule& W, const Submodule& U);

}  // namespace gd

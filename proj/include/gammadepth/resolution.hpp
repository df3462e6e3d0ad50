#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gammadepth/degree.hpp"
#include "gammadepth/module.hpp"

namespace gd {

/// Graded Betti numbers beta_{i,j}, zero entries omitted.
class BettiTable {
 public:
  void add(int i, int j, std::int64_t v = 1);
  std::int64_t operator()(int i, int j) const;
  const std::map<std::pair<int, int>, std::int64_t>& entries() const { return entries_; }

  bool empty() const { return entries_.empty(); }
  /// Largest homological index present, -1 when empty.
  int length() const;
  /// Column sum beta_i.
  std::int64_t total(int i) const;
  /// Degrees j with beta_{i,j} != 0 (with multiplicity), ascending.
  std::vector<int> degrees(int i) const;

  /// max{j - i}; -inf for the zero module.
  Degree regularity() const;
  /// Coefficients of p(t) = sum_i beta_i t^i.
  std::vector<std::int64_t> poincare() const;

  /// Grid with columns i and rows j - i, in the usual Macaulay2 layout.
  std::string to_text() const;

  bool operator==(const BettiTable& o) const { return entries_ == o.entries_; }

 private:
  std::map<std::pair<int, int>, std::int64_t> entries_;
};

/// "10 + 15t + 6t^2".
std::string poincare_string(const std::vector<std::int64_t>& p);
/// Graded form with the lowest power of u factored out: "u^3(10 + 15tu + 6t^2u^2)".
std::string graded_poincare_string(const BettiTable& b);

struct MinimalCover {
  GradedFreeModule cover;
  /// Images in the presentation's free module of the cover's basis vectors.
  std::vector<FreeElement> projection_images;
  /// Kernel of cover -> M; contained in m * cover.
  Submodule syzygy;
};

MinimalCover minimal_cover(const PresentedModule& M);
Submodule first_syzygy(const PresentedModule& M);
/// (F_M, Syz_1 M): the same module over a minimal cover.
PresentedModule minimal_presentation(const PresentedModule& M);

/// Minimal free resolution F_0 <- F_1 <- ... with Syz_{i+1} = ker(F_i -> F_{i-1}).
struct Resolution {
  std::vector<GradedFreeModule> free;
  /// syzygies[i] = Syz_{i+1}, a submodule of free[i].
  std::vector<Submodule> syzygies;

  BettiTable betti() const;
  /// Syz_i as a presented module (i >= 1); index 0 gives a minimal presentation of M.
  PresentedModule syzygy_module(std::size_t i) const { return PresentedModule(free[i], syzygies[i]); }
};

/// Resolution up to homological index cap (defaults to the number of
/// variables, which always suffices over a polynomial ring).
Resolution resolve(const PresentedModule& M, int cap = -1);
BettiTable minimal_resolution(const PresentedModule& M, int cap = -1);

/// A submodule U of F viewed as a module, minimally presented.
PresentedModule as_module(const Submodule& U);

Degree regularity(const PresentedModule& M);
Degree regularity(const Submodule& U);

/// p_R(M)(t) coefficients.
std::vector<std::int64_t> poincare(const PresentedModule& M);

}  // namespace gd

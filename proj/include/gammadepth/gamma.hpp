#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gammadepth/groebner.hpp"
#include "gammadepth/module.hpp"
#include "gammadepth/resolution.hpp"

namespace gd {

/// A subquotient W/U of a free module, with its (finite) Hilbert function.
struct Subquotient {
  Submodule top;
  Submodule bottom;
  GradedVectorSpaceDims dims;

  bool is_zero() const { return dims.is_zero(); }
  PresentedModule as_module() const;
};

/// 0 :_M m, as (U :_F m)/U.
Subquotient socle(const PresentedModule& M);
/// Elements of M killed by a power of m, as (U :_F m^inf)/U.
Subquotient local_cohomology_zero(const PresentedModule& M);

/// Standard monomials of degree j (monomial times basis vector, irreducible
/// modulo the relations); their classes form a basis of M_j.
std::vector<FreeElement> standard_basis(const PresentedModule& M, int j);

/// The submodule of M generated by the given elements of F, presented over a
/// cover with one generator per element.
PresentedModule image_module(const PresentedModule& M, const std::vector<FreeElement>& elems);

/// M<j> = R M_j.
PresentedModule component(const PresentedModule& M, int j);
/// U<j> = R U_j for a submodule.
Submodule component(const Submodule& U, int j);
/// M_{>=d}.
PresentedModule truncate_ge(const PresentedModule& M, int d);

/// F_M / m^i Syz_1 M.
PresentedModule cmod(const PresentedModule& M, int i);
/// F_M / (Syz_1 M)<j>.
PresentedModule cmod_component(const PresentedModule& M, int j);

/// dim_K (0 :_M z); nullopt when infinite (z not almost regular).
std::optional<std::int64_t> alpha(const PresentedModule& M, const LinearForm& z);

/// Passage to R/(z_1, ..., z_r) = K[y_1, ..., y_{n-r}].
///
/// Coordinates are changed so the z_i become the last r variables, which are
/// then set to zero.
class LinearQuotient {
 public:
  /// Throws std::invalid_argument when zs are dependent.
  explicit LinearQuotient(const Ring& ring, const std::vector<LinearForm>& zs = {});

  const Ring& source() const { return source_; }
  const Ring& target() const { return target_; }

  Polynomial apply(const Polynomial& f) const { return f.substitute(images_); }
  /// Image of a form; nullopt when it lies in the span of the zs.
  std::optional<LinearForm> apply(const LinearForm& z) const;
  PresentedModule apply(const PresentedModule& M) const;
  Submodule apply(const Submodule& U) const;

 private:
  Ring source_;
  Ring target_;
  std::vector<Polynomial> images_;
};

/// M (x) R/(zs), presented over the smaller polynomial ring.
PresentedModule reduce_mod_linear(const PresentedModule& M, const std::vector<LinearForm>& zs);

/// Number of minimal generators of Syz_1 M.
std::int64_t beta1(const PresentedModule& M);

struct GammaCertificate {
  explicit GammaCertificate(LinearForm form) : z(std::move(form)) {}

  LinearForm z;
  std::int64_t beta1 = 0;
  std::optional<std::int64_t> alpha;
  std::int64_t beta1_bar = 0;
  /// beta1 == alpha + beta1_bar.
  bool verdict = false;
  /// beta1 == alpha + beta1_bar.
  bool crit_ii = false;
  /// beta1 == alpha(F_M / m Syz_1; z).
  bool crit_iii = false;
  /// m Syz_1 :_F z == Syz_1.
  bool crit_iv = false;
  bool agreement() const { return crit_ii == crit_iii && crit_iii == crit_iv; }
};

GammaCertificate is_gamma_regular(const PresentedModule& M, const LinearForm& z);

struct SequenceResult {
  bool verdict = false;
  /// alpha(M_{i-1}; z_i) for each step; nullopt entries are infinite.
  std::vector<std::optional<std::int64_t>> alphas;
  std::int64_t beta1 = 0;
  /// beta_1 of the final quotient.
  std::int64_t beta1_last = 0;
  /// m-fullness of each step on its own quotient.
  std::vector<bool> stepwise;
  bool agreement = true;

  /// Finite alphas as plain integers; only meaningful when verdict holds.
  std::vector<std::int64_t> alpha_values() const;
};

/// Tests zs (taken in the given order) with the aggregate count
///   beta_1(M) == sum_i alpha(M_{i-1}; z_i) + beta_1(M_r)
/// and cross-checks each step separately. Throws on an empty or dependent list.
SequenceResult is_gamma_sequence(const PresentedModule& M, const std::vector<LinearForm>& zs);

struct DepthWitness {
  std::vector<LinearForm> sequence;
  int depth = 0;
  std::vector<std::int64_t> alphas;
  int trials_used = 0;
  std::uint64_t seed = 0;
  /// The sequence passed is_gamma_sequence (trivially true when empty).
  bool verified = true;
};

/// Greedy randomized search for a longest gamma-regular sequence. Each trial
/// draws uniform random forms with a seed derived from (seed, trial) and
/// extends greedily, retrying each step a fixed number of times. The result
/// is a lower bound for gamma-depth. The zero module gets depth n.
DepthWitness gamma_depth(const PresentedModule& M, int trials, std::uint64_t seed);

/// Seed of the i-th trial or instance derived from a base seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform random nonzero linear form.
LinearForm random_linear_form(const Ring& R, std::mt19937_64& rng);

struct HatGammaResult {
  bool verdict = false;
  /// Verdicts on F_M / (Syz_1)<d> for each distinct generator degree d of Syz_1.
  std::map<int, bool> per_degree;
  /// m^{i+1} U :_F z == m^i U for all i <= bound.
  bool strongly_m_full_within_bound = false;
  int bound = 0;
  bool agreement() const { return verdict == strongly_m_full_within_bound; }
};

/// Bound < 0 picks deg soc M - indeg(Syz_1 (x) k) + spread of generator degrees + 2.
HatGammaResult is_hat_gamma_regular(const PresentedModule& M, const LinearForm& z, int bound = -1);

struct CwlReport {
  bool verdict = true;
  /// j -> reg of the j-th component, for j between the lowest and highest generator degree.
  std::map<int, Degree> regularity;
};

CwlReport is_componentwise_linear(const Submodule& U);
CwlReport is_componentwise_linear(const PresentedModule& M);

struct MainTheoremReport {
  bool cwl = false;
  DepthWitness witness;
  bool full_depth = false;
  bool agree = false;
  /// A second search with a fresh seed was needed.
  bool retried = false;
  std::uint64_t seed = 0;
};

/// Compares "Syz_1 M is componentwise linear" with "gamma-depth M = n".
MainTheoremReport verify_main_theorem(const PresentedModule& M, int trials, std::uint64_t seed);

struct DeltaResult {
  std::optional<int> delta;
  int cap = 0;
  bool cap_exceeded() const { return !delta.has_value(); }
};

/// Default cap: n (s - d + 2) + 4 with s = deg soc M and d = indeg(Syz_1 (x) k).
/// When the socle is zero, reg M stands in for s.
int default_delta_cap(const PresentedModule& M);
/// Smallest i <= cap with gamma-depth(C_i M) = n. cap < 0 uses the default.
DeltaResult delta_invariant(const PresentedModule& M, int cap, int trials, std::uint64_t seed);

struct CdReport {
  /// min{i : Syz_{i+1} M is componentwise linear}.
  int cd = 0;
  int gamma_depth = 0;
  int syzygy_gamma_depth = 0;
  /// cd + gamma-depth <= n.
  bool sum_bound_holds = false;
  /// gamma-depth(Syz_1) >= min(n, gamma-depth + 1).
  bool syzygy_depth_holds = false;
};

CdReport cd_invariant(const PresentedModule& M, int trials, std::uint64_t seed);

struct SplittingAudit {
  bool precondition = false;
  GammaCertificate certificate;
  /// Item label -> holds; labels are "betti", "graded_poincare_syz",
  /// "graded_poincare", "poincare_syz", "poincare", "socle_degrees", "regularity".
  std::map<std::string, bool> items;
  bool all_hold() const;
};

/// Audits the Betti number splitting across M -> M/zM for a gamma-regular z.
/// When z is not gamma-regular, precondition is false and no item is checked.
SplittingAudit splitting_audit(const PresentedModule& M, const LinearForm& z);

}  // namespace gd

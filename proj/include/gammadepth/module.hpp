#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gammadepth/degree.hpp"
#include "gammadepth/polynomial.hpp"

namespace gd {

/// Graded free module R(-j_1) + ... + R(-j_m); generator k has degree j_k.
class GradedFreeModule {
 public:
  explicit GradedFreeModule(const Ring& ring, std::vector<int> twists = {})
      : ring_(ring), twists_(std::move(twists)) {}

  const Ring& ring() const { return ring_; }
  std::size_t rank() const { return twists_.size(); }
  int twist(std::size_t k) const { return twists_[k]; }
  const std::vector<int>& twists() const { return twists_; }

  /// Same twists over another ring (used after eliminating variables).
  GradedFreeModule over(const Ring& ring) const { return GradedFreeModule(ring, twists_); }
  /// Every twist increased by s, i.e. F(-s).
  GradedFreeModule shifted(int s) const;

  bool operator==(const GradedFreeModule& o) const { return ring_ == o.ring_ && twists_ == o.twists_; }

  std::string to_string() const;

 private:
  Ring ring_;
  std::vector<int> twists_;
};

struct ModuleTerm {
  Monomial mono;
  std::uint32_t comp;
  Coeff coeff;
};

/// Homogeneous element of a graded free module.
///
/// Terms are kept sorted by component, then descending monomial. The degree
/// is deg(component_k) + j_k, common to all nonzero components.
class FreeElement {
 public:
  explicit FreeElement(const GradedFreeModule& F) : ring_(F.ring()), rank_(F.rank()) {}
  /// Throws std::invalid_argument if the components are not homogeneous of a
  /// common degree or the count does not match the rank.
  FreeElement(const GradedFreeModule& F, const std::vector<Polynomial>& components);

  static FreeElement basis(const GradedFreeModule& F, std::size_t k);
  static FreeElement from_terms(const GradedFreeModule& F, std::vector<ModuleTerm> terms);

  const Ring& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  bool is_zero() const { return terms_.empty(); }
  /// Degree of a nonzero element.
  int degree() const { return degree_; }
  const std::vector<ModuleTerm>& terms() const { return terms_; }

  Polynomial component(std::size_t k) const;
  std::vector<Polynomial> components() const;

  FreeElement operator+(const FreeElement& o) const;
  FreeElement operator-(const FreeElement& o) const;
  FreeElement scaled(Coeff c) const;
  FreeElement times(const Polynomial& f) const;
  FreeElement times_monomial(const Monomial& m, Coeff c = 1) const;

  bool operator==(const FreeElement& o) const;

  /// "[f1 | f2 | ...]"
  std::string to_string() const;

 private:
  FreeElement(const Ring& ring, std::size_t rank, std::vector<ModuleTerm> terms, int degree)
      : ring_(ring), rank_(rank), terms_(std::move(terms)), degree_(degree) {}

  Ring ring_;
  std::size_t rank_;
  std::vector<ModuleTerm> terms_;
  int degree_ = 0;

  friend class Submodule;
};

namespace detail {
struct SubmoduleCache;
}

/// Submodule of a graded free module given by homogeneous generators.
///
/// The Gröbner basis (position-over-term over the ring order, positions by
/// ascending twist then index) and the minimal generating set are computed
/// once on first use and shared between copies; concurrent readers are safe.
class Submodule {
 public:
  explicit Submodule(const GradedFreeModule& ambient, std::vector<FreeElement> generators = {});

  static Submodule zero(const GradedFreeModule& ambient) { return Submodule(ambient); }
  static Submodule whole(const GradedFreeModule& ambient);

  const GradedFreeModule& ambient() const { return ambient_; }
  const std::vector<FreeElement>& generators() const { return generators_; }

  /// Reduced Gröbner basis.
  const std::vector<FreeElement>& groebner_basis() const;
  /// A minimal homogeneous generating set (subset-derived, degree sorted).
  const std::vector<FreeElement>& minimal_generators() const;
  /// Degrees of the minimal generators, i.e. the degree multiset of U (x) k.
  std::vector<int> minimal_generator_degrees() const;

  /// Remainder on division by the Gröbner basis (fully reduced).
  FreeElement normal_form(const FreeElement& v) const;
  bool contains(const FreeElement& v) const { return normal_form(v).is_zero(); }
  bool contains(const Submodule& o) const;
  bool same_as(const Submodule& o) const { return contains(o) && o.contains(*this); }

  bool is_zero() const { return groebner_basis().empty(); }
  /// True iff the submodule is the whole ambient module.
  bool is_whole() const;

  /// Sum with another submodule of the same ambient module.
  Submodule operator+(const Submodule& o) const;
  /// m^k U, generated by degree-k monomials times the generators.
  Submodule times_max_ideal_power(int k) const;
  /// Generators mapped through a polynomial substitution into another ring.
  Submodule substituted(const GradedFreeModule& target, const std::vector<Polynomial>& images) const;

  std::string to_string() const;

 private:
  const detail::SubmoduleCache& cache() const;

  GradedFreeModule ambient_;
  std::vector<FreeElement> generators_;
  std::shared_ptr<detail::SubmoduleCache> cache_;
};

/// M = F / U.
class PresentedModule {
 public:
  PresentedModule(GradedFreeModule free, Submodule relations);
  explicit PresentedModule(const GradedFreeModule& free) : PresentedModule(free, Submodule::zero(free)) {}

  /// R / I for an ideal given by generators.
  static PresentedModule cyclic(const Ring& ring, const std::vector<Polynomial>& ideal_generators);

  const Ring& ring() const { return free_.ring(); }
  const GradedFreeModule& free() const { return free_; }
  const Submodule& relations() const { return relations_; }

  /// True iff M = 0 (every generator of F lies in U).
  bool is_zero() const { return relations_.is_whole(); }

  std::string to_string() const;

 private:
  GradedFreeModule free_;
  Submodule relations_;
};

/// Ideal (as a submodule of R = R(0)) generated by the given polynomials.
Submodule ideal(const Ring& ring, const std::vector<Polynomial>& generators);

/// Parses the module text format:
///   ring <n> <p>
///   free <j1> ... <jm>
///   [f1 | ... | fm]      (one generator per line)
PresentedModule parse_presented_module(std::string_view text);
/// Inverse of parse_presented_module.
std::string format_presented_module(const PresentedModule& M);

}  // namespace gd

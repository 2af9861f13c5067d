#pragma once

// Symbolic calculus of pullback classes [a]*D for a symmetric divisor D.
//
// For symmetric D the cube relation makes a -> [a]*D a quadratic map, so the
// class of [sum n_k e_k]*D is determined by the symbols q(e_k) = [e_k]*D and
// b(e_k, e_l) = [e_k + e_l]*D - [e_k]*D - [e_l]*D over the power basis e_k.
// Declared invariances [u]*D ~ D generate the relation lattice L; equivalence
// up to torsion is membership in its saturation.

#include "lattice.hpp"
#include "rings.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cmdyn {

class CalculusContext;

class ClassVector {
 public:
  ClassVector(const CalculusContext& ctx, IntVector coords);

  const CalculusContext& context() const { return *ctx_; }
  std::span<const Integer> coords() const { return coords_; }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const;

  ClassVector& operator+=(const ClassVector& rhs);
  ClassVector& operator-=(const ClassVector& rhs);
  friend ClassVector operator+(ClassVector a, const ClassVector& b) { return a += b; }
  friend ClassVector operator-(ClassVector a, const ClassVector& b) { return a -= b; }
  friend ClassVector operator*(const Integer& k, ClassVector v);
  friend bool operator==(const ClassVector& a, const ClassVector& b);

  /// e.g. "2*q(1) - b(1,z^2)"
  std::string to_string() const;

 private:
  void check_context(const ClassVector& other) const;

  const CalculusContext* ctx_;
  IntVector coords_;
};

class CalculusContext {
 public:
  /// Throws DomainError when a unit is not invertible, -1 is missing, or the
  /// set is not closed under multiplication and negation.
  static std::shared_ptr<const CalculusContext> build(const RingSpec& ring, std::vector<RingElement> units);
  /// Context whose invariance set is every root of unity of the ring.
  static std::shared_ptr<const CalculusContext> build_full(const RingSpec& ring);

  const RingSpec& ring() const { return *ring_; }
  std::span<const RingElement> units() const { return units_; }

  std::size_t generator_count() const { return generator_names_.size(); }
  const std::string& generator_name(std::size_t g) const { return generator_names_[g]; }
  std::size_t q_index(std::size_t i) const { return i; }
  std::size_t b_index(std::size_t i, std::size_t j) const;

  const IntMatrix& relations() const { return relations_; }
  const HermiteBasis& relation_basis() const { return relation_hnf_; }
  const HermiteBasis& saturated_basis() const { return saturated_hnf_; }
  const SmithForm& smith() const { return smith_; }
  /// Index [L_sat : L], the product of the invariant factors.
  Integer torsion_index() const;
  /// Rank of the free quotient Z^G / L_sat.
  std::size_t quotient_rank() const { return generator_count() - smith_.rank(); }

  CalculusContext(const CalculusContext&) = delete;
  CalculusContext& operator=(const CalculusContext&) = delete;

 private:
  CalculusContext() = default;

  const RingSpec* ring_ = nullptr;
  std::vector<RingElement> units_;
  std::vector<std::string> generator_names_;
  IntMatrix relations_;
  SmithForm smith_;
  HermiteBasis relation_hnf_;
  HermiteBasis saturated_hnf_;
};

/// q(1), the class of the base divisor D.
ClassVector base_class(const CalculusContext& ctx);

/// Unreduced coordinates of [a]*D.
ClassVector quadratic_normal_form(const RingElement& a, const CalculusContext& ctx);

/// Unreduced coordinates of the polar form b(a, c) = q(a + c) - q(a) - q(c).
ClassVector bilinear_normal_form(const RingElement& a, const RingElement& c, const CalculusContext& ctx);

/// Canonical representative modulo the saturated lattice.
ClassVector reduce(const ClassVector& v);

bool in_relation_lattice(const ClassVector& v);
bool in_saturation(const ClassVector& v);

/// Least k > 0 with k*v in L, or nullopt if v is not torsion modulo L.
std::optional<Integer> torsion_order(const ClassVector& v);

/// Coordinates of v in the free quotient Z^G / L_sat (Smith-form route).
IntVector quotient_coordinates(const ClassVector& v);

enum class VerdictKind { Holds, HoldsUpToTorsion, NotDerivable };

std::string_view verdict_name(VerdictKind kind);

struct IdentityVerdict {
  VerdictKind kind = VerdictKind::NotDerivable;
  Integer torsion_index = 0;  // 1 for Holds, order of the difference for HoldsUpToTorsion

  bool strict() const { return kind == VerdictKind::Holds; }
  bool saturated() const { return kind != VerdictKind::NotDerivable; }
};

/// c * [a]*D
struct WeightedPullback {
  Integer coeff;
  RingElement element;
};

ClassVector class_of(std::span<const WeightedPullback> terms, const CalculusContext& ctx);

IdentityVerdict verify(std::span<const WeightedPullback> lhs, std::span<const WeightedPullback> rhs,
                       const CalculusContext& ctx);

/// n*q(1+a) - (n-1)*q(a) + n(n-1)*q(1), the recurrence form of [n+a]*D. Requires n >= 0.
ClassVector n_plus_alpha(const Integer& n, const RingElement& a, const CalculusContext& ctx);

/// Integer c with v ~ c*D up to torsion, if any (c may be zero or negative).
std::optional<Integer> base_multiple(const ClassVector& v);

/// The integer c >= 1 with [a]*D ~ c*D, if one exists. Throws on a == 0.
std::optional<Integer> polarization_scalar(const RingElement& a, const CalculusContext& ctx);

/// Tests the hypothesis "[a]*D ~ k*D for some integer k >= 1" given
/// [a]*D + [b]*D ~ s*D and [ab]*D ~ t*D: composition forces k(s - k) = t.
struct RefutationCertificate {
  Integer s;
  Integer t;
  std::vector<Integer> solutions;  // all integer k >= 1 with k(s-k) = t, ascending

  bool refuted() const { return solutions.empty(); }
  std::string equation() const;  // "a(3-a)=1"
};

RefutationCertificate refute_scalar_hypothesis(const RingElement& a, const RingElement& b, const CalculusContext& ctx);

/// Whether the diagonal is preperiodic under (phi1, phi2): phi1/phi2 is a root of unity.
bool diagonal_preperiodic(const RingElement& phi1, const RingElement& phi2);

}  // namespace cmdyn

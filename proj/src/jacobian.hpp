#pragma once

// Jacobians of genus-2 curves y^2 = f(x), deg f = 5, over small prime fields.
//
// Points are reduced Mumford pairs (u, v): u monic of degree <= 2, deg v < deg u,
// u | v^2 - f, standing for the class of P1 + P2 - 2*infinity. The group law is
// Cantor's composition and reduction.

#include "prime_field.hpp"
#include "rings.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace cmdyn {

/// Which order acts through the curve automorphism (x, y) -> (c*x, d*y).
enum class CmType { None, Gaussian, FifthRoot };

std::string_view cm_type_name(CmType cm);

struct CurveParams {
  std::uint64_t prime = 0;
  std::vector<std::int64_t> f;  // integer coefficients, low to high; monic quintic mod p
  CmType cm = CmType::None;
  std::uint64_t c = 1;  // x-scaling of the automorphism
  std::uint64_t d = 1;  // y-scaling
  unsigned order = 1;   // multiplicative order of c
};

/// y^2 = x^5 - x with (x, y) -> (-x, sqrt(-1) y); needs p = 1 mod 4.
CurveParams gaussian_curve(std::uint64_t p);
/// y^2 = x^5 - 1 with (x, y) -> (zeta x, y), zeta the smallest element of order 5; needs p = 1 mod 5.
CurveParams fifth_root_curve(std::uint64_t p);
/// Recognises x^5 - x and x^5 - 1 and attaches their automorphism; anything else gets CmType::None.
CurveParams curve_from_coefficients(std::uint64_t p, std::vector<std::int64_t> f);

struct MumfordDivisor {
  Polynomial u = Polynomial::constant(1);
  Polynomial v;

  friend bool operator==(const MumfordDivisor&, const MumfordDivisor&) = default;
  friend auto operator<=>(const MumfordDivisor&, const MumfordDivisor&) = default;
};

class JacobianContext {
 public:
  JacobianContext(CurveParams params, Polynomial f);

  const CurveParams& params() const { return params_; }
  const PrimeField& field() const { return ring_.field(); }
  const PolyRing& poly() const { return ring_; }
  const Polynomial& f() const { return f_; }
  std::uint64_t prime() const { return params_.prime; }
  RingKind ring_kind() const;  // throws when the curve has no CM action

  /// #J(F_p) from point counts, computed once.
  std::uint64_t group_order() const;

  std::string describe(const MumfordDivisor& P) const;

 private:
  CurveParams params_;
  PolyRing ring_;
  Polynomial f_;
  mutable std::once_flag order_once_;
  mutable std::uint64_t order_ = 0;
};

/// Checks primality, squarefreeness of f and compatibility of the automorphism.
std::shared_ptr<const JacobianContext> curve_validate(const CurveParams& params);

MumfordDivisor jacobian_identity();
bool is_valid(const MumfordDivisor& P, const JacobianContext& ctx);
MumfordDivisor negate(const MumfordDivisor& P, const JacobianContext& ctx);
MumfordDivisor cantor_add(const MumfordDivisor& P, const MumfordDivisor& Q, const JacobianContext& ctx);
MumfordDivisor scalar_mul(const Integer& n, const MumfordDivisor& P, const JacobianContext& ctx);
/// Pushforward under the k-th power of the curve automorphism.
MumfordDivisor automorphism_apply(const MumfordDivisor& P, const JacobianContext& ctx, unsigned k = 1);
/// [a]P for a in the curve's CM order, the generator acting as the automorphism.
MumfordDivisor endomorphism_apply(const RingElement& a, const MumfordDivisor& P, const JacobianContext& ctx);

inline constexpr std::uint64_t kDefaultEnumerationBound = 50;
inline constexpr std::uint64_t kPointCountBound = 1000;

/// Every reduced Mumford pair, sorted; needs p <= bound.
std::vector<MumfordDivisor> enumerate_points(const JacobianContext& ctx,
                                             std::uint64_t bound = kDefaultEnumerationBound);

struct CurveCounts {
  std::uint64_t n1 = 0;  // #C(F_p), including the point at infinity
  std::uint64_t n2 = 0;  // #C(F_p^2)
};
CurveCounts count_curve_points(const JacobianContext& ctx);
/// (N1^2 + N2)/2 - p; needs p <= kPointCountBound.
std::uint64_t jacobian_order_via_counts(const JacobianContext& ctx);

std::uint64_t kernel_count(const RingElement& a, const JacobianContext& ctx,
                           std::uint64_t bound = kDefaultEnumerationBound);
std::uint64_t kernel_count(const RingElement& a, const std::vector<MumfordDivisor>& points,
                           const JacobianContext& ctx);

struct OrbitCycle {
  std::uint64_t tail = 0;    // m
  std::uint64_t period = 0;  // k
};

/// First repetition of the pair orbit (P, Q) -> (phi1 P, phi2 Q).
OrbitCycle find_orbit_cycle(const RingElement& phi1, const RingElement& phi2, const MumfordDivisor& P,
                            const MumfordDivisor& Q, const JacobianContext& ctx);

}  // namespace cmdyn

#include "jacobian.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace cmdyn {
namespace {

Polynomial reduce_coefficients(const std::vector<std::int64_t>& f, const PrimeField& F) {
  std::vector<std::uint64_t> c;
  for (std::int64_t x : f) c.push_back(F.reduce(x));
  return Polynomial(std::move(c));
}

// F_p^2 = F_p(t), t^2 = r, for point counting.
struct QuadraticExtension {
  const PrimeField& F;
  std::uint64_t r;

  using Elem = std::pair<std::uint64_t, std::uint64_t>;

  Elem mul(Elem a, Elem b) const {
    return {F.add(F.mul(a.first, b.first), F.mul(F.mul(a.second, b.second), r)),
            F.add(F.mul(a.first, b.second), F.mul(a.second, b.first))};
  }
  std::uint64_t norm(Elem a) const { return F.sub(F.mul(a.first, a.first), F.mul(r, F.mul(a.second, a.second))); }
  Elem eval(const Polynomial& f, Elem x) const {
    Elem acc{0, 0};
    for (std::size_t k = f.c.size(); k-- > 0;) {
      acc = mul(acc, x);
      acc.first = F.add(acc.first, f.c[k]);
    }
    return acc;
  }
};

// Reduce a (possibly non-reduced) pair with u monic until deg u <= 2.
MumfordDivisor cantor_reduce(Polynomial u, Polynomial v, const JacobianContext& ctx) {
  const PolyRing& R = ctx.poly();
  v = R.mod(v, u);
  while (u.degree() > 2) {
    Polynomial u_next = R.exact_div(R.sub(ctx.f(), R.mul(v, v)), u);
    u = R.monic(u_next);
    v = R.mod(R.neg(v), u);
  }
  return {std::move(u), std::move(v)};
}

void require_valid(const MumfordDivisor& P, const JacobianContext& ctx) {
  if (!is_valid(P, ctx)) throw DomainError("invalid Mumford divisor " + ctx.describe(P));
}

}  // namespace

std::string_view cm_type_name(CmType cm) {
  switch (cm) {
    case CmType::None: return "none";
    case CmType::Gaussian: return "gaussian";
    case CmType::FifthRoot: return "fifthroot";
  }
  return "unknown";
}

CurveParams gaussian_curve(std::uint64_t p) {
  CurveParams params{p, {0, -1, 0, 0, 0, 1}, CmType::Gaussian, 0, 0, 4};
  const PrimeField F(p);
  params.c = F.neg(1);
  if (p % 4 == 1) params.d = *F.sqrt(F.neg(1));
  return params;
}

CurveParams fifth_root_curve(std::uint64_t p) {
  CurveParams params{p, {-1, 0, 0, 0, 0, 1}, CmType::FifthRoot, 0, 1, 5};
  const PrimeField F(p);
  params.c = F.element_of_order(5).value_or(0);
  return params;
}

CurveParams curve_from_coefficients(std::uint64_t p, std::vector<std::int64_t> f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  if (f == std::vector<std::int64_t>{0, -1, 0, 0, 0, 1}) return gaussian_curve(p);
  if (f == std::vector<std::int64_t>{-1, 0, 0, 0, 0, 1}) return fifth_root_curve(p);
  return CurveParams{p, std::move(f), CmType::None, 1, 1, 1};
}

JacobianContext::JacobianContext(CurveParams params, Polynomial f)
    : params_(std::move(params)), ring_(PrimeField(params_.prime)), f_(std::move(f)) {}

RingKind JacobianContext::ring_kind() const {
  switch (params_.cm) {
    case CmType::Gaussian: return RingKind::Gaussian;
    case CmType::FifthRoot: return RingKind::FifthRoot;
    case CmType::None: break;
  }
  throw DomainError("curve has no complex multiplication action");
}

std::uint64_t JacobianContext::group_order() const {
  std::call_once(order_once_, [this] { order_ = jacobian_order_via_counts(*this); });
  return order_;
}

std::string JacobianContext::describe(const MumfordDivisor& P) const {
  return "(" + ring_.to_string(P.u) + ", " + ring_.to_string(P.v) + ")";
}

std::shared_ptr<const JacobianContext> curve_validate(const CurveParams& params) {
  const std::uint64_t p = params.prime;
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (p == 2) throw DomainError("the prime must be odd");
  const PrimeField F(p);
  const PolyRing R(F);
  const Polynomial f = reduce_coefficients(params.f, F);
  if (f.degree() != 5 || f.lead() != 1) throw DomainError("f must be a monic quintic modulo p");
  if (R.gcd(f, R.derivative(f)).degree() != 0)
    throw DomainError("f is not squarefree modulo " + std::to_string(p) + " (bad reduction)");

  const std::uint64_t c = params.c % p;
  const std::uint64_t d = params.d % p;
  switch (params.cm) {
    case CmType::None:
      break;
    case CmType::Gaussian:
      if (p % 4 != 1) throw DomainError("the Gaussian action needs p = 1 mod 4");
      if (params.order != 4 || c != F.neg(1) || F.mul(d, d) != F.neg(1))
        throw DomainError("the Gaussian action needs c = -1 and d^2 = -1");
      break;
    case CmType::FifthRoot:
      if (p % 5 != 1) throw DomainError("the fifth-root action needs p = 1 mod 5");
      if (params.order != 5 || c == 0 || F.order(c) != 5 || d != 1)
        throw DomainError("the fifth-root action needs c of order 5 and d = 1");
      break;
  }
  if (params.cm != CmType::None) {
    const Polynomial lhs = R.substitute_scaled(f, c);
    const Polynomial rhs = R.scale(f, F.mul(d, d));
    if (lhs != rhs) throw DomainError("f(c x) != d^2 f(x): (x, y) -> (c x, d y) is not an automorphism");
  }
  return std::make_shared<const JacobianContext>(params, f);
}

MumfordDivisor jacobian_identity() { return {}; }

bool is_valid(const MumfordDivisor& P, const JacobianContext& ctx) {
  const PolyRing& R = ctx.poly();
  if (P.u.degree() < 0 || P.u.degree() > 2 || P.u.lead() != 1) return false;
  if (P.v.degree() >= P.u.degree()) return false;
  return R.mod(R.sub(R.mul(P.v, P.v), ctx.f()), P.u).is_zero();
}

MumfordDivisor negate(const MumfordDivisor& P, const JacobianContext& ctx) {
  return {P.u, ctx.poly().neg(P.v)};
}

MumfordDivisor cantor_add(const MumfordDivisor& P, const MumfordDivisor& Q, const JacobianContext& ctx) {
  require_valid(P, ctx);
  require_valid(Q, ctx);
  const PolyRing& R = ctx.poly();
  // Composition.
  const auto [d1, e1, e2] = R.xgcd(P.u, Q.u);
  const auto [d, c1, c2] = R.xgcd(d1, R.add(P.v, Q.v));
  const Polynomial s1 = R.mul(c1, e1);
  const Polynomial s2 = R.mul(c1, e2);
  const Polynomial& s3 = c2;
  const Polynomial u = R.exact_div(R.mul(P.u, Q.u), R.mul(d, d));
  Polynomial numerator = R.add(R.mul(R.mul(s1, P.u), Q.v), R.mul(R.mul(s2, Q.u), P.v));
  numerator = R.add(numerator, R.mul(s3, R.add(R.mul(P.v, Q.v), ctx.f())));
  const Polynomial v = R.mod(R.exact_div(numerator, d), u);
  return cantor_reduce(u, v, ctx);
}

MumfordDivisor scalar_mul(const Integer& n, const MumfordDivisor& P, const JacobianContext& ctx) {
  require_valid(P, ctx);
  MumfordDivisor base = n < 0 ? negate(P, ctx) : P;
  const Integer k = abs(n);
  MumfordDivisor result = jacobian_identity();
  const std::size_t bits = k == 0 ? 0 : mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t b = bits; b-- > 0;) {
    result = cantor_add(result, result, ctx);
    if (mpz_tstbit(k.get_mpz_t(), b)) result = cantor_add(result, base, ctx);
  }
  return result;
}

MumfordDivisor automorphism_apply(const MumfordDivisor& P, const JacobianContext& ctx, unsigned k) {
  require_valid(P, ctx);
  if (ctx.params().cm == CmType::None && k % ctx.params().order != 0)
    throw DomainError("curve has no automorphism to apply");
  const PrimeField& F = ctx.field();
  const PolyRing& R = ctx.poly();
  const std::uint64_t c = F.pow(ctx.params().c, k);
  const std::uint64_t d = F.pow(ctx.params().d, k);
  const std::uint64_t c_inv = F.inv(c);
  // Roots x0 of u move to c*x0; v(x0) = y0 moves to d*y0.
  Polynomial u = R.monic(R.substitute_scaled(P.u, c_inv));
  Polynomial v = R.scale(R.substitute_scaled(P.v, c_inv), d);
  return {std::move(u), std::move(v)};
}

MumfordDivisor endomorphism_apply(const RingElement& a, const MumfordDivisor& P, const JacobianContext& ctx) {
  if (a.spec().kind != ctx.ring_kind())
    throw DomainError("endomorphism ring " + std::string(a.spec().name()) + " does not act on this curve (" +
                      std::string(cm_type_name(ctx.params().cm)) + ")");
  MumfordDivisor result = jacobian_identity();
  MumfordDivisor image = P;
  for (std::size_t k = 0; k < a.spec().degree; ++k) {
    if (k > 0) image = automorphism_apply(image, ctx);
    if (a[k] != 0) result = cantor_add(result, scalar_mul(a[k], image, ctx), ctx);
  }
  return result;
}

std::vector<MumfordDivisor> enumerate_points(const JacobianContext& ctx, std::uint64_t bound) {
  const std::uint64_t p = ctx.prime();
  if (p > bound)
    throw DomainError("prime " + std::to_string(p) + " exceeds the enumeration bound " + std::to_string(bound));
  const PrimeField& F = ctx.field();
  const PolyRing& R = ctx.poly();
  std::vector<MumfordDivisor> points{jacobian_identity()};

  // Degree 1: u = x - a, v = b with b^2 = f(a).
  for (std::uint64_t a = 0; a < p; ++a) {
    const std::uint64_t fa = R.eval(ctx.f(), a);
    for (std::uint64_t b = 0; b < p; ++b)
      if (F.mul(b, b) == fa) points.push_back({Polynomial({F.neg(a), 1}), Polynomial::constant(b)});
  }
  // Degree 2: u = x^2 + u1 x + u0, v = v1 x + v0 with v^2 = f mod u.
  for (std::uint64_t u0 = 0; u0 < p; ++u0)
    for (std::uint64_t u1 = 0; u1 < p; ++u1) {
      const Polynomial u({u0, u1, 1});
      const Polynomial f_mod_u = R.mod(ctx.f(), u);
      const std::uint64_t r0 = f_mod_u.coeff(0), r1 = f_mod_u.coeff(1);
      // x^2 = -u1 x - u0 mod u, so v^2 = (2 v0 v1 - u1 v1^2) x + (v0^2 - u0 v1^2)
      for (std::uint64_t v1 = 0; v1 < p; ++v1) {
        const std::uint64_t v1sq = F.mul(v1, v1);
        for (std::uint64_t v0 = 0; v0 < p; ++v0) {
          const std::uint64_t c1 = F.sub(F.mul(F.add(v0, v0), v1), F.mul(u1, v1sq));
          const std::uint64_t c0 = F.sub(F.mul(v0, v0), F.mul(u0, v1sq));
          if (c1 == r1 && c0 == r0) points.push_back({u, Polynomial({v0, v1})});
        }
      }
    }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

CurveCounts count_curve_points(const JacobianContext& ctx) {
  const std::uint64_t p = ctx.prime();
  if (p > kPointCountBound)
    throw DomainError("prime " + std::to_string(p) + " exceeds the point-count bound " +
                      std::to_string(kPointCountBound));
  const PrimeField& F = ctx.field();
  const PolyRing& R = ctx.poly();
  CurveCounts counts{1, 1};  // one point at infinity on an odd-degree model
  for (std::uint64_t x = 0; x < p; ++x) counts.n1 += static_cast<std::uint64_t>(1 + F.legendre(R.eval(ctx.f(), x)));

  // Over F_p^2 a nonzero value is a square iff its norm is a square in F_p.
  const QuadraticExtension E{F, F.smallest_nonresidue()};
  for (std::uint64_t a = 0; a < p; ++a)
    for (std::uint64_t b = 0; b < p; ++b) {
      const auto fx = E.eval(ctx.f(), {a, b});
      if (fx.first == 0 && fx.second == 0) counts.n2 += 1;
      else counts.n2 += F.legendre(E.norm(fx)) == 1 ? 2 : 0;
    }
  return counts;
}

std::uint64_t jacobian_order_via_counts(const JacobianContext& ctx) {
  const CurveCounts counts = count_curve_points(ctx);
  return (counts.n1 * counts.n1 + counts.n2) / 2 - ctx.prime();
}

std::uint64_t kernel_count(const RingElement& a, const std::vector<MumfordDivisor>& points,
                           const JacobianContext& ctx) {
  const MumfordDivisor zero = jacobian_identity();
  return static_cast<std::uint64_t>(std::count_if(points.begin(), points.end(), [&](const MumfordDivisor& P) {
    return endomorphism_apply(a, P, ctx) == zero;
  }));
}

std::uint64_t kernel_count(const RingElement& a, const JacobianContext& ctx, std::uint64_t bound) {
  return kernel_count(a, enumerate_points(ctx, bound), ctx);
}

OrbitCycle find_orbit_cycle(const RingElement& phi1, const RingElement& phi2, const MumfordDivisor& P,
                            const MumfordDivisor& Q, const JacobianContext& ctx) {
  std::map<std::pair<MumfordDivisor, MumfordDivisor>, std::uint64_t> seen;
  std::pair<MumfordDivisor, MumfordDivisor> state{P, Q};
  for (std::uint64_t step = 0;; ++step) {
    auto [it, inserted] = seen.emplace(state, step);
    if (!inserted) return {it->second, step - it->second};
    state = {endomorphism_apply(phi1, state.first, ctx), endomorphism_apply(phi2, state.second, ctx)};
  }
}

}  // namespace cmdyn

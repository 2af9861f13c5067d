#include "calculus.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cmdyn {
namespace {

std::string basis_name(const RingSpec& ring, std::size_t k) {
  if (k == 0) return "1";
  std::string s(1, ring.generator_symbol);
  if (k > 1) s += "^" + std::to_string(k);
  return s;
}

RingElement basis_element(const RingSpec& ring, std::size_t k) {
  std::vector<Integer> c(ring.degree, 0);
  c[k] = 1;
  return RingElement(ring, std::move(c));
}

void require_ring(const RingElement& a, const CalculusContext& ctx) {
  if (a.spec().kind != ctx.ring().kind)
    throw DomainError("ring mismatch: element in " + std::string(a.spec().name()) + ", context over " +
                      std::string(ctx.ring().name()));
}

bool contains_element(std::span<const RingElement> set, const RingElement& x) {
  return std::find(set.begin(), set.end(), x) != set.end();
}

}  // namespace

// ---------------------------------------------------------------------------
// ClassVector

ClassVector::ClassVector(const CalculusContext& ctx, IntVector coords) : ctx_(&ctx), coords_(std::move(coords)) {
  if (coords_.size() != ctx.generator_count())
    throw DomainError("class vector length does not match generator count");
}

bool ClassVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Integer& x) { return x == 0; });
}

void ClassVector::check_context(const ClassVector& other) const {
  if (ctx_ != other.ctx_) throw DomainError("class vectors belong to different contexts");
}

ClassVector& ClassVector::operator+=(const ClassVector& rhs) {
  check_context(rhs);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
  return *this;
}

ClassVector& ClassVector::operator-=(const ClassVector& rhs) {
  check_context(rhs);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
  return *this;
}

ClassVector operator*(const Integer& k, ClassVector v) {
  for (auto& c : v.coords_) c *= k;
  return v;
}

bool operator==(const ClassVector& a, const ClassVector& b) {
  return a.ctx_ == b.ctx_ && a.coords_ == b.coords_;
}

std::string ClassVector::to_string() const {
  std::string out;
  for (std::size_t g = 0; g < coords_.size(); ++g) {
    const Integer& c = coords_[g];
    if (c == 0) continue;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    const Integer mag = abs(c);
    if (mag != 1) out += mag.get_str() + "*";
    out += ctx_->generator_name(g);
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// CalculusContext

std::size_t CalculusContext::b_index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (i == j || j >= ring_->degree) throw DomainError("b_index: need i < j < degree");
  const std::size_t d = ring_->degree;
  // Pairs are laid out after the d q-symbols in lexicographic order.
  std::size_t offset = d;
  for (std::size_t r = 0; r < i; ++r) offset += d - 1 - r;
  return offset + (j - i - 1);
}

std::shared_ptr<const CalculusContext> CalculusContext::build(const RingSpec& ring, std::vector<RingElement> units) {
  const RingElement one = RingElement::from_integer(ring, 1);
  for (const auto& u : units) {
    if (u.spec().kind != ring.kind) throw DomainError("unit " + u.to_string() + " is not in the context ring");
    const Integer n = norm(u);
    if (n != 1 && n != -1) throw DomainError("declared unit " + u.to_string() + " has norm " + n.get_str());
  }
  if (!contains_element(units, -one)) throw DomainError("unit set must contain -1 (symmetric base divisor)");
  for (const auto& u : units) {
    if (!contains_element(units, -u)) throw DomainError("unit set not closed under negation at " + u.to_string());
    for (const auto& v : units)
      if (!contains_element(units, u * v))
        throw DomainError("unit set not closed under multiplication: " + u.to_string() + " * " + v.to_string());
  }

  std::shared_ptr<CalculusContext> ctx(new CalculusContext());
  ctx->ring_ = &ring;
  ctx->units_ = std::move(units);
  const std::size_t d = ring.degree;
  for (std::size_t i = 0; i < d; ++i) ctx->generator_names_.push_back("q(" + basis_name(ring, i) + ")");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      ctx->generator_names_.push_back("b(" + basis_name(ring, i) + "," + basis_name(ring, j) + ")");

  const std::size_t n = ctx->generator_names_.size();
  ctx->relations_ = IntMatrix(0, n);
  std::vector<RingElement> basis;
  for (std::size_t k = 0; k < d; ++k) basis.push_back(basis_element(ring, k));
  for (const auto& u : ctx->units_) {
    for (std::size_t i = 0; i < d; ++i) {
      ClassVector image = quadratic_normal_form(u * basis[i], *ctx);
      IntVector row(image.coords().begin(), image.coords().end());
      row[ctx->q_index(i)] -= 1;
      ctx->relations_.append_row(row);
    }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) {
        ClassVector polar = bilinear_normal_form(u * basis[i], u * basis[j], *ctx);
        IntVector row(polar.coords().begin(), polar.coords().end());
        row[ctx->b_index(i, j)] -= 1;
        ctx->relations_.append_row(row);
      }
  }

  ctx->smith_ = smith_normal_form(ctx->relations_);
  ctx->relation_hnf_ = HermiteBasis(ctx->relations_, reverse_column_order(n));
  IntMatrix saturated(0, n);
  for (std::size_t r = 0; r < ctx->smith_.rank(); ++r) saturated.append_row(ctx->smith_.inverse_transform.row(r));
  ctx->saturated_hnf_ = HermiteBasis(saturated, reverse_column_order(n));

  // q(1) must stay out of the pivot set so that reduced classes read off as multiples of D.
  const auto pivots = ctx->saturated_hnf_.pivots();
  if (std::find(pivots.begin(), pivots.end(), ctx->q_index(0)) != pivots.end())
    throw std::logic_error("base class is torsion in the relation lattice");
  return ctx;
}

std::shared_ptr<const CalculusContext> CalculusContext::build_full(const RingSpec& ring) {
  return build(ring, torsion_units(ring));
}

Integer CalculusContext::torsion_index() const {
  Integer index = 1;
  for (const auto& s : smith_.invariants) index *= s;
  return index;
}

// ---------------------------------------------------------------------------
// Operations

ClassVector base_class(const CalculusContext& ctx) {
  IntVector v(ctx.generator_count(), 0);
  v[ctx.q_index(0)] = 1;
  return ClassVector(ctx, std::move(v));
}

ClassVector quadratic_normal_form(const RingElement& a, const CalculusContext& ctx) {
  require_ring(a, ctx);
  const std::size_t d = ctx.ring().degree;
  IntVector v(ctx.generator_count(), 0);
  for (std::size_t i = 0; i < d; ++i) {
    v[ctx.q_index(i)] = a[i] * a[i];
    for (std::size_t j = i + 1; j < d; ++j) v[ctx.b_index(i, j)] = a[i] * a[j];
  }
  return ClassVector(ctx, std::move(v));
}

ClassVector bilinear_normal_form(const RingElement& a, const RingElement& c, const CalculusContext& ctx) {
  require_ring(a, ctx);
  require_ring(c, ctx);
  const std::size_t d = ctx.ring().degree;
  IntVector v(ctx.generator_count(), 0);
  for (std::size_t i = 0; i < d; ++i) {
    v[ctx.q_index(i)] = 2 * a[i] * c[i];
    for (std::size_t j = i + 1; j < d; ++j) v[ctx.b_index(i, j)] = a[i] * c[j] + a[j] * c[i];
  }
  return ClassVector(ctx, std::move(v));
}

ClassVector reduce(const ClassVector& v) {
  const auto& basis = v.context().saturated_basis();
  return ClassVector(v.context(), basis.reduce(IntVector(v.coords().begin(), v.coords().end())));
}

bool in_relation_lattice(const ClassVector& v) { return v.context().relation_basis().contains(v.coords()); }

bool in_saturation(const ClassVector& v) { return v.context().saturated_basis().contains(v.coords()); }

IntVector quotient_coordinates(const ClassVector& v) {
  const SmithForm& smith = v.context().smith();
  IntVector w = v.coords() * smith.transform;
  return IntVector(w.begin() + static_cast<std::ptrdiff_t>(smith.rank()), w.end());
}

std::optional<Integer> torsion_order(const ClassVector& v) {
  const SmithForm& smith = v.context().smith();
  const IntVector w = v.coords() * smith.transform;
  for (std::size_t t = smith.rank(); t < w.size(); ++t)
    if (w[t] != 0) return std::nullopt;
  Integer order = 1;
  for (std::size_t t = 0; t < smith.rank(); ++t) {
    const Integer g = gcd(smith.invariants[t], w[t]);
    order = lcm(order, smith.invariants[t] / g);
  }
  return order;
}

std::string_view verdict_name(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Holds: return "holds";
    case VerdictKind::HoldsUpToTorsion: return "holds_up_to_torsion";
    case VerdictKind::NotDerivable: return "not_derivable";
  }
  return "unknown";
}

ClassVector class_of(std::span<const WeightedPullback> terms, const CalculusContext& ctx) {
  ClassVector total(ctx, IntVector(ctx.generator_count(), 0));
  for (const auto& term : terms) total += term.coeff * quadratic_normal_form(term.element, ctx);
  return total;
}

IdentityVerdict verify(std::span<const WeightedPullback> lhs, std::span<const WeightedPullback> rhs,
                       const CalculusContext& ctx) {
  const ClassVector diff = class_of(lhs, ctx) - class_of(rhs, ctx);
  if (in_relation_lattice(diff)) return {VerdictKind::Holds, 1};
  if (in_saturation(diff)) return {VerdictKind::HoldsUpToTorsion, torsion_order(diff).value()};
  return {VerdictKind::NotDerivable, 0};
}

ClassVector n_plus_alpha(const Integer& n, const RingElement& a, const CalculusContext& ctx) {
  if (n < 0) throw DomainError("n_plus_alpha: n must be nonnegative");
  const RingElement one = RingElement::from_integer(ctx.ring(), 1);
  return n * quadratic_normal_form(one + a, ctx) - (n - 1) * quadratic_normal_form(a, ctx) +
         (n * (n - 1)) * base_class(ctx);
}

std::optional<Integer> base_multiple(const ClassVector& v) {
  const ClassVector r = reduce(v);
  const std::size_t base = v.context().q_index(0);
  for (std::size_t g = 0; g < r.coords().size(); ++g)
    if (g != base && r[g] != 0) return std::nullopt;
  return r[base];
}

std::optional<Integer> polarization_scalar(const RingElement& a, const CalculusContext& ctx) {
  if (a.is_zero()) throw DomainError("polarization_scalar: zero endomorphism");
  auto c = base_multiple(quadratic_normal_form(a, ctx));
  if (c && *c >= 1) return c;
  return std::nullopt;
}

std::string RefutationCertificate::equation() const {
  return "a(" + s.get_str() + "-a)=" + t.get_str();
}

RefutationCertificate refute_scalar_hypothesis(const RingElement& a, const RingElement& b, const CalculusContext& ctx) {
  const auto s = base_multiple(quadratic_normal_form(a, ctx) + quadratic_normal_form(b, ctx));
  if (!s) throw DomainError("refute_scalar_hypothesis: [a]*D + [b]*D is not a derivable multiple of D");
  const auto t = base_multiple(quadratic_normal_form(a * b, ctx));
  if (!t) throw DomainError("refute_scalar_hypothesis: [ab]*D is not a derivable multiple of D");

  RefutationCertificate cert{*s, *t, {}};
  // k^2 - s k + t = 0
  const Integer disc = cert.s * cert.s - 4 * cert.t;
  if (disc >= 0) {
    const Integer root = sqrt(disc);
    if (root * root == disc) {
      for (const Integer num : std::initializer_list<Integer>{cert.s - root, cert.s + root}) {
        if (!mpz_even_p(num.get_mpz_t())) continue;
        const Integer k = num / 2;
        if (k >= 1 && std::find(cert.solutions.begin(), cert.solutions.end(), k) == cert.solutions.end())
          cert.solutions.push_back(k);
      }
    }
  }
  std::sort(cert.solutions.begin(), cert.solutions.end());
  return cert;
}

bool diagonal_preperiodic(const RingElement& phi1, const RingElement& phi2) {
  return ratio_is_root_of_unity(phi1, phi2);
}

}  // namespace cmdyn

#include "rings.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace cmdyn {
namespace {

RingSpec make_row(RingKind kind) {
  switch (kind) {
    case RingKind::Gaussian:
      return {kind, 2, {1, 0, 1}, 4, 'i'};
    case RingKind::SixthRoot:
      return {kind, 2, {1, -1, 1}, 6, 'a'};
    case RingKind::FifthRoot:
      return {kind, 4, {1, 1, 1, 1, 1}, 10, 'z'};
  }
  throw DomainError("unsupported ring kind");
}

// Fraction-free Gaussian elimination (Bareiss) determinant.
Integer bareiss_determinant(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Res(a, b) via the Sylvester matrix; a and b low-to-high, nonzero leading terms.
Integer resultant(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  const std::size_t da = a.size() - 1;
  const std::size_t db = b.size() - 1;
  const std::size_t n = da + db;
  if (n == 0) return 1;
  std::vector<std::vector<Integer>> syl(n, std::vector<Integer>(n, 0));
  for (std::size_t r = 0; r < db; ++r)
    for (std::size_t k = 0; k <= da; ++k) syl[r][r + k] = a[da - k];
  for (std::size_t r = 0; r < da; ++r)
    for (std::size_t k = 0; k <= db; ++k) syl[db + r][r + k] = b[db - k];
  return bareiss_determinant(std::move(syl));
}

}  // namespace

std::string_view RingSpec::name() const {
  switch (kind) {
    case RingKind::Gaussian: return "gaussian";
    case RingKind::SixthRoot: return "sixthroot";
    case RingKind::FifthRoot: return "fifthroot";
  }
  return "unknown";
}

const RingSpec& ring_make(RingKind kind) {
  static const RingSpec gaussian = make_row(RingKind::Gaussian);
  static const RingSpec sixth = make_row(RingKind::SixthRoot);
  static const RingSpec fifth = make_row(RingKind::FifthRoot);
  switch (kind) {
    case RingKind::Gaussian: return gaussian;
    case RingKind::SixthRoot: return sixth;
    case RingKind::FifthRoot: return fifth;
  }
  throw DomainError("unsupported ring kind");
}

RingKind parse_ring_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "gaussian") return RingKind::Gaussian;
  if (lower == "sixthroot") return RingKind::SixthRoot;
  if (lower == "fifthroot") return RingKind::FifthRoot;
  throw DomainError("unknown ring kind '" + std::string(text) +
                    "' (expected gaussian, sixthroot or fifthroot)");
}

RingElement::RingElement(const RingSpec& spec)
    : spec_(&spec), coeffs_(spec.degree, Integer(0)) {}

RingElement::RingElement(const RingSpec& spec, std::vector<Integer> coeffs)
    : spec_(&spec), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != spec.degree)
    throw DomainError("coefficient count does not match ring degree");
}

RingElement RingElement::from_integer(const RingSpec& spec, const Integer& n) {
  RingElement r(spec);
  r.coeffs_[0] = n;
  return r;
}

RingElement RingElement::generator(const RingSpec& spec) {
  RingElement r(spec);
  r.coeffs_[1] = 1;
  return r;
}

RingElement RingElement::monomial(const RingSpec& spec, unsigned k) {
  return power(generator(spec), k);
}

bool RingElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c == 0; });
}

void RingElement::check_same_ring(const RingElement& other) const {
  if (spec_->kind != other.spec_->kind)
    throw DomainError("ring mismatch: " + std::string(spec_->name()) + " vs " +
                      std::string(other.spec_->name()));
}

RingElement RingElement::operator-() const {
  RingElement r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

RingElement& RingElement::operator+=(const RingElement& rhs) {
  check_same_ring(rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& rhs) {
  check_same_ring(rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

RingElement& RingElement::operator*=(const RingElement& rhs) {
  check_same_ring(rhs);
  const std::size_t d = spec_->degree;
  std::vector<Integer> prod(2 * d - 1, Integer(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) prod[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  // Reduce by the monic minimal polynomial from the top down.
  const auto& m = spec_->min_poly;
  for (std::size_t k = prod.size() - 1; k >= d; --k) {
    if (prod[k] == 0) continue;
    const Integer lead = prod[k];
    for (std::size_t i = 0; i <= d; ++i) prod[k - d + i] -= lead * m[i];
  }
  prod.resize(d);
  coeffs_ = std::move(prod);
  return *this;
}

bool operator==(const RingElement& a, const RingElement& b) {
  return a.spec_->kind == b.spec_->kind && a.coeffs_ == b.coeffs_;
}

std::string RingElement::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Integer& c = coeffs_[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Integer mag = abs(c);
    if (!out.empty()) out += negative ? "-" : "+";
    else if (negative) out += "-";
    if (k == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += spec_->generator_symbol;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

RingElement power(const RingElement& a, unsigned long n) {
  RingElement result = RingElement::from_integer(a.spec(), 1);
  RingElement base = a;
  while (n > 0) {
    if (n & 1UL) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Integer norm(const RingElement& a) {
  if (a.is_zero()) return 0;
  std::vector<Integer> poly(a.coeffs().begin(), a.coeffs().end());
  while (poly.size() > 1 && poly.back() == 0) poly.pop_back();
  std::vector<Integer> m;
  for (long c : a.spec().min_poly) m.emplace_back(c);
  return resultant(m, poly);
}

bool is_root_of_unity(const RingElement& a) {
  if (a.is_zero()) throw DomainError("is_root_of_unity: zero argument");
  return power(a, a.spec().roots_of_unity) == RingElement::from_integer(a.spec(), 1);
}

bool ratio_is_root_of_unity(const RingElement& a, const RingElement& b) {
  if (a.is_zero() || b.is_zero()) throw DomainError("ratio_is_root_of_unity: zero argument");
  if (a.spec().kind != b.spec().kind) throw DomainError("ratio_is_root_of_unity: ring mismatch");
  const unsigned w = a.spec().roots_of_unity;
  return power(a, w) == power(b, w);
}

std::vector<RingElement> torsion_units(const RingSpec& spec) {
  // A primitive w-th root: i (w=4), a (w=6), -z (w=10).
  RingElement primitive = RingElement::generator(spec);
  if (spec.kind == RingKind::FifthRoot) primitive = -primitive;
  std::vector<RingElement> units;
  RingElement x = RingElement::from_integer(spec, 1);
  for (unsigned k = 0; k < spec.roots_of_unity; ++k) {
    units.push_back(x);
    x *= primitive;
  }
  return units;
}

RingElement gaussian_i() { return RingElement::generator(ring_make(RingKind::Gaussian)); }

RingElement sixth_alpha() { return RingElement::generator(ring_make(RingKind::SixthRoot)); }

RingElement sixth_j() {
  static const RingElement j = [] {
    const RingSpec& spec = ring_make(RingKind::SixthRoot);
    RingElement value = sixth_alpha() - RingElement::from_integer(spec, 1);
    if (!(value * value + value + RingElement::from_integer(spec, 1)).is_zero())
      throw std::logic_error("j^2 + j + 1 != 0 in the sixth-root ring");
    return value;
  }();
  return j;
}

RingElement fifth_zeta() { return RingElement::generator(ring_make(RingKind::FifthRoot)); }

}  // namespace cmdyn

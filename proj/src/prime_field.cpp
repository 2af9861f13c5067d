#include "prime_field.hpp"

#include "rings.hpp"

#include <algorithm>

namespace cmdyn {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
}

std::uint64_t PrimeField::reduce(std::int64_t a) const {
  const std::int64_t m = static_cast<std::int64_t>(p_);
  std::int64_t r = a % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t result = 1 % p_;
  a %= p_;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw DomainError("inverse of zero in F_" + std::to_string(p_));
  return pow(a, p_ - 2);
}

int PrimeField::legendre(std::uint64_t a) const {
  a %= p_;
  if (a == 0) return 0;
  if (p_ == 2) return 1;
  return pow(a, (p_ - 1) / 2) == 1 ? 1 : -1;
}

std::optional<std::uint64_t> PrimeField::sqrt(std::uint64_t a) const {
  a %= p_;
  if (a == 0) return 0;
  if (legendre(a) != 1) return std::nullopt;
  if (p_ % 4 == 3) return pow(a, (p_ + 1) / 4);
  // Tonelli-Shanks.
  std::uint64_t q = p_ - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  const std::uint64_t z = smallest_nonresidue();
  std::uint64_t m = s;
  std::uint64_t c = pow(z, q);
  std::uint64_t t = pow(a, q);
  std::uint64_t r = pow(a, (q + 1) / 2);
  while (t != 1) {
    std::uint64_t i = 0;
    std::uint64_t t2 = t;
    while (t2 != 1) {
      t2 = mul(t2, t2);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t k = 0; k + i + 1 < m; ++k) b = mul(b, b);
    m = i;
    c = mul(b, b);
    t = mul(t, c);
    r = mul(r, b);
  }
  return r;
}

std::uint64_t PrimeField::order(std::uint64_t a) const {
  a %= p_;
  if (a == 0) throw DomainError("order of zero");
  std::uint64_t k = 1;
  std::uint64_t x = a;
  while (x != 1) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

std::optional<std::uint64_t> PrimeField::element_of_order(std::uint64_t m) const {
  if (m == 0 || (p_ - 1) % m != 0) return std::nullopt;
  for (std::uint64_t a = 1; a < p_; ++a)
    if (order(a) == m) return a;
  return std::nullopt;
}

std::uint64_t PrimeField::smallest_nonresidue() const {
  for (std::uint64_t a = 2; a < p_; ++a)
    if (legendre(a) == -1) return a;
  throw DomainError("F_" + std::to_string(p_) + " has no quadratic nonresidue");
}

// ---------------------------------------------------------------------------

Polynomial PolyRing::add(const Polynomial& a, const Polynomial& b) const {
  std::vector<std::uint64_t> out(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f_.add(a.coeff(i), b.coeff(i));
  return Polynomial(std::move(out));
}

Polynomial PolyRing::sub(const Polynomial& a, const Polynomial& b) const {
  std::vector<std::uint64_t> out(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f_.sub(a.coeff(i), b.coeff(i));
  return Polynomial(std::move(out));
}

Polynomial PolyRing::neg(const Polynomial& a) const {
  std::vector<std::uint64_t> out(a.c);
  for (auto& x : out) x = f_.neg(x);
  return Polynomial(std::move(out));
}

Polynomial PolyRing::scale(const Polynomial& a, std::uint64_t k) const {
  std::vector<std::uint64_t> out(a.c);
  for (auto& x : out) x = f_.mul(x, k);
  return Polynomial(std::move(out));
}

Polynomial PolyRing::mul(const Polynomial& a, const Polynomial& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<std::uint64_t> out(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) out[i + j] = f_.add(out[i + j], f_.mul(a.c[i], b.c[j]));
  return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> PolyRing::divmod(const Polynomial& a, const Polynomial& b) const {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial{}, a};
  std::vector<std::uint64_t> rem = a.c;
  std::vector<std::uint64_t> quo(a.c.size() - b.c.size() + 1, 0);
  const std::uint64_t lead_inv = f_.inv(b.lead());
  const std::size_t db = b.c.size() - 1;
  for (std::size_t k = quo.size(); k-- > 0;) {
    const std::uint64_t q = f_.mul(rem[k + db], lead_inv);
    quo[k] = q;
    if (q == 0) continue;
    for (std::size_t i = 0; i <= db; ++i) rem[k + i] = f_.sub(rem[k + i], f_.mul(q, b.c[i]));
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial PolyRing::exact_div(const Polynomial& a, const Polynomial& b) const {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("exact_div: nonzero remainder");
  return q;
}

Polynomial PolyRing::monic(const Polynomial& a) const {
  if (a.is_zero()) return a;
  return scale(a, f_.inv(a.lead()));
}

Polynomial PolyRing::derivative(const Polynomial& a) const {
  if (a.c.size() <= 1) return {};
  std::vector<std::uint64_t> out(a.c.size() - 1);
  for (std::size_t k = 1; k < a.c.size(); ++k) out[k - 1] = f_.mul(a.c[k], k % f_.p());
  return Polynomial(std::move(out));
}

std::uint64_t PolyRing::eval(const Polynomial& a, std::uint64_t x) const {
  std::uint64_t acc = 0;
  for (std::size_t k = a.c.size(); k-- > 0;) acc = f_.add(f_.mul(acc, x), a.c[k]);
  return acc;
}

PolyRing::Bezout PolyRing::xgcd(const Polynomial& a, const Polynomial& b) const {
  Polynomial r0 = a, r1 = b;
  Polynomial s0 = Polynomial::constant(1), s1;
  Polynomial t0, t1 = Polynomial::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Polynomial s2 = sub(s0, mul(q, s1));
    s0 = std::move(s1);
    s1 = std::move(s2);
    Polynomial t2 = sub(t0, mul(q, t1));
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const std::uint64_t k = f_.inv(r0.lead());
  return {scale(r0, k), scale(s0, k), scale(t0, k)};
}

Polynomial PolyRing::substitute_scaled(const Polynomial& a, std::uint64_t k) const {
  std::vector<std::uint64_t> out(a.c);
  std::uint64_t kp = 1;
  for (auto& x : out) {
    x = f_.mul(x, kp);
    kp = f_.mul(kp, k);
  }
  return Polynomial(std::move(out));
}

std::string PolyRing::to_string(const Polynomial& a, char var) const {
  if (a.is_zero()) return "0";
  std::string out;
  for (std::size_t k = a.c.size(); k-- > 0;) {
    if (a.c[k] == 0) continue;
    if (!out.empty()) out += "+";
    if (a.c[k] != 1 || k == 0) out += std::to_string(a.c[k]);
    if (k > 0) {
      if (a.c[k] != 1) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

}  // namespace cmdyn

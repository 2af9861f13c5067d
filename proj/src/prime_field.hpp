#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cmdyn {

bool is_prime(std::uint64_t n);

/// Arithmetic in F_p for word-sized primes (products fit in 128 bits).
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t p() const { return p_; }

  std::uint64_t reduce(std::int64_t a) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return a + b >= p_ ? a + b - p_ : a + b; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;

  /// 1, -1, or 0 for a == 0.
  int legendre(std::uint64_t a) const;
  std::optional<std::uint64_t> sqrt(std::uint64_t a) const;
  /// Multiplicative order of a != 0.
  std::uint64_t order(std::uint64_t a) const;
  /// Smallest element of exact multiplicative order m, if m divides p - 1.
  std::optional<std::uint64_t> element_of_order(std::uint64_t m) const;
  std::uint64_t smallest_nonresidue() const;

 private:
  std::uint64_t p_;
};

/// Dense polynomial over F_p, coefficients low to high, no trailing zeros.
/// The zero polynomial has no coefficients.
struct Polynomial {
  std::vector<std::uint64_t> c;

  Polynomial() = default;
  explicit Polynomial(std::vector<std::uint64_t> coeffs) : c(std::move(coeffs)) { trim(); }
  static Polynomial constant(std::uint64_t a) { return Polynomial(std::vector<std::uint64_t>{a}); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c.size()) - 1; }
  std::uint64_t lead() const { return c.empty() ? 0 : c.back(); }
  std::uint64_t coeff(std::size_t k) const { return k < c.size() ? c[k] : 0; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
  friend auto operator<=>(const Polynomial&, const Polynomial&) = default;
};

/// Polynomial arithmetic bound to one field.
class PolyRing {
 public:
  explicit PolyRing(PrimeField field) : f_(field) {}
  const PrimeField& field() const { return f_; }

  Polynomial add(const Polynomial& a, const Polynomial& b) const;
  Polynomial sub(const Polynomial& a, const Polynomial& b) const;
  Polynomial neg(const Polynomial& a) const;
  Polynomial scale(const Polynomial& a, std::uint64_t k) const;
  Polynomial mul(const Polynomial& a, const Polynomial& b) const;
  /// (quotient, remainder); b must be nonzero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) const;
  Polynomial mod(const Polynomial& a, const Polynomial& b) const { return divmod(a, b).second; }
  Polynomial exact_div(const Polynomial& a, const Polynomial& b) const;
  Polynomial monic(const Polynomial& a) const;
  Polynomial derivative(const Polynomial& a) const;
  std::uint64_t eval(const Polynomial& a, std::uint64_t x) const;

  struct Bezout {
    Polynomial gcd;  // monic, or zero if both inputs are zero
    Polynomial s;
    Polynomial t;    // s*a + t*b = gcd
  };
  Bezout xgcd(const Polynomial& a, const Polynomial& b) const;
  Polynomial gcd(const Polynomial& a, const Polynomial& b) const { return xgcd(a, b).gcd; }

  /// a(k*x)
  Polynomial substitute_scaled(const Polynomial& a, std::uint64_t k) const;

  std::string to_string(const Polynomial& a, char var = 'x') const;

 private:
  PrimeField f_;
};

}  // namespace cmdyn

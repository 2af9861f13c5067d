#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cmdyn {

using Integer = mpz_class;

/// Raised when arguments violate an operation's preconditions.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class RingKind { Gaussian, SixthRoot, FifthRoot };

/// One row of the fixed table of supported orders.
///
/// Elements are stored in the power basis 1, g, ..., g^(d-1) of the generator g,
/// where g is i (Gaussian), a primitive sixth root a with a^2 = a - 1
/// (SixthRoot) or a primitive fifth root z (FifthRoot).
struct RingSpec {
  RingKind kind;
  std::size_t degree;
  std::vector<long> min_poly;  // low to high, monic, length degree + 1
  unsigned roots_of_unity;     // number of roots of unity in the fraction field
  char generator_symbol;

  std::string_view name() const;
};

const RingSpec& ring_make(RingKind kind);

/// Accepts "gaussian", "sixthroot", "fifthroot" (case-insensitive).
RingKind parse_ring_kind(std::string_view text);

class RingElement {
 public:
  explicit RingElement(const RingSpec& spec);  // zero
  RingElement(const RingSpec& spec, std::vector<Integer> coeffs);

  static RingElement from_integer(const RingSpec& spec, const Integer& n);
  static RingElement generator(const RingSpec& spec);
  /// g^k for any k >= 0, reduced.
  static RingElement monomial(const RingSpec& spec, unsigned k);

  const RingSpec& spec() const { return *spec_; }
  std::span<const Integer> coeffs() const { return coeffs_; }
  const Integer& operator[](std::size_t i) const { return coeffs_[i]; }
  bool is_zero() const;

  RingElement operator-() const;
  RingElement& operator+=(const RingElement& rhs);
  RingElement& operator-=(const RingElement& rhs);
  RingElement& operator*=(const RingElement& rhs);

  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator*(RingElement a, const RingElement& b) { return a *= b; }
  friend bool operator==(const RingElement& a, const RingElement& b);

  /// Canonical text, e.g. "2-3*z+z^3". Parses back to the same element.
  std::string to_string() const;

 private:
  void check_same_ring(const RingElement& other) const;

  const RingSpec* spec_;
  std::vector<Integer> coeffs_;
};

RingElement power(const RingElement& a, unsigned long n);

/// Field norm to Q, computed as Res(min_poly, a(x)).
Integer norm(const RingElement& a);

/// a^w == 1 with w the root-of-unity count of the ring. Throws on a == 0.
bool is_root_of_unity(const RingElement& a);

/// a^w == b^w, i.e. a/b is a root of unity. Throws on a zero argument.
bool ratio_is_root_of_unity(const RingElement& a, const RingElement& b);

/// All w roots of unity of the ring, as powers of a primitive one.
std::vector<RingElement> torsion_units(const RingSpec& spec);

// Named constants.
RingElement gaussian_i();
RingElement sixth_alpha();  // a, a^2 - a + 1 = 0
RingElement sixth_j();      // j = a - 1, j^2 + j + 1 = 0
RingElement fifth_zeta();

}  // namespace cmdyn

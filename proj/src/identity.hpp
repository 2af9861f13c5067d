#pragma once

// Surface syntax for ring elements and pullback identities.
//
//   identity := expr "~" expr
//   expr     := ["-"] term { ("+" | "-") term }
//   term     := [int] ( "D" | "[" ringexpr "]" "*" "D" )
//   ringexpr := ["+" | "-"] rterm { ("+" | "-") rterm }
//   rterm    := rfactor { "*" rfactor }
//   rfactor  := rbase [ "^" uint ]
//   rbase    := int | generator | "(" ringexpr ")"
//
// Generators: i (gaussian), a and j = a - 1 (sixthroot), z (fifthroot).
// Whitespace is ignored. Positions are 1-based.

#include "calculus.hpp"
#include "rings.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cmdyn {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column);

  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t length = 0;
};

struct IdentityTerm {
  Integer coeff;
  RingElement element;
  std::string expression;  // ring expression as written; "1" for a bare D
  SourceSpan span;
};

struct ParsedIdentity {
  RingKind ring;
  std::vector<IdentityTerm> lhs;
  std::vector<IdentityTerm> rhs;

  /// Canonical text, e.g. "[1+i]*D + [1-i]*D ~ 4 D".
  std::string to_string() const;
  /// Equality of ring and (coefficient, element) lists; spans and spellings are ignored.
  bool same_structure(const ParsedIdentity& other) const;
};

RingElement parse_ring_element(std::string_view text, const RingSpec& ring);
ParsedIdentity parse_identity(std::string_view text, const RingSpec& ring, std::size_t line = 1);

std::vector<WeightedPullback> to_pullbacks(const std::vector<IdentityTerm>& terms);

/// Integer polynomial in one variable, coefficients low to high.
std::vector<Integer> parse_integer_polynomial(std::string_view text, char variable = 'x');

struct IdentityFileEntry {
  std::size_t line = 0;
  std::string source;
  ParsedIdentity identity;
};

/// One identity per line, '#' comments, "ring: <kind>" headers switching the
/// ring for the lines that follow. Lines before any header use default_ring.
std::vector<IdentityFileEntry> parse_identity_file(std::string_view content, std::optional<RingKind> default_ring);

}  // namespace cmdyn

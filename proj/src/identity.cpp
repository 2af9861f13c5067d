#include "identity.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <utility>

namespace cmdyn {
namespace {

constexpr std::size_t kMaxNesting = 128;
constexpr unsigned long kMaxExponent = 4096;

enum class Tok { Int, Name, Plus, Minus, Star, Caret, LParen, RParen, LBracket, RBracket, Tilde, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view text, std::size_t line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char ch = static_cast<unsigned char>(text[i]);
    const std::size_t col = i + 1;
    if (std::isspace(ch)) {
      ++i;
      continue;
    }
    if (std::isdigit(ch)) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::Int, std::string(text.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (std::isalpha(ch)) {
      out.push_back({Tok::Name, std::string(1, static_cast<char>(ch)), col});
      ++i;
      continue;
    }
    Tok kind;
    switch (ch) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case '~': kind = Tok::Tilde; break;
      default: {
        std::string shown = std::isprint(ch) ? std::string(1, static_cast<char>(ch)) : "\\x" + std::to_string(ch);
        throw ParseError("unknown token '" + shown + "'", line, col);
      }
    }
    out.push_back({kind, std::string(1, static_cast<char>(ch)), col});
    ++i;
  }
  out.push_back({Tok::End, "", text.size() + 1});
  return out;
}

std::string describe(const Token& t) { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }

// Arithmetic used while evaluating an expression.
template <class Value>
struct Algebra {
  std::function<Value(const Integer&)> constant;
  std::function<Value(const Token&)> symbol;  // throws ParseError for unknown names
  std::function<Value(const Value&, const Value&)> add;
  std::function<Value(const Value&, const Value&)> mul;
  std::function<Value(const Value&)> neg;
  std::function<Value(const Value&, unsigned long)> pow;
};

class Parser {
 public:
  Parser(std::string_view text, std::size_t line) : text_(text), line_(line), tokens_(tokenize(text, line)) {}

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& what, const Token& at) const {
    throw ParseError(what + ", found " + describe(at), line_, at.column);
  }
  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what, peek());
    return next();
  }
  std::size_t line() const { return line_; }
  std::string_view slice(std::size_t from_col, std::size_t to_col) const {
    return text_.substr(from_col - 1, to_col - from_col);
  }

  template <class Value>
  Value sum(const Algebra<Value>& alg, std::size_t depth) {
    if (depth > kMaxNesting) throw ParseError("expression nested too deeply", line_, peek().column);
    bool negate_first = false;
    if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) negate_first = next().kind == Tok::Minus;
    Value acc = product(alg, depth);
    if (negate_first) acc = alg.neg(acc);
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool minus = next().kind == Tok::Minus;
      Value rhs = product(alg, depth);
      acc = alg.add(acc, minus ? alg.neg(rhs) : rhs);
    }
    return acc;
  }

 private:
  template <class Value>
  Value product(const Algebra<Value>& alg, std::size_t depth) {
    Value acc = factor(alg, depth);
    while (accept(Tok::Star)) acc = alg.mul(acc, factor(alg, depth));
    return acc;
  }

  template <class Value>
  Value factor(const Algebra<Value>& alg, std::size_t depth) {
    Value base = atom(alg, depth);
    if (!accept(Tok::Caret)) return base;
    const Token& e = peek();
    if (e.kind != Tok::Int) fail("expected a nonnegative integer exponent", e);
    next();
    if (e.text.size() > 6 || std::stoul(e.text) > kMaxExponent)
      throw ParseError("exponent exceeds " + std::to_string(kMaxExponent), line_, e.column);
    return alg.pow(base, std::stoul(e.text));
  }

  template <class Value>
  Value atom(const Algebra<Value>& alg, std::size_t depth) {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int:
        next();
        return alg.constant(Integer(t.text, 10));
      case Tok::Name:
        next();
        return alg.symbol(t);
      case Tok::LParen: {
        next();
        Value inner = sum(alg, depth + 1);
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail("expected an integer, a generator or '('", t);
    }
  }

  std::string_view text_;
  std::size_t line_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

Algebra<RingElement> ring_algebra(const RingSpec& ring, std::size_t line) {
  Algebra<RingElement> alg;
  alg.constant = [&ring](const Integer& n) { return RingElement::from_integer(ring, n); };
  alg.symbol = [&ring, line](const Token& t) -> RingElement {
    const char c = t.text[0];
    switch (ring.kind) {
      case RingKind::Gaussian:
        if (c == 'i') return gaussian_i();
        break;
      case RingKind::SixthRoot:
        if (c == 'a') return sixth_alpha();
        if (c == 'j') return sixth_j();
        break;
      case RingKind::FifthRoot:
        if (c == 'z') return fifth_zeta();
        break;
    }
    if (c == 'i' || c == 'a' || c == 'j' || c == 'z')
      throw ParseError("wrong generator '" + t.text + "' for ring " + std::string(ring.name()), line, t.column);
    if (c == 'D') throw ParseError("'D' cannot appear inside a ring expression", line, t.column);
    throw ParseError("unknown token '" + t.text + "'", line, t.column);
  };
  alg.add = [](const RingElement& a, const RingElement& b) { return a + b; };
  alg.mul = [](const RingElement& a, const RingElement& b) { return a * b; };
  alg.neg = [](const RingElement& a) { return -a; };
  alg.pow = [](const RingElement& a, unsigned long n) { return power(a, n); };
  return alg;
}

using IntPoly = std::vector<Integer>;

void trim_poly(IntPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

Algebra<IntPoly> polynomial_algebra(char variable, std::size_t line) {
  Algebra<IntPoly> alg;
  alg.constant = [](const Integer& n) { return IntPoly{n}; };
  alg.symbol = [variable, line](const Token& t) -> IntPoly {
    if (t.text[0] != variable) throw ParseError("unknown token '" + t.text + "'", line, t.column);
    return IntPoly{0, 1};
  };
  alg.add = [](const IntPoly& a, const IntPoly& b) {
    IntPoly out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    trim_poly(out);
    return out;
  };
  alg.mul = [](const IntPoly& a, const IntPoly& b) {
    IntPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    trim_poly(out);
    return out;
  };
  alg.neg = [](const IntPoly& a) {
    IntPoly out(a);
    for (auto& c : out) c = -c;
    return out;
  };
  alg.pow = [mul = alg.mul](const IntPoly& a, unsigned long n) {
    IntPoly out{1};
    for (unsigned long k = 0; k < n; ++k) out = mul(out, a);
    return out;
  };
  return alg;
}

IdentityTerm parse_term(Parser& parser, const RingSpec& ring, const Algebra<RingElement>& alg, bool negative) {
  const std::size_t start = parser.peek().column;
  Integer coeff = 1;
  if (parser.peek().kind == Tok::Int) coeff = Integer(parser.next().text, 10);
  if (negative) coeff = -coeff;

  const Token& t = parser.peek();
  if (t.kind == Tok::Name && t.text == "D") {
    parser.next();
    return {coeff, RingElement::from_integer(ring, 1), "1", {parser.line(), start, t.column + 1 - start}};
  }
  if (t.kind != Tok::LBracket) parser.fail("expected 'D' or '['", t);
  parser.next();
  const std::size_t expr_start = parser.peek().column;
  RingElement element = parser.sum(alg, 0);
  const Token& close = parser.expect(Tok::RBracket, "']'");
  std::string expression(parser.slice(expr_start, close.column));
  parser.expect(Tok::Star, "'*'");
  const Token& d = parser.peek();
  if (d.kind != Tok::Name || d.text != "D") parser.fail("expected 'D'", d);
  parser.next();
  expression.erase(std::remove_if(expression.begin(), expression.end(),
                                  [](unsigned char c) { return std::isspace(c); }),
                   expression.end());
  return {coeff, std::move(element), std::move(expression), {parser.line(), start, d.column + 1 - start}};
}

std::vector<IdentityTerm> parse_side(Parser& parser, const RingSpec& ring, const Algebra<RingElement>& alg) {
  std::vector<IdentityTerm> terms;
  bool negative = parser.accept(Tok::Minus);
  terms.push_back(parse_term(parser, ring, alg, negative));
  while (parser.peek().kind == Tok::Plus || parser.peek().kind == Tok::Minus) {
    negative = parser.next().kind == Tok::Minus;
    terms.push_back(parse_term(parser, ring, alg, negative));
  }
  return terms;
}

std::string print_side(const std::vector<IdentityTerm>& terms) {
  std::string out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const IdentityTerm& term = terms[k];
    const bool negative = term.coeff < 0;
    if (k == 0) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    const Integer mag = abs(term.coeff);
    const bool bare = term.element == RingElement::from_integer(term.element.spec(), 1);
    if (bare) {
      if (mag != 1) out += mag.get_str() + " ";
      out += "D";
    } else {
      if (mag != 1) out += mag.get_str();
      out += "[" + term.element.to_string() + "]*D";
    }
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

ParseError::ParseError(std::string message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      message_(std::move(message)),
      line_(line),
      column_(column) {}

RingElement parse_ring_element(std::string_view text, const RingSpec& ring) {
  Parser parser(text, 1);
  const auto alg = ring_algebra(ring, 1);
  RingElement value = parser.sum(alg, 0);
  if (parser.peek().kind != Tok::End) parser.fail("unexpected input after expression", parser.peek());
  return value;
}

ParsedIdentity parse_identity(std::string_view text, const RingSpec& ring, std::size_t line) {
  Parser parser(text, line);
  const auto alg = ring_algebra(ring, line);
  ParsedIdentity out{ring.kind, {}, {}};
  out.lhs = parse_side(parser, ring, alg);
  parser.expect(Tok::Tilde, "'~'");
  out.rhs = parse_side(parser, ring, alg);
  if (parser.peek().kind != Tok::End) parser.fail("unexpected input after identity", parser.peek());
  return out;
}

std::string ParsedIdentity::to_string() const { return print_side(lhs) + " ~ " + print_side(rhs); }

bool ParsedIdentity::same_structure(const ParsedIdentity& other) const {
  auto same = [](const std::vector<IdentityTerm>& a, const std::vector<IdentityTerm>& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](const IdentityTerm& x, const IdentityTerm& y) {
      return x.coeff == y.coeff && x.element == y.element;
    });
  };
  return ring == other.ring && same(lhs, other.lhs) && same(rhs, other.rhs);
}

std::vector<WeightedPullback> to_pullbacks(const std::vector<IdentityTerm>& terms) {
  std::vector<WeightedPullback> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back({t.coeff, t.element});
  return out;
}

std::vector<Integer> parse_integer_polynomial(std::string_view text, char variable) {
  Parser parser(text, 1);
  const auto alg = polynomial_algebra(variable, 1);
  IntPoly value = parser.sum(alg, 0);
  if (parser.peek().kind != Tok::End) parser.fail("unexpected input after polynomial", parser.peek());
  return value;
}

std::vector<IdentityFileEntry> parse_identity_file(std::string_view content, std::optional<RingKind> default_ring) {
  std::vector<IdentityFileEntry> entries;
  std::optional<RingKind> ring = default_ring;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string body = trim(line);
    if (body.empty()) {
      if (end == content.size()) break;
      continue;
    }
    std::string lowered = body;
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lowered.rfind("ring:", 0) == 0) {
      const std::size_t offset = line.find(':') + 1;
      try {
        ring = parse_ring_kind(trim(line.substr(offset)));
      } catch (const DomainError& e) {
        throw ParseError(e.what(), line_no, offset + 1);
      }
    } else {
      if (!ring) throw ParseError("no ring selected (add a 'ring:' header or pass a ring)", line_no, 1);
      entries.push_back({line_no, body, parse_identity(line, ring_make(*ring), line_no)});
    }
    if (end == content.size()) break;
  }
  return entries;
}

}  // namespace cmdyn

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "identity.hpp"
#include "support.hpp"

#include <random>
#include <string>

using namespace cmdyn;
using testing_support::element;
using testing_support::kAllRings;

namespace {

const RingSpec& G() { return ring_make(RingKind::Gaussian); }
const RingSpec& S() { return ring_make(RingKind::SixthRoot); }
const RingSpec& F() { return ring_make(RingKind::FifthRoot); }

std::string generator_text(const RingSpec& spec) { return std::string(1, spec.generator_symbol); }

// A random ring expression together with its value, built side by side.
std::pair<std::string, RingElement> random_expression(const RingSpec& spec, std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> choice(0, depth > 0 ? 5 : 1);
  std::uniform_int_distribution<long> small(0, 9);
  switch (choice(rng)) {
    case 0: {
      const long n = small(rng);
      return {std::to_string(n), RingElement::from_integer(spec, n)};
    }
    case 1:
      return {generator_text(spec), RingElement::generator(spec)};
    case 2: {
      auto [a, x] = random_expression(spec, rng, depth - 1);
      auto [b, y] = random_expression(spec, rng, depth - 1);
      return {a + "+" + b, x + y};
    }
    case 3: {
      auto [a, x] = random_expression(spec, rng, depth - 1);
      auto [b, y] = random_expression(spec, rng, depth - 1);
      return {"(" + a + ")-(" + b + ")", x - y};
    }
    case 4: {
      auto [a, x] = random_expression(spec, rng, depth - 1);
      auto [b, y] = random_expression(spec, rng, depth - 1);
      return {"(" + a + ")*(" + b + ")", x * y};
    }
    default: {
      auto [a, x] = random_expression(spec, rng, depth - 1);
      const unsigned e = static_cast<unsigned>(small(rng) % 4);
      return {"(" + a + ")^" + std::to_string(e), power(x, e)};
    }
  }
}

std::string random_identity(const RingSpec& spec, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> terms(1, 4);
  std::uniform_int_distribution<int> coin(0, 2);
  std::uniform_int_distribution<int> coeff(1, 12);
  auto side = [&]() {
    std::string out;
    const int n = terms(rng);
    for (int k = 0; k < n; ++k) {
      if (k > 0) out += coin(rng) == 0 ? " - " : " + ";
      else if (coin(rng) == 0) out += "-";
      if (coin(rng) == 0) out += std::to_string(coeff(rng)) + " ";
      if (coin(rng) == 0)
        out += "D";
      else
        out += "[" + random_expression(spec, rng, 3).first + "]*D";
    }
    return out;
  };
  return side() + " ~ " + side();
}

}  // namespace

TEST_CASE("ring element examples") {
  CHECK(parse_ring_element("(1+z)*(1+z^2)", F()) == -power(fifth_zeta(), 4));
  const auto e = parse_ring_element("2+i", G());
  CHECK(e[0] == 2);
  CHECK(e[1] == 1);
  CHECK_THROWS_AS(parse_ring_element("2+i", F()), ParseError);
  try {
    parse_ring_element("2+i", F());
  } catch (const ParseError& err) {
    CHECK(err.column() == 3);
    CHECK(err.message().find("wrong generator") != std::string::npos);
  }
  CHECK(parse_ring_element("1-j", S()) == RingElement::from_integer(S(), 1) - sixth_j());
  CHECK(parse_ring_element("a^6", S()) == RingElement::from_integer(S(), 1));
  CHECK(parse_ring_element("j^2+j+1", S()).is_zero());
  CHECK(parse_ring_element(" - ( 2 + i ) ", G()) == element(G(), {-2, -1}));
  CHECK(parse_ring_element("i^0", G()) == RingElement::from_integer(G(), 1));
  // leading zeros are decimal, not octal
  CHECK(parse_ring_element("017", G()) == RingElement::from_integer(G(), 17));
  CHECK(parse_ring_element("09+i", G()) == element(G(), {9, 1}));
  CHECK(parse_identity("017 D ~ D", G()).lhs[0].coeff == 17);
  CHECK(parse_ring_element("123456789012345678901234567890", G())[0] == Integer("123456789012345678901234567890"));
}

TEST_CASE("identity examples") {
  const auto eq3 = parse_identity("[1+i]*D + [1-i]*D ~ 4 D", G());
  CHECK(eq3.lhs.size() == 2);
  CHECK(eq3.rhs.size() == 1);
  CHECK(eq3.rhs[0].coeff == 4);
  CHECK(eq3.rhs[0].element == RingElement::from_integer(G(), 1));
  CHECK(eq3.lhs[1].expression == "1-i");
  CHECK(eq3.lhs[0].span.column == 1);
  CHECK(eq3.lhs[1].span.column == 11);
  CHECK(eq3.to_string() == "[1+i]*D + [1-i]*D ~ 4 D");

  const auto eq5 = parse_identity("[1-j]*D ~ 3 D", S());
  CHECK(eq5.lhs[0].element == RingElement::from_integer(S(), 1) - sixth_j());

  const auto mixed = parse_identity("2[i]*D + D - 3 [1+i]*D ~ -D", G());
  CHECK(mixed.lhs.size() == 3);
  CHECK(mixed.lhs[0].coeff == 2);
  CHECK(mixed.lhs[2].coeff == -3);
  CHECK(mixed.rhs[0].coeff == -1);
  CHECK(mixed.to_string() == "2[i]*D + D - 3[1+i]*D ~ -D");

  const auto pulls = to_pullbacks(eq3.lhs);
  CHECK(pulls.size() == 2);
  CHECK(pulls[0].element == element(G(), {1, 1}));
}

TEST_CASE("error positions") {
  auto column_of = [](std::string_view text, const RingSpec& spec) -> std::size_t {
    try {
      parse_identity(text, spec);
    } catch (const ParseError& e) {
      return e.column();
    }
    return 0;
  };
  CHECK(column_of("[1+", G()) == 4);
  CHECK(column_of("[2+q]*D ~ D", G()) == 4);
  CHECK(column_of("[1+i]*D ~ 2 D extra", G()) == 15);
  CHECK(column_of("[1+i]*D ~", G()) == 10);
  CHECK(column_of("[1+i] D ~ D", G()) == 7);
  CHECK(column_of("[1+i]*D ~ 2 D $", G()) == 15);
  CHECK(column_of("[1+z*D ~ D", F()) == 6);
  CHECK(column_of("[(1+i]*D ~ D", G()) == 6);
  CHECK(column_of("[i^]*D ~ D", G()) == 4);
  CHECK(column_of("[i^99999]*D ~ D", G()) == 4);
  CHECK(column_of("D ~ D", G()) == 0);

  try {
    parse_identity("[1+i]*D ~ 2 D", G(), 7);
    parse_identity("[1+i]*D ~ 2 X", G(), 7);
  } catch (const ParseError& e) {
    CHECK(e.line() == 7);
    CHECK(e.column() == 13);
  }
}

TEST_CASE("nesting is bounded") {
  std::string deep(500, '(');
  deep += "1";
  deep += std::string(500, ')');
  CHECK_THROWS_AS(parse_ring_element(deep, G()), ParseError);
  std::string ok(50, '(');
  ok += "i";
  ok += std::string(50, ')');
  CHECK(parse_ring_element(ok, G()) == gaussian_i());
}

TEST_CASE("monomials agree with direct construction") {
  for (auto kind : kAllRings) {
    const auto& spec = ring_make(kind);
    const auto g = RingElement::generator(spec);
    for (unsigned k = 0; k <= 12; ++k) {
      CHECK(parse_ring_element(generator_text(spec) + "^" + std::to_string(k), spec) == power(g, k));
      std::string product = k == 0 ? "1" : generator_text(spec);
      for (unsigned n = 1; n < k; ++n) product += "*" + generator_text(spec);
      CHECK(parse_ring_element(product, spec) == power(g, k));
    }
  }
  CHECK(parse_ring_element("j^5", S()) == power(sixth_j(), 5));
}

TEST_CASE("random expressions evaluate correctly") {
  std::mt19937_64 rng(testing_support::kSeed);
  for (auto kind : kAllRings) {
    const auto& spec = ring_make(kind);
    for (int n = 0; n < 200; ++n) {
      const auto [text, value] = random_expression(spec, rng, 4);
      CAPTURE(text);
      CHECK(parse_ring_element(text, spec) == value);
    }
  }
}

TEST_CASE("print and parse round trip") {
  std::mt19937_64 rng(testing_support::kSeed + 1);
  for (auto kind : kAllRings) {
    const auto& spec = ring_make(kind);
    for (int n = 0; n < 250; ++n) {
      const std::string text = random_identity(spec, rng);
      CAPTURE(text);
      const auto first = parse_identity(text, spec);
      const std::string printed = first.to_string();
      const auto second = parse_identity(printed, spec);
      CHECK(first.same_structure(second));
      CHECK(second.to_string() == printed);
    }
  }
}

TEST_CASE("random bytes are rejected with a position") {
  std::mt19937_64 rng(testing_support::kSeed + 2);
  std::uniform_int_distribution<int> len(0, 40);
  std::uniform_int_distribution<int> byte(0, 255);
  const std::string alphabet = "[]*D~+-^()0123456789 iajzq";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  int accepted = 0;
  for (int n = 0; n < 10000; ++n) {
    std::string text;
    const int size = len(rng);
    for (int k = 0; k < size; ++k)
      text += n % 2 ? static_cast<char>(byte(rng)) : alphabet[pick(rng)];
    try {
      parse_identity(text, G());
      ++accepted;
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
      CHECK(e.column() >= 1);
      CHECK(e.column() <= text.size() + 1);
    }
  }
  CHECK(accepted < 10000);
}

TEST_CASE("mutated identities fail cleanly") {
  std::mt19937_64 rng(testing_support::kSeed + 3);
  const std::string base = "[1+z]*D + [1+z^2]*D ~ 3 D";
  std::uniform_int_distribution<std::size_t> pos(0, base.size() - 1);
  std::uniform_int_distribution<int> byte(32, 126);
  for (int n = 0; n < 2000; ++n) {
    std::string text = base;
    text[pos(rng)] = static_cast<char>(byte(rng));
    if (n % 3 == 0) text.erase(pos(rng) % text.size(), 1);
    try {
      const auto parsed = parse_identity(text, F());
      CHECK(parse_identity(parsed.to_string(), F()).same_structure(parsed));
    } catch (const ParseError& e) {
      CHECK(e.column() >= 1);
      CHECK(e.column() <= text.size() + 1);
    }
  }
}

TEST_CASE("identity files") {
  const std::string content =
      "# closed-form identities\n"
      "ring: gaussian\n"
      "[1+i]*D + [1-i]*D ~ 4 D   # trailing comment\n"
      "\n"
      "ring: sixthroot\n"
      "[1-j]*D ~ 3 D\r\n"
      "RING: FifthRoot\n"
      "[1+z]*D + [1+z^2]*D ~ 3 D";
  const auto entries = parse_identity_file(content, std::nullopt);
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].line == 3);
  CHECK(entries[0].identity.ring == RingKind::Gaussian);
  CHECK(entries[0].source == "[1+i]*D + [1-i]*D ~ 4 D");
  CHECK(entries[1].line == 6);
  CHECK(entries[1].identity.ring == RingKind::SixthRoot);
  CHECK(entries[2].identity.ring == RingKind::FifthRoot);

  CHECK(parse_identity_file("", std::nullopt).empty());
  CHECK(parse_identity_file("# only comments\n\n", std::nullopt).empty());
  CHECK(parse_identity_file("[2+i]*D ~ 5 D\n", RingKind::Gaussian).size() == 1);

  auto error_at = [](std::string_view text) -> std::pair<std::size_t, std::size_t> {
    try {
      parse_identity_file(text, std::nullopt);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  CHECK(error_at("[2+i]*D ~ 5 D\n") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(error_at("ring: gaussian\n\n[2+i]*D ~ 5 Q\n") == std::pair<std::size_t, std::size_t>{3, 13});
  CHECK(error_at("ring: octonion\n").first == 1);
}

TEST_CASE("integer polynomials") {
  CHECK(parse_integer_polynomial("x^5-x") == std::vector<Integer>{0, -1, 0, 0, 0, 1});
  CHECK(parse_integer_polynomial("x^5 - 1") == std::vector<Integer>{-1, 0, 0, 0, 0, 1});
  CHECK(parse_integer_polynomial("(x-1)*(x+1)") == std::vector<Integer>{-1, 0, 1});
  CHECK_THROWS_AS(parse_integer_polynomial("x^5-y"), ParseError);
}

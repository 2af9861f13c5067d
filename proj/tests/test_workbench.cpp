#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "workbench.hpp"

#include <json.hpp>

#include <algorithm>

using namespace cmdyn;

#ifndef CMDYN_TEST_DATA_DIR
#error "CMDYN_TEST_DATA_DIR must be defined"
#endif

namespace {

std::string data(const char* name) { return std::string(CMDYN_TEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("built-in scenarios reproduce their expectations") {
  const auto names = scenario_names();
  CHECK(names == std::vector<std::string>{"deg5", "deg6", "deg6-alpha", "zeta5"});
  for (const auto& name : names) {
    const Report r = run_scenario(name);
    CAPTURE(name);
    CHECK(r.passed());
    CHECK(r.failures() == 0);
    CHECK(!r.verdicts.empty());
    for (const auto& v : r.verdicts) CHECK(v.matched);
  }
}

TEST_CASE("deg5 details") {
  const Report r = run_scenario("deg5");
  REQUIRE(r.jacobian.has_value());
  CHECK(r.jacobian->prime == 13);
  CHECK(r.jacobian->orders_agree());
  CHECK(r.jacobian->enumerated == 144);
  REQUIRE(r.product_scalars.size() == 1);
  CHECK(r.product_scalars[0].c1 == Integer(5));
  CHECK(r.product_scalars[0].c2 == Integer(5));
  REQUIRE(r.jacobian->kernel_search.has_value());
  CHECK(r.jacobian->kernel_search->found_prime.has_value());
  const auto torsion = std::find_if(r.verdicts.begin(), r.verdicts.end(),
                                    [](const VerdictRecord& v) { return v.identity == "[1+i]*D ~ 2 D"; });
  REQUIRE(torsion != r.verdicts.end());
  CHECK(torsion->verdict.kind == VerdictKind::HoldsUpToTorsion);
}

TEST_CASE("zeta5 details") {
  const Report r = run_scenario("zeta5");
  REQUIRE(r.refutations.size() == 2);
  CHECK(r.refutations[0].certificate.refuted());
  CHECK(r.refutations[0].certificate.equation() == "a(3-a)=1");
  REQUIRE(r.jacobian.has_value());
  CHECK(r.jacobian->prime == 11);
  CHECK(r.jacobian->orders_agree());
}

TEST_CASE("prime overrides") {
  RunOptions opts;
  opts.prime = 17;
  const Report r = run_scenario("deg5", opts);
  CHECK(r.passed());
  CHECK(r.jacobian->prime == 17);
  opts.prime = 31;
  CHECK(run_scenario("zeta5", opts).passed());

  opts.prime = 4;
  CHECK_THROWS_AS(run_scenario("deg5", opts), DomainError);
  opts.prime = 7;  // 7 != 1 mod 4
  CHECK_THROWS_AS(run_scenario("deg5", opts), DomainError);
  opts.prime = 13;  // 13 != 1 mod 5
  CHECK_THROWS_AS(run_scenario("zeta5", opts), DomainError);
  CHECK_THROWS_AS(run_scenario("deg6", opts), DomainError);
  CHECK_THROWS_AS(run_scenario("deg7"), DomainError);
}

TEST_CASE("reports are deterministic for a fixed seed") {
  RunOptions opts;
  opts.seed = 99;
  const auto a = run_scenario("deg5", opts).to_json(false);
  const auto b = run_scenario("deg5", opts).to_json(false);
  CHECK(a == b);
  CHECK(a.find("elapsed_ms") == std::string::npos);
  CHECK(run_scenario("deg5").to_json().find("elapsed_ms") != std::string::npos);
}

TEST_CASE("json schema") {
  const auto doc = nlohmann::json::parse(run_scenario("zeta5").to_json());
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["scenario"] == "zeta5");
  CHECK(doc["ring"] == "fifthroot");
  CHECK(doc["passed"] == true);
  CHECK(doc["failures"] == 0);
  CHECK(doc["verdicts"].is_array());
  CHECK(doc["verdicts"][0].contains("strict"));
  CHECK(doc["verdicts"][0].contains("saturated"));
  CHECK(doc["refutations"][0]["solutions"].empty());
  CHECK(doc["refutations"][0]["refuted"] == true);
  CHECK(doc["jacobian"]["orders"]["agree"] == true);
  CHECK(doc["seed"] == 1);
  const auto deg6 = nlohmann::json::parse(run_scenario("deg6").to_json());
  CHECK(deg6["jacobian"].is_null());
}

TEST_CASE("identity files") {
  const Report ok = verify_file(data("closed_form_identities.txt"), std::nullopt);
  CHECK(ok.verdicts.size() == 7);
  CHECK(ok.passed());
  for (const auto& v : ok.verdicts) CHECK(v.verdict.saturated());

  const Report empty = verify_file(data("empty.txt"), RingKind::Gaussian);
  CHECK(empty.verdicts.empty());
  CHECK(empty.passed());

  const Report bad = verify_file(data("false_identity.txt"), std::nullopt);
  REQUIRE(bad.verdicts.size() == 1);
  CHECK(bad.verdicts[0].verdict.kind == VerdictKind::NotDerivable);
  CHECK(bad.verdicts[0].line == 2);
  CHECK_FALSE(bad.passed());

  CHECK_THROWS_AS(verify_file(data("malformed.txt"), std::nullopt), ParseError);
  try {
    verify_file(data("malformed.txt"), std::nullopt);
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(verify_file(data("does_not_exist.txt"), std::nullopt), IoError);
  CHECK(verify_text("[2+i]*D ~ 5 D", RingKind::Gaussian).passed());
}

TEST_CASE("jacobian checks") {
  const Report g = jacobian_check("x^5-x", 13, 1);
  CHECK(g.passed());
  REQUIRE(g.jacobian.has_value());
  CHECK(g.jacobian->orders_agree());

  const Report z = jacobian_check("x^5-1", 11, 1);
  CHECK(z.passed());
  const auto& checks = z.jacobian->spot_checks;
  CHECK(std::any_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.name == "[z]^5 P = P"; }));

  const Report plain = jacobian_check("x^5+x+1", 13, 1);
  CHECK(plain.passed());
  CHECK(plain.jacobian->cm == "none");

  CHECK_THROWS_AS(jacobian_check("x^5-x", 4, 1), DomainError);
  CHECK_THROWS_AS(jacobian_check("x^5-2*x^3+x", 13, 1), DomainError);
  CHECK_THROWS_AS(jacobian_check("x^4-x", 13, 1), DomainError);
  CHECK_THROWS_AS(jacobian_check("x^5-", 13, 1), ParseError);
}

TEST_CASE("rational kernel search") {
  const auto found = search_rational_kernel(RingElement(ring_make(RingKind::Gaussian), {1, 1}), 50);
  REQUIRE(found.found_prime.has_value());
  CHECK(*found.found_prime % 4 == 1);
  CHECK(found.target == 4);
}

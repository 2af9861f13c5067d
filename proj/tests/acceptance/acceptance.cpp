// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "calculus.hpp"
#include "identity.hpp"
#include "jacobian.hpp"
#include "workbench.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef CMDYN_CLI_PATH
#error "CMDYN_CLI_PATH must be defined"
#endif
#ifndef CMDYN_TEST_DATA_DIR
#error "CMDYN_TEST_DATA_DIR must be defined"
#endif
#ifndef CMDYN_PROPERTY_BINARIES
#error "CMDYN_PROPERTY_BINARIES must be defined"
#endif

using namespace cmdyn;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      if (!ok) detail << "; ";
      detail << what;
      ok = false;
    }
  }
};

int exit_code(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

Outcome symbolic_reproduction() {
  Outcome out;
  const auto start = Clock::now();
  auto check_ring = [&](RingKind kind, const std::vector<std::string>& identities) {
    const auto& ring = ring_make(kind);
    const auto ctx = CalculusContext::build_full(ring);
    for (const auto& text : identities) {
      const auto parsed = parse_identity(text, ring);
      const auto verdict = verify(to_pullbacks(parsed.lhs), to_pullbacks(parsed.rhs), *ctx);
      out.expect(verdict.saturated(), text + " is " + std::string(verdict_name(verdict.kind)));
    }
  };
  check_ring(RingKind::Gaussian,
             {"[1+i]*D + [1-i]*D ~ 4 D", "[1+i]*D ~ 2 D", "[2+i]*D ~ 5 D", "[2-i]*D ~ 5 D"});
  check_ring(RingKind::SixthRoot, {"[1-j]*D ~ 3 D", "[1-j^2]*D ~ 3 D", "[2-j]*D ~ 7 D", "[2-j^2]*D ~ 7 D"});
  std::vector<std::string> fifth = {"[1+z]*D + [1+z^2]*D ~ 3 D", "[(1+z)*(1+z^2)]*D ~ D"};
  for (int n = 0; n <= 5; ++n)
    for (int m = 0; m <= 4; ++m) {
      const std::string zm = "z^" + std::to_string(m);
      fifth.push_back("[" + std::to_string(n) + "+" + zm + "]*D + [" + std::to_string(n) + "-" + zm + "]*D ~ " +
                      std::to_string(2 * n * n + 2) + " D");
    }
  check_ring(RingKind::FifthRoot, fifth);
  const double elapsed = seconds_since(start);
  out.expect(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
  if (out.ok) out.detail << fifth.size() + 8 << " identities in " << elapsed << " s";
  return out;
}

Outcome refutation() {
  Outcome out;
  const auto& fr = ring_make(RingKind::FifthRoot);
  const auto z = fifth_zeta();
  const auto one = RingElement::from_integer(fr, 1);
  const auto cert = refute_scalar_hypothesis(one + z, one + z * z, *CalculusContext::build_full(fr));
  out.expect(cert.equation() == "a(3-a)=1", "fifth-root equation is " + cert.equation());
  out.expect(cert.refuted(), "fifth-root hypothesis has integer solutions");

  const auto& g = ring_make(RingKind::Gaussian);
  const auto i = gaussian_i();
  const auto g1 = RingElement::from_integer(g, 1);
  const auto control = refute_scalar_hypothesis(g1 + i, g1 - i, *CalculusContext::build_full(g));
  out.expect(control.solutions == std::vector<Integer>{2}, "gaussian control does not give a=2");
  if (out.ok) out.detail << cert.equation() << " has no solutions; " << control.equation() << " gives a=2";
  return out;
}

Outcome preperiodicity() {
  Outcome out;
  const auto& g = ring_make(RingKind::Gaussian);
  const auto& s = ring_make(RingKind::SixthRoot);
  const auto i = gaussian_i();
  const auto j = sixth_j();
  const auto g2 = RingElement::from_integer(g, 2);
  const auto s2 = RingElement::from_integer(s, 2);
  out.expect(!diagonal_preperiodic(g2 + i, g2 - i), "(2+i, 2-i) reported preperiodic");
  out.expect(!diagonal_preperiodic(s2 - j, s2 - j * j), "(2-j, 2-j^2) reported preperiodic");
  out.expect(diagonal_preperiodic(i, RingElement::from_integer(g, 1)), "(i, 1) reported not preperiodic");
  if (out.ok) out.detail << "(2+i,2-i) no, (2-j,2-j^2) no, (i,1) yes";
  return out;
}

Outcome recurrence_equivalence() {
  Outcome out;
  std::mt19937_64 rng(20261019);
  std::uniform_int_distribution<long> dist(-7, 7);
  std::size_t compared = 0;
  for (const RingKind kind : {RingKind::Gaussian, RingKind::SixthRoot, RingKind::FifthRoot}) {
    const auto& ring = ring_make(kind);
    const auto ctx = CalculusContext::build_full(ring);
    for (int sample = 0; sample < 60; ++sample) {
      std::vector<Integer> coeffs(ring.degree);
      for (auto& c : coeffs) c = dist(rng);
      const RingElement alpha(ring, std::move(coeffs));
      for (long n = 0; n <= 5; ++n) {
        const auto lhs = reduce(n_plus_alpha(Integer(n), alpha, *ctx));
        const auto rhs = reduce(quadratic_normal_form(RingElement::from_integer(ring, n) + alpha, *ctx));
        out.expect(lhs == rhs, "n=" + std::to_string(n) + " alpha=" + alpha.to_string());
        ++compared;
      }
    }
  }
  if (out.ok) out.detail << compared << " (n, alpha) pairs over 3 rings";
  return out;
}

Outcome jacobian_corroboration() {
  Outcome out;
  {
    const auto start = Clock::now();
    const auto ctx = curve_validate(gaussian_curve(13));
    const auto& g = ring_make(RingKind::Gaussian);
    const auto i = gaussian_i();
    const auto g1 = RingElement::from_integer(g, 1);
    const auto g2 = RingElement::from_integer(g, 2);
    const auto points = enumerate_points(*ctx);
    const auto by_counts = jacobian_order_via_counts(*ctx);
    out.expect(points.size() == by_counts, "p=13 orders " + std::to_string(points.size()) + " vs " +
                                               std::to_string(by_counts));
    bool square_ok = true, product_ok = true;
    for (const auto& P : points) {
      square_ok &= automorphism_apply(automorphism_apply(P, *ctx), *ctx) == negate(P, *ctx);
      product_ok &= endomorphism_apply(g2 + i, endomorphism_apply(g2 - i, P, *ctx), *ctx) == scalar_mul(5, P, *ctx);
    }
    out.expect(square_ok, "[i]^2 P != -P for some point");
    out.expect(product_ok, "[2+i][2-i] P != [5] P for some point");
    const auto k = kernel_count(g2 + i, points, *ctx);
    out.expect(k > 0 && 25 % k == 0, "kernel_count(2+i) = " + std::to_string(k));
    const double elapsed = seconds_since(start);
    out.expect(elapsed < 60.0, "p=13 took " + std::to_string(elapsed) + " s");

    std::uint64_t witness = 0;
    for (std::uint64_t p = 5; p <= 50 && witness == 0; p += 4) {
      bool prime = true;
      for (std::uint64_t d = 2; d * d <= p; ++d) prime &= (p % d != 0);
      if (!prime) continue;
      if (kernel_count(g1 + i, *curve_validate(gaussian_curve(p))) == 4) witness = p;
    }
    out.expect(witness != 0, "no p <= 50 with kernel_count(1+i) = 4");
    if (out.ok)
      out.detail << "p=13: #J=" << by_counts << ", ker(2+i)=" << k << " in " << elapsed
                 << " s; ker(1+i)=4 at p=" << witness;
  }
  {
    const auto start = Clock::now();
    const auto ctx = curve_validate(fifth_root_curve(11));
    const auto points = enumerate_points(*ctx);
    const auto by_counts = jacobian_order_via_counts(*ctx);
    out.expect(points.size() == by_counts, "p=11 orders " + std::to_string(points.size()) + " vs " +
                                               std::to_string(by_counts));
    bool fifth_ok = true;
    for (const auto& P : points) {
      MumfordDivisor Q = P;
      for (int step = 0; step < 5; ++step) Q = automorphism_apply(Q, *ctx);
      fifth_ok &= Q == P;
    }
    out.expect(fifth_ok, "[z]^5 P != P for some point");
    const double elapsed = seconds_since(start);
    out.expect(elapsed < 60.0, "p=11 took " + std::to_string(elapsed) + " s");
    if (out.ok) out.detail << "; p=11: #J=" << by_counts << " in " << elapsed << " s";
  }
  return out;
}

Outcome property_suites() {
  Outcome out;
  std::istringstream list(CMDYN_PROPERTY_BINARIES);
  std::string binary;
  std::size_t ran = 0;
  while (std::getline(list, binary, '|')) {
    if (binary.empty()) continue;
    const int code = exit_code("\"" + binary + "\" > /dev/null 2>&1");
    out.expect(code == 0, binary.substr(binary.find_last_of('/') + 1) + " exited " + std::to_string(code));
    ++ran;
  }
  out.expect(ran > 0, "no property binaries configured");
  if (out.ok) out.detail << ran << " suites passed";
  return out;
}

Outcome cli_contract() {
  Outcome out;
  const std::string cli = std::string("\"") + CMDYN_CLI_PATH + "\"";
  const std::string data = std::string(CMDYN_TEST_DATA_DIR) + "/";
  const std::string quiet = " > /dev/null 2>&1";
  auto expect_code = [&](const std::string& args, int expected) {
    const int code = exit_code(cli + " " + args + quiet);
    out.expect(code == expected, "'" + args + "' exited " + std::to_string(code) + ", expected " +
                                     std::to_string(expected));
  };
  for (const char* scenario : {"deg5", "deg6", "deg6-alpha", "zeta5"})
    expect_code(std::string("verify --scenario ") + scenario, 0);
  expect_code("verify --file \"" + data + "false_identity.txt\"", 1);
  expect_code("verify --file \"" + data + "malformed.txt\"", 2);
  expect_code("verify --scenario deg5 --prime 4", 2);
  expect_code("verify --scenario nonexistent", 2);
  if (out.ok) out.detail << "scenarios exit 0, false identity exits 1, malformed input exits 2";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"symbolic reproduction", symbolic_reproduction},
      {"refutation", refutation},
      {"preperiodicity decisions", preperiodicity},
      {"recurrence/expansion equivalence", recurrence_equivalence},
      {"jacobian corroboration", jacobian_corroboration},
      {"property suites", property_suites},
      {"cli contract", cli_contract},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.detail << "exception: " << e.what();
    }
    std::printf("criterion %d %-34s %s  (%s)\n", index++, name, outcome.ok ? "PASS" : "FAIL",
                outcome.detail.str().c_str());
    std::fflush(stdout);
    if (!outcome.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}

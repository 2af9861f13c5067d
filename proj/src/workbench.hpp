#pragma once

// Built-in scenarios, identity-file verification and Jacobian checks, with
// reports that render as text or as a versioned JSON document.

#include "calculus.hpp"
#include "identity.hpp"
#include "jacobian.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cmdyn {

inline constexpr int kReportSchemaVersion = 1;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::optional<std::uint64_t> prime;  // overrides the scenario's default prime
  std::uint64_t seed = 1;
};

struct VerdictRecord {
  std::string identity;  // canonical text
  std::string ring;
  std::size_t line = 0;  // source line for file runs
  IdentityVerdict verdict;
  std::optional<VerdictKind> expected;  // file runs expect any saturated verdict
  bool matched = false;
};

struct ScalarRecord {
  std::string element;
  std::string ring;
  std::optional<Integer> scalar;
  std::optional<Integer> expected;
  Integer norm;
  bool degree_consistent = true;  // scalar^2 == norm^(4/d) when a scalar exists
  bool matched = false;
};

/// (c1, c2) for phi = phi1 x phi2 on A x A with D = pr1*D + pr2*D.
struct ProductScalarRecord {
  std::string phi1;
  std::string phi2;
  std::optional<Integer> c1;
  std::optional<Integer> c2;
  std::optional<Integer> expected;  // common scalar
  bool matched = false;
};

struct RefutationRecord {
  std::string alpha;
  std::string beta;
  RefutationCertificate certificate;
  bool expected_refuted = false;
  std::vector<Integer> expected_solutions;
  bool matched = false;
};

struct PreperiodicRecord {
  std::string phi1;
  std::string phi2;
  bool ratio_root_of_unity = false;
  bool expected = false;
  bool matched = false;
};

struct CheckRecord {
  std::string name;
  bool passed = false;
  std::uint64_t samples = 0;
  std::string detail;
};

struct KernelRecord {
  std::string element;
  std::uint64_t prime = 0;
  std::uint64_t count = 0;
  Integer degree;  // norm^(4/d), the full kernel size
  bool divides = false;
};

struct OrbitRecord {
  std::string phi1;
  std::string phi2;
  std::string start;
  std::uint64_t tail = 0;
  std::uint64_t period = 0;
};

struct KernelSearchRecord {
  std::string element;
  Integer target;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> counts;  // (prime, kernel count)
  std::optional<std::uint64_t> found_prime;
};

struct JacobianSection {
  std::uint64_t prime = 0;
  std::string curve;
  std::string cm;
  std::uint64_t enumerated = 0;
  std::uint64_t via_counts = 0;
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  std::vector<KernelRecord> kernel_counts;
  std::vector<CheckRecord> spot_checks;
  std::optional<OrbitRecord> orbit;
  std::optional<KernelSearchRecord> kernel_search;

  bool orders_agree() const { return enumerated == via_counts; }
};

struct Report {
  int schema_version = kReportSchemaVersion;
  std::string scenario;
  std::string source;  // file path for file runs
  std::string ring;
  std::vector<VerdictRecord> verdicts;
  std::vector<ScalarRecord> scalars;
  std::vector<ProductScalarRecord> product_scalars;
  std::vector<RefutationRecord> refutations;
  std::vector<PreperiodicRecord> preperiodicity;
  std::optional<JacobianSection> jacobian;
  std::uint64_t seed = 0;
  double elapsed_ms = 0;

  /// Number of unmatched expectations and failed checks.
  std::size_t failures() const;
  bool passed() const { return failures() == 0; }

  std::string to_json(bool include_timing = true) const;
  std::string to_text() const;
};

std::vector<std::string> scenario_names();

/// Throws DomainError for an unknown name or an invalid prime override.
Report run_scenario(std::string_view name, const RunOptions& options = {});

/// Throws IoError when the file cannot be read and ParseError on malformed lines.
Report verify_file(const std::string& path, std::optional<RingKind> ring, const RunOptions& options = {});
Report verify_text(std::string_view content, std::optional<RingKind> ring, const RunOptions& options = {});

/// Full set of point-level checks for y^2 = curve over F_prime.
Report jacobian_check(std::string_view curve, std::uint64_t prime, std::uint64_t seed);

/// Point-level corroboration used by the scenarios and jacobian_check.
JacobianSection corroborate(const JacobianContext& ctx, std::uint64_t seed);

/// Smallest prime p = 1 mod 4 with p <= limit where kernel_count(a) on y^2 = x^5 - x equals norm(a)^2.
KernelSearchRecord search_rational_kernel(const RingElement& a, std::uint64_t limit);

}  // namespace cmdyn

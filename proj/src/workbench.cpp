#include "workbench.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

namespace cmdyn {
namespace {

using Clock = std::chrono::steady_clock;

// ---------------------------------------------------------------------------
// Scenario tables

struct IdentitySpec {
  std::string text;
  VerdictKind expected;
};

struct ScalarSpec {
  std::string element;
  std::optional<long> expected;
};

struct ProductSpec {
  std::string phi1;
  std::string phi2;
  std::optional<long> expected;
};

struct RefutationSpec {
  std::string alpha;
  std::string beta;
  bool refuted;
  std::vector<long> solutions;
};

struct PreperiodicSpec {
  std::string phi1;
  std::string phi2;
  bool expected;
};

struct ScenarioSpec {
  std::string name;
  RingKind ring;
  std::function<std::vector<RingElement>()> units;
  std::vector<IdentitySpec> identities;
  std::vector<ScalarSpec> scalars;
  std::vector<ProductSpec> products;
  std::vector<RefutationSpec> refutations;
  std::vector<PreperiodicSpec> preperiodic;
  CmType curve = CmType::None;
  std::uint64_t default_prime = 0;
  bool kernel_search = false;
};

constexpr auto H = VerdictKind::Holds;
constexpr auto T = VerdictKind::HoldsUpToTorsion;
constexpr auto N = VerdictKind::NotDerivable;

std::vector<ScenarioSpec> build_scenarios() {
  std::vector<ScenarioSpec> out;

  out.push_back({
      "deg5",
      RingKind::Gaussian,
      [] { return torsion_units(ring_make(RingKind::Gaussian)); },
      {
          // cube relation with f = i, g = 1, h = -1
          {"2[i]*D + D + [-1]*D ~ [1+i]*D + [i-1]*D", H},
          {"[1+i]*D + [1-i]*D ~ 4 D", H},
          {"[i*(1-i)]*D ~ [1-i]*D", H},
          {"[1+i]*D ~ 2 D", T},
          {"[2+i]*D ~ 2[1+i]*D + D", H},
          {"[2+i]*D ~ 5 D", H},
          {"[2-i]*D ~ 5 D", H},
          {"[2+i]*D ~ 4 D", N},
      },
      {{"1+i", 2}, {"1-i", 2}, {"2+i", 5}, {"2-i", 5}, {"i", 1}},
      {{"2+i", "2-i", 5}},
      {{"1+i", "1-i", false, {2}}},
      {{"2+i", "2-i", false}, {"i", "1", true}},
      CmType::Gaussian,
      13,
      true,
  });

  out.push_back({
      "deg6",
      RingKind::SixthRoot,
      [] {
        const RingElement one = RingElement::from_integer(ring_make(RingKind::SixthRoot), 1);
        const RingElement j = sixth_j();
        return std::vector<RingElement>{one, -one, j, -j, j * j, -(j * j)};
      },
      {
          // cube relation with f = 1, g = h = j
          {"[1+2*j]*D + D + 2[j]*D ~ 2[1+j]*D + [2*j]*D", H},
          {"[1-j]*D ~ 3 D", H},
          {"[j*(1-j^2)]*D ~ [1-j^2]*D", H},
          {"[1-j^2]*D ~ 3 D", H},
          {"[2-j]*D ~ 2[1-j]*D + D", H},
          {"[2-j]*D ~ 7 D", H},
          {"[2-j^2]*D ~ 7 D", H},
          {"[1-j]*D ~ 2 D", N},
      },
      {{"1-j", 3}, {"1-j^2", 3}, {"2-j", 7}, {"2-j^2", 7}},
      {{"2-j", "2-j^2", 7}},
      {{"1-j", "1-j^2", false, {3}}},
      {{"2-j", "2-j^2", false}, {"j", "1", true}},
  });

  out.push_back({
      "deg6-alpha",
      RingKind::SixthRoot,
      [] { return torsion_units(ring_make(RingKind::SixthRoot)); },
      {
          // cube relation with f = 1, g = h = -a
          {"[1-2*a]*D + D + 2[-a]*D ~ 2[1-a]*D + [-2*a]*D", H},
          {"[1-2*a]*D ~ 3 D", H},
          {"[a*(1-2*a)]*D ~ [1-2*a]*D", H},
          {"[1+a]*D ~ 3 D", H},
          {"[2+a]*D ~ 2[1+a]*D + D", H},
          {"[2+a]*D ~ 7 D", H},
          {"[2-a^2]*D ~ 7 D", H},
          {"[1-2*a]*D ~ 2 D", N},
      },
      {{"1-2*a", 3}, {"2-a", 3}, {"2+a", 7}, {"2-a^2", 7}},
      {{"2+a", "2-a^2", 7}},
      {{"1+a", "1+a^5", false, {3}}},
      {{"2+a", "2-a^2", false}, {"a", "1", true}},
  });

  ScenarioSpec zeta5{
      "zeta5",
      RingKind::FifthRoot,
      [] { return torsion_units(ring_make(RingKind::FifthRoot)); },
      {},
      {{"1+z", std::nullopt}, {"1+z^2", std::nullopt}, {"z", 1}, {"2", 4}},
      {{"2+z", "2+z^4", std::nullopt}},
      {{"1+z", "1+z^2", true, {}}, {"z", "z^4", false, {1}}},
      {{"2+z", "2+z^4", false}, {"z", "1", true}},
      CmType::FifthRoot,
      11,
      false,
  };
  // cube relation with f = 1, g = z, h = z^2
  zeta5.identities.push_back({"[1+z+z^2]*D + D + [z]*D + [z^2]*D ~ [1+z]*D + [z+z^2]*D + [1+z^2]*D", H});
  for (int n = 0; n <= 5; ++n)
    for (int m = 0; m <= 4; ++m) {
      const std::string g = "z^" + std::to_string(m);
      zeta5.identities.push_back({"[" + std::to_string(n) + "+" + g + "]*D + [" + std::to_string(n) + "-" + g +
                                      "]*D ~ " + std::to_string(2 * n * n + 2) + " D",
                                  H});
    }
  zeta5.identities.push_back({"[1+z]*D + [1+z^2]*D ~ 3 D", H});
  zeta5.identities.push_back({"[(1+z)*(1+z^2)]*D ~ D", H});
  zeta5.identities.push_back({"[1+z]*D ~ 2 D", N});
  zeta5.identities.push_back({"[1+z]*D ~ D", N});
  out.push_back(std::move(zeta5));
  return out;
}

const std::vector<ScenarioSpec>& scenarios() {
  static const std::vector<ScenarioSpec> table = build_scenarios();
  return table;
}

// ---------------------------------------------------------------------------
// Helpers

Integer degree_of(const RingElement& a) {
  Integer n = abs(norm(a));
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), n.get_mpz_t(), 4 / a.spec().degree);
  return out;
}

ScalarRecord scalar_record(const RingElement& a, const CalculusContext& ctx, std::optional<long> expected) {
  ScalarRecord rec;
  rec.element = a.to_string();
  rec.ring = std::string(a.spec().name());
  rec.scalar = polarization_scalar(a, ctx);
  if (expected) rec.expected = Integer(*expected);
  rec.norm = norm(a);
  if (rec.scalar) rec.degree_consistent = (*rec.scalar) * (*rec.scalar) == degree_of(a);
  rec.matched = rec.scalar == rec.expected && rec.degree_consistent;
  return rec;
}

CheckRecord check_each(std::string name, const std::vector<MumfordDivisor>& points,
                       const std::function<bool(const MumfordDivisor&)>& pred, const JacobianContext& ctx) {
  CheckRecord rec{std::move(name), true, 0, ""};
  for (const auto& P : points) {
    ++rec.samples;
    if (!pred(P)) {
      rec.passed = false;
      rec.detail = "fails at " + ctx.describe(P);
      break;
    }
  }
  return rec;
}

CheckRecord check_sampled(std::string name, std::uint64_t samples, const std::function<bool(std::string&)>& trial) {
  CheckRecord rec{std::move(name), true, 0, ""};
  for (std::uint64_t s = 0; s < samples; ++s) {
    ++rec.samples;
    if (!trial(rec.detail)) {
      rec.passed = false;
      break;
    }
  }
  return rec;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return buf.str();
}

double elapsed_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string poly_text(const std::vector<std::int64_t>& f) {
  std::string out;
  for (std::size_t k = f.size(); k-- > 0;) {
    const std::int64_t c = f[k];
    if (c == 0) continue;
    const std::int64_t mag = c < 0 ? -c : c;
    if (!out.empty()) out += c < 0 ? "-" : "+";
    else if (c < 0) out += "-";
    if (mag != 1 || k == 0) out += std::to_string(mag);
    if (k > 0) {
      if (mag != 1) out += "*";
      out += "x";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Jacobian corroboration

JacobianSection corroborate(const JacobianContext& ctx, std::uint64_t seed) {
  JacobianSection sec;
  sec.prime = ctx.prime();
  sec.curve = poly_text(ctx.params().f);
  sec.cm = std::string(cm_type_name(ctx.params().cm));

  const std::vector<MumfordDivisor> points = enumerate_points(ctx);
  const CurveCounts counts = count_curve_points(ctx);
  sec.enumerated = points.size();
  sec.n1 = counts.n1;
  sec.n2 = counts.n2;
  sec.via_counts = jacobian_order_via_counts(ctx);

  std::mt19937_64 rng(seed);
  auto pick = [&]() -> const MumfordDivisor& { return points[rng() % points.size()]; };
  const MumfordDivisor zero = jacobian_identity();
  const Integer order(static_cast<unsigned long>(sec.via_counts));

  sec.spot_checks.push_back(check_each(
      "identity and inverse", points,
      [&](const MumfordDivisor& P) {
        return cantor_add(P, zero, ctx) == P && cantor_add(P, negate(P, ctx), ctx) == zero;
      },
      ctx));
  sec.spot_checks.push_back(check_sampled("commutativity", 1000, [&](std::string& detail) {
    const auto& P = pick();
    const auto& Q = pick();
    if (cantor_add(P, Q, ctx) == cantor_add(Q, P, ctx)) return true;
    detail = ctx.describe(P) + " + " + ctx.describe(Q);
    return false;
  }));
  sec.spot_checks.push_back(check_sampled("associativity", 1000, [&](std::string& detail) {
    const auto& P = pick();
    const auto& Q = pick();
    const auto& R = pick();
    if (cantor_add(cantor_add(P, Q, ctx), R, ctx) == cantor_add(P, cantor_add(Q, R, ctx), ctx)) return true;
    detail = ctx.describe(P) + ", " + ctx.describe(Q) + ", " + ctx.describe(R);
    return false;
  }));
  sec.spot_checks.push_back(check_each(
      "group order annihilates every point", points,
      [&](const MumfordDivisor& P) { return scalar_mul(order, P, ctx) == zero; }, ctx));

  if (ctx.params().cm == CmType::None) return sec;

  const RingSpec& ring = ring_make(ctx.ring_kind());
  auto element = [&](std::string_view text) { return parse_ring_element(text, ring); };

  sec.spot_checks.push_back(check_sampled("automorphism is a homomorphism", 500, [&](std::string& detail) {
    const auto& P = pick();
    const auto& Q = pick();
    if (automorphism_apply(cantor_add(P, Q, ctx), ctx) ==
        cantor_add(automorphism_apply(P, ctx), automorphism_apply(Q, ctx), ctx))
      return true;
    detail = ctx.describe(P) + ", " + ctx.describe(Q);
    return false;
  }));

  std::uniform_int_distribution<int> small(-3, 3);
  auto random_element = [&]() {
    std::vector<Integer> c;
    for (std::size_t k = 0; k < ring.degree; ++k) c.emplace_back(small(rng));
    return RingElement(ring, std::move(c));
  };
  sec.spot_checks.push_back(check_sampled("ring action is multiplicative and additive", 50, [&](std::string& detail) {
    const RingElement a = random_element();
    const RingElement b = random_element();
    const auto& P = pick();
    const bool mult = endomorphism_apply(a * b, P, ctx) == endomorphism_apply(a, endomorphism_apply(b, P, ctx), ctx);
    const bool add = endomorphism_apply(a + b, P, ctx) ==
                     cantor_add(endomorphism_apply(a, P, ctx), endomorphism_apply(b, P, ctx), ctx);
    if (mult && add) return true;
    detail = "a = " + a.to_string() + ", b = " + b.to_string() + ", P = " + ctx.describe(P);
    return false;
  }));

  std::vector<std::string> kernel_elements;
  if (ctx.params().cm == CmType::Gaussian) {
    sec.spot_checks.push_back(check_each(
        "[i]^2 P = -P", points,
        [&](const MumfordDivisor& P) { return automorphism_apply(automorphism_apply(P, ctx), ctx) == negate(P, ctx); },
        ctx));
    const RingElement a = element("2+i");
    const RingElement b = element("2-i");
    sec.spot_checks.push_back(check_each(
        "[2+i]([2-i]P) = [5]P", points,
        [&](const MumfordDivisor& P) {
          return endomorphism_apply(a, endomorphism_apply(b, P, ctx), ctx) == scalar_mul(5, P, ctx);
        },
        ctx));
    sec.spot_checks.push_back(check_each(
        "[2+i]P + [2-i]P = [4]P", points,
        [&](const MumfordDivisor& P) {
          return cantor_add(endomorphism_apply(a, P, ctx), endomorphism_apply(b, P, ctx), ctx) ==
                 scalar_mul(4, P, ctx);
        },
        ctx));
    kernel_elements = {"1", "1+i", "2+i", "2-i", "3+2*i"};
    sec.orbit = OrbitRecord{"2+i", "2-i", "", 0, 0};
  } else {
    sec.spot_checks.push_back(check_each(
        "[z]^5 P = P", points,
        [&](const MumfordDivisor& P) { return automorphism_apply(P, ctx, 5) == P; }, ctx));
    sec.spot_checks.push_back(check_each(
        "(1 + [z] + ... + [z]^4) P = 0", points,
        [&](const MumfordDivisor& P) {
          MumfordDivisor sum = zero;
          MumfordDivisor image = P;
          for (int k = 0; k < 5; ++k) {
            sum = cantor_add(sum, image, ctx);
            image = automorphism_apply(image, ctx);
          }
          return sum == zero;
        },
        ctx));
    kernel_elements = {"1", "1+z", "1-z", "2+z", "2+z^4"};
    sec.orbit = OrbitRecord{"2+z", "2+z^4", "", 0, 0};
  }

  for (const auto& text : kernel_elements) {
    const RingElement a = element(text);
    KernelRecord rec{a.to_string(), ctx.prime(), kernel_count(a, points, ctx), degree_of(a), false};
    rec.divides = rec.degree != 0 && mpz_divisible_ui_p(rec.degree.get_mpz_t(), rec.count);
    sec.kernel_counts.push_back(std::move(rec));
  }

  // Orbit of a diagonal pair (P, P).
  MumfordDivisor start = pick();
  for (std::size_t tries = 0; tries < points.size() && start == zero; ++tries) start = pick();
  const OrbitCycle cycle = find_orbit_cycle(element(sec.orbit->phi1), element(sec.orbit->phi2), start, start, ctx);
  sec.orbit->start = ctx.describe(start);
  sec.orbit->tail = cycle.tail;
  sec.orbit->period = cycle.period;
  return sec;
}

KernelSearchRecord search_rational_kernel(const RingElement& a, std::uint64_t limit) {
  KernelSearchRecord rec{a.to_string(), degree_of(a), {}, std::nullopt};
  for (std::uint64_t p = 5; p <= limit; p += 4) {
    if (!is_prime(p)) continue;
    const auto ctx = curve_validate(gaussian_curve(p));
    const std::uint64_t count = kernel_count(a, *ctx);
    rec.counts.emplace_back(p, count);
    if (!rec.found_prime && Integer(static_cast<unsigned long>(count)) == rec.target) rec.found_prime = p;
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Entry points

std::vector<std::string> scenario_names() {
  std::vector<std::string> names;
  for (const auto& s : scenarios()) names.push_back(s.name);
  return names;
}

Report run_scenario(std::string_view name, const RunOptions& options) {
  const auto start = Clock::now();
  const auto& table = scenarios();
  const auto it = std::find_if(table.begin(), table.end(), [&](const ScenarioSpec& s) { return s.name == name; });
  if (it == table.end()) throw DomainError("unknown scenario '" + std::string(name) + "'");
  const ScenarioSpec& spec = *it;

  if (options.prime && spec.curve == CmType::None)
    throw DomainError("scenario '" + spec.name + "' has no Jacobian stage to run at a prime");
  std::shared_ptr<const JacobianContext> jac;
  if (spec.curve != CmType::None) {
    const std::uint64_t p = options.prime.value_or(spec.default_prime);
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    jac = curve_validate(spec.curve == CmType::Gaussian ? gaussian_curve(p) : fifth_root_curve(p));
    if (p > kDefaultEnumerationBound)
      throw DomainError("prime " + std::to_string(p) + " exceeds the enumeration bound " +
                        std::to_string(kDefaultEnumerationBound));
  }

  const RingSpec& ring = ring_make(spec.ring);
  const auto ctx = CalculusContext::build(ring, spec.units());
  auto element = [&](const std::string& text) { return parse_ring_element(text, ring); };

  Report report;
  report.scenario = spec.name;
  report.ring = std::string(ring.name());
  report.seed = options.seed;

  for (const auto& id : spec.identities) {
    const ParsedIdentity parsed = parse_identity(id.text, ring);
    VerdictRecord rec;
    rec.identity = parsed.to_string();
    rec.ring = report.ring;
    rec.verdict = verify(to_pullbacks(parsed.lhs), to_pullbacks(parsed.rhs), *ctx);
    rec.expected = id.expected;
    rec.matched = rec.verdict.kind == id.expected;
    report.verdicts.push_back(std::move(rec));
  }
  for (const auto& s : spec.scalars) report.scalars.push_back(scalar_record(element(s.element), *ctx, s.expected));
  for (const auto& p : spec.products) {
    ProductScalarRecord rec;
    const RingElement a = element(p.phi1);
    const RingElement b = element(p.phi2);
    rec.phi1 = a.to_string();
    rec.phi2 = b.to_string();
    rec.c1 = polarization_scalar(a, *ctx);
    rec.c2 = polarization_scalar(b, *ctx);
    if (p.expected) rec.expected = Integer(*p.expected);
    const bool common = rec.c1 && rec.c2 && *rec.c1 == *rec.c2;
    rec.matched = rec.expected ? (common && *rec.c1 == *rec.expected) : !common;
    report.product_scalars.push_back(std::move(rec));
  }
  for (const auto& r : spec.refutations) {
    RefutationRecord rec;
    const RingElement a = element(r.alpha);
    const RingElement b = element(r.beta);
    rec.alpha = a.to_string();
    rec.beta = b.to_string();
    rec.certificate = refute_scalar_hypothesis(a, b, *ctx);
    rec.expected_refuted = r.refuted;
    for (long k : r.solutions) rec.expected_solutions.emplace_back(k);
    rec.matched = rec.certificate.refuted() == r.refuted && rec.certificate.solutions == rec.expected_solutions;
    report.refutations.push_back(std::move(rec));
  }
  for (const auto& pp : spec.preperiodic) {
    PreperiodicRecord rec;
    const RingElement a = element(pp.phi1);
    const RingElement b = element(pp.phi2);
    rec.phi1 = a.to_string();
    rec.phi2 = b.to_string();
    rec.ratio_root_of_unity = diagonal_preperiodic(a, b);
    rec.expected = pp.expected;
    rec.matched = rec.ratio_root_of_unity == pp.expected;
    report.preperiodicity.push_back(std::move(rec));
  }

  if (jac) {
    report.jacobian = corroborate(*jac, options.seed);
    if (spec.kernel_search) report.jacobian->kernel_search = search_rational_kernel(element("1+i"), 50);
  }
  report.elapsed_ms = elapsed_since(start);
  return report;
}

Report verify_text(std::string_view content, std::optional<RingKind> ring, const RunOptions& options) {
  const auto start = Clock::now();
  const auto entries = parse_identity_file(content, ring);
  Report report;
  report.scenario = "file";
  report.ring = ring ? std::string(ring_make(*ring).name()) : "";
  report.seed = options.seed;
  std::shared_ptr<const CalculusContext> contexts[3];
  for (const auto& entry : entries) {
    auto& ctx = contexts[static_cast<int>(entry.identity.ring)];
    if (!ctx) ctx = CalculusContext::build_full(ring_make(entry.identity.ring));
    VerdictRecord rec;
    rec.identity = entry.identity.to_string();
    rec.ring = std::string(ring_make(entry.identity.ring).name());
    rec.line = entry.line;
    rec.verdict = verify(to_pullbacks(entry.identity.lhs), to_pullbacks(entry.identity.rhs), *ctx);
    rec.matched = rec.verdict.saturated();
    report.verdicts.push_back(std::move(rec));
  }
  report.elapsed_ms = elapsed_since(start);
  return report;
}

Report verify_file(const std::string& path, std::optional<RingKind> ring, const RunOptions& options) {
  Report report = verify_text(read_file(path), ring, options);
  report.source = path;
  return report;
}

Report jacobian_check(std::string_view curve, std::uint64_t prime, std::uint64_t seed) {
  const auto start = Clock::now();
  const std::vector<Integer> coeffs = parse_integer_polynomial(curve, 'x');
  std::vector<std::int64_t> f;
  for (const auto& c : coeffs) {
    if (!c.fits_slong_p()) throw DomainError("curve coefficient out of range");
    f.push_back(c.get_si());
  }
  if (!is_prime(prime)) throw DomainError(std::to_string(prime) + " is not prime");
  const auto ctx = curve_validate(curve_from_coefficients(prime, f));
  Report report;
  report.scenario = "jacobian";
  report.seed = seed;
  if (ctx->params().cm != CmType::None) report.ring = std::string(ring_make(ctx->ring_kind()).name());
  report.jacobian = corroborate(*ctx, seed);
  report.elapsed_ms = elapsed_since(start);
  return report;
}

// ---------------------------------------------------------------------------
// Report

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const auto& v : verdicts) n += !v.matched;
  for (const auto& s : scalars) n += !s.matched;
  for (const auto& p : product_scalars) n += !p.matched;
  for (const auto& r : refutations) n += !r.matched;
  for (const auto& p : preperiodicity) n += !p.matched;
  if (jacobian) {
    n += !jacobian->orders_agree();
    for (const auto& c : jacobian->spot_checks) n += !c.passed;
    for (const auto& k : jacobian->kernel_counts) n += !k.divides;
    if (jacobian->kernel_search) n += !jacobian->kernel_search->found_prime.has_value();
  }
  return n;
}

namespace {

nlohmann::ordered_json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

nlohmann::ordered_json optional_integer_json(const std::optional<Integer>& x) {
  return x ? integer_json(*x) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json integer_list_json(const std::vector<Integer>& xs) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& x : xs) arr.push_back(integer_json(x));
  return arr;
}

}  // namespace

std::string Report::to_json(bool include_timing) const {
  using json = nlohmann::ordered_json;
  json doc;
  doc["schema_version"] = schema_version;
  doc["scenario"] = scenario;
  if (!source.empty()) doc["source"] = source;
  doc["ring"] = ring;

  json verdicts_json = json::array();
  for (const auto& v : verdicts) {
    json j{{"identity", v.identity},
           {"ring", v.ring},
           {"verdict", verdict_name(v.verdict.kind)},
           {"strict", v.verdict.strict()},
           {"saturated", v.verdict.saturated()},
           {"torsion_index", integer_json(v.verdict.torsion_index)},
           {"expected", v.expected ? json(verdict_name(*v.expected)) : json("holds_saturated")},
           {"matched", v.matched}};
    if (v.line) j["line"] = v.line;
    verdicts_json.push_back(std::move(j));
  }
  doc["verdicts"] = std::move(verdicts_json);

  json scalars_json = json::array();
  for (const auto& s : scalars)
    scalars_json.push_back({{"element", s.element},
                            {"ring", s.ring},
                            {"scalar", optional_integer_json(s.scalar)},
                            {"expected", optional_integer_json(s.expected)},
                            {"norm", integer_json(s.norm)},
                            {"degree_consistent", s.degree_consistent},
                            {"matched", s.matched}});
  for (const auto& p : product_scalars)
    scalars_json.push_back({{"product", {p.phi1, p.phi2}},
                            {"pair", {optional_integer_json(p.c1), optional_integer_json(p.c2)}},
                            {"expected", optional_integer_json(p.expected)},
                            {"matched", p.matched}});
  doc["scalars"] = std::move(scalars_json);

  json refutations_json = json::array();
  for (const auto& r : refutations)
    refutations_json.push_back({{"alpha", r.alpha},
                                {"beta", r.beta},
                                {"s", integer_json(r.certificate.s)},
                                {"t", integer_json(r.certificate.t)},
                                {"equation", r.certificate.equation()},
                                {"solutions", integer_list_json(r.certificate.solutions)},
                                {"refuted", r.certificate.refuted()},
                                {"expected_refuted", r.expected_refuted},
                                {"matched", r.matched}});
  doc["refutations"] = std::move(refutations_json);

  json pre_json = json::array();
  for (const auto& p : preperiodicity)
    pre_json.push_back({{"phi1", p.phi1},
                        {"phi2", p.phi2},
                        {"ratio_root_of_unity", p.ratio_root_of_unity},
                        {"diagonal_preperiodic", p.ratio_root_of_unity},
                        {"expected", p.expected},
                        {"matched", p.matched}});
  doc["preperiodicity"] = std::move(pre_json);

  if (jacobian) {
    const JacobianSection& jac = *jacobian;
    json kernels = json::array();
    for (const auto& k : jac.kernel_counts)
      kernels.push_back({{"element", k.element},
                         {"prime", k.prime},
                         {"count", k.count},
                         {"degree", integer_json(k.degree)},
                         {"divides", k.divides}});
    json checks = json::array();
    for (const auto& c : jac.spot_checks)
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"samples", c.samples}, {"detail", c.detail}});
    json j{{"prime", jac.prime},
           {"curve", jac.curve},
           {"cm", jac.cm},
           {"orders",
            {{"enumerated", jac.enumerated},
             {"via_counts", jac.via_counts},
             {"n1", jac.n1},
             {"n2", jac.n2},
             {"agree", jac.orders_agree()}}},
           {"kernel_counts", std::move(kernels)},
           {"spot_checks", std::move(checks)}};
    if (jac.orbit)
      j["orbit"] = {{"phi1", jac.orbit->phi1},
                    {"phi2", jac.orbit->phi2},
                    {"start", jac.orbit->start},
                    {"tail", jac.orbit->tail},
                    {"period", jac.orbit->period}};
    if (jac.kernel_search) {
      json counts = json::array();
      for (const auto& [p, c] : jac.kernel_search->counts) counts.push_back({{"prime", p}, {"count", c}});
      j["kernel_search"] = {{"element", jac.kernel_search->element},
                            {"target", integer_json(jac.kernel_search->target)},
                            {"counts", std::move(counts)},
                            {"found_prime", jac.kernel_search->found_prime ? json(*jac.kernel_search->found_prime)
                                                                           : json(nullptr)}};
    }
    doc["jacobian"] = std::move(j);
  } else {
    doc["jacobian"] = nullptr;
  }
  doc["seed"] = seed;
  if (include_timing) doc["elapsed_ms"] = elapsed_ms;
  doc["failures"] = failures();
  doc["passed"] = passed();
  return doc.dump(2);
}

std::string Report::to_text() const {
  std::ostringstream out;
  auto mark = [](bool ok) { return ok ? "[ok]  " : "[FAIL]"; };
  out << "scenario " << scenario;
  if (!source.empty()) out << " (" << source << ")";
  if (!ring.empty()) out << ", ring " << ring;
  out << ", seed " << seed << "\n";

  if (!verdicts.empty()) out << "identities\n";
  for (const auto& v : verdicts) {
    out << "  " << mark(v.matched) << " ";
    if (v.line) out << "line " << v.line << ": ";
    out << v.identity << "  => " << verdict_name(v.verdict.kind);
    if (v.verdict.kind == VerdictKind::HoldsUpToTorsion) out << " (torsion order " << v.verdict.torsion_index << ")";
    if (v.expected && *v.expected != v.verdict.kind) out << "  expected " << verdict_name(*v.expected);
    out << "\n";
  }
  if (!scalars.empty() || !product_scalars.empty()) out << "polarization scalars\n";
  for (const auto& s : scalars) {
    out << "  " << mark(s.matched) << " [" << s.element << "]*D ~ ";
    out << (s.scalar ? s.scalar->get_str() + " D" : std::string("no multiple of D"));
    out << "  (norm " << s.norm << ")\n";
  }
  for (const auto& p : product_scalars) {
    out << "  " << mark(p.matched) << " [" << p.phi1 << "] x [" << p.phi2 << "]: (";
    out << (p.c1 ? p.c1->get_str() : "-") << ", " << (p.c2 ? p.c2->get_str() : "-") << ")\n";
  }
  if (!refutations.empty()) out << "scalar hypotheses\n";
  for (const auto& r : refutations) {
    out << "  " << mark(r.matched) << " [" << r.alpha << "], [" << r.beta << "]: " << r.certificate.equation();
    if (r.certificate.refuted()) {
      out << " has no integer solution a >= 1 (refuted)\n";
    } else {
      out << " solved by a =";
      for (const auto& k : r.certificate.solutions) out << " " << k;
      out << "\n";
    }
  }
  if (!preperiodicity.empty()) out << "diagonal preperiodicity\n";
  for (const auto& p : preperiodicity)
    out << "  " << mark(p.matched) << " (" << p.phi1 << ", " << p.phi2 << "): "
        << (p.ratio_root_of_unity ? "ratio is a root of unity, preperiodic" : "ratio is not a root of unity")
        << "\n";
  if (jacobian) {
    const JacobianSection& jac = *jacobian;
    out << "jacobian y^2 = " << jac.curve << " over F_" << jac.prime << " (cm " << jac.cm << ")\n";
    out << "  " << mark(jac.orders_agree()) << " order: enumerated " << jac.enumerated << ", from counts "
        << jac.via_counts << " (N1 = " << jac.n1 << ", N2 = " << jac.n2 << ")\n";
    for (const auto& c : jac.spot_checks) {
      out << "  " << mark(c.passed) << " " << c.name << " (" << c.samples << " samples)";
      if (!c.detail.empty()) out << ": " << c.detail;
      out << "\n";
    }
    for (const auto& k : jac.kernel_counts)
      out << "  " << mark(k.divides) << " kernel of [" << k.element << "]: " << k.count << " rational points, divides "
          << k.degree << "\n";
    if (jac.orbit)
      out << "  orbit of (P, P) under ([" << jac.orbit->phi1 << "], [" << jac.orbit->phi2 << "]) from "
          << jac.orbit->start << ": tail " << jac.orbit->tail << ", period " << jac.orbit->period << "\n";
    if (jac.kernel_search) {
      const auto& ks = *jac.kernel_search;
      out << "  " << mark(ks.found_prime.has_value()) << " kernel of [" << ks.element << "] fully rational ("
          << ks.target << " points) at p = " << (ks.found_prime ? std::to_string(*ks.found_prime) : "none")
          << "; counts:";
      for (const auto& [p, c] : ks.counts) out << " " << p << ":" << c;
      out << "\n";
    }
  }
  out << "summary: " << failures() << " failure(s), " << (passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace cmdyn

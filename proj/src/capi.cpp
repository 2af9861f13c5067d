#include <cmdyn/cmdyn.h>

#include "calculus.hpp"
#include "identity.hpp"
#include "workbench.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

struct cmdyn_context {
  std::shared_ptr<const cmdyn::CalculusContext> ctx;
};

struct cmdyn_report {
  cmdyn::Report report;
};

namespace {

struct ErrorState {
  std::string message;
  std::size_t line = 0;
  std::size_t column = 0;
};

thread_local ErrorState last_error;

cmdyn_status fail(cmdyn_status status, std::string message, std::size_t line = 0, std::size_t column = 0) {
  last_error = {std::move(message), line, column};
  return status;
}

// Runs body, mapping exceptions onto status codes.
template <class F>
cmdyn_status guarded(F&& body) {
  try {
    last_error = {};
    return body();
  } catch (const cmdyn::ParseError& e) {
    return fail(CMDYN_ERROR_PARSE, e.what(), e.line(), e.column());
  } catch (const cmdyn::IoError& e) {
    return fail(CMDYN_ERROR_IO, e.what());
  } catch (const cmdyn::DomainError& e) {
    return fail(CMDYN_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CMDYN_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CMDYN_ERROR_INTERNAL, e.what());
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const cmdyn::RingSpec* ring_of(cmdyn_ring_kind kind) {
  switch (kind) {
    case CMDYN_RING_GAUSSIAN: return &cmdyn::ring_make(cmdyn::RingKind::Gaussian);
    case CMDYN_RING_SIXTH_ROOT: return &cmdyn::ring_make(cmdyn::RingKind::SixthRoot);
    case CMDYN_RING_FIFTH_ROOT: return &cmdyn::ring_make(cmdyn::RingKind::FifthRoot);
  }
  return nullptr;
}

cmdyn::RunOptions to_options(const cmdyn_run_options* options) {
  cmdyn::RunOptions out;
  if (options) {
    if (options->has_prime) out.prime = options->prime;
    out.seed = options->seed;
  }
  return out;
}

#define CMDYN_REQUIRE(cond, what) \
  if (!(cond)) return fail(CMDYN_ERROR_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* cmdyn_version(void) { return "1.0.0"; }

const char* cmdyn_last_error(void) { return last_error.message.c_str(); }

void cmdyn_last_error_position(size_t* line, size_t* column) {
  if (line) *line = last_error.line;
  if (column) *column = last_error.column;
}

void cmdyn_string_free(char* s) { std::free(s); }

cmdyn_status cmdyn_ring_kind_from_name(const char* name, cmdyn_ring_kind* out) {
  return guarded([&] {
    CMDYN_REQUIRE(name && out, "null argument");
    switch (cmdyn::parse_ring_kind(name)) {
      case cmdyn::RingKind::Gaussian: *out = CMDYN_RING_GAUSSIAN; break;
      case cmdyn::RingKind::SixthRoot: *out = CMDYN_RING_SIXTH_ROOT; break;
      case cmdyn::RingKind::FifthRoot: *out = CMDYN_RING_FIFTH_ROOT; break;
    }
    return CMDYN_OK;
  });
}

cmdyn_status cmdyn_ring_normalize(cmdyn_ring_kind ring, const char* element, char** out) {
  return guarded([&] {
    const auto* spec = ring_of(ring);
    CMDYN_REQUIRE(spec, "unknown ring kind");
    CMDYN_REQUIRE(element && out, "null argument");
    *out = duplicate(cmdyn::parse_ring_element(element, *spec).to_string());
    return CMDYN_OK;
  });
}

cmdyn_status cmdyn_ring_norm(cmdyn_ring_kind ring, const char* element, char** out_decimal) {
  return guarded([&] {
    const auto* spec = ring_of(ring);
    CMDYN_REQUIRE(spec, "unknown ring kind");
    CMDYN_REQUIRE(element && out_decimal, "null argument");
    *out_decimal = duplicate(cmdyn::norm(cmdyn::parse_ring_element(element, *spec)).get_str());
    return CMDYN_OK;
  });
}

cmdyn_status cmdyn_is_root_of_unity(cmdyn_ring_kind ring, const char* element, int* out) {
  return guarded([&] {
    const auto* spec = ring_of(ring);
    CMDYN_REQUIRE(spec, "unknown ring kind");
    CMDYN_REQUIRE(element && out, "null argument");
    *out = cmdyn::is_root_of_unity(cmdyn::parse_ring_element(element, *spec)) ? 1 : 0;
    return CMDYN_OK;
  });
}

cmdyn_status cmdyn_diagonal_preperiodic(cmdyn_ring_kind ring, const char* phi1, const char* phi2, int* out) {
  return guarded([&] {
    const auto* spec = ring_of(ring);
    CMDYN_REQUIRE(spec, "unknown ring kind");
    CMDYN_REQUIRE(phi1 && phi2 && out, "null argument");
    *out = cmdyn::diagonal_preperiodic(cmdyn::parse_ring_element(phi1, *spec), cmdyn::parse_ring_element(phi2, *spec))
               ? 1
               : 0;
    return CMDYN_OK;
  });
}

cmdyn_status cmdyn_context_create(cmdyn_ring_kind ring, cmdyn_context** out) {
  return guarded([&] {
    const auto* spec = ring_of(ring);
    CMDYN_REQUIRE(spec, "unknown ring kind");
    CMDYN_REQUIRE(out, "null argument");
    *out = new cmdyn_context{cmdyn::CalculusContext::build_full(*spec)};
    return CMDYN_OK;
  });
}

cmdyn_status cmdyn_context_create_with_units(cmdyn_ring_kind ring, const char* const* units, size_t count,
                                             cmdyn_context** out) {
  return guarded([&] {
    const auto* spec = ring_of(ring);
    CMDYN_REQUIRE(spec, "unknown ring kind");
    CMDYN_REQUIRE(out && (units || count == 0), "null argument");
    std::vector<cmdyn::RingElement> list;
    for (size_t k = 0; k < count; ++k) {
      CMDYN_REQUIRE(units[k], "null unit expression");
      list.push_back(cmdyn::parse_ring_element(units[k], *spec));
    }
    *out = new cmdyn_context{cmdyn::CalculusContext::build(*spec, std::move(list))};
    return CMDYN_OK;
  });
}

void cmdyn_context_destroy(cmdyn_context* ctx) { delete ctx; }

cmdyn_status cmdyn_verify_identity(const cmdyn_context* ctx, const char* identity, cmdyn_verdict* out,
                                   uint64_t* torsion_order) {
  return guarded([&] {
    CMDYN_REQUIRE(ctx && identity && out, "null argument");
    const auto parsed = cmdyn::parse_identity(identity, ctx->ctx->ring());
    const auto verdict = cmdyn::verify(cmdyn::to_pullbacks(parsed.lhs), cmdyn::to_pullbacks(parsed.rhs), *ctx->ctx);
    switch (verdict.kind) {
      case cmdyn::VerdictKind::Holds: *out = CMDYN_VERDICT_HOLDS; break;
      case cmdyn::VerdictKind::HoldsUpToTorsion: *out = CMDYN_VERDICT_HOLDS_UP_TO_TORSION; break;
      case cmdyn::VerdictKind::NotDerivable: *out = CMDYN_VERDICT_NOT_DERIVABLE; break;
    }
    if (torsion_order) *torsion_order = verdict.torsion_index.get_ui();
    return CMDYN_OK;
  });
}

cmdyn_status cmdyn_polarization_scalar(const cmdyn_context* ctx, const char* element, char** out_decimal) {
  return guarded([&] {
    CMDYN_REQUIRE(ctx && element && out_decimal, "null argument");
    const auto a = cmdyn::parse_ring_element(element, ctx->ctx->ring());
    const auto c = cmdyn::polarization_scalar(a, *ctx->ctx);
    if (!c) return fail(CMDYN_ERROR_NOT_FOUND, "[" + a.to_string() + "]*D is not a positive multiple of D");
    *out_decimal = duplicate(c->get_str());
    return CMDYN_OK;
  });
}

cmdyn_status cmdyn_refute_scalar_hypothesis(const cmdyn_context* ctx, const char* alpha, const char* beta,
                                            char** out_json) {
  return guarded([&] {
    CMDYN_REQUIRE(ctx && alpha && beta && out_json, "null argument");
    const auto& ring = ctx->ctx->ring();
    const auto cert = cmdyn::refute_scalar_hypothesis(cmdyn::parse_ring_element(alpha, ring),
                                                      cmdyn::parse_ring_element(beta, ring), *ctx->ctx);
    nlohmann::json solutions = nlohmann::json::array();
    for (const auto& k : cert.solutions) solutions.push_back(k.get_str());
    const nlohmann::json doc{{"s", cert.s.get_str()},
                             {"t", cert.t.get_str()},
                             {"equation", cert.equation()},
                             {"solutions", std::move(solutions)},
                             {"refuted", cert.refuted()}};
    *out_json = duplicate(doc.dump());
    return CMDYN_OK;
  });
}

cmdyn_status cmdyn_reduce_pullback(const cmdyn_context* ctx, const char* element, char** out) {
  return guarded([&] {
    CMDYN_REQUIRE(ctx && element && out, "null argument");
    const auto a = cmdyn::parse_ring_element(element, ctx->ctx->ring());
    *out = duplicate(cmdyn::reduce(cmdyn::quadratic_normal_form(a, *ctx->ctx)).to_string());
    return CMDYN_OK;
  });
}

cmdyn_status cmdyn_run_scenario(const char* name, const cmdyn_run_options* options, cmdyn_report** out) {
  return guarded([&] {
    CMDYN_REQUIRE(name && out, "null argument");
    const auto names = cmdyn::scenario_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
      return fail(CMDYN_ERROR_UNKNOWN_SCENARIO, std::string("unknown scenario '") + name + "'");
    *out = new cmdyn_report{cmdyn::run_scenario(name, to_options(options))};
    return CMDYN_OK;
  });
}

cmdyn_status cmdyn_verify_file(const char* path, const char* ring, const cmdyn_run_options* options,
                               cmdyn_report** out) {
  return guarded([&] {
    CMDYN_REQUIRE(path && out, "null argument");
    std::optional<cmdyn::RingKind> kind;
    if (ring) kind = cmdyn::parse_ring_kind(ring);
    *out = new cmdyn_report{cmdyn::verify_file(path, kind, to_options(options))};
    return CMDYN_OK;
  });
}

cmdyn_status cmdyn_jacobian_check(const char* curve, uint64_t prime, uint64_t seed, cmdyn_report** out) {
  return guarded([&] {
    CMDYN_REQUIRE(curve && out, "null argument");
    *out = new cmdyn_report{cmdyn::jacobian_check(curve, prime, seed)};
    return CMDYN_OK;
  });
}

int cmdyn_report_passed(const cmdyn_report* report) { return report && report->report.passed() ? 1 : 0; }

size_t cmdyn_report_failures(const cmdyn_report* report) { return report ? report->report.failures() : 0; }

cmdyn_status cmdyn_report_render(const cmdyn_report* report, cmdyn_format format, char** out) {
  return guarded([&] {
    CMDYN_REQUIRE(report && out, "null argument");
    switch (format) {
      case CMDYN_FORMAT_TEXT: *out = duplicate(report->report.to_text()); return CMDYN_OK;
      case CMDYN_FORMAT_JSON: *out = duplicate(report->report.to_json()); return CMDYN_OK;
    }
    return fail(CMDYN_ERROR_INVALID_ARGUMENT, "unknown report format");
  });
}

void cmdyn_report_destroy(cmdyn_report* report) { delete report; }

const char* cmdyn_scenario_names(void) {
  static const std::string joined = [] {
    std::string s;
    for (const auto& n : cmdyn::scenario_names()) s += (s.empty() ? "" : ",") + n;
    return s;
  }();
  return joined.c_str();
}

}  // extern "C"

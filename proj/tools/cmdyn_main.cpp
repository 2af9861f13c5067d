// Command-line front end over the cmdyn C API.
//
// Exit status: 0 when every expected verdict matched, 1 on any mismatch or
// failed check, 2 on usage, parse or input errors.

#include <cmdyn/cmdyn.h>

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

int report_error(cmdyn_status status) {
  std::cerr << "error: " << cmdyn_last_error() << "\n";
  (void)status;
  return kExitUsage;
}

int emit(cmdyn_report* report, const std::string& format, const std::string& output) {
  char* rendered = nullptr;
  const cmdyn_format fmt = format == "json" ? CMDYN_FORMAT_JSON : CMDYN_FORMAT_TEXT;
  if (cmdyn_status st = cmdyn_report_render(report, fmt, &rendered); st != CMDYN_OK) {
    cmdyn_report_destroy(report);
    return report_error(st);
  }
  int code = cmdyn_report_passed(report) ? kExitPass : kExitMismatch;
  if (output.empty()) {
    std::cout << rendered;
    if (fmt == CMDYN_FORMAT_JSON) std::cout << "\n";
  } else {
    std::ofstream out(output);
    out << rendered << "\n";
    if (!out) {
      std::cerr << "error: cannot write '" << output << "'\n";
      code = kExitUsage;
    }
  }
  cmdyn_string_free(rendered);
  cmdyn_report_destroy(report);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pullback-divisor calculus and genus-2 Jacobian checks"};
  app.require_subcommand(1);

  std::string scenario, file, ring, format = "text", output, curve;
  std::optional<std::uint64_t> prime;
  std::uint64_t seed = 1;

  auto* verify = app.add_subcommand("verify", "Run a built-in scenario or verify an identity file");
  auto* scenario_opt = verify->add_option("--scenario", scenario, "deg5 | deg6 | deg6-alpha | zeta5");
  auto* file_opt = verify->add_option("--file", file, "Identity file, one identity per line");
  scenario_opt->excludes(file_opt);
  verify->add_option("--ring", ring, "Ring for file lines before any 'ring:' header")
      ->check(CLI::IsMember({"gaussian", "sixthroot", "fifthroot"}, CLI::ignore_case));
  verify->add_option("--prime", prime, "Prime for the Jacobian stage");
  verify->add_option("--seed", seed, "Sampling seed");
  verify->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--output", output, "Write the report to a file");

  auto* jacobian = app.add_subcommand("jacobian", "Point-level checks on y^2 = f(x) over F_p");
  jacobian->add_option("--curve", curve, "Monic quintic, e.g. x^5-x")->required();
  jacobian->add_option("--prime", prime, "Odd prime")->required();
  jacobian->add_option("--seed", seed, "Sampling seed");
  jacobian->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  jacobian->add_option("--output", output, "Write the report to a file");

  app.add_subcommand("scenarios", "List the built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (app.got_subcommand("scenarios")) {
    std::cout << cmdyn_scenario_names() << "\n";
    return kExitPass;
  }

  cmdyn_report* report = nullptr;
  cmdyn_status status = CMDYN_OK;
  if (app.got_subcommand(verify)) {
    cmdyn_run_options options{prime.has_value() ? 1 : 0, prime.value_or(0), seed};
    if (!scenario.empty()) {
      status = cmdyn_run_scenario(scenario.c_str(), &options, &report);
    } else if (!file.empty()) {
      status = cmdyn_verify_file(file.c_str(), ring.empty() ? nullptr : ring.c_str(), &options, &report);
    } else {
      std::cerr << "error: verify needs --scenario or --file\n";
      return kExitUsage;
    }
  } else {
    status = cmdyn_jacobian_check(curve.c_str(), *prime, seed, &report);
  }
  if (status != CMDYN_OK) {
    if (status == CMDYN_ERROR_PARSE) {
      std::size_t line = 0, column = 0;
      cmdyn_last_error_position(&line, &column);
      std::cerr << "parse error at line " << line << ", column " << column << "\n";
    }
    return report_error(status);
  }
  return emit(report, format, output);
}

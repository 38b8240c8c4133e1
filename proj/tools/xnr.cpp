// Command-line front-end: report, semigroup and sweep.
//
// Exit codes: 0 all checks pass, 2 a check failed, 64 usage error.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "xnr/errors.hpp"
#include "xnr/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 2;
constexpr int kExitUsage = 64;

xnr::BigInt parse_big(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw xnr::InvalidArgument("non_negative_integer", std::string(what) + " must be a non-negative integer");
  }
  return xnr::BigInt(s);
}

int emit(const xnr::ReportResult& res, const std::string& format) {
  if (format == "text") {
    std::cout << xnr::render_text(res.doc);
  } else {
    std::cout << res.doc.dump(2) << "\n";
  }
  return res.pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curve checks over finite fields"};
  app.require_subcommand(1);

  xnr::RunConfig cfg;
  unsigned r = 0;
  std::string mode = "fast";
  std::string format = "json";
  std::string max_points = "16777216";

  const std::map<std::string, xnr::RunMode> modes{
      {"fast", xnr::RunMode::fast}, {"full", xnr::RunMode::full}, {"symbolic", xnr::RunMode::symbolic}};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--mode", mode, "fast | full | symbolic")->check(CLI::IsMember({"fast", "full", "symbolic"}));
    sub->add_option("--seed", cfg.seed, "Seed for all sampled checks");
    sub->add_option("--max-points", max_points, "Point enumeration budget");
    sub->add_option("--format", format, "json | text")->check(CLI::IsMember({"json", "text"}));
  };

  CLI::App* report = app.add_subcommand("report", "Run every check suite on one curve");
  report->add_option("--p", cfg.p, "Characteristic (prime)");
  report->add_option("--m", cfg.m, "q = p^m");
  report->add_option("--n", cfg.n, "Extension degree");
  auto* r_opt = report->add_option("--r", r, "Second parameter (default: canonical)");
  add_common(report);

  std::vector<std::string> gens;
  CLI::App* semigroup = app.add_subcommand("semigroup", "Invariants of a numerical semigroup");
  semigroup->add_option("gens", gens, "Generators")->required();
  semigroup->add_option("--format", format, "json | text")->check(CLI::IsMember({"json", "text"}));

  std::string limit = "0";
  CLI::App* sweep = app.add_subcommand("sweep", "Fast suite on every configuration with q^{2n-1} <= limit");
  sweep->add_option("--limit", limit, "Bound on q^{2n-1}");
  add_common(sweep);

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

  try {
    cfg.mode = modes.at(mode);
    cfg.max_points = parse_big(max_points, "--max-points");
    if (*report) {
      if (r_opt->count() > 0) cfg.r = r;
      return emit(xnr::run_report(cfg), format);
    }
    if (*semigroup) {
      std::vector<xnr::BigInt> values;
      for (const auto& g : gens) values.push_back(parse_big(g, "generator"));
      return emit(xnr::run_semigroup(values), format);
    }
    return emit(xnr::run_sweep(parse_big(limit, "--limit"), cfg), format);
  } catch (const xnr::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const xnr::BudgetExceeded& e) {
    std::cerr << "error: budget exceeded: " << e.what() << "\n";
    return kExitUsage;
  } catch (const xnr::Falsification& e) {
    std::cerr << "falsified: " << e.what() << "\n";
    return kExitFail;
  }
}

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "gauges/scenario.hpp"

namespace {

int emit(const gauges::Report& rep, const std::string& out_path) {
  std::cout << rep.human();
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    out << rep.machine_json();
  }
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gauges: exact value functions on algebras over valued fields"};
  app.require_subcommand(1);

  std::string file, out;
  std::string gamma_str = "1/4";
  std::string suite = "all";
  int samples = 1000;
  std::uint64_t seed = 1;

  auto* check = app.add_subcommand("check", "verify every gauge block of a scenario");
  check->add_option("file", file, "scenario JSON")->required();
  check->add_option("--out", out, "machine report path");

  auto* gr = app.add_subcommand("gr", "emit graded presentations");
  gr->add_option("file", file, "scenario JSON")->required();
  gr->add_option("--out", out, "machine report path");

  auto* ext = app.add_subcommand("extensions", "count valuation extensions per block");
  ext->add_option("file", file, "scenario JSON")->required();
  ext->add_option("--out", out, "machine report path");

  auto* report = app.add_subcommand("report", "checks plus defect and extension ledgers");
  report->add_option("file", file, "scenario JSON")->required();
  report->add_option("--out", out, "machine report path");

  auto* ex51 = app.add_subcommand("example51", "run the bundled rank-2 quaternion battery");
  ex51->add_option("--gamma", gamma_str, "rational in (0, 1/2)")->capture_default_str();
  ex51->add_option("--samples", samples, "sample corpus size")->capture_default_str();
  ex51->add_option("--seed", seed, "rng seed")->capture_default_str();
  ex51->add_option("--out", out, "machine report path");

  auto* props = app.add_subcommand("props", "run the deterministic property suites");
  props->add_option("--suite", suite, "all|ordered|series|gauges|rings")
      ->capture_default_str();
  props->add_option("--seed", seed, "rng seed")->capture_default_str();
  props->add_option("--out", out, "machine report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (check->parsed()) return emit(gauges::run_check(gauges::load_scenario(file)), out);
    if (gr->parsed()) return emit(gauges::run_gr(gauges::load_scenario(file)), out);
    if (ext->parsed())
      return emit(gauges::run_extensions(gauges::load_scenario(file)), out);
    if (report->parsed())
      return emit(gauges::run_report(gauges::load_scenario(file)), out);
    if (ex51->parsed()) {
      gauges::Rat gamma = gauges::parse_rational(gamma_str);
      return emit(gauges::run_example51(gamma, samples, seed), out);
    }
    if (props->parsed()) return emit(gauges::run_props(suite, seed), out);
  } catch (const gauges::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const gauges::UnresolvedReference& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const gauges::GammaOutOfRange& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const gauges::InsufficientPrecision& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const gauges::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 2;
}

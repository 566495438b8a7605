#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "klr/cocenter.hpp"
#include "klr/cyclotomic.hpp"
#include "klr/report.hpp"

using namespace klr;

namespace {

void print_records(const VerificationReport& rep, bool timing) {
  for (const CheckRecord& rec : rep.records) {
    std::cout << std::left << std::setw(5) << status_name(rec.result.status) << ' ' << std::setw(28) << rec.result.id << ' '
              << rec.instance;
    if (timing) std::cout << "  (" << std::fixed << std::setprecision(3) << rec.seconds << "s)";
    std::cout << '\n';
    for (const auto& f : rec.result.failures) std::cout << "      " << f << '\n';
  }
  std::cout << "PASS=" << rep.count(CheckResult::Status::Pass) << " FAIL=" << rep.count(CheckResult::Status::Fail)
            << " SKIP=" << rep.count(CheckResult::Status::Skip) << '\n';
}

void write_json(const VerificationReport& rep, const std::string& path, bool timing) {
  std::ofstream out(path);
  if (!out) throw ConfigError(ConfigError::Kind::IoFailure, "cannot write " + path);
  out << rep.to_json(timing).dump(2) << '\n';
  if (!out) throw ConfigError(ConfigError::Kind::IoFailure, "write failed for " + path);
}

std::vector<Field> parse_fields(const std::vector<std::string>& names) {
  std::vector<Field> out;
  for (const auto& n : names) {
    try {
      out.push_back(Field::parse(n));
    } catch (const ArithmeticError& e) {
      throw ConfigError(ConfigError::Kind::ConfigParse, e.what());
    }
  }
  return out;
}

/// Loads the config and checks the datum up front so malformed input fails fast.
JobConfig load_checked(const std::string& path, const std::vector<std::string>& fields) {
  JobConfig cfg = load_config(path);
  if (!fields.empty()) cfg.fields = parse_fields(fields);
  cfg.datum();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification engine for cyclotomic KLR algebras"};
  app.require_subcommand(1);
  std::string config_path, json_path, out_path;
  std::vector<std::string> fields;
  bool no_timing = false;
  int nh_n = 5, nh_samples = 200;
  std::uint64_t nh_seed = 1;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("config", config_path, "JSON job configuration");
    if (needs_config) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--fields", fields, "Override the configured fields (Q, F2, F3, ...)")->delimiter(',');
    sub->add_flag("--no-timing", no_timing, "Omit timings from output and reports");
  };

  auto* validate = app.add_subcommand("validate", "Check the Cartan datum, symmetrizers and Q");
  add_common(validate, true);
  auto* nilhecke = app.add_subcommand("nilhecke-suite", "Run the nilHecke identity suite");
  add_common(nilhecke, false);
  nilhecke->add_option("--n", nh_n, "Largest number of strands")->check(CLI::Range(1, 6));
  nilhecke->add_option("--samples", nh_samples, "Random polynomials per n")->check(CLI::PositiveNumber);
  nilhecke->add_option("--seed", nh_seed, "Random seed");
  nilhecke->add_option("--json", json_path, "Write the report here");
  auto* build = app.add_subcommand("build", "Build the cyclotomic quotient");
  add_common(build, true);
  build->add_option("--out", out_path, "Write the serialized algebra (suffixed by field when several)");
  auto* cocenter = app.add_subcommand("cocenter", "Build and compute cocenter and center dimensions");
  add_common(cocenter, true);
  auto* verify = app.add_subcommand("verify", "Build and run every verification");
  add_common(verify, true);
  verify->add_option("--json", json_path, "Write the report here");
  auto* report = app.add_subcommand("report", "Run the suites selected in the config and write a JSON report");
  add_common(report, true);
  report->add_option("--json", json_path, "Report path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    VerificationReport rep;
    if (nilhecke->parsed()) {
      JobConfig cfg;
      if (!config_path.empty()) {
        cfg = load_config(config_path);
        nh_n = nilhecke->count("--n") ? nh_n : cfg.nilhecke_max_n;
        nh_samples = nilhecke->count("--samples") ? nh_samples : cfg.nilhecke_samples;
        nh_seed = nilhecke->count("--seed") ? nh_seed : cfg.seed;
      } else {
        cfg.fields = parse_fields({"Q", "F2", "F3", "F5"});
      }
      if (!fields.empty()) cfg.fields = parse_fields(fields);
      cfg.nilhecke_max_n = nh_n;
      cfg.nilhecke_samples = nh_samples;
      cfg.seed = nh_seed;
      cfg.suites = SuiteFlags{false, true, false, false, false};
      rep = run_job(cfg);
    } else {
      JobConfig cfg = load_checked(config_path, fields);
      if (validate->parsed()) {
        cfg.suites = SuiteFlags{true, false, false, false, false};
        rep = run_job(cfg);
      } else if (build->parsed()) {
        rep.config_echo = cfg.to_json();
        for (const Field& f : cfg.fields) {
          if (!run_instance(cfg, f, Stage::Build, rep) || out_path.empty()) continue;
          CartanDatum c = cfg.datum();
          BuildOptions opts{cfg.initial_bound, cfg.max_escalations};
          CyclotomicAlgebra a =
              build_cyclotomic(c, cfg.q_matrix(c), make_weight(c, cfg.lambda), make_root(c, cfg.alpha), f, opts);
          std::string path = cfg.fields.size() > 1 ? out_path + "." + f.name() : out_path;
          std::ofstream out(path);
          if (!out) throw ConfigError(ConfigError::Kind::IoFailure, "cannot write " + path);
          out << a.serialize();
        }
      } else if (cocenter->parsed()) {
        rep.config_echo = cfg.to_json();
        for (const Field& f : cfg.fields) run_instance(cfg, f, Stage::Cocenter, rep);
      } else if (verify->parsed()) {
        cfg.suites.build = cfg.suites.cocenter = cfg.suites.verify = true;
        rep = run_job(cfg);
      } else {
        rep = run_job(cfg);
      }
    }
    print_records(rep, !no_timing);
    if (!json_path.empty()) write_json(rep, json_path, !no_timing);
    return rep.all_passed() ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << (e.kind() == ConfigError::Kind::ConfigParse ? "ConfigParse: " : "IoFailure: ") << e.what() << '\n';
    return 2;
  } catch (const CartanError& e) {
    std::cerr << CartanError::kind_name(e.kind()) << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

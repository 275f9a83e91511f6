#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "hardy/report.hpp"

namespace {

enum Exit { kHolds = 0, kFails = 1, kTrivial = 2, kHypothesis = 3, kInput = 4 };

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

struct Common {
  std::string config;
  std::optional<bool> oracle;
  std::optional<std::uint64_t> seed;
  std::optional<double> rel_tol;
  std::string out;
};

hardy::ProblemConfig load(const Common& o) {
  hardy::ProblemConfig c = hardy::load_config(o.config);
  if (o.oracle) c.oracle.enabled = *o.oracle;
  if (o.seed) c.oracle.seed = *o.seed;
  if (o.rel_tol) {
    c.quad.rel_tol = *o.rel_tol;
    try {
      c.quad.validate();
    } catch (const std::invalid_argument& e) {
      throw hardy::ParseError(std::string("--quad-rel-tol: ") + e.what());
    }
  }
  return c;
}

void add_common(CLI::App* cmd, Common& o) {
  cmd->add_option("config", o.config, "problem configuration (JSON)")->required();
  cmd->add_flag_callback("--oracle", [&o] { o.oracle = true; }, "run the brute-force oracle");
  cmd->add_flag_callback("--no-oracle", [&o] { o.oracle = false; }, "skip the oracle");
  cmd->add_option_function<std::uint64_t>("--seed", [&o](std::uint64_t s) { o.seed = s; },
                                          "oracle seed");
  cmd->add_option_function<double>("--quad-rel-tol", [&o](double x) { o.rel_tol = x; },
                                   "relative quadrature tolerance");
  cmd->add_option("--out", o.out, "also write the output to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Hardy-type inequality checker"};
  app.require_subcommand(1);

  Common check_opts;
  std::string trajectory_path;
  CLI::App* check = app.add_subcommand("check", "evaluate one configuration");
  add_common(check, check_opts);
  check->add_option("--trajectory", trajectory_path,
                    "write the oracle trajectory as lines 'iteration ratio'");

  Common sweep_opts;
  std::string grid;
  int workers = 1;
  CLI::App* sweep = app.add_subcommand("sweep", "evaluate a parameter grid as CSV");
  add_common(sweep, sweep_opts);
  sweep->add_option("--grid", grid, "e.g. \"p=0.5,1,2;q=0.5,1,2;r=0.5,1\"")->required();
  sweep->add_option("--workers", workers, "rows evaluated concurrently")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInput;
  }

  try {
    if (check->parsed()) {
      const hardy::ProblemConfig c = load(check_opts);
      std::vector<std::pair<long, double>> traj;
      const hardy::Report rep = hardy::run_check(c, &traj);
      const std::string text = hardy::serialize(rep);
      std::cout << text;
      if (!check_opts.out.empty()) write_file(check_opts.out, text);
      if (!trajectory_path.empty()) {
        std::string lines;
        for (const auto& [it, ratio] : traj) {
          lines += std::to_string(it) + " " + hardy::csv_number(ratio) + "\n";
        }
        write_file(trajectory_path, lines);
      }
      switch (rep.verdict) {
        case hardy::Verdict::holds: return kHolds;
        case hardy::Verdict::fails: return kFails;
        case hardy::Verdict::trivial_weights: return kTrivial;
      }
    }
    const hardy::ProblemConfig c = load(sweep_opts);
    const std::string csv =
        hardy::run_sweep(c, hardy::parse_sweep_grid(grid), workers);
    std::cout << csv;
    if (!sweep_opts.out.empty()) write_file(sweep_opts.out, csv);
    return kHolds;
  } catch (const hardy::HypothesisViolation& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return kHypothesis;
  } catch (const hardy::TrivialWeights& e) {
    std::cerr << "trivial-weights-only: " << e.what() << "\n";
    return kTrivial;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
}

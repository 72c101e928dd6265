// Copyright 2026 The ghostsim Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: exact, sample, classes, quantum, compare, prepare, demo.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "ghostsim/ghostsim.hpp"
#include "ghostsim/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open circuit file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ghostsim::Circuit load(const std::string& path) {
  try {
    return ghostsim::parse(read_file(path));
  } catch (const ghostsim::CircuitError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::vector<double> parse_list(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto start = item.find_first_not_of(" \t");
    auto stop = item.find_last_not_of(" \t");
    if (start == std::string::npos) throw UsageError(std::string("empty entry in ") + what);
    auto v = ghostsim::parse_angle(item.substr(start, stop - start + 1));
    if (!v) throw UsageError(std::string("malformed number '") + item + "' in " + what);
    out.push_back(*v);
  }
  if (out.size() != expected) {
    throw UsageError(std::string(what) + " needs " + std::to_string(expected) + " comma-separated values");
  }
  return out;
}

void print_report(const ghostsim::RunReport& r, const std::string& format) {
  if (format == "csv") {
    std::cout << ghostsim::run_report_csv(r);
  } else {
    std::cout << ghostsim::to_json(r).dump(2) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ghostsim: local real/ghost particle model of two-path interferometers"};
  app.require_subcommand(1, 1);

  std::string file;
  std::string format = "json";
  std::uint64_t shots = 100000;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  unsigned workers = 1;
  std::string target;
  std::string empty;
  std::string demo_name;

  const auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* exact = app.add_subcommand("exact", "Exact outcome-history tree of a circuit");
  exact->add_option("circuit", file, "Circuit file ('-' for stdin)")->required();
  add_format(exact);

  auto* sample = app.add_subcommand("sample", "Monte Carlo counts");
  sample->add_option("circuit", file, "Circuit file ('-' for stdin)")->required();
  sample->add_option("--shots", shots, "Number of shots")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed, "Master seed")->required();
  sample->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  add_format(sample);

  auto* classes = app.add_subcommand("classes", "Class-label evolution after every step");
  classes->add_option("circuit", file, "Circuit file ('-' for stdin)")->required();

  auto* quantum = app.add_subcommand("quantum", "Qubit (Bloch) backend probabilities");
  quantum->add_option("circuit", file, "Circuit file ('-' for stdin)")->required();

  auto* compare = app.add_subcommand("compare", "Cross-check ontic, class and qubit backends");
  compare->add_option("circuit", file, "Circuit file ('-' for stdin)")->required();
  compare->add_option("--shots", shots, "Monte Carlo shots (0 disables sampling)");
  compare->add_option("--seed", seed, "Master seed");
  compare->add_option("--tol", tolerance, "Agreement tolerance for exact probabilities");
  compare->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  add_format(compare);

  auto* prepare = app.add_subcommand("prepare", "Emit a preparation circuit");
  auto* target_opt = prepare->add_option("--target", target, "theta,phi,alpha,beta of a class member");
  auto* empty_opt = prepare->add_option("--empty", empty, "i,theta,phi of an empty-companion state");
  target_opt->excludes(empty_opt);
  prepare->require_option(1, 1);

  auto* demo = app.add_subcommand("demo", "Run a two-beam-splitter interferometer fixture");
  demo->add_option("name", demo_name, "Fixture")->required()->check(CLI::IsMember({"mz", "mz-phase", "mz-detector"}));
  demo->add_option("--shots", shots, "Monte Carlo shots (0 disables sampling)");
  demo->add_option("--seed", seed, "Master seed");
  add_format(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*exact) {
      const auto tree = ghostsim::run_exact(load(file));
      if (format == "csv") {
        std::cout << ghostsim::branch_tree_csv(tree);
      } else {
        std::cout << ghostsim::to_json(tree).dump(2) << '\n';
      }
    } else if (*sample) {
      const auto counts = ghostsim::run_sample(load(file), shots, seed, workers);
      if (format == "csv") {
        std::cout << ghostsim::sample_counts_csv(counts);
      } else {
        std::cout << ghostsim::to_json(counts).dump(2) << '\n';
      }
    } else if (*classes) {
      ghostsim::json out = ghostsim::json::array();
      for (const auto& step : ghostsim::class_trace(load(file))) {
        ghostsim::json branches = ghostsim::json::array();
        for (const auto& [h, p] : step.branches) {
          branches.push_back({{"history", ghostsim::to_string(h)},
                              {"probability", p.first},
                              {"label", ghostsim::to_json(p.second.vec())}});
        }
        out.push_back({{"step", step.step}, {"branches", branches}});
      }
      std::cout << out.dump(2) << '\n';
    } else if (*quantum) {
      std::cout << ghostsim::to_json(ghostsim::quantum_probabilities(load(file))).dump(2) << '\n';
    } else if (*compare) {
      const auto report = ghostsim::compare(load(file), {shots, seed, tolerance, 5.0, workers});
      print_report(report, format);
      return report.pass ? kExitPass : kExitFail;
    } else if (*prepare) {
      ghostsim::Circuit c;
      if (*target_opt) {
        const auto v = parse_list(target, 4, "--target");
        c = ghostsim::prepare_protocol({ghostsim::from_spherical({v[0], v[1]})}, v[2], v[3]);
      } else {
        const auto v = parse_list(empty, 3, "--empty");
        if (v[0] != 0.0 && v[0] != 1.0) throw UsageError("--empty path must be 0 or 1");
        c = ghostsim::prepare_empty(ghostsim::path_from_index(static_cast<int>(v[0])),
                                    ghostsim::from_spherical({v[1], v[2]}));
      }
      std::cout << ghostsim::serialize(c);
    } else if (*demo) {
      const auto c = ghostsim::demo_circuit(demo_name);
      const auto report = ghostsim::compare(c, {shots, seed, 1e-9, 5.0, 1});
      if (format == "json") {
        ghostsim::json out = ghostsim::to_json(report);
        out["circuit"] = ghostsim::serialize(c);
        std::cout << out.dump(2) << '\n';
      } else {
        std::cout << ghostsim::run_report_csv(report);
      }
      return report.pass ? kExitPass : kExitFail;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitPass;
}

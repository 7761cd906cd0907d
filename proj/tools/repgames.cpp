#include <iostream>

#include <CLI11.hpp>

#include "experiment.hpp"
#include "repgames/error.hpp"
#include "repgames/parallel.hpp"

using namespace repgames;

namespace {

cli::ExperimentConfig load(const std::string& path, std::optional<std::uint64_t> seed) {
  if (path.empty()) throw ConfigError("--config is required");
  cli::ExperimentConfig cfg = cli::ExperimentConfig::load(path);
  if (seed) {
    cfg.seed = *seed;
    cfg.raw["seed"] = *seed;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Repeated games for nonlocal and geometric front propagation"};
  app.require_subcommand(1);
  std::string config, out;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  bool no_timing = false;
  std::vector<std::string> tables;
  std::string merged = "merged.csv";

  app.add_option("--threads", threads, "worker threads, 0 for all cores");
  auto* run = app.add_subcommand("run", "solve the eps schedule and compare against the oracle");
  auto* verify = app.add_subcommand("verify", "run the property suites");
  auto* oracle = app.add_subcommand("oracle", "dump oracle solutions");
  auto* table = app.add_subcommand("table", "merge result tables");
  for (auto* sub : {run, verify, oracle}) {
    sub->add_option("--config", config, "experiment config (JSON)")->required();
    sub->add_option("--out", out, "output directory (overrides the config)");
    sub->add_option("--seed", seed, "random seed (overrides the config)");
    sub->add_option("--threads", threads, "worker threads, 0 for all cores");
  }
  run->add_flag("--no-timing", no_timing, "write runtime_s as 0 for byte-identical reruns");
  table->add_option("files", tables, "CSV files with identical headers")->required();
  table->add_option("--out", merged, "merged CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    set_thread_count(threads);
    cli::RunOptions opts{out, !no_timing, threads};
    if (*run) {
      const auto rows = cli::run(load(config, seed), opts);
      for (const auto& r : rows)
        std::cout << "eps=" << r.eps << " error_sup=" << r.error_sup << " error_levelset=" << r.error_levelset
                  << (r.flag.empty() ? "" : " [" + r.flag + "]") << '\n';
      return 0;
    }
    if (*verify) {
      const auto verdicts = cli::verify(load(config, seed), opts);
      bool ok = true;
      for (const auto& v : verdicts) {
        std::cout << (v.pass ? "PASS " : "FAIL ") << v.name << ": " << v.detail << '\n';
        if (!v.pass && !v.witness.is_null()) std::cout << "  witness: " << v.witness.dump() << '\n';
        ok = ok && v.pass;
      }
      return ok ? 0 : 1;
    }
    if (*oracle) {
      for (const auto& f : cli::dump_oracles(load(config, seed), opts)) std::cout << f << '\n';
      return 0;
    }
    cli::merge_tables(tables, merged);
    std::cout << merged << '\n';
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

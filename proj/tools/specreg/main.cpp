// specreg <subcommand> --config path.json [--out dir] [--seed u64]

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "specreg/app/commands.hpp"
#include "specreg/app/config.hpp"
#include "specreg/error.hpp"

namespace {

bool is_usage_error(specreg::Errc code) {
  using specreg::Errc;
  return code == Errc::parse_error || code == Errc::invalid_argument || code == Errc::unknown_name ||
         code == Errc::length_mismatch || code == Errc::out_of_range;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral regularization experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", specreg::app::version());

  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  const std::pair<std::string, std::string> commands[] = {
      {"validate-filter", "check the generator axioms of a filter on a grid"},
      {"rate-exact", "error curve and rate fit for exact data"},
      {"rate-noisy", "worst-case bracket over a range of noise levels"},
      {"var-ineq", "variational inequality constant and truncated source witness"},
      {"distance", "distance function profile and error bound check"},
      {"run-all", "run every acceptance criterion"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    // run-all needs no instance description
    auto* opt = sub->add_option("--config", config_path, "experiment config (JSON)");
    if (name != "run-all") opt->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "random seed, overrides the config");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : specreg::app::kExitUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  specreg::app::ExperimentConfig config;
  try {
    if (!config_path.empty()) config = specreg::app::load_config(config_path);
    if (seed) config.seed = *seed;
  } catch (const std::exception& e) {
    std::cerr << "specreg: " << e.what() << '\n';
    return specreg::app::kExitUsage;
  }
  if (out_dir.empty()) out_dir = config.out.value_or(".");

  try {
    const auto result = specreg::app::run_command(command, config);
    specreg::app::write_outputs(out_dir, result.files);
    std::cout << result.summary;
    return result.exit_code;
  } catch (const specreg::Error& e) {
    std::cerr << "specreg: " << e.what() << '\n';
    return is_usage_error(e.code()) ? specreg::app::kExitUsage : specreg::app::kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "specreg: " << e.what() << '\n';
    return specreg::app::kExitFail;
  }
}

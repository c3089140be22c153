#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "rkframe/rkframe.hpp"

namespace {

namespace rx = rkframe::experiment;

rx::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rkframe::config_error("cannot open config file " + path);
  try {
    return rx::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw rkframe::config_error("config file " + path + " is not valid JSON: " +
                                e.what());
  }
}

int run(const std::string& command, const std::string& config_path, bool seed_given,
        std::uint64_t seed, const std::string& out_dir, const std::string& format,
        bool dry_run) {
  rx::report_format fmt = rx::parse_format(format);
  rx::json doc = load_config(config_path);
  if (!doc.is_object()) throw rkframe::config_error("config: expected a JSON object");
  if (!doc.contains("command"))
    doc["command"] = command;
  else if (doc.at("command").get<std::string>() != command)
    throw rkframe::config_error("config file says command \"" +
                                doc.at("command").get<std::string>() +
                                "\" but the CLI invoked \"" + command + "\"");
  if (seed_given) doc["seed"] = seed;

  rx::ExperimentConfig cfg = rx::parse_config(doc);
  std::cout << "resolved config:\n" << rx::config_echo(cfg).dump(2) << "\n";
  if (dry_run) {
    std::cout << "dry run: config valid\n";
    return 0;
  }

  auto t0 = std::chrono::steady_clock::now();
  rx::ExperimentReport report = rx::run_command(cfg);
  auto t1 = std::chrono::steady_clock::now();
  std::fprintf(stderr, "elapsed_seconds %.3f\n",
               std::chrono::duration<double>(t1 - t0).count());

  for (const auto& path : rx::emit_report(report, fmt, out_dir))
    std::cout << "wrote " << path.string() << "\n";
  for (const std::string& w : report.warnings) std::cout << "warning: " << w << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reproducing-kernel sequence diagnostics"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", format = "json";
  std::uint64_t seed = 0;
  bool dry_run = false;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gram", "Gram matrix of normalized kernels (spectrum at p = 2)"},
      {"frame", "hilbertian/besselian constants by projected gradient"},
      {"dual", "dual system, condition number, extension norm estimate"},
      {"carleson", "product condition and dyadic box constants"},
      {"lift", "Bergman-to-Hardy embedding checks"},
      {"babenko", "calibrated lattice ladder: upper bounds kept, lower decaying"},
      {"seqgen", "generate a point sequence and estimate its density"},
  };
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--out", out_dir, "output directory (default .)");
    sub->add_option("--format", format, "report format: json or csv");
    sub->add_flag("--dry-run", dry_run, "validate config and exit");
  }

  CLI11_PARSE(app, argc, argv);
  CLI::App* chosen = app.get_subcommands().front();

  try {
    return run(chosen->get_name(), config_path, chosen->count("--seed") > 0, seed,
               out_dir, format, dry_run);
  } catch (const rkframe::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 5;
  } catch (const rkframe::calibration_error& e) {
    std::cerr << "calibration error: " << e.what() << "\n";
    for (const auto& [param, value] : e.trace)
      std::cerr << "  angular_density " << param << " -> density " << value << "\n";
    return 4;
  } catch (const rkframe::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const rkframe::error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

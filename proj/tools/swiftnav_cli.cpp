// Command-line driver: swiftnav --config FILE [overrides]
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swiftnav/swiftnav.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRun = 1;
constexpr int kExitConfig = 2;

int report(sn_status status, const char* context) {
  std::fprintf(stderr, "swiftnav: %s: %s\n", context, sn_last_error());
  return status == SN_ERR_CONFIG || status == SN_ERR_PARSE ? kExitConfig : kExitRun;
}

struct ConfigHandle {
  sn_config* ptr = nullptr;
  ~ConfigHandle() { sn_config_free(ptr); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SwiftNav annealing optimizer"};
  app.set_version_flag("--version", std::string(sn_version()));

  std::string config_path;
  std::optional<std::string> problem, seed, seeds, iters, workers, algo, out, burn_in, dims;
  std::vector<std::string> sets;
  bool print_config = false;
  bool quiet = false;

  app.add_option("-c,--config", config_path, "Config file (key = value, or a positional row)");
  app.add_option("--problem", problem, "ackley, levy, minlp, quartic, chebyshev or sdp:<path>");
  app.add_option("--dims", dims, "Dimensions for ackley/levy");
  app.add_option("--seed", seed, "Single seed");
  app.add_option("--seeds", seeds, "Seed count, list [a, b] or range N..M");
  app.add_option("--iters", iters, "Iteration budget");
  app.add_option("--workers", workers, "Worker threads (default $SWIFTNAV_WORKERS or 1)");
  app.add_option("--algo", algo, "swiftnav, mh or both");
  app.add_option("--out", out, "Output directory");
  app.add_option("--burn-in", burn_in, "Iterations dropped from aggregate CSVs");
  app.add_option("--set", sets, "Extra key=value override, repeatable");
  app.add_flag("--print-config", print_config, "Print the resolved config and exit");
  app.add_flag("-q,--quiet", quiet, "Do not print the comparison table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  ConfigHandle config;
  sn_status st = config_path.empty() ? sn_config_new(&config.ptr)
                                     : sn_config_load(config_path.c_str(), &config.ptr);
  if (st != SN_OK) {
    report(st, "config");
    return kExitConfig;  // an unreadable file is a config problem too
  }

  auto apply = [&](const char* key, const std::optional<std::string>& v) {
    return v ? sn_config_set(config.ptr, key, v->c_str()) : SN_OK;
  };
  const std::pair<const char*, const std::optional<std::string>*> overrides[] = {
      {"problem", &problem}, {"dims", &dims},       {"seed", &seed},
      {"seeds", &seeds},     {"iterations", &iters}, {"workers", &workers},
      {"algorithm", &algo},  {"out", &out},          {"burn_in", &burn_in}};
  for (const auto& [key, value] : overrides)
    if ((st = apply(key, *value)) != SN_OK) return report(st, "option");
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "swiftnav: --set expects key=value, got '%s'\n", kv.c_str());
      return kExitConfig;
    }
    st = sn_config_set(config.ptr, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
    if (st != SN_OK) return report(st, "--set");
  }
  if ((st = sn_config_validate(config.ptr)) != SN_OK) return report(st, "config");

  if (print_config) {
    char* text = nullptr;
    if ((st = sn_config_serialize(config.ptr, &text)) != SN_OK) return report(st, "config");
    std::fputs(text, stdout);
    sn_string_free(text);
    return kExitOk;
  }

  char* comparison = nullptr;
  st = sn_experiment_run(config.ptr, nullptr, quiet ? nullptr : &comparison);
  if (st != SN_OK) return report(st, "run");
  if (comparison) {
    std::fputs(comparison, stdout);
    sn_string_free(comparison);
  }
  return kExitOk;
}

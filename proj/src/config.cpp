#include "ssls/config.hpp"

#include <fstream>

#include <yaml-cpp/yaml.h>

namespace ssls {

BaselineConfig load_baseline_config(std::istream& in, const std::string& source) {
  BaselineConfig cfg;
  YAML::Node doc;
  try {
    doc = YAML::Load(in);
    const auto b = doc["baselines"];
    if (!b) return cfg;
    if (const auto g = b["gne"]) {
      if (g["pool_fraction"]) cfg.gne.pool_fraction = g["pool_fraction"].as<double>();
      if (g["max_swap_rounds"]) cfg.gne.max_swap_rounds = g["max_swap_rounds"].as<int>();
      if (g["seed"]) cfg.gne.rng_seed = g["seed"].as<std::uint64_t>();
    }
    if (const auto s = b["sos"])
      if (s["similarity_threshold"]) cfg.sos.similarity_threshold = s["similarity_threshold"].as<double>();
  } catch (const YAML::Exception& e) {
    throw ParseError(source, static_cast<std::size_t>(e.mark.line + 1), e.msg);
  }
  if (!(cfg.gne.pool_fraction > 0.0 && cfg.gne.pool_fraction <= 1.0)) throw DomainError(source + ": pool_fraction must lie in (0,1]");
  if (cfg.gne.max_swap_rounds < 0) throw DomainError(source + ": max_swap_rounds must be non-negative");
  if (!(cfg.sos.similarity_threshold >= 0.0 && cfg.sos.similarity_threshold <= 1.0))
    throw DomainError(source + ": similarity_threshold must lie in [0,1]");
  return cfg;
}

BaselineConfig load_baseline_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return load_baseline_config(in, path);
}

}  // namespace ssls

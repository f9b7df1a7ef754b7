#pragma once

#include <istream>
#include <string>

#include "ssls/baselines.hpp"

namespace ssls {

struct BaselineConfig {
  GneConfig gne;
  SosConfig sos;
};

/// Reads the `baselines:` section (`gne: {pool_fraction, max_swap_rounds, seed}`,
/// `sos: {similarity_threshold}`). Missing keys keep their defaults.
BaselineConfig load_baseline_config(std::istream& in, const std::string& source = "<config>");
BaselineConfig load_baseline_config_file(const std::string& path);

}  // namespace ssls

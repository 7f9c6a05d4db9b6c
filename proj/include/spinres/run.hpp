#pragma once

#include <string>

#include "spinres/config.hpp"

namespace spinres {

struct RunOptions {
  int threads = 1;
};

struct RunResult {
  std::string artifact;  // CSV or JSON, byte-identical for identical inputs
  std::string summary;   // aligned human-readable table
};

/// Executes one configured command. Module errors propagate as exceptions.
RunResult run(const RunConfig& cfg, const RunOptions& opts = {});

}  // namespace spinres

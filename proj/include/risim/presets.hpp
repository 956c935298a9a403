#pragma once

#include <map>
#include <string>

#include "risim/config.hpp"

namespace risim {

// Runs a named preset campaign and writes its CSV files under out_dir.
// Returns {relative filename -> file contents} for the files written.
// Names: fig6, fig7, fig8, fig9, tables3and4, v2x_highway.
std::map<std::string, std::string> run_preset(const std::string& name,
                                              const ExperimentConfig& cfg,
                                              const std::string& out_dir);

bool is_known_preset(const std::string& name);

}  // namespace risim

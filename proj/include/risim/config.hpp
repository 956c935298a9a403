#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "risim/channel.hpp"
#include "risim/game.hpp"
#include "risim/scheduler.hpp"

namespace risim {

struct ExperimentConfig {
    // Topology
    Position3D uav{25.0, 50.0, 25.0};
    Position3D ris_ref{30.0, 40.0, 20.0};
    std::vector<double> ue_ring_radii{20.0, 27.0, 37.0, 58.0, 66.0};
    double ue_height_m = 1.5;

    Band band = Band::Sub6;
    BandConfig band_config = BandConfig::sub6();

    std::vector<std::size_t> ris_elements{0, 10, 100, 1000};
    int realizations = 100;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};

    GameConfig game;
    GbsmConfig gbsm;
    CampaignConfig campaign;

    std::string out_dir = "out";
};

// Parses a JSON experiment config. Unknown keys raise SchemaError; an empty
// or whitespace-only file yields the defaults. band = "mmwave" switches the
// noise reference to -160 dBm unless overridden.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<string>");

Topology topology_from_config(const ExperimentConfig& cfg, std::size_t ris_elements,
                              std::uint64_t seed);

}  // namespace risim

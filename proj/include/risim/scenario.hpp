#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "risim/ris.hpp"

namespace risim {

struct ScenarioRecord {
    int pair_id = 0;
    std::string node_a;
    std::string node_b;
    double tap_re = 0.0;
    double tap_im = 0.0;
    double toa_s = 0.0;

    bool operator==(const ScenarioRecord&) const = default;
};

struct ScenarioFile {
    int format_version = 1;
    std::string band_name;
    double carrier_frequency_hz = 0.0;
    std::uint64_t seed = 0;
    std::size_t ris_elements = 0;
    std::string generator_version;
    std::vector<ScenarioRecord> records;

    bool operator==(const ScenarioFile&) const = default;
};

// One FIR tap + ToA per unordered node pair over {uav, ris, ue0..ueN-1}.
// UE-UAV taps are the overall channel h_iU + cascade under `phases`; UE-RIS
// and RIS-UAV taps are the averaged scalar link gains; UE-UE taps are NLOS
// links generated on the fly. ToA is geometric only.
ScenarioFile build_scenario(const Topology& topology, const ChannelSet& channels,
                            const PhaseShiftVector& phases, std::uint64_t seed,
                            const GbsmConfig& gbsm = {});

void export_scenario(const ScenarioFile& scenario, const std::string& path);
ScenarioFile import_scenario(const std::string& path);

std::string scenario_to_string(const ScenarioFile& scenario);
ScenarioFile scenario_from_string(const std::string& text);

}  // namespace risim

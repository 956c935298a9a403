#pragma once

#include <cstdint>
#include <vector>

#include "risim/units.hpp"

namespace risim {

struct Position3D {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

enum class Band { Sub6, MmWave };

struct BandConfig {
    double carrier_frequency_hz = 5.9e9;
    double bandwidth_hz = 10e6;
    double noise_ref_dbm = -140.0;  // I_0
    double element_spacing_m = 0.0;  // 0 means lambda/2

    double wavelength_m() const { return kSpeedOfLight / carrier_frequency_hz; }
    double element_spacing() const {
        return element_spacing_m > 0.0 ? element_spacing_m : 0.5 * wavelength_m();
    }
    double noise_ref_watts() const { return dbm_to_watts(noise_ref_dbm); }

    static BandConfig sub6();
    static BandConfig mmwave();
    static BandConfig make(Band band);
};

struct Topology {
    Position3D uav;
    Position3D ris_ref;
    std::vector<Position3D> ue_positions;
    std::size_t ris_elements = 0;  // |M|, 0 = RIS-absent baseline
    BandConfig band;
};

double euclidean_distance(const Position3D& a, const Position3D& b);

// Cosine of the angle between (dst - src) and array_axis. Throws ZeroLengthVector
// if src == dst or the axis has zero norm; the axis is normalized internally.
double angle_cosine(const Position3D& src, const Position3D& dst, const Position3D& array_axis);

double time_of_arrival(const Position3D& a, const Position3D& b);

// UEs at seeded-random azimuths on rings of 3D radius ring_radii[i] around
// ris_ref, at the given height. Ring radius must exceed the RIS/UE height gap.
std::vector<Position3D> place_ue_ring(const Position3D& ris_ref,
                                      const std::vector<double>& ring_radii, std::uint64_t seed,
                                      double ue_height_m = 1.5);

Topology make_paper_topology(const BandConfig& band, std::size_t ris_elements,
                             const std::vector<double>& ring_radii, std::uint64_t seed,
                             double ue_height_m = 1.5);

// The d_iR list of the reference setup.
const std::vector<double>& paper_ue_ring_radii();

}  // namespace risim

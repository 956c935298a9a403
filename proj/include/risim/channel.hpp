#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "risim/geometry.hpp"

namespace risim {

using cplx = std::complex<double>;

struct Mpc {
    double magnitude = 0.0;  // linear amplitude
    double phase_rad = 0.0;  // [0, 2*pi)
    double delay_s = 0.0;
};

enum class LinkKind { Direct, UeToRis, RisToUav };
enum class Condition { Los, Nlos };
enum class PathLossModel { LogDistance, Uma38901Los, Uma38901Nlos };

// Path loss in dB. The 38.901 UMa formulas use the default heights
// h_BS = 25 m, h_UT = 1.5 m for the breakpoint and NLOS height terms.
double path_loss_db(PathLossModel model, double d3d_m, double fc_hz,
                    double log_distance_exponent = 2.0);

struct LinkSpec {
    Condition condition = Condition::Nlos;
    double distance_m = 1.0;
    double fc_hz = 5.9e9;
    double wavelength_m = kSpeedOfLight / 5.9e9;
    PathLossModel model = PathLossModel::Uma38901Nlos;
    double k_factor_db = 9.0;        // LOS Rician K
    double delay_spread_s = 100e-9;  // NLOS / scattered RMS delay spread
    double log_distance_exponent = 2.0;
    int n_paths = 12;
    std::uint64_t link_id = 0;
};

struct GbsmConfig {
    int n_paths = 12;
    double k_factor_db = 9.0;
    double delay_spread_s = 100e-9;
    int n_realizations = 100;
    PathLossModel los_model = PathLossModel::Uma38901Los;
    PathLossModel nlos_model = PathLossModel::Uma38901Nlos;
};

// One realization of the link's multipath components. LOS: deterministic direct
// ray plus n_paths-1 Rician-scattered components whose total power is exactly
// direct/K. NLOS: n_paths Rayleigh components with exponential PDP normalized
// to the path-loss-implied mean power. Deterministic per seed; the stochastic
// draws do not depend on carrier frequency, so bands share raw fading.
std::vector<Mpc> generate_mpcs(const LinkSpec& link, std::uint64_t seed, int n_paths);

cplx coherent_sum(std::span<const Mpc> mpcs);

// Mean complex gain over n_realizations; realization r is seeded with
// derive_seed(seed, link_id, r). OpenMP-parallel with ordered accumulation,
// bit-identical to average_channel_serial.
cplx average_channel(const LinkSpec& link, int n_realizations, std::uint64_t seed);
cplx average_channel_serial(const LinkSpec& link, int n_realizations, std::uint64_t seed);

// Entry m (0-based) = exp(-j * 2*pi/lambda * d * m * phi).
std::vector<cplx> steering_vector(std::size_t m_count, double spacing_m, double wavelength_m,
                                  double phi);

struct ChannelSet {
    std::vector<cplx> h_direct;               // per UE, h_iU
    std::vector<std::vector<cplx>> h_ue_ris;  // per UE, length |M|, h_iR
    std::vector<cplx> h_ris_uav;              // length |M|, h_RU
    BandConfig band;

    std::size_t ue_count() const { return h_direct.size(); }
    std::size_t ris_elements() const { return h_ris_uav.size(); }
};

// Direct UE->UAV links are NLOS; UE->RIS and RIS->UAV are LOS. LOS scalar
// gains are multiplied by the steering vectors of a ULA along +x anchored at
// the RIS reference element.
ChannelSet build_channel_set(const Topology& topology, std::uint64_t seed,
                             const GbsmConfig& cfg = {});

}  // namespace risim

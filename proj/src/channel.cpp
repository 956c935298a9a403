#include "risim/channel.hpp"

#include <cmath>

#include "risim/errors.hpp"
#include "risim/rng.hpp"

namespace risim {

namespace {

// TR 38.901 UMa default geometry for the breakpoint and height terms.
constexpr double kUmaBsHeight = 25.0;
constexpr double kUmaUtHeight = 1.5;
constexpr double kUmaEnvHeight = 1.0;

double uma_los_db(double d3d, double fc_hz) {
    const double f_ghz = fc_hz / 1e9;
    const double d_bp = 4.0 * (kUmaBsHeight - kUmaEnvHeight) * (kUmaUtHeight - kUmaEnvHeight) *
                        fc_hz / kSpeedOfLight;
    const double d = std::max(d3d, 1.0);
    if (d < d_bp) {
        return 28.0 + 22.0 * std::log10(d) + 20.0 * std::log10(f_ghz);
    }
    const double dh = kUmaBsHeight - kUmaUtHeight;
    return 28.0 + 40.0 * std::log10(d) + 20.0 * std::log10(f_ghz) -
           9.0 * std::log10(d_bp * d_bp + dh * dh);
}

double uma_nlos_db(double d3d, double fc_hz) {
    const double f_ghz = fc_hz / 1e9;
    const double d = std::max(d3d, 1.0);
    const double pl = 13.54 + 39.08 * std::log10(d) + 20.0 * std::log10(f_ghz) -
                      0.6 * (kUmaUtHeight - 1.5);
    return std::max(pl, uma_los_db(d3d, fc_hz));
}

double link_path_loss_db(const LinkSpec& link) {
    return path_loss_db(link.model, link.distance_m, link.fc_hz, link.log_distance_exponent);
}

}  // namespace

double path_loss_db(PathLossModel model, double d3d_m, double fc_hz,
                    double log_distance_exponent) {
    if (d3d_m <= 0.0) throw NonPositiveDistance("path_loss_db: d3d must be > 0");
    if (fc_hz <= 0.0) throw NonPositiveDistance("path_loss_db: fc must be > 0");
    switch (model) {
        case PathLossModel::LogDistance: {
            const double pl0 = 20.0 * std::log10(4.0 * M_PI * fc_hz / kSpeedOfLight);
            return pl0 + 10.0 * log_distance_exponent * std::log10(std::max(d3d_m, 1.0));
        }
        case PathLossModel::Uma38901Los:
            return uma_los_db(d3d_m, fc_hz);
        case PathLossModel::Uma38901Nlos:
            return uma_nlos_db(d3d_m, fc_hz);
    }
    throw NonPositiveDistance("path_loss_db: unknown model");
}

std::vector<Mpc> generate_mpcs(const LinkSpec& link, std::uint64_t seed, int n_paths) {
    if (n_paths < 1) throw EmptyPathList("generate_mpcs: n_paths must be >= 1");

    const double mean_power = db_to_linear(-link_path_loss_db(link));
    const double base_delay = link.distance_m / kSpeedOfLight;
    Rng rng(seed);

    std::vector<Mpc> mpcs;
    mpcs.reserve(static_cast<std::size_t>(n_paths));

    const bool los = link.condition == Condition::Los;
    const int n_scatter = los ? n_paths - 1 : n_paths;

    // Raw fading draws first: the sequence is independent of carrier frequency
    // so that per-seed fading is shared across bands.
    std::vector<double> delays(static_cast<std::size_t>(n_scatter));
    std::vector<double> amps(static_cast<std::size_t>(n_scatter));
    std::vector<double> phases(static_cast<std::size_t>(n_scatter));
    double raw_power = 0.0;
    for (int k = 0; k < n_scatter; ++k) {
        delays[k] = rng.exponential(link.delay_spread_s);
        const double w = std::exp(-delays[k] / link.delay_spread_s);
        amps[k] = rng.rayleigh_unit() * std::sqrt(w);
        phases[k] = rng.uniform(0.0, 2.0 * M_PI);
        raw_power += amps[k] * amps[k];
    }

    if (los) {
        const double direct_amp = std::sqrt(mean_power);
        const double direct_phase =
            std::fmod(2.0 * M_PI * link.distance_m / link.wavelength_m, 2.0 * M_PI);
        mpcs.push_back({direct_amp, direct_phase, base_delay});
        const double scattered_power = mean_power / db_to_linear(link.k_factor_db);
        const double scale = raw_power > 0.0 ? std::sqrt(scattered_power / raw_power) : 0.0;
        for (int k = 0; k < n_scatter; ++k) {
            mpcs.push_back({amps[k] * scale, phases[k], base_delay + delays[k]});
        }
    } else {
        const double scale = raw_power > 0.0 ? std::sqrt(mean_power / raw_power) : 0.0;
        for (int k = 0; k < n_scatter; ++k) {
            mpcs.push_back({amps[k] * scale, phases[k], base_delay + delays[k]});
        }
    }
    return mpcs;
}

cplx coherent_sum(std::span<const Mpc> mpcs) {
    if (mpcs.empty()) throw EmptyPathList("coherent_sum: empty path list");
    cplx acc{0.0, 0.0};
    for (const Mpc& m : mpcs) {
        acc += std::polar(m.magnitude, m.phase_rad);
    }
    return acc;
}

namespace {

cplx realization_gain(const LinkSpec& link, std::uint64_t seed, int r) {
    const auto mpcs = generate_mpcs(
        link, derive_seed(seed, link.link_id, static_cast<std::uint64_t>(r)), link.n_paths);
    return coherent_sum(mpcs);
}

}  // namespace

cplx average_channel_serial(const LinkSpec& link, int n_realizations, std::uint64_t seed) {
    if (n_realizations < 1) n_realizations = 1;
    cplx acc{0.0, 0.0};
    for (int r = 0; r < n_realizations; ++r) {
        acc += realization_gain(link, seed, r);
    }
    return acc / static_cast<double>(n_realizations);
}

cplx average_channel(const LinkSpec& link, int n_realizations, std::uint64_t seed) {
    if (n_realizations < 1) n_realizations = 1;
    std::vector<cplx> per_realization(static_cast<std::size_t>(n_realizations));
#pragma omp parallel for schedule(static)
    for (int r = 0; r < n_realizations; ++r) {
        per_realization[r] = realization_gain(link, seed, r);
    }
    // Ordered accumulation keeps the result bit-identical to the serial path.
    cplx acc{0.0, 0.0};
    for (const cplx& g : per_realization) acc += g;
    return acc / static_cast<double>(n_realizations);
}

std::vector<cplx> steering_vector(std::size_t m_count, double spacing_m, double wavelength_m,
                                  double phi) {
    if (wavelength_m <= 0.0) throw NonPositiveDistance("steering_vector: wavelength must be > 0");
    std::vector<cplx> v(m_count);
    const double step = -2.0 * M_PI / wavelength_m * spacing_m * phi;
    for (std::size_t m = 0; m < m_count; ++m) {
        v[m] = std::polar(1.0, step * static_cast<double>(m));
    }
    return v;
}

ChannelSet build_channel_set(const Topology& topology, std::uint64_t seed, const GbsmConfig& cfg) {
    const BandConfig& band = topology.band;
    const double lambda = band.wavelength_m();
    const double spacing = band.element_spacing();
    const Position3D axis{1.0, 0.0, 0.0};
    const std::size_t n_ues = topology.ue_positions.size();
    const std::size_t m = topology.ris_elements;

    ChannelSet out;
    out.band = band;
    out.h_direct.resize(n_ues);
    out.h_ue_ris.assign(n_ues, {});
    out.h_ris_uav.clear();

    auto make_link = [&](Condition cond, double dist, std::uint64_t link_id) {
        LinkSpec link;
        link.condition = cond;
        link.distance_m = dist;
        link.fc_hz = band.carrier_frequency_hz;
        link.wavelength_m = lambda;
        link.model = cond == Condition::Los ? cfg.los_model : cfg.nlos_model;
        link.k_factor_db = cfg.k_factor_db;
        link.delay_spread_s = cfg.delay_spread_s;
        link.n_paths = cfg.n_paths;
        link.link_id = link_id;
        return link;
    };

    for (std::size_t i = 0; i < n_ues; ++i) {
        const double d_iu = euclidean_distance(topology.ue_positions[i], topology.uav);
        out.h_direct[i] = average_channel(make_link(Condition::Nlos, d_iu, derive_seed(1, i)),
                                          cfg.n_realizations, seed);
    }

    if (m > 0) {
        const double d_ru = euclidean_distance(topology.ris_ref, topology.uav);
        const double phi_ru = angle_cosine(topology.ris_ref, topology.uav, axis);
        const cplx g_ru = average_channel(make_link(Condition::Los, d_ru, derive_seed(3, 0)),
                                          cfg.n_realizations, seed);
        const auto steer_ru = steering_vector(m, spacing, lambda, phi_ru);
        out.h_ris_uav.resize(m);
        for (std::size_t k = 0; k < m; ++k) out.h_ris_uav[k] = g_ru * steer_ru[k];

        for (std::size_t i = 0; i < n_ues; ++i) {
            const double d_ir = euclidean_distance(topology.ue_positions[i], topology.ris_ref);
            const double phi_ir = angle_cosine(topology.ris_ref, topology.ue_positions[i], axis);
            const cplx g_ir = average_channel(make_link(Condition::Los, d_ir, derive_seed(2, i)),
                                              cfg.n_realizations, seed);
            const auto steer_ir = steering_vector(m, spacing, lambda, phi_ir);
            out.h_ue_ris[i].resize(m);
            for (std::size_t k = 0; k < m; ++k) out.h_ue_ris[i][k] = g_ir * steer_ir[k];
        }
    }
    return out;
}

}  // namespace risim

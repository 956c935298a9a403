#include "risim/game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "risim/errors.hpp"
#include "risim/rng.hpp"

namespace risim {

std::vector<std::size_t> sic_order(std::span<const double> gains) {
    std::vector<std::size_t> order(gains.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });
    return order;
}

double interference(std::span<const double> gains_sorted, std::span<const double> powers_sorted,
                    std::size_t rank, double i0_watts) {
    if (rank >= gains_sorted.size() || gains_sorted.size() != powers_sorted.size())
        throw IndexOutOfRange("interference: rank out of range");
    double acc = i0_watts;
    for (std::size_t j = 0; j < rank; ++j) acc += gains_sorted[j] * powers_sorted[j];
    return acc;
}

double sinr(double power_watts, double gain, double interference_watts) {
    if (interference_watts <= 0.0)
        throw ZeroInterference("sinr: interference must include positive noise");
    return power_watts * gain / interference_watts;
}

double utility_proposed(double power_watts, double sinr_value, double bandwidth_hz, double alpha,
                        double m_exponent) {
    if (power_watts <= 0.0) throw NonPositivePower("utility_proposed: power must be > 0");
    const double satisfaction = std::pow(1.0 - std::exp(-alpha * sinr_value), m_exponent);
    return bandwidth_hz * satisfaction / power_watts;
}

double utility_literature(double power_watts, double sinr_value, double bandwidth_hz) {
    if (power_watts <= 0.0) throw NonPositivePower("utility_literature: power must be > 0");
    return bandwidth_hz * std::log2(1.0 + sinr_value) / power_watts;
}

double gamma_star(double alpha, double m_exponent) {
    if (alpha <= 0.0 || m_exponent < 1.0)
        throw BracketFailure("gamma_star: requires a > 0 and M >= 1");
    // f'(g) g - f(g) = 0 reduces to (M a g + 1) e^{-a g} - 1 = 0; positive near
    // zero for M > 1, negative at infinity.
    auto residual = [&](double g) {
        return (m_exponent * alpha * g + 1.0) * std::exp(-alpha * g) - 1.0;
    };
    double lo = 1e-9;
    double hi = 1e4;
    if (!(residual(lo) > 0.0) || !(residual(hi) < 0.0))
        throw BracketFailure("gamma_star: no sign change in [1e-9, 1e4]");
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double best_response(std::size_t rank, std::span<const double> gains_sorted,
                     std::span<const double> powers_sorted, double i0_watts,
                     const GameConfig& cfg, double gamma_star_value, bool* sic_infeasible) {
    const double i_i = interference(gains_sorted, powers_sorted, rank, i0_watts);
    const double g = gains_sorted[rank];
    if (g <= 0.0) throw ZeroDirectChannel("best_response: gain must be > 0");

    double target = gamma_star_value * i_i / g;
    if (cfg.w_in_nash) target /= cfg.bandwidth_hz;

    double lower = cfg.hard_p_min ? cfg.p_min_watts : 0.0;
    if (rank > 0) {
        const double sic_bound = (i_i + cfg.p_tol_watts) / g;
        if (sic_bound > cfg.p_max_watts && sic_infeasible) *sic_infeasible = true;
        lower = std::max(lower, sic_bound);
    }
    return std::clamp(std::max(target, lower), 0.0, cfg.p_max_watts);
}

namespace {

GameState evaluate_state(const std::vector<double>& powers, const std::vector<double>& gains,
                         const std::vector<std::size_t>& order, const GameConfig& cfg,
                         double i0_watts) {
    const std::size_t n = gains.size();
    GameState st;
    st.decode_order = order;
    st.powers_watts = powers;
    st.interference_watts.assign(n, 0.0);
    st.sinr.assign(n, 0.0);
    st.utility.assign(n, 0.0);
    st.sic_infeasible.assign(n, false);
    double acc = i0_watts;
    for (std::size_t rank = 0; rank < n; ++rank) {
        const std::size_t ue = order[rank];
        st.interference_watts[ue] = acc;
        st.sinr[ue] = sinr(powers[ue], gains[ue], acc);
        st.utility[ue] = utility_proposed(powers[ue], st.sinr[ue], cfg.bandwidth_hz, cfg.alpha,
                                          cfg.m_exponent);
        acc += gains[ue] * powers[ue];
    }
    return st;
}

}  // namespace

StackelbergResult run_stackelberg_with_gains(std::vector<double> gains, const ChannelSet* channels,
                                             const GameConfig& cfg, std::uint64_t seed) {
    const std::size_t n = gains.size();
    const double i0 = channels ? channels->band.noise_ref_watts()
                               : dbm_to_watts(BandConfig::sub6().noise_ref_dbm);
    const double gstar = gamma_star(cfg.alpha, cfg.m_exponent);

    Rng rng(derive_seed(seed, 99));
    std::vector<double> powers(n);
    for (std::size_t i = 0; i < n; ++i)
        powers[i] = rng.uniform(cfg.init_power_low_watts, cfg.p_max_watts);

    const auto order = sic_order(gains);
    std::vector<double> gains_sorted(n), powers_sorted(n);
    for (std::size_t r = 0; r < n; ++r) gains_sorted[r] = gains[order[r]];

    StackelbergResult result;
    result.gains = gains;
    std::vector<bool> sic_flags(n, false);

    bool converged = false;
    int iter = 0;
    for (iter = 1; iter <= cfg.max_iterations; ++iter) {
        const std::vector<double> prev = powers;
        for (std::size_t r = 0; r < n; ++r) powers_sorted[r] = powers[order[r]];
        for (std::size_t r = 0; r < n; ++r) {
            bool flag = false;
            powers_sorted[r] =
                best_response(r, gains_sorted, powers_sorted, i0, cfg, gstar, &flag);
            powers[order[r]] = powers_sorted[r];
            if (flag) sic_flags[order[r]] = true;
        }
        double max_delta = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            max_delta = std::max(max_delta, std::abs(powers[i] - prev[i]));

        IterationRecord rec;
        rec.iteration = iter;
        rec.powers_watts = powers;
        rec.max_power_delta_watts = max_delta;
        GameState snap = evaluate_state(powers, gains, order, cfg, i0);
        rec.utility = snap.utility;
        rec.objective = 0.0;
        for (std::size_t i = 0; i < n; ++i) rec.objective += powers[i] * gains[i];
        result.trace.push_back(std::move(rec));

        if (max_delta <= cfg.epsilon) {
            converged = true;
            break;
        }
    }

    result.state = evaluate_state(powers, gains, order, cfg, i0);
    result.state.iteration = std::min(iter, cfg.max_iterations);
    result.state.converged = converged;
    result.state.sic_infeasible = sic_flags;

    if (channels && channels->ris_elements() > 0) {
        result.phases = optimize_phases_multi_ue(*channels, powers);
    }
    return result;
}

StackelbergResult run_stackelberg(const ChannelSet& channels, const GameConfig& cfg,
                                  std::uint64_t seed) {
    const std::size_t n = channels.ue_count();
    std::vector<double> gains(n);
    if (channels.ris_elements() == 0) {
        for (std::size_t i = 0; i < n; ++i) gains[i] = std::norm(channels.h_direct[i]);
    } else {
        // Leader step: each UE's channel power gain under its own reflection
        // coefficient vector (closed-form co-phasing).
        for (std::size_t i = 0; i < n; ++i) {
            const auto theta_i = closed_form_phases(channels, i);
            gains[i] = std::norm(channels.h_direct[i] + cascade(channels, theta_i, i));
        }
    }
    return run_stackelberg_with_gains(std::move(gains), &channels, cfg, seed);
}

namespace {

NashReport nash_verify_impl(const GameState& state, std::span<const double> gains,
                            const GameConfig& cfg, int grid_points, double i0_watts,
                            bool parallel) {
    const std::size_t n = gains.size();
    NashReport report;
    report.deviation_gain_rel.assign(n, 0.0);
    report.passed = true;
    if (grid_points < 2) grid_points = 2;

    for (std::size_t ue = 0; ue < n; ++ue) {
        const double i_i = state.interference_watts[ue];
        const double g = gains[ue];
        const double u_star = state.utility[ue];
        const double lo = cfg.p_min_watts;
        const double hi = cfg.p_max_watts;
        const double step = (hi - lo) / static_cast<double>(grid_points - 1);

        double best = -1.0;
        if (parallel) {
            // Fixed chunking keeps the reduction order-independent.
            constexpr int kChunk = 2048;
            const int n_chunks = (grid_points + kChunk - 1) / kChunk;
            std::vector<double> chunk_best(static_cast<std::size_t>(n_chunks), -1.0);
#pragma omp parallel for schedule(static)
            for (int c = 0; c < n_chunks; ++c) {
                double local = -1.0;
                const int begin = c * kChunk;
                const int end = std::min(grid_points, begin + kChunk);
                for (int k = begin; k < end; ++k) {
                    const double p = lo + step * static_cast<double>(k);
                    const double u = utility_proposed(p, p * g / i_i, cfg.bandwidth_hz, cfg.alpha,
                                                      cfg.m_exponent);
                    local = std::max(local, u);
                }
                chunk_best[c] = local;
            }
            for (double b : chunk_best) best = std::max(best, b);
        } else {
            for (int k = 0; k < grid_points; ++k) {
                const double p = lo + step * static_cast<double>(k);
                const double u = utility_proposed(p, p * g / i_i, cfg.bandwidth_hz, cfg.alpha,
                                                  cfg.m_exponent);
                best = std::max(best, u);
            }
        }

        const double rel = (best - u_star) / std::max(u_star, 1e-300);
        report.deviation_gain_rel[ue] = rel;
        if (rel > report.tolerance) report.passed = false;
    }
    (void)i0_watts;
    return report;
}

}  // namespace

NashReport nash_verify(const GameState& state, std::span<const double> gains,
                       const GameConfig& cfg, int grid_points, double i0_watts) {
    return nash_verify_impl(state, gains, cfg, grid_points, i0_watts, true);
}

NashReport nash_verify_serial(const GameState& state, std::span<const double> gains,
                              const GameConfig& cfg, int grid_points, double i0_watts) {
    return nash_verify_impl(state, gains, cfg, grid_points, i0_watts, false);
}

std::string trace_to_csv(const StackelbergResult& result, std::uint64_t seed) {
    std::string out;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "# seed=%llu\n", static_cast<unsigned long long>(seed));
    out += buf;
    const std::size_t n = result.state.powers_watts.size();
    out += "iteration";
    for (std::size_t i = 0; i < n; ++i) out += ",p_dbm_ue" + std::to_string(i);
    for (std::size_t i = 0; i < n; ++i) out += ",utility_ue" + std::to_string(i);
    out += ",objective\n";
    for (const auto& rec : result.trace) {
        out += std::to_string(rec.iteration);
        for (std::size_t i = 0; i < n; ++i) {
            std::snprintf(buf, sizeof(buf), ",%.17g", watts_to_dbm(rec.powers_watts[i]));
            out += buf;
        }
        for (std::size_t i = 0; i < n; ++i) {
            std::snprintf(buf, sizeof(buf), ",%.17g", rec.utility[i]);
            out += buf;
        }
        std::snprintf(buf, sizeof(buf), ",%.17g\n", rec.objective);
        out += buf;
    }
    return out;
}

}  // namespace risim

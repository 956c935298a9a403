// Timing comparison of the OpenMP kernels against their serial references.
// The parallel paths must also be bit-identical to the serial ones.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "risim/channel.hpp"
#include "risim/game.hpp"
#include "risim/rng.hpp"

using namespace risim;

namespace {

template <typename F>
double time_ms(F&& fn, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif

    // Channel realization averaging.
    LinkSpec link;
    link.condition = Condition::Nlos;
    link.distance_m = 55.0;
    link.link_id = derive_seed(1, 0);
    const int n_real = 200000;

    cplx serial_gain{};
    cplx parallel_gain{};
    const double t_ser = time_ms([&] { serial_gain = average_channel_serial(link, n_real, 42); });
    const double t_par = time_ms([&] { parallel_gain = average_channel(link, n_real, 42); });
    const bool chan_match = serial_gain == parallel_gain;
    std::printf("average_channel   n=%d      serial %8.2f ms   omp %8.2f ms   speedup %5.2fx   %s\n",
                n_real, t_ser, t_par, t_ser / t_par, chan_match ? "bit-identical" : "MISMATCH");

    // Nash grid verification.
    const std::size_t n_ues = 5;
    GameConfig cfg;
    GameState state;
    std::vector<double> gains(n_ues);
    state.powers_watts.assign(n_ues, 0.0);
    state.interference_watts.assign(n_ues, 0.0);
    state.sinr.assign(n_ues, 0.0);
    state.utility.assign(n_ues, 0.0);
    const double gstar = gamma_star(cfg.alpha, cfg.m_exponent);
    Rng rng(7);
    for (std::size_t i = 0; i < n_ues; ++i) {
        gains[i] = 1e-12 * (1.0 + rng.next_double());
        state.interference_watts[i] = 1e-17 * (1.0 + 10.0 * rng.next_double());
        const double target = gstar * state.interference_watts[i] / gains[i];
        state.powers_watts[i] = std::min(target, cfg.p_max_watts);
        state.sinr[i] = state.powers_watts[i] * gains[i] / state.interference_watts[i];
        state.utility[i] = utility_proposed(state.powers_watts[i], state.sinr[i],
                                            cfg.bandwidth_hz, cfg.alpha, cfg.m_exponent);
    }
    const int grid = 2000000;
    NashReport rep_ser;
    NashReport rep_par;
    const double t_nser =
        time_ms([&] { rep_ser = nash_verify_serial(state, gains, cfg, grid, 1e-17); });
    const double t_npar = time_ms([&] { rep_par = nash_verify(state, gains, cfg, grid, 1e-17); });
    const bool nash_match = rep_ser.deviation_gain_rel == rep_par.deviation_gain_rel;
    std::printf("nash_verify       grid=%d serial %8.2f ms   omp %8.2f ms   speedup %5.2fx   %s\n",
                grid, t_nser, t_npar, t_nser / t_npar, nash_match ? "bit-identical" : "MISMATCH");

    return (chan_match && nash_match) ? 0 : 1;
}

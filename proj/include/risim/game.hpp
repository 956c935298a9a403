#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "risim/ris.hpp"

namespace risim {

struct GameConfig {
    double alpha = 0.3;
    double m_exponent = 3.0;
    double p_min_watts = dbm_to_watts(-20.0);  // strategy-set floor for grids/init
    double p_max_watts = dbm_to_watts(23.0);
    double p_tol_watts = dbm_to_watts(-150.0);
    double epsilon = 1e-4;  // watts
    int max_iterations = 1000;
    bool w_in_nash = false;   // divide the best-response target by W when true
    bool hard_p_min = false;  // clamp best responses at p_min_watts when true
    double init_power_low_watts = 1e-5;
    double bandwidth_hz = 10e6;
};

struct GameState {
    std::vector<std::size_t> decode_order;  // UE ids, gain-descending
    std::vector<double> powers_watts;       // indexed by UE id
    std::vector<double> interference_watts;
    std::vector<double> sinr;
    std::vector<double> utility;
    std::vector<bool> sic_infeasible;
    int iteration = 0;
    bool converged = false;
};

struct IterationRecord {
    int iteration = 0;
    std::vector<double> powers_watts;
    std::vector<double> utility;
    double objective = 0.0;  // sum_i P_i * G_i
    double max_power_delta_watts = 0.0;
};

struct StackelbergResult {
    PhaseShiftVector phases;  // shared leader vector at the converged powers
    GameState state;
    std::vector<double> gains;  // per-UE effective gains used by the game
    std::vector<IterationRecord> trace;
};

// Gain-descending order; ties keep the lower UE id first.
std::vector<std::size_t> sic_order(std::span<const double> gains);

// I at decode rank `rank`: sum of G_j * P_j over strictly earlier-decoded UEs
// plus i0. Inputs are in decode order.
double interference(std::span<const double> gains_sorted, std::span<const double> powers_sorted,
                    std::size_t rank, double i0_watts);

double sinr(double power_watts, double gain, double interference_watts);

// W * (1 - e^{-a*sinr})^M / P
double utility_proposed(double power_watts, double sinr_value, double bandwidth_hz, double alpha,
                        double m_exponent);

// W * log2(1 + sinr) / P
double utility_literature(double power_watts, double sinr_value, double bandwidth_hz);

// Unique positive root of f'(g)*g - f(g) = 0 with f(g) = (1 - e^{-a g})^M,
// by bisection on [1e-9, 1e4]. Throws BracketFailure when no sign change
// exists (e.g. M = 1).
double gamma_star(double alpha, double m_exponent);

// Best-response power of the UE at decode rank `rank`. The SIC lower bound
// (I + P_tol)/G applies to every rank but the first; cfg.hard_p_min adds the
// constant floor. When the SIC bound exceeds p_max the result clips to p_max
// and *sic_infeasible is set.
double best_response(std::size_t rank, std::span<const double> gains_sorted,
                     std::span<const double> powers_sorted, double i0_watts,
                     const GameConfig& cfg, double gamma_star_value,
                     bool* sic_infeasible = nullptr);

// Stackelberg loop: seeded random power init in [init_power_low, p_max], leader
// phase adaptation, gain computation, SIC sort, then Gauss-Seidel
// best-response rounds in decode order until max |dP| <= epsilon.
//
// Leader model: each UE's gain is evaluated at its own closed-form phase
// vector (the per-UE reflection coefficients of the multi-UE solution); the
// returned shared PhaseShiftVector maximizes the power-weighted sum gain at
// the converged powers and is what gets exported to scenario files.
StackelbergResult run_stackelberg(const ChannelSet& channels, const GameConfig& cfg,
                                  std::uint64_t seed);

// As above but with externally supplied per-UE gains (used by presets that
// sweep gain models).
StackelbergResult run_stackelberg_with_gains(std::vector<double> gains, const ChannelSet* channels,
                                             const GameConfig& cfg, std::uint64_t seed);

struct NashReport {
    std::vector<double> deviation_gain_rel;  // max grid utility gain, relative
    bool passed = false;
    double tolerance = 1e-6;
};

// Nash deviation-gain grid oracle: evaluates each UE's utility over grid_points
// powers in [p_min, p_max] holding the others fixed. OpenMP-parallel with a
// deterministic chunked reduction; nash_verify_serial is the reference.
NashReport nash_verify(const GameState& state, std::span<const double> gains,
                       const GameConfig& cfg, int grid_points, double i0_watts);
NashReport nash_verify_serial(const GameState& state, std::span<const double> gains,
                              const GameConfig& cfg, int grid_points, double i0_watts);

// Trace CSV: iteration, per-UE power (dBm), per-UE utility, objective.
std::string trace_to_csv(const StackelbergResult& result, std::uint64_t seed);

}  // namespace risim

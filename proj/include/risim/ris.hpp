#pragma once

#include <span>
#include <vector>

#include "risim/channel.hpp"

namespace risim {

struct PhaseShiftVector {
    std::vector<double> theta;  // each in [0, 2*pi)

    std::size_t size() const { return theta.size(); }
};

double wrap_phase(double rad);  // into [0, 2*pi)

// RIS contribution sum_m conj(h_RU,m) * e^{j theta_m} * h_iR,m.
cplx cascade(const ChannelSet& channels, const PhaseShiftVector& phases, std::size_t ue);

// Phases that co-phase the cascade with h_iU, so |h_total| reaches
// |h_iU| + sum_m |h_RU,m||h_iR,m|.
PhaseShiftVector closed_form_phases(const ChannelSet& channels, std::size_t ue);

struct AscentStats {
    int sweeps = 0;
    std::vector<double> objective_trace;  // objective after each sweep
};

// Element-wise coordinate ascent on sum_i powers[i] * G_i(theta), initialized
// from the best single-UE closed-form candidate plus a few fixed restarts.
// The per-sweep objective is non-decreasing; stops when the relative
// improvement drops below 1e-10 or after 500 sweeps.
PhaseShiftVector optimize_phases_multi_ue(const ChannelSet& channels,
                                          std::span<const double> powers_watts,
                                          AscentStats* stats = nullptr);

// G_i = |h_iU + cascade_i|^2; with |M| = 0 this is |h_iU|^2.
std::vector<double> effective_gains(const ChannelSet& channels, const PhaseShiftVector& phases);

double weighted_gain_objective(const ChannelSet& channels, const PhaseShiftVector& phases,
                               std::span<const double> powers_watts);

}  // namespace risim

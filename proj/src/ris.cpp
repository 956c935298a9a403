#include "risim/ris.hpp"

#include <algorithm>
#include <cmath>

#include "risim/errors.hpp"
#include "risim/rng.hpp"

namespace risim {

double wrap_phase(double rad) {
    double w = std::fmod(rad, 2.0 * M_PI);
    if (w < 0.0) w += 2.0 * M_PI;
    return w;
}

namespace {

void check_dims(const ChannelSet& channels, const PhaseShiftVector& phases, std::size_t ue) {
    if (ue >= channels.ue_count()) throw IndexOutOfRange("cascade: ue index out of range");
    if (phases.size() != channels.ris_elements())
        throw DimensionMismatch("cascade: phase vector length != |M|");
    if (channels.ris_elements() > 0 && channels.h_ue_ris[ue].size() != channels.ris_elements())
        throw DimensionMismatch("cascade: h_iR length != |M|");
}

// Per-element cascade terms a_{i,m} = conj(h_RU,m) * h_iR,m.
std::vector<cplx> cascade_terms(const ChannelSet& channels, std::size_t ue) {
    const std::size_t m = channels.ris_elements();
    std::vector<cplx> a(m);
    for (std::size_t k = 0; k < m; ++k) {
        a[k] = std::conj(channels.h_ris_uav[k]) * channels.h_ue_ris[ue][k];
    }
    return a;
}

}  // namespace

cplx cascade(const ChannelSet& channels, const PhaseShiftVector& phases, std::size_t ue) {
    check_dims(channels, phases, ue);
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < channels.ris_elements(); ++k) {
        acc += std::conj(channels.h_ris_uav[k]) * std::polar(1.0, phases.theta[k]) *
               channels.h_ue_ris[ue][k];
    }
    return acc;
}

PhaseShiftVector closed_form_phases(const ChannelSet& channels, std::size_t ue) {
    if (ue >= channels.ue_count()) throw IndexOutOfRange("closed_form_phases: ue out of range");
    if (channels.ris_elements() == 0)
        throw DimensionMismatch("closed_form_phases: |M| must be >= 1");
    const cplx h_direct = channels.h_direct[ue];
    if (h_direct == cplx{0.0, 0.0})
        throw ZeroDirectChannel("closed_form_phases: phase of h_iU undefined");
    const double direct_angle = std::arg(h_direct);

    PhaseShiftVector out;
    out.theta.resize(channels.ris_elements());
    for (std::size_t k = 0; k < channels.ris_elements(); ++k) {
        // Co-phase each cascaded term with the direct channel:
        // theta_m = angle(h_iU) - omega_m + angle(h_RU,m), omega_m = angle(h_iR,m).
        const cplx term = std::conj(channels.h_ris_uav[k]) * channels.h_ue_ris[ue][k];
        out.theta[k] = wrap_phase(direct_angle - std::arg(term));
    }
    return out;
}

std::vector<double> effective_gains(const ChannelSet& channels, const PhaseShiftVector& phases) {
    if (phases.size() != channels.ris_elements())
        throw DimensionMismatch("effective_gains: phase vector length != |M|");
    std::vector<double> gains(channels.ue_count());
    for (std::size_t i = 0; i < channels.ue_count(); ++i) {
        const cplx total =
            channels.h_direct[i] + (channels.ris_elements() > 0 ? cascade(channels, phases, i)
                                                                : cplx{0.0, 0.0});
        gains[i] = std::norm(total);
    }
    return gains;
}

double weighted_gain_objective(const ChannelSet& channels, const PhaseShiftVector& phases,
                               std::span<const double> powers_watts) {
    if (powers_watts.size() != channels.ue_count())
        throw DimensionMismatch("weighted_gain_objective: power vector length != |I|");
    const auto gains = effective_gains(channels, phases);
    double obj = 0.0;
    for (std::size_t i = 0; i < gains.size(); ++i) obj += powers_watts[i] * gains[i];
    return obj;
}

namespace {

struct AscentWorkspace {
    std::vector<std::vector<cplx>> terms;  // per UE, per element
    std::vector<cplx> totals;              // per UE current h_total
};

double ascend(const ChannelSet& channels, std::span<const double> p, PhaseShiftVector& theta,
              AscentWorkspace& ws, AscentStats* stats) {
    const std::size_t n_ues = channels.ue_count();
    const std::size_t m = channels.ris_elements();

    ws.totals.assign(n_ues, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n_ues; ++i) {
        cplx acc = channels.h_direct[i];
        for (std::size_t k = 0; k < m; ++k)
            acc += ws.terms[i][k] * std::polar(1.0, theta.theta[k]);
        ws.totals[i] = acc;
    }
    auto objective = [&]() {
        double o = 0.0;
        for (std::size_t i = 0; i < n_ues; ++i) o += p[i] * std::norm(ws.totals[i]);
        return o;
    };

    double obj = objective();
    for (int sweep = 0; sweep < 500; ++sweep) {
        for (std::size_t k = 0; k < m; ++k) {
            const cplx rot = std::polar(1.0, theta.theta[k]);
            cplx z{0.0, 0.0};
            for (std::size_t i = 0; i < n_ues; ++i) {
                const cplx rest = ws.totals[i] - ws.terms[i][k] * rot;
                z += p[i] * rest * std::conj(ws.terms[i][k]);
                ws.totals[i] = rest;
            }
            const double new_theta = (z == cplx{0.0, 0.0}) ? theta.theta[k]
                                                           : wrap_phase(std::arg(z));
            theta.theta[k] = new_theta;
            const cplx new_rot = std::polar(1.0, new_theta);
            for (std::size_t i = 0; i < n_ues; ++i) ws.totals[i] += ws.terms[i][k] * new_rot;
        }
        // Refresh totals to keep incremental drift out of the stop test.
        for (std::size_t i = 0; i < n_ues; ++i) {
            cplx acc = channels.h_direct[i];
            for (std::size_t k = 0; k < m; ++k)
                acc += ws.terms[i][k] * std::polar(1.0, theta.theta[k]);
            ws.totals[i] = acc;
        }
        const double new_obj = objective();
        if (stats) {
            stats->sweeps = sweep + 1;
            stats->objective_trace.push_back(new_obj);
        }
        if (new_obj - obj <= 1e-10 * std::abs(obj)) {
            obj = std::max(obj, new_obj);
            break;
        }
        obj = new_obj;
    }
    return obj;
}

}  // namespace

PhaseShiftVector optimize_phases_multi_ue(const ChannelSet& channels,
                                          std::span<const double> powers_watts,
                                          AscentStats* stats) {
    const std::size_t n_ues = channels.ue_count();
    const std::size_t m = channels.ris_elements();
    if (powers_watts.size() != n_ues)
        throw DimensionMismatch("optimize_phases_multi_ue: power vector length != |I|");
    if (m == 0) throw DimensionMismatch("optimize_phases_multi_ue: |M| must be >= 1");
    bool any_active = false;
    for (double p : powers_watts) {
        if (p < 0.0) throw NoActiveUsers("optimize_phases_multi_ue: negative power");
        if (p > 0.0) any_active = true;
    }
    if (!any_active) throw NoActiveUsers("optimize_phases_multi_ue: all powers zero");

    AscentWorkspace ws;
    ws.terms.resize(n_ues);
    for (std::size_t i = 0; i < n_ues; ++i) ws.terms[i] = cascade_terms(channels, i);

    // Candidate starts: each active UE's closed-form vector plus fixed seeded
    // restarts; small |M| objectives are multi-modal enough to warrant them.
    std::vector<PhaseShiftVector> candidates;
    for (std::size_t i = 0; i < n_ues; ++i) {
        if (powers_watts[i] <= 0.0) continue;
        if (channels.h_direct[i] == cplx{0.0, 0.0}) continue;
        candidates.push_back(closed_form_phases(channels, i));
    }
    const int n_restarts = m <= 8 ? 4 : 1;
    for (int r = 0; r < n_restarts; ++r) {
        Rng rng(derive_seed(0x9d5ab9e0c3f8b1d7ULL, static_cast<std::uint64_t>(r)));
        PhaseShiftVector v;
        v.theta.resize(m);
        for (std::size_t k = 0; k < m; ++k) v.theta[k] = rng.uniform(0.0, 2.0 * M_PI);
        candidates.push_back(std::move(v));
    }
    if (candidates.empty()) {
        PhaseShiftVector zero;
        zero.theta.assign(m, 0.0);
        candidates.push_back(std::move(zero));
    }

    PhaseShiftVector best;
    double best_obj = -1.0;
    AscentStats best_stats;
    for (auto& cand : candidates) {
        AscentStats local;
        PhaseShiftVector theta = cand;
        const double obj = ascend(channels, powers_watts, theta, ws, &local);
        if (obj > best_obj) {
            best_obj = obj;
            best = std::move(theta);
            best_stats = std::move(local);
        }
    }
    if (stats) *stats = std::move(best_stats);
    return best;
}

}  // namespace risim

#include "risim/scheduler.hpp"

#include <algorithm>
#include <cmath>

#include "risim/channel.hpp"
#include "risim/errors.hpp"
#include "risim/game.hpp"
#include "risim/rng.hpp"
#include "risim/units.hpp"

namespace risim {

double link_rate_per_prb(double sinr) {
    if (sinr < 0.0) sinr = 0.0;
    const double se = std::min(kLinkEfficiency * std::log2(1.0 + sinr), kMaxSpectralEfficiency);
    return kPrbBandwidthHz * kTtiSeconds * se;
}

std::vector<int> rr_allocate(const SliceConfig& slice, const std::vector<double>& queue_bytes,
                             const std::vector<double>& rates_bits_per_prb, int* rr_pointer) {
    (void)rates_bits_per_prb;
    const std::size_t n = slice.ue_ids.size();
    std::vector<int> alloc(n, 0);
    if (n == 0 || slice.prbs <= 0) return alloc;

    int pointer = rr_pointer ? *rr_pointer % static_cast<int>(n) : 0;
    for (int prb = 0; prb < slice.prbs; ++prb) {
        bool assigned = false;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t j = (static_cast<std::size_t>(pointer) + k) % n;
            if (queue_bytes[slice.ue_ids[j]] > 0.0) {
                ++alloc[j];
                pointer = static_cast<int>((j + 1) % n);
                assigned = true;
                break;
            }
        }
        if (!assigned) break;  // nobody backlogged
    }
    if (rr_pointer) *rr_pointer = pointer;
    return alloc;
}

std::vector<int> wf_allocate(const SliceConfig& slice, const std::vector<double>& queue_bytes,
                             const std::vector<double>& rates_bits_per_prb) {
    const std::size_t n = slice.ue_ids.size();
    std::vector<int> alloc(n, 0);
    if (n == 0 || slice.prbs <= 0) return alloc;

    std::vector<double> bits(n, 0.0);
    for (int prb = 0; prb < slice.prbs; ++prb) {
        std::size_t best = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (queue_bytes[slice.ue_ids[j]] <= 0.0) continue;
            if (best == n || bits[j] < bits[best]) best = j;
        }
        if (best == n) break;
        ++alloc[best];
        bits[best] += rates_bits_per_prb[best];
    }
    return alloc;
}

SliceSimState make_slice_sim(std::vector<SliceConfig> slices, std::vector<TrafficSource> traffic,
                             std::vector<double> sinr) {
    SliceSimState st;
    st.slices = std::move(slices);
    st.traffic = std::move(traffic);
    st.sinr = std::move(sinr);
    st.queue_bytes.assign(st.traffic.size(), 0.0);
    st.cbr_residual.assign(st.traffic.size(), 0.0);
    st.rr_pointers.assign(st.slices.size(), 0);
    st.tti = 0;
    return st;
}

TtiRecord step_tti(SliceSimState& state) {
    const std::size_t n = state.ue_count();
    TtiRecord rec;
    rec.tti_index = state.tti;
    rec.served_bytes.assign(n, 0.0);
    rec.slice_throughput_bps.assign(state.slices.size(), 0.0);

    // Arrivals.
    for (std::size_t u = 0; u < n; ++u) {
        const TrafficSource& src = state.traffic[u];
        const double mean_bytes = src.rate_bps * kTtiSeconds / 8.0;
        if (src.kind == TrafficKind::Cbr) {
            state.cbr_residual[u] += mean_bytes;
            const double whole = std::floor(state.cbr_residual[u]);
            state.queue_bytes[u] += whole;
            state.cbr_residual[u] -= whole;
        } else {
            Rng rng(derive_seed(src.seed, 0xA11, static_cast<std::uint64_t>(state.tti)));
            state.queue_bytes[u] += static_cast<double>(rng.poisson(mean_bytes));
        }
    }

    // Per-slice allocation and service.
    for (std::size_t s = 0; s < state.slices.size(); ++s) {
        const SliceConfig& slice = state.slices[s];
        std::vector<double> rates(slice.ue_ids.size());
        for (std::size_t j = 0; j < slice.ue_ids.size(); ++j)
            rates[j] = link_rate_per_prb(state.sinr[slice.ue_ids[j]]);

        std::vector<int> alloc;
        if (slice.scheduler == SchedulerKind::RoundRobin) {
            alloc = rr_allocate(slice, state.queue_bytes, rates, &state.rr_pointers[s]);
        } else {
            alloc = wf_allocate(slice, state.queue_bytes, rates);
        }

        double slice_bytes = 0.0;
        for (std::size_t j = 0; j < slice.ue_ids.size(); ++j) {
            const std::size_t u = slice.ue_ids[j];
            const double capacity_bytes = alloc[j] * rates[j] / 8.0;
            const double served = std::min(state.queue_bytes[u], capacity_bytes);
            state.queue_bytes[u] -= served;
            rec.served_bytes[u] = served;
            slice_bytes += served;
        }
        rec.slice_throughput_bps[s] = slice_bytes * 8.0 / kTtiSeconds;
    }

    rec.queue_bytes = state.queue_bytes;
    ++state.tti;
    return rec;
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    double m = values[mid];
    if (values.size() % 2 == 0) {
        std::nth_element(values.begin(), values.begin() + mid - 1, values.begin() + mid);
        m = 0.5 * (m + values[mid - 1]);
    }
    return m;
}

std::vector<SchedulerKind> setup_schedulers(int setup_id) {
    switch (setup_id) {
        case 1: return {SchedulerKind::RoundRobin, SchedulerKind::RoundRobin};
        case 2: return {SchedulerKind::RoundRobin, SchedulerKind::Waterfilling};
        case 3: return {SchedulerKind::Waterfilling, SchedulerKind::RoundRobin};
        case 4: return {SchedulerKind::Waterfilling, SchedulerKind::Waterfilling};
        default: throw IndexOutOfRange("setup_schedulers: setup must be in {1,2,3,4}");
    }
}

std::vector<double> dl_sinrs_from_gains(const std::vector<double>& gains,
                                        const CampaignConfig& cfg) {
    const double p_prb = dbm_to_watts(cfg.dl_tx_power_dbm) / static_cast<double>(kTotalPrbs);
    const double noise_prb_dbm =
        -174.0 + 10.0 * std::log10(kPrbBandwidthHz) + cfg.noise_figure_db;
    const double n_prb = dbm_to_watts(noise_prb_dbm);
    std::vector<double> out(gains.size());
    for (std::size_t i = 0; i < gains.size(); ++i) out[i] = p_prb * gains[i] / n_prb;
    return out;
}

KpmSummary run_campaign(int setup_id, ChannelMode mode, long duration_ttis, std::uint64_t seed,
                        const CampaignConfig& cfg, std::vector<TtiRecord>* trace) {
    const auto sched = setup_schedulers(setup_id);

    // Per-UE path gains averaged over independent experiment repetitions
    // (fresh placement and fading per repetition), as in the emulation
    // campaign's repeated experiments.
    const BandConfig band = BandConfig::sub6();
    GbsmConfig gbsm;
    gbsm.n_realizations = cfg.realizations;
    const std::size_t n_ues = paper_ue_ring_radii().size();
    std::vector<double> mean_gains(n_ues, 0.0);
    const std::size_t m_elements = mode == ChannelMode::Ris100 ? 100 : 0;
    for (int b = 0; b < cfg.repetitions; ++b) {
        const auto topo = make_paper_topology(band, m_elements, paper_ue_ring_radii(),
                                              derive_seed(seed, 50, static_cast<std::uint64_t>(b)));
        const auto channels = build_channel_set(topo, derive_seed(seed, 51, static_cast<std::uint64_t>(b)),
                                                gbsm);
        for (std::size_t i = 0; i < n_ues; ++i) {
            if (m_elements == 0) {
                mean_gains[i] += std::norm(channels.h_direct[i]);
            } else {
                const auto theta_i = closed_form_phases(channels, i);
                mean_gains[i] +=
                    std::norm(channels.h_direct[i] + cascade(channels, theta_i, i));
            }
        }
    }
    for (double& g : mean_gains) g /= static_cast<double>(cfg.repetitions);

    const auto sinrs = dl_sinrs_from_gains(mean_gains, cfg);

    // Slice mapping: two highest reported path gains -> eMBB, rest -> URLLC.
    const auto order = sic_order(mean_gains);
    std::vector<std::size_t> embb(order.begin(), order.begin() + 2);
    std::vector<std::size_t> urllc(order.begin() + 2, order.end());
    std::sort(embb.begin(), embb.end());
    std::sort(urllc.begin(), urllc.end());

    std::vector<SliceConfig> slices(2);
    slices[0] = {SliceKind::Embb, cfg.embb_prbs, embb, sched[0]};
    slices[1] = {SliceKind::Urllc, cfg.urllc_prbs, urllc, sched[1]};

    std::vector<TrafficSource> traffic(n_ues);
    for (std::size_t u : embb) traffic[u] = {TrafficKind::Cbr, cfg.embb_rate_bps, 0};
    for (std::size_t u : urllc)
        traffic[u] = {TrafficKind::Poisson, cfg.urllc_rate_bps, derive_seed(seed, 60, u)};

    SliceSimState sim = make_slice_sim(slices, traffic, sinrs);

    std::vector<std::vector<double>> queues(n_ues);
    std::vector<std::vector<double>> served(n_ues);
    for (long t = 0; t < duration_ttis; ++t) {
        TtiRecord rec = step_tti(sim);
        for (std::size_t u = 0; u < n_ues; ++u) {
            queues[u].push_back(rec.queue_bytes[u]);
            served[u].push_back(rec.served_bytes[u]);
        }
        if (trace) trace->push_back(std::move(rec));
    }

    // Median across TTIs, then across the slice's UEs.
    std::vector<double> embb_tput;
    for (std::size_t u : embb) {
        const double med_bytes = median(served[u]);
        embb_tput.push_back(med_bytes * 8.0 / kTtiSeconds / 1e6);
    }
    std::vector<double> urllc_buf;
    for (std::size_t u : urllc) urllc_buf.push_back(median(queues[u]));

    KpmSummary out;
    out.embb_median_throughput_mbps = median(std::move(embb_tput));
    out.urllc_median_buffer_bytes = median(std::move(urllc_buf));
    return out;
}

}  // namespace risim

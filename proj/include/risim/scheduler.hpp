#pragma once

#include <cstdint>
#include <vector>

namespace risim {

enum class SliceKind { Embb, Urllc };
enum class SchedulerKind { RoundRobin, Waterfilling };
enum class TrafficKind { Cbr, Poisson };
enum class ChannelMode { RisOff, Ris100 };

inline constexpr int kTotalPrbs = 50;          // 10 MHz
inline constexpr double kPrbBandwidthHz = 180e3;
inline constexpr double kTtiSeconds = 1e-3;
inline constexpr double kLinkEfficiency = 0.75;
inline constexpr double kMaxSpectralEfficiency = 6.0;  // b/s/Hz

struct SliceConfig {
    SliceKind name = SliceKind::Embb;
    int prbs = 0;
    std::vector<std::size_t> ue_ids;
    SchedulerKind scheduler = SchedulerKind::RoundRobin;
};

struct TrafficSource {
    TrafficKind kind = TrafficKind::Cbr;
    double rate_bps = 0.0;
    std::uint64_t seed = 0;
};

struct TtiRecord {
    long tti_index = 0;
    std::vector<double> served_bytes;  // indexed by UE id
    std::vector<double> queue_bytes;   // after service
    std::vector<double> slice_throughput_bps;
};

// Servable bits per PRB per TTI at the given SINR.
double link_rate_per_prb(double sinr);

// Round robin over backlogged UEs with a pointer persisted across TTIs.
std::vector<int> rr_allocate(const SliceConfig& slice, const std::vector<double>& queue_bytes,
                             const std::vector<double>& rates_bits_per_prb, int* rr_pointer);

// Greedy waterfilling: each PRB goes to the backlogged UE with the lowest
// bits allocated so far this TTI, ties to the lower index.
std::vector<int> wf_allocate(const SliceConfig& slice, const std::vector<double>& queue_bytes,
                             const std::vector<double>& rates_bits_per_prb);

struct SliceSimState {
    std::vector<SliceConfig> slices;
    std::vector<TrafficSource> traffic;    // indexed by UE id
    std::vector<double> sinr;              // indexed by UE id, fixed
    std::vector<double> queue_bytes;       // indexed by UE id
    std::vector<double> cbr_residual;      // fractional byte carry per UE
    std::vector<int> rr_pointers;          // per slice
    long tti = 0;

    std::size_t ue_count() const { return traffic.size(); }
};

SliceSimState make_slice_sim(std::vector<SliceConfig> slices, std::vector<TrafficSource> traffic,
                             std::vector<double> sinr);

TtiRecord step_tti(SliceSimState& state);

struct KpmSummary {
    double embb_median_throughput_mbps = 0.0;
    double urllc_median_buffer_bytes = 0.0;
};

struct CampaignConfig {
    int setup_id = 1;  // scheduling profile: 1 RR/RR, 2 RR/WF, 3 WF/RR, 4 WF/WF
    long duration_ttis = 10000;
    double dl_tx_power_dbm = 14.5;   // BS power across all 50 PRBs
    double noise_figure_db = 9.0;
    int repetitions = 100;           // channel experiment repetitions averaged
    int realizations = 100;
    double embb_rate_bps = 4e6;
    double urllc_rate_bps = 89.3e3;
    int embb_prbs = 45;
    int urllc_prbs = 5;
};

// DL SINR per UE from the measured path gains: (P_bs / 50) * G_i / N_prb with
// thermal noise plus noise figure over one PRB.
std::vector<double> dl_sinrs_from_gains(const std::vector<double>& gains,
                                        const CampaignConfig& cfg);

// Full Table-III/IV style campaign: averages per-UE effective path gains over
// `repetitions` independent channel experiments (ris_off: direct-only;
// ris_100: 100-element RIS with per-UE phase alignment), maps the two highest
// gains to eMBB and the rest to URLLC, then runs the TTI simulator.
KpmSummary run_campaign(int setup_id, ChannelMode mode, long duration_ttis, std::uint64_t seed,
                        const CampaignConfig& cfg = {},
                        std::vector<TtiRecord>* trace = nullptr);

double median(std::vector<double> values);

std::vector<SchedulerKind> setup_schedulers(int setup_id);  // {eMBB, URLLC}

}  // namespace risim

#include "risim/scenario.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "risim/errors.hpp"
#include "risim/rng.hpp"

namespace risim {

namespace {

constexpr const char* kGeneratorVersion = "risim-1.0";

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ScenarioFile build_scenario(const Topology& topology, const ChannelSet& channels,
                            const PhaseShiftVector& phases, std::uint64_t seed,
                            const GbsmConfig& gbsm) {
    if (channels.ue_count() != topology.ue_positions.size())
        throw DimensionMismatch("build_scenario: channel set does not match topology");
    if (phases.size() != channels.ris_elements())
        throw DimensionMismatch("build_scenario: phase vector length != |M|");

    ScenarioFile sc;
    sc.band_name = topology.band.carrier_frequency_hz < 10e9 ? "sub6" : "mmwave";
    sc.carrier_frequency_hz = topology.band.carrier_frequency_hz;
    sc.seed = seed;
    sc.ris_elements = topology.ris_elements;
    sc.generator_version = kGeneratorVersion;

    struct Node {
        std::string name;
        Position3D pos;
    };
    std::vector<Node> nodes;
    nodes.push_back({"uav", topology.uav});
    nodes.push_back({"ris", topology.ris_ref});
    for (std::size_t i = 0; i < topology.ue_positions.size(); ++i)
        nodes.push_back({"ue" + std::to_string(i), topology.ue_positions[i]});

    // Scalar LOS gain of a RIS-adjacent link, taken from element 0 (the
    // reference element carries the unsteered averaged gain).
    auto ris_scalar = [&](const std::vector<cplx>& v) {
        return v.empty() ? cplx{0.0, 0.0} : v[0];
    };

    int pair_id = 0;
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        for (std::size_t b = a + 1; b < nodes.size(); ++b) {
            ScenarioRecord rec;
            rec.pair_id = pair_id++;
            rec.node_a = nodes[a].name;
            rec.node_b = nodes[b].name;
            rec.toa_s = time_of_arrival(nodes[a].pos, nodes[b].pos);

            cplx tap{0.0, 0.0};
            if (a == 0 && b == 1) {
                tap = ris_scalar(channels.h_ris_uav);
            } else if (a == 0) {
                const std::size_t ue = b - 2;
                tap = channels.h_direct[ue];
                if (channels.ris_elements() > 0) tap += cascade(channels, phases, ue);
            } else if (a == 1) {
                const std::size_t ue = b - 2;
                tap = ris_scalar(channels.h_ue_ris[ue]);
            } else {
                // UE-to-UE side links: NLOS, generated on the fly.
                const std::size_t u1 = a - 2;
                const std::size_t u2 = b - 2;
                LinkSpec link;
                link.condition = Condition::Nlos;
                link.distance_m =
                    euclidean_distance(topology.ue_positions[u1], topology.ue_positions[u2]);
                if (link.distance_m <= 0.0) link.distance_m = 1e-3;
                link.fc_hz = topology.band.carrier_frequency_hz;
                link.wavelength_m = topology.band.wavelength_m();
                link.model = gbsm.nlos_model;
                link.k_factor_db = gbsm.k_factor_db;
                link.delay_spread_s = gbsm.delay_spread_s;
                link.n_paths = gbsm.n_paths;
                link.link_id = derive_seed(4, u1 * 97 + u2);
                tap = average_channel(link, gbsm.n_realizations, seed);
            }
            rec.tap_re = tap.real();
            rec.tap_im = tap.imag();
            sc.records.push_back(std::move(rec));
        }
    }
    return sc;
}

std::string scenario_to_string(const ScenarioFile& sc) {
    std::ostringstream out;
    out << "# risim-scenario v" << sc.format_version << "\n";
    out << "# generator=" << sc.generator_version << " band=" << sc.band_name
        << " fc_hz=" << fmt_double(sc.carrier_frequency_hz) << " seed=" << sc.seed
        << " ris_elements=" << sc.ris_elements << "\n";
    out << "# columns: pair_id node_a node_b tap_re tap_im toa_s\n";
    for (const auto& r : sc.records) {
        out << r.pair_id << " " << r.node_a << " " << r.node_b << " " << fmt_double(r.tap_re)
            << " " << fmt_double(r.tap_im) << " " << fmt_double(r.toa_s) << "\n";
    }
    return out.str();
}

ScenarioFile scenario_from_string(const std::string& text) {
    ScenarioFile sc;
    std::istringstream in(text);
    std::string line;
    bool have_version = false;
    bool have_meta = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!have_version) {
                if (std::sscanf(line.c_str(), "# risim-scenario v%d", &sc.format_version) != 1)
                    throw ParseError("scenario line 1: bad header");
                have_version = true;
            } else if (!have_meta && line.rfind("# generator=", 0) == 0) {
                char gen[64] = {0};
                char band[32] = {0};
                double fc = 0.0;
                unsigned long long seed = 0;
                unsigned long long elems = 0;
                if (std::sscanf(line.c_str(),
                                "# generator=%63s band=%31s fc_hz=%lf seed=%llu ris_elements=%llu",
                                gen, band, &fc, &seed, &elems) != 5)
                    throw ParseError("scenario line 2: bad metadata");
                sc.generator_version = gen;
                sc.band_name = band;
                sc.carrier_frequency_hz = fc;
                sc.seed = seed;
                sc.ris_elements = static_cast<std::size_t>(elems);
                have_meta = true;
            }
            continue;
        }
        std::istringstream ls(line);
        ScenarioRecord rec;
        std::string re_s, im_s, toa_s;
        if (!(ls >> rec.pair_id >> rec.node_a >> rec.node_b >> re_s >> im_s >> toa_s))
            throw ParseError("scenario line " + std::to_string(line_no) + ": bad record");
        rec.tap_re = std::strtod(re_s.c_str(), nullptr);
        rec.tap_im = std::strtod(im_s.c_str(), nullptr);
        rec.toa_s = std::strtod(toa_s.c_str(), nullptr);
        sc.records.push_back(std::move(rec));
    }
    if (!have_version || !have_meta) throw ParseError("scenario: missing header lines");
    return sc;
}

void export_scenario(const ScenarioFile& scenario, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("export_scenario: cannot open " + path);
    out << scenario_to_string(scenario);
    if (!out) throw IoError("export_scenario: write failure on " + path);
}

ScenarioFile import_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("import_scenario: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("import_scenario: read failure on " + path);
    return scenario_from_string(ss.str());
}

}  // namespace risim

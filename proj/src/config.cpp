#include "risim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "risim/errors.hpp"

namespace risim {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& scope) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            throw SchemaError("unknown key \"" + scope + it.key() + "\"");
    }
}

Position3D parse_position(const json& v, const std::string& scope) {
    if (!v.is_array() || v.size() != 3)
        throw SchemaError(scope + " must be an [x, y, z] array");
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;

    std::string trimmed = text;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
    if (trimmed.empty()) return cfg;  // empty file: paper defaults

    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!root.is_object()) throw SchemaError(origin + ": top level must be an object");

    reject_unknown(root, {"topology", "band", "ris_elements", "realizations", "seeds", "game",
                          "gbsm", "slice", "out_dir"},
                   "");

    if (root.contains("band")) {
        const json& b = root["band"];
        auto set_band = [&](const std::string& name) {
            if (name == "sub6")
                cfg.band = Band::Sub6;
            else if (name == "mmwave")
                cfg.band = Band::MmWave;
            else
                throw SchemaError("band must be \"sub6\" or \"mmwave\"");
        };
        if (b.is_string()) {
            set_band(b.get<std::string>());
            cfg.band_config = BandConfig::make(cfg.band);
        } else if (b.is_object()) {
            reject_unknown(b, {"name", "carrier_frequency_hz", "bandwidth_hz", "noise_ref_dbm",
                               "element_spacing_m"},
                           "band.");
            if (b.contains("name")) set_band(b["name"].get<std::string>());
            cfg.band_config = BandConfig::make(cfg.band);
            if (b.contains("carrier_frequency_hz")) {
                cfg.band_config.carrier_frequency_hz = b["carrier_frequency_hz"].get<double>();
                if (cfg.band_config.carrier_frequency_hz <= 0.0)
                    throw SchemaError("band.carrier_frequency_hz must be > 0");
            }
            if (b.contains("bandwidth_hz")) {
                cfg.band_config.bandwidth_hz = b["bandwidth_hz"].get<double>();
                if (cfg.band_config.bandwidth_hz <= 0.0)
                    throw SchemaError("band.bandwidth_hz must be > 0");
            }
            if (b.contains("noise_ref_dbm"))
                cfg.band_config.noise_ref_dbm = b["noise_ref_dbm"].get<double>();
            if (b.contains("element_spacing_m")) {
                cfg.band_config.element_spacing_m = b["element_spacing_m"].get<double>();
                if (cfg.band_config.element_spacing_m <= 0.0)
                    throw SchemaError("band.element_spacing_m must be > 0");
            }
        } else {
            throw SchemaError("band must be a string or object");
        }
    }

    if (root.contains("topology")) {
        const json& t = root["topology"];
        reject_unknown(t, {"uav", "ris", "ue_ring_radii", "ue_height_m"}, "topology.");
        if (t.contains("uav")) cfg.uav = parse_position(t["uav"], "topology.uav");
        if (t.contains("ris")) cfg.ris_ref = parse_position(t["ris"], "topology.ris");
        if (t.contains("ue_ring_radii")) {
            cfg.ue_ring_radii = t["ue_ring_radii"].get<std::vector<double>>();
            if (cfg.ue_ring_radii.empty())
                throw SchemaError("topology.ue_ring_radii must be non-empty");
            for (double r : cfg.ue_ring_radii)
                if (r <= 0.0) throw SchemaError("topology.ue_ring_radii entries must be > 0");
        }
        if (t.contains("ue_height_m")) cfg.ue_height_m = t["ue_height_m"].get<double>();
    }

    if (root.contains("ris_elements")) {
        const json& e = root["ris_elements"];
        if (!e.is_array()) throw SchemaError("ris_elements must be an array");
        cfg.ris_elements.clear();
        for (const auto& v : e) {
            const long long x = v.get<long long>();
            if (x < 0) throw SchemaError("ris_elements entries must be >= 0");
            cfg.ris_elements.push_back(static_cast<std::size_t>(x));
        }
    }

    if (root.contains("realizations")) {
        cfg.realizations = root["realizations"].get<int>();
        if (cfg.realizations < 1) throw SchemaError("realizations must be >= 1");
    }

    if (root.contains("seeds")) {
        cfg.seeds = root["seeds"].get<std::vector<std::uint64_t>>();
        if (cfg.seeds.empty()) throw SchemaError("seeds must be non-empty");
    }

    if (root.contains("game")) {
        const json& g = root["game"];
        reject_unknown(g, {"alpha", "m_exponent", "p_min_dbm", "p_max_dbm", "p_tol_dbm",
                           "epsilon", "max_iterations", "w_in_nash", "hard_p_min"},
                       "game.");
        if (g.contains("alpha")) cfg.game.alpha = g["alpha"].get<double>();
        if (g.contains("m_exponent")) cfg.game.m_exponent = g["m_exponent"].get<double>();
        if (g.contains("p_min_dbm")) cfg.game.p_min_watts = dbm_to_watts(g["p_min_dbm"].get<double>());
        if (g.contains("p_max_dbm")) cfg.game.p_max_watts = dbm_to_watts(g["p_max_dbm"].get<double>());
        if (g.contains("p_tol_dbm")) cfg.game.p_tol_watts = dbm_to_watts(g["p_tol_dbm"].get<double>());
        if (g.contains("epsilon")) cfg.game.epsilon = g["epsilon"].get<double>();
        if (g.contains("max_iterations")) cfg.game.max_iterations = g["max_iterations"].get<int>();
        if (g.contains("w_in_nash")) cfg.game.w_in_nash = g["w_in_nash"].get<bool>();
        if (g.contains("hard_p_min")) cfg.game.hard_p_min = g["hard_p_min"].get<bool>();
        if (cfg.game.alpha <= 0.0) throw SchemaError("game.alpha must be > 0");
        if (cfg.game.m_exponent < 1.0) throw SchemaError("game.m_exponent must be >= 1");
        if (cfg.game.epsilon <= 0.0) throw SchemaError("game.epsilon must be > 0");
        if (cfg.game.p_min_watts <= 0.0 || cfg.game.p_min_watts > cfg.game.p_max_watts)
            throw SchemaError("game power bounds must satisfy 0 < p_min <= p_max");
    }

    if (root.contains("gbsm")) {
        const json& g = root["gbsm"];
        reject_unknown(g, {"n_paths", "k_factor_db", "delay_spread_ns"}, "gbsm.");
        if (g.contains("n_paths")) {
            cfg.gbsm.n_paths = g["n_paths"].get<int>();
            if (cfg.gbsm.n_paths < 1) throw SchemaError("gbsm.n_paths must be >= 1");
        }
        if (g.contains("k_factor_db")) cfg.gbsm.k_factor_db = g["k_factor_db"].get<double>();
        if (g.contains("delay_spread_ns")) {
            cfg.gbsm.delay_spread_s = g["delay_spread_ns"].get<double>() * 1e-9;
            if (cfg.gbsm.delay_spread_s <= 0.0)
                throw SchemaError("gbsm.delay_spread_ns must be > 0");
        }
    }

    if (root.contains("slice")) {
        const json& s = root["slice"];
        reject_unknown(s, {"setup", "duration_ttis", "dl_tx_power_dbm", "noise_figure_db",
                           "repetitions"},
                       "slice.");
        if (s.contains("setup")) {
            cfg.campaign.setup_id = s["setup"].get<int>();
            if (cfg.campaign.setup_id < 1 || cfg.campaign.setup_id > 4)
                throw SchemaError("slice.setup must be in {1,2,3,4}");
        }
        if (s.contains("duration_ttis")) {
            cfg.campaign.duration_ttis = s["duration_ttis"].get<long>();
            if (cfg.campaign.duration_ttis < 1)
                throw SchemaError("slice.duration_ttis must be >= 1");
        }
        if (s.contains("dl_tx_power_dbm"))
            cfg.campaign.dl_tx_power_dbm = s["dl_tx_power_dbm"].get<double>();
        if (s.contains("noise_figure_db"))
            cfg.campaign.noise_figure_db = s["noise_figure_db"].get<double>();
        if (s.contains("repetitions")) {
            cfg.campaign.repetitions = s["repetitions"].get<int>();
            if (cfg.campaign.repetitions < 1) throw SchemaError("slice.repetitions must be >= 1");
        }
    }

    if (root.contains("out_dir")) cfg.out_dir = root["out_dir"].get<std::string>();

    cfg.gbsm.n_realizations = cfg.realizations;
    cfg.campaign.realizations = cfg.realizations;
    cfg.game.bandwidth_hz = cfg.band_config.bandwidth_hz;
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("load_config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("load_config: read failure on " + path);
    return parse_config(ss.str(), path);
}

Topology topology_from_config(const ExperimentConfig& cfg, std::size_t ris_elements,
                              std::uint64_t seed) {
    Topology topo;
    topo.uav = cfg.uav;
    topo.ris_ref = cfg.ris_ref;
    topo.ris_elements = ris_elements;
    topo.band = cfg.band_config;
    topo.ue_positions =
        place_ue_ring(cfg.ris_ref, cfg.ue_ring_radii, seed, cfg.ue_height_m);
    return topo;
}

}  // namespace risim

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "risim/config.hpp"
#include "risim/errors.hpp"

using namespace risim;

TEST_CASE("empty config yields paper defaults") {
    const auto cfg = parse_config("");
    CHECK(cfg.band == Band::Sub6);
    CHECK(cfg.band_config.carrier_frequency_hz == 5.9e9);
    CHECK(cfg.band_config.bandwidth_hz == 10e6);
    CHECK(cfg.band_config.noise_ref_dbm == -140.0);
    CHECK(cfg.ue_ring_radii == std::vector<double>{20, 27, 37, 58, 66});
    CHECK(cfg.uav.x == 25.0);
    CHECK(cfg.uav.y == 50.0);
    CHECK(cfg.uav.z == 25.0);
    CHECK(cfg.ris_ref.x == 30.0);
    CHECK(cfg.game.alpha == 0.3);
    CHECK(cfg.game.m_exponent == 3.0);
    CHECK(cfg.game.p_max_watts == doctest::Approx(dbm_to_watts(23.0)));
    CHECK(cfg.game.p_tol_watts == doctest::Approx(dbm_to_watts(-150.0)));
    CHECK(cfg.game.epsilon == 1e-4);
    CHECK(cfg.realizations == 100);
    CHECK(cfg.gbsm.n_paths == 12);

    const auto ws = parse_config("  \n\t ");
    CHECK(ws.band == Band::Sub6);
}

TEST_CASE("mmwave band switches the noise reference") {
    const auto cfg = parse_config(R"({"band": "mmwave"})");
    CHECK(cfg.band == Band::MmWave);
    CHECK(cfg.band_config.carrier_frequency_hz == 28e9);
    CHECK(cfg.band_config.noise_ref_dbm == -160.0);

    const auto overridden =
        parse_config(R"({"band": {"name": "mmwave", "noise_ref_dbm": -150.0}})");
    CHECK(overridden.band_config.noise_ref_dbm == -150.0);
}

TEST_CASE("schema violations are rejected") {
    CHECK_THROWS_AS(parse_config(R"({"ris_elements": [-1]})"), SchemaError);
    CHECK_THROWS_AS(parse_config(R"({"unknown_key": 1})"), SchemaError);
    CHECK_THROWS_AS(parse_config(R"({"game": {"nope": 1}})"), SchemaError);
    CHECK_THROWS_AS(parse_config(R"({"band": "shortwave"})"), SchemaError);
    CHECK_THROWS_AS(parse_config(R"({"seeds": []})"), SchemaError);
    CHECK_THROWS_AS(parse_config(R"({"realizations": 0})"), SchemaError);
    CHECK_THROWS_AS(parse_config(R"({"game": {"alpha": -0.1}})"), SchemaError);
    CHECK_THROWS_AS(parse_config(R"({"slice": {"setup": 7}})"), SchemaError);
    CHECK_THROWS_AS(parse_config("{not json"), ParseError);
    CHECK_THROWS_AS(parse_config("[1, 2]"), SchemaError);
}

TEST_CASE("overrides land in the right places") {
    const auto cfg = parse_config(R"({
        "topology": {"uav": [1, 2, 3], "ue_ring_radii": [25, 40], "ue_height_m": 2.0},
        "ris_elements": [0, 4],
        "realizations": 17,
        "seeds": [9, 10],
        "game": {"alpha": 0.5, "w_in_nash": true, "hard_p_min": true},
        "gbsm": {"n_paths": 6, "k_factor_db": 12.0, "delay_spread_ns": 50.0},
        "slice": {"setup": 3, "duration_ttis": 500, "dl_tx_power_dbm": 10.0},
        "out_dir": "results"
    })");
    CHECK(cfg.uav.z == 3.0);
    CHECK(cfg.ue_ring_radii == std::vector<double>{25, 40});
    CHECK(cfg.ue_height_m == 2.0);
    CHECK(cfg.ris_elements == std::vector<std::size_t>{0, 4});
    CHECK(cfg.realizations == 17);
    CHECK(cfg.gbsm.n_realizations == 17);
    CHECK(cfg.seeds == std::vector<std::uint64_t>{9, 10});
    CHECK(cfg.game.alpha == 0.5);
    CHECK(cfg.game.w_in_nash);
    CHECK(cfg.game.hard_p_min);
    CHECK(cfg.gbsm.n_paths == 6);
    CHECK(cfg.gbsm.k_factor_db == 12.0);
    CHECK(cfg.gbsm.delay_spread_s == doctest::Approx(50e-9));
    CHECK(cfg.campaign.setup_id == 3);
    CHECK(cfg.campaign.duration_ttis == 500);
    CHECK(cfg.campaign.dl_tx_power_dbm == 10.0);
    CHECK(cfg.out_dir == "results");
}

TEST_CASE("load_config from file; missing file raises IoError") {
    const char* path = "test_config_tmp.json";
    {
        std::ofstream out(path);
        out << R"({"band": "mmwave"})";
    }
    const auto cfg = load_config(path);
    CHECK(cfg.band == Band::MmWave);
    std::remove(path);
    CHECK_THROWS_AS(load_config("does_not_exist.json"), IoError);
}

TEST_CASE("topology_from_config reproduces ring radii") {
    const auto cfg = parse_config("");
    const auto topo = topology_from_config(cfg, 32, 5);
    CHECK(topo.ris_elements == 32);
    REQUIRE(topo.ue_positions.size() == 5);
    for (std::size_t i = 0; i < cfg.ue_ring_radii.size(); ++i) {
        CHECK(euclidean_distance(topo.ue_positions[i], topo.ris_ref) ==
              doctest::Approx(cfg.ue_ring_radii[i]).epsilon(1e-12));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "risim/channel.hpp"
#include "risim/errors.hpp"
#include "risim/rng.hpp"

using namespace risim;

namespace {

LinkSpec nlos_link(double dist = 55.0, double fc = 5.9e9) {
    LinkSpec link;
    link.condition = Condition::Nlos;
    link.distance_m = dist;
    link.fc_hz = fc;
    link.wavelength_m = kSpeedOfLight / fc;
    link.link_id = 3;
    return link;
}

LinkSpec los_link(double dist = 20.0, double fc = 5.9e9) {
    LinkSpec link;
    link.condition = Condition::Los;
    link.distance_m = dist;
    link.fc_hz = fc;
    link.wavelength_m = kSpeedOfLight / fc;
    link.model = PathLossModel::Uma38901Los;
    link.link_id = 5;
    return link;
}

}  // namespace

TEST_CASE("path loss: free-space log-distance at 1 m") {
    // Friis oracle: 20 log10(4 pi d f / c)
    const double fc = 5.9e9;
    const double expected = 20.0 * std::log10(4.0 * M_PI * 1.0 * fc / kSpeedOfLight);
    CHECK(path_loss_db(PathLossModel::LogDistance, 1.0, fc, 2.0) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(47.86).epsilon(1e-3));
}

TEST_CASE("path loss: 38.901 UMa LOS pre-breakpoint") {
    // 28 + 22 log10(d) + 20 log10(f_GHz)
    const double expected = 28.0 + 22.0 * std::log10(100.0) + 20.0 * std::log10(5.9);
    CHECK(path_loss_db(PathLossModel::Uma38901Los, 100.0, 5.9e9) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(87.42).epsilon(1e-3));
}

TEST_CASE("path loss: mmWave penalty is 20 log10(f ratio)") {
    const double diff = path_loss_db(PathLossModel::Uma38901Los, 100.0, 28e9) -
                        path_loss_db(PathLossModel::Uma38901Los, 100.0, 5.9e9);
    CHECK(diff == doctest::Approx(20.0 * std::log10(28.0 / 5.9)).epsilon(1e-12));
    CHECK(diff == doctest::Approx(13.53).epsilon(1e-3));
}

TEST_CASE("path loss: monotone in distance, errors on bad input") {
    for (auto model : {PathLossModel::LogDistance, PathLossModel::Uma38901Los,
                       PathLossModel::Uma38901Nlos}) {
        double prev = -1e300;
        for (double d = 1.0; d < 2000.0; d *= 1.3) {
            const double pl = path_loss_db(model, d, 5.9e9);
            CHECK(pl >= prev - 1e-12);
            CHECK(pl >= 0.0);
            prev = pl;
        }
    }
    CHECK_THROWS_AS(path_loss_db(PathLossModel::LogDistance, 0.0, 5.9e9), NonPositiveDistance);
    CHECK_THROWS_AS(path_loss_db(PathLossModel::LogDistance, -1.0, 5.9e9), NonPositiveDistance);
    CHECK_THROWS_AS(path_loss_db(PathLossModel::LogDistance, 10.0, 0.0), NonPositiveDistance);
}

TEST_CASE("generate_mpcs: NLOS power normalization") {
    const auto link = nlos_link();
    const double target = std::pow(10.0, -path_loss_db(link.model, link.distance_m, link.fc_hz) / 10.0);
    for (std::uint64_t seed : {1ull, 99ull, 123456ull}) {
        const auto mpcs = generate_mpcs(link, seed, 12);
        REQUIRE(mpcs.size() == 12);
        double power = 0.0;
        for (const auto& m : mpcs) power += m.magnitude * m.magnitude;
        CHECK(power == doctest::Approx(target).epsilon(1e-12));
        for (const auto& m : mpcs) {
            CHECK(m.magnitude >= 0.0);
            CHECK(m.delay_s >= link.distance_m / kSpeedOfLight);
            CHECK(std::isfinite(m.phase_rad));
        }
    }
}

TEST_CASE("generate_mpcs: LOS structure and K-limit") {
    auto link = los_link();
    const double pl = path_loss_db(link.model, link.distance_m, link.fc_hz);
    const double direct_amp = std::pow(10.0, -pl / 20.0);

    const auto mpcs = generate_mpcs(link, 7, 12);
    REQUIRE(mpcs.size() == 12);
    CHECK(mpcs[0].magnitude == doctest::Approx(direct_amp).epsilon(1e-12));
    CHECK(mpcs[0].phase_rad ==
          doctest::Approx(std::fmod(2.0 * M_PI * link.distance_m / link.wavelength_m,
                                    2.0 * M_PI)).epsilon(1e-9));
    CHECK(mpcs[0].delay_s == doctest::Approx(link.distance_m / kSpeedOfLight).epsilon(1e-15));

    // dominant first component, scattered power = direct / K
    double scattered = 0.0;
    for (std::size_t k = 1; k < mpcs.size(); ++k) {
        CHECK(mpcs[k].magnitude <= mpcs[0].magnitude);
        scattered += mpcs[k].magnitude * mpcs[k].magnitude;
    }
    CHECK(scattered == doctest::Approx(direct_amp * direct_amp /
                                       std::pow(10.0, link.k_factor_db / 10.0)).epsilon(1e-12));

    // K -> infinity: single effective ray
    link.k_factor_db = 300.0;
    const auto pure = generate_mpcs(link, 7, 12);
    for (std::size_t k = 1; k < pure.size(); ++k) CHECK(pure[k].magnitude < 1e-12 * direct_amp);
}

TEST_CASE("generate_mpcs: deterministic per seed") {
    const auto link = nlos_link();
    const auto a = generate_mpcs(link, 42, 12);
    const auto b = generate_mpcs(link, 42, 12);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].magnitude == b[k].magnitude);
        CHECK(a[k].phase_rad == b[k].phase_rad);
        CHECK(a[k].delay_s == b[k].delay_s);
    }
}

TEST_CASE("coherent_sum basics") {
    CHECK_THROWS_AS(coherent_sum({}), EmptyPathList);

    std::vector<Mpc> one{{1.0, 0.0, 0.0}};
    CHECK(coherent_sum(one) == cplx{1.0, 0.0});

    std::vector<Mpc> cancel{{1.0, 0.0, 0.0}, {1.0, M_PI, 0.0}};
    CHECK(std::abs(coherent_sum(cancel)) < 1e-15);

    std::vector<Mpc> quad{{1.0, 0.0, 0.0}, {1.0, M_PI / 2.0, 0.0}};
    const cplx s = coherent_sum(quad);
    CHECK(s.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.imag() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(s) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("coherent_sum triangle inequality") {
    Rng rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Mpc> mpcs;
        double mag_sum = 0.0;
        const int n = 1 + static_cast<int>(rng.next_u64() % 12);
        for (int k = 0; k < n; ++k) {
            Mpc m{rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0 * M_PI), 0.0};
            mag_sum += m.magnitude;
            mpcs.push_back(m);
        }
        CHECK(std::abs(coherent_sum(mpcs)) <= mag_sum + 1e-12);
    }
    // equality iff all phases equal
    std::vector<Mpc> aligned{{0.5, 1.0, 0}, {1.5, 1.0, 0}, {0.25, 1.0, 0}};
    CHECK(std::abs(coherent_sum(aligned)) == doctest::Approx(2.25).epsilon(1e-12));
}

TEST_CASE("average_channel: degenerate and limiting cases") {
    const auto link = nlos_link();
    const cplx single = coherent_sum(generate_mpcs(link, derive_seed(9, link.link_id, 0), 12));
    CHECK(average_channel(link, 1, 9) == single);

    auto pure = los_link();
    pure.k_factor_db = 300.0;
    const double pl = path_loss_db(pure.model, pure.distance_m, pure.fc_hz);
    const cplx direct = std::polar(
        std::pow(10.0, -pl / 20.0),
        std::fmod(2.0 * M_PI * pure.distance_m / pure.wavelength_m, 2.0 * M_PI));
    for (int n : {1, 7, 50}) {
        const cplx mean = average_channel(pure, n, 3);
        CHECK(std::abs(mean - direct) < 1e-10 * std::abs(direct));
    }
}

TEST_CASE("average_channel: zero-mean NLOS field collapses") {
    const auto link = nlos_link();
    const double target =
        std::pow(10.0, -path_loss_db(link.model, link.distance_m, link.fc_hz) / 10.0);
    const double rms = std::sqrt(target);  // single-realization RMS magnitude
    const cplx mean = average_channel(link, 10000, 31);
    CHECK(std::abs(mean) <= 0.1 * rms);
}

TEST_CASE("average_channel: parallel kernel matches serial reference bitwise") {
    for (auto link : {nlos_link(), los_link()}) {
        for (int n : {1, 3, 100, 1777}) {
            const cplx par = average_channel(link, n, 77);
            const cplx ser = average_channel_serial(link, n, 77);
            CHECK(par.real() == ser.real());
            CHECK(par.imag() == ser.imag());
        }
    }
}

TEST_CASE("steering_vector") {
    const double lambda = kSpeedOfLight / 5.9e9;

    const auto single = steering_vector(1, lambda / 2, lambda, 0.7);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == cplx{1.0, 0.0});

    const auto endfire = steering_vector(2, lambda / 2, lambda, 1.0);
    CHECK(endfire[0] == cplx{1.0, 0.0});
    CHECK(endfire[1].real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(endfire[1].imag() == doctest::Approx(0.0).epsilon(1e-12));

    const auto broadside = steering_vector(4, lambda / 2, lambda, 0.0);
    for (const auto& v : broadside) CHECK(v == cplx{1.0, 0.0});

    // unit modulus everywhere
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto v = steering_vector(64, lambda / 2, lambda, rng.uniform(-1.0, 1.0));
        for (const auto& e : v) CHECK(std::abs(std::abs(e) - 1.0) < 1e-12);
    }
}

TEST_CASE("build_channel_set: RIS-absent baseline and determinism") {
    const auto topo = make_paper_topology(BandConfig::sub6(), 0, paper_ue_ring_radii(), 1);
    const auto set = build_channel_set(topo, 1);
    CHECK(set.ue_count() == 5);
    CHECK(set.ris_elements() == 0);
    for (const auto& v : set.h_ue_ris) CHECK(v.empty());

    const auto topo2 = make_paper_topology(BandConfig::sub6(), 16, paper_ue_ring_radii(), 1);
    const auto a = build_channel_set(topo2, 1);
    const auto b = build_channel_set(topo2, 1);
    for (std::size_t i = 0; i < a.ue_count(); ++i) {
        CHECK(a.h_direct[i] == b.h_direct[i]);
        for (std::size_t k = 0; k < a.ris_elements(); ++k)
            CHECK(a.h_ue_ris[i][k] == b.h_ue_ris[i][k]);
    }
    for (std::size_t k = 0; k < a.ris_elements(); ++k)
        CHECK(a.h_ris_uav[k] == b.h_ris_uav[k]);
}

TEST_CASE("build_channel_set: every |h| strictly smaller at 28 GHz") {
    const auto sub_topo = make_paper_topology(BandConfig::sub6(), 8, paper_ue_ring_radii(), 4);
    const auto mm_topo = make_paper_topology(BandConfig::mmwave(), 8, paper_ue_ring_radii(), 4);
    const auto sub = build_channel_set(sub_topo, 4);
    const auto mm = build_channel_set(mm_topo, 4);
    for (std::size_t i = 0; i < sub.ue_count(); ++i) {
        CHECK(std::abs(mm.h_direct[i]) < std::abs(sub.h_direct[i]));
        for (std::size_t k = 0; k < sub.ris_elements(); ++k)
            CHECK(std::abs(mm.h_ue_ris[i][k]) < std::abs(sub.h_ue_ris[i][k]));
    }
    for (std::size_t k = 0; k < sub.ris_elements(); ++k)
        CHECK(std::abs(mm.h_ris_uav[k]) < std::abs(sub.h_ris_uav[k]));
}

TEST_CASE("build_channel_set: steering phases are geometry-deterministic") {
    // All LOS-link entries have |h_iR,m| equal across m, and the per-element
    // phase progression matches the steering vector.
    const auto topo = make_paper_topology(BandConfig::sub6(), 12, paper_ue_ring_radii(), 9);
    const auto set = build_channel_set(topo, 9);
    for (std::size_t i = 0; i < set.ue_count(); ++i) {
        const double mag0 = std::abs(set.h_ue_ris[i][0]);
        for (std::size_t k = 1; k < set.ris_elements(); ++k)
            CHECK(std::abs(set.h_ue_ris[i][k]) == doctest::Approx(mag0).epsilon(1e-12));
    }
}

TEST_CASE("build_channel_set: co-located UEs share the steering phase ramp") {
    Topology topo = make_paper_topology(BandConfig::sub6(), 6, {30.0, 30.0}, 2);
    topo.ue_positions[1] = topo.ue_positions[0];  // geometric degeneracy
    const auto set = build_channel_set(topo, 2);
    for (std::size_t k = 1; k < set.ris_elements(); ++k) {
        const cplx ramp0 = set.h_ue_ris[0][k] / set.h_ue_ris[0][0];
        const cplx ramp1 = set.h_ue_ris[1][k] / set.h_ue_ris[1][0];
        CHECK(std::abs(ramp0 - ramp1) < 1e-12);
    }
    // scalar gains still differ through the per-link seed streams
    CHECK(set.h_ue_ris[0][0] != set.h_ue_ris[1][0]);
}

TEST_CASE("path gain decreases with distance for fixed seed") {
    // Same link id and seed: the fading draws are shared, so the averaged
    // gain scales exactly with the path-loss amplitude.
    auto link = nlos_link(20.0);
    double prev = 1e300;
    for (double d : {20.0, 35.0, 60.0, 90.0, 140.0}) {
        link.distance_m = d;
        const double pg = std::norm(average_channel(link, 100, 12));
        CHECK(pg < prev);
        prev = pg;
    }
}

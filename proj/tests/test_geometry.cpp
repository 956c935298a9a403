#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "risim/errors.hpp"
#include "risim/geometry.hpp"
#include "risim/rng.hpp"

using namespace risim;

TEST_CASE("euclidean_distance basics") {
    CHECK(euclidean_distance({0, 0, 0}, {0, 0, 0}) == 0.0);
    CHECK(euclidean_distance({0, 0, 0}, {3, 4, 0}) == 5.0);
    // UAV / RIS reference points: sqrt(25 + 100 + 25)
    const double d = euclidean_distance({25, 50, 25}, {30, 40, 20});
    CHECK(d == doctest::Approx(std::sqrt(150.0)).epsilon(1e-15));
    CHECK(d == doctest::Approx(12.2474487).epsilon(1e-7));
}

TEST_CASE("euclidean_distance triangle inequality") {
    Rng rng(11);
    for (int k = 0; k < 1000; ++k) {
        const Position3D a{rng.uniform(-100, 100), rng.uniform(-100, 100), rng.uniform(-100, 100)};
        const Position3D b{rng.uniform(-100, 100), rng.uniform(-100, 100), rng.uniform(-100, 100)};
        const Position3D c{rng.uniform(-100, 100), rng.uniform(-100, 100), rng.uniform(-100, 100)};
        CHECK(euclidean_distance(a, c) <=
              euclidean_distance(a, b) + euclidean_distance(b, c) + 1e-12);
    }
}

TEST_CASE("angle_cosine basics") {
    const Position3D x_axis{1, 0, 0};
    CHECK(angle_cosine({0, 0, 0}, {1, 0, 0}, x_axis) == doctest::Approx(1.0));
    CHECK(angle_cosine({0, 0, 0}, {0, 1, 0}, x_axis) == doctest::Approx(0.0));
    CHECK(angle_cosine({0, 0, 0}, {1, 1, 0}, x_axis) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(angle_cosine({1, 2, 3}, {1, 2, 3}, x_axis), ZeroLengthVector);
}

TEST_CASE("angle_cosine invariant under scaling of dst - src") {
    Rng rng(13);
    const Position3D axis{1, 0, 0};
    for (int k = 0; k < 200; ++k) {
        const Position3D src{rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10)};
        const double dx = rng.uniform(-5, 5), dy = rng.uniform(-5, 5), dz = rng.uniform(-5, 5);
        if (dx == 0 && dy == 0 && dz == 0) continue;
        const double s = rng.uniform(0.1, 50.0);
        const Position3D dst1{src.x + dx, src.y + dy, src.z + dz};
        const Position3D dst2{src.x + s * dx, src.y + s * dy, src.z + s * dz};
        CHECK(angle_cosine(src, dst1, axis) ==
              doctest::Approx(angle_cosine(src, dst2, axis)).epsilon(1e-12));
    }
}

TEST_CASE("time_of_arrival") {
    CHECK(time_of_arrival({0, 0, 0}, {299.792458, 0, 0}) == doctest::Approx(1e-6).epsilon(1e-15));
    CHECK(time_of_arrival({5, 5, 5}, {5, 5, 5}) == 0.0);
    CHECK(time_of_arrival({25, 50, 25}, {30, 40, 20}) ==
          doctest::Approx(std::sqrt(150.0) / 299792458.0).epsilon(1e-12));

    // linear in distance
    Rng rng(17);
    for (int k = 0; k < 100; ++k) {
        const double d = rng.uniform(0.1, 1000.0);
        CHECK(time_of_arrival({0, 0, 0}, {d, 0, 0}) ==
              doctest::Approx(d / 299792458.0).epsilon(1e-14));
    }
}

TEST_CASE("band configs") {
    const auto sub6 = BandConfig::sub6();
    CHECK(sub6.carrier_frequency_hz == 5.9e9);
    CHECK(sub6.noise_ref_dbm == -140.0);
    CHECK(sub6.wavelength_m() == doctest::Approx(299792458.0 / 5.9e9).epsilon(1e-15));
    CHECK(sub6.element_spacing() == doctest::Approx(0.5 * sub6.wavelength_m()));

    const auto mm = BandConfig::mmwave();
    CHECK(mm.carrier_frequency_hz == 28e9);
    CHECK(mm.noise_ref_dbm == -160.0);
}

TEST_CASE("paper topology placement") {
    const auto topo = make_paper_topology(BandConfig::sub6(), 100, paper_ue_ring_radii(), 7);
    REQUIRE(topo.ue_positions.size() == 5);
    CHECK(topo.ris_elements == 100);
    const std::vector<double>& radii = paper_ue_ring_radii();
    for (std::size_t i = 0; i < radii.size(); ++i) {
        CHECK(euclidean_distance(topo.ue_positions[i], topo.ris_ref) ==
              doctest::Approx(radii[i]).epsilon(1e-12));
        CHECK(topo.ue_positions[i].z == 1.5);
    }
    // deterministic per seed
    const auto again = make_paper_topology(BandConfig::sub6(), 100, paper_ue_ring_radii(), 7);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        CHECK(topo.ue_positions[i].x == again.ue_positions[i].x);
        CHECK(topo.ue_positions[i].y == again.ue_positions[i].y);
    }
    // ring radius below the height gap is rejected
    CHECK_THROWS_AS(make_paper_topology(BandConfig::sub6(), 0, {10.0}, 7), NonPositiveDistance);
}

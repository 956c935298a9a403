#include "risim/geometry.hpp"

#include <cmath>

#include "risim/errors.hpp"
#include "risim/rng.hpp"

namespace risim {

BandConfig BandConfig::sub6() {
    BandConfig b;
    b.carrier_frequency_hz = 5.9e9;
    b.bandwidth_hz = 10e6;
    b.noise_ref_dbm = -140.0;
    return b;
}

BandConfig BandConfig::mmwave() {
    BandConfig b;
    b.carrier_frequency_hz = 28e9;
    b.bandwidth_hz = 10e6;
    b.noise_ref_dbm = -160.0;
    return b;
}

BandConfig BandConfig::make(Band band) {
    return band == Band::Sub6 ? sub6() : mmwave();
}

double euclidean_distance(const Position3D& a, const Position3D& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double angle_cosine(const Position3D& src, const Position3D& dst, const Position3D& array_axis) {
    const double dx = dst.x - src.x;
    const double dy = dst.y - src.y;
    const double dz = dst.z - src.z;
    const double norm = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (norm == 0.0) throw ZeroLengthVector("angle_cosine: src == dst");
    const double an = std::sqrt(array_axis.x * array_axis.x + array_axis.y * array_axis.y +
                                array_axis.z * array_axis.z);
    if (an == 0.0) throw ZeroLengthVector("angle_cosine: zero array axis");
    double c = (dx * array_axis.x + dy * array_axis.y + dz * array_axis.z) / (norm * an);
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return c;
}

double time_of_arrival(const Position3D& a, const Position3D& b) {
    return euclidean_distance(a, b) / kSpeedOfLight;
}

const std::vector<double>& paper_ue_ring_radii() {
    static const std::vector<double> radii{20.0, 27.0, 37.0, 58.0, 66.0};
    return radii;
}

std::vector<Position3D> place_ue_ring(const Position3D& ris_ref,
                                      const std::vector<double>& ring_radii, std::uint64_t seed,
                                      double ue_height_m) {
    const double dz = ris_ref.z - ue_height_m;
    Rng rng(derive_seed(seed, 0));
    std::vector<Position3D> out;
    out.reserve(ring_radii.size());
    for (double r : ring_radii) {
        if (r * r <= dz * dz)
            throw NonPositiveDistance("place_ue_ring: ring radius below RIS height gap");
        const double rxy = std::sqrt(r * r - dz * dz);
        const double az = rng.uniform(0.0, 2.0 * M_PI);
        out.push_back({ris_ref.x + rxy * std::cos(az), ris_ref.y + rxy * std::sin(az),
                       ue_height_m});
    }
    return out;
}

Topology make_paper_topology(const BandConfig& band, std::size_t ris_elements,
                             const std::vector<double>& ring_radii, std::uint64_t seed,
                             double ue_height_m) {
    Topology topo;
    topo.uav = {25.0, 50.0, 25.0};
    topo.ris_ref = {30.0, 40.0, 20.0};
    topo.ris_elements = ris_elements;
    topo.band = band;
    topo.ue_positions = place_ue_ring(topo.ris_ref, ring_radii, seed, ue_height_m);
    return topo;
}

}  // namespace risim

#pragma once

#include <cmath>

namespace risim {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

inline double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts * 1e3); }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace risim

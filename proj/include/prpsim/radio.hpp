#pragma once

#include <cmath>
#include <stdexcept>

#include "prpsim/config.hpp"
#include "prpsim/types.hpp"

namespace prpsim {

// Pt, Pr and the frequency of one received transmission. The path loss is
// Pt - Pr by definition.
struct LinkBudget {
    double tx_power_dbm = 0.0;
    double rx_power_dbm = 0.0;
    double frequency_mhz = 0.0;

    double path_loss_db() const { return tx_power_dbm - rx_power_dbm; }
};

// Free-space path loss, d in km, f in MHz. The 32.45 constant is only
// dimensionally consistent with MHz, which is why frequency is carried in
// MHz throughout (default 2400 for a 2.4 GHz radio).
inline double path_loss_at(double distance_km, double frequency_mhz) {
    if (distance_km <= 0.0) throw std::domain_error("path_loss_at: distance must be positive");
    if (frequency_mhz <= 0.0) throw std::domain_error("path_loss_at: frequency must be positive");
    return 32.45 + 20.0 * std::log10(distance_km) + 20.0 * std::log10(frequency_mhz);
}

// Inverts the forward formula: distance in km from an observed budget.
inline double distance_from_rssi(const LinkBudget& b) {
    return std::pow(10.0, (b.path_loss_db() - 32.45 - 20.0 * std::log10(b.frequency_mhz)) / 20.0);
}

inline double distance_m(const Position& a, const Position& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Bidirectional by construction: depends only on the distance. Coincident
// positions count as in range.
inline bool in_range(const Position& a, const Position& b, const ScenarioConfig& cfg) {
    const double d_km = distance_m(a, b) / 1000.0;
    if (d_km <= 0.0) return true;
    return path_loss_at(d_km, cfg.frequency_mhz) <= cfg.max_link_budget_db();
}

}  // namespace prpsim

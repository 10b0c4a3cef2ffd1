#pragma once

// Serialization of spectra and metrics: CSV, Markdown tables and JSON.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ringcensus/census.hpp"

namespace ringcensus {

/// Header `solutions,polynomials`, one row per key in ascending order.
std::string spectrum_to_csv(const Spectrum& s);
/// Inverse of spectrum_to_csv. Throws std::invalid_argument on malformed rows.
Spectrum spectrum_from_csv(std::string_view text, const Cell& cell);

/// Two-column block: solution count, number of polynomials.
std::string spectrum_to_markdown(const Spectrum& s);

nlohmann::json spectrum_to_json(const Spectrum& s);
Spectrum spectrum_from_json(const nlohmann::json& j);

enum class Metric { MinDivisibility, PctMinDiv, SlotsUsed, PctSlotsUsed, FirstGap, LastGap };

inline constexpr Metric kAllMetrics[] = {Metric::MinDivisibility, Metric::PctMinDiv, Metric::SlotsUsed,
                                         Metric::PctSlotsUsed,    Metric::FirstGap,  Metric::LastGap};

/// Short machine name, e.g. "min_divisibility".
std::string metric_key(Metric m);
/// Human caption for grid headings.
std::string metric_title(Metric m);
/// Rendered value: integers plainly, percentages as "43.8%", missing gaps as "undefined".
std::string metric_value(const MetricsReport& r, Metric m);

nlohmann::json metrics_to_json(const MetricsReport& r);

/// Grid with one row per ring and one column per variable count; absent
/// cells are blank. Reports may be in any order.
std::string metrics_grid_markdown(const std::vector<MetricsReport>& reports, Metric m);
std::string metrics_grid_csv(const std::vector<MetricsReport>& reports, Metric m);
nlohmann::json metrics_grid_json(const std::vector<MetricsReport>& reports);

/// Large counts go out as decimal strings once they leave the 64-bit range.
nlohmann::json u128_to_json(u128 v);
u128 u128_from_json(const nlohmann::json& j);

}  // namespace ringcensus

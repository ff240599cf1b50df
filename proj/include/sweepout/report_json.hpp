#pragma once

#include <string>

#include <json.hpp>

#include "sweepout/constants.hpp"
#include "sweepout/pipeline.hpp"

namespace sweepout {

inline constexpr int kReportSchemaVersion = 1;

/// Rounds to 12 significant digits; every number in a report goes through
/// this so reports are byte-stable and diffable.
double sig12(double x);

nlohmann::ordered_json certificate_to_json(const Certificate& c);
nlohmann::ordered_json bundle_to_json(const ConstantBundle& bundle);
nlohmann::ordered_json report_to_json(const BoundReport& report, const ConstantBundle& bundle,
                                      const Surface& surface);

/// Writes the report JSON (trailing newline, two-space indent).
void export_report(const BoundReport& report, const ConstantBundle& bundle,
                   const Surface& surface, const std::string& path);

}  // namespace sweepout

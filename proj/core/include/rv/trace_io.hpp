#pragma once

#include <string>

#include "rv/bounds.hpp"
#include "rv/engine.hpp"
#include "rv/harness.hpp"
#include "rv/oracle.hpp"

namespace rv {

/// Serializers for every report type. All output is deterministic: keys keep
/// insertion order and floats print in shortest round-trip form, so identical
/// inputs give byte-identical payloads.

std::string trace_json(const Trace& trace, const WorldConfig& config);
std::string trace_csv(const Trace& trace);  // per-robot totals

std::string bounds_json(const BoundsReport& report);
std::string bounds_text(const BoundsReport& report);

std::string optimize_json(const OptimizeResult& result);
std::string optimize_text(const OptimizeResult& result);

std::string exact_report_json(const ExactReport& report);
std::string mc_comparison_json(const MonteCarloComparison& comparison);

}  // namespace rv

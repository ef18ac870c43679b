#pragma once

#include <optional>
#include <string>

#include "arclab/certificates.hpp"
#include "arclab/monitors.hpp"
#include "arclab/regime.hpp"
#include "arclab/solver.hpp"

namespace arclab {

// All serializers are deterministic: JSON with sorted keys, CSV floats at
// 17 significant digits.

std::string fmt17(double x);

// JSON fragments (objects, not full documents).
std::string verdict_json(const RegimeVerdict& v);
std::string certificate_json(const ExponentCertificate& cert,
                             const ModelParams& p);
std::string search_outcome_json(const SearchOutcome& out,
                                const ModelParams& p);
std::string report_summary_json(const MonitorReport& report);

// Wraps a result fragment with the reproducibility header (tool version and
// resolved config text).
std::string wrap_document(const std::string& command,
                          const std::string& resolved_config_json,
                          const std::string& result_key,
                          const std::string& result_fragment);

// CSV documents.
std::string atlas_csv(const Atlas& a);
std::string report_csv(const MonitorReport& report);
std::string snapshot_csv(const SimState& s);

} // namespace arclab

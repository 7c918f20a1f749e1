#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "corot/analysis.hpp"
#include "corot/sequence.hpp"

namespace corot::cli {

/// 12 significant digits, never "-0".
std::string format_data(double value);

/// Degrees with one decimal place, as in the parameter tables.
std::string format_table_degrees(double radians);

/// {"pulses": [{"theta_deg", "phi_deg"}...], "target": {"theta_deg", "phi_deg"}, "family": "..."}
nlohmann::json sequence_to_json(const PulseSequence& seq);

/// Inverse of sequence_to_json. Throws DomainError on missing or mistyped fields.
PulseSequence sequence_from_json(const nlohmann::json& doc);

/// Header `error_value,fidelity_composite,fidelity_plain`. Both sweeps must
/// share their error values.
void write_sweep_csv(std::ostream& out, const SweepResult& composite, const SweepResult& plain);
nlohmann::json sweep_to_json(const SweepResult& composite, const SweepResult& plain);

/// Long format `f,g,fidelity`, g varying slowest.
void write_grid_csv(std::ostream& out, const FidelityGrid& grid);

}  // namespace corot::cli

#include "corot/cli/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "corot/exceptions.hpp"

namespace corot::cli {

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

double require_number(const nlohmann::json& obj, const char* key, const char* where) {
  if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_number()) {
    throw DomainError(std::string("sequence JSON: ") + where + " needs a numeric '" + key + "'");
  }
  return obj.at(key).get<double>();
}

Pulse pulse_from_json(const nlohmann::json& obj, const char* where) {
  return Pulse(require_number(obj, "theta_deg", where) / kDegPerRad, require_number(obj, "phi_deg", where) / kDegPerRad);
}

nlohmann::json pulse_to_json(const Pulse& p) {
  return {{"theta_deg", p.theta() * kDegPerRad}, {"phi_deg", p.phi() * kDegPerRad}};
}

}  // namespace

std::string format_data(double value) {
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  std::string s(buf);
  // %.12g can still round a tiny negative to "-0".
  if (s == "-0") return "0";
  return s;
}

std::string format_table_degrees(double radians) {
  char buf[32];
  const double d = radians * kDegPerRad;
  std::snprintf(buf, sizeof buf, "%.1f", d);
  std::string s(buf);
  if (s == "-0.0") s = "0.0";
  return s;
}

nlohmann::json sequence_to_json(const PulseSequence& seq) {
  nlohmann::json pulses = nlohmann::json::array();
  for (const Pulse& p : seq.pulses()) pulses.push_back(pulse_to_json(p));
  return {{"pulses", std::move(pulses)}, {"target", pulse_to_json(seq.target())}, {"family", describe(seq.family())}};
}

PulseSequence sequence_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw DomainError("sequence JSON must be an object");
  if (!doc.contains("pulses") || !doc.at("pulses").is_array()) {
    throw DomainError("sequence JSON needs a 'pulses' array");
  }
  if (!doc.contains("target")) throw DomainError("sequence JSON needs a 'target' object");
  if (!doc.contains("family") || !doc.at("family").is_string()) {
    throw DomainError("sequence JSON needs a 'family' string");
  }
  std::vector<Pulse> pulses;
  for (const auto& p : doc.at("pulses")) pulses.push_back(pulse_from_json(p, "pulse"));
  return PulseSequence(std::move(pulses), pulse_from_json(doc.at("target"), "target"),
                       parse_family(doc.at("family").get<std::string>()));
}

void write_sweep_csv(std::ostream& out, const SweepResult& composite, const SweepResult& plain) {
  out << "error_value,fidelity_composite,fidelity_plain\n";
  for (std::size_t i = 0; i < composite.samples.size(); ++i) {
    out << format_data(composite.samples[i].error_value) << ',' << format_data(composite.samples[i].fidelity) << ','
        << format_data(plain.samples[i].fidelity) << '\n';
  }
}

nlohmann::json sweep_to_json(const SweepResult& composite, const SweepResult& plain) {
  nlohmann::json samples = nlohmann::json::array();
  for (std::size_t i = 0; i < composite.samples.size(); ++i) {
    samples.push_back({{"error_value", composite.samples[i].error_value},
                       {"fidelity_composite", composite.samples[i].fidelity},
                       {"fidelity_plain", plain.samples[i].fidelity}});
  }
  return {{"axis", to_string(composite.axis)}, {"sequence_id", composite.sequence_id}, {"samples", std::move(samples)}};
}

void write_grid_csv(std::ostream& out, const FidelityGrid& grid) {
  out << "f,g,fidelity\n";
  for (std::size_t gi = 0; gi < grid.g_values.size(); ++gi) {
    for (std::size_t fi = 0; fi < grid.f_values.size(); ++fi) {
      out << format_data(grid.f_values[fi]) << ',' << format_data(grid.g_values[gi]) << ','
          << format_data(grid.value(fi, gi)) << '\n';
    }
  }
}

}  // namespace corot::cli

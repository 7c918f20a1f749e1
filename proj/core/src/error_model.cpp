#include "corot/error_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "corot/exceptions.hpp"

namespace corot {

double normalize_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phi, two_pi);
  if (r < 0.0) r += two_pi;
  // fmod of a tiny negative value can round up to exactly 2π.
  if (r >= two_pi) r = 0.0;
  return r;
}

Pulse::Pulse(double theta, double phi) : theta_(theta), phi_(0.0) {
  if (!std::isfinite(theta) || theta < 0.0) {
    std::ostringstream msg;
    msg << "pulse rotation angle must be finite and >= 0, got " << theta;
    throw DomainError(msg.str());
  }
  if (!std::isfinite(phi)) throw DomainError("pulse phase must be finite");
  phi_ = normalize_phase(phi);
}

ErrorModel::ErrorModel(double f, double g) : f_(f), g_(g) {
  if (!std::isfinite(f)) throw DomainError("off-resonance fraction f must be finite");
  if (!std::isfinite(g) || g <= -1.0) {
    std::ostringstream msg;
    msg << "pulse-length error g must be finite and > -1, got " << g;
    throw DomainError(msg.str());
  }
}

AxisAngle effective_rotation(const Pulse& pulse, const ErrorModel& error) {
  const double f = error.f();
  const double r = std::hypot(1.0, f);
  return {{std::cos(pulse.phi()) / r, std::sin(pulse.phi()) / r, f / r},
          pulse.theta() * (1.0 + error.g()) * r};
}

Quaternion pulse_quaternion(const Pulse& pulse, const ErrorModel& error) {
  const AxisAngle rot = effective_rotation(pulse, error);
  return quat_from_axis_angle(rot.angle, rot.axis);
}

Quaternion ideal_quaternion(const Pulse& pulse) { return pulse_quaternion(pulse, ErrorModel{}); }

Quaternion sequence_quaternion(std::span<const Pulse> pulses, const ErrorModel& error) {
  if (pulses.empty()) throw DomainError("pulse sequence must not be empty");
  Quaternion q = pulse_quaternion(pulses.front(), error);
  for (const Pulse& p : pulses.subspan(1)) q = quat_multiply(q, pulse_quaternion(p, error));
  return q;
}

RotationMatrix pulse_matrix(const Pulse& pulse, const ErrorModel& error) {
  const AxisAngle rot = effective_rotation(pulse, error);
  return rotation_matrix(rot.angle, rot.axis);
}

RotationMatrix sequence_matrix(std::span<const Pulse> pulses, const ErrorModel& error) {
  if (pulses.empty()) throw DomainError("pulse sequence must not be empty");
  RotationMatrix m = RotationMatrix::identity();
  for (const Pulse& p : pulses) m = compose(m, pulse_matrix(p, error));
  return m;
}

}  // namespace corot

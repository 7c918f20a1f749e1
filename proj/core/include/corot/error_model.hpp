#pragma once

#include <span>

#include "corot/rotor.hpp"

namespace corot {

/// One RF pulse: nominal rotation angle theta (radians, >= 0) about an axis
/// in the xy-plane at phase phi (radians, stored in [0, 2π)).
class Pulse {
 public:
  Pulse(double theta, double phi);

  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }

  friend bool operator==(const Pulse&, const Pulse&) = default;

 private:
  double theta_;
  double phi_;
};

/// Systematic error setting. f is the off-resonance fraction δ/ν₁ (any
/// finite value); g is the fractional pulse-length error (g > −1).
class ErrorModel {
 public:
  constexpr ErrorModel() = default;
  ErrorModel(double f, double g);

  static ErrorModel off_resonance(double f) { return {f, 0.0}; }
  static ErrorModel pulse_length(double g) { return {0.0, g}; }

  double f() const noexcept { return f_; }
  double g() const noexcept { return g_; }

 private:
  double f_ = 0.0;
  double g_ = 0.0;
};

struct AxisAngle {
  Vec3 axis;
  double angle;
};

/// The rotation a pulse actually performs: axis {cos φ, sin φ, f}/√(1+f²),
/// angle θ·(1+g)·√(1+f²). The tilted field acts for a mis-set duration, so
/// both single-error models are exact special cases.
AxisAngle effective_rotation(const Pulse& pulse, const ErrorModel& error);

Quaternion pulse_quaternion(const Pulse& pulse, const ErrorModel& error);

/// Error-free quaternion of a pulse, i.e. the ideal target rotation.
Quaternion ideal_quaternion(const Pulse& pulse);

/// Time-ordered product of pulse quaternions. Throws DomainError when empty.
Quaternion sequence_quaternion(std::span<const Pulse> pulses, const ErrorModel& error);

/// Matrix oracle for the same quantities (Rodrigues per pulse, matrix products).
RotationMatrix pulse_matrix(const Pulse& pulse, const ErrorModel& error);
RotationMatrix sequence_matrix(std::span<const Pulse> pulses, const ErrorModel& error);

/// Wraps an angle into [0, 2π).
double normalize_phase(double phi);

}  // namespace corot

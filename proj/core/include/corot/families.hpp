#pragma once

#include <array>
#include <span>

#include "corot/sequence.hpp"

namespace corot {

// All angles in radians. Every builder returns a θx sequence (target phase 0)
// unless noted; use offset_phases() for other phases. Builders verify that the
// emitted sequence reproduces its target with fidelity 1 − 1e-9 at zero error.

/// Nominal angles of the x, −x, x off-resonance family:
///   θ1 = 2n1π + θ/2 − k,  θ2 = 2n2π − 2k,  θ3 = 2n3π + θ/2 − k,
/// with k = arcsin(sin(θ/2)/2). Requires 0 <= θ <= 2π and all three angles
/// non-negative; throws DomainError naming the offending pulse otherwise.
std::array<double, 3> corpse_angles(double theta, CorpseIndices indices);

/// Pulses (θ1)0 (θ2)π (θ3)0. Defaults to CORPSE, n = (1, 1, 0).
PulseSequence build_corpse(double theta, CorpseIndices indices = kCorpse);

double sinc(double x);

/// Inverse of sinc on the monotone branch (0, π]; y must lie in [0, 1).
/// Bisection to 1e-12 absolute.
double arcsinc(double y);

struct ScrofulousParams {
  double theta1;  // = θ3
  double phi1;    // = φ3
  double theta2;  // always π
  double phi2;
};

/// Time-symmetric pulse-length compensating triple (θ1)φ1 (π)φ2 (θ1)φ1 for a
/// θx rotation with 0 < θ <= π. Phases are returned in [0, 2π).
ScrofulousParams scrofulous_params(double theta, ScrofulousBranch branch = ScrofulousBranch::minus);

PulseSequence build_scrofulous(double theta, ScrofulousBranch branch = ScrofulousBranch::minus);

struct WnPhases {
  double phi1;
  double phi2;  // 3·φ1 mod 2π
};

/// Phases of the net-identity correction block π(φ1) 2π(φ2) π(φ1) when n such
/// blocks accompany a θx pulse: φ1 = arccos(−θ/(4nπ)), φ2 = 3φ1.
WnPhases wn_phases(double theta, int n);

inline constexpr std::array<double, 1> kBb1Prefix{0.0};
inline constexpr std::array<double, 1> kBb1Symmetric{0.5};

/// θx pulse with n identical Wn blocks inserted after fractions p·θ of the
/// rotation. placements.size() must equal n and each p must lie in [0, 1].
/// {0} is the original BB1 ordering, {1} the reversed one, {0.5} the
/// time-symmetric form. Zero-length fragments are omitted.
PulseSequence build_bb1(double theta, int n = 1, std::span<const double> placements = kBb1Prefix);

PulseSequence build_plain(double theta, double phi = 0.0);

/// Shifts every pulse phase and the target phase by delta_phi (mod 2π).
PulseSequence offset_phases(const PulseSequence& seq, double delta_phi);

}  // namespace corot

#include "corot/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "corot/exceptions.hpp"

namespace corot {

namespace {

using std::numbers::pi;

constexpr double kSelfCheckTolerance = 1e-9;
constexpr double kArcsincTolerance = 1e-12;
// Slack for angles that are zero analytically but land at −1e-16.
constexpr double kAngleSlack = 1e-12;

PulseSequence self_checked(PulseSequence seq) {
  const double gap = sequence_infidelity(seq, ErrorModel{});
  if (!(gap <= kSelfCheckTolerance)) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "internal error: " << describe(seq.family())
        << " sequence misses its target at zero error (1 - F = " << gap << ")";
    throw std::logic_error(msg.str());
  }
  return seq;
}

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

std::array<double, 3> corpse_angles(double theta, CorpseIndices indices) {
  if (!(theta >= 0.0 && theta <= 2.0 * pi)) {
    throw DomainError("CORPSE target angle must lie in [0, 2pi]");
  }
  const double k = std::asin(std::sin(0.5 * theta) / 2.0);
  std::array<double, 3> angles{2.0 * indices.n1 * pi + 0.5 * theta - k,
                               2.0 * indices.n2 * pi - 2.0 * k,
                               2.0 * indices.n3 * pi + 0.5 * theta - k};
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (angles[i] < -kAngleSlack) {
      std::ostringstream msg;
      msg << "CORPSE indices (" << indices.n1 << ',' << indices.n2 << ',' << indices.n3
          << ") give a negative angle for pulse " << i + 1 << " (" << angles[i] * 180.0 / pi
          << " deg)";
      throw DomainError(msg.str());
    }
    angles[i] = std::max(angles[i], 0.0);
  }
  return angles;
}

PulseSequence build_corpse(double theta, CorpseIndices indices) {
  const auto [t1, t2, t3] = corpse_angles(theta, indices);
  return self_checked(PulseSequence({Pulse(t1, 0.0), Pulse(t2, pi), Pulse(t3, 0.0)},
                                    Pulse(theta, 0.0), CorpseFamily{indices}));
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

double arcsinc(double y) {
  if (!(y >= 0.0 && y < 1.0)) {
    std::ostringstream msg;
    msg << "arcsinc argument must lie in [0, 1), got " << y;
    throw DomainError(msg.str());
  }
  // sinc decreases strictly from 1 to 0 on (0, π].
  double lo = 0.0;
  double hi = pi;
  while (hi - lo > kArcsincTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (sinc(mid) > y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ScrofulousParams scrofulous_params(double theta, ScrofulousBranch branch) {
  if (!(theta > 0.0 && theta <= pi)) {
    throw DomainError("SCROFULOUS target angle must lie in (0, pi]");
  }
  const double theta1 = arcsinc(2.0 * std::cos(0.5 * theta) / pi);
  const double phase_arg = -pi * std::cos(theta1) / (2.0 * theta1 * std::sin(0.5 * theta));
  const double split_arg = -pi / (2.0 * theta1);
  if (std::abs(phase_arg) > 1.0 + 1e-12 || std::abs(split_arg) > 1.0 + 1e-12) {
    throw DomainError("SCROFULOUS phase equations have no real solution for this angle");
  }
  const double split = std::acos(clamp_unit(split_arg));
  double phi1 = std::acos(clamp_unit(phase_arg));
  double phi2 = phi1 - split;
  if (branch == ScrofulousBranch::plus) {
    // Mirror solution: the plus sign only closes on θx with φ1 negated.
    phi1 = -phi1;
    phi2 = phi1 + split;
  }
  return {theta1, normalize_phase(phi1), pi, normalize_phase(phi2)};
}

PulseSequence build_scrofulous(double theta, ScrofulousBranch branch) {
  const ScrofulousParams p = scrofulous_params(theta, branch);
  return self_checked(PulseSequence(
      {Pulse(p.theta1, p.phi1), Pulse(p.theta2, p.phi2), Pulse(p.theta1, p.phi1)},
      Pulse(theta, 0.0), ScrofulousFamily{branch}));
}

WnPhases wn_phases(double theta, int n) {
  if (n < 1) throw DomainError("number of Wn blocks must be positive");
  if (!(theta >= 0.0 && theta <= 2.0 * pi)) throw DomainError("Wn target angle must lie in [0, 2pi]");
  const double arg = -theta / (4.0 * n * pi);
  if (arg < -1.0 || arg > 1.0) throw DomainError("Wn phase arccos argument outside [-1, 1]");
  const double phi1 = std::acos(arg);
  return {phi1, normalize_phase(3.0 * phi1)};
}

PulseSequence build_bb1(double theta, int n, std::span<const double> placements) {
  if (placements.size() != static_cast<std::size_t>(std::max(n, 0))) {
    std::ostringstream msg;
    msg << "expected " << n << " Wn placements, got " << placements.size();
    throw DomainError(msg.str());
  }
  for (double p : placements) {
    if (!(p >= 0.0 && p <= 1.0)) {
      std::ostringstream msg;
      msg << "Wn placement fraction must lie in [0, 1], got " << p;
      throw DomainError(msg.str());
    }
  }
  const WnPhases phases = wn_phases(theta, n);
  std::vector<double> order(placements.begin(), placements.end());
  std::sort(order.begin(), order.end());

  std::vector<Pulse> pulses;
  pulses.reserve(3 * order.size() + order.size() + 1);
  double done = 0.0;
  for (double p : order) {
    const double fragment = p * theta - done;
    if (fragment > 0.0) pulses.emplace_back(fragment, 0.0);
    done = p * theta;
    pulses.emplace_back(pi, phases.phi1);
    pulses.emplace_back(2.0 * pi, phases.phi2);
    pulses.emplace_back(pi, phases.phi1);
  }
  if (theta - done > 0.0) pulses.emplace_back(theta - done, 0.0);

  return self_checked(PulseSequence(std::move(pulses), Pulse(theta, 0.0),
                                    WnCorrectedFamily{n, {placements.begin(), placements.end()}}));
}

PulseSequence build_plain(double theta, double phi) {
  return PulseSequence({Pulse(theta, phi)}, Pulse(theta, phi), PlainFamily{});
}

PulseSequence offset_phases(const PulseSequence& seq, double delta_phi) {
  std::vector<Pulse> shifted;
  shifted.reserve(seq.pulses().size());
  for (const Pulse& p : seq.pulses()) shifted.emplace_back(p.theta(), p.phi() + delta_phi);
  return PulseSequence(std::move(shifted), Pulse(seq.target().theta(), seq.target().phi() + delta_phi),
                       seq.family());
}

}  // namespace corot

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "corot/sequence.hpp"

namespace corot {

enum class ErrorAxis { f, g };

const char* to_string(ErrorAxis axis);

/// Error model with `value` on `axis` and zero on the other.
ErrorModel error_on(ErrorAxis axis, double value);

/// Evenly spaced closed interval. lo < hi with count >= 2, or lo == hi with
/// count == 1 for a single sample.
struct SampleRange {
  double lo;
  double hi;
  std::size_t count;

  double at(std::size_t i) const;
};

struct SweepSample {
  double error_value;
  double fidelity;
};

struct SweepResult {
  ErrorAxis axis;
  std::vector<SweepSample> samples;
  std::string sequence_id;
};

SweepResult sweep(const PulseSequence& seq, ErrorAxis axis, const SampleRange& range);

/// Fidelity under simultaneous errors, stored row-major with g as the slow
/// index: value(fi, gi) = fidelity[gi * f_values.size() + fi].
struct FidelityGrid {
  std::vector<double> f_values;
  std::vector<double> g_values;
  std::vector<double> fidelity;

  double value(std::size_t fi, std::size_t gi) const { return fidelity[gi * f_values.size() + fi]; }
};

FidelityGrid grid(const PulseSequence& seq, const SampleRange& f_range, const SampleRange& g_range);

/// Even-power Maclaurin coefficients of F(ε) = c0 + c2ε² + c4ε⁴ + c6ε⁶ + c8ε⁸ + …
struct SeriesCoefficients {
  ErrorAxis axis;
  std::array<double, 5> c;  // c0, c2, c4, c6, c8
  double fit_residual;      // max |fit − data| over the samples
  double window;            // half-width of the sampled ε interval

  double c0() const { return c[0]; }
  double c2() const { return c[1]; }
  double c4() const { return c[2]; }
  double c6() const { return c[3]; }
  double c8() const { return c[4]; }
};

struct SeriesFitOptions {
  double window = 0.05;
  double fallback_window = 0.02;
  std::size_t samples = 41;
  int max_power = 12;  // fitted; only c0..c8 are reported
  double residual_gate = 1e-10;
};

/// Least-squares fit of an even polynomial to the sampled fidelity on
/// [−window, window]; retries once on the fallback window and throws
/// ConditioningError if the residual gate still fails.
SeriesCoefficients series_coefficients(const PulseSequence& seq, ErrorAxis axis,
                                       const SeriesFitOptions& options = {});

/// Positive error magnitude where F_seq − F_baseline changes sign inside
/// [lo, hi], found by bisection. Throws BracketError when the endpoints do
/// not straddle a sign change.
double crossover(const PulseSequence& seq, const PulseSequence& baseline, ErrorAxis axis,
                 std::pair<double, double> bracket = {0.05, 1.0}, double tolerance = 1e-9);

/// d/dε of (s, vx, vy, vz) of the composite quaternion at ε = 0, by central
/// differences (step 1e-5) with one Richardson extrapolation. Each sample is
/// sign-aligned to the ideal target first.
std::array<double, 4> first_order_deviation(const PulseSequence& seq, ErrorAxis axis);

/// |F(+ε) − F(−ε)|
double parity_gap(const PulseSequence& seq, ErrorAxis axis, double epsilon);

}  // namespace corot

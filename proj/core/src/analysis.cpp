#include "corot/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "corot/exceptions.hpp"

namespace corot {

namespace {

void validate_range(const SampleRange& r, ErrorAxis axis, const char* what) {
  std::ostringstream msg;
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi)) {
    msg << what << " range must be finite";
  } else if (r.count == 0) {
    msg << what << " sample count must be positive";
  } else if (r.count == 1 && r.lo != r.hi) {
    msg << what << " range with a single sample needs lo == hi";
  } else if (r.count >= 2 && !(r.lo < r.hi)) {
    msg << what << " range needs lo < hi, got [" << r.lo << ", " << r.hi << "]";
  } else if (axis == ErrorAxis::g && !(r.lo > -1.0)) {
    msg << what << " range must stay above g = -1, got lo = " << r.lo;
  } else {
    return;
  }
  throw DomainError(msg.str());
}

std::vector<double> sample_points(const SampleRange& r) {
  std::vector<double> xs(r.count);
  for (std::size_t i = 0; i < r.count; ++i) xs[i] = r.at(i);
  return xs;
}

struct FitResult {
  std::array<double, 5> c;
  double residual;
};

FitResult fit_even(const PulseSequence& seq, ErrorAxis axis, double window,
                   const SeriesFitOptions& options) {
  const auto n = static_cast<Eigen::Index>(options.samples);
  const int terms = options.max_power / 2 + 1;
  Eigen::MatrixXd basis(n, terms);
  Eigen::VectorXd data(n);
  const SampleRange eps{-window, window, options.samples};
  for (Eigen::Index i = 0; i < n; ++i) {
    const double e = eps.at(static_cast<std::size_t>(i));
    const double u = e / window;
    double power = 1.0;
    for (int k = 0; k < terms; ++k) {
      basis(i, k) = power;
      power *= u * u;
    }
    data(i) = sequence_infidelity(seq, error_on(axis, e));
  }
  const Eigen::VectorXd a = basis.colPivHouseholderQr().solve(data);
  const double residual = (basis * a - data).cwiseAbs().maxCoeff();

  // Fit was on 1 − F in the scaled variable ε/window.
  FitResult out{{}, residual};
  double scale = 1.0;
  for (int k = 0; k < static_cast<int>(out.c.size()); ++k) {
    const double ak = k < terms ? a(k) : 0.0;
    out.c[k] = (k == 0 ? 1.0 - ak : -ak / scale);
    scale *= window * window;
  }
  return out;
}

}  // namespace

const char* to_string(ErrorAxis axis) { return axis == ErrorAxis::f ? "f" : "g"; }

ErrorModel error_on(ErrorAxis axis, double value) {
  return axis == ErrorAxis::f ? ErrorModel::off_resonance(value) : ErrorModel::pulse_length(value);
}

double SampleRange::at(std::size_t i) const {
  if (count <= 1) return lo;
  const double denom = static_cast<double>(count - 1);
  const double x = (lo * static_cast<double>(count - 1 - i) + hi * static_cast<double>(i)) / denom;
  return x == 0.0 ? 0.0 : x;  // no negative zero
}

SweepResult sweep(const PulseSequence& seq, ErrorAxis axis, const SampleRange& range) {
  validate_range(range, axis, to_string(axis));
  SweepResult out{axis, {}, describe(seq.family())};
  out.samples.reserve(range.count);
  for (double x : sample_points(range)) {
    out.samples.push_back({x, sequence_fidelity(seq, error_on(axis, x))});
  }
  return out;
}

FidelityGrid grid(const PulseSequence& seq, const SampleRange& f_range, const SampleRange& g_range) {
  validate_range(f_range, ErrorAxis::f, "f");
  validate_range(g_range, ErrorAxis::g, "g");
  FidelityGrid out{sample_points(f_range), sample_points(g_range), {}};
  out.fidelity.reserve(out.f_values.size() * out.g_values.size());
  for (double g : out.g_values) {
    for (double f : out.f_values) out.fidelity.push_back(sequence_fidelity(seq, ErrorModel(f, g)));
  }
  return out;
}

SeriesCoefficients series_coefficients(const PulseSequence& seq, ErrorAxis axis,
                                       const SeriesFitOptions& options) {
  if (options.samples < static_cast<std::size_t>(options.max_power / 2 + 1) || options.max_power < 8 ||
      options.max_power % 2 != 0) {
    throw DomainError("series fit needs an even max_power >= 8 and enough samples");
  }
  if (sequence_infidelity(seq, ErrorModel{}) > 1e-9) {
    throw DomainError("series expansion needs a sequence that is exact at zero error");
  }
  double window = options.window;
  FitResult fit = fit_even(seq, axis, window, options);
  if (!(fit.residual <= options.residual_gate)) {
    window = options.fallback_window;
    fit = fit_even(seq, axis, window, options);
  }
  if (!(fit.residual <= options.residual_gate)) {
    std::ostringstream msg;
    msg << "even-polynomial fit residual " << fit.residual << " exceeds gate "
        << options.residual_gate << " even on window " << window;
    throw ConditioningError(msg.str(), fit.residual);
  }
  return {axis, fit.c, fit.residual, window};
}

double crossover(const PulseSequence& seq, const PulseSequence& baseline, ErrorAxis axis,
                 std::pair<double, double> bracket, double tolerance) {
  auto [lo, hi] = bracket;
  if (!(lo < hi) || (axis == ErrorAxis::g && !(lo > -1.0))) {
    throw DomainError("crossover bracket must satisfy lo < hi (and lo > -1 on the g axis)");
  }
  const auto gap = [&](double x) {
    const ErrorModel e = error_on(axis, x);
    return sequence_fidelity(seq, e) - sequence_fidelity(baseline, e);
  };
  double d_lo = gap(lo);
  const double d_hi = gap(hi);
  if (!(d_lo * d_hi < 0.0)) {
    std::ostringstream msg;
    msg << "no sign change of F_seq - F_baseline on [" << lo << ", " << hi << "]: " << d_lo
        << " and " << d_hi;
    throw BracketError(msg.str(), d_lo, d_hi);
  }
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double d_mid = gap(mid);
    if (d_mid == 0.0) return std::abs(mid);
    if ((d_mid < 0.0) == (d_lo < 0.0)) {
      lo = mid;
      d_lo = d_mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(0.5 * (lo + hi));
}

std::array<double, 4> first_order_deviation(const PulseSequence& seq, ErrorAxis axis) {
  constexpr double step = 1e-5;
  const Quaternion ideal = ideal_quaternion(seq.target());
  const auto aligned = [&](double eps) {
    Quaternion q = sequence_quaternion(seq, error_on(axis, eps));
    if (quat_dot(q, ideal) < 0.0) q = -q;
    return std::array<double, 4>{q.s, q.v[0], q.v[1], q.v[2]};
  };
  const auto central = [&](double h) {
    const auto plus = aligned(h);
    const auto minus = aligned(-h);
    std::array<double, 4> d{};
    for (int i = 0; i < 4; ++i) d[i] = (plus[i] - minus[i]) / (2.0 * h);
    return d;
  };
  const auto coarse = central(step);
  const auto fine = central(0.5 * step);
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  return out;
}

double parity_gap(const PulseSequence& seq, ErrorAxis axis, double epsilon) {
  return std::abs(sequence_fidelity(seq, error_on(axis, epsilon)) -
                  sequence_fidelity(seq, error_on(axis, -epsilon)));
}

}  // namespace corot

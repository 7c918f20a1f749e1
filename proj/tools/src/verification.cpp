#include "corot/cli/verification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "corot/analysis.hpp"
#include "corot/exceptions.hpp"
#include "corot/families.hpp"

namespace corot::cli {

namespace {

using std::numbers::pi;

constexpr double kRadPerDeg = pi / 180.0;
constexpr double kTableTolerance = 0.05;  // degrees

double deg(double d) { return d * kRadPerDeg; }
double to_deg(double r) { return r / kRadPerDeg; }

struct Builder {
  std::vector<CheckResult> results;

  void add(std::string name, bool passed, std::string detail) {
    results.push_back({std::move(name), passed, std::move(detail)});
  }

  // Runs `body`, turning any exception into a failed check.
  void check(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    try {
      auto [ok, detail] = body();
      add(name, ok, std::move(detail));
    } catch (const std::exception& e) {
      add(name, false, std::string("threw: ") + e.what());
    }
  }
};

std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

// Largest |computed − expected| in degrees, with the offending entry named.
struct TableDiff {
  double worst = 0.0;
  std::string where;
  int entries = 0;
  int failures = 0;

  void compare(double computed_deg, double expected_deg, const std::string& label) {
    const double d = std::abs(computed_deg - expected_deg);
    ++entries;
    if (d > kTableTolerance) {
      ++failures;
      where += (where.empty() ? "" : "; ") + label + " = " + fmt(computed_deg, 8) + " vs " + fmt(expected_deg, 4);
    }
    worst = std::max(worst, d);
  }

  std::pair<bool, std::string> verdict() const {
    std::string detail = std::to_string(entries - failures) + "/" + std::to_string(entries) +
                         " entries within 0.05 deg, max deviation " + fmt(worst, 4) + " deg";
    if (failures) detail += " (" + where + ")";
    return {failures == 0, detail};
  }
};

void table_checks(Builder& b) {
  b.check("CORPSE angle table", [] {
    const double rows[4][4] = {{30, 367.6, 345.1, 7.6}, {45, 371.5, 337.9, 11.5}, {90, 384.3, 318.6, 24.3},
                               {180, 420.0, 300.0, 60.0}};
    TableDiff t;
    for (const auto& r : rows) {
      const auto a = corpse_angles(deg(r[0]), kCorpse);
      for (int k = 0; k < 3; ++k) t.compare(to_deg(a[k]), r[k + 1], fmt(r[0]) + " deg theta" + std::to_string(k + 1));
    }
    return t.verdict();
  });
  b.check("SCROFULOUS parameter table", [] {
    const double rows[4][5] = {{30, 93.0, 78.6, 180.0, 273.3}, {45, 96.7, 73.4, 180.0, 274.9},
                               {90, 115.2, 62.0, 180.0, 280.6}, {180, 180.0, 60.0, 180.0, 300.0}};
    TableDiff t;
    for (const auto& r : rows) {
      const ScrofulousParams p = scrofulous_params(deg(r[0]));
      const std::string at = fmt(r[0]) + " deg ";
      t.compare(to_deg(p.theta1), r[1], at + "theta1");
      t.compare(to_deg(p.phi1), r[2], at + "phi1");
      t.compare(to_deg(p.theta2), r[3], at + "theta2");
      t.compare(to_deg(p.phi2), r[4], at + "phi2");
    }
    return t.verdict();
  });
  b.check("W1 phase table", [] {
    const double rows[4][3] = {{30, 92.4, 277.2}, {45, 93.6, 280.8}, {90, 97.2, 291.5}, {180, 104.5, 313.4}};
    TableDiff t;
    for (const auto& r : rows) {
      const WnPhases w = wn_phases(deg(r[0]), 1);
      t.compare(to_deg(w.phi1), r[1], fmt(r[0]) + " deg phi1");
      t.compare(to_deg(w.phi2), r[2], fmt(r[0]) + " deg phi2");
    }
    return t.verdict();
  });
}

void series_checks(Builder& b) {
  b.check("plain-pulse f^2 coefficient (cos theta - 1)/4", [] {
    double worst = 0.0;
    for (double t : {30.0, 90.0, 180.0}) {
      const double c2 = series_coefficients(build_plain(deg(t)), ErrorAxis::f).c2();
      worst = std::max(worst, std::abs(c2 - (std::cos(deg(t)) - 1.0) / 4.0));
    }
    return std::pair{worst < 1e-6, "max |c2 - (cos theta - 1)/4| = " + fmt(worst, 3) + " over 30, 90, 180 deg"};
  });
  b.check("CORPSE removes f^2", [] {
    double worst = 0.0;
    for (double t : {30.0, 45.0, 90.0, 180.0}) {
      worst = std::max(worst, std::abs(series_coefficients(build_corpse(deg(t)), ErrorAxis::f).c2()));
    }
    return std::pair{worst < 1e-8, "max |c2(f)| = " + fmt(worst, 3)};
  });
  b.check("SCROFULOUS removes g^2", [] {
    double worst = 0.0;
    for (double t : {30.0, 90.0, 180.0}) {
      worst = std::max(worst, std::abs(series_coefficients(build_scrofulous(deg(t)), ErrorAxis::g).c2()));
    }
    return std::pair{worst < 1e-8, "max |c2(g)| = " + fmt(worst, 3)};
  });
  b.check("BB1 cancels g errors below sixth order", [] {
    double worst = 0.0;
    double smallest_c6 = INFINITY;
    for (double t : {30.0, 90.0, 180.0}) {
      const SeriesCoefficients c = series_coefficients(build_bb1(deg(t)), ErrorAxis::g);
      worst = std::max({worst, std::abs(c.c2()), std::abs(c.c4())});
      smallest_c6 = std::min(smallest_c6, std::abs(c.c6()));
    }
    return std::pair{worst < 1e-8 && smallest_c6 > 1e-3,
                     "max |c2|,|c4| = " + fmt(worst, 3) + ", min |c6| = " + fmt(smallest_c6, 4)};
  });
  b.check("SCROFULOUS-180 f sensitivity F = 1 - 2f^2", [] {
    const double c2 = series_coefficients(build_scrofulous(pi), ErrorAxis::f).c2();
    return std::pair{std::abs(c2 + 2.0) < 1e-6, "c2(f) = " + fmt(c2, 12)};
  });
  b.check("BB1 f^2 term equals plain pulse", [] {
    double worst = 0.0;
    for (double t : {30.0, 90.0, 180.0}) {
      const double c2 = series_coefficients(build_bb1(deg(t), 1, kBb1Symmetric), ErrorAxis::f).c2();
      worst = std::max(worst, std::abs(c2 - (std::cos(deg(t)) - 1.0) / 4.0));
    }
    return std::pair{worst < 1e-6, "max |c2 - (cos theta - 1)/4| = " + fmt(worst, 3)};
  });
  b.check("CORPSE f^4 depends only on n1 - n2 + n3", [] {
    const auto c4 = [](CorpseIndices idx) { return series_coefficients(build_corpse(pi, idx), ErrorAxis::f).c4(); };
    const double ref = c4({1, 1, 0});
    const double spread = std::max(std::abs(c4({2, 2, 0}) - ref), std::abs(c4({1, 2, 1}) - ref));
    const double minus = c4(kShortCorpse);
    const double plus = c4({1, 1, 1});
    const bool ok = spread < 1e-6 && std::abs(ref) < std::abs(minus) && std::abs(ref) < std::abs(plus) &&
                    std::abs(minus - ref) > 1e-3 && std::abs(plus - ref) > 1e-3;
    return std::pair{ok, "c4(n=0) = " + fmt(ref, 8) + " (spread " + fmt(spread, 2) + "), c4(n=-1) = " +
                             fmt(minus, 8) + ", c4(n=+1) = " + fmt(plus, 8)};
  });
  b.check("W2 sixth-order term smaller than W1", [] {
    const std::array<double, 2> together{0.0, 0.0};
    bool ok = true;
    std::string detail;
    for (double t : {90.0, 180.0}) {
      const SeriesCoefficients w1 = series_coefficients(build_bb1(deg(t)), ErrorAxis::g);
      const SeriesCoefficients w2 = series_coefficients(build_bb1(deg(t), 2, together), ErrorAxis::g);
      ok = ok && std::abs(w2.c6()) < std::abs(w1.c6()) && std::abs(w2.c6()) > 1e-3 && std::abs(w2.c2()) < 1e-8 &&
           std::abs(w2.c4()) < 1e-8;
      detail += (detail.empty() ? "" : "; ") + fmt(t) + " deg: c6(W1) = " + fmt(w1.c6(), 8) + ", c6(W2) = " +
                fmt(w2.c6(), 8);
    }
    return std::pair{ok, detail};
  });
}

void structural_checks(Builder& b) {
  b.check("CORPSE vs plain crossover at 180 deg", [] {
    const double x = crossover(build_corpse(pi), build_plain(pi), ErrorAxis::f, {0.3, 1.0});
    return std::pair{std::abs(x - 0.663) <= 1e-3, "|f| = " + fmt(x, 6)};
  });
  b.check("CORPSE vs plain crossover at 30 deg", [] {
    const double x = crossover(build_corpse(deg(30)), build_plain(deg(30)), ErrorAxis::f, {0.1, 1.0});
    return std::pair{std::abs(x - 0.297) <= 1e-3, "|f| = " + fmt(x, 6)};
  });
  b.check("BB1 placement invariance", [] {
    double worst = 0.0;
    for (double t : {30.0, 90.0, 180.0}) {
      const SweepResult ref = sweep(build_bb1(deg(t)), ErrorAxis::g, {-0.5, 0.5, 101});
      for (double p : {0.25, 0.5, 1.0}) {
        const std::array<double, 1> at{p};
        const SweepResult s = sweep(build_bb1(deg(t), 1, at), ErrorAxis::g, {-0.5, 0.5, 101});
        for (std::size_t i = 0; i < s.samples.size(); ++i) {
          worst = std::max(worst, std::abs(s.samples[i].fidelity - ref.samples[i].fidelity));
        }
      }
    }
    return std::pair{worst < 1e-10, "max pointwise difference " + fmt(worst, 3)};
  });
  b.check("CORPSE under g identical to plain", [] {
    double worst = 0.0;
    for (double t : {30.0, 90.0, 180.0}) {
      const SweepResult c = sweep(build_corpse(deg(t)), ErrorAxis::g, {-0.99, 0.99, 199});
      const SweepResult p = sweep(build_plain(deg(t)), ErrorAxis::g, {-0.99, 0.99, 199});
      for (std::size_t i = 0; i < c.samples.size(); ++i) {
        worst = std::max(worst, std::abs(c.samples[i].fidelity - p.samples[i].fidelity));
      }
    }
    return std::pair{worst < 1e-12, "max pointwise difference " + fmt(worst, 3)};
  });
}

void figure_checks(Builder& b) {
  b.check("CORPSE-180 dominates plain for |f| <= 0.6", [] {
    const SweepResult c = sweep(build_corpse(pi), ErrorAxis::f, {-0.6, 0.6, 1201});
    const SweepResult p = sweep(build_plain(pi), ErrorAxis::f, {-0.6, 0.6, 1201});
    double worst = INFINITY;
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
      worst = std::min(worst, c.samples[i].fidelity - p.samples[i].fidelity);
    }
    return std::pair{worst >= 0.0, "min(F_corpse - F_plain) = " + fmt(worst, 3)};
  });
  b.check("BB1 beats plain for 0 < |g| < 1", [] {
    double worst = INFINITY;
    for (double t : {90.0, 180.0}) {
      const SweepResult s = sweep(build_bb1(deg(t)), ErrorAxis::g, {-0.999, 0.999, 1999});
      const SweepResult p = sweep(build_plain(deg(t)), ErrorAxis::g, {-0.999, 0.999, 1999});
      for (std::size_t i = 0; i < s.samples.size(); ++i) {
        if (s.samples[i].error_value == 0.0) continue;
        worst = std::min(worst, s.samples[i].fidelity - p.samples[i].fidelity);
      }
    }
    return std::pair{worst > 0.0, "min(F_bb1 - F_plain) over 90 and 180 deg = " + fmt(worst, 3)};
  });
  b.check("simultaneous-error grids", [] {
    const SampleRange fr{-1.0, 1.0, 201};
    const SampleRange gr{-0.99, 0.99, 201};
    const std::size_t f0 = 100;
    const std::size_t g0 = 100;
    struct Family {
      const char* name;
      PulseSequence seq;
      int compensated;  // 0 none, 1 along f, 2 along g
    };
    const Family families[] = {{"plain", build_plain(pi), 0},
                               {"corpse", build_corpse(pi), 1},
                               {"scrofulous", build_scrofulous(pi), 2},
                               {"bb1", build_bb1(pi, 1, kBb1Symmetric), 2}};
    const auto high_count = [&](const FidelityGrid& g, bool along_f) {
      int n = 0;
      if (along_f) {
        for (std::size_t i = 0; i < g.f_values.size(); ++i) n += g.value(i, g0) >= 0.95;
      } else {
        for (std::size_t j = 0; j < g.g_values.size(); ++j) n += g.value(f0, j) >= 0.95;
      }
      return n;
    };
    const FidelityGrid plain = grid(families[0].seq, fr, gr);
    bool ok = true;
    std::string detail;
    for (const Family& fam : families) {
      const FidelityGrid g = fam.compensated == 0 ? plain : grid(fam.seq, fr, gr);
      const double peak = g.value(f0, g0);
      double others = 0.0;
      double asym = 0.0;
      for (std::size_t j = 0; j < g.g_values.size(); ++j) {
        for (std::size_t i = 0; i < g.f_values.size(); ++i) {
          if (i != f0 || j != g0) others = std::max(others, g.value(i, j));
          asym = std::max(asym, std::abs(g.value(i, j) - g.value(g.f_values.size() - 1 - i, j)));
        }
      }
      bool fam_ok = peak == 1.0 && others < peak && asym < 1e-12;
      std::string extra;
      if (fam.compensated != 0) {
        const bool along_f = fam.compensated == 1;
        const int mine = high_count(g, along_f);
        const int base = high_count(plain, along_f);
        fam_ok = fam_ok && mine > base;
        extra = ", F>=0.95 along " + std::string(along_f ? "f" : "g") + ": " + std::to_string(mine) + " vs plain " +
                std::to_string(base);
      }
      ok = ok && fam_ok;
      detail += (detail.empty() ? "" : "; ") + std::string(fam.name) + ": peak at origin, next " + fmt(others, 10) +
                ", f-asymmetry " + fmt(asym, 2) + extra;
    }
    return std::pair{ok, detail};
  });
}

void invariant_checks(Builder& b, const VerifyOptions& options) {
  b.check("quaternion vs rotation-matrix oracle", [&] {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> len(1, 8);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    std::uniform_real_distribution<double> err(-0.5, 0.5);
    double worst = 1.0;
    for (std::size_t k = 0; k < options.oracle_samples; ++k) {
      std::vector<Pulse> pulses;
      const int n = len(rng);
      for (int i = 0; i < n; ++i) pulses.emplace_back(angle(rng), angle(rng));
      const ErrorModel e(err(rng), err(rng));
      worst = std::min(worst, rotation_fidelity(quat_to_matrix(sequence_quaternion(pulses, e)), sequence_matrix(pulses, e)));
    }
    return std::pair{worst >= 1.0 - 1e-10,
                     std::to_string(options.oracle_samples) + " random sequences, min fidelity 1 - " + fmt(1.0 - worst, 3)};
  });
  b.check("unit norm over 10^4 products", [&] {
    std::mt19937_64 rng(options.seed + 1);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Quaternion q = Quaternion::identity();
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      Vec3 a{gauss(rng), gauss(rng), gauss(rng)};
      const double n = norm(a);
      q = quat_multiply(q, quat_from_axis_angle(angle(rng), {a[0] / n, a[1] / n, a[2] / n}));
      worst = std::max(worst, std::abs(q.norm_squared() - 1.0));
    }
    return std::pair{worst < 1e-9, "max |norm^2 - 1| = " + fmt(worst, 3)};
  });
  b.check("zero-error correctness of every builder", [] {
    double worst = 0.0;
    int count = 0;
    const std::array<double, 2> together{0.0, 0.0};
    for (double t : {1.0, 5.0, 30.0, 45.0, 90.0, 120.0, 179.0, 180.0}) {
      for (const PulseSequence& s : {build_plain(deg(t)), build_corpse(deg(t)), build_corpse(deg(t), kShortCorpse),
                                     build_scrofulous(deg(t)), build_bb1(deg(t)), build_bb1(deg(t), 1, kBb1Symmetric),
                                     build_bb1(deg(t), 2, together)}) {
        worst = std::max(worst, sequence_infidelity(s, ErrorModel{}));
        ++count;
      }
    }
    return std::pair{worst <= 1e-9, std::to_string(count) + " sequences, max 1 - F = " + fmt(worst, 3)};
  });
  b.check("fidelity even in f and g", [] {
    double worst = 0.0;
    double prefix_gap = 0.0;
    for (double t : {30.0, 90.0, 180.0}) {
      for (const PulseSequence& s : {build_plain(deg(t)), build_corpse(deg(t)), build_corpse(deg(t), kShortCorpse),
                                     build_scrofulous(deg(t)), build_bb1(deg(t), 1, kBb1Symmetric)}) {
        for (ErrorAxis axis : {ErrorAxis::f, ErrorAxis::g}) {
          for (double e : {0.01, 0.1, 0.3}) worst = std::max(worst, parity_gap(s, axis, e));
        }
      }
      for (double e : {0.01, 0.1, 0.3}) {
        worst = std::max(worst, parity_gap(build_bb1(deg(t)), ErrorAxis::g, e));
        prefix_gap = std::max(prefix_gap, parity_gap(build_bb1(deg(t)), ErrorAxis::f, e));
      }
    }
    return std::pair{worst < 1e-12, "max |F(e) - F(-e)| = " + fmt(worst, 3) +
                                        " (palindromic sequences; prefix BB1 is odd in f, gap " + fmt(prefix_gap, 3) + ")"};
  });
  b.check("phase covariance", [&] {
    std::mt19937_64 rng(options.seed + 2);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    std::uniform_real_distribution<double> err(-0.5, 0.5);
    double worst = 0.0;
    for (const PulseSequence& s : {build_corpse(deg(45)), build_scrofulous(deg(120)), build_bb1(deg(90))}) {
      for (int i = 0; i < 50; ++i) {
        const ErrorModel e(err(rng), err(rng));
        worst = std::max(worst, std::abs(sequence_fidelity(offset_phases(s, angle(rng)), e) - sequence_fidelity(s, e)));
      }
    }
    return std::pair{worst < 1e-12, "max fidelity change " + fmt(worst, 3)};
  });
  b.check("arcsinc inverts sinc on [0, 2/pi]", [] {
    double worst = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double y = (2.0 / pi) * i / 2000.0;
      worst = std::max(worst, std::abs(sinc(arcsinc(y)) - y));
    }
    return std::pair{worst < 1e-12, "max |sinc(arcsinc(y)) - y| = " + fmt(worst, 3)};
  });
  b.check("first-order error terms vanish", [] {
    double worst = 0.0;
    for (double t : {30.0, 90.0, 180.0}) {
      for (CorpseIndices idx : {kCorpse, kShortCorpse, CorpseIndices{2, 2, 0}}) {
        for (double d : first_order_deviation(build_corpse(deg(t), idx), ErrorAxis::f)) worst = std::max(worst, std::abs(d));
      }
      for (double d : first_order_deviation(build_scrofulous(deg(t)), ErrorAxis::g)) worst = std::max(worst, std::abs(d));
    }
    return std::pair{worst < 1e-6, "max |dq/de| at e = 0: " + fmt(worst, 3) + " (CORPSE in f, SCROFULOUS in g)"};
  });
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  Builder b;
  table_checks(b);
  series_checks(b);
  structural_checks(b);
  figure_checks(b);
  invariant_checks(b, options);
  return std::move(b.results);
}

}  // namespace corot::cli

#include "corot/error_model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "corot/exceptions.hpp"
#include "corot/families.hpp"
#include "test_support.hpp"

namespace corot {
namespace {

using std::numbers::pi;
using testing::deg;

// Closed form for a single pulse about x against its ideal: the axes differ
// only by the tilt, so F = |cos(θ'/2)cos(θ/2) + sin(θ'/2)sin(θ/2)/√(1+f²)|.
double plain_fidelity_oracle(double theta, double f) {
  const double r = std::sqrt(1.0 + f * f);
  const double tp = theta * r;
  return std::abs(std::cos(tp / 2) * std::cos(theta / 2) + std::sin(tp / 2) * std::sin(theta / 2) / r);
}

TEST(Pulse, NormalizesPhase) {
  EXPECT_NEAR(Pulse(1.0, -pi / 2).phi(), 1.5 * pi, 1e-15);
  EXPECT_NEAR(Pulse(1.0, 5 * pi).phi(), pi, 1e-14);
  EXPECT_EQ(Pulse(1.0, 2 * pi).phi(), 0.0);
  EXPECT_EQ(Pulse(1.0, -1e-300).phi(), 0.0);
}

TEST(Pulse, RejectsNegativeOrNonFiniteAngles) {
  EXPECT_THROW(Pulse(-1e-3, 0.0), DomainError);
  EXPECT_THROW(Pulse(NAN, 0.0), DomainError);
  EXPECT_THROW(Pulse(1.0, INFINITY), DomainError);
  EXPECT_NO_THROW(Pulse(0.0, 0.0));
}

TEST(ErrorModel, Invariants) {
  EXPECT_THROW(ErrorModel(0.0, -1.0), DomainError);
  EXPECT_THROW(ErrorModel(0.0, -2.0), DomainError);
  EXPECT_THROW(ErrorModel(INFINITY, 0.0), DomainError);
  EXPECT_NO_THROW(ErrorModel(-5.0, -0.999));
}

TEST(PulseQuaternion, IdealPulse) {
  const Quaternion q = pulse_quaternion(Pulse(pi, 0.0), ErrorModel{});
  EXPECT_NEAR(q.s, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(q.v[0], 1.0);
  EXPECT_EQ(q.v[2], 0.0);
}

TEST(PulseQuaternion, LengthErrorScalesAngle) {
  const Quaternion q = pulse_quaternion(Pulse(pi, 0.0), ErrorModel::pulse_length(0.1));
  EXPECT_NEAR(q.s, std::cos(deg(99.0)), 1e-15);
  EXPECT_NEAR(q.v[0], std::sin(deg(99.0)), 1e-15);
  EXPECT_EQ(q.v[1], 0.0);
  EXPECT_EQ(q.v[2], 0.0);
}

TEST(PulseQuaternion, OffResonanceFidelity) {
  const double f = 0.1;
  const double fid = fidelity(pulse_quaternion(Pulse(pi, 0.0), ErrorModel::off_resonance(f)),
                              ideal_quaternion(Pulse(pi, 0.0)));
  EXPECT_NEAR(fid, plain_fidelity_oracle(pi, f), 1e-15);
  EXPECT_NEAR(fid, 0.99501, 5e-6);
  EXPECT_NEAR(fid, 1.0 - f * f / 2.0, 1e-4);
}

TEST(PulseQuaternion, MatchesClosedFormAcrossAnglesAndOffsets) {
  for (double theta : {0.1, 0.5, 1.0, pi / 2, 2.0, pi, 5.0}) {
    for (double f : {-0.7, -0.2, 0.01, 0.3, 1.0}) {
      const Pulse p(theta, 0.0);
      EXPECT_NEAR(fidelity(pulse_quaternion(p, ErrorModel::off_resonance(f)), ideal_quaternion(p)),
                  plain_fidelity_oracle(theta, f), 1e-14);
    }
  }
}

TEST(PulseQuaternion, ReducesToOnResonanceForm) {
  const Pulse p(1.3, 0.7);
  const Quaternion q = pulse_quaternion(p, ErrorModel{});
  EXPECT_DOUBLE_EQ(q.s, std::cos(0.65));
  EXPECT_DOUBLE_EQ(q.v[0], std::sin(0.65) * std::cos(0.7));
  EXPECT_DOUBLE_EQ(q.v[1], std::sin(0.65) * std::sin(0.7));
  EXPECT_EQ(q.v[2], 0.0);
}

TEST(PulseQuaternion, JointModelStretchesAndTilts) {
  const AxisAngle r = effective_rotation(Pulse(2.0, 0.0), ErrorModel(0.5, 0.2));
  EXPECT_NEAR(r.angle, 2.0 * 1.2 * std::sqrt(1.25), 1e-15);
  EXPECT_NEAR(r.axis[2], 0.5 / std::sqrt(1.25), 1e-15);
}

TEST(SequenceQuaternion, EmptyIsRejected) {
  EXPECT_THROW(sequence_quaternion(std::span<const Pulse>{}, ErrorModel{}), DomainError);
  EXPECT_THROW(sequence_matrix(std::span<const Pulse>{}, ErrorModel{}), DomainError);
}

TEST(SequenceQuaternion, SinglePulseEqualsPulseQuaternion) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> a(0.0, 2 * pi);
  std::uniform_real_distribution<double> e(-0.5, 0.5);
  for (int i = 0; i < 100; ++i) {
    const Pulse p(a(rng), a(rng));
    const ErrorModel err(e(rng), e(rng));
    const std::array<Pulse, 1> one{p};
    const Quaternion lhs = sequence_quaternion(one, err);
    const Quaternion rhs = pulse_quaternion(p, err);
    EXPECT_EQ(lhs.s, rhs.s);
    EXPECT_EQ(lhs.v, rhs.v);
  }
}

TEST(SequenceQuaternion, CorpseTableRowHitsTarget) {
  const std::array<Pulse, 3> pulses{Pulse(deg(420.0), 0.0), Pulse(deg(300.0), pi), Pulse(deg(60.0), 0.0)};
  EXPECT_NEAR(fidelity(sequence_quaternion(pulses, ErrorModel{}), ideal_quaternion(Pulse(pi, 0.0))), 1.0,
              1e-9);
}

TEST(SequenceQuaternion, PhaseShifted180TripleHitsTarget) {
  const std::array<Pulse, 3> pulses{Pulse(pi, deg(60.0)), Pulse(pi, deg(300.0)), Pulse(pi, deg(60.0))};
  EXPECT_NEAR(fidelity(sequence_quaternion(pulses, ErrorModel{}), ideal_quaternion(Pulse(pi, 0.0))), 1.0,
              1e-9);
}

TEST(SequenceQuaternion, MatrixOracleAgreesOnRandomSequences) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> e(-0.5, 0.5);
  for (int i = 0; i < 300; ++i) {
    const auto pulses = testing::random_pulses(rng);
    const ErrorModel err(e(rng), e(rng));
    EXPECT_GE(rotation_fidelity(quat_to_matrix(sequence_quaternion(pulses, err)), sequence_matrix(pulses, err)),
              1.0 - 1e-10);
  }
}

TEST(SequenceQuaternion, FidelityIsEvenInOffResonance) {
  for (const auto& seq : {build_plain(deg(90.0)), build_corpse(deg(180.0)), build_corpse(deg(30.0)),
                          build_scrofulous(deg(90.0)), build_bb1(deg(180.0), 1, kBb1Symmetric)}) {
    for (double f : {0.01, 0.1, 0.3, 0.8}) {
      EXPECT_LT(std::abs(sequence_fidelity(seq, ErrorModel(f, 0.0)) - sequence_fidelity(seq, ErrorModel(-f, 0.0))),
                1e-12)
          << describe(seq.family()) << " f=" << f;
    }
  }
}

TEST(SequenceQuaternion, PhaseCovariance) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> a(0.0, 2 * pi);
  std::uniform_real_distribution<double> e(-0.5, 0.5);
  for (const auto& seq : {build_corpse(deg(45.0)), build_scrofulous(deg(120.0)), build_bb1(deg(90.0))}) {
    for (int i = 0; i < 20; ++i) {
      const double shift = a(rng);
      const ErrorModel err(e(rng), e(rng));
      EXPECT_NEAR(sequence_fidelity(offset_phases(seq, shift), err), sequence_fidelity(seq, err), 1e-12);
    }
  }
}

}  // namespace
}  // namespace corot

#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "corot/error_model.hpp"

namespace corot {

struct CorpseIndices {
  int n1 = 1;
  int n2 = 1;
  int n3 = 0;

  /// n1 − n2 + n3: the number of additional full turns in the sequence.
  int net_turns() const noexcept { return n1 - n2 + n3; }

  friend bool operator==(const CorpseIndices&, const CorpseIndices&) = default;
};

inline constexpr CorpseIndices kCorpse{1, 1, 0};
inline constexpr CorpseIndices kShortCorpse{0, 1, 0};

enum class ScrofulousBranch { minus, plus };

struct PlainFamily {
  friend bool operator==(const PlainFamily&, const PlainFamily&) = default;
};
struct CorpseFamily {
  CorpseIndices indices;
  friend bool operator==(const CorpseFamily&, const CorpseFamily&) = default;
};
struct ScrofulousFamily {
  ScrofulousBranch branch = ScrofulousBranch::minus;
  friend bool operator==(const ScrofulousFamily&, const ScrofulousFamily&) = default;
};
struct WnCorrectedFamily {
  int blocks = 1;
  std::vector<double> placements{0.0};
  friend bool operator==(const WnCorrectedFamily&, const WnCorrectedFamily&) = default;
};

using FamilyTag = std::variant<PlainFamily, CorpseFamily, ScrofulousFamily, WnCorrectedFamily>;

/// Compact text form: "plain", "corpse(1,1,0)", "scrofulous", "scrofulous+",
/// "wn(2;0,1)". parse_family() inverts it and throws DomainError otherwise.
std::string describe(const FamilyTag& family);
FamilyTag parse_family(std::string_view text);

/// Ordered pulses, the ideal rotation they implement, and where they came from.
class PulseSequence {
 public:
  PulseSequence(std::vector<Pulse> pulses, Pulse target, FamilyTag family);

  const std::vector<Pulse>& pulses() const noexcept { return pulses_; }
  const Pulse& target() const noexcept { return target_; }
  const FamilyTag& family() const noexcept { return family_; }

  /// Sum of nominal rotation angles.
  double total_rotation() const;

 private:
  std::vector<Pulse> pulses_;
  Pulse target_;
  FamilyTag family_;
};

Quaternion sequence_quaternion(const PulseSequence& seq, const ErrorModel& error);
RotationMatrix sequence_matrix(const PulseSequence& seq, const ErrorModel& error);

/// Fidelity of the sequence under `error` against its error-free target.
double sequence_fidelity(const PulseSequence& seq, const ErrorModel& error);
double sequence_infidelity(const PulseSequence& seq, const ErrorModel& error);

}  // namespace corot

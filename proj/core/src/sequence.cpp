#include "corot/sequence.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "corot/exceptions.hpp"

namespace corot {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <class T>
T parse_number(std::string_view text, std::string_view context) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw DomainError("malformed number '" + std::string(text) + "' in family descriptor " +
                      std::string(context));
  }
  return value;
}

// Extracts the text between "name(" and the closing ")".
bool unwrap(std::string_view text, std::string_view name, std::string_view& inner) {
  if (text.size() < name.size() + 2 || text.substr(0, name.size()) != name ||
      text[name.size()] != '(' || text.back() != ')') {
    return false;
  }
  inner = text.substr(name.size() + 1, text.size() - name.size() - 2);
  return true;
}

}  // namespace

std::string describe(const FamilyTag& family) {
  return std::visit(
      Overloaded{
          [](const PlainFamily&) { return std::string("plain"); },
          [](const CorpseFamily& c) {
            std::ostringstream os;
            os << "corpse(" << c.indices.n1 << ',' << c.indices.n2 << ',' << c.indices.n3 << ')';
            return os.str();
          },
          [](const ScrofulousFamily& s) {
            return std::string(s.branch == ScrofulousBranch::minus ? "scrofulous" : "scrofulous+");
          },
          [](const WnCorrectedFamily& w) {
            std::ostringstream os;
            os.precision(17);
            os << "wn(" << w.blocks << ';';
            for (std::size_t i = 0; i < w.placements.size(); ++i) {
              if (i) os << ',';
              os << w.placements[i];
            }
            os << ')';
            return os.str();
          },
      },
      family);
}

FamilyTag parse_family(std::string_view text) {
  text = trim(text);
  if (text == "plain") return PlainFamily{};
  if (text == "scrofulous") return ScrofulousFamily{ScrofulousBranch::minus};
  if (text == "scrofulous+") return ScrofulousFamily{ScrofulousBranch::plus};
  std::string_view inner;
  if (unwrap(text, "corpse", inner)) {
    const auto parts = split(inner, ',');
    if (parts.size() != 3) throw DomainError("corpse descriptor needs three indices: " + std::string(text));
    return CorpseFamily{{parse_number<int>(parts[0], text), parse_number<int>(parts[1], text),
                         parse_number<int>(parts[2], text)}};
  }
  if (unwrap(text, "wn", inner)) {
    const auto halves = split(inner, ';');
    if (halves.size() != 2) throw DomainError("wn descriptor needs 'n;placements': " + std::string(text));
    WnCorrectedFamily w;
    w.blocks = parse_number<int>(halves[0], text);
    w.placements.clear();
    for (std::string_view p : split(halves[1], ',')) w.placements.push_back(parse_number<double>(p, text));
    return w;
  }
  throw DomainError("unknown sequence family '" + std::string(text) + "'");
}

PulseSequence::PulseSequence(std::vector<Pulse> pulses, Pulse target, FamilyTag family)
    : pulses_(std::move(pulses)), target_(target), family_(std::move(family)) {
  if (pulses_.empty()) throw DomainError("pulse sequence must not be empty");
}

double PulseSequence::total_rotation() const {
  double total = 0.0;
  for (const Pulse& p : pulses_) total += p.theta();
  return total;
}

Quaternion sequence_quaternion(const PulseSequence& seq, const ErrorModel& error) {
  return sequence_quaternion(std::span<const Pulse>(seq.pulses()), error);
}

RotationMatrix sequence_matrix(const PulseSequence& seq, const ErrorModel& error) {
  return sequence_matrix(std::span<const Pulse>(seq.pulses()), error);
}

double sequence_fidelity(const PulseSequence& seq, const ErrorModel& error) {
  return 1.0 - sequence_infidelity(seq, error);
}

double sequence_infidelity(const PulseSequence& seq, const ErrorModel& error) {
  return infidelity(ideal_quaternion(seq.target()), sequence_quaternion(seq, error));
}

}  // namespace corot

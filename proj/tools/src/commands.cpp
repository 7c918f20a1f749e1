#include "corot/cli/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "corot/analysis.hpp"
#include "corot/cli/serialization.hpp"
#include "corot/cli/verification.hpp"
#include "corot/exceptions.hpp"
#include "corot/families.hpp"

namespace corot::cli {

namespace {

namespace fs = std::filesystem;

constexpr double kRadPerDeg = std::numbers::pi / 180.0;
constexpr double kTabulatedMinDeg = 30.0;
constexpr double kTabulatedMaxDeg = 180.0;

struct UserError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path resolve_output(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') return fs::path(dir) / p;
  }
  return p;
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.output.empty()) {
    out << content;
    return;
  }
  const fs::path path = resolve_output(cfg.output);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw UserError("cannot open output file '" + path.string() + "'");
  file << content;
  if (!file.flush()) throw UserError("failed writing output file '" + path.string() + "'");
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw UserError(std::string("--") + name + " must be a finite number");
}

CorpseIndices corpse_indices(const RunConfig& cfg) {
  if (cfg.family == "short-corpse") return kShortCorpse;
  if (cfg.corpse_indices.size() != 3) throw UserError("--indices takes exactly three integers n1,n2,n3");
  return {cfg.corpse_indices[0], cfg.corpse_indices[1], cfg.corpse_indices[2]};
}

std::vector<double> placements(const RunConfig& cfg) {
  // Mid-pulse blocks keep the sequence palindromic, hence even in f.
  if (cfg.placements.empty()) return std::vector<double>(static_cast<std::size_t>(std::max(cfg.wn_blocks, 0)), 0.5);
  return cfg.placements;
}

PulseSequence build_family(const std::string& family, const RunConfig& cfg) {
  const double theta = cfg.theta_deg * kRadPerDeg;
  if (family == "plain") return build_plain(theta);
  if (family == "corpse" || family == "short-corpse") return build_corpse(theta, corpse_indices(cfg));
  if (family == "scrofulous") {
    return build_scrofulous(theta, cfg.plus_branch ? ScrofulousBranch::plus : ScrofulousBranch::minus);
  }
  if (family == "bb1") return build_bb1(theta, cfg.wn_blocks, placements(cfg));
  throw UserError("unknown family '" + family + "'");
}

PulseSequence load_sequence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UserError("cannot read sequence file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw UserError("malformed JSON in '" + path + "': " + e.what());
  }
  return sequence_from_json(doc);
}

PulseSequence selected_sequence(const RunConfig& cfg) {
  if (!cfg.sequence_path.empty()) return load_sequence(cfg.sequence_path);
  require_finite(cfg.theta_deg, "theta");
  require_finite(cfg.phi_deg, "phi");
  PulseSequence seq = build_family(cfg.family, cfg);
  return cfg.phi_deg == 0.0 ? seq : offset_phases(seq, cfg.phi_deg * kRadPerDeg);
}

ErrorAxis parse_axis(const std::string& axis) {
  if (axis == "f") return ErrorAxis::f;
  if (axis == "g") return ErrorAxis::g;
  throw UserError("--axis must be f or g");
}

std::string join_row(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += cells[i];
  }
  return row + '\n';
}

std::string deg1(double degrees) { return format_table_degrees(degrees * kRadPerDeg); }

bool extrapolated(double theta_deg) { return theta_deg < kTabulatedMinDeg || theta_deg > kTabulatedMaxDeg; }

// One parameter-table row per family, in degrees.
struct ParamRow {
  std::vector<std::string> header;
  std::vector<std::string> cells;
  nlohmann::json values;
};

ParamRow param_row(const std::string& family, double theta_deg, const RunConfig& cfg) {
  const double theta = theta_deg * kRadPerDeg;
  ParamRow row;
  if (family == "corpse" || family == "short-corpse") {
    const auto a = corpse_angles(theta, corpse_indices(cfg));
    row.header = {"theta", "theta1", "theta2", "theta3"};
    row.cells = {deg1(theta_deg), format_table_degrees(a[0]), format_table_degrees(a[1]), format_table_degrees(a[2])};
    row.values = {{"theta1_deg", a[0] / kRadPerDeg}, {"theta2_deg", a[1] / kRadPerDeg}, {"theta3_deg", a[2] / kRadPerDeg}};
  } else if (family == "scrofulous") {
    const ScrofulousParams p =
        scrofulous_params(theta, cfg.plus_branch ? ScrofulousBranch::plus : ScrofulousBranch::minus);
    row.header = {"theta", "theta1", "phi1", "theta2", "phi2", "extrapolated"};
    row.cells = {deg1(theta_deg),
                 format_table_degrees(p.theta1),
                 format_table_degrees(p.phi1),
                 format_table_degrees(p.theta2),
                 format_table_degrees(p.phi2),
                 extrapolated(theta_deg) ? "1" : "0"};
    row.values = {{"theta1_deg", p.theta1 / kRadPerDeg},
                  {"phi1_deg", p.phi1 / kRadPerDeg},
                  {"theta2_deg", p.theta2 / kRadPerDeg},
                  {"phi2_deg", p.phi2 / kRadPerDeg},
                  {"extrapolated", extrapolated(theta_deg)}};
  } else if (family == "bb1") {
    const WnPhases w = wn_phases(theta, cfg.wn_blocks);
    row.header = {"theta", "phi1", "phi2"};
    row.cells = {deg1(theta_deg), format_table_degrees(w.phi1), format_table_degrees(w.phi2)};
    row.values = {{"phi1_deg", w.phi1 / kRadPerDeg}, {"phi2_deg", w.phi2 / kRadPerDeg}, {"blocks", cfg.wn_blocks}};
  } else if (family == "plain") {
    row.header = {"theta", "phi"};
    row.cells = {deg1(theta_deg), deg1(0.0)};
    row.values = nlohmann::json::object();
  } else {
    throw UserError("unknown family '" + family + "'");
  }
  return row;
}

std::string cmd_params(const RunConfig& cfg) {
  require_finite(cfg.theta_deg, "theta");
  const ParamRow row = param_row(cfg.family, cfg.theta_deg, cfg);
  const PulseSequence seq = build_family(cfg.family, cfg);
  if (cfg.format == "json") {
    nlohmann::json doc = sequence_to_json(seq);
    doc["parameters"] = row.values;
    return doc.dump(2) + '\n';
  }
  return join_row(row.header) + join_row(row.cells);
}

std::string cmd_tables(const RunConfig& cfg) {
  std::ostringstream out;
  nlohmann::json doc = nlohmann::json::object();
  RunConfig defaults;  // tables always use the canonical members
  for (const std::string family : {"corpse", "scrofulous", "bb1"}) {
    nlohmann::json rows = nlohmann::json::array();
    if (cfg.format != "json") out << "# " << family << '\n';
    bool first = true;
    for (double angle : cfg.table_angles_deg) {
      require_finite(angle, "angles");
      const ParamRow row = param_row(family, angle, defaults);
      if (first && cfg.format != "json") out << join_row(row.header);
      first = false;
      out << (cfg.format == "json" ? "" : join_row(row.cells));
      nlohmann::json r = row.values;
      r["theta_deg"] = angle;
      rows.push_back(std::move(r));
    }
    if (cfg.format != "json") out << '\n';
    doc[family] = std::move(rows);
  }
  return cfg.format == "json" ? doc.dump(2) + '\n' : out.str();
}

std::string cmd_sweep(const RunConfig& cfg) {
  require_finite(cfg.lo, "lo");
  require_finite(cfg.hi, "hi");
  const ErrorAxis axis = parse_axis(cfg.axis);
  const PulseSequence seq = selected_sequence(cfg);
  const PulseSequence plain = build_plain(seq.target().theta(), seq.target().phi());
  const SampleRange range{cfg.lo, cfg.hi, cfg.count};
  const SweepResult composite = sweep(seq, axis, range);
  const SweepResult baseline = sweep(plain, axis, range);
  if (cfg.format == "json") return sweep_to_json(composite, baseline).dump(2) + '\n';
  std::ostringstream out;
  write_sweep_csv(out, composite, baseline);
  return out.str();
}

std::string grid_csv(const PulseSequence& seq, const RunConfig& cfg) {
  const FidelityGrid g = grid(seq, {cfg.f_lo, cfg.f_hi, cfg.f_count}, {cfg.g_lo, cfg.g_hi, cfg.g_count});
  std::ostringstream out;
  write_grid_csv(out, g);
  return out.str();
}

int cmd_grid(const RunConfig& cfg, std::ostream& out) {
  for (double v : {cfg.f_lo, cfg.f_hi, cfg.g_lo, cfg.g_hi}) require_finite(v, "range");
  if (cfg.format != "csv") throw UserError("grid output is CSV only");
  if (cfg.family != "all" || !cfg.sequence_path.empty()) {
    emit(cfg, grid_csv(selected_sequence(cfg), cfg), out);
    return kSuccess;
  }
  // All four comparison grids, one file each, written only after all succeed.
  fs::path dir = cfg.output.empty() ? fs::path(".") : fs::path(cfg.output);
  if (dir.is_relative()) {
    if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') dir = fs::path(env) / dir;
  }
  std::vector<std::pair<fs::path, std::string>> files;
  for (const std::string family : {"plain", "corpse", "scrofulous", "bb1"}) {
    RunConfig member = cfg;
    member.family = family;
    files.emplace_back(dir / ("grid_" + family + ".csv"), grid_csv(selected_sequence(member), member));
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  for (const auto& [path, content] : files) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << content) || !file.flush()) throw UserError("cannot write '" + path.string() + "'");
    out << path.string() << '\n';
  }
  return kSuccess;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const std::vector<CheckResult> results = run_verification({cfg.oracle_samples, cfg.seed});
  std::size_t passed = 0;
  std::ostringstream report;
  for (const CheckResult& r : results) {
    passed += r.passed ? 1 : 0;
    report << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << '\n';
  }
  report << passed << '/' << results.size() << " checks passed\n";
  emit(cfg, report.str(), out);
  return passed == results.size() ? kSuccess : kVerificationFailed;
}

void add_family_options(CLI::App* cmd, RunConfig& cfg, bool allow_all) {
  std::vector<std::string> names{"plain", "corpse", "short-corpse", "scrofulous", "bb1"};
  if (allow_all) names.push_back("all");
  cmd->add_option("--family", cfg.family, "Sequence family")->check(CLI::IsMember(names))->capture_default_str();
  cmd->add_option("--theta", cfg.theta_deg, "Target rotation angle in degrees")->capture_default_str();
  cmd->add_option("--indices", cfg.corpse_indices, "CORPSE integers n1,n2,n3")->delimiter(',')->expected(3);
  cmd->add_option("--wn", cfg.wn_blocks, "Number of Wn correction blocks (bb1)")->capture_default_str();
  cmd->add_option("--placements", cfg.placements, "Fractions of theta after which each Wn block sits")
      ->delimiter(',');
  cmd->add_flag("--plus-branch", cfg.plus_branch, "Use the plus-sign phase branch (scrofulous)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"corot: composite rotation synthesis and verification"};
  app.require_subcommand(1);

  auto* tables = app.add_subcommand("tables", "Parameter tables for CORPSE, SCROFULOUS and BB1");
  tables->add_option("--angles", cfg.table_angles_deg, "Target angles in degrees")->delimiter(',');

  auto* params = app.add_subcommand("params", "Pulse parameters of one family member");
  add_family_options(params, cfg, false);

  auto* sweep_cmd = app.add_subcommand("sweep", "Fidelity against one error, with the plain-pulse baseline");
  add_family_options(sweep_cmd, cfg, false);
  sweep_cmd->add_option("--phi", cfg.phi_deg, "Target phase in degrees");
  sweep_cmd->add_option("--sequence", cfg.sequence_path, "JSON sequence file instead of --family");
  sweep_cmd->add_option("--axis", cfg.axis, "Error axis")->check(CLI::IsMember({"f", "g"}))->capture_default_str();
  auto* lo_opt = sweep_cmd->add_option("--lo", cfg.lo, "Lowest error value (default -1 for f, -0.99 for g)");
  auto* hi_opt = sweep_cmd->add_option("--hi", cfg.hi, "Highest error value (default 1 for f, 0.99 for g)");
  sweep_cmd->add_option("--count", cfg.count, "Number of samples")->capture_default_str();

  auto* grid_cmd = app.add_subcommand("grid", "Fidelity over simultaneous f and g errors (long CSV)");
  add_family_options(grid_cmd, cfg, true);
  grid_cmd->add_option("--phi", cfg.phi_deg, "Target phase in degrees");
  grid_cmd->add_option("--sequence", cfg.sequence_path, "JSON sequence file instead of --family");
  grid_cmd->add_option("--f-lo", cfg.f_lo)->capture_default_str();
  grid_cmd->add_option("--f-hi", cfg.f_hi)->capture_default_str();
  grid_cmd->add_option("--f-count", cfg.f_count)->capture_default_str();
  grid_cmd->add_option("--g-lo", cfg.g_lo)->capture_default_str();
  grid_cmd->add_option("--g-hi", cfg.g_hi)->capture_default_str();
  grid_cmd->add_option("--g-count", cfg.g_count)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run the full verification suite");
  verify->add_option("--samples", cfg.oracle_samples, "Random sequences for the oracle check")->capture_default_str();
  verify->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();

  for (CLI::App* cmd : {tables, params, sweep_cmd, grid_cmd, verify}) {
    cmd->add_option("-o,--output", cfg.output, "Output path (directory for grid --family all)");
  }
  for (CLI::App* cmd : {tables, params, sweep_cmd}) {
    cmd->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  }

  std::vector<std::string> argv_storage{"corot"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUserError;
  }

  try {
    if (sweep_cmd->parsed() && cfg.axis == "g") {
      if (lo_opt->count() == 0) cfg.lo = -0.99;
      if (hi_opt->count() == 0) cfg.hi = 0.99;
    }
    if (tables->parsed()) {
      emit(cfg, cmd_tables(cfg), out);
    } else if (params->parsed()) {
      emit(cfg, cmd_params(cfg), out);
    } else if (sweep_cmd->parsed()) {
      emit(cfg, cmd_sweep(cfg), out);
    } else if (grid_cmd->parsed()) {
      return cmd_grid(cfg, out);
    } else if (verify->parsed()) {
      return cmd_verify(cfg, out);
    }
    return kSuccess;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const BracketError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ConditioningError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const UserError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUserError;
}

}  // namespace corot::cli

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "corot/cli/commands.hpp"
#include "corot/cli/serialization.hpp"
#include "corot/families.hpp"
#include "test_support.hpp"

namespace corot {
namespace {

namespace fs = std::filesystem;
using cli::run;
using testing::deg;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) result.push_back(line);
  return result;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("corot_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const std::string& value) : name_(name) {
    if (const char* old = std::getenv(name)) old_ = old;
    ::setenv(name, value.c_str(), 1);
  }
  ~ScopedEnv() {
    if (old_) {
      ::setenv(name_, old_->c_str(), 1);
    } else {
      ::unsetenv(name_);
    }
  }

 private:
  const char* name_;
  std::optional<std::string> old_;
};

TEST(CliParams, CorpseRows) {
  const auto r = invoke({"params", "--family", "corpse", "--theta", "180"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "theta,theta1,theta2,theta3\n180.0,420.0,300.0,60.0\n");
  EXPECT_EQ(invoke({"params", "--family", "corpse", "--theta", "90"}).out,
            "theta,theta1,theta2,theta3\n90.0,384.3,318.6,24.3\n");
}

TEST(CliParams, ShortCorpseUsesZeroFirstIndex) {
  const auto r = invoke({"params", "--family", "short-corpse", "--theta", "180"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out)[1], "180.0,60.0,300.0,60.0");
}

TEST(CliParams, ScrofulousRowAndExtrapolationFlag) {
  EXPECT_EQ(lines(invoke({"params", "--family", "scrofulous", "--theta", "90"}).out)[1],
            "90.0,115.2,62.0,180.0,280.6,0");
  EXPECT_EQ(lines(invoke({"params", "--family", "scrofulous", "--theta", "10"}).out)[1].back(), '1');
}

TEST(CliParams, Bb1Rows) {
  EXPECT_EQ(invoke({"params", "--family", "bb1", "--theta", "180"}).out, "theta,phi1,phi2\n180.0,104.5,313.4\n");
  // phi2 = 280.74997 rounds to 280.7; the tabulated value is 280.8.
  EXPECT_EQ(lines(invoke({"params", "--family", "bb1", "--theta", "45"}).out)[1], "45.0,93.6,280.7");
}

TEST(CliParams, JsonCarriesSequenceAndParameters) {
  const auto r = invoke({"params", "--family", "corpse", "--theta", "180", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["pulses"].size(), 3u);
  EXPECT_NEAR(doc["parameters"]["theta1_deg"].get<double>(), 420.0, 1e-9);
  EXPECT_EQ(doc["family"], "corpse(1,1,0)");
}

TEST(CliTables, AllFamiliesPresent) {
  const auto r = invoke({"tables"});
  ASSERT_EQ(r.code, 0);
  for (const char* s : {"# corpse", "# scrofulous", "# bb1", "30.0,367.6,345.1,7.6", "180.0,180.0,60.0,180.0,300.0,0",
                        "30.0,92.4,277.2"}) {
    EXPECT_NE(r.out.find(s), std::string::npos) << s;
  }
}

TEST(CliSweep, CsvHeaderAndZeroRow) {
  const auto r = invoke({"sweep", "--family", "corpse", "--axis", "f", "--lo", "-1", "--hi", "1", "--count", "201"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 202u);
  EXPECT_EQ(rows[0], "error_value,fidelity_composite,fidelity_plain");
  EXPECT_EQ(rows[101], "0,1,1");
  EXPECT_EQ(rows[1].substr(0, 3), "-1,");
  EXPECT_EQ(rows[201].substr(0, 2), "1,");
}

TEST(CliSweep, GAxisDefaultsStayInsideDomain) {
  const auto r = invoke({"sweep", "--family", "bb1", "--axis", "g", "--count", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1].substr(0, 6), "-0.99,");
  EXPECT_EQ(rows[2], "0,1,1");
}

TEST(CliSweep, SingleSample) {
  const auto r = invoke({"sweep", "--lo", "0.2", "--hi", "0.2", "--count", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 2u);
}

TEST(CliSweep, JsonRoundTripThroughSequenceFile) {
  TempDir dir;
  const PulseSequence seq = build_scrofulous(deg(90));
  const fs::path file = dir.path() / "seq.json";
  std::ofstream(file) << cli::sequence_to_json(seq).dump();
  const PulseSequence back = cli::sequence_from_json(nlohmann::json::parse(slurp(file)));
  ASSERT_EQ(back.pulses().size(), seq.pulses().size());
  for (std::size_t i = 0; i < seq.pulses().size(); ++i) {
    EXPECT_NEAR(back.pulses()[i].theta(), seq.pulses()[i].theta(), 1e-12);
    EXPECT_NEAR(back.pulses()[i].phi(), seq.pulses()[i].phi(), 1e-12);
  }
  const auto from_file = invoke({"sweep", "--sequence", file.string(), "--axis", "g", "--count", "11"});
  const auto from_family = invoke({"sweep", "--family", "scrofulous", "--theta", "90", "--axis", "g", "--count", "11"});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(from_file.out, from_family.out);
}

TEST(CliGrid, LongFormatGSlowest) {
  const auto r = invoke({"grid", "--family", "plain", "--f-count", "3", "--g-count", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], "f,g,fidelity");
  EXPECT_EQ(rows[1].substr(0, 9), "-1,-0.99,");
  EXPECT_EQ(rows[2].substr(0, 8), "0,-0.99,");
  EXPECT_EQ(rows[4].substr(0, 8), "-1,0.99,");
}

TEST(CliGrid, AllFamiliesHonourOutputDirEnv) {
  TempDir dir;
  ScopedEnv env(cli::kOutputDirEnv, dir.path().string());
  const auto r = invoke({"grid", "--family", "all", "-o", "grids", "--f-count", "5", "--g-count", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* name : {"plain", "corpse", "scrofulous", "bb1"}) {
    const fs::path p = dir.path() / "grids" / (std::string("grid_") + name + ".csv");
    ASSERT_TRUE(fs::exists(p)) << p;
    EXPECT_EQ(lines(slurp(p)).size(), 26u);
  }
}

TEST(CliGrid, Bb1GridIsSymmetricInF) {
  const auto rows = lines(invoke({"grid", "--family", "bb1", "--f-count", "5", "--g-count", "3"}).out);
  ASSERT_EQ(rows.size(), 16u);
  for (int g = 0; g < 3; ++g) {
    const auto value = [&](int i) { return rows[1 + g * 5 + i].substr(rows[1 + g * 5 + i].rfind(',') + 1); };
    EXPECT_EQ(value(0), value(4));
    EXPECT_EQ(value(1), value(3));
  }
}

TEST(CliOutput, WritesFileRelativeToEnv) {
  TempDir dir;
  ScopedEnv env(cli::kOutputDirEnv, dir.path().string());
  ASSERT_EQ(invoke({"params", "--family", "bb1", "-o", "p.csv"}).code, 0);
  EXPECT_EQ(slurp(dir.path() / "p.csv"), "theta,phi1,phi2\n180.0,104.5,313.4\n");
}

TEST(CliErrors, UserErrorsExitOne) {
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"bogus"}).code, 1);
  EXPECT_EQ(invoke({"params", "--family", "nope"}).code, 1);
  EXPECT_EQ(invoke({"params", "--family", "scrofulous", "--theta", "200"}).code, 1);
  EXPECT_EQ(invoke({"params", "--family", "corpse", "--theta", "400"}).code, 1);
  EXPECT_EQ(invoke({"sweep", "--axis", "g", "--lo", "-1"}).code, 1);
  EXPECT_EQ(invoke({"sweep", "--count", "0"}).code, 1);
  EXPECT_EQ(invoke({"sweep", "--sequence", "/nonexistent/seq.json"}).code, 1);
  EXPECT_EQ(invoke({"params", "--indices", "1,2"}).code, 1);
  const auto r = invoke({"params", "--family", "scrofulous", "--theta", "200"});
  EXPECT_EQ(r.err.rfind("error: ", 0), 0u) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(CliErrors, MalformedSequenceFile) {
  TempDir dir;
  const fs::path file = dir.path() / "bad.json";
  std::ofstream(file) << "{\"pulses\": [}";
  EXPECT_EQ(invoke({"sweep", "--sequence", file.string()}).code, 1);
  std::ofstream(file, std::ios::trunc) << R"({"pulses": [], "target": {"theta_deg": 180, "phi_deg": 0}})";
  EXPECT_EQ(invoke({"sweep", "--sequence", file.string()}).code, 1);
}

TEST(CliErrors, UnwritableOutputExitsOne) {
  EXPECT_EQ(invoke({"params", "-o", "/nonexistent/dir/out.csv"}).code, 1);
}

TEST(CliHelp, ExitsZero) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(CliDeterminism, RepeatedRunsAreByteIdentical) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"tables"}, {"sweep", "--family", "bb1", "--axis", "g"},
        {"grid", "--family", "scrofulous", "--f-count", "21", "--g-count", "21"}}) {
    EXPECT_EQ(invoke(args).out, invoke(args).out);
  }
}

TEST(CliVerify, ExitCodeMatchesReport) {
  const auto r = invoke({"verify", "--samples", "200"});
  const auto rows = lines(r.out);
  ASSERT_FALSE(rows.empty());
  int failed = 0;
  for (const auto& row : rows) failed += row.rfind("[FAIL]", 0) == 0;
  EXPECT_EQ(r.code, failed == 0 ? 0 : 2);
  // The 45 deg W1 phase differs from its tabulated value by 0.05003 deg.
  EXPECT_EQ(failed, 1);
  EXPECT_NE(r.out.find("[FAIL] W1 phase table"), std::string::npos);
}

TEST(CliExecutable, RunsAsProcess) {
  TempDir dir;
  const fs::path out = dir.path() / "params.csv";
  const std::string cmd = std::string("\"") + COROT_CLI_PATH + "\" params --family corpse -o \"" + out.string() + "\"";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(slurp(out), "theta,theta1,theta2,theta3\n180.0,420.0,300.0,60.0\n");
  const std::string bad = std::string("\"") + COROT_CLI_PATH + "\" params --family nope 2>/dev/null";
  const int status = std::system(bad.c_str());
  EXPECT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 1);
}

}  // namespace
}  // namespace corot

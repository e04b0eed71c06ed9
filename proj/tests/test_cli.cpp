#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("ipsforge_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  // Runs the CLI with `args` (already shell-quoted), optionally with an
  // environment prefix, capturing stdout, stderr and the exit status.
  CliResult run(const std::string& args, const std::string& env = "") const {
    const std::string err_file = path("stderr.txt");
    const std::string cmd = env + " '" IPSFORGE_CLI_PATH "' " + args + " 2>'" + err_file + "'";
    CliResult r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_file);
    return r;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, RefuteThenVerifyInSeparateProcess) {
  const std::string cert = path("cert.json");
  const CliResult a = run("refute --family linear-shifted --p 2 --k 3 --n 4 --seed 7 --out '" + cert + "'");
  ASSERT_EQ(a.code, 0) << a.err;
  const json c = json::parse(slurp(cert));
  EXPECT_EQ(c["field"], "GF(2^6){modulus=1,1,0,0,0,0,1}");
  EXPECT_EQ(c["provenance"]["constructor"], "refute_linear_frobenius");
  EXPECT_EQ(c["run_config"]["seed"], 7);

  const CliResult v = run("verify --cert '" + cert + "'");
  ASSERT_EQ(v.code, 0) << v.err;
  const json r = json::parse(v.out);
  EXPECT_TRUE(r["valid"].get<bool>());
  EXPECT_EQ(r["residual_terms"], 0);
  EXPECT_EQ(r["stats"], c["stats"]);
}

TEST_F(CliTest, SymmetricExample) {
  const CliResult a = run("refute --family symmetric --p 3 --n 2 --poly 'e1+e2+1'");
  ASSERT_EQ(a.code, 0) << a.err;
  const json c = json::parse(a.out);
  EXPECT_EQ(c["provenance"]["constructor"], "refute_symmetric_system");
  EXPECT_EQ(c["stats"]["modeled_depth"], 7);
}

TEST_F(CliTest, EveryConstructorRoundTrips) {
  const char* cases[] = {
      "refute --family sparse-shifted --p 3 --k 1 --n 3 --seed 2",
      "refute --family linear-base --p 3 --k 2 --n 4 --seed 3",
      "refute --family linear-base --p 2 --k 2 --n 3 --seed 4 --constructor nullstellensatz",
      "refute --family lifted-any-order --p 2 --k 2 --n 2 --seed 5",
      "refute --family symmetric --p 2 --n 4 --m 2 --seed 6",
  };
  for (const char* args : cases) {
    const std::string cert = path("c.json");
    const CliResult a = run(std::string(args) + " --out '" + cert + "'");
    ASSERT_EQ(a.code, 0) << args << "\n" << a.err;
    const CliResult v = run("verify --cert '" + cert + "'");
    EXPECT_EQ(v.code, 0) << args << "\n" << v.out << v.err;
  }
}

TEST_F(CliTest, CorruptedCoefficientIsInvalid) {
  const std::string cert = path("cert.json");
  ASSERT_EQ(run("refute --family linear-shifted --p 2 --k 2 --n 3 --seed 1 --out '" + cert + "'").code, 0);
  json c = json::parse(slurp(cert));
  c["A"][0] = c["A"][0].get<std::string>() + " + x1";
  std::ofstream(path("bad.json")) << c.dump(2);
  const CliResult v = run("verify --cert '" + path("bad.json") + "'");
  EXPECT_EQ(v.code, 2);
  const json r = json::parse(v.out);
  EXPECT_FALSE(r["valid"].get<bool>());
  EXPECT_GT(r["residual_terms"].get<int>(), 0);
  EXPECT_NE(r["residual"], "0");
}

TEST_F(CliTest, FieldMismatchIsRejected) {
  const std::string cert = path("cert.json"), inst = path("inst.json");
  ASSERT_EQ(run("refute --family linear-shifted --p 2 --k 1 --n 2 --seed 1 --out '" + cert + "'").code, 0);
  ASSERT_EQ(run("gen --family linear-shifted --p 3 --k 1 --n 2 --seed 1 --out '" + inst + "'").code, 0);
  const CliResult v = run("verify --cert '" + cert + "' --instance '" + inst + "'");
  EXPECT_EQ(v.code, 1);
  EXPECT_EQ(json::parse(v.err)["error"], "field_mismatch");
}

TEST_F(CliTest, VerifyAgainstSeparateInstanceFile) {
  const std::string cert = path("cert.json"), inst = path("inst.json");
  ASSERT_EQ(run("gen --family linear-shifted --p 2 --k 2 --n 3 --seed 9 --out '" + inst + "'").code, 0);
  ASSERT_EQ(run("refute --instance '" + inst + "' --out '" + cert + "'").code, 0);
  EXPECT_EQ(run("verify --cert '" + cert + "' --instance '" + inst + "'").code, 0);
}

TEST_F(CliTest, SatisfiableInputExitsTwo) {
  const CliResult a = run("refute --family linear-base --p 2 --k 1 --n 2 --poly 'x1+x2'");
  EXPECT_EQ(a.code, 2);
  EXPECT_EQ(json::parse(a.err)["error"], "satisfiable_instance");
  const CliResult s = run("refute --family symmetric --p 2 --n 4 --poly 'e1+e2'");
  EXPECT_EQ(s.code, 2);
  EXPECT_EQ(json::parse(s.err)["error"], "satisfiable_system");
}

TEST_F(CliTest, OutputIsDeterministic) {
  for (const char* args : {"refute --family linear-shifted --p 2 --k 3 --n 4 --seed 7",
                           "oracle degree-trial --n 4 --trials 50 --seed 3", "gen --family lifted-any-order --n 2 --seed 4"}) {
    const CliResult a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << args << "\n" << a.err;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST_F(CliTest, JsonErrorsReportLineAndColumn) {
  std::ofstream(path("broken.json")) << "{\n  \"field\": \"GF(2^2){modulus=1,1,1}\",\n  \"vars\": x1\n}\n";
  const CliResult v = run("verify --cert '" + path("broken.json") + "'");
  EXPECT_EQ(v.code, 1);
  const json e = json::parse(v.err);
  EXPECT_EQ(e["error"], "parse_error");
  EXPECT_NE(e["message"].get<std::string>().find("line 3"), std::string::npos) << e["message"];

  const CliResult u = run("refute --family no-such-family");
  EXPECT_EQ(u.code, 1);
  EXPECT_EQ(json::parse(u.err)["error"], "usage");
}

TEST_F(CliTest, OracleExamples) {
  const CliResult t = run("oracle degree-trial --n 4 --p 2 --k 12 --trials 200 --seed 1");
  ASSERT_EQ(t.code, 0) << t.err;
  const json tj = json::parse(t.out);
  EXPECT_DOUBLE_EQ(tj["bound_union"].get<double>(), 15.0 / 16.0);
  EXPECT_GE(tj["rate_all_subsets"].get<double>(),
            tj["bound_union"].get<double>() - 3 * tj["sigma_union"].get<double>());

  const CliResult w = run("oracle roabp-width --instance fixed-order --n 4");
  ASSERT_EQ(w.code, 0) << w.err;
  EXPECT_GE(json::parse(w.out)["width"].get<int>(), 16);

  const CliResult c = run("oracle top-coeff --n 3 --seed 5");
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_TRUE(json::parse(c.out)["agree"].get<bool>());

  const CliResult r = run("oracle rank --p 5 --k 1 --poly 'x1*y1+x2*y2' --vars x2,y2 --left x1,x2");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["rank"], 2);
}

TEST_F(CliTest, BudgetEnvironmentVariable) {
  const CliResult capped = run("oracle degree-trial --n 5 --trials 2", "IPSFORGE_BUDGET_N=4");
  EXPECT_EQ(capped.code, 3);
  EXPECT_EQ(json::parse(capped.err)["error"], "budget_exceeded");
  EXPECT_EQ(run("oracle degree-trial --n 5 --trials 2", "IPSFORGE_BUDGET_N=5").code, 0);
}

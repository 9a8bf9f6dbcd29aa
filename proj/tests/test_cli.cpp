#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kahler/cli.hpp"

using namespace kahler;

namespace {

std::string data(const std::string& file) { return std::string(KAHLER_EXAMPLES_DIR) + "/" + file; }

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(RunConfig cfg) {
  std::ostringstream out, err;
  int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig verify(const std::string& model, const std::string& suite = "all") {
  RunConfig c;
  c.command = "verify";
  c.model = model;
  c.suite = suite;
  return c;
}

int run_binary(const std::string& args) {
  std::string cmd = std::string(KAHLER_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, VerifyNil6PassesWithAllResidualsZero) {
  auto o = run_cli(verify("nil6"));
  EXPECT_EQ(o.code, exit_pass) << o.err;
  auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["summary"]["fail"], 0);
  EXPECT_EQ(j["summary"]["error"], 0);
  for (const auto& e : j["entries"]) {
    if (e["status"] == "pass") EXPECT_EQ(e["residual"], "0") << e["id"];
    else EXPECT_EQ(e["guard"], "inapplicable") << e["id"];
  }
}

TEST(Cli, SymmetricBracketIsAValidationFailure) {
  auto o = run_cli(verify(data("symmetric.json")));
  EXPECT_EQ(o.code, exit_validation);
  EXPECT_NE(o.err.find("antisymmetry"), std::string::npos) << o.err;
  EXPECT_NE(o.err.find("(1,2,3)"), std::string::npos) << o.err;
  RunConfig v = verify(data("nonjacobi.json"));
  v.command = "validate";
  auto o2 = run_cli(v);
  EXPECT_EQ(o2.code, exit_validation);
  EXPECT_NE(o2.err.find("jacobi"), std::string::npos);
}

TEST(Cli, ParseAndIoFailuresExitThree) {
  EXPECT_EQ(run_cli(verify(data("malformed.json"))).code, exit_io);
  EXPECT_EQ(run_cli(verify(data("missing.json"))).code, exit_io);
  EXPECT_EQ(run_cli(verify("kt4", "bogus")).code, exit_io);
  RunConfig bad_fmt = verify("kt4");
  bad_fmt.format = "yaml";
  EXPECT_EQ(run_cli(bad_fmt).code, exit_io);
  RunConfig bad_out = verify("t2");
  bad_out.out = "/nonexistent-dir/report.json";
  EXPECT_EQ(run_cli(bad_out).code, exit_io);
}

TEST(Cli, IdentityFailuresExitOneAndListIds) {
  Report rep;
  EntryResult ok, bad;
  ok.id = "good.entry";
  bad.id = "bad.entry";
  bad.status = EntryStatus::fail;
  rep.entries = {ok, bad};
  std::ostringstream err;
  EXPECT_EQ(report_status(rep, err), exit_identity_failure);
  EXPECT_EQ(err.str(), "FAILED bad.entry\n");
  Report table_rep;
  table_rep.figure1 = CommutatorTable{};
  table_rep.figure1->unresolved = 1;
  std::ostringstream err2;
  EXPECT_EQ(report_status(table_rep, err2), exit_identity_failure);
  Report clean;
  clean.entries = {ok};
  std::ostringstream err3;
  EXPECT_EQ(report_status(clean, err3), exit_pass);
  EXPECT_TRUE(err3.str().empty());
}

TEST(Cli, TablesOnKt4EmitBothTables) {
  RunConfig c = verify("kt4");
  c.command = "table";
  auto o = run_cli(c);
  EXPECT_EQ(o.code, exit_pass) << o.err;
  auto j = nlohmann::json::parse(o.out);
  ASSERT_TRUE(j.contains("figure1"));
  ASSERT_TRUE(j.contains("figure2"));
  EXPECT_EQ(j["figure1"]["cells"].size(), 60u);
  EXPECT_EQ(j["figure2"]["cells"].size(), 72u);
  c.format = "md";
  auto md = run_cli(c);
  EXPECT_EQ(md.code, exit_pass);
  EXPECT_NE(md.out.find("fig1.row.d.L"), std::string::npos);
}

TEST(Cli, JsonReportIsByteIdentical) {
  auto a = run_cli(verify("gen6"));
  auto b = run_cli(verify("gen6"));
  EXPECT_EQ(a.code, exit_pass);
  EXPECT_EQ(a.out, b.out);
  RunConfig c = verify("kt4");
  c.exact = false;
  EXPECT_EQ(run_cli(c).out, run_cli(c).out);
}

TEST(Cli, WritesToOutputFile) {
  auto path = std::filesystem::temp_directory_path() / "kahler_cli_test_report.json";
  RunConfig c = verify("t2");
  c.out = path.string();
  auto o = run_cli(c);
  EXPECT_EQ(o.code, exit_pass);
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(nlohmann::json::parse(ss.str())["model"]["name"], "t2");
  std::filesystem::remove(path);
}

TEST(Cli, ModelsListShowsAttributes) {
  RunConfig c;
  c.command = "models";
  auto o = run_cli(c);
  EXPECT_EQ(o.code, exit_pass);
  for (const auto& name : models::builtin_names()) EXPECT_NE(o.out.find(name), std::string::npos) << name;
  EXPECT_NE(o.out.find("dω=0"), std::string::npos);
  std::istringstream lines(o.out);
  std::string line;
  bool saw_kt4 = false;
  while (std::getline(lines, line)) {
    if (line.rfind("kt4", 0) == 0) {
      saw_kt4 = true;
      EXPECT_EQ(line.substr(0, 27), "kt4     2  yes   no   yes ");
    }
  }
  EXPECT_TRUE(saw_kt4);
}

TEST(Cli, ValidateFileModel) {
  RunConfig c;
  c.command = "validate";
  c.model = data("kt4.json");
  auto o = run_cli(c);
  EXPECT_EQ(o.code, exit_pass);
  EXPECT_EQ(o.out, "kt4-file: valid (n = 2)\n");
}

TEST(Cli, BinaryExitCodes) {
  EXPECT_EQ(run_binary("models list"), 0);
  EXPECT_EQ(run_binary("verify --model kt4 --suite clifford"), 0);
  EXPECT_EQ(run_binary("verify --model kt4 --float --tolerance 1e-9"), 0);
  EXPECT_EQ(run_binary("validate --model " + data("symmetric.json")), 2);
  EXPECT_EQ(run_binary("verify --model " + data("badindex.json")), 3);
  EXPECT_EQ(run_binary("verify"), 3);
  EXPECT_EQ(run_binary("verify --model kt4 --exact --float"), 3);
  EXPECT_EQ(run_binary("frobnicate"), 3);
}

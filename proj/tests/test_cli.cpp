#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>

#include "support.hpp"

using nlohmann::json;
namespace ts = testing_support;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string quote(const std::string &s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') q += "'\\''";
    else q += c;
  }
  return q + "'";
}

Result cli(const std::string &args, const std::string &env = "") {
  static int counter = 0;
  const auto base = std::filesystem::temp_directory_path() /
                    ("tsflow-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  const std::string cmd = env + " " + quote(TSFLOW_CLI) + " " + args + " >" + quote(base.string() + ".out") +
                          " 2>" + quote(base.string() + ".err");
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = ts::read_text(base.string() + ".out");
  r.err = ts::read_text(base.string() + ".err");
  std::filesystem::remove(base.string() + ".out");
  std::filesystem::remove(base.string() + ".err");
  return r;
}

std::string lakehuron_path() { return quote((ts::data_dir() / "lakehuron.jsonld").string()); }

} // namespace

TEST(Cli, ValidateExitCodes) {
  auto r = cli("validate " + lakehuron_path());
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out)["diagnostics"].is_array());

  r = cli("validate " + quote((ts::test_data_dir() / "invalid" / "unknown_model.jsonld").string()));
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(json::parse(r.out)["diagnostics"].empty());

  r = cli("validate " + quote((ts::test_data_dir() / "invalid" / "syntax_stray_paren.jsonld").string()));
  EXPECT_EQ(r.code, 2);

  r = cli("validate /nonexistent/file.jsonld");
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, RunWritesBundle) {
  ts::TempDir dir("cli-run");
  auto r = cli("run " + lakehuron_path() + " --data-root " + quote(ts::data_dir().string()) + " --out " +
                  quote(dir.path().string()) + " --json");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto bundle = json::parse(r.out);
  EXPECT_EQ(bundle["steps"].size(), 19u);
  EXPECT_EQ(bundle["status"], "succeeded");
  EXPECT_TRUE(std::filesystem::exists(dir.path() / ("run_" + bundle["run_id"].get<std::string>()) / "bundle.json"));

  r = cli("run " + lakehuron_path() + " --data-root " + quote(dir.path().string()) + " --out " +
             quote(dir.path().string()));
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, OfflineImportAndQuery) {
  ts::TempDir dir("cli-store");
  const std::string env = "TSFLOW_STORE=" + quote(dir.path().string());
  auto r = cli("query 01 --id http://nowhere --offline", env);
  EXPECT_EQ(r.code, 1);

  r = cli("import " + lakehuron_path() + " --offline", env);
  ASSERT_EQ(r.code, 0) << r.err;
  r = cli("query 01 --id 'http://dicits.ugr.es/tswf-marketplace/#TS_eb09t74' --offline", env);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["operations"], 19);

  r = cli("query 08 --id 'http://dicits.ugr.es/tswf-marketplace/#TS_eb09t74' --term ARIMA --offline", env);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["params"]["order"], json::array({0, 0, 1}));
}

TEST(Cli, QueryWithoutServerFailsToConnect) {
  const auto r = cli("query 02 --url http://127.0.0.1:9");
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, VocabularyDumpMatchesShippedFile) {
  const auto r = cli("vocab");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out), json::parse(ts::read_text(ts::data_dir() / "vocabulary.json")));
}

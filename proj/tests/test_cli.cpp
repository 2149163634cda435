#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qgx::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, VerifySymplecticTilde) {
  const Invocation r = run({"verify", "--series", "c", "--n", "2", "--variant", "tilde"});
  EXPECT_EQ(r.code, qgx::cli::kOk) << r.err;
}

TEST(Cli, JsonOnStdout) {
  const Invocation r = run({"--json", "rmatrix", "--series", "c", "--n", "2", "--braid"});
  ASSERT_EQ(r.code, qgx::cli::kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["kind"], "rmatrix");
  EXPECT_EQ(j["series"], "c");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, qgx::cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, qgx::cli::kUsage);
  EXPECT_EQ(run({"verify", "--series", "b", "--n", "3", "--variant", "special-tilde"}).code, qgx::cli::kUsage);
  EXPECT_EQ(run({"verify", "--series", "d", "--n", "8"}).code, qgx::cli::kUsage);
  EXPECT_EQ(run({"rmatrix", "--series", "c", "--n", "3"}).code, qgx::cli::kUsage);
  EXPECT_EQ(run({"--jobs", "0", "rmatrix", "--series", "a", "--n", "2"}).code, qgx::cli::kUsage);
}

TEST(Cli, RankCeilings) {
  EXPECT_EQ(qgx::cli::rank_ceiling('a'), 4);
  EXPECT_EQ(qgx::cli::rank_ceiling('b'), 5);
  EXPECT_EQ(qgx::cli::rank_ceiling('d'), 6);
}

TEST(Cli, RepsAndClassical) {
  EXPECT_EQ(run({"reps", "--series", "c", "--n", "2", "--theta", "0.3", "--lambda-grid", "4"}).code, qgx::cli::kOk);
  EXPECT_EQ(run({"reps", "--model", "shift-usp2", "--trunc", "8", "--q", "0.5"}).code, qgx::cli::kOk);
  EXPECT_EQ(run({"classical", "--group", "sot", "--n", "2", "--trials", "5", "--branch"}).code, qgx::cli::kOk);
  EXPECT_EQ(run({"classical", "--group", "xyz", "--n", "2"}).code, qgx::cli::kUsage);
}

TEST(Cli, MissingReportFileIsUsageError) {
  EXPECT_EQ(run({"report", "/nonexistent/report.json"}).code, qgx::cli::kUsage);
}

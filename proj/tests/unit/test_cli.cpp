#include <gtest/gtest.h>

#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("ssls_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args, const std::string& env = "") {
  const auto out = scratch() / "stdout.txt";
  const std::string cmd = env + " " + SSLS_CLI + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), slurp(out)};
}

// Shared network written once by the synth command.
const fs::path& snapshot() {
  static const fs::path snap = [] {
    const auto dir = scratch() / "net";
    EXPECT_EQ(run("synth --users 60 --seed 4 --out-dir " + dir.string()).code, 0);
    const auto p = dir / "graph.snapshot";
    EXPECT_EQ(run("ingest --edges " + (dir / "edges.tsv").string() + " --checkins " + (dir / "checkins.tsv").string() +
                  " --out " + p.string())
                  .code,
              0);
    return p;
  }();
  return snap;
}

const std::string kFixture = std::string("--fixture ") + SSLS_TOY_FIXTURE + " --metric matrix";

}  // namespace

TEST(Cli, ToyQueryJson) {
  const auto r = run("query " + kFixture + " --k 2 --algo exact");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"label\": \"p5\""), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"label\": \"p7\""), std::string::npos);
  EXPECT_NE(r.out.find("\"wall_ms\": 0"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("query " + kFixture + " --k 11 --algo exact").code, 4);
  EXPECT_EQ(run("query " + kFixture + " --k 2 --algo nope").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("query --fixture /nonexistent.yaml --metric matrix --k 2").code, 3);
  EXPECT_EQ(run("stats", "env -u SSLS_DATA_DIR").code, 2);
  EXPECT_EQ(run("query " + kFixture + " --k 6 --algo brute --brute-cap 10").code, 4);
}

TEST(Cli, DataDirDefault) {
  const auto dir = snapshot().parent_path();
  const auto r = run("stats", "SSLS_DATA_DIR=" + dir.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, run("stats --snapshot " + snapshot().string()).out);
}

TEST(Cli, EveryCommandIsReproducible) {
  const auto snap = snapshot().string();
  const std::vector<std::string> commands = {
      "query " + kFixture + " --k 2 --algo gne --seed 3",
      "scores " + kFixture + " --pairs",
      "stats --snapshot " + snap,
      "bench --snapshot " + snap + " --group 50 --k 2,3 --algo exact,approx,gne --sample 3 --workers 1",
  };
  for (const auto& c : commands) {
    const auto a = run(c);
    const auto b = run(c);
    EXPECT_EQ(a.code, 0) << c;
    EXPECT_FALSE(a.out.empty()) << c;
    EXPECT_EQ(a.out, b.out) << c;
  }
}

TEST(Cli, SynthAndIngestAreReproducible) {
  const auto a = scratch() / "a", b = scratch() / "b";
  ASSERT_EQ(run("synth --users 40 --seed 8 --out-dir " + a.string()).code, 0);
  ASSERT_EQ(run("synth --users 40 --seed 8 --out-dir " + b.string()).code, 0);
  EXPECT_EQ(slurp(a / "edges.tsv"), slurp(b / "edges.tsv"));
  EXPECT_EQ(slurp(a / "checkins.tsv"), slurp(b / "checkins.tsv"));
  for (const auto& d : {a, b})
    ASSERT_EQ(run("ingest --edges " + (d / "edges.tsv").string() + " --checkins " + (d / "checkins.tsv").string() +
                  " --out " + (d / "s.snap").string())
                  .code,
              0);
  EXPECT_EQ(slurp(a / "s.snap"), slurp(b / "s.snap"));
}

TEST(Cli, GeoJson) {
  const auto path = scratch() / "q.geojson";
  EXPECT_EQ(run("query " + kFixture + " --k 2 --algo fast --geojson " + path.string()).code, 2);
  const auto users = run("bench --snapshot " + snapshot().string() + " --group 50 --k 2 --algo fast --sample 1");
  ASSERT_EQ(users.code, 0);
  // First data row starts with the sampled user id.
  const auto line = users.out.substr(users.out.find('\n') + 1);
  const auto user = line.substr(0, line.find(','));
  ASSERT_EQ(run("query --snapshot " + snapshot().string() + " --user " + user + " --k 2 --algo fast --geojson " +
                path.string())
                .code,
            0);
  const auto text = slurp(path);
  EXPECT_NE(text.find("FeatureCollection"), std::string::npos);
  EXPECT_NE(text.find("\"Point\""), std::string::npos);
}

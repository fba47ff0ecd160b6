#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "lerc/cli.hpp"
#include "lerc/errors.hpp"
#include "lerc/io.hpp"
#include "lerc/verify/simulate.hpp"

namespace lerc {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / fs::path("lerc-test-" + std::to_string(counter_++) + "-" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

TEST(Numbers, SeventeenDigitsRoundTrip) {
  for (double v : {0.1, -1.0 / 3.0, 9.711914478058505, 1e-300, 6.02e23, -0.0}) {
    EXPECT_EQ(io::parse_number(io::format_number(v)), v);
  }
  EXPECT_EQ(io::format_number(0.1), "0.10000000000000001");
  EXPECT_TRUE(std::isnan(io::parse_number(io::format_number(std::nan("")))));
  EXPECT_THROW(io::parse_number("1.5x"), ContractError);
  EXPECT_THROW(io::parse_number(""), ContractError);
}

TEST(Csv, SweepRoundTrip) {
  const auto rows = sweep(-2.0, 2.0, 5, 1e-6);
  std::stringstream ss;
  io::write_sweep_csv(ss, rows);
  const auto back = io::read_sweep_csv(ss);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].a, rows[i].a);
    EXPECT_EQ(back[i].gamma_star, rows[i].gamma_star);
    EXPECT_EQ(back[i].P, rows[i].P);
    EXPECT_EQ(back[i].negativity_ok, rows[i].negativity_ok);
  }
}

TEST(Csv, QuadfunsRoundTrip) {
  const std::vector<double> y{0.3, 0.45, 0.9};
  const auto rows = figure_quadfuns(1.0, 4.0, 1.0, 0.0, -1.1, y);
  std::stringstream ss;
  io::write_quadfuns_csv(ss, rows);
  const auto back = io::read_quadfuns_csv(ss);
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back[i].lm1_next, rows[i].lm1_next);
    EXPECT_EQ(back[i].threshold, rows[i].threshold);
  }
}

TEST(Csv, RejectsWrongHeader) {
  std::stringstream ss("y,l1,lm1,threshold\n1,2,3,4\n");
  EXPECT_THROW(io::read_quadfuns_csv(ss), ContractError);
}

TEST(Csv, TraceRoundTrip) {
  using namespace verify;
  const auto w = DisturbancePlan::make(DisturbanceKind::kWhite, 4, 1, 30);
  const auto v = DisturbancePlan::make(DisturbanceKind::kWhite, 5, 1, 30);
  const SimulationTrace tr = simulate_closed_loop(1.0, -1.0, 4.0, 0.2, w, v, 30);
  std::stringstream ss;
  io::write_trace_csv(ss, tr);
  SimulationTrace back = io::read_trace_csv(ss);
  io::apply_trace_meta(io::trace_meta(tr), back);
  EXPECT_NO_THROW(validate_trace(back));
  EXPECT_EQ(back.x, tr.x);
  EXPECT_EQ(back.u, tr.u);
  EXPECT_EQ(back.v, tr.v);
  EXPECT_EQ(back.l, tr.l);
  EXPECT_EQ(back.alpha, tr.alpha);
  EXPECT_EQ(back.prng, tr.prng);
  EXPECT_EQ(back.P, tr.P);
}

TEST(Json, ModelSetRoundTrip) {
  const ModelSet models({Model{0.5, 1, 1}, Model{-2, -1, 0.75}});
  const ModelSet back = io::model_set_from_json(io::json::parse(io::to_json(models).dump()));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1], models[1]);
  EXPECT_THROW(io::model_set_from_json(io::json::parse(R"({"models": []})")), ContractError);
  EXPECT_THROW(io::model_set_from_json(io::json::parse(R"([1])")), ContractError);
}

TEST(Json, OracleReportRoundTrip) {
  verify::OracleReport r;
  r.trials = 3;
  r.max_gap = 2.5e-9;
  r.failures.push_back({Model{1, -1, 1}, 2, 4, 3e-8, ""});
  r.failures.push_back({Model{0, 1, 1}, 0, 1, std::nan(""), "Singular"});
  const auto back = io::oracle_report_from_json(io::json::parse(io::to_json(r).dump()));
  EXPECT_EQ(back.trials, 3);
  EXPECT_EQ(back.max_gap, r.max_gap);
  ASSERT_EQ(back.failures.size(), 2u);
  EXPECT_EQ(back.failures[0].gap, 3e-8);
  EXPECT_TRUE(std::isnan(back.failures[1].gap));
  EXPECT_EQ(back.failures[1].error, "Singular");
}

TEST(Cli, CertifyExitCodes) {
  const CliResult pass = invoke({"certify", "--a", "1", "--gamma", "4.0"});
  EXPECT_EQ(pass.code, 0);
  EXPECT_TRUE(io::json::parse(pass.out).at("certified").get<bool>());
  const CliResult fail = invoke({"certify", "--a", "1", "--gamma", "3.4"});
  EXPECT_EQ(fail.code, 2);
  EXPECT_FALSE(io::json::parse(fail.out).at("certified").get<bool>());
}

TEST(Cli, RiccatiJson) {
  const CliResult r = invoke({"riccati", "--a", "0", "--gamma", "2"});
  EXPECT_EQ(r.code, 0);
  const auto doc = io::json::parse(r.out);
  EXPECT_EQ(doc.at("P").get<double>(), 4.0);
  EXPECT_TRUE(doc.at("feasible_gain").get<bool>());
  EXPECT_EQ(invoke({"riccati", "--a", "1", "--gamma", "1"}).code, 2);
}

TEST(Cli, GammaStar) {
  const CliResult r = invoke({"gamma-star", "--a", "1"});
  EXPECT_EQ(r.code, 0);
  const double g = io::json::parse(r.out).at("gamma_star").get<double>();
  EXPECT_GT(g, 3.4);
  EXPECT_LE(g, 4.0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"certify", "--a", "1"}).code, 1);
  const CliResult unknown = invoke({"certify", "--a", "1", "--gamma", "4", "--bogus", "2"});
  EXPECT_EQ(unknown.code, 1);
  EXPECT_FALSE(unknown.err.empty());
  EXPECT_EQ(invoke({"simulate", "--a", "1", "--b-true", "2", "--gamma", "4", "--horizon", "3"}).code, 1);
  EXPECT_EQ(invoke({"figure", "--which", "bars"}).code, 1);
  EXPECT_EQ(invoke({"certify", "--a", "1", "--gamma", "-1"}).code, 1);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, SimulateIsDeterministicAndWritesMeta) {
  TempDir dir;
  const auto first = dir / "a.csv", second = dir / "b.csv";
  for (const auto& path : {first, second}) {
    const CliResult r = invoke({"simulate", "--a", "1", "--b-true", "-1", "--gamma", "4", "--horizon",
                       "60", "--disturbance", "white", "--seed", "9", "--out", path.string()});
    EXPECT_EQ(r.code, 0) << r.err;
  }
  EXPECT_EQ(slurp(first), slurp(second));
  const auto meta = io::json::parse(slurp(first.string() + ".meta.json"));
  EXPECT_EQ(meta.at("prng").get<std::string>(), verify::kPrngName);
  EXPECT_EQ(meta.at("seed").get<int>(), 9);

  std::ifstream csv(first);
  SimulationTrace tr = io::read_trace_csv(csv);
  io::apply_trace_meta(meta, tr);
  EXPECT_NO_THROW(validate_trace(tr));
  EXPECT_EQ(tr.horizon(), 60);
}

TEST(Cli, SimulateAdversarial) {
  const CliResult r = invoke({"simulate", "--a", "0.5", "--b-true", "1", "--gamma", "2.5", "--horizon",
                     "10", "--disturbance", "adversarial", "--restarts", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream csv(r.out);
  EXPECT_EQ(io::read_trace_csv(csv).horizon(), 10);
}

TEST(Cli, SweepAndFiguresAreDeterministic) {
  TempDir dir;
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"sweep", "--a-min", "-1", "--a-max", "1", "--steps", "5"},
        std::vector<std::string>{"figure", "--which", "quadfuns"},
        std::vector<std::string>{"figure", "--which", "gammascaling", "--points", "13"}}) {
    std::vector<std::string> first = args, second = args;
    first.insert(first.end(), {"--out", (dir / "one.csv").string()});
    second.insert(second.end(), {"--out", (dir / "two.csv").string()});
    EXPECT_EQ(invoke(first).code, 0);
    EXPECT_EQ(invoke(second).code, 0);
    EXPECT_EQ(slurp(dir / "one.csv"), slurp(dir / "two.csv"));
  }
  std::ifstream q(dir / "two.csv");
  EXPECT_EQ(io::read_sweep_csv(q).size(), 13u);
}

TEST(Cli, QuadfunsDefaults) {
  const CliResult r = invoke({"figure", "--which", "quadfuns"});
  EXPECT_EQ(r.code, 0);
  std::istringstream csv(r.out);
  const auto rows = io::read_quadfuns_csv(csv);
  ASSERT_EQ(rows.size(), 121u);
  EXPECT_EQ(rows.front().y, 0.3);
  EXPECT_EQ(rows.back().y, 0.9);
}

TEST(Cli, OracleSubcommand) {
  const CliResult r = invoke({"verify-lemma", "--trials", "20", "--seed", "4"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto report = io::oracle_report_from_json(io::json::parse(r.out));
  EXPECT_EQ(report.trials, 160);
  EXPECT_TRUE(report.failures.empty());

  TempDir dir;
  const auto models = dir / "models.json";
  std::ofstream(models) << R"({"models": [{"a": 0.0, "b": 1.0, "c": 1.0}]})";
  const CliResult custom = invoke({"verify-lemma", "--trials", "5", "--gamma", "0.9", "--models",
                          models.string()});
  EXPECT_EQ(custom.code, 2);
  EXPECT_EQ(io::json::parse(custom.out).at("failures").size(), 5u);
  EXPECT_EQ(invoke({"verify-lemma", "--horizon", "9"}).code, 1);
}

}  // namespace
}  // namespace lerc

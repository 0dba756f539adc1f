#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "stegcost/harness.hpp"
#include "stegcost/io.hpp"

using namespace stegcost;
using namespace stegcost::harness;

namespace {

const CaseRow& row_of(const ScenarioResult& res, const std::string& name) {
  for (const auto& row : res.rows) {
    if (row.case_name == name) return row;
  }
  throw std::runtime_error("case not found: " + name);
}

double cost_value(const CaseRow& row, const std::string& dimension) {
  for (const auto& e : row.costs.entries) {
    if (e.dimension == dimension) return e.value;
  }
  throw std::runtime_error("cost dimension not found: " + dimension);
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& content) {
    path = (std::filesystem::temp_directory_path() /
            ("stegcost_config_" + std::to_string(::getpid()) + ".txt"))
               .string();
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("fixture bitstreams are deterministic with exact ones counts") {
  BitVec c2 = scenario_a_c2_bits();
  REQUIRE(c2.size() == 2400);
  std::size_t ones = 0;
  for (auto b : c2) ones += b;
  CHECK(ones == 902);
  CHECK(scenario_a_c2_bits() == c2);

  BitVec c8 = scenario_b_c8_bits();
  BitVec c9 = scenario_b_c9_bits();
  REQUIRE(c8.size() == 900);
  REQUIRE(c9.size() == 900);
  std::size_t ones8 = 0, ones9 = 0;
  for (auto b : c8) ones8 += b;
  for (auto b : c9) ones9 += b;
  CHECK(ones8 == 497);
  CHECK(ones9 == 511);
  CHECK(c8 != c9);

  CHECK_THROWS_AS(fixture_bits(10, 11, 1), ConfigError);
}

TEST_CASE("shipped fixture files match the generators") {
  std::string dir = STEGCOST_FIXTURES_DIR;
  CHECK(io::load_bits_file(dir + "/scenario_a_c2.bits") == scenario_a_c2_bits());
  CHECK(io::load_bits_file(dir + "/scenario_b_c8.bits") == scenario_b_c8_bits());
  CHECK(io::load_bits_file(dir + "/scenario_b_c9.bits") == scenario_b_c9_bits());
}

TEST_CASE("request template serializes to the documented sizes") {
  CHECK(carrier::http_size(scenario_b_template(true)) == 178);
  CHECK(carrier::http_size(scenario_b_template(false)) == 154);
  CHECK(scenario_b_template(true).headers.size() == 7);
  CHECK(scenario_b_template(false).headers.size() == 6);
  CHECK(scenario_b_template(true).headers.back().first == "Accept-Language");
}

TEST_CASE("scenario config validation") {
  ScenarioConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  SUBCASE("scenario") { cfg.scenario = "X"; CHECK_THROWS_AS(cfg.validate(), ConfigError); }
  SUBCASE("repeats") { cfg.repeats = 0; CHECK_THROWS_AS(cfg.validate(), ConfigError); }
  SUBCASE("tolerance") {
    cfg.composition_tolerance = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("case names") {
    cfg.cases = {"C9"};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);  // scenario A has no C9
  }
  SUBCASE("scenario mismatch") {
    cfg.scenario = "B";
    CHECK_THROWS_AS(run_scenario_a(cfg), ConfigError);
  }
}

TEST_CASE("scenario A reproduces the reference fragment counts") {
  ScenarioConfig cfg;
  cfg.seed = 7;
  cfg.repeats = 3;
  auto res = run_scenario_a(cfg);

  REQUIRE(res.rows.size() == 4);
  CHECK(res.n_packets == 2400);

  const CaseRow& c1 = row_of(res, "C1");
  CHECK(c1.total_units == 7200);
  CHECK(c1.histogram == std::map<std::uint32_t, std::uint64_t>{{3, 2400}});
  CHECK(c1.costs.entries.empty());

  const CaseRow& c2 = row_of(res, "C2");
  CHECK(c2.total_units == 8698);
  CHECK(c2.histogram == std::map<std::uint32_t, std::uint64_t>{{3, 902}, {4, 1498}});
  CHECK(cost_value(c2, "extra_fragments") == doctest::Approx(1498.0));
  CHECK(c2.note.find("8498") != std::string::npos);  // documented tabulation discrepancy

  const CaseRow& c3 = row_of(res, "C3");
  CHECK(c3.total_units == 9600);
  CHECK(c3.histogram == std::map<std::uint32_t, std::uint64_t>{{4, 2400}});
  CHECK(cost_value(c3, "extra_fragments") == doctest::Approx(2400.0));

  const CaseRow& c4 = row_of(res, "C4");
  CHECK(c4.total_units == 9600);
  CHECK(c4.histogram == std::map<std::uint32_t, std::uint64_t>{{4, 2400}});
  CHECK(c4.total_units == c3.total_units);

  for (const auto& row : res.rows) {
    CHECK(row.per_repeat_times_s.size() == 3);
    CHECK(row.mean_connection_time_s > 0.0);
  }

  REQUIRE(res.composition.has_value());
  CHECK(res.composition->classification == cost::CompositionClass::SuperPosition);
  CHECK(res.composition->baseline_case == "C1");
  CHECK(res.composition->joint_case == "C4");
  CHECK(res.composition->singles.at("C2") > 0.0);
  CHECK(res.composition->singles.at("C3") > 0.0);
  CHECK(res.composition->joint > res.composition->singles.at("C2"));
  CHECK(cost_value(c2, "connection_time") == doctest::Approx(res.composition->singles.at("C2")));
}

TEST_CASE("scenario A is reproducible bit for bit") {
  ScenarioConfig cfg;
  cfg.seed = 11;
  cfg.repeats = 2;
  cfg.n_packets = 120;
  auto a = run_scenario_a(cfg);
  auto b = run_scenario_a(cfg);
  CHECK(io::to_json(a) == io::to_json(b));
  CHECK(io::to_csv(a) == io::to_csv(b));
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].per_repeat_times_s == b.rows[i].per_repeat_times_s);
  }
  // The count columns carry no sampling noise at all.
  for (const auto& row : a.rows) CHECK(row.histogram == row_of(b, row.case_name).histogram);

  cfg.seed = 12;
  auto c = run_scenario_a(cfg);
  CHECK(a.rows[0].per_repeat_times_s != c.rows[0].per_repeat_times_s);
}

TEST_CASE("joint embedding smooths the fragment histogram for any bitstream") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    ScenarioConfig cfg;
    cfg.seed = seed;
    cfg.repeats = 1;
    cfg.n_packets = 60;
    cfg.cases = {"C3", "C4"};
    cfg.bitstream = fixture_bits(60, static_cast<std::size_t>(seed * 2), seed);
    auto res = run_scenario_a(cfg);
    const CaseRow& c3 = row_of(res, "C3");
    const CaseRow& c4 = row_of(res, "C4");
    CHECK(c3.total_units == c4.total_units);
    CHECK(c3.histogram == c4.histogram);
    CHECK(c4.histogram == std::map<std::uint32_t, std::uint64_t>{{4, 60}});
  }
}

TEST_CASE("explicit bitstreams must match the unit count") {
  ScenarioConfig cfg;
  cfg.n_packets = 50;
  cfg.bitstream = BitVec(49, 1);
  CHECK_THROWS_AS(run_scenario_a(cfg), ConfigError);
}

TEST_CASE("case selection filters rows and drops the composition") {
  ScenarioConfig cfg;
  cfg.n_packets = 40;
  cfg.repeats = 1;
  cfg.cases = {"C3", "C1"};
  auto res = run_scenario_a(cfg);
  REQUIRE(res.rows.size() == 2);
  CHECK(res.rows[0].case_name == "C1");  // canonical order, not request order
  CHECK(res.rows[1].case_name == "C3");
  CHECK_FALSE(res.composition.has_value());
}

TEST_CASE("scenario B several methods leave the size histogram untouched") {
  ScenarioConfig cfg;
  cfg.scenario = "B";
  cfg.seed = 7;
  cfg.repeats = 2;
  auto res = run_scenario_b(cfg);

  REQUIRE(res.rows.size() == 5);
  std::map<std::uint32_t, std::uint64_t> flat = {{178, 900}};
  CHECK(row_of(res, "C5").histogram == flat);
  CHECK(row_of(res, "C6").histogram == flat);  // case change preserves length
  CHECK(row_of(res, "C7").histogram == flat);  // reorder preserves length
  CHECK(row_of(res, "C8").histogram ==
        std::map<std::uint32_t, std::uint64_t>{{154, 403}, {178, 497}});
  CHECK(row_of(res, "C9").histogram ==
        std::map<std::uint32_t, std::uint64_t>{{154, 389}, {178, 511}});

  CHECK(cost_value(row_of(res, "C6"), "request_bytes") == doctest::Approx(0.0));
  CHECK(cost_value(row_of(res, "C7"), "request_bytes") == doctest::Approx(0.0));
  CHECK(cost_value(row_of(res, "C8"), "request_bytes") == doctest::Approx(-24.0 * 403));
  CHECK(cost_value(row_of(res, "C9"), "request_bytes") == doctest::Approx(-24.0 * 389));

  REQUIRE(res.composition.has_value());
  CHECK(res.composition->classification == cost::CompositionClass::ZeroCost);
  CHECK(res.composition->baseline_case == "C5");
  CHECK(res.composition->joint_case == "C9");
  // Dropping the optional header makes requests shorter, so the presence
  // method's time delta is negative; case and order changes are free.
  CHECK(res.composition->singles.at("C8") < 0.0);
  CHECK(std::abs(res.composition->singles.at("C6")) < 0.01);
  CHECK(std::abs(res.composition->singles.at("C7")) < 0.01);
  CHECK(res.composition->joint < 0.0);
}

TEST_CASE("lack sweep rows follow the codec-major grid order") {
  LackSweepConfig cfg;
  cfg.codecs = {"GSM-FR", "G.711"};
  cfg.grid = {0.0, 0.003, 0.01};
  cfg.n_packets = 20000;
  cfg.seed = 7;
  auto rows = run_lack_sweep(cfg);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].codec == "GSM-FR");
  CHECK(rows[3].codec == "G.711");

  // Published anchor: GSM-FR loses 0.5 MOS near 0.3% loss.
  CHECK(rows[1].p_lack == doctest::Approx(0.003));
  CHECK(rows[1].delta_mos == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(rows[1].p_total == doctest::Approx(0.003));

  for (const auto& row : rows) {
    CHECK(row.bandwidth_bytes_s ==
          doctest::Approx(methods::lack_bandwidth_bytes_per_s(carrier::codec_by_name(row.codec),
                                                              row.p_lack)));
    if (row.p_lack == 0.0) {
      CHECK(row.empirical_loss == 0.0);
      CHECK(row.delta_mos == 0.0);
    } else {
      double sd = std::sqrt(row.p_total * (1 - row.p_total) / 20000.0);
      CHECK(row.empirical_loss > row.p_total - 4 * sd);
      CHECK(row.empirical_loss < row.p_total + 4 * sd);
    }
  }

  // Monotone MOS drop along each codec's grid.
  CHECK(rows[0].delta_mos < rows[1].delta_mos);
  CHECK(rows[1].delta_mos < rows[2].delta_mos);
}

TEST_CASE("lack sweep accounts for network loss in the total") {
  LackSweepConfig cfg;
  cfg.codecs = {"G.711"};
  cfg.grid = {0.005};
  cfg.p_n = 0.01;
  cfg.seed = 3;
  auto rows = run_lack_sweep(cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].p_total == doctest::Approx(0.01495).epsilon(1e-12));
  CHECK(rows[0].delta_mos == doctest::Approx(cost::delta_mos(carrier::codec_by_name("G.711"),
                                                             0.01495)));
}

TEST_CASE("rsteg sweep measures the retransmission elevation") {
  RstegSweepConfig cfg;
  cfg.grid = {0.0, 0.05};
  cfg.p_n = 0.03;
  cfg.n_segments = 20000;
  cfg.seed = 7;
  auto rows = run_rsteg_sweep(cfg);
  REQUIRE(rows.size() == 2);

  CHECK(rows[0].baseline_retx_rate == rows[1].baseline_retx_rate);
  double sd_base = std::sqrt(0.03 * 0.97 / 20000.0);
  CHECK(rows[0].baseline_retx_rate > 0.03 - 4 * sd_base);
  CHECK(rows[0].baseline_retx_rate < 0.03 + 4 * sd_base);

  // p_steg = 0 elevation is pure noise.
  CHECK(std::abs(rows[0].r_d) < 8 * sd_base);
  CHECK(rows[0].steg_bytes == 0);

  // p_steg = 0.05 elevates by about 1 - (1-p_n)(1-p_steg) - p_n = 0.0485.
  double expected = 1.0 - (1.0 - 0.03) * (1.0 - 0.05);
  double sd = std::sqrt(expected * (1 - expected) / 20000.0) + sd_base;
  CHECK(rows[1].r_d > 0.0485 - 4 * sd);
  CHECK(rows[1].r_d < 0.0485 + 4 * sd);
  CHECK(rows[1].steg_bytes > 0);
  CHECK(rows[1].measured_retx_rate > rows[0].measured_retx_rate);
}

TEST_CASE("threshold run produces an increasing detection curve for lack") {
  ThresholdRunConfig cfg;
  cfg.method = "lack";
  cfg.grid = {0.005, 0.025, 0.06};
  cfg.runs_per_point = 40;
  cfg.n_units = 2000;
  cfg.p_t = 0.02;
  cfg.seed = 7;
  auto curve = run_threshold(cfg);
  REQUIRE(curve.points.size() == 3);
  CHECK(curve.points[0].p_detect < 0.5);
  CHECK(curve.points[2].p_detect > 0.9);
  CHECK(curve.points[0].cost ==
        doctest::Approx(cost::delta_mos(carrier::codec_by_name("G.711"), 0.005)));
  REQUIRE(curve.sc_d.has_value());
  CHECK(*curve.sc_d > curve.points[0].cost);
}

TEST_CASE("threshold run maps rsteg intensities onto the retx-difference axis") {
  ThresholdRunConfig cfg;
  cfg.method = "rsteg";
  cfg.grid = {0.001, 0.05};
  cfg.runs_per_point = 20;
  cfg.n_units = 2000;
  cfg.baseline_retx = 0.03;
  cfg.p_n = 0.03;
  cfg.seed = 7;
  auto curve = run_threshold(cfg);
  REQUIRE(curve.points.size() == 2);
  double expected_cost = 1.0 - (1.0 - 0.03) * (1.0 - 0.05) - 0.03;
  CHECK(curve.points[1].cost == doctest::Approx(expected_cost).epsilon(1e-12));
  CHECK(curve.points[1].p_detect > curve.points[0].p_detect);

  cfg.method = "bogus";
  CHECK_THROWS_AS(run_threshold(cfg), ConfigError);
}

TEST_CASE("config files parse into scenario settings") {
  TempFile file(
      "# comment line\n"
      "scenario = B\n"
      "n_packets = 300   # inline comment\n"
      "repeats=4\n"
      "seed = 99\n"
      "p_n = 0.015\n"
      "jitter_ms = 0.25\n"
      "steg_key = hunter2\n"
      "cases = C5, C8\n"
      "\n");
  auto kv = parse_config_file(file.path);
  CHECK(kv.size() == 8);
  CHECK(kv.at("scenario") == "B");
  CHECK(kv.at("n_packets") == "300");

  ScenarioConfig cfg;
  apply_config(cfg, kv);
  CHECK(cfg.scenario == "B");
  CHECK(cfg.n_packets == 300);
  CHECK(cfg.repeats == 4);
  CHECK(cfg.seed == 99);
  CHECK(cfg.channel.p_n == doctest::Approx(0.015));
  CHECK(cfg.channel.jitter_ms == doctest::Approx(0.25));
  CHECK(cfg.method.steg_key == Bytes{'h', 'u', 'n', 't', 'e', 'r', '2'});
  CHECK(cfg.cases == std::vector<std::string>{"C5", "C8"});
}

TEST_CASE("config errors are reported with context") {
  ScenarioConfig cfg;
  CHECK_THROWS_AS(apply_config(cfg, {{"bogus_key", "1"}}), ConfigError);
  CHECK_THROWS_AS(apply_config(cfg, {{"p_n", "abc"}}), ConfigError);
  CHECK_THROWS_AS(apply_config(cfg, {{"n_packets", "12x"}}), ConfigError);
  CHECK_THROWS_AS(parse_config_file("/nonexistent/config"), ConfigError);

  TempFile bad("just a line without equals\n");
  CHECK_THROWS_AS(parse_config_file(bad.path), ConfigError);
}

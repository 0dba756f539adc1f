#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stegcost/bits.hpp"
#include "stegcost/carrier.hpp"
#include "stegcost/common.hpp"
#include "stegcost/cost.hpp"
#include "stegcost/methods.hpp"
#include "stegcost/netsim.hpp"
#include "stegcost/steganalysis.hpp"

namespace stegcost::harness {

struct ScenarioConfig {
  std::string scenario = "A";            // "A" or "B"
  std::vector<std::string> cases;        // empty -> every case of the scenario
  std::size_t n_packets = 0;             // 0 -> scenario default (A: 2400, B: 900)
  std::size_t repeats = 10;
  std::uint64_t seed = 1;
  netsim::ChannelConfig channel;
  methods::MethodConfig method;
  std::optional<BitVec> bitstream;       // explicit wire bits for C2/C4 or C8/C9
  double composition_tolerance = 0.05;

  void validate() const;
};

struct CaseRow {
  std::string case_name;
  double mean_connection_time_s = 0;
  double std_connection_time_s = 0;
  std::uint64_t total_units = 0;                    // fragments (A) or requests (B)
  std::map<std::uint32_t, std::uint64_t> histogram; // frags/packet (A) or sizes (B)
  std::vector<double> per_repeat_times_s;
  std::string note;
  cost::CostVector costs;  // deltas against the scenario baseline case
};

struct CompositionReport {
  cost::CompositionClass classification = cost::CompositionClass::Additive;
  std::map<std::string, double> singles;  // case -> time delta (s)
  double joint = 0;
  std::string joint_case;
  std::string baseline_case;
  double tolerance_rel = 0.05;
};

struct ScenarioResult {
  std::string scenario;
  std::uint64_t seed = 0;
  std::size_t n_packets = 0;
  std::size_t repeats = 0;
  std::vector<CaseRow> rows;
  std::optional<CompositionReport> composition;
};

// Scenario A: 1500-byte packets over the fragmentation subcarrier.
//   C1 no steg (3 frags/packet), C2 F1, C3 F3, C4 F1+F3.
ScenarioResult run_scenario_a(const ScenarioConfig& cfg);

// Scenario B: HTTP requests.
//   C5 no steg, C6 F6, C7 F7, C8 F8, C9 F6+F7+F8.
ScenarioResult run_scenario_b(const ScenarioConfig& cfg);

struct LackSweepRow {
  std::string codec;
  double p_lack = 0;
  double p_n = 0;
  double p_total = 0;
  double delta_mos = 0;
  double empirical_loss = 0;   // steg-unaware measured loss
  double bandwidth_bytes_s = 0;
};

struct LackSweepConfig {
  std::vector<std::string> codecs;  // empty -> all defaults
  std::vector<double> grid = {0.0, 0.001, 0.0025, 0.005, 0.0075, 0.01, 0.02, 0.03, 0.05};
  double p_n = 0.0;
  std::size_t n_packets = 20000;
  std::uint64_t seed = 1;
};

std::vector<LackSweepRow> run_lack_sweep(const LackSweepConfig& cfg);

struct RstegSweepRow {
  double p_steg = 0;
  double p_n = 0;
  double measured_retx_rate = 0;
  double baseline_retx_rate = 0;
  double r_d = 0;               // measured - baseline
  std::uint64_t steg_bytes = 0; // covert bytes delivered
};

struct RstegSweepConfig {
  std::vector<double> grid = {0.0, 0.025, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
  double p_n = 0.03;
  std::size_t n_segments = 20000;
  std::size_t segment_len = 100;
  std::uint64_t seed = 1;
};

std::vector<RstegSweepRow> run_rsteg_sweep(const RstegSweepConfig& cfg);

struct ThresholdRunConfig {
  std::string method = "lack";     // "lack" or "rsteg"
  std::vector<double> grid;        // intensities; empty -> method default
  std::size_t runs_per_point = 200;
  std::size_t n_units = 5000;      // packets or segments per trial
  double p_t = 0.02;               // loss-rate reference (lack)
  double baseline_retx = 0.03;     // retx reference (rsteg)
  double p_n = 0.0;
  double alpha = steganalysis::kDefaultAlpha;
  std::string codec = "G.711";     // cost axis for lack
  std::uint64_t seed = 1;
};

steganalysis::ThresholdCurve run_threshold(const ThresholdRunConfig& cfg);

// Deterministic fixture bitstreams: n_ones ones shuffled into n_total bits
// with a fixed internal tag, so the same split always yields the same
// stream. Shipped under fixtures/ as text files of '0'/'1'.
BitVec fixture_bits(std::size_t n_total, std::size_t n_ones, std::uint64_t tag);
BitVec scenario_a_c2_bits();  // 2400 bits, 902 ones
BitVec scenario_b_c8_bits();  // 900 bits, 497 ones
BitVec scenario_b_c9_bits();  // 900 bits, 511 ones

// Scenario B request template (178 serialized bytes with the optional
// header, 154 without).
carrier::HttpRequest scenario_b_template(bool with_optional_header);

// Flat key-value config files: one "key = value" per line, '#' comments.
std::map<std::string, std::string> parse_config_file(const std::string& path);
void apply_config(ScenarioConfig& cfg, const std::map<std::string, std::string>& kv);

}  // namespace stegcost::harness

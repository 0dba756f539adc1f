// End-to-end gate over the published claims of the laboratory. Each
// criterion prints one PASS/FAIL line; the process exits nonzero when any
// criterion fails. Tolerances are pinned here, next to the checks.
//
// argv[1]: path to the stegcost CLI binary (determinism checks)
// argv[2]: fixtures directory (shipped bitstream files)

#include <sys/wait.h>
#include <unistd.h>

#include <boost/math/distributions/binomial.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "stegcost/bits.hpp"
#include "stegcost/carrier.hpp"
#include "stegcost/cost.hpp"
#include "stegcost/harness.hpp"
#include "stegcost/io.hpp"
#include "stegcost/methods.hpp"
#include "stegcost/netsim.hpp"
#include "stegcost/rng.hpp"
#include "stegcost/steganalysis.hpp"

namespace fs = std::filesystem;
using namespace stegcost;

namespace {

int g_failures = 0;

void report(int idx, const std::string& label, bool ok, const std::string& detail) {
  std::printf("criterion %2d: %-62s %s\n", idx, label.c_str(), ok ? "PASS" : "FAIL");
  if (!ok) {
    ++g_failures;
    if (!detail.empty()) std::fprintf(stderr, "    %s\n", detail.c_str());
  }
  std::fflush(stdout);
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const harness::CaseRow& row(const harness::ScenarioResult& r, const std::string& name) {
  for (const auto& c : r.rows) {
    if (c.case_name == name) return c;
  }
  throw std::runtime_error("missing case " + name);
}

std::vector<carrier::OvertPacket> zero_flow(std::size_t n, std::size_t payload_len) {
  std::vector<carrier::OvertPacket> flow(n);
  for (std::size_t i = 0; i < n; ++i) {
    flow[i].id = static_cast<std::uint16_t>(i);
    flow[i].payload.assign(payload_len, 0);
  }
  return flow;
}

std::map<std::uint32_t, std::uint64_t> group_size_histogram(
    const std::vector<carrier::Fragment>& frags) {
  std::map<std::uint32_t, std::uint64_t> h;
  for (const auto& g : carrier::group_by_identification(frags)) {
    ++h[static_cast<std::uint32_t>(g.size())];
  }
  return h;
}

// P(Bin(n, p) >= k), the detector's exceedance probability.
double binom_sf(std::uint64_t n, double p, std::uint64_t k) {
  if (k == 0) return 1.0;
  if (k > n) return 0.0;
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  boost::math::binomial_distribution<double> d(static_cast<double>(n), p);
  return cdf(complement(d, static_cast<double>(k - 1)));
}

// Smallest k with P(Bin(n, p) >= k) <= alpha.
std::uint64_t critical_count(std::uint64_t n, double p, double alpha) {
  std::uint64_t lo = 1, hi = n + 1;
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (binom_sf(n, p, mid) <= alpha) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------
// criteria 1 and 2: scenario A default run (seed 7)
// ---------------------------------------------------------------------------

void criteria_1_2(const std::string& fixtures_dir) {
  harness::ScenarioConfig cfg;
  cfg.scenario = "A";
  cfg.seed = 7;
  cfg.bitstream = io::load_bits_file(fixtures_dir + "/scenario_a_c2.bits");

  auto t0 = std::chrono::steady_clock::now();
  harness::ScenarioResult res = harness::run_scenario_a(cfg);
  double secs = seconds_since(t0);

  std::ostringstream d1;
  bool ok1 = true;
  const auto& c1 = row(res, "C1");
  const auto& c3 = row(res, "C3");
  const auto& c4 = row(res, "C4");
  ok1 &= c1.total_units == 7200;
  ok1 &= c3.total_units == 9600;
  ok1 &= c4.total_units == 9600;
  ok1 &= c4.histogram == std::map<std::uint32_t, std::uint64_t>{{4, 2400}};
  ok1 &= secs < 10.0;
  d1 << "totals C1=" << c1.total_units << " C3=" << c3.total_units << " C4=" << c4.total_units
     << " wall=" << secs << "s";
  report(1, "scenario A totals (7200/9600/9600, C4 all-4s) in <10s", ok1, d1.str());

  std::ostringstream d2;
  bool ok2 = true;
  const auto& c2 = row(res, "C2");
  ok2 &= c2.histogram == std::map<std::uint32_t, std::uint64_t>{{3, 902}, {4, 1498}};
  ok2 &= c2.total_units == 8698;
  ok2 &= c2.note.find("8498") != std::string::npos;
  ok2 &= secs < 10.0;
  d2 << "C2 total=" << c2.total_units << " note=\"" << c2.note << "\"";
  report(2, "fixture split 902/1498, total 8698, tabulation note", ok2, d2.str());
}

// ---------------------------------------------------------------------------
// criterion 3: super-position across seeds; C3/C4 totals match for any bits
// ---------------------------------------------------------------------------

void criterion_3() {
  std::ostringstream d;
  bool ok = true;

  for (std::uint64_t seed = 1; seed <= 100 && ok; ++seed) {
    harness::ScenarioConfig cfg;
    cfg.scenario = "A";
    cfg.seed = seed;
    cfg.repeats = 2;
    harness::ScenarioResult res = harness::run_scenario_a(cfg);
    bool sp = res.composition &&
              res.composition->classification == cost::CompositionClass::SuperPosition;
    if (!sp) {
      ok = false;
      d << "seed " << seed << " class="
        << (res.composition ? cost::to_string(res.composition->classification) : "none");
    }
  }

  for (std::uint64_t trial = 0; trial < 1000 && ok; ++trial) {
    CounterRng rng(9000 + trial, kStreamBits);
    harness::ScenarioConfig cfg;
    cfg.scenario = "A";
    cfg.cases = {"C3", "C4"};
    cfg.n_packets = 60;
    cfg.repeats = 1;
    cfg.seed = 40000 + trial;
    cfg.bitstream = random_bits(60, rng);
    harness::ScenarioResult res = harness::run_scenario_a(cfg);
    if (row(res, "C3").total_units != row(res, "C4").total_units) {
      ok = false;
      d << "trial " << trial << " C3=" << row(res, "C3").total_units
        << " C4=" << row(res, "C4").total_units;
    }
  }

  report(3, "super-position on 100 seeds; C4 totals == C3 on 1000 bitstreams", ok, d.str());
}

// ---------------------------------------------------------------------------
// criterion 4: scenario B histograms and zero-cost classification
// ---------------------------------------------------------------------------

void criterion_4(const std::string& fixtures_dir) {
  std::ostringstream d;
  bool ok = true;

  ok &= io::load_bits_file(fixtures_dir + "/scenario_b_c8.bits") == harness::scenario_b_c8_bits();
  ok &= io::load_bits_file(fixtures_dir + "/scenario_b_c9.bits") == harness::scenario_b_c9_bits();
  if (!ok) d << "shipped fixture bits do not match the harness fixtures; ";

  harness::ScenarioConfig cfg;
  cfg.scenario = "B";
  cfg.seed = 7;
  harness::ScenarioResult res = harness::run_scenario_b(cfg);
  const std::map<std::uint32_t, std::uint64_t> flat{{178, 900}};
  for (const char* name : {"C5", "C6", "C7"}) {
    if (row(res, name).histogram != flat) {
      ok = false;
      d << name << " is not all-178; ";
    }
  }
  ok &= row(res, "C8").histogram == std::map<std::uint32_t, std::uint64_t>{{154, 403}, {178, 497}};
  ok &= row(res, "C9").histogram == std::map<std::uint32_t, std::uint64_t>{{154, 389}, {178, 511}};

  for (std::uint64_t seed = 1; seed <= 100 && ok; ++seed) {
    harness::ScenarioConfig c;
    c.scenario = "B";
    c.seed = seed;
    c.repeats = 2;
    harness::ScenarioResult r = harness::run_scenario_b(c);
    bool zc = r.composition && r.composition->classification == cost::CompositionClass::ZeroCost;
    if (!zc) {
      ok = false;
      d << "seed " << seed << " class="
        << (r.composition ? cost::to_string(r.composition->classification) : "none");
    }
  }

  report(4, "scenario B size histograms exact; zero-cost on 100 seeds", ok, d.str());
}

// ---------------------------------------------------------------------------
// criterion 5: voice-quality axis anchors and monotonicity
// ---------------------------------------------------------------------------

void criterion_5() {
  std::ostringstream d;
  bool ok = true;

  double gsm = cost::delta_mos(carrier::codec_by_name("GSM-FR"), 0.003);
  double g711 = cost::delta_mos(carrier::codec_by_name("G.711"), 0.022);
  ok &= std::abs(gsm - 0.5) <= 0.05;
  ok &= std::abs(g711 - 0.5) <= 0.05;
  d << "GSM-FR@0.003=" << gsm << " G.711@0.022=" << g711;

  for (const auto& codec : carrier::default_codecs()) {
    double prev = -1.0;
    for (int i = 0; i <= 50; ++i) {
      double p = 0.001 * i;
      double v = cost::delta_mos(codec, p);
      if (v <= prev) {
        ok = false;
        d << "; " << codec.name << " not increasing at p=" << p;
        break;
      }
      prev = v;
    }
  }

  report(5, "MOS-drop anchors within 0.05; curves strictly increasing", ok, d.str());
}

// ---------------------------------------------------------------------------
// criterion 6: pooled loss law seen by an unaware receiver
// ---------------------------------------------------------------------------

void criterion_6() {
  std::ostringstream d;
  bool ok = true;
  const std::size_t n = 100000;
  const carrier::CodecProfile& codec = carrier::codec_by_name("G.711");

  int cell = 0;
  for (double p_n : {0.0, 0.01}) {
    for (double p_lack : {0.0, 0.005, 0.01}) {
      auto t0 = std::chrono::steady_clock::now();
      carrier::RtpVoiceFlow flow = carrier::make_rtp_flow(codec, n);
      methods::MethodConfig m;
      m.p_lack = p_lack;
      methods::LackResult emb = methods::lack_embed(flow, {}, m, 500 + cell);
      netsim::ChannelConfig ch;
      ch.p_n = p_n;
      ch.seed = 600 + cell;
      netsim::RtpSimResult sim = netsim::simulate_rtp(emb.flow, ch, false);
      double secs = seconds_since(t0);

      double expected = cost::total_loss(p_n, p_lack);
      double measured = sim.report.measured_loss_rate;
      bool cell_ok;
      if (expected == 0.0) {
        cell_ok = measured == 0.0;
      } else {
        double sigma = std::sqrt(expected * (1.0 - expected) / static_cast<double>(n));
        cell_ok = std::abs(measured - expected) <= 3.0 * sigma;
      }
      cell_ok = cell_ok && secs < 30.0;
      if (!cell_ok) {
        ok = false;
        d << "p_n=" << p_n << " p_lack=" << p_lack << " measured=" << measured
          << " expected=" << expected << " wall=" << secs << "s; ";
      }
      ++cell;
    }
  }

  report(6, "unaware loss within 3 sigma of pooled law (6 cells, 1e5 pkts)", ok, d.str());
}

// ---------------------------------------------------------------------------
// criterion 7: retransmission elevation and covert tcp roundtrip
// ---------------------------------------------------------------------------

void criterion_7() {
  std::ostringstream d;
  bool ok = true;
  const std::size_t n = 100000;
  const double p_n = 0.03;

  carrier::TcpFlow flow = carrier::make_tcp_flow(n, 100, 71);
  netsim::ChannelConfig ch;
  ch.p_n = p_n;

  methods::MethodConfig m0;
  m0.p_steg_rsteg = 0.0;
  methods::RstegPolicies pol0 = methods::rsteg_policies(m0, 72);
  ch.seed = 73;
  netsim::TcpSimResult base = netsim::simulate_tcp_transfer(flow, ch, pol0);
  double sd_base = std::sqrt(p_n * (1.0 - p_n) / static_cast<double>(n));
  ok &= std::abs(base.report.measured_retx_rate - p_n) <= 3.0 * sd_base;
  d << "baseline retx=" << base.report.measured_retx_rate;

  methods::MethodConfig m5;
  m5.p_steg_rsteg = 0.05;
  methods::RstegPolicies pol5 = methods::rsteg_policies(m5, 72);
  std::size_t capacity =
      methods::rsteg_prepare_flow(flow, {}, pol5, 74).report.bits_embedded / 8;
  CounterRng msg_rng(75, kStreamSecret);
  Bytes msg = random_bytes(4096, msg_rng);
  Bytes wire = frame_bytes(msg, capacity, 74);
  methods::RstegResult prep = methods::rsteg_prepare_flow(flow, wire, pol5, 74);
  ch.seed = 76;
  netsim::TcpSimResult steg = netsim::simulate_tcp_transfer(prep.flow, ch, pol5);

  double expect_steg = 1.0 - (1.0 - p_n) * (1.0 - 0.05);
  double sd_steg = std::sqrt(expect_steg * (1.0 - expect_steg) / static_cast<double>(n));
  double r_d = cost::retransmission_difference(steg.report.measured_retx_rate,
                                               base.report.measured_retx_rate);
  double sd_rd = std::sqrt(sd_steg * sd_steg + sd_base * sd_base);
  ok &= std::abs(r_d - 0.0485) <= 3.0 * sd_rd;
  d << " r_d=" << r_d;

  Bytes overt_expect;
  for (const auto& seg : flow.segments) {
    overt_expect.insert(overt_expect.end(), seg.payload.begin(), seg.payload.end());
  }
  ok &= steg.received_overt == overt_expect;
  ok &= steg.received_secret == wire;
  ok &= deframe_bytes(steg.received_secret) == msg;

  report(7, "retx 3 percent baseline, r_d ~ 0.0485, covert roundtrip exact", ok, d.str());
}

// ---------------------------------------------------------------------------
// criterion 8: randomized roundtrips for every method; fake-free scan clean
// ---------------------------------------------------------------------------

void criterion_8() {
  std::ostringstream d;
  bool ok = true;
  const std::size_t trials = 1000;

  methods::MethodConfig m;          // wire defaults (500-byte fragments)
  methods::MethodConfig m100 = m;   // compact fragments for the bulk loops
  m100.frag_size = 100;
  const std::size_t cap_f3 = methods::f3_capacity(1, m100);  // bytes per fake

  auto fail = [&](const char* method, std::size_t t) {
    ok = false;
    d << method << " trial " << t << " mismatched; ";
  };

  for (std::size_t t = 0; t < trials && ok; ++t) {
    CounterRng rng(derive_stream(8100, t), kStreamSecret);

    {  // f1: one parity bit per packet
      std::size_t len = 1 + rng.below(33);
      BitVec msg = random_bits(len, rng);
      std::size_t n = len + kFrameHeaderBits;
      auto res = methods::f1_embed(zero_flow(n, 3 * m100.frag_size),
                                   frame_bits(msg, n), m100);
      if (deframe_bits(methods::f1_extract(res.fragments)) != msg) fail("f1", t);
    }
    {  // f3: fake fragments carry the byte stream
      std::size_t len = 1 + rng.below(200);
      Bytes msg = random_bytes(len, rng);
      std::size_t n = (len + kFrameHeaderBytes + cap_f3 - 1) / cap_f3;
      std::vector<std::vector<carrier::Fragment>> groups;
      for (auto& pkt : zero_flow(n, 3 * m100.frag_size)) {
        groups.push_back(carrier::fragment_packet(pkt, 3, m100.frag_size));
      }
      auto res = methods::f3_embed(groups, frame_bytes(msg, n * cap_f3, t), m100, t);
      auto ex = methods::f3_extract(res.fragments, m100);
      if (deframe_bytes(ex.secret_stream) != msg) fail("f3", t);
    }
    {  // f1 + f3 on one subcarrier
      BitVec bits = random_bits(40, rng);
      if (std::count(bits.begin(), bits.end(), 1) == 0) bits[0] = 1;
      std::size_t ones = static_cast<std::size_t>(std::count(bits.begin(), bits.end(), 1));
      std::size_t len = 1 + rng.below(std::min<std::size_t>(199, ones * cap_f3 - 2));
      Bytes msg = random_bytes(len, rng);
      auto res = methods::f1f3_embed(zero_flow(40, 3 * m100.frag_size), bits,
                                     frame_bytes(msg, ones * cap_f3, t), m100, t);
      auto ex = methods::f1f3_extract(res.fragments, m100);
      if (ex.f1_bits != bits || deframe_bytes(ex.f3_stream) != msg) fail("f1f3", t);
    }
    {  // f6: header-name case
      carrier::HttpRequest tmpl = harness::scenario_b_template(true);
      std::size_t cap = methods::f6_capacity(tmpl);
      std::size_t len = 1 + rng.below(120);
      BitVec msg = random_bits(len, rng);
      std::size_t n = (len + kFrameHeaderBits + cap - 1) / cap;
      auto res = methods::f6_embed_flow(std::vector<carrier::HttpRequest>(n, tmpl),
                                        frame_bits(msg, n * cap), m);
      if (deframe_bits(methods::f6_extract_flow(res.requests, m)) != msg) fail("f6", t);
    }
    {  // f7: header order
      carrier::HttpRequest tmpl = harness::scenario_b_template(true);
      std::size_t cap = methods::f7_capacity(tmpl);
      std::vector<std::string> canonical;
      for (const auto& [name, value] : tmpl.headers) canonical.push_back(name);
      std::size_t len = 1 + rng.below(40);
      BitVec msg = random_bits(len, rng);
      std::size_t n = (len + kFrameHeaderBits + cap - 1) / cap;
      auto res = methods::f7_embed_flow(std::vector<carrier::HttpRequest>(n, tmpl),
                                        frame_bits(msg, n * cap));
      std::vector<std::vector<std::string>> canon(res.requests.size(), canonical);
      if (deframe_bits(methods::f7_extract_flow(res.requests, canon)) != msg) fail("f7", t);
    }
    {  // f8: optional-header presence
      carrier::HttpRequest tmpl = harness::scenario_b_template(true);
      std::size_t len = 1 + rng.below(16);
      BitVec msg = random_bits(len, rng);
      std::size_t n = len + kFrameHeaderBits;
      auto res = methods::f8_embed_flow(std::vector<carrier::HttpRequest>(n, tmpl),
                                        frame_bits(msg, n), m);
      if (deframe_bits(methods::f8_extract_flow(res.requests, m)) != msg) fail("f8", t);
    }
    {  // lack: delayed-packet payloads
      carrier::RtpVoiceFlow flow = carrier::make_rtp_flow(carrier::codec_by_name("G.711"), 600);
      methods::MethodConfig ml = m;
      ml.p_lack = 0.05;
      std::size_t cap = methods::lack_embed(flow, {}, ml, t).report.bits_embedded / 8;
      if (cap < 3) {
        fail("lack-capacity", t);
        break;
      }
      std::size_t len = 1 + rng.below(std::min<std::size_t>(150, cap - 2));
      Bytes msg = random_bytes(len, rng);
      auto res = methods::lack_embed(flow, frame_bytes(msg, cap, t), ml, t);
      if (deframe_bytes(methods::lack_extract(res.flow, 60.0)) != msg) fail("lack", t);
    }
    {  // rsteg: substituted retransmissions
      carrier::TcpFlow flow = carrier::make_tcp_flow(200, 50, derive_stream(8200, t));
      methods::MethodConfig mr = m;
      mr.p_steg_rsteg = 0.3;
      methods::RstegPolicies pol = methods::rsteg_policies(mr, t);
      std::size_t cap = methods::rsteg_prepare_flow(flow, {}, pol, t).report.bits_embedded / 8;
      if (cap < 3) {
        fail("rsteg-capacity", t);
        break;
      }
      std::size_t len = 1 + rng.below(std::min<std::size_t>(150, cap - 2));
      Bytes msg = random_bytes(len, rng);
      auto res = methods::rsteg_prepare_flow(flow, frame_bytes(msg, cap, t), pol, t);
      if (deframe_bytes(methods::rsteg_extract(res.flow, pol)) != msg) fail("rsteg", t);
    }
  }

  // A fake-free flow must scan clean: no phantom identifying sequences.
  methods::MethodConfig m32;
  m32.frag_size = 32;
  CounterRng payload_rng(777, kStreamSecret);
  std::vector<carrier::Fragment> frags;
  frags.reserve(100000);
  for (std::size_t pkt = 0; pkt < 25000; ++pkt) {
    carrier::OvertPacket p;
    p.id = static_cast<std::uint16_t>(pkt);
    p.payload = random_bytes(4 * 32, payload_rng);
    auto f = carrier::fragment_packet(p, 4, 32);
    frags.insert(frags.end(), f.begin(), f.end());
  }
  auto scan = methods::f3_extract(frags, m32);
  if (!scan.fake_indices.empty() || !scan.secret_stream.empty()) {
    ok = false;
    d << "clean scan flagged " << scan.fake_indices.size() << " fragments";
  }

  report(8, "1000 roundtrips per method exact; clean 1e5-fragment scan", ok, d.str());
}

// ---------------------------------------------------------------------------
// criterion 9: detector false-positive calibration on clean traffic
// ---------------------------------------------------------------------------

void criterion_9() {
  std::ostringstream d;
  bool ok = true;
  const double alpha = 0.01;
  const int runs = 1000;
  const int lo = 5, hi = 20;  // [alpha/2, 2*alpha] of 1000 runs

  auto in_band = [&](const char* name, int hits) {
    if (hits < lo || hits > hi) {
      ok = false;
      d << name << " fp=" << hits << "/1000; ";
    }
  };

  steganalysis::Histogram fbase{{3, 902}, {4, 1498}};
  int hits = 0;
  for (int j = 0; j < runs; ++j) {
    auto obs = steganalysis::sample_histogram(fbase, 2400, derive_stream(901, j));
    hits += steganalysis::fragment_count_detector(fbase, obs, alpha).detected ? 1 : 0;
  }
  in_band("fragment-count", hits);

  steganalysis::Histogram hbase{{154, 403}, {178, 497}};
  hits = 0;
  for (int j = 0; j < runs; ++j) {
    auto obs = steganalysis::sample_histogram(hbase, 900, derive_stream(902, j));
    hits += steganalysis::header_size_detector(hbase, obs, alpha).detected ? 1 : 0;
  }
  in_band("header-size", hits);

  hits = 0;
  for (int j = 0; j < runs; ++j) {
    CounterRng r(derive_stream(903, j));
    std::uint64_t k = 0;
    for (int i = 0; i < 5000; ++i) k += r.bernoulli(0.02) ? 1 : 0;
    auto v = steganalysis::loss_rate_detector(static_cast<double>(k) / 5000.0, 0.02, 5000, alpha);
    hits += v.detected ? 1 : 0;
  }
  in_band("loss-rate", hits);

  hits = 0;
  for (int j = 0; j < runs; ++j) {
    CounterRng r(derive_stream(904, j));
    std::uint64_t k = 0;
    for (int i = 0; i < 5000; ++i) k += r.bernoulli(0.03) ? 1 : 0;
    auto v = steganalysis::retransmission_rate_detector(static_cast<double>(k) / 5000.0, 0.03,
                                                        5000, alpha);
    hits += v.detected ? 1 : 0;
  }
  in_band("retx-rate", hits);

  // The constant-count case must never wake the fragment detector: both
  // baseline and observation collapse to one bin.
  methods::MethodConfig m100;
  m100.frag_size = 100;
  steganalysis::Histogram const_base{{4, 2400}};
  for (int j = 0; j < 100 && ok; ++j) {
    CounterRng rng(derive_stream(905, j), kStreamBits);
    BitVec bits = random_bits(60, rng);
    auto res = methods::f1f3_embed(zero_flow(60, 3 * m100.frag_size), bits, {}, m100, 905 + j);
    auto obs = group_size_histogram(res.fragments);
    if (steganalysis::fragment_count_detector(const_base, obs, alpha).detected) {
      ok = false;
      d << "constant-count flow detected at trial " << j;
    }
  }

  report(9, "detector false positives within [alpha/2, 2*alpha] on clean runs", ok, d.str());
}

// ---------------------------------------------------------------------------
// criterion 10: estimated detection threshold vs the analytic 0.5-power point
// ---------------------------------------------------------------------------

void criterion_10() {
  std::ostringstream d;
  bool ok = true;

  harness::ThresholdRunConfig cfg;
  cfg.method = "lack";
  cfg.seed = 3;
  cfg.p_t = 0.02;
  cfg.p_n = 0.0;
  cfg.n_units = 5000;
  cfg.runs_per_point = 200;
  steganalysis::ThresholdCurve curve = harness::run_threshold(cfg);

  std::uint64_t kstar = critical_count(cfg.n_units, cfg.p_t, cfg.alpha);
  double lo = 1e-6, hi = 0.5;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (binom_sf(cfg.n_units, mid, kstar) < 0.5 ? lo : hi) = mid;
  }
  double p_star = 0.5 * (lo + hi);
  double cost_star = cost::delta_mos(carrier::codec_by_name(cfg.codec),
                                     cost::total_loss(cfg.p_n, p_star));

  if (!curve.sc_d) {
    ok = false;
    d << "sc_d missing";
  } else {
    std::size_t j = 0;
    while (j + 1 < curve.points.size() && curve.points[j + 1].intensity < p_star) ++j;
    double step = curve.points[j + 1].cost - curve.points[j].cost;
    ok &= std::abs(*curve.sc_d - cost_star) <= step + 1e-9;
    d << "sc_d=" << *curve.sc_d << " analytic=" << cost_star << " step=" << step;
  }

  report(10, "lack sc_d within one grid step of the analytic 0.5-power cost", ok, d.str());
}

// ---------------------------------------------------------------------------
// criterion 11: CLI determinism, every subcommand byte-identical on reruns
// ---------------------------------------------------------------------------

void criterion_11(const std::string& cli) {
  std::ostringstream d;
  bool ok = true;

  fs::path tmp = fs::temp_directory_path() / ("stegcost_accept_" + std::to_string(::getpid()));
  fs::create_directories(tmp);

  fs::path msg_path = tmp / "msg.bin";
  {
    std::ofstream msg(msg_path, std::ios::binary);
    for (int i = 0; i < 64; ++i) msg.put(static_cast<char>(i * 7 + 3));
  }

  auto run = [&](const std::string& args, const fs::path& out) {
    std::string cmd = "\"" + cli + "\" " + args + " --output \"" + out.string() + "\"";
    int rc = std::system(cmd.c_str());
    return rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
  };
  auto twice = [&](const std::string& name, const std::string& args) {
    fs::path a = tmp / (name + ".a");
    fs::path b = tmp / (name + ".b");
    if (!run(args, a) || !run(args, b)) {
      ok = false;
      d << name << " exited nonzero; ";
      return;
    }
    std::string ca = slurp(a), cb = slurp(b);
    if (ca.empty() || ca != cb) {
      ok = false;
      d << name << " outputs differ (" << ca.size() << " vs " << cb.size() << " bytes); ";
    }
  };

  twice("scenario-a", "scenario-a --seed 11 --n-packets 120 --repeats 2 --format csv");
  twice("scenario-b", "scenario-b --seed 11 --n-packets 150 --repeats 2 --format json");
  twice("lack-sweep",
        "lack-sweep --seed 11 --codecs G.711 --grid 0.005,0.02 --n-packets 4000 --format csv");
  twice("rsteg-sweep", "rsteg-sweep --seed 11 --grid 0.0,0.05 --n-segments 4000 --format csv");
  twice("threshold",
        "threshold --seed 11 --method lack --grid 0.01,0.03,0.06 --runs-per-point 20 "
        "--n-units 1000 --format json");
  twice("embed", "embed --method f3 --message \"" + msg_path.string() + "\" --seed 11");
  twice("detect",
        "detect --detector loss-rate --rate 0.028 --reference 0.02 --samples 5000 --format json");

  fs::path dump = tmp / "embed.a";
  twice("extract", "extract --method f3 --input \"" + dump.string() + "\" --seed 11");
  if (ok && slurp(tmp / "extract.a") != slurp(msg_path)) {
    ok = false;
    d << "extract did not invert embed";
  }

  std::error_code ec;
  fs::remove_all(tmp, ec);

  report(11, "every CLI subcommand byte-identical across reruns", ok, d.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <cli-binary> <fixtures-dir>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const std::string fixtures = argv[2];

  try {
    criteria_1_2(fixtures);
    criterion_3();
    criterion_4(fixtures);
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11(cli);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
    return 1;
  }

  if (g_failures != 0) {
    std::fprintf(stderr, "%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}

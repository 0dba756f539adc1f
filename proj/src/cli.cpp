#include "stegcost/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stegcost/bits.hpp"
#include "stegcost/carrier.hpp"
#include "stegcost/common.hpp"
#include "stegcost/harness.hpp"
#include "stegcost/io.hpp"
#include "stegcost/methods.hpp"
#include "stegcost/netsim.hpp"
#include "stegcost/rng.hpp"
#include "stegcost/steganalysis.hpp"

namespace stegcost::cli {

namespace {

struct Opts {
  // global
  std::uint64_t seed = 1;
  std::string config_path;
  std::string output_path;
  std::string format = "json";
  bool wire_view = false;

  // scenarios
  std::vector<std::string> cases;
  std::size_t n_packets = 0;
  std::size_t repeats = 10;
  std::string bits_path;

  // sweeps and threshold runs
  std::vector<std::string> codecs;
  std::vector<double> grid;
  double p_n = 0.0;
  std::size_t n_segments = 20000;
  std::size_t segment_len = 100;
  std::string method;
  std::size_t runs_per_point = 200;
  std::size_t n_units = 5000;
  double p_t = 0.02;
  double baseline_retx = 0.03;
  double alpha = steganalysis::kDefaultAlpha;
  std::string codec = "G.711";

  // embed / extract / detect
  std::string message_path;
  std::string input_path;
  std::size_t n_override = 0;
  std::string key;
  double p_lack = -1;  // negative: keep config value
  double p_steg = -1;
  std::string detector;
  std::string baseline_path;
  double rate = 0;
  std::uint64_t samples = 0;
  double reference = 0;
};

std::uint64_t env_seed() {
  const char* raw = std::getenv("STEGCOST_SEED");
  if (raw == nullptr || *raw == '\0') return 1;
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(raw, &pos);
    if (pos != std::string(raw).size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string("STEGCOST_SEED is not an integer: ") + raw);
  }
}

// Precedence: defaults < STEGCOST_SEED < config file < explicit flags.
harness::ScenarioConfig build_shell(const CLI::App* sub, const Opts& o) {
  harness::ScenarioConfig shell;
  shell.seed = env_seed();
  if (!o.config_path.empty()) {
    harness::apply_config(shell, harness::parse_config_file(o.config_path));
  }
  if (sub->count("--seed")) shell.seed = o.seed;
  return shell;
}

void write_output(const Opts& o, const std::string& content) {
  if (o.output_path.empty()) {
    std::cout.write(content.data(), static_cast<std::streamsize>(content.size()));
    return;
  }
  std::ofstream out(o.output_path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + o.output_path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

Bytes read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string s = buf.str();
  return Bytes(s.begin(), s.end());
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  return in;
}

methods::MethodConfig method_config(const harness::ScenarioConfig& shell, const CLI::App* sub,
                                    const Opts& o) {
  methods::MethodConfig m = shell.method;
  if (sub->count("--key")) m.steg_key = Bytes(o.key.begin(), o.key.end());
  if (sub->count("--p-lack")) m.p_lack = o.p_lack;
  if (sub->count("--p-steg")) m.p_steg_rsteg = o.p_steg;
  return m;
}

std::vector<carrier::OvertPacket> zero_packets(std::size_t n, std::size_t payload_len) {
  std::vector<carrier::OvertPacket> flow(n);
  for (std::size_t i = 0; i < n; ++i) {
    flow[i].id = static_cast<std::uint16_t>(i);
    flow[i].payload.assign(payload_len, 0);
  }
  return flow;
}

std::vector<std::vector<carrier::Fragment>> base_groups(
    const std::vector<carrier::OvertPacket>& flow, const methods::MethodConfig& m) {
  std::vector<std::vector<carrier::Fragment>> groups;
  groups.reserve(flow.size());
  for (const auto& pkt : flow) {
    groups.push_back(carrier::fragment_packet(pkt, m.base_fragments, m.frag_size));
  }
  return groups;
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

std::vector<std::string> template_header_names() {
  std::vector<std::string> names;
  for (const auto& [name, value] : harness::scenario_b_template(true).headers) {
    names.push_back(name);
  }
  return names;
}

steganalysis::Histogram fragment_histogram(const std::vector<carrier::Fragment>& frags) {
  steganalysis::Histogram h;
  for (const auto& group : carrier::group_by_identification(frags)) {
    ++h[static_cast<std::uint32_t>(group.size())];
  }
  return h;
}

steganalysis::Histogram size_histogram(const std::vector<carrier::HttpRequest>& requests) {
  steganalysis::Histogram h;
  for (const auto& r : requests) ++h[static_cast<std::uint32_t>(carrier::http_size(r))];
  return h;
}

int run_scenario_cmd(const std::string& scenario, const CLI::App* sub, const Opts& o) {
  harness::ScenarioConfig cfg = build_shell(sub, o);
  cfg.scenario = scenario;
  if (sub->count("--cases")) cfg.cases = o.cases;
  if (sub->count("--n-packets")) cfg.n_packets = o.n_packets;
  if (sub->count("--repeats")) cfg.repeats = o.repeats;
  if (!o.bits_path.empty()) cfg.bitstream = io::load_bits_file(o.bits_path);
  harness::ScenarioResult result =
      scenario == "A" ? harness::run_scenario_a(cfg) : harness::run_scenario_b(cfg);
  write_output(o, o.format == "csv" ? io::to_csv(result) : io::to_json(result) + "\n");
  return 0;
}

int run_lack_sweep_cmd(const CLI::App* sub, const Opts& o) {
  harness::ScenarioConfig shell = build_shell(sub, o);
  harness::LackSweepConfig cfg;
  cfg.seed = shell.seed;
  cfg.p_n = sub->count("--p-n") ? o.p_n : shell.channel.p_n;
  if (sub->count("--codecs")) cfg.codecs = o.codecs;
  if (sub->count("--grid")) cfg.grid = o.grid;
  if (sub->count("--n-packets")) cfg.n_packets = o.n_packets;
  auto rows = harness::run_lack_sweep(cfg);
  write_output(o, o.format == "csv" ? io::to_csv(rows) : io::to_json(rows) + "\n");
  return 0;
}

int run_rsteg_sweep_cmd(const CLI::App* sub, const Opts& o) {
  harness::ScenarioConfig shell = build_shell(sub, o);
  harness::RstegSweepConfig cfg;
  cfg.seed = shell.seed;
  if (sub->count("--p-n")) cfg.p_n = o.p_n;
  if (sub->count("--grid")) cfg.grid = o.grid;
  if (sub->count("--n-segments")) cfg.n_segments = o.n_segments;
  if (sub->count("--segment-len")) cfg.segment_len = o.segment_len;
  auto rows = harness::run_rsteg_sweep(cfg);
  write_output(o, o.format == "csv" ? io::to_csv(rows) : io::to_json(rows) + "\n");
  return 0;
}

int run_threshold_cmd(const CLI::App* sub, const Opts& o) {
  harness::ScenarioConfig shell = build_shell(sub, o);
  harness::ThresholdRunConfig cfg;
  cfg.seed = shell.seed;
  cfg.method = o.method.empty() ? "lack" : o.method;
  if (sub->count("--grid")) cfg.grid = o.grid;
  if (sub->count("--runs-per-point")) cfg.runs_per_point = o.runs_per_point;
  if (sub->count("--n-units")) cfg.n_units = o.n_units;
  if (sub->count("--p-t")) cfg.p_t = o.p_t;
  if (sub->count("--baseline-retx")) cfg.baseline_retx = o.baseline_retx;
  if (sub->count("--alpha")) cfg.alpha = o.alpha;
  if (sub->count("--codec")) cfg.codec = o.codec;
  if (sub->count("--p-n")) {
    cfg.p_n = o.p_n;
  } else if (cfg.method == "rsteg") {
    cfg.p_n = cfg.baseline_retx;  // natural loss matches the detector's reference
  } else {
    cfg.p_n = shell.channel.p_n;
  }
  auto curve = harness::run_threshold(cfg);
  write_output(o, o.format == "csv" ? io::to_csv(curve) : io::to_json(curve) + "\n");
  return 0;
}

int run_embed_cmd(const CLI::App* sub, const Opts& o) {
  harness::ScenarioConfig shell = build_shell(sub, o);
  methods::MethodConfig m = method_config(shell, sub, o);
  const std::uint64_t seed = shell.seed;
  Bytes msg = read_file_bytes(o.message_path);
  std::ostringstream out;

  if (o.method == "f1") {
    BitVec mbits = bits_from_bytes(msg);
    std::size_t n = o.n_override ? o.n_override : mbits.size() + kFrameHeaderBits;
    BitVec wire = frame_bits(mbits, n);
    auto flow = zero_packets(n, m.base_fragments * m.frag_size);
    auto res = methods::f1_embed(flow, wire, m);
    io::dump_fragments_jsonl(out, res.fragments, o.wire_view);
  } else if (o.method == "f3" || o.method == "f1f3") {
    std::size_t cap_per = m.frag_size - m.is_len;
    std::size_t need = msg.size() + kFrameHeaderBytes;
    std::size_t n = o.n_override ? o.n_override : ceil_div(need, cap_per);
    auto flow = zero_packets(n, m.base_fragments * m.frag_size);
    Bytes wire = frame_bytes(msg, n * cap_per, seed);
    if (o.method == "f3") {
      auto res = methods::f3_embed(base_groups(flow, m), wire, m, seed);
      io::dump_fragments_jsonl(out, res.fragments, o.wire_view);
    } else {
      BitVec ones(n, 1);  // every packet carries a fake, so the byte channel is full
      auto res = methods::f1f3_embed(flow, ones, wire, m, seed);
      io::dump_fragments_jsonl(out, res.fragments, o.wire_view);
    }
  } else if (o.method == "f6" || o.method == "f7" || o.method == "f8") {
    carrier::HttpRequest base = harness::scenario_b_template(true);
    std::size_t cap_per = o.method == "f6"   ? methods::f6_capacity(base)
                          : o.method == "f7" ? methods::f7_capacity(base)
                                             : 1;
    BitVec mbits = bits_from_bytes(msg);
    std::size_t need = mbits.size() + kFrameHeaderBits;
    std::size_t n = o.n_override ? o.n_override : ceil_div(need, cap_per);
    std::vector<carrier::HttpRequest> reqs(n, base);
    BitVec wire = frame_bits(mbits, n * cap_per);
    methods::HttpFlowResult res;
    if (o.method == "f6") {
      res = methods::f6_embed_flow(reqs, wire, m);
    } else if (o.method == "f7") {
      res = methods::f7_embed_flow(reqs, wire);
    } else {
      res = methods::f8_embed_flow(reqs, wire, m);
    }
    io::dump_http_jsonl(out, res.requests);
  } else if (o.method == "lack") {
    if (m.p_lack <= 0.0) throw ConfigError("p_lack must be positive to embed");
    const carrier::CodecProfile& codec = carrier::codec_by_name(o.codec);
    std::size_t need = msg.size() + kFrameHeaderBytes;
    std::size_t n = o.n_override ? o.n_override : 2000;
    carrier::RtpVoiceFlow flow;
    std::size_t capacity = 0;
    for (;;) {
      flow = carrier::make_rtp_flow(codec, n);
      capacity = methods::lack_embed(flow, {}, m, seed).report.bits_embedded / 8;
      if (capacity >= need || o.n_override) break;
      if (n > (1u << 24)) throw CapacityError("message does not fit any reasonable flow");
      n *= 2;
    }
    Bytes wire = frame_bytes(msg, capacity, seed);
    auto res = methods::lack_embed(flow, wire, m, seed);
    io::dump_rtp_jsonl(out, res.flow, o.wire_view);
  } else if (o.method == "rsteg") {
    if (m.p_steg_rsteg <= 0.0) throw ConfigError("p_steg must be positive to embed");
    methods::RstegPolicies policies = methods::rsteg_policies(m, seed);
    std::size_t need = msg.size() + kFrameHeaderBytes;
    std::size_t n = o.n_override ? o.n_override : 2000;
    carrier::TcpFlow flow;
    std::size_t capacity = 0;
    for (;;) {
      flow = carrier::make_tcp_flow(n, o.segment_len, derive_stream(seed, kStreamSecret));
      capacity = methods::rsteg_prepare_flow(flow, {}, policies, seed).report.bits_embedded / 8;
      if (capacity >= need || o.n_override) break;
      if (n > (1u << 24)) throw CapacityError("message does not fit any reasonable flow");
      n *= 2;
    }
    Bytes wire = frame_bytes(msg, capacity, seed);
    auto res = methods::rsteg_prepare_flow(flow, wire, policies, seed);
    io::dump_tcp_jsonl(out, res.flow, o.wire_view);
  } else {
    throw ConfigError("unknown embed method: " + o.method);
  }
  write_output(o, out.str());
  return 0;
}

int run_extract_cmd(const CLI::App* sub, const Opts& o) {
  harness::ScenarioConfig shell = build_shell(sub, o);
  methods::MethodConfig m = method_config(shell, sub, o);
  std::ifstream in = open_input(o.input_path);
  Bytes msg;

  if (o.method == "f1") {
    BitVec bits = methods::f1_extract(io::load_fragments_jsonl(in));
    msg = bytes_from_bits(deframe_bits(bits));
  } else if (o.method == "f3") {
    msg = deframe_bytes(methods::f3_extract(io::load_fragments_jsonl(in), m).secret_stream);
  } else if (o.method == "f1f3") {
    msg = deframe_bytes(methods::f1f3_extract(io::load_fragments_jsonl(in), m).f3_stream);
  } else if (o.method == "f6") {
    msg = bytes_from_bits(deframe_bits(methods::f6_extract_flow(io::load_http_jsonl(in), m)));
  } else if (o.method == "f7") {
    auto reqs = io::load_http_jsonl(in);
    std::vector<std::vector<std::string>> canonical(reqs.size(), template_header_names());
    msg = bytes_from_bits(deframe_bits(methods::f7_extract_flow(reqs, canonical)));
  } else if (o.method == "f8") {
    msg = bytes_from_bits(deframe_bits(methods::f8_extract_flow(io::load_http_jsonl(in), m)));
  } else if (o.method == "lack") {
    msg = deframe_bytes(
        methods::lack_extract(io::load_rtp_jsonl(in), shell.channel.late_threshold_ms));
  } else if (o.method == "rsteg") {
    methods::RstegPolicies policies = methods::rsteg_policies(m, shell.seed);
    msg = deframe_bytes(methods::rsteg_extract(io::load_tcp_jsonl(in), policies));
  } else {
    throw ConfigError("unknown extract method: " + o.method);
  }
  write_output(o, std::string(msg.begin(), msg.end()));
  return 0;
}

int run_detect_cmd(const CLI::App* sub, const Opts& o) {
  harness::ScenarioConfig shell = build_shell(sub, o);
  (void)shell;
  double alpha = sub->count("--alpha") ? o.alpha : steganalysis::kDefaultAlpha;
  steganalysis::DetectorVerdict verdict;

  if (o.detector == "fragment-count" || o.detector == "header-size") {
    if (o.baseline_path.empty() || o.input_path.empty()) {
      throw ConfigError("histogram detectors need --baseline and --input flow dumps");
    }
    std::ifstream base_in = open_input(o.baseline_path);
    std::ifstream obs_in = open_input(o.input_path);
    if (o.detector == "fragment-count") {
      verdict = steganalysis::fragment_count_detector(
          fragment_histogram(io::load_fragments_jsonl(base_in)),
          fragment_histogram(io::load_fragments_jsonl(obs_in)), alpha);
    } else {
      verdict = steganalysis::header_size_detector(size_histogram(io::load_http_jsonl(base_in)),
                                                   size_histogram(io::load_http_jsonl(obs_in)),
                                                   alpha);
    }
  } else if (o.detector == "loss-rate") {
    verdict = steganalysis::loss_rate_detector(o.rate, o.reference, o.samples, alpha);
  } else if (o.detector == "retx-rate") {
    verdict = steganalysis::retransmission_rate_detector(o.rate, o.reference, o.samples, alpha);
  } else {
    throw ConfigError("unknown detector: " + o.detector);
  }

  if (o.format == "csv") {
    std::ostringstream csv;
    csv << "detector,statistic,threshold,detected,p_value,samples\n";
    csv << verdict.detector << ',' << verdict.statistic << ',' << verdict.threshold << ','
        << (verdict.detected ? 1 : 0) << ',' << verdict.p_value << ',' << verdict.samples << '\n';
    write_output(o, csv.str());
  } else {
    write_output(o, io::to_json(verdict) + "\n");
  }
  return 0;
}

void add_global_flags(CLI::App* sub, Opts& o) {
  sub->add_option("--seed", o.seed, "Master seed (beats config file and STEGCOST_SEED)");
  sub->add_option("--config", o.config_path, "Flat key = value config file");
  sub->add_option("--output", o.output_path, "Output path (default: stdout)");
  sub->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_flag("--wire-view", o.wire_view, "Strip ground-truth markers from flow dumps");
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"stegcost: steganographic-cost laboratory for network covert channels"};
  app.require_subcommand(1);
  Opts o;

  CLI::App* sa = app.add_subcommand("scenario-a", "Fragmentation experiment (cases C1-C4)");
  CLI::App* sb = app.add_subcommand("scenario-b", "HTTP header experiment (cases C5-C9)");
  for (CLI::App* sub : {sa, sb}) {
    add_global_flags(sub, o);
    sub->add_option("--cases", o.cases, "Subset of cases")->delimiter(',');
    sub->add_option("--n-packets", o.n_packets, "Units per case (0: scenario default)");
    sub->add_option("--repeats", o.repeats, "Timing repeats per case");
    sub->add_option("--bits", o.bits_path, "Explicit bitstream file ('0'/'1' characters)");
  }

  CLI::App* ls = app.add_subcommand("lack-sweep", "LACK cost curves over a p_lack grid");
  add_global_flags(ls, o);
  ls->add_option("--codecs", o.codecs, "Codec names")->delimiter(',');
  ls->add_option("--grid", o.grid, "p_lack grid")->delimiter(',');
  ls->add_option("--p-n", o.p_n, "Network loss probability");
  ls->add_option("--n-packets", o.n_packets, "RTP packets per point");

  CLI::App* rs = app.add_subcommand("rsteg-sweep", "RSTEG retransmission curves over a p_steg grid");
  add_global_flags(rs, o);
  rs->add_option("--grid", o.grid, "p_steg grid")->delimiter(',');
  rs->add_option("--p-n", o.p_n, "Network loss probability");
  rs->add_option("--n-segments", o.n_segments, "TCP segments per point");
  rs->add_option("--segment-len", o.segment_len, "Segment payload bytes");

  CLI::App* th = app.add_subcommand("threshold", "Monte-Carlo detection-threshold estimation");
  add_global_flags(th, o);
  th->add_option("--method", o.method, "lack or rsteg")
      ->check(CLI::IsMember({"lack", "rsteg"}));
  th->add_option("--grid", o.grid, "Intensity grid")->delimiter(',');
  th->add_option("--runs-per-point", o.runs_per_point, "Monte-Carlo trials per grid point");
  th->add_option("--n-units", o.n_units, "Carrier units per trial");
  th->add_option("--p-t", o.p_t, "Loss-rate reference (lack)");
  th->add_option("--baseline-retx", o.baseline_retx, "Retransmission reference (rsteg)");
  th->add_option("--p-n", o.p_n, "Network loss probability");
  th->add_option("--alpha", o.alpha, "Detector significance level");
  th->add_option("--codec", o.codec, "Cost-axis codec (lack)");

  CLI::App* em = app.add_subcommand("embed", "Embed a covert payload file into a flow dump");
  add_global_flags(em, o);
  em->add_option("--method", o.method, "f1, f3, f1f3, f6, f7, f8, lack or rsteg")->required();
  em->add_option("--message", o.message_path, "Covert payload file")->required();
  em->add_option("--n", o.n_override, "Carrier units (0: smallest that fits)");
  em->add_option("--codec", o.codec, "RTP codec (lack)");
  em->add_option("--segment-len", o.segment_len, "Segment payload bytes (rsteg)");
  em->add_option("--key", o.key, "Steg key");
  em->add_option("--p-lack", o.p_lack, "LACK selection probability");
  em->add_option("--p-steg", o.p_steg, "RSTEG flag probability");

  CLI::App* ex = app.add_subcommand("extract", "Recover a covert payload from a flow dump");
  add_global_flags(ex, o);
  ex->add_option("--method", o.method, "f1, f3, f1f3, f6, f7, f8, lack or rsteg")->required();
  ex->add_option("--input", o.input_path, "Flow dump produced by embed")->required();
  ex->add_option("--key", o.key, "Steg key");
  ex->add_option("--p-lack", o.p_lack, "LACK selection probability");
  ex->add_option("--p-steg", o.p_steg, "RSTEG flag probability");

  CLI::App* de = app.add_subcommand("detect", "Run a detector over flow dumps or rates");
  add_global_flags(de, o);
  de->add_option("--detector", o.detector,
                 "fragment-count, header-size, loss-rate or retx-rate")
      ->required();
  de->add_option("--baseline", o.baseline_path, "Baseline flow dump (histogram detectors)");
  de->add_option("--input", o.input_path, "Observed flow dump (histogram detectors)");
  de->add_option("--rate", o.rate, "Observed rate (rate detectors)");
  de->add_option("--samples", o.samples, "Sample count behind the rate");
  de->add_option("--reference", o.reference, "Reference rate the observation is tested against");
  de->add_option("--alpha", o.alpha, "Significance level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n' << app.help() << '\n';
    return 1;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    if (sub == sa) return run_scenario_cmd("A", sa, o);
    if (sub == sb) return run_scenario_cmd("B", sb, o);
    if (sub == ls) return run_lack_sweep_cmd(ls, o);
    if (sub == rs) return run_rsteg_sweep_cmd(rs, o);
    if (sub == th) return run_threshold_cmd(th, o);
    if (sub == em) return run_embed_cmd(em, o);
    if (sub == ex) return run_extract_cmd(ex, o);
    return run_detect_cmd(de, o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace stegcost::cli

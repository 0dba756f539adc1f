#include "stegcost/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace stegcost::io {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

ordered_json parse_line(const std::string& line, std::size_t line_no) {
  try {
    return ordered_json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw EncodingError("bad record on line " + std::to_string(line_no) + ": " + e.what());
  }
}

template <typename Fn>
void for_each_record(std::istream& in, const char* expected_type, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ordered_json rec = parse_line(line, line_no);
    try {
      if (rec.at("type").get<std::string>() != expected_type) {
        throw EncodingError("unexpected record type on line " + std::to_string(line_no));
      }
      fn(rec);
    } catch (const nlohmann::json::exception& e) {
      throw EncodingError("bad record on line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

ordered_json cost_vector_json(const cost::CostVector& costs) {
  ordered_json arr = ordered_json::array();
  for (const auto& e : costs.entries) {
    ordered_json j;
    j["dimension"] = e.dimension;
    j["value"] = e.value;
    j["unit"] = e.unit;
    j["aspect"] = cost::to_string(e.aspect);
    j["subcarrier"] = e.subcarrier;
    arr.push_back(j);
  }
  return arr;
}

ordered_json sim_report_json(const netsim::SimReport& r) {
  ordered_json j;
  j["connection_time_s"] = r.connection_time_s;
  j["units_sent"] = r.units_sent;
  j["units_lost"] = r.units_lost;
  j["units_retransmitted"] = r.units_retransmitted;
  j["units_discarded_late"] = r.units_discarded_late;
  j["measured_loss_rate"] = r.measured_loss_rate;
  j["measured_retx_rate"] = r.measured_retx_rate;
  j["seed"] = r.seed;
  if (!r.events.empty()) {
    ordered_json events = ordered_json::array();
    for (const auto& e : r.events) {
      events.push_back({{"t_ms", e.t_ms}, {"kind", e.kind}, {"unit", e.unit}, {"attempt", e.attempt}});
    }
    j["events"] = events;
  }
  return j;
}

ordered_json curve_json(const steganalysis::ThresholdCurve& curve) {
  ordered_json j;
  ordered_json pts = ordered_json::array();
  for (const auto& p : curve.points) {
    pts.push_back({{"intensity", p.intensity}, {"cost", p.cost}, {"p_detect", p.p_detect}});
  }
  j["points"] = pts;
  j["sc_d"] = curve.sc_d ? ordered_json(*curve.sc_d) : ordered_json(nullptr);
  j["sc_d100"] = curve.sc_d100 ? ordered_json(*curve.sc_d100) : ordered_json(nullptr);
  j["sc_d_open"] = curve.sc_d_open;
  j["sc_d100_open"] = curve.sc_d100_open;
  return j;
}

}  // namespace

void dump_fragments_jsonl(std::ostream& out, const std::vector<carrier::Fragment>& frags,
                          bool wire_view) {
  for (const auto& f : frags) {
    ordered_json rec;
    rec["type"] = "fragment";
    rec["identification"] = f.identification;
    rec["fragment_offset"] = f.fragment_offset;
    rec["more_fragments"] = f.more_fragments;
    rec["true_len"] = f.true_len;
    rec["payload"] = bytes_to_hex(f.payload);
    if (!wire_view) rec["is_fake"] = f.is_fake;
    out << rec.dump() << '\n';
  }
}

std::vector<carrier::Fragment> load_fragments_jsonl(std::istream& in) {
  std::vector<carrier::Fragment> frags;
  for_each_record(in, "fragment", [&](const ordered_json& rec) {
    carrier::Fragment f;
    f.identification = rec.at("identification").get<std::uint16_t>();
    f.fragment_offset = rec.at("fragment_offset").get<std::uint32_t>();
    f.more_fragments = rec.at("more_fragments").get<bool>();
    f.true_len = rec.at("true_len").get<std::uint32_t>();
    f.payload = hex_to_bytes(rec.at("payload").get<std::string>());
    f.is_fake = rec.value("is_fake", false);
    frags.push_back(std::move(f));
  });
  return frags;
}

void dump_rtp_jsonl(std::ostream& out, const carrier::RtpVoiceFlow& flow, bool wire_view) {
  {
    ordered_json rec;
    rec["type"] = "rtp-flow";
    rec["codec"] = flow.codec.name;
    out << rec.dump() << '\n';
  }
  for (const auto& p : flow.packets) {
    ordered_json rec;
    rec["type"] = "rtp";
    rec["seq"] = p.seq;
    rec["send_time_ms"] = p.send_time_ms;
    rec["payload_len"] = p.payload_len;
    rec["extra_delay_ms"] = p.extra_delay_ms;
    if (p.payload) rec["payload"] = bytes_to_hex(*p.payload);
    if (!wire_view) rec["steg"] = p.steg;
    out << rec.dump() << '\n';
  }
}

carrier::RtpVoiceFlow load_rtp_jsonl(std::istream& in) {
  carrier::RtpVoiceFlow flow;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ordered_json rec = parse_line(line, line_no);
    try {
      std::string type = rec.at("type").get<std::string>();
      if (type == "rtp-flow") {
        flow.codec = carrier::codec_by_name(rec.at("codec").get<std::string>());
        have_header = true;
        continue;
      }
      if (type != "rtp") {
        throw EncodingError("unexpected record type on line " + std::to_string(line_no));
      }
      carrier::RtpPacket p;
      p.seq = rec.at("seq").get<std::uint64_t>();
      p.send_time_ms = rec.at("send_time_ms").get<double>();
      p.payload_len = rec.at("payload_len").get<std::uint32_t>();
      p.extra_delay_ms = rec.at("extra_delay_ms").get<double>();
      if (rec.contains("payload")) p.payload = hex_to_bytes(rec.at("payload").get<std::string>());
      p.steg = rec.value("steg", false);
      flow.packets.push_back(std::move(p));
    } catch (const nlohmann::json::exception& e) {
      throw EncodingError("bad record on line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw EncodingError("rtp flow dump is missing its codec record");
  return flow;
}

void dump_tcp_jsonl(std::ostream& out, const carrier::TcpFlow& flow, bool wire_view) {
  for (const auto& s : flow.segments) {
    ordered_json rec;
    rec["type"] = "tcp";
    rec["seq"] = s.seq;
    rec["payload"] = bytes_to_hex(s.payload);
    if (!wire_view && s.steg_payload) rec["steg_payload"] = bytes_to_hex(*s.steg_payload);
    out << rec.dump() << '\n';
  }
}

carrier::TcpFlow load_tcp_jsonl(std::istream& in) {
  carrier::TcpFlow flow;
  for_each_record(in, "tcp", [&](const ordered_json& rec) {
    carrier::TcpSegment s;
    s.seq = rec.at("seq").get<std::uint64_t>();
    s.payload = hex_to_bytes(rec.at("payload").get<std::string>());
    if (rec.contains("steg_payload")) {
      s.steg_payload = hex_to_bytes(rec.at("steg_payload").get<std::string>());
    }
    flow.segments.push_back(std::move(s));
  });
  return flow;
}

void dump_http_jsonl(std::ostream& out, const std::vector<carrier::HttpRequest>& requests) {
  for (const auto& r : requests) {
    ordered_json rec;
    rec["type"] = "http_request";
    rec["request_line"] = r.request_line;
    ordered_json headers = ordered_json::array();
    for (const auto& [name, value] : r.headers) headers.push_back({name, value});
    rec["headers"] = headers;
    rec["body_len"] = r.body_len;
    out << rec.dump() << '\n';
  }
}

std::vector<carrier::HttpRequest> load_http_jsonl(std::istream& in) {
  std::vector<carrier::HttpRequest> requests;
  for_each_record(in, "http_request", [&](const ordered_json& rec) {
    carrier::HttpRequest r;
    r.request_line = rec.at("request_line").get<std::string>();
    for (const auto& pair : rec.at("headers")) {
      r.headers.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
    }
    r.body_len = rec.at("body_len").get<std::size_t>();
    requests.push_back(std::move(r));
  });
  return requests;
}

std::string to_json(const netsim::SimReport& report, int indent) {
  return sim_report_json(report).dump(indent);
}

std::string to_json(const cost::CostVector& costs, int indent) {
  ordered_json j;
  j["costs"] = cost_vector_json(costs);
  return j.dump(indent);
}

std::string to_json(const methods::EmbedReport& report, int indent) {
  ordered_json j;
  j["bits_embedded"] = report.bits_embedded;
  j["units_modified"] = report.units_modified;
  j["units_total"] = report.unit_markers.size();
  return j.dump(indent);
}

std::string to_json(const steganalysis::DetectorVerdict& verdict, int indent) {
  ordered_json j;
  j["detector"] = verdict.detector;
  j["statistic"] = std::isfinite(verdict.statistic) ? ordered_json(verdict.statistic)
                                                    : ordered_json("inf");
  j["threshold"] = verdict.threshold;
  j["detected"] = verdict.detected;
  j["p_value"] = verdict.p_value;
  j["samples"] = verdict.samples;
  return j.dump(indent);
}

std::string to_json(const steganalysis::ThresholdCurve& curve, int indent) {
  return curve_json(curve).dump(indent);
}

std::string to_json(const harness::ScenarioResult& result, int indent) {
  ordered_json j;
  j["scenario"] = result.scenario;
  j["seed"] = result.seed;
  j["n_packets"] = result.n_packets;
  j["repeats"] = result.repeats;
  ordered_json rows = ordered_json::array();
  for (const auto& row : result.rows) {
    ordered_json r;
    r["case"] = row.case_name;
    r["mean_connection_time_s"] = row.mean_connection_time_s;
    r["std_connection_time_s"] = row.std_connection_time_s;
    r["total_units"] = row.total_units;
    ordered_json hist;
    for (const auto& [bin, count] : row.histogram) hist[std::to_string(bin)] = count;
    r["histogram"] = hist;
    r["per_repeat_times_s"] = row.per_repeat_times_s;
    r["note"] = row.note;
    r["costs"] = cost_vector_json(row.costs);
    rows.push_back(r);
  }
  j["rows"] = rows;
  if (result.composition) {
    const auto& c = *result.composition;
    ordered_json comp;
    comp["classification"] = cost::to_string(c.classification);
    ordered_json singles;
    for (const auto& [name, value] : c.singles) singles[name] = value;
    comp["singles"] = singles;
    comp["joint"] = c.joint;
    comp["joint_case"] = c.joint_case;
    comp["baseline_case"] = c.baseline_case;
    comp["tolerance_rel"] = c.tolerance_rel;
    j["composition"] = comp;
  } else {
    j["composition"] = nullptr;
  }
  return j.dump(indent);
}

std::string to_json(const std::vector<harness::LackSweepRow>& rows, int indent) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["codec"] = r.codec;
    j["p_lack"] = r.p_lack;
    j["p_n"] = r.p_n;
    j["p_total"] = r.p_total;
    j["delta_mos"] = r.delta_mos;
    j["empirical_loss"] = r.empirical_loss;
    j["bandwidth_bytes_s"] = r.bandwidth_bytes_s;
    arr.push_back(j);
  }
  return arr.dump(indent);
}

std::string to_json(const std::vector<harness::RstegSweepRow>& rows, int indent) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["p_steg"] = r.p_steg;
    j["p_n"] = r.p_n;
    j["measured_retx_rate"] = r.measured_retx_rate;
    j["baseline_retx_rate"] = r.baseline_retx_rate;
    j["r_d"] = r.r_d;
    j["steg_bytes"] = r.steg_bytes;
    arr.push_back(j);
  }
  return arr.dump(indent);
}

std::string histogram_to_string(const std::map<std::uint32_t, std::uint64_t>& hist) {
  std::string out;
  for (const auto& [bin, count] : hist) {
    if (!out.empty()) out += ';';
    out += std::to_string(bin) + ':' + std::to_string(count);
  }
  return out;
}

std::string to_csv(const harness::ScenarioResult& result) {
  std::ostringstream out;
  out << "case,mean_connection_time_s,std_connection_time_s,total_units,histogram,note\n";
  for (const auto& row : result.rows) {
    out << csv_field(row.case_name) << ',' << fixed6(row.mean_connection_time_s) << ','
        << fixed6(row.std_connection_time_s) << ',' << row.total_units << ','
        << histogram_to_string(row.histogram) << ',' << csv_field(row.note) << '\n';
  }
  if (result.composition) {
    out << "# composition: " << cost::to_string(result.composition->classification) << '\n';
  }
  return out.str();
}

std::string to_csv(const std::vector<harness::LackSweepRow>& rows) {
  std::ostringstream out;
  out << "codec,p_lack,p_n,p_total,delta_mos,empirical_loss,bandwidth_bytes_s\n";
  for (const auto& r : rows) {
    out << csv_field(r.codec) << ',' << fixed6(r.p_lack) << ',' << fixed6(r.p_n) << ','
        << fixed6(r.p_total) << ',' << fixed6(r.delta_mos) << ',' << fixed6(r.empirical_loss)
        << ',' << fixed6(r.bandwidth_bytes_s) << '\n';
  }
  return out.str();
}

std::string to_csv(const std::vector<harness::RstegSweepRow>& rows) {
  std::ostringstream out;
  out << "p_steg,p_n,measured_retx_rate,baseline_retx_rate,r_d,steg_bytes\n";
  for (const auto& r : rows) {
    out << fixed6(r.p_steg) << ',' << fixed6(r.p_n) << ',' << fixed6(r.measured_retx_rate) << ','
        << fixed6(r.baseline_retx_rate) << ',' << fixed6(r.r_d) << ',' << r.steg_bytes << '\n';
  }
  return out.str();
}

std::string to_csv(const steganalysis::ThresholdCurve& curve) {
  std::ostringstream out;
  out << "intensity,cost,p_detect\n";
  for (const auto& p : curve.points) {
    out << fixed6(p.intensity) << ',' << fixed6(p.cost) << ',' << fixed6(p.p_detect) << '\n';
  }
  out << "# sc_d: " << (curve.sc_d ? fixed6(*curve.sc_d) : std::string("open")) << '\n';
  out << "# sc_d100: " << (curve.sc_d100 ? fixed6(*curve.sc_d100) : std::string("open")) << '\n';
  return out.str();
}

BitVec load_bits_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open bits file: " + path);
  BitVec bits;
  char c;
  while (in.get(c)) {
    if (c == '0') {
      bits.push_back(0);
    } else if (c == '1') {
      bits.push_back(1);
    } else if (c == ' ' || c == '\n' || c == '\r' || c == '\t') {
      continue;
    } else {
      throw EncodingError(std::string("unexpected character in bits file: ") + c);
    }
  }
  return bits;
}

void save_bits_file(const std::string& path, const BitVec& bits) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open bits file for writing: " + path);
  for (std::uint8_t b : bits) {
    if (b > 1) throw EncodingError("bit value out of range");
    out << (b ? '1' : '0');
  }
  out << '\n';
}

}  // namespace stegcost::io

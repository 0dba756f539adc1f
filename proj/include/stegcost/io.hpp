#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stegcost/carrier.hpp"
#include "stegcost/common.hpp"
#include "stegcost/cost.hpp"
#include "stegcost/harness.hpp"
#include "stegcost/methods.hpp"
#include "stegcost/netsim.hpp"
#include "stegcost/steganalysis.hpp"

namespace stegcost::io {

// Flow dumps are line-delimited JSON, one record per carrier unit, with a
// "type" discriminator. wire_view strips ground-truth booleans (is_fake,
// steg) but keeps on-wire content; every field order is fixed so identical
// inputs produce byte-identical files.

void dump_fragments_jsonl(std::ostream& out, const std::vector<carrier::Fragment>& frags,
                          bool wire_view);
std::vector<carrier::Fragment> load_fragments_jsonl(std::istream& in);

void dump_rtp_jsonl(std::ostream& out, const carrier::RtpVoiceFlow& flow, bool wire_view);
carrier::RtpVoiceFlow load_rtp_jsonl(std::istream& in);

void dump_tcp_jsonl(std::ostream& out, const carrier::TcpFlow& flow, bool wire_view);
carrier::TcpFlow load_tcp_jsonl(std::istream& in);

void dump_http_jsonl(std::ostream& out, const std::vector<carrier::HttpRequest>& requests);
std::vector<carrier::HttpRequest> load_http_jsonl(std::istream& in);

// JSON report bodies (stable key order).
std::string to_json(const netsim::SimReport& report, int indent = 2);
std::string to_json(const cost::CostVector& costs, int indent = 2);
std::string to_json(const methods::EmbedReport& report, int indent = 2);
std::string to_json(const steganalysis::DetectorVerdict& verdict, int indent = 2);
std::string to_json(const steganalysis::ThresholdCurve& curve, int indent = 2);
std::string to_json(const harness::ScenarioResult& result, int indent = 2);
std::string to_json(const std::vector<harness::LackSweepRow>& rows, int indent = 2);
std::string to_json(const std::vector<harness::RstegSweepRow>& rows, int indent = 2);

// CSV schemas (documented in the README; column order is frozen).
std::string to_csv(const harness::ScenarioResult& result);
std::string to_csv(const std::vector<harness::LackSweepRow>& rows);
std::string to_csv(const std::vector<harness::RstegSweepRow>& rows);
std::string to_csv(const steganalysis::ThresholdCurve& curve);

// Bitstream files: '0'/'1' characters, whitespace ignored.
BitVec load_bits_file(const std::string& path);
void save_bits_file(const std::string& path, const BitVec& bits);

std::string histogram_to_string(const std::map<std::uint32_t, std::uint64_t>& hist);

}  // namespace stegcost::io

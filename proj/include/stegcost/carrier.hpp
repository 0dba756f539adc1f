#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stegcost/common.hpp"

namespace stegcost::carrier {

// ---------------------------------------------------------------------------
// IPv4-style fragmentation model
// ---------------------------------------------------------------------------

struct OvertPacket {
  std::uint16_t id = 0;  // unique within a flow
  Bytes payload;

  std::size_t payload_len() const { return payload.size(); }
};

struct Fragment {
  std::uint16_t identification = 0;
  std::uint32_t fragment_offset = 0;  // 8-octet units
  bool more_fragments = false;
  Bytes payload;                // padded to the flow's fragment size on the wire
  std::uint32_t true_len = 0;   // unpadded byte count within payload
  bool is_fake = false;         // ground truth only; never serialized on the wire
};

// Splits pkt into n_real uniform fragments of frag_size wire bytes.
// Offset of fragment k is floor((k * frag_size) / 8); a short or empty tail
// is zero-padded to frag_size with the true length recorded.
// Throws ConfigError (n_real < 1 or frag_size < 8) or CapacityError
// (payload does not fit in n_real * frag_size).
std::vector<Fragment> fragment_packet(const OvertPacket& pkt, std::size_t n_real,
                                      std::size_t frag_size);

enum class ReassemblyStatus { Ok, Overlap, Gap };

std::string to_string(ReassemblyStatus status);

struct ReassemblyResult {
  ReassemblyStatus status = ReassemblyStatus::Ok;
  std::optional<OvertPacket> packet;  // set only when status == Ok
  std::string detail;
};

// Reassembles one packet's fragments, skipping indices named in known_fakes
// (a steg-aware receiver's exclusion set). Offset conflicts among the kept
// fragments are reported as Overlap/Gap rather than thrown; a mixed
// identification set throws ConfigError.
ReassemblyResult reassemble(const std::vector<Fragment>& frags,
                            const std::set<std::size_t>& known_fakes = {});

// Fragments of a whole flow grouped by identification in first-seen order.
std::vector<std::vector<Fragment>> group_by_identification(const std::vector<Fragment>& frags);

// ---------------------------------------------------------------------------
// HTTP requests
// ---------------------------------------------------------------------------

struct HttpRequest {
  std::string request_line;
  std::vector<std::pair<std::string, std::string>> headers;  // ordered, case-preserving
  std::size_t body_len = 0;  // counted by http_size, not serialized

  // Case-insensitive header-name search; npos-like -1 when absent.
  std::ptrdiff_t find_header(const std::string& name) const;
};

// request_line CRLF, then "Name: value" CRLF per header, then a final CRLF.
// Throws EncodingError on non-ASCII or embedded CR/LF content.
Bytes serialize_http(const HttpRequest& req);
HttpRequest parse_http(std::span<const std::uint8_t> wire);
std::size_t http_size(const HttpRequest& req);  // serialized head bytes + body_len

// ---------------------------------------------------------------------------
// RTP voice flows
// ---------------------------------------------------------------------------

struct CodecProfile {
  std::string name;
  double bit_rate_kbps = 0;
  double packet_interval_ms = 0;
  double payload_bytes = 0;  // may be fractional (bit_rate * interval / 8)
  // MOS model defaults, calibrated so the published undetectability anchors
  // hold; overridable via config.
  double rq = 0;            // intrinsic quality, 1..5
  double mos_drop_max = 0;  // rq - 1 by default
  double mos_tau = 0;       // loss scale of the exponential drop
};

const std::vector<CodecProfile>& default_codecs();
const CodecProfile& codec_by_name(const std::string& name);  // ConfigError if unknown

struct RtpPacket {
  std::uint32_t seq = 0;
  double send_time_ms = 0;
  std::uint32_t payload_len = 0;
  double extra_delay_ms = 0;   // intentional delay added by a sender
  bool steg = false;           // ground truth only
  std::optional<Bytes> payload;  // substituted content when carried; audio unmodeled
};

struct RtpVoiceFlow {
  CodecProfile codec;
  std::vector<RtpPacket> packets;
};

RtpVoiceFlow make_rtp_flow(const CodecProfile& codec, std::size_t n_packets);

// ---------------------------------------------------------------------------
// TCP flows
// ---------------------------------------------------------------------------

struct TcpSegment {
  std::uint64_t seq = 0;  // byte offset of this segment's payload
  Bytes payload;
  std::optional<Bytes> steg_payload;  // same length as payload when present
};

struct TcpFlow {
  std::vector<TcpSegment> segments;  // seq contiguous in payload-length units
  double rto_ms = 200.0;
};

TcpFlow make_tcp_flow(std::size_t n_segments, std::size_t segment_len, std::uint64_t seed);

}  // namespace stegcost::carrier

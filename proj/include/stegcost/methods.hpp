#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stegcost/bits.hpp"
#include "stegcost/carrier.hpp"
#include "stegcost/common.hpp"

namespace stegcost::methods {

// Shared configuration for every embedding method. Embedding is a pure
// function of (input, config, seed).
struct MethodConfig {
  Bytes steg_key = {'d', 'e', 'f', 'a', 'u', 'l', 't', '-', 's', 't', 'e', 'g', '-', 'k', 'e', 'y'};
  double p_lack = 0.005;        // LACK packet-selection probability
  double p_steg_rsteg = 0.05;   // RSTEG intentional-retransmission probability
  std::size_t base_fragments = 3;
  std::size_t frag_size = 500;
  std::size_t is_len = 16;      // identifying-sequence bytes at a fake's head
  std::pair<std::string, std::string> optional_header = {"Accept-Language", "en-US"};
  double lack_extra_delay_ms = 150.0;  // must exceed the receiver's late threshold
  std::string f6_scan_order = "headers-top-down-chars-left-right";  // only supported order

  void validate() const;  // throws ConfigError
};

struct EmbedReport {
  std::size_t bits_embedded = 0;   // length of the extractable wire bitstream
  std::size_t units_modified = 0;
  std::vector<std::uint8_t> unit_markers;  // ground truth: 1 where a unit carries steg
};

// ---------------------------------------------------------------------------
// F1: fragment-count parity. Bit 1 -> odd count (base_fragments), bit 0 ->
// even count (base_fragments + 1). Missing bits pad as 0.
// ---------------------------------------------------------------------------

struct FragmentFlowResult {
  std::vector<carrier::Fragment> fragments;  // wire order
  EmbedReport report;
};

FragmentFlowResult f1_embed(const std::vector<carrier::OvertPacket>& flow, const BitVec& bits,
                            const MethodConfig& cfg);
BitVec f1_extract(const std::vector<carrier::Fragment>& frags);

// ---------------------------------------------------------------------------
// F3: fake fragments. A fake duplicates a real fragment's offset, leads with
// IS = H(key || offset_u16be || identification_u16be) truncated to is_len,
// and fills the rest of its payload with the secret stream.
// ---------------------------------------------------------------------------

Bytes compute_is(const Bytes& key, std::uint32_t fragment_offset, std::uint16_t identification,
                 std::size_t is_len);

// One fake per supplied packet group. secret_stream shorter than capacity is
// completed with seeded random padding; longer throws CapacityError.
FragmentFlowResult f3_embed(const std::vector<std::vector<carrier::Fragment>>& packets,
                            const Bytes& secret_stream, const MethodConfig& cfg,
                            std::uint64_t seed);

struct F3Extract {
  Bytes secret_stream;                     // concatenated post-IS bytes, wire order
  std::vector<std::size_t> fake_indices;   // reassembly exclusion set
};

F3Extract f3_extract(const std::vector<carrier::Fragment>& frags, const MethodConfig& cfg);

// Per-fake secret capacity in bytes.
std::size_t f3_capacity(std::size_t n_fakes, const MethodConfig& cfg);

// ---------------------------------------------------------------------------
// F1 + F3 on one subcarrier: the parity of real fragments carries the F1 bit
// while fakes pad every packet to base_fragments + 1 on the wire.
// Bit 1 -> base real + 1 fake (with secret); bit 0 -> base + 1 real, no fake.
// ---------------------------------------------------------------------------

FragmentFlowResult f1f3_embed(const std::vector<carrier::OvertPacket>& flow, const BitVec& f1_bits,
                              const Bytes& f3_secret, const MethodConfig& cfg, std::uint64_t seed);

struct F1F3Extract {
  BitVec f1_bits;
  Bytes f3_stream;
};

F1F3Extract f1f3_extract(const std::vector<carrier::Fragment>& frags, const MethodConfig& cfg);

// ---------------------------------------------------------------------------
// F6: header-name case. One bit per alphabetic character, headers top to
// bottom, characters left to right; 1 -> upper, 0 -> lower. Missing bits pad
// as 0 (lowercase); more bits than capacity throws CapacityError.
// ---------------------------------------------------------------------------

std::size_t f6_capacity(const carrier::HttpRequest& req);
carrier::HttpRequest f6_embed(const carrier::HttpRequest& req, const BitVec& bits,
                              const MethodConfig& cfg);
BitVec f6_extract(const carrier::HttpRequest& req, const MethodConfig& cfg);

// ---------------------------------------------------------------------------
// F7: header order. The first header stays fixed; the remaining n headers
// encode an index k < n! as the k-th lexicographic permutation, carrying
// floor(log2(n!)) bits.
// ---------------------------------------------------------------------------

std::size_t f7_capacity(const carrier::HttpRequest& req);
carrier::HttpRequest f7_embed(const carrier::HttpRequest& req, const BitVec& bits);
// canonical_names: the unpermuted header order (case-insensitive match).
BitVec f7_extract(const carrier::HttpRequest& req, const std::vector<std::string>& canonical_names);

// k-th lexicographic permutation of items; throws CapacityError when k >= n!.
std::vector<std::string> permutation_from_index(const std::vector<std::string>& items,
                                                std::uint64_t k);
std::uint64_t permutation_to_index(const std::vector<std::string>& canonical,
                                   const std::vector<std::string>& observed);

// ---------------------------------------------------------------------------
// F8: optional-header presence. Bit 1 -> header present, bit 0 -> absent.
// ---------------------------------------------------------------------------

carrier::HttpRequest f8_embed(const carrier::HttpRequest& req, std::uint8_t bit,
                              const MethodConfig& cfg);
std::uint8_t f8_extract(const carrier::HttpRequest& req, const MethodConfig& cfg);

// Flow-level helpers chunking one covert stream across many requests.
struct HttpFlowResult {
  std::vector<carrier::HttpRequest> requests;
  EmbedReport report;
};

HttpFlowResult f6_embed_flow(const std::vector<carrier::HttpRequest>& requests, const BitVec& bits,
                             const MethodConfig& cfg);
BitVec f6_extract_flow(const std::vector<carrier::HttpRequest>& requests, const MethodConfig& cfg);
HttpFlowResult f7_embed_flow(const std::vector<carrier::HttpRequest>& requests, const BitVec& bits);
BitVec f7_extract_flow(const std::vector<carrier::HttpRequest>& requests,
                       const std::vector<std::vector<std::string>>& canonical_names);
HttpFlowResult f8_embed_flow(const std::vector<carrier::HttpRequest>& requests, const BitVec& bits,
                             const MethodConfig& cfg);
BitVec f8_extract_flow(const std::vector<carrier::HttpRequest>& requests, const MethodConfig& cfg);

// ---------------------------------------------------------------------------
// LACK: seeded Bernoulli(p_lack) selection; selected packets get their
// payload replaced by the secret stream and an extra delay above the
// receiver's late threshold, so only a steg-aware receiver keeps them.
// ---------------------------------------------------------------------------

struct LackResult {
  carrier::RtpVoiceFlow flow;
  EmbedReport report;
};

LackResult lack_embed(const carrier::RtpVoiceFlow& flow, const Bytes& secret_stream,
                      const MethodConfig& cfg, std::uint64_t seed);
Bytes lack_extract(const carrier::RtpVoiceFlow& flow, double late_threshold_ms);

// Mean covert bandwidth in bytes/s for a selection probability.
double lack_bandwidth_bytes_per_s(const carrier::CodecProfile& codec, double p_lack);

// ---------------------------------------------------------------------------
// RSTEG: a shared seeded schedule flags segments. The receiver withholds the
// ACK for a successfully received flagged segment; the sender substitutes the
// steg payload on retransmissions of flagged segments (alternating with the
// original payload so overt data still gets through under network loss).
// ---------------------------------------------------------------------------

class RstegSchedule {
 public:
  RstegSchedule(std::uint64_t seed, double p_steg);
  bool flagged(std::uint64_t seq) const;
  double p_steg() const { return p_; }

 private:
  std::uint64_t key_;
  double p_;
};

struct RstegPolicies {
  RstegSchedule schedule;

  // Receiver: withhold the ACK for the first successfully received copy.
  bool withhold_first_ack(std::uint64_t seq) const { return schedule.flagged(seq); }
  // Sender: payload substituted on this attempt (1-based; attempt 1 is the
  // first transmission, even attempts of flagged segments carry steg).
  bool substitute_steg(std::uint64_t seq, int attempt) const {
    return schedule.flagged(seq) && attempt >= 2 && attempt % 2 == 0;
  }
};

RstegPolicies rsteg_policies(const MethodConfig& cfg, std::uint64_t seed);

struct RstegResult {
  carrier::TcpFlow flow;
  EmbedReport report;
};

// Assigns steg payloads (chunks of secret_stream) to flagged segments.
RstegResult rsteg_prepare_flow(const carrier::TcpFlow& flow, const Bytes& secret_stream,
                               const RstegPolicies& policies, std::uint64_t seed);
// Reads flagged segments' steg payloads back out of a flow.
Bytes rsteg_extract(const carrier::TcpFlow& flow, const RstegPolicies& policies);

}  // namespace stegcost::methods

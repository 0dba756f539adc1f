#include "stegcost/methods.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>

#include "stegcost/hash.hpp"
#include "stegcost/rng.hpp"

namespace stegcost::methods {

namespace {

bool iequals(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

void check_probability(double p, const char* name) {
  if (p < 0.0 || p > 1.0) throw ConfigError(std::string(name) + " outside [0, 1]");
}

}  // namespace

void MethodConfig::validate() const {
  if (steg_key.empty()) throw ConfigError("steg key must not be empty");
  check_probability(p_lack, "p_lack");
  check_probability(p_steg_rsteg, "p_steg_rsteg");
  if (base_fragments < 1) throw ConfigError("base_fragments must be at least 1");
  if (frag_size < 8) throw ConfigError("frag_size must be at least 8");
  if (is_len < 1 || is_len > 32) throw ConfigError("is_len must be in [1, 32]");
  if (is_len >= frag_size) throw ConfigError("is_len leaves no fake payload capacity");
  if (optional_header.first.empty()) throw ConfigError("optional header needs a name");
  if (lack_extra_delay_ms <= 0.0) throw ConfigError("lack_extra_delay_ms must be positive");
  if (f6_scan_order != "headers-top-down-chars-left-right") {
    throw ConfigError("unsupported f6 scan order: " + f6_scan_order);
  }
}

// ---------------------------------------------------------------------------
// F1
// ---------------------------------------------------------------------------

FragmentFlowResult f1_embed(const std::vector<carrier::OvertPacket>& flow, const BitVec& bits,
                            const MethodConfig& cfg) {
  cfg.validate();
  FragmentFlowResult out;
  out.report.bits_embedded = flow.size();
  out.report.units_modified = flow.size();
  out.report.unit_markers.assign(flow.size(), 1);
  for (std::size_t i = 0; i < flow.size(); ++i) {
    std::uint8_t bit = i < bits.size() ? bits[i] : 0;
    if (bit > 1) throw EncodingError("bit value out of range");
    // Parity carries the bit: odd fragment count -> 1, even -> 0.
    std::size_t count = (cfg.base_fragments % 2 == bit) ? cfg.base_fragments
                                                        : cfg.base_fragments + 1;
    auto frags = carrier::fragment_packet(flow[i], count, cfg.frag_size);
    out.fragments.insert(out.fragments.end(), frags.begin(), frags.end());
  }
  return out;
}

BitVec f1_extract(const std::vector<carrier::Fragment>& frags) {
  BitVec bits;
  for (const auto& group : carrier::group_by_identification(frags)) {
    bits.push_back(group.size() % 2 == 1 ? 1 : 0);
  }
  return bits;
}

// ---------------------------------------------------------------------------
// F3
// ---------------------------------------------------------------------------

Bytes compute_is(const Bytes& key, std::uint32_t fragment_offset, std::uint16_t identification,
                 std::size_t is_len) {
  if (is_len < 1 || is_len > 32) throw ConfigError("is_len must be in [1, 32]");
  Bytes material = key;
  // IPv4 field widths: 16-bit offset (8-octet units), 16-bit identification.
  material.push_back(static_cast<std::uint8_t>((fragment_offset >> 8) & 0xFF));
  material.push_back(static_cast<std::uint8_t>(fragment_offset & 0xFF));
  material.push_back(static_cast<std::uint8_t>(identification >> 8));
  material.push_back(static_cast<std::uint8_t>(identification & 0xFF));
  auto digest = sha256(material);
  return Bytes(digest.begin(), digest.begin() + is_len);
}

std::size_t f3_capacity(std::size_t n_fakes, const MethodConfig& cfg) {
  return n_fakes * (cfg.frag_size - cfg.is_len);
}

namespace {

// Builds the fake for one packet: duplicates the offset of the second real
// fragment when there is one (else the first) and slots in next to it.
carrier::Fragment make_fake(const std::vector<carrier::Fragment>& group, const Bytes& chunk,
                            const MethodConfig& cfg) {
  const carrier::Fragment& twin = group.size() >= 2 ? group[1] : group[0];
  carrier::Fragment fake;
  fake.identification = twin.identification;
  fake.fragment_offset = twin.fragment_offset;
  fake.more_fragments = true;
  fake.is_fake = true;
  fake.true_len = static_cast<std::uint32_t>(cfg.frag_size);
  fake.payload = compute_is(cfg.steg_key, fake.fragment_offset, fake.identification, cfg.is_len);
  fake.payload.insert(fake.payload.end(), chunk.begin(), chunk.end());
  return fake;
}

Bytes padded_stream(const Bytes& stream, std::size_t capacity, std::uint64_t seed,
                    const char* what) {
  if (stream.size() > capacity) {
    throw CapacityError(std::string(what) + " stream of " + std::to_string(stream.size()) +
                        " bytes exceeds capacity of " + std::to_string(capacity));
  }
  Bytes padded = stream;
  CounterRng pad(seed, kStreamPad);
  padded.reserve(capacity);
  while (padded.size() < capacity) {
    padded.push_back(static_cast<std::uint8_t>(pad.next_u64() & 0xFF));
  }
  return padded;
}

}  // namespace

FragmentFlowResult f3_embed(const std::vector<std::vector<carrier::Fragment>>& packets,
                            const Bytes& secret_stream, const MethodConfig& cfg,
                            std::uint64_t seed) {
  cfg.validate();
  const std::size_t chunk_len = cfg.frag_size - cfg.is_len;
  Bytes stream = padded_stream(secret_stream, f3_capacity(packets.size(), cfg), seed, "secret");

  FragmentFlowResult out;
  out.report.bits_embedded = stream.size() * 8;
  out.report.units_modified = packets.size();
  out.report.unit_markers.assign(packets.size(), 1);
  std::size_t pos = 0;
  for (const auto& group : packets) {
    if (group.empty()) throw ConfigError("packet group without fragments");
    for (const auto& f : group) {
      if (f.payload.size() != cfg.frag_size) {
        throw ConfigError("fragment wire size does not match frag_size");
      }
    }
    Bytes chunk(stream.begin() + pos, stream.begin() + pos + chunk_len);
    pos += chunk_len;
    carrier::Fragment fake = make_fake(group, chunk, cfg);
    std::size_t insert_at = std::min<std::size_t>(1, group.size());
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (i == insert_at) out.fragments.push_back(fake);
      out.fragments.push_back(group[i]);
    }
    if (insert_at >= group.size()) out.fragments.push_back(fake);
  }
  return out;
}

F3Extract f3_extract(const std::vector<carrier::Fragment>& frags, const MethodConfig& cfg) {
  cfg.validate();
  F3Extract out;
  for (std::size_t i = 0; i < frags.size(); ++i) {
    const carrier::Fragment& f = frags[i];
    if (f.payload.size() < cfg.is_len) continue;
    Bytes is = compute_is(cfg.steg_key, f.fragment_offset, f.identification, cfg.is_len);
    if (std::equal(is.begin(), is.end(), f.payload.begin())) {
      out.secret_stream.insert(out.secret_stream.end(), f.payload.begin() + cfg.is_len,
                               f.payload.end());
      out.fake_indices.push_back(i);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// F1 + F3
// ---------------------------------------------------------------------------

FragmentFlowResult f1f3_embed(const std::vector<carrier::OvertPacket>& flow, const BitVec& f1_bits,
                              const Bytes& f3_secret, const MethodConfig& cfg,
                              std::uint64_t seed) {
  cfg.validate();
  if (cfg.base_fragments % 2 == 0) {
    throw ConfigError("combined embedding needs an odd base fragment count");
  }
  const std::size_t chunk_len = cfg.frag_size - cfg.is_len;

  std::size_t ones = 0;
  std::vector<std::uint8_t> bit_of(flow.size(), 0);
  for (std::size_t i = 0; i < flow.size(); ++i) {
    std::uint8_t bit = i < f1_bits.size() ? f1_bits[i] : 0;
    if (bit > 1) throw EncodingError("bit value out of range");
    bit_of[i] = bit;
    ones += bit;
  }
  Bytes stream = padded_stream(f3_secret, ones * chunk_len, seed, "secret");

  FragmentFlowResult out;
  out.report.bits_embedded = flow.size() + stream.size() * 8;
  out.report.units_modified = flow.size();
  out.report.unit_markers.assign(flow.size(), 1);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < flow.size(); ++i) {
    if (bit_of[i] == 1) {
      // Odd real count carries the 1; the fake pads the wire total.
      auto group = carrier::fragment_packet(flow[i], cfg.base_fragments, cfg.frag_size);
      Bytes chunk(stream.begin() + pos, stream.begin() + pos + chunk_len);
      pos += chunk_len;
      carrier::Fragment fake = make_fake(group, chunk, cfg);
      std::size_t insert_at = std::min<std::size_t>(1, group.size());
      for (std::size_t k = 0; k < group.size(); ++k) {
        if (k == insert_at) out.fragments.push_back(fake);
        out.fragments.push_back(group[k]);
      }
      if (insert_at >= group.size()) out.fragments.push_back(fake);
    } else {
      auto group = carrier::fragment_packet(flow[i], cfg.base_fragments + 1, cfg.frag_size);
      out.fragments.insert(out.fragments.end(), group.begin(), group.end());
    }
  }
  return out;
}

F1F3Extract f1f3_extract(const std::vector<carrier::Fragment>& frags, const MethodConfig& cfg) {
  cfg.validate();
  F1F3Extract out;
  for (const auto& group : carrier::group_by_identification(frags)) {
    std::size_t fakes = 0;
    for (const carrier::Fragment& f : group) {
      if (f.payload.size() < cfg.is_len) continue;
      Bytes is = compute_is(cfg.steg_key, f.fragment_offset, f.identification, cfg.is_len);
      if (std::equal(is.begin(), is.end(), f.payload.begin())) {
        ++fakes;
        out.f3_stream.insert(out.f3_stream.end(), f.payload.begin() + cfg.is_len, f.payload.end());
      }
    }
    std::size_t real = group.size() - fakes;
    out.f1_bits.push_back(real % 2 == 1 ? 1 : 0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// F6
// ---------------------------------------------------------------------------

std::size_t f6_capacity(const carrier::HttpRequest& req) {
  std::size_t n = 0;
  for (const auto& [name, value] : req.headers) {
    for (unsigned char c : name) {
      if (std::isalpha(c)) ++n;
    }
  }
  return n;
}

carrier::HttpRequest f6_embed(const carrier::HttpRequest& req, const BitVec& bits,
                              const MethodConfig& cfg) {
  cfg.validate();
  std::size_t capacity = f6_capacity(req);
  if (bits.size() > capacity) {
    throw CapacityError("bitstream of " + std::to_string(bits.size()) +
                        " exceeds name-case capacity of " + std::to_string(capacity));
  }
  carrier::HttpRequest out = req;
  std::size_t idx = 0;
  for (auto& [name, value] : out.headers) {
    for (char& c : name) {
      if (!std::isalpha(static_cast<unsigned char>(c))) continue;
      std::uint8_t bit = idx < bits.size() ? bits[idx] : 0;
      if (bit > 1) throw EncodingError("bit value out of range");
      c = static_cast<char>(bit ? std::toupper(static_cast<unsigned char>(c))
                                : std::tolower(static_cast<unsigned char>(c)));
      ++idx;
    }
  }
  return out;
}

BitVec f6_extract(const carrier::HttpRequest& req, const MethodConfig& cfg) {
  cfg.validate();
  BitVec bits;
  for (const auto& [name, value] : req.headers) {
    for (unsigned char c : name) {
      if (std::isalpha(c)) bits.push_back(std::isupper(c) ? 1 : 0);
    }
  }
  return bits;
}

// ---------------------------------------------------------------------------
// F7
// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kMaxReorderable = 20;  // 20! still fits 64 bits

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

std::size_t permutation_bits(std::size_t n) {
  if (n > kMaxReorderable) throw ConfigError("too many reorderable headers");
  return static_cast<std::size_t>(std::bit_width(factorial(n)) - 1);
}

}  // namespace

std::size_t f7_capacity(const carrier::HttpRequest& req) {
  if (req.headers.size() <= 1) return 0;
  return permutation_bits(req.headers.size() - 1);
}

std::vector<std::string> permutation_from_index(const std::vector<std::string>& items,
                                                std::uint64_t k) {
  std::size_t n = items.size();
  if (n > kMaxReorderable) throw ConfigError("too many items to permute");
  if (k >= factorial(n)) throw CapacityError("permutation index out of range");
  std::vector<std::string> pool = items;
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = n; i > 0; --i) {
    std::uint64_t f = factorial(i - 1);
    std::size_t digit = static_cast<std::size_t>(k / f);
    k %= f;
    out.push_back(pool[digit]);
    pool.erase(pool.begin() + digit);
  }
  return out;
}

std::uint64_t permutation_to_index(const std::vector<std::string>& canonical,
                                   const std::vector<std::string>& observed) {
  if (canonical.size() != observed.size()) {
    throw EncodingError("permutation length does not match canonical order");
  }
  std::vector<std::string> pool = canonical;
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    auto it = std::find_if(pool.begin(), pool.end(), [&](const std::string& name) {
      return iequals(name, observed[i]);
    });
    if (it == pool.end()) throw EncodingError("header not in canonical order: " + observed[i]);
    k += static_cast<std::uint64_t>(it - pool.begin()) * factorial(pool.size() - 1);
    pool.erase(it);
  }
  return k;
}

carrier::HttpRequest f7_embed(const carrier::HttpRequest& req, const BitVec& bits) {
  std::size_t capacity = f7_capacity(req);
  if (bits.size() > capacity) {
    throw CapacityError("bitstream of " + std::to_string(bits.size()) +
                        " exceeds order capacity of " + std::to_string(capacity));
  }
  if (req.headers.size() <= 1) return req;

  BitVec padded = bits;
  padded.resize(capacity, 0);
  std::uint64_t k = bits_to_uint(padded);

  std::vector<std::string> names;
  for (std::size_t i = 1; i < req.headers.size(); ++i) names.push_back(req.headers[i].first);
  std::vector<std::string> order = permutation_from_index(names, k);

  carrier::HttpRequest out = req;
  out.headers.resize(1);
  for (const std::string& name : order) {
    for (std::size_t i = 1; i < req.headers.size(); ++i) {
      if (req.headers[i].first == name) {
        out.headers.push_back(req.headers[i]);
        break;
      }
    }
  }
  if (out.headers.size() != req.headers.size()) {
    throw EncodingError("duplicate header names prevent a unique order");
  }
  return out;
}

BitVec f7_extract(const carrier::HttpRequest& req,
                  const std::vector<std::string>& canonical_names) {
  if (req.headers.size() != canonical_names.size()) {
    throw EncodingError("header count does not match canonical order");
  }
  if (req.headers.size() <= 1) return {};
  if (!iequals(req.headers[0].first, canonical_names[0])) {
    throw EncodingError("fixed first header does not match canonical order");
  }
  std::vector<std::string> canonical(canonical_names.begin() + 1, canonical_names.end());
  std::vector<std::string> observed;
  for (std::size_t i = 1; i < req.headers.size(); ++i) observed.push_back(req.headers[i].first);
  std::uint64_t k = permutation_to_index(canonical, observed);
  return uint_to_bits(k, permutation_bits(canonical.size()));
}

// ---------------------------------------------------------------------------
// F8
// ---------------------------------------------------------------------------

carrier::HttpRequest f8_embed(const carrier::HttpRequest& req, std::uint8_t bit,
                              const MethodConfig& cfg) {
  cfg.validate();
  if (bit > 1) throw EncodingError("bit value out of range");
  carrier::HttpRequest out = req;
  std::ptrdiff_t at = out.find_header(cfg.optional_header.first);
  if (bit == 0) {
    if (at >= 0) out.headers.erase(out.headers.begin() + at);
  } else if (at < 0) {
    out.headers.push_back(cfg.optional_header);
  }
  return out;
}

std::uint8_t f8_extract(const carrier::HttpRequest& req, const MethodConfig& cfg) {
  cfg.validate();
  return req.find_header(cfg.optional_header.first) >= 0 ? 1 : 0;
}

// ---------------------------------------------------------------------------
// HTTP flow helpers
// ---------------------------------------------------------------------------

namespace {

// Chunks one wire bitstream across requests with per-request capacities.
std::vector<BitVec> chunk_bits(const BitVec& bits, const std::vector<std::size_t>& capacities,
                               const char* what) {
  std::size_t total = 0;
  for (std::size_t c : capacities) total += c;
  if (bits.size() > total) {
    throw CapacityError(std::string(what) + " bitstream of " + std::to_string(bits.size()) +
                        " exceeds flow capacity of " + std::to_string(total));
  }
  std::vector<BitVec> chunks;
  std::size_t pos = 0;
  for (std::size_t c : capacities) {
    std::size_t take = std::min(c, bits.size() - pos);
    chunks.emplace_back(bits.begin() + pos, bits.begin() + pos + take);
    pos += take;
  }
  return chunks;
}

}  // namespace

HttpFlowResult f6_embed_flow(const std::vector<carrier::HttpRequest>& requests,
                             const BitVec& bits, const MethodConfig& cfg) {
  std::vector<std::size_t> caps;
  std::size_t total = 0;
  for (const auto& r : requests) {
    caps.push_back(f6_capacity(r));
    total += caps.back();
  }
  auto chunks = chunk_bits(bits, caps, "name-case");
  HttpFlowResult out;
  out.report.bits_embedded = total;
  out.report.units_modified = requests.size();
  out.report.unit_markers.assign(requests.size(), 1);
  for (std::size_t i = 0; i < requests.size(); ++i) {
    out.requests.push_back(f6_embed(requests[i], chunks[i], cfg));
  }
  return out;
}

BitVec f6_extract_flow(const std::vector<carrier::HttpRequest>& requests,
                       const MethodConfig& cfg) {
  BitVec bits;
  for (const auto& r : requests) {
    BitVec part = f6_extract(r, cfg);
    bits.insert(bits.end(), part.begin(), part.end());
  }
  return bits;
}

HttpFlowResult f7_embed_flow(const std::vector<carrier::HttpRequest>& requests,
                             const BitVec& bits) {
  std::vector<std::size_t> caps;
  std::size_t total = 0;
  for (const auto& r : requests) {
    caps.push_back(f7_capacity(r));
    total += caps.back();
  }
  auto chunks = chunk_bits(bits, caps, "order");
  HttpFlowResult out;
  out.report.bits_embedded = total;
  out.report.units_modified = requests.size();
  out.report.unit_markers.assign(requests.size(), 1);
  for (std::size_t i = 0; i < requests.size(); ++i) {
    out.requests.push_back(f7_embed(requests[i], chunks[i]));
  }
  return out;
}

BitVec f7_extract_flow(const std::vector<carrier::HttpRequest>& requests,
                       const std::vector<std::vector<std::string>>& canonical_names) {
  if (requests.size() != canonical_names.size()) {
    throw EncodingError("canonical orders do not match request count");
  }
  BitVec bits;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    BitVec part = f7_extract(requests[i], canonical_names[i]);
    bits.insert(bits.end(), part.begin(), part.end());
  }
  return bits;
}

HttpFlowResult f8_embed_flow(const std::vector<carrier::HttpRequest>& requests,
                             const BitVec& bits, const MethodConfig& cfg) {
  if (bits.size() > requests.size()) {
    throw CapacityError("one presence bit per request; bitstream too long");
  }
  HttpFlowResult out;
  out.report.bits_embedded = requests.size();
  out.report.units_modified = requests.size();
  out.report.unit_markers.assign(requests.size(), 1);
  for (std::size_t i = 0; i < requests.size(); ++i) {
    std::uint8_t bit = i < bits.size() ? bits[i] : 0;
    out.requests.push_back(f8_embed(requests[i], bit, cfg));
  }
  return out;
}

BitVec f8_extract_flow(const std::vector<carrier::HttpRequest>& requests,
                       const MethodConfig& cfg) {
  BitVec bits;
  for (const auto& r : requests) bits.push_back(f8_extract(r, cfg));
  return bits;
}

// ---------------------------------------------------------------------------
// LACK
// ---------------------------------------------------------------------------

LackResult lack_embed(const carrier::RtpVoiceFlow& flow, const Bytes& secret_stream,
                      const MethodConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  std::uint64_t select_key = derive_stream(seed, kStreamLackSelect);

  std::vector<std::size_t> selected;
  std::size_t capacity = 0;
  for (std::size_t i = 0; i < flow.packets.size(); ++i) {
    if (unit_double(splitmix_at(select_key, flow.packets[i].seq)) < cfg.p_lack) {
      selected.push_back(i);
      capacity += flow.packets[i].payload_len;
    }
  }
  Bytes stream = padded_stream(secret_stream, capacity, seed, "secret");

  LackResult out;
  out.flow = flow;
  out.report.bits_embedded = capacity * 8;
  out.report.units_modified = selected.size();
  out.report.unit_markers.assign(flow.packets.size(), 0);
  std::size_t pos = 0;
  for (std::size_t i : selected) {
    carrier::RtpPacket& p = out.flow.packets[i];
    p.steg = true;
    p.extra_delay_ms = cfg.lack_extra_delay_ms;
    p.payload = Bytes(stream.begin() + pos, stream.begin() + pos + p.payload_len);
    pos += p.payload_len;
    out.report.unit_markers[i] = 1;
  }
  return out;
}

Bytes lack_extract(const carrier::RtpVoiceFlow& flow, double late_threshold_ms) {
  std::vector<const carrier::RtpPacket*> delayed;
  for (const auto& p : flow.packets) {
    if (p.extra_delay_ms > late_threshold_ms) delayed.push_back(&p);
  }
  std::sort(delayed.begin(), delayed.end(),
            [](const carrier::RtpPacket* a, const carrier::RtpPacket* b) { return a->seq < b->seq; });
  Bytes out;
  for (const carrier::RtpPacket* p : delayed) {
    if (p->payload) out.insert(out.end(), p->payload->begin(), p->payload->end());
  }
  return out;
}

double lack_bandwidth_bytes_per_s(const carrier::CodecProfile& codec, double p_lack) {
  check_probability(p_lack, "p_lack");
  if (codec.packet_interval_ms <= 0.0) throw ConfigError("codec interval must be positive");
  return p_lack * (1000.0 / codec.packet_interval_ms) * codec.payload_bytes;
}

// ---------------------------------------------------------------------------
// RSTEG
// ---------------------------------------------------------------------------

RstegSchedule::RstegSchedule(std::uint64_t seed, double p_steg)
    : key_(derive_stream(seed, kStreamRstegSchedule)), p_(p_steg) {
  check_probability(p_steg, "p_steg_rsteg");
}

bool RstegSchedule::flagged(std::uint64_t seq) const {
  return unit_double(splitmix_at(key_, seq)) < p_;
}

RstegPolicies rsteg_policies(const MethodConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  return RstegPolicies{RstegSchedule(seed, cfg.p_steg_rsteg)};
}

RstegResult rsteg_prepare_flow(const carrier::TcpFlow& flow, const Bytes& secret_stream,
                               const RstegPolicies& policies, std::uint64_t seed) {
  std::vector<std::size_t> flagged;
  std::size_t capacity = 0;
  for (std::size_t i = 0; i < flow.segments.size(); ++i) {
    if (policies.schedule.flagged(flow.segments[i].seq)) {
      flagged.push_back(i);
      capacity += flow.segments[i].payload.size();
    }
  }
  Bytes stream = padded_stream(secret_stream, capacity, seed, "secret");

  RstegResult out;
  out.flow = flow;
  out.report.bits_embedded = capacity * 8;
  out.report.units_modified = flagged.size();
  out.report.unit_markers.assign(flow.segments.size(), 0);
  std::size_t pos = 0;
  for (std::size_t i : flagged) {
    carrier::TcpSegment& s = out.flow.segments[i];
    s.steg_payload = Bytes(stream.begin() + pos, stream.begin() + pos + s.payload.size());
    pos += s.payload.size();
    out.report.unit_markers[i] = 1;
  }
  return out;
}

Bytes rsteg_extract(const carrier::TcpFlow& flow, const RstegPolicies& policies) {
  Bytes out;
  for (const auto& s : flow.segments) {
    if (policies.schedule.flagged(s.seq) && s.steg_payload) {
      out.insert(out.end(), s.steg_payload->begin(), s.steg_payload->end());
    }
  }
  return out;
}

}  // namespace stegcost::methods

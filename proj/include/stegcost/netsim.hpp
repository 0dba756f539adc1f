#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stegcost/carrier.hpp"
#include "stegcost/common.hpp"
#include "stegcost/methods.hpp"

namespace stegcost::netsim {

struct ChannelConfig {
  double p_n = 0.0;                   // network loss probability per data unit
  double p_ack_loss = 0.0;            // reverse-path loss (TCP ACKs)
  double base_delay_ms = 2.0;         // one-way propagation
  double jitter_ms = 0.1;             // per-unit jitter, uniform [0, jitter_ms)
  double per_fragment_time_ms = 10.0; // serialization per 500-byte unit
  double per_packet_overhead_ms = 1.0;
  double late_threshold_ms = 60.0;    // RTP jitter-buffer discard bound
  double rto_ms = 200.0;              // retransmission timeout
  int max_attempts = 64;              // delivery-failure guard
  std::uint64_t seed = 1;
  bool record_events = false;

  void validate() const;  // throws ConfigError
};

// Wire-size unit the serialization timing is normalized to.
inline constexpr double kSerializationUnitBytes = 500.0;

struct SimEvent {
  double t_ms = 0;
  std::string kind;
  std::uint64_t unit = 0;
  int attempt = 0;
};

struct SimReport {
  double connection_time_s = 0;
  std::uint64_t units_sent = 0;          // transmissions, retransmissions included
  std::uint64_t units_lost = 0;
  std::uint64_t units_retransmitted = 0; // retransmission events
  std::uint64_t units_discarded_late = 0;
  double measured_loss_rate = 0;
  double measured_retx_rate = 0;         // fraction of units that needed >= 1 retx
  std::uint64_t seed = 0;
  std::vector<SimEvent> events;          // populated when record_events is set
};

// Thrown when a unit exceeds max_attempts; carries what completed so far.
class DeliveryFailure : public Error {
 public:
  DeliveryFailure(const std::string& what, SimReport partial)
      : Error(what), partial_report(std::move(partial)) {}
  SimReport partial_report;
};

// Reliable in-order fragment transfer: each fragment costs
// per_fragment_time + jitter, each new identification adds
// per_packet_overhead, and a lost fragment is retransmitted after rto.
SimReport simulate_fragment_transfer(const std::vector<carrier::Fragment>& frags,
                                     const ChannelConfig& ch);

struct RtpSimResult {
  SimReport report;
  Bytes received_secret;  // steg-aware harvest, seq order (raw wire stream)
};

// Unreliable RTP: lost packets with p_n; surviving packets whose extra delay
// exceeds late_threshold are discarded by a steg-unaware receiver and
// harvested by a steg-aware one.
RtpSimResult simulate_rtp(const carrier::RtpVoiceFlow& flow, const ChannelConfig& ch,
                          bool steg_aware);

struct TcpSimResult {
  SimReport report;
  Bytes received_overt;   // exact flow payload when the transfer completes
  Bytes received_secret;  // harvested steg bytes, seq order (raw wire stream)
};

// Stop-and-wait reliable transfer with RSTEG policies. p_n applies to data
// segments and p_ack_loss to ACKs: the no-steg natural retransmission rate
// per segment is p_n itself when ACKs are clean.
TcpSimResult simulate_tcp_transfer(const carrier::TcpFlow& flow, const ChannelConfig& ch,
                                   const methods::RstegPolicies& policies);

// Reliable request-sequence transfer used for HTTP flows; serialization time
// scales as per_fragment_time * size / 500.
SimReport simulate_http_transfer(const std::vector<std::size_t>& request_sizes,
                                 const ChannelConfig& ch);

}  // namespace stegcost::netsim

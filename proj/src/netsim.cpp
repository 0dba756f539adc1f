#include "stegcost/netsim.hpp"

#include <algorithm>

#include "stegcost/rng.hpp"

namespace stegcost::netsim {

namespace {

void check_probability(double p, const char* name) {
  if (p < 0.0 || p > 1.0) throw ConfigError(std::string(name) + " outside [0, 1]");
}

void check_nonnegative(double v, const char* name) {
  if (v < 0.0) throw ConfigError(std::string(name) + " must be non-negative");
}

struct Recorder {
  bool on = false;
  std::vector<SimEvent>* events = nullptr;
  void push(double t, const char* kind, std::uint64_t unit, int attempt) const {
    if (on) events->push_back(SimEvent{t, kind, unit, attempt});
  }
};

void finish_rates(SimReport& r) {
  r.measured_loss_rate = r.units_sent == 0 ? 0.0
                                           : static_cast<double>(r.units_lost) /
                                                 static_cast<double>(r.units_sent);
}

}  // namespace

void ChannelConfig::validate() const {
  check_probability(p_n, "p_n");
  check_probability(p_ack_loss, "p_ack_loss");
  check_nonnegative(base_delay_ms, "base_delay_ms");
  check_nonnegative(jitter_ms, "jitter_ms");
  check_nonnegative(per_fragment_time_ms, "per_fragment_time_ms");
  check_nonnegative(per_packet_overhead_ms, "per_packet_overhead_ms");
  check_nonnegative(late_threshold_ms, "late_threshold_ms");
  if (rto_ms <= 0.0) throw ConfigError("rto_ms must be positive");
  if (max_attempts < 1) throw ConfigError("max_attempts must be at least 1");
}

SimReport simulate_fragment_transfer(const std::vector<carrier::Fragment>& frags,
                                     const ChannelConfig& ch) {
  ch.validate();
  CounterRng rng(ch.seed, kStreamChannel);
  SimReport r;
  r.seed = ch.seed;
  Recorder rec{ch.record_events, &r.events};

  double t = 0.0;
  std::uint64_t retx_units = 0;
  bool have_id = false;
  std::uint16_t current_id = 0;
  for (std::size_t i = 0; i < frags.size(); ++i) {
    if (!have_id || frags[i].identification != current_id) {
      t += ch.per_packet_overhead_ms;
      have_id = true;
      current_id = frags[i].identification;
    }
    int attempt = 0;
    for (;;) {
      if (attempt >= ch.max_attempts) {
        finish_rates(r);
        r.connection_time_s = t / 1000.0;
        throw DeliveryFailure("fragment exceeded max delivery attempts", r);
      }
      ++attempt;
      ++r.units_sent;
      double send_start = t;
      t = send_start + ch.per_fragment_time_ms + rng.uniform(0.0, ch.jitter_ms);
      if (rng.bernoulli(ch.p_n)) {
        ++r.units_lost;
        rec.push(t, "loss", i, attempt);
        t = send_start + ch.rto_ms;
        continue;
      }
      rec.push(t, "deliver", i, attempt);
      break;
    }
    if (attempt > 1) {
      ++retx_units;
      r.units_retransmitted += static_cast<std::uint64_t>(attempt - 1);
    }
  }
  r.connection_time_s = t / 1000.0;
  finish_rates(r);
  r.measured_retx_rate = frags.empty() ? 0.0
                                       : static_cast<double>(retx_units) /
                                             static_cast<double>(frags.size());
  return r;
}

RtpSimResult simulate_rtp(const carrier::RtpVoiceFlow& flow, const ChannelConfig& ch,
                          bool steg_aware) {
  ch.validate();
  CounterRng rng(ch.seed, kStreamChannel);
  RtpSimResult out;
  SimReport& r = out.report;
  r.seed = ch.seed;
  Recorder rec{ch.record_events, &r.events};

  std::vector<const carrier::RtpPacket*> harvested;
  double last_arrival = 0.0;
  for (const auto& p : flow.packets) {
    ++r.units_sent;
    bool lost = rng.bernoulli(ch.p_n);
    double arrival =
        p.send_time_ms + p.extra_delay_ms + ch.base_delay_ms + rng.uniform(0.0, ch.jitter_ms);
    if (lost) {
      ++r.units_lost;
      rec.push(arrival, "loss", p.seq, 1);
      continue;
    }
    last_arrival = std::max(last_arrival, arrival);
    if (p.extra_delay_ms > ch.late_threshold_ms) {
      if (steg_aware) {
        harvested.push_back(&p);
        rec.push(arrival, "harvest", p.seq, 1);
      } else {
        ++r.units_discarded_late;
        rec.push(arrival, "discard-late", p.seq, 1);
      }
    } else {
      rec.push(arrival, "deliver", p.seq, 1);
    }
  }

  std::sort(harvested.begin(), harvested.end(),
            [](const carrier::RtpPacket* a, const carrier::RtpPacket* b) { return a->seq < b->seq; });
  for (const carrier::RtpPacket* p : harvested) {
    if (p->payload) {
      out.received_secret.insert(out.received_secret.end(), p->payload->begin(),
                                 p->payload->end());
    }
  }

  r.connection_time_s = last_arrival / 1000.0;
  // A steg-unaware receiver cannot tell a late discard from a loss, so its
  // observed loss rate pools both.
  std::uint64_t observed_lost = r.units_lost + (steg_aware ? 0 : r.units_discarded_late);
  r.measured_loss_rate = r.units_sent == 0 ? 0.0
                                           : static_cast<double>(observed_lost) /
                                                 static_cast<double>(r.units_sent);
  return out;
}

TcpSimResult simulate_tcp_transfer(const carrier::TcpFlow& flow, const ChannelConfig& ch,
                                   const methods::RstegPolicies& policies) {
  ch.validate();
  CounterRng rng(ch.seed, kStreamChannel);
  TcpSimResult out;
  SimReport& r = out.report;
  r.seed = ch.seed;
  Recorder rec{ch.record_events, &r.events};

  double t = 0.0;
  std::uint64_t retx_units = 0;
  for (std::size_t i = 0; i < flow.segments.size(); ++i) {
    const carrier::TcpSegment& s = flow.segments[i];
    bool needs_steg = policies.withhold_first_ack(s.seq);
    bool have_overt = false;
    bool harvested = false;
    int attempt = 0;
    for (;;) {
      if (attempt >= ch.max_attempts) {
        finish_rates(r);
        r.connection_time_s = t / 1000.0;
        throw DeliveryFailure("segment exceeded max delivery attempts", r);
      }
      ++attempt;
      ++r.units_sent;
      double send_start = t;
      double serialize =
          ch.per_fragment_time_ms * static_cast<double>(s.payload.size()) / kSerializationUnitBytes;
      if (rng.bernoulli(ch.p_n)) {
        ++r.units_lost;
        rec.push(send_start + serialize, "loss", s.seq, attempt);
        t = send_start + flow.rto_ms;
        continue;
      }
      double arrival = send_start + serialize + ch.base_delay_ms + rng.uniform(0.0, ch.jitter_ms);
      bool steg_copy = policies.substitute_steg(s.seq, attempt);
      if (steg_copy) {
        if (!s.steg_payload) throw Error("flagged segment is missing its steg payload");
        if (!harvested) {
          harvested = true;
          out.received_secret.insert(out.received_secret.end(), s.steg_payload->begin(),
                                     s.steg_payload->end());
        }
        rec.push(arrival, "deliver-steg", s.seq, attempt);
      } else {
        if (!have_overt) {
          have_overt = true;
          out.received_overt.insert(out.received_overt.end(), s.payload.begin(), s.payload.end());
        }
        rec.push(arrival, "deliver", s.seq, attempt);
      }
      if (!have_overt || (needs_steg && !harvested)) {
        // Receiver withholds the ACK; sender retransmits on timeout.
        rec.push(arrival, "ack-withheld", s.seq, attempt);
        t = send_start + flow.rto_ms;
        continue;
      }
      if (rng.bernoulli(ch.p_ack_loss)) {
        rec.push(arrival, "ack-lost", s.seq, attempt);
        t = send_start + flow.rto_ms;
        continue;
      }
      t = arrival + ch.base_delay_ms + rng.uniform(0.0, ch.jitter_ms);
      rec.push(t, "acked", s.seq, attempt);
      break;
    }
    if (attempt > 1) {
      ++retx_units;
      r.units_retransmitted += static_cast<std::uint64_t>(attempt - 1);
    }
  }
  r.connection_time_s = t / 1000.0;
  finish_rates(r);
  r.measured_retx_rate = flow.segments.empty()
                             ? 0.0
                             : static_cast<double>(retx_units) /
                                   static_cast<double>(flow.segments.size());
  return out;
}

SimReport simulate_http_transfer(const std::vector<std::size_t>& request_sizes,
                                 const ChannelConfig& ch) {
  ch.validate();
  CounterRng rng(ch.seed, kStreamChannel);
  SimReport r;
  r.seed = ch.seed;
  Recorder rec{ch.record_events, &r.events};

  double t = 0.0;
  std::uint64_t retx_units = 0;
  for (std::size_t i = 0; i < request_sizes.size(); ++i) {
    double serialize = ch.per_fragment_time_ms * static_cast<double>(request_sizes[i]) /
                       kSerializationUnitBytes;
    int attempt = 0;
    for (;;) {
      if (attempt >= ch.max_attempts) {
        finish_rates(r);
        r.connection_time_s = t / 1000.0;
        throw DeliveryFailure("request exceeded max delivery attempts", r);
      }
      ++attempt;
      ++r.units_sent;
      double send_start = t;
      t = send_start + ch.per_packet_overhead_ms + serialize + rng.uniform(0.0, ch.jitter_ms);
      if (rng.bernoulli(ch.p_n)) {
        ++r.units_lost;
        rec.push(t, "loss", i, attempt);
        t = send_start + ch.rto_ms;
        continue;
      }
      rec.push(t, "deliver", i, attempt);
      break;
    }
    if (attempt > 1) {
      ++retx_units;
      r.units_retransmitted += static_cast<std::uint64_t>(attempt - 1);
    }
  }
  r.connection_time_s = t / 1000.0;
  finish_rates(r);
  r.measured_retx_rate = request_sizes.empty()
                             ? 0.0
                             : static_cast<double>(retx_units) /
                                   static_cast<double>(request_sizes.size());
  return r;
}

}  // namespace stegcost::netsim

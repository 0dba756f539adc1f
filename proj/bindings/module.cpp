#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stegcost/bits.hpp"
#include "stegcost/carrier.hpp"
#include "stegcost/cost.hpp"
#include "stegcost/harness.hpp"
#include "stegcost/hash.hpp"
#include "stegcost/io.hpp"
#include "stegcost/methods.hpp"
#include "stegcost/netsim.hpp"
#include "stegcost/steganalysis.hpp"

namespace py = pybind11;
using namespace stegcost;

PYBIND11_MODULE(_stegcost, m) {
  m.doc() = "Steganographic-cost laboratory: covert-channel methods over simulated carriers";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
  py::register_exception<EncodingError>(m, "EncodingError", PyExc_ValueError);

  // carrier ------------------------------------------------------------
  py::class_<carrier::OvertPacket>(m, "OvertPacket")
      .def(py::init<>())
      .def_readwrite("id", &carrier::OvertPacket::id)
      .def_readwrite("payload", &carrier::OvertPacket::payload);

  py::class_<carrier::Fragment>(m, "Fragment")
      .def(py::init<>())
      .def_readwrite("identification", &carrier::Fragment::identification)
      .def_readwrite("fragment_offset", &carrier::Fragment::fragment_offset)
      .def_readwrite("more_fragments", &carrier::Fragment::more_fragments)
      .def_readwrite("payload", &carrier::Fragment::payload)
      .def_readwrite("true_len", &carrier::Fragment::true_len)
      .def_readwrite("is_fake", &carrier::Fragment::is_fake);

  m.def("fragment_packet", &carrier::fragment_packet, py::arg("packet"), py::arg("n_real"),
        py::arg("frag_size"));

  py::class_<carrier::ReassemblyResult>(m, "ReassemblyResult")
      .def_property_readonly("status",
                             [](const carrier::ReassemblyResult& r) { return to_string(r.status); })
      .def_readonly("packet", &carrier::ReassemblyResult::packet)
      .def_readonly("detail", &carrier::ReassemblyResult::detail);

  m.def("reassemble", &carrier::reassemble, py::arg("fragments"),
        py::arg("known_fakes") = std::set<std::size_t>{});
  m.def("group_by_identification", &carrier::group_by_identification);

  py::class_<carrier::HttpRequest>(m, "HttpRequest")
      .def(py::init<>())
      .def_readwrite("request_line", &carrier::HttpRequest::request_line)
      .def_readwrite("headers", &carrier::HttpRequest::headers)
      .def_readwrite("body_len", &carrier::HttpRequest::body_len);

  m.def("serialize_http", &carrier::serialize_http);
  m.def("parse_http",
        [](const Bytes& wire) { return carrier::parse_http({wire.data(), wire.size()}); });
  m.def("http_size", &carrier::http_size);

  py::class_<carrier::CodecProfile>(m, "CodecProfile")
      .def_readonly("name", &carrier::CodecProfile::name)
      .def_readonly("bit_rate_kbps", &carrier::CodecProfile::bit_rate_kbps)
      .def_readonly("packet_interval_ms", &carrier::CodecProfile::packet_interval_ms)
      .def_readonly("payload_bytes", &carrier::CodecProfile::payload_bytes)
      .def_readonly("rq", &carrier::CodecProfile::rq)
      .def_readonly("mos_drop_max", &carrier::CodecProfile::mos_drop_max)
      .def_readonly("mos_tau", &carrier::CodecProfile::mos_tau);

  m.def("default_codecs", &carrier::default_codecs, py::return_value_policy::copy);
  m.def("codec_by_name", &carrier::codec_by_name, py::return_value_policy::copy);

  py::class_<carrier::RtpPacket>(m, "RtpPacket")
      .def(py::init<>())
      .def_readwrite("seq", &carrier::RtpPacket::seq)
      .def_readwrite("send_time_ms", &carrier::RtpPacket::send_time_ms)
      .def_readwrite("payload_len", &carrier::RtpPacket::payload_len)
      .def_readwrite("extra_delay_ms", &carrier::RtpPacket::extra_delay_ms)
      .def_readwrite("steg", &carrier::RtpPacket::steg)
      .def_readwrite("payload", &carrier::RtpPacket::payload);

  py::class_<carrier::RtpVoiceFlow>(m, "RtpVoiceFlow")
      .def(py::init<>())
      .def_readwrite("codec", &carrier::RtpVoiceFlow::codec)
      .def_readwrite("packets", &carrier::RtpVoiceFlow::packets);

  m.def("make_rtp_flow", &carrier::make_rtp_flow, py::arg("codec"), py::arg("n_packets"));

  py::class_<carrier::TcpSegment>(m, "TcpSegment")
      .def(py::init<>())
      .def_readwrite("seq", &carrier::TcpSegment::seq)
      .def_readwrite("payload", &carrier::TcpSegment::payload)
      .def_readwrite("steg_payload", &carrier::TcpSegment::steg_payload);

  py::class_<carrier::TcpFlow>(m, "TcpFlow")
      .def(py::init<>())
      .def_readwrite("segments", &carrier::TcpFlow::segments)
      .def_readwrite("rto_ms", &carrier::TcpFlow::rto_ms);

  m.def("make_tcp_flow", &carrier::make_tcp_flow, py::arg("n_segments"), py::arg("segment_len"),
        py::arg("seed"));

  // methods ------------------------------------------------------------
  py::class_<methods::MethodConfig>(m, "MethodConfig")
      .def(py::init<>())
      .def_readwrite("steg_key", &methods::MethodConfig::steg_key)
      .def_readwrite("p_lack", &methods::MethodConfig::p_lack)
      .def_readwrite("p_steg_rsteg", &methods::MethodConfig::p_steg_rsteg)
      .def_readwrite("base_fragments", &methods::MethodConfig::base_fragments)
      .def_readwrite("frag_size", &methods::MethodConfig::frag_size)
      .def_readwrite("is_len", &methods::MethodConfig::is_len)
      .def_readwrite("optional_header", &methods::MethodConfig::optional_header)
      .def_readwrite("lack_extra_delay_ms", &methods::MethodConfig::lack_extra_delay_ms)
      .def("validate", &methods::MethodConfig::validate);

  py::class_<methods::EmbedReport>(m, "EmbedReport")
      .def_readonly("bits_embedded", &methods::EmbedReport::bits_embedded)
      .def_readonly("units_modified", &methods::EmbedReport::units_modified)
      .def_readonly("unit_markers", &methods::EmbedReport::unit_markers);

  py::class_<methods::FragmentFlowResult>(m, "FragmentFlowResult")
      .def_readonly("fragments", &methods::FragmentFlowResult::fragments)
      .def_readonly("report", &methods::FragmentFlowResult::report);

  m.def("f1_embed", &methods::f1_embed, py::arg("flow"), py::arg("bits"), py::arg("config"));
  m.def("f1_extract", &methods::f1_extract);
  m.def("compute_is", &methods::compute_is, py::arg("key"), py::arg("fragment_offset"),
        py::arg("identification"), py::arg("is_len"));
  m.def("f3_embed", &methods::f3_embed, py::arg("packets"), py::arg("secret"), py::arg("config"),
        py::arg("seed"));

  py::class_<methods::F3Extract>(m, "F3Extract")
      .def_readonly("secret_stream", &methods::F3Extract::secret_stream)
      .def_readonly("fake_indices", &methods::F3Extract::fake_indices);

  m.def("f3_extract", &methods::f3_extract, py::arg("fragments"), py::arg("config"));
  m.def("f3_capacity", &methods::f3_capacity, py::arg("n_fakes"), py::arg("config"));
  m.def("f1f3_embed", &methods::f1f3_embed, py::arg("flow"), py::arg("f1_bits"),
        py::arg("f3_secret"), py::arg("config"), py::arg("seed"));

  py::class_<methods::F1F3Extract>(m, "F1F3Extract")
      .def_readonly("f1_bits", &methods::F1F3Extract::f1_bits)
      .def_readonly("f3_stream", &methods::F1F3Extract::f3_stream);

  m.def("f1f3_extract", &methods::f1f3_extract, py::arg("fragments"), py::arg("config"));
  m.def("f6_capacity", &methods::f6_capacity);
  m.def("f6_embed", &methods::f6_embed, py::arg("request"), py::arg("bits"), py::arg("config"));
  m.def("f6_extract", &methods::f6_extract, py::arg("request"), py::arg("config"));
  m.def("f7_capacity", &methods::f7_capacity);
  m.def("f7_embed", &methods::f7_embed, py::arg("request"), py::arg("bits"));
  m.def("f7_extract", &methods::f7_extract, py::arg("request"), py::arg("canonical_names"));
  m.def("permutation_from_index", &methods::permutation_from_index);
  m.def("permutation_to_index", &methods::permutation_to_index);
  m.def("f8_embed", &methods::f8_embed, py::arg("request"), py::arg("bit"), py::arg("config"));
  m.def("f8_extract", &methods::f8_extract, py::arg("request"), py::arg("config"));

  py::class_<methods::LackResult>(m, "LackResult")
      .def_readonly("flow", &methods::LackResult::flow)
      .def_readonly("report", &methods::LackResult::report);

  m.def("lack_embed", &methods::lack_embed, py::arg("flow"), py::arg("secret"), py::arg("config"),
        py::arg("seed"));
  m.def("lack_extract", &methods::lack_extract, py::arg("flow"), py::arg("late_threshold_ms"));
  m.def("lack_bandwidth_bytes_per_s", &methods::lack_bandwidth_bytes_per_s, py::arg("codec"),
        py::arg("p_lack"));

  py::class_<methods::RstegPolicies>(m, "RstegPolicies")
      .def("withhold_first_ack", &methods::RstegPolicies::withhold_first_ack)
      .def("substitute_steg", &methods::RstegPolicies::substitute_steg);

  m.def("rsteg_policies", &methods::rsteg_policies, py::arg("config"), py::arg("seed"));

  py::class_<methods::RstegResult>(m, "RstegResult")
      .def_readonly("flow", &methods::RstegResult::flow)
      .def_readonly("report", &methods::RstegResult::report);

  m.def("rsteg_prepare_flow", &methods::rsteg_prepare_flow, py::arg("flow"), py::arg("secret"),
        py::arg("policies"), py::arg("seed"));
  m.def("rsteg_extract", &methods::rsteg_extract, py::arg("flow"), py::arg("policies"));

  // netsim -------------------------------------------------------------
  py::class_<netsim::ChannelConfig>(m, "ChannelConfig")
      .def(py::init<>())
      .def_readwrite("p_n", &netsim::ChannelConfig::p_n)
      .def_readwrite("p_ack_loss", &netsim::ChannelConfig::p_ack_loss)
      .def_readwrite("base_delay_ms", &netsim::ChannelConfig::base_delay_ms)
      .def_readwrite("jitter_ms", &netsim::ChannelConfig::jitter_ms)
      .def_readwrite("per_fragment_time_ms", &netsim::ChannelConfig::per_fragment_time_ms)
      .def_readwrite("per_packet_overhead_ms", &netsim::ChannelConfig::per_packet_overhead_ms)
      .def_readwrite("late_threshold_ms", &netsim::ChannelConfig::late_threshold_ms)
      .def_readwrite("rto_ms", &netsim::ChannelConfig::rto_ms)
      .def_readwrite("max_attempts", &netsim::ChannelConfig::max_attempts)
      .def_readwrite("seed", &netsim::ChannelConfig::seed)
      .def_readwrite("record_events", &netsim::ChannelConfig::record_events);

  py::class_<netsim::SimReport>(m, "SimReport")
      .def_readonly("connection_time_s", &netsim::SimReport::connection_time_s)
      .def_readonly("units_sent", &netsim::SimReport::units_sent)
      .def_readonly("units_lost", &netsim::SimReport::units_lost)
      .def_readonly("units_retransmitted", &netsim::SimReport::units_retransmitted)
      .def_readonly("units_discarded_late", &netsim::SimReport::units_discarded_late)
      .def_readonly("measured_loss_rate", &netsim::SimReport::measured_loss_rate)
      .def_readonly("measured_retx_rate", &netsim::SimReport::measured_retx_rate)
      .def_readonly("seed", &netsim::SimReport::seed);

  m.def("simulate_fragment_transfer", &netsim::simulate_fragment_transfer, py::arg("fragments"),
        py::arg("channel"));

  py::class_<netsim::RtpSimResult>(m, "RtpSimResult")
      .def_readonly("report", &netsim::RtpSimResult::report)
      .def_readonly("received_secret", &netsim::RtpSimResult::received_secret);

  m.def("simulate_rtp", &netsim::simulate_rtp, py::arg("flow"), py::arg("channel"),
        py::arg("steg_aware"));

  py::class_<netsim::TcpSimResult>(m, "TcpSimResult")
      .def_readonly("report", &netsim::TcpSimResult::report)
      .def_readonly("received_overt", &netsim::TcpSimResult::received_overt)
      .def_readonly("received_secret", &netsim::TcpSimResult::received_secret);

  m.def("simulate_tcp_transfer", &netsim::simulate_tcp_transfer, py::arg("flow"),
        py::arg("channel"), py::arg("policies"));
  m.def("simulate_http_transfer", &netsim::simulate_http_transfer, py::arg("request_sizes"),
        py::arg("channel"));

  // cost ---------------------------------------------------------------
  m.def("delta_mos", &cost::delta_mos, py::arg("codec"), py::arg("p_total"));
  m.def("total_loss", &cost::total_loss, py::arg("p_n"), py::arg("p_lack"));
  m.def("retransmission_difference", &cost::retransmission_difference, py::arg("with_steg"),
        py::arg("baseline"));
  m.def(
      "classify_composition",
      [](const std::vector<double>& singles, double joint, double rel_tol) {
        return cost::to_string(cost::classify_composition(singles, joint, rel_tol));
      },
      py::arg("singles"), py::arg("joint"), py::arg("rel_tol") = 0.05);

  // steganalysis ---------------------------------------------------------
  py::class_<steganalysis::DetectorVerdict>(m, "DetectorVerdict")
      .def_readonly("detector", &steganalysis::DetectorVerdict::detector)
      .def_readonly("statistic", &steganalysis::DetectorVerdict::statistic)
      .def_readonly("threshold", &steganalysis::DetectorVerdict::threshold)
      .def_readonly("detected", &steganalysis::DetectorVerdict::detected)
      .def_readonly("p_value", &steganalysis::DetectorVerdict::p_value)
      .def_readonly("samples", &steganalysis::DetectorVerdict::samples);

  m.def("fragment_count_detector", &steganalysis::fragment_count_detector, py::arg("baseline"),
        py::arg("observed"), py::arg("alpha") = steganalysis::kDefaultAlpha);
  m.def("header_size_detector", &steganalysis::header_size_detector, py::arg("baseline"),
        py::arg("observed"), py::arg("alpha") = steganalysis::kDefaultAlpha);
  m.def("loss_rate_detector", &steganalysis::loss_rate_detector, py::arg("observed_loss"),
        py::arg("p_t"), py::arg("samples"), py::arg("alpha") = steganalysis::kDefaultAlpha);
  m.def("retransmission_rate_detector", &steganalysis::retransmission_rate_detector,
        py::arg("observed_rate"), py::arg("baseline_rate"), py::arg("samples"),
        py::arg("alpha") = steganalysis::kDefaultAlpha);
  m.def("sample_histogram", &steganalysis::sample_histogram, py::arg("baseline"), py::arg("n"),
        py::arg("seed"));

  // harness --------------------------------------------------------------
  py::class_<harness::ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("scenario", &harness::ScenarioConfig::scenario)
      .def_readwrite("cases", &harness::ScenarioConfig::cases)
      .def_readwrite("n_packets", &harness::ScenarioConfig::n_packets)
      .def_readwrite("repeats", &harness::ScenarioConfig::repeats)
      .def_readwrite("seed", &harness::ScenarioConfig::seed)
      .def_readwrite("channel", &harness::ScenarioConfig::channel)
      .def_readwrite("method", &harness::ScenarioConfig::method)
      .def_readwrite("bitstream", &harness::ScenarioConfig::bitstream)
      .def_readwrite("composition_tolerance", &harness::ScenarioConfig::composition_tolerance);

  m.def("run_scenario_a_json", [](const harness::ScenarioConfig& cfg) {
    return io::to_json(harness::run_scenario_a(cfg));
  });
  m.def("run_scenario_b_json", [](const harness::ScenarioConfig& cfg) {
    return io::to_json(harness::run_scenario_b(cfg));
  });
  m.def(
      "run_lack_sweep_json",
      [](const std::vector<std::string>& codecs, const std::vector<double>& grid, double p_n,
         std::size_t n_packets, std::uint64_t seed) {
        harness::LackSweepConfig cfg;
        if (!codecs.empty()) cfg.codecs = codecs;
        if (!grid.empty()) cfg.grid = grid;
        cfg.p_n = p_n;
        cfg.n_packets = n_packets;
        cfg.seed = seed;
        return io::to_json(harness::run_lack_sweep(cfg));
      },
      py::arg("codecs") = std::vector<std::string>{}, py::arg("grid") = std::vector<double>{},
      py::arg("p_n") = 0.0, py::arg("n_packets") = 20000, py::arg("seed") = 1);
  m.def(
      "run_rsteg_sweep_json",
      [](const std::vector<double>& grid, double p_n, std::size_t n_segments,
         std::size_t segment_len, std::uint64_t seed) {
        harness::RstegSweepConfig cfg;
        if (!grid.empty()) cfg.grid = grid;
        cfg.p_n = p_n;
        cfg.n_segments = n_segments;
        cfg.segment_len = segment_len;
        cfg.seed = seed;
        return io::to_json(harness::run_rsteg_sweep(cfg));
      },
      py::arg("grid") = std::vector<double>{}, py::arg("p_n") = 0.03,
      py::arg("n_segments") = 20000, py::arg("segment_len") = 100, py::arg("seed") = 1);

  m.def("scenario_b_template", &harness::scenario_b_template, py::arg("with_optional_header"));
  m.def("fixture_bits", &harness::fixture_bits, py::arg("n_total"), py::arg("n_ones"),
        py::arg("tag"));
  m.def("scenario_a_c2_bits", &harness::scenario_a_c2_bits);
  m.def("scenario_b_c8_bits", &harness::scenario_b_c8_bits);
  m.def("scenario_b_c9_bits", &harness::scenario_b_c9_bits);

  // bits / misc ----------------------------------------------------------
  m.def("bits_from_bytes", &bits_from_bytes);
  m.def("bytes_from_bits", &bytes_from_bits);
  m.def("frame_bits", &frame_bits, py::arg("message"), py::arg("capacity_bits"));
  m.def("deframe_bits", &deframe_bits);
  m.def("frame_bytes", &frame_bytes, py::arg("message"), py::arg("capacity_bytes"),
        py::arg("pad_seed"));
  m.def("deframe_bytes", &deframe_bytes);
  m.def("sha256", &sha256);
}

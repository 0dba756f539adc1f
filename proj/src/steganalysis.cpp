#include "stegcost/steganalysis.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>

#include "stegcost/rng.hpp"

namespace stegcost::steganalysis {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
}

std::uint64_t histogram_total(const Histogram& h) {
  std::uint64_t total = 0;
  for (const auto& [bin, count] : h) total += count;
  return total;
}

DetectorVerdict chi_square_gof(const std::string& name, const Histogram& baseline,
                               const Histogram& observed, double alpha) {
  check_alpha(alpha);
  std::uint64_t base_total = histogram_total(baseline);
  std::uint64_t obs_total = histogram_total(observed);
  if (base_total == 0) throw InsufficientDataError("baseline histogram is empty");
  if (obs_total == 0) throw InsufficientDataError("observed histogram is empty");

  DetectorVerdict v;
  v.detector = name;
  v.samples = obs_total;

  std::size_t df = baseline.size() > 1 ? baseline.size() - 1 : 0;
  if (df == 0) {
    // One expected category: either the observation matches it exactly or an
    // unseen category appears below.
    v.threshold = 0.0;
  } else {
    boost::math::chi_squared dist(static_cast<double>(df));
    v.threshold = boost::math::quantile(dist, 1.0 - alpha);
  }

  // A category the baseline never produces is unambiguous evidence.
  for (const auto& [bin, count] : observed) {
    if (count > 0 && baseline.find(bin) == baseline.end()) {
      v.statistic = std::numeric_limits<double>::infinity();
      v.p_value = 0.0;
      v.detected = true;
      return v;
    }
  }

  if (df == 0) {
    v.statistic = 0.0;
    v.p_value = 1.0;
    v.detected = false;
    return v;
  }

  double stat = 0.0;
  for (const auto& [bin, count] : baseline) {
    double expected = static_cast<double>(count) / static_cast<double>(base_total) *
                      static_cast<double>(obs_total);
    auto it = observed.find(bin);
    double got = it == observed.end() ? 0.0 : static_cast<double>(it->second);
    double diff = got - expected;
    stat += diff * diff / expected;
  }
  boost::math::chi_squared dist(static_cast<double>(df));
  v.statistic = stat;
  v.p_value = boost::math::cdf(boost::math::complement(dist, stat));
  v.detected = stat > v.threshold;
  return v;
}

// Smallest count whose upper tail probability is at most alpha; rejecting at
// or above it keeps the test size below alpha.
std::uint64_t binomial_critical_count(std::uint64_t n, double p_ref, double alpha) {
  if (p_ref <= 0.0) return 1;
  if (p_ref >= 1.0) return n + 1;  // the rate cannot exceed 1: never reject
  boost::math::binomial_distribution<double> dist(static_cast<double>(n), p_ref);
  auto tail_at_least = [&](std::uint64_t k) {
    if (k == 0) return 1.0;
    return boost::math::cdf(boost::math::complement(dist, static_cast<double>(k) - 1.0));
  };
  std::uint64_t lo = 0, hi = n + 1;  // tail(hi) <= alpha always holds
  while (lo + 1 < hi) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (tail_at_least(mid) <= alpha) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

DetectorVerdict binomial_exceedance(const std::string& name, double observed_rate, double p_ref,
                                    std::uint64_t samples, double alpha) {
  check_alpha(alpha);
  if (samples == 0) throw InsufficientDataError("rate test needs at least one sample");
  if (observed_rate < 0.0 || observed_rate > 1.0) throw ConfigError("rate outside [0, 1]");
  if (p_ref < 0.0 || p_ref > 1.0) throw ConfigError("reference rate outside [0, 1]");

  std::uint64_t count =
      static_cast<std::uint64_t>(std::llround(observed_rate * static_cast<double>(samples)));
  std::uint64_t critical = binomial_critical_count(samples, p_ref, alpha);

  DetectorVerdict v;
  v.detector = name;
  v.samples = samples;
  v.statistic = static_cast<double>(count);
  v.threshold = static_cast<double>(critical) - 0.5;
  v.detected = v.statistic > v.threshold;
  if (p_ref <= 0.0) {
    v.p_value = count == 0 ? 1.0 : 0.0;
  } else if (p_ref >= 1.0 || count == 0) {
    v.p_value = 1.0;
  } else {
    boost::math::binomial_distribution<double> dist(static_cast<double>(samples), p_ref);
    v.p_value = boost::math::cdf(boost::math::complement(dist, static_cast<double>(count) - 1.0));
  }
  return v;
}

}  // namespace

DetectorVerdict fragment_count_detector(const Histogram& baseline, const Histogram& observed,
                                        double alpha) {
  return chi_square_gof("fragment-count", baseline, observed, alpha);
}

DetectorVerdict header_size_detector(const Histogram& baseline_sizes,
                                     const Histogram& observed_sizes, double alpha) {
  return chi_square_gof("header-size", baseline_sizes, observed_sizes, alpha);
}

DetectorVerdict loss_rate_detector(double observed_loss, double p_t, std::uint64_t samples,
                                   double alpha) {
  return binomial_exceedance("loss-rate", observed_loss, p_t, samples, alpha);
}

DetectorVerdict retransmission_rate_detector(double observed_rate, double baseline_rate,
                                             std::uint64_t samples, double alpha) {
  return binomial_exceedance("retx-rate", observed_rate, baseline_rate, samples, alpha);
}

std::optional<cost::DetectionThreshold> ThresholdCurve::threshold() const {
  if (!sc_d || !sc_d100) return std::nullopt;
  return cost::DetectionThreshold{*sc_d, *sc_d100};
}

ThresholdCurve estimate_detection_threshold(
    const std::function<bool(double intensity, std::uint64_t run_seed)>& trial,
    const std::function<double(double intensity)>& cost_of, const std::vector<double>& grid,
    std::size_t runs_per_point, std::uint64_t seed) {
  if (grid.empty()) throw ConfigError("intensity grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ConfigError("intensity grid must be strictly increasing");
  }
  if (runs_per_point == 0) throw ConfigError("runs_per_point must be at least 1");

  ThresholdCurve curve;
  std::uint64_t trial_key = derive_stream(seed, kStreamTrial);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::uint64_t point_key = derive_stream(trial_key, i);
    std::size_t hits = 0;
    for (std::size_t j = 0; j < runs_per_point; ++j) {
      if (trial(grid[i], derive_stream(point_key, j))) ++hits;
    }
    ThresholdPoint pt;
    pt.intensity = grid[i];
    pt.cost = cost_of(grid[i]);
    pt.p_detect = static_cast<double>(hits) / static_cast<double>(runs_per_point);
    curve.points.push_back(pt);
  }

  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    if (curve.points[i].p_detect >= 0.5) {
      if (i == 0) {
        curve.sc_d = curve.points[0].cost;
      } else {
        const ThresholdPoint& a = curve.points[i - 1];
        const ThresholdPoint& b = curve.points[i];
        double frac = (0.5 - a.p_detect) / (b.p_detect - a.p_detect);
        curve.sc_d = a.cost + frac * (b.cost - a.cost);
      }
      break;
    }
  }
  curve.sc_d_open = !curve.sc_d.has_value();

  for (const ThresholdPoint& pt : curve.points) {
    if (pt.p_detect >= 0.99) {
      curve.sc_d100 = pt.cost;
      break;
    }
  }
  curve.sc_d100_open = !curve.sc_d100.has_value();
  return curve;
}

Histogram sample_histogram(const Histogram& baseline, std::uint64_t n, std::uint64_t seed) {
  std::uint64_t total = histogram_total(baseline);
  if (total == 0) throw InsufficientDataError("baseline histogram is empty");

  std::vector<std::pair<std::uint32_t, double>> cumulative;
  double acc = 0.0;
  for (const auto& [bin, count] : baseline) {
    acc += static_cast<double>(count) / static_cast<double>(total);
    cumulative.emplace_back(bin, acc);
  }
  cumulative.back().second = 1.0;

  Histogram out;
  CounterRng rng(seed, kStreamFixture);
  for (std::uint64_t i = 0; i < n; ++i) {
    double u = rng.next_unit();
    for (const auto& [bin, edge] : cumulative) {
      if (u < edge) {
        ++out[bin];
        break;
      }
    }
  }
  return out;
}

}  // namespace stegcost::steganalysis

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stegcost/common.hpp"
#include "stegcost/cost.hpp"

namespace stegcost::steganalysis {

// Detectors see the wire view only: histograms of observable counts/sizes
// and measured rates, never ground-truth markers.

using Histogram = std::map<std::uint32_t, std::uint64_t>;

struct DetectorVerdict {
  std::string detector;
  double statistic = 0;
  double threshold = 0;  // critical value at the configured alpha
  bool detected = false; // invariant: detected == statistic > threshold
  double p_value = 1.0;
  std::uint64_t samples = 0;
};

inline constexpr double kDefaultAlpha = 0.01;

// Chi-square goodness of fit of an observed histogram against baseline
// proportions. An observed category absent from the baseline is immediate
// detection (infinite statistic). Empty inputs throw InsufficientDataError.
DetectorVerdict fragment_count_detector(const Histogram& baseline, const Histogram& observed,
                                        double alpha = kDefaultAlpha);
DetectorVerdict header_size_detector(const Histogram& baseline_sizes,
                                     const Histogram& observed_sizes,
                                     double alpha = kDefaultAlpha);

// One-sided exact binomial test that the true rate exceeds the reference;
// equality is not exceedance. samples == 0 throws InsufficientDataError.
DetectorVerdict loss_rate_detector(double observed_loss, double p_t, std::uint64_t samples,
                                   double alpha = kDefaultAlpha);
DetectorVerdict retransmission_rate_detector(double observed_rate, double baseline_rate,
                                             std::uint64_t samples, double alpha = kDefaultAlpha);

struct ThresholdPoint {
  double intensity = 0;
  double cost = 0;      // intensity mapped onto the cost axis
  double p_detect = 0;
};

struct ThresholdCurve {
  std::vector<ThresholdPoint> points;
  std::optional<double> sc_d;     // cost at the first 0.5 crossing (interpolated)
  std::optional<double> sc_d100;  // cost at the first point with p >= 0.99
  bool sc_d_open = false;         // no crossing inside the grid
  bool sc_d100_open = false;

  std::optional<cost::DetectionThreshold> threshold() const;
};

// trial(intensity, run_seed) -> detected; cost_of maps intensity to the cost
// axis (must be monotone for the curve to be meaningful). The grid must be
// strictly increasing. Detection probability per point is the Monte-Carlo
// fraction over runs_per_point seeded trials.
ThresholdCurve estimate_detection_threshold(
    const std::function<bool(double intensity, std::uint64_t run_seed)>& trial,
    const std::function<double(double intensity)>& cost_of, const std::vector<double>& grid,
    std::size_t runs_per_point, std::uint64_t seed);

// Multinomial sample of n draws from baseline proportions (calibration aid).
Histogram sample_histogram(const Histogram& baseline, std::uint64_t n, std::uint64_t seed);

}  // namespace stegcost::steganalysis

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stegcost/carrier.hpp"
#include "stegcost/common.hpp"

namespace stegcost::cost {

enum class CostAspect { Performance, Feature, Detectability };

std::string to_string(CostAspect aspect);
CostAspect aspect_from_string(const std::string& s);

// One scalar cost: a named dimension with an explicit unit. Costs are deltas
// against a no-steg baseline; values may be negative only through sampling
// noise and are reported as-is.
struct CostEntry {
  std::string dimension;
  double value = 0;
  std::string unit;
  CostAspect aspect = CostAspect::Performance;
  std::string subcarrier;  // tag distinguishing same-dimension entries
};

struct CostVector {
  std::vector<CostEntry> entries;

  // Throws UnitError when (dimension, subcarrier) is already present.
  void add(const CostEntry& entry);
};

// Methods sharing a subcarrier degrade the same observable: their costs add.
// All entries must share dimension and unit (UnitError otherwise); an empty
// list sums to a zero entry.
CostEntry compose_same_subcarrier(const std::vector<CostEntry>& costs);

// Methods on distinct subcarriers keep independent dimensions: the result is
// the concatenation, with entries tagged by their source subcarrier.
CostVector compose_distinct_subcarriers(const std::vector<CostVector>& costs);

// Voice-quality drop for a total loss fraction p_total:
//   delta = mos_drop_max * (1 - exp(-p_total / mos_tau))
// Monotone in p_total, zero at zero, bounded by mos_drop_max.
double delta_mos(const carrier::CodecProfile& codec, double p_total);

// Combined loss seen by a steg-unaware RTP receiver: network loss plus
// intentionally delayed (discarded) packets, independent events.
double total_loss(double p_n, double p_lack);

// Retransmission-rate elevation over the no-steg baseline.
double retransmission_difference(double r_with_steg, double r_baseline);

enum class CompositionClass {
  Additive,       // joint ~ sum of singles
  SuperPosition,  // joint below the sum, at or above the largest single
  ZeroCost,       // joint no larger than the largest single (>= 2 methods)
  Interfering,    // joint above the sum
  SubAdditive,    // single method whose joint fell far below it
};

std::string to_string(CompositionClass klass);

// Classifies a joint cost against per-method single costs measured on the
// same dimension. rel_tol is relative to the additive sum. Checks run in the
// order SuperPosition, ZeroCost, Additive, Interfering: zero cost is the
// special case of super-position where the added methods are individually
// free, so the strict below-sum test must fail first.
CompositionClass classify_composition(const std::vector<double>& singles, double joint,
                                      double rel_tol = 0.05);
CompositionClass classify_composition(const std::vector<CostEntry>& singles,
                                      const CostEntry& joint, double rel_tol = 0.05);

// Intensity at which a detector crosses 50% / ~100% detection probability,
// expressed on the cost axis.
struct DetectionThreshold {
  double sc_d = 0;
  double sc_d100 = 0;  // invariant: sc_d <= sc_d100
};

}  // namespace stegcost::cost

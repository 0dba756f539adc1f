#include "stegcost/cost.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace stegcost::cost {

std::string to_string(CostAspect aspect) {
  switch (aspect) {
    case CostAspect::Performance: return "performance";
    case CostAspect::Feature: return "feature";
    case CostAspect::Detectability: return "detectability";
  }
  return "unknown";
}

CostAspect aspect_from_string(const std::string& s) {
  if (s == "performance") return CostAspect::Performance;
  if (s == "feature") return CostAspect::Feature;
  if (s == "detectability") return CostAspect::Detectability;
  throw ConfigError("unknown cost aspect: " + s);
}

void CostVector::add(const CostEntry& entry) {
  for (const CostEntry& e : entries) {
    if (e.dimension == entry.dimension && e.subcarrier == entry.subcarrier) {
      throw UnitError("duplicate cost dimension: " + entry.dimension);
    }
  }
  entries.push_back(entry);
}

CostEntry compose_same_subcarrier(const std::vector<CostEntry>& costs) {
  if (costs.empty()) return CostEntry{};
  CostEntry sum = costs.front();
  sum.value = 0;
  for (const CostEntry& c : costs) {
    if (c.dimension != sum.dimension || c.unit != sum.unit) {
      throw UnitError("cannot sum " + c.dimension + " [" + c.unit + "] into " + sum.dimension +
                      " [" + sum.unit + "]");
    }
    sum.value += c.value;
  }
  return sum;
}

CostVector compose_distinct_subcarriers(const std::vector<CostVector>& costs) {
  CostVector out;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    for (CostEntry entry : costs[i].entries) {
      if (entry.subcarrier.empty()) entry.subcarrier = "sub" + std::to_string(i + 1);
      out.add(entry);
    }
  }
  return out;
}

double delta_mos(const carrier::CodecProfile& codec, double p_total) {
  if (p_total < 0.0 || p_total > 1.0) throw ConfigError("loss fraction outside [0, 1]");
  if (codec.mos_drop_max <= 0.0 || codec.mos_tau <= 0.0) {
    throw ConfigError("codec MOS model is not calibrated: " + codec.name);
  }
  return codec.mos_drop_max * (1.0 - std::exp(-p_total / codec.mos_tau));
}

double total_loss(double p_n, double p_lack) {
  if (p_n < 0.0 || p_n > 1.0 || p_lack < 0.0 || p_lack > 1.0) {
    throw ConfigError("probability outside [0, 1]");
  }
  return 1.0 - (1.0 - p_n) * (1.0 - p_lack);
}

double retransmission_difference(double r_with_steg, double r_baseline) {
  return r_with_steg - r_baseline;
}

std::string to_string(CompositionClass klass) {
  switch (klass) {
    case CompositionClass::Additive: return "ADDITIVE";
    case CompositionClass::SuperPosition: return "SUPER_POSITION";
    case CompositionClass::ZeroCost: return "ZERO_COST";
    case CompositionClass::Interfering: return "INTERFERING";
    case CompositionClass::SubAdditive: return "SUB_ADDITIVE";
  }
  return "unknown";
}

CompositionClass classify_composition(const std::vector<double>& singles, double joint,
                                      double rel_tol) {
  if (singles.empty()) throw ConfigError("no single-method costs to classify against");
  if (rel_tol < 0.0) throw ConfigError("tolerance must be nonnegative");
  double sum = std::accumulate(singles.begin(), singles.end(), 0.0);
  double max = *std::max_element(singles.begin(), singles.end());
  double tol = rel_tol * std::abs(sum);

  if (joint < sum - tol && joint >= max - tol) return CompositionClass::SuperPosition;
  if (singles.size() >= 2 && joint <= max + tol) return CompositionClass::ZeroCost;
  if (std::abs(joint - sum) <= tol) return CompositionClass::Additive;
  if (joint > sum + tol) return CompositionClass::Interfering;
  return CompositionClass::SubAdditive;
}

CompositionClass classify_composition(const std::vector<CostEntry>& singles,
                                      const CostEntry& joint, double rel_tol) {
  std::vector<double> values;
  values.reserve(singles.size());
  for (const CostEntry& e : singles) {
    if (e.dimension != joint.dimension || e.unit != joint.unit) {
      throw UnitError("composition mixes " + e.dimension + " [" + e.unit + "] with " +
                      joint.dimension + " [" + joint.unit + "]");
    }
    values.push_back(e.value);
  }
  return classify_composition(values, joint.value, rel_tol);
}

}  // namespace stegcost::cost

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "holo/fields.hpp"

namespace holo {

struct FieldCatalogEntry {
  std::string name;
  std::vector<std::string> params;
  std::vector<int> degrees;  // form degrees the family can build
  std::string summary;
};

const std::vector<FieldCatalogEntry>& field_catalog();

// {"family": "...", ...params}. Random families require "seed".
AdjointForm make_field(const nlohmann::json& spec, int degree, const ChartDomain& chart, const GroupSpec& group);
VectorField make_vector_field(const nlohmann::json& spec, int dim);
GaugeMap make_gauge_map(const nlohmann::json& spec, const ChartDomain& chart, const GroupSpec& group);

// Deterministic uniform draws in [-1, 1); independent of the standard library's distributions.
class Rng {
 public:
  explicit Rng(unsigned long long seed);
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * 0.5 * (uniform() + 1.0); }
  // Random algebra element sum_a c_a T_a with c_a uniform in [-scale, scale].
  AlgebraElement algebra(const GroupSpec& group, double scale);
  GroupElement group(const GroupSpec& group, double scale);

 private:
  unsigned long long state_;
};

}  // namespace holo

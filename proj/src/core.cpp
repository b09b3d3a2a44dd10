#include "btv/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "btv/kahan.hpp"

namespace btv {

ParamVec::ParamVec(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw InvalidParameter("parameter vector must have length >= 1");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!(v >= 0.0 && v <= 1.0)) {  // also rejects NaN
      throw InvalidParameter("entry [" + std::to_string(i) +
                             "] = " + std::to_string(v) +
                             " outside [0,1]");
    }
  }
}

ParamPair::ParamPair(ParamVec p, ParamVec q) : p_(std::move(p)), q_(std::move(q)) {
  if (p_.n() != q_.n()) {
    throw DimensionMismatch("p has length " + std::to_string(p_.n()) +
                            " but q has length " + std::to_string(q_.n()));
  }
  x_.resize(static_cast<std::size_t>(p_.n()));
  for (int i = 0; i < p_.n(); ++i) {
    x_[static_cast<std::size_t>(i)] = p_[i] - q_[i];
  }
}

const char* to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::Tiny: return "Tiny";
    case RegimeTag::Small: return "Small";
    case RegimeTag::General: return "General";
  }
  return "?";
}

SubsetIndex::SubsetIndex(std::uint64_t mask, int universe)
    : mask_(mask), universe_(universe) {
  if (universe < 1 || universe > 63) {
    throw InvalidParameter("subset universe must be in [1,63], got " +
                           std::to_string(universe));
  }
  if (mask >> universe) {
    throw InvalidParameter("subset mask has bits outside its universe");
  }
  cardinality_ = std::popcount(mask);
}

double atom_mass(const ParamVec& y, const SubsetIndex& s) {
  if (s.universe() != y.n()) {
    throw DimensionMismatch("subset universe " + std::to_string(s.universe()) +
                            " does not match vector length " +
                            std::to_string(y.n()));
  }
  double mass = 1.0;
  for (int i = 0; i < y.n(); ++i) {
    mass *= s.contains(i) ? y[i] : 1.0 - y[i];
  }
  return mass;
}

Regime classify_regime(const ParamPair& pair) {
  const int n = pair.n();
  const double lambda_n = 1.0 / (2.0 * n);
  const double beta_n = 1.0 / (2.0 * n - 1.0);

  double max_entry = 0.0;
  for (int i = 0; i < n; ++i) {
    max_entry = std::max(max_entry, std::max(pair.p()[i], pair.q()[i]));
  }

  const double tiny_bound = 1.0 / (static_cast<double>(n) * n);
  RegimeTag tag = RegimeTag::General;
  if (max_entry <= tiny_bound) {
    tag = RegimeTag::Tiny;
  } else if (n >= 2 && max_entry <= lambda_n) {
    tag = RegimeTag::Small;
  }
  return Regime{tag, lambda_n, beta_n};
}

double l1_distance(const ParamPair& pair) {
  KahanSum sum;
  for (double xi : pair.x()) {
    sum.add(std::abs(xi));
  }
  return sum.value();
}

double l2_distance(const ParamPair& pair) {
  KahanSum sum;
  for (double xi : pair.x()) {
    sum.add(xi * xi);
  }
  return std::sqrt(sum.value());
}

}  // namespace btv

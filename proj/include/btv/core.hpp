#pragma once

#include <cstdint>
#include <vector>

#include "btv/errors.hpp"

namespace btv {

/// Parameter vector of a Bernoulli product measure: n >= 1 success
/// probabilities, each in [0,1]. Immutable after construction.
class ParamVec {
 public:
  explicit ParamVec(std::vector<double> values);

  int n() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& values() const { return values_; }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  std::vector<double> values_;
};

/// A (p, q) pair of equal length with the coordinate differences x = p - q
/// cached at construction.
class ParamPair {
 public:
  ParamPair(ParamVec p, ParamVec q);

  int n() const { return p_.n(); }
  const ParamVec& p() const { return p_; }
  const ParamVec& q() const { return q_; }
  const std::vector<double>& x() const { return x_; }

 private:
  ParamVec p_;
  ParamVec q_;
  std::vector<double> x_;
};

enum class RegimeTag { Tiny, Small, General };

const char* to_string(RegimeTag tag);

/// Regime classification of a pair. lambda_n = 1/(2n) and
/// beta_n = lambda_n/(1 - lambda_n) = 1/(2n-1) are populated for every tag.
struct Regime {
  RegimeTag tag;
  double lambda_n;
  double beta_n;
};

/// A subset S of {0,...,universe-1} as a bitmask. universe <= 63 so that
/// mask arithmetic stays within 64 bits.
class SubsetIndex {
 public:
  SubsetIndex(std::uint64_t mask, int universe);

  std::uint64_t mask() const { return mask_; }
  int universe() const { return universe_; }
  int cardinality() const { return cardinality_; }
  bool contains(int i) const { return (mask_ >> i) & 1u; }

 private:
  std::uint64_t mask_;
  int universe_;
  int cardinality_;
};

/// Mass the product measure Ber(y) assigns to the atom with ones exactly on
/// S: prod_{i in S} y_i * prod_{i not in S} (1 - y_i).
double atom_mass(const ParamVec& y, const SubsetIndex& s);

/// Tightest applicable tag: Tiny when all entries of p and q are <= 1/n^2,
/// else Small when all are <= 1/(2n) (n >= 2), else General. Boundaries are
/// inclusive; for n = 1 the tiny box is all of [0,1].
Regime classify_regime(const ParamPair& pair);

/// sum_i |p_i - q_i|, compensated.
double l1_distance(const ParamPair& pair);

/// sqrt(sum_i (p_i - q_i)^2), compensated.
double l2_distance(const ParamPair& pair);

}  // namespace btv

#pragma once

#include <vector>

#include "btv/core.hpp"

namespace btv {

/// Sum of N independent Bernoulli variables with success probabilities r.
class PoissonBinomial {
 public:
  explicit PoissonBinomial(ParamVec r) : r_(std::move(r)) {}

  int size() const { return r_.n(); }
  const ParamVec& r() const { return r_; }

 private:
  ParamVec r_;
};

/// Odds a_i = r_i/(1 - r_i), each >= 0; undefined when some r_i = 1.
class OddsVec {
 public:
  explicit OddsVec(std::vector<double> a);

  static OddsVec from_probabilities(const ParamVec& r);

  int n() const { return static_cast<int>(a_.size()); }
  double operator[](int i) const { return a_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& values() const { return a_; }

  /// Compensated sum of the odds.
  double sum() const;

 private:
  std::vector<double> a_;
};

struct MonotonicityCheck {
  bool nonincreasing = true;
  int first_violation = -1;  // smallest m with pmf(m-1) < pmf(m), or -1
};

/// P[X = m] for m = 0..N by the in-place convolution recurrence, one
/// coordinate at a time. Handles r_i in {0,1} exactly.
std::vector<double> pmf(const PoissonBinomial& pb);

/// Elementary symmetric polynomial e_m(a_1..a_N) by the triangular DP;
/// e_0 = 1.
double elementary_symmetric(const OddsVec& a, int m);

/// Checks pmf(m-1) >= pmf(m) - 1e-14 for every m >= 1. Requires finite
/// odds with sum <= 1; throws OddsConstraintViolated otherwise.
MonotonicityCheck pmf_is_nonincreasing(const PoissonBinomial& pb);

/// C(N,m) * lambda^m * (1-lambda)^(N-m): the pointwise maximum of P[X=m]
/// over r in [0,lambda]^N, valid for m >= 1 and lambda <= 1/(N+1).
double pmf_extremal_bound(int N, double lambda, int m);

/// d P[X=m] / d r_j = P[X^(-j) = m-1] - P[X^(-j) = m], where X^(-j) drops
/// coordinate j (0-based). P[. = -1] := 0.
double pmf_coordinate_derivative(const PoissonBinomial& pb, int j, int m);

/// C(n,k) by the multiplicative recurrence, exact in double for the
/// magnitudes used here (n <= 64).
double binomial_coefficient(int n, int k);

}  // namespace btv

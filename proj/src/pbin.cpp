#include "btv/pbin.hpp"

#include <algorithm>
#include <string>

#include "btv/errors.hpp"
#include "btv/kahan.hpp"

namespace btv {

namespace {

constexpr double kMonotoneTol = 1e-14;

// pmf of a sum of independent Bernoullis over a raw probability vector;
// an empty vector yields the point mass at 0.
std::vector<double> pmf_raw(const std::vector<double>& r) {
  std::vector<double> f(r.size() + 1, 0.0);
  f[0] = 1.0;
  int count = 0;
  for (const double ri : r) {
    ++count;
    for (int m = count; m >= 1; --m) {
      f[static_cast<std::size_t>(m)] =
          f[static_cast<std::size_t>(m)] * (1.0 - ri) +
          f[static_cast<std::size_t>(m - 1)] * ri;
    }
    f[0] *= 1.0 - ri;
  }
  return f;
}

}  // namespace

OddsVec::OddsVec(std::vector<double> a) : a_(std::move(a)) {
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (!(a_[i] >= 0.0)) {
      throw InvalidParameter("odds entry " + std::to_string(i) +
                             " is negative or not a number");
    }
  }
}

OddsVec OddsVec::from_probabilities(const ParamVec& r) {
  std::vector<double> a(static_cast<std::size_t>(r.n()));
  for (int i = 0; i < r.n(); ++i) {
    if (r[i] >= 1.0) {
      throw OddsUndefined("odds undefined: entry " + std::to_string(i) +
                          " equals 1");
    }
    a[static_cast<std::size_t>(i)] = r[i] / (1.0 - r[i]);
  }
  return OddsVec(std::move(a));
}

double OddsVec::sum() const {
  KahanSum s;
  for (const double v : a_) {
    s.add(v);
  }
  return s.value();
}

std::vector<double> pmf(const PoissonBinomial& pb) {
  return pmf_raw(pb.r().values());
}

double elementary_symmetric(const OddsVec& a, int m) {
  const int n = a.n();
  if (m < 0 || m > n) {
    throw InvalidParameter("elementary symmetric degree m = " +
                           std::to_string(m) + " out of range [0," +
                           std::to_string(n) + "]");
  }
  std::vector<double> e(static_cast<std::size_t>(m) + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    const int top = std::min(m, i + 1);
    for (int t = top; t >= 1; --t) {
      e[static_cast<std::size_t>(t)] +=
          a[i] * e[static_cast<std::size_t>(t - 1)];
    }
  }
  return e[static_cast<std::size_t>(m)];
}

MonotonicityCheck pmf_is_nonincreasing(const PoissonBinomial& pb) {
  const OddsVec odds = OddsVec::from_probabilities(pb.r());
  if (odds.sum() > 1.0) {
    throw OddsConstraintViolated(
        "sum of odds exceeds 1; monotonicity is not guaranteed");
  }
  const std::vector<double> f = pmf(pb);
  MonotonicityCheck check;
  for (std::size_t m = 1; m < f.size(); ++m) {
    if (f[m - 1] < f[m] - kMonotoneTol) {
      check.nonincreasing = false;
      check.first_violation = static_cast<int>(m);
      break;
    }
  }
  return check;
}

double pmf_extremal_bound(int N, double lambda, int m) {
  if (N < 1) {
    throw InvalidParameter("N must be at least 1");
  }
  if (m < 1 || m > N) {
    throw InvalidParameter("m = " + std::to_string(m) +
                           " out of range [1," + std::to_string(N) + "]");
  }
  if (!(lambda >= 0.0)) {
    throw InvalidParameter("lambda is negative or not a number");
  }
  if (lambda > 1.0 / (N + 1)) {
    throw LambdaTooLarge("lambda exceeds 1/(N+1) = " +
                         std::to_string(1.0 / (N + 1)));
  }
  double value = binomial_coefficient(N, m);
  for (int i = 0; i < m; ++i) {
    value *= lambda;
  }
  for (int i = 0; i < N - m; ++i) {
    value *= 1.0 - lambda;
  }
  return value;
}

double pmf_coordinate_derivative(const PoissonBinomial& pb, int j, int m) {
  const int N = pb.size();
  if (j < 0 || j >= N) {
    throw InvalidParameter("coordinate j = " + std::to_string(j) +
                           " out of range [0," + std::to_string(N - 1) + "]");
  }
  if (m < 0 || m > N) {
    throw InvalidParameter("m = " + std::to_string(m) + " out of range [0," +
                           std::to_string(N) + "]");
  }
  std::vector<double> rest;
  rest.reserve(static_cast<std::size_t>(N) - 1);
  for (int i = 0; i < N; ++i) {
    if (i != j) {
      rest.push_back(pb.r()[i]);
    }
  }
  const std::vector<double> f = pmf_raw(rest);
  const auto at = [&](int idx) {
    return (idx < 0 || idx >= static_cast<int>(f.size()))
               ? 0.0
               : f[static_cast<std::size_t>(idx)];
  };
  return at(m - 1) - at(m);
}

double binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) {
    throw InvalidParameter("binomial index k = " + std::to_string(k) +
                           " out of range [0," + std::to_string(n) + "]");
  }
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
  }
  return c;
}

}  // namespace btv

#include "btv/bhatta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "btv/errors.hpp"
#include "btv/kahan.hpp"

namespace btv {

namespace {

double coordinate_bc(double p, double q) {
  return std::sqrt(p * q) + std::sqrt((1.0 - p) * (1.0 - q));
}

void bc_descend(const double* p, const double* q, int level, double fp,
                double fq, KahanSum& acc) {
  if (level == 0) {
    acc.add(std::sqrt(fp * fq));
    return;
  }
  const int i = level - 1;
  bc_descend(p, q, i, fp * (1.0 - p[i]), fq * (1.0 - q[i]), acc);
  bc_descend(p, q, i, fp * p[i], fq * q[i], acc);
}

}  // namespace

double bhattacharyya_coefficient(const ParamPair& pair) {
  double bc = 1.0;
  for (int i = 0; i < pair.n(); ++i) {
    bc *= coordinate_bc(pair.p()[i], pair.q()[i]);
  }
  return std::clamp(bc, 0.0, 1.0);
}

double bhattacharyya_atom_sum(const ParamPair& pair,
                              const EnumerationConfig& config) {
  const int n = pair.n();
  if (n > config.limit) {
    throw DimensionTooLarge("n = " + std::to_string(n) +
                            " exceeds the enumeration limit " +
                            std::to_string(config.limit));
  }
  KahanSum acc;
  bc_descend(pair.p().values().data(), pair.q().values().data(), n, 1.0, 1.0,
             acc);
  return acc.value();
}

double tv_bc_bound(const ParamPair& pair) {
  const double bc = bhattacharyya_coefficient(pair);
  return std::sqrt(std::max(0.0, 1.0 - bc * bc));
}

double one_d_identity_residual(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
    throw InvalidParameter("p and q must lie in [0,1]");
  }
  const double b = coordinate_bc(p, q);
  const double lhs = 1.0 - b * b;
  const double sp = std::sqrt(p * (1.0 - q));
  const double sq = std::sqrt(q * (1.0 - p));
  const double difference_form = (sp - sq) * (sp - sq);
  double residual = std::abs(lhs - difference_form);
  const double denom = (sp + sq) * (sp + sq);
  if (denom > 0.0) {
    const double fraction_form = ((p - q) * (p - q)) / denom;
    residual = std::max(residual, std::abs(lhs - fraction_form));
  }
  return residual;
}

QuasiSymmetryCertificate quasi_symmetry(const ParamPair& pair) {
  const int n = pair.n();
  std::vector<double> rp(static_cast<std::size_t>(n));
  std::vector<double> rq(static_cast<std::size_t>(n));
  std::vector<int> offending;
  for (int i = 0; i < n; ++i) {
    const double pi = pair.p()[i];
    const double qi = pair.q()[i];
    const bool oriented = pi >= 0.5 && qi <= 0.5;
    const bool flipped = qi >= 0.5 && pi <= 0.5;
    if (!oriented && !flipped) {
      offending.push_back(i);
    }
    const std::size_t u = static_cast<std::size_t>(i);
    if (flipped && !oriented) {
      rp[u] = 1.0 - pi;
      rq[u] = 1.0 - qi;
    } else {
      rp[u] = pi;
      rq[u] = qi;
    }
  }
  return QuasiSymmetryCertificate{
      offending.empty(),
      ParamPair(ParamVec(std::move(rp)), ParamVec(std::move(rq))),
      std::move(offending)};
}

BoundEntry check_sqrt2_bound(const ParamPair& pair, double tv, bool force) {
  const QuasiSymmetryCertificate cert = quasi_symmetry(pair);
  if (!cert.is_quasi_symmetric && !force) {
    throw NotQuasiSymmetric(
        "coordinate " + std::to_string(cert.offending_indices.front()) +
        " does not straddle 1/2");
  }
  return make_bound_entry("sqrt2_l2", tv,
                          std::numbers::sqrt2 * l2_distance(pair),
                          cert.is_quasi_symmetric);
}

}  // namespace btv

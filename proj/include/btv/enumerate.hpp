#pragma once

#include <vector>

#include "btv/core.hpp"

namespace btv {

/// Default exact-enumeration limit: BERNOULLI_TV_ENUM_LIMIT when set,
/// otherwise 26 (~6.7e7 atoms).
int default_enumeration_limit();

struct EnumerationConfig {
  int limit = default_enumeration_limit();
  int workers = 0;  // 0 = hardware concurrency
};

/// Per-slice discrepancies of a pair. delta[k] = Delta_k >= 0 for
/// k = 0..n, tv is the exact total variation distance, and
/// identity_residual = |2*tv - sum_k delta[k]| (pure accumulation noise).
struct SliceReport {
  int n = 0;
  std::vector<double> delta;
  double tv = 0.0;
  double identity_residual = 0.0;
};

/// Signed atom discrepancy P_S(p) - P_S(q).
double slice_delta(const ParamPair& pair, const SubsetIndex& s);

/// Delta_k = sum over |S| = k of |P_S(p) - P_S(q)|, enumerated over all
/// C(n,k) subsets in lexicographic mask order with compensated summation.
double slice_discrepancy(const ParamPair& pair, int k,
                         const EnumerationConfig& config = {});

/// Exact TV distance, (1/2) sum over all 2^n atoms of |P_S(p) - P_S(q)|.
/// Throws DimensionTooLarge when n exceeds config.limit. Bit-identical
/// for any worker count.
double tv_exact(const ParamPair& pair, const EnumerationConfig& config = {});

/// All of Delta_0..Delta_n plus tv in a single traversal of the atom space.
SliceReport full_slice_report(const ParamPair& pair,
                              const EnumerationConfig& config = {});

}  // namespace btv

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "btv/core.hpp"
#include "btv/enumerate.hpp"

namespace btv {

/// One evaluated inequality lhs <= rhs. margin = rhs - lhs; satisfied
/// allows roundoff slack of 1e-12 * max(1, |rhs|). in_regime is false when
/// the check was forced on a pair outside the inequality's hypothesis.
struct BoundEntry {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool satisfied = true;
  bool in_regime = true;
};

/// Roundoff slack for declaring lhs <= rhs satisfied.
double bound_tolerance(double rhs);

BoundEntry make_bound_entry(std::string name, double lhs, double rhs,
                            bool in_regime = true);

/// The coefficients B_1..B_n bounding Delta_k/Delta_1 in the small regime,
/// by the defining recurrence and (for k >= 2) the closed form.
struct BkSequence {
  int n = 0;
  std::vector<double> by_recurrence;   // index k-1 holds B_k, k = 1..n
  std::vector<double> by_closed_form;  // index k-2 holds B_k, k = 2..n
  double sum_tail = 0.0;               // sum of B_2..B_n, equals (n-1)/n
};

/// Everything cmd_tv reports for a pair: scalar statistics plus every
/// applicable bound. tv, delta0, delta2 are NaN when n exceeds the
/// enumeration limit (bounds needing them are then omitted).
struct BoundReport {
  Regime regime{};
  int n = 0;
  double tv = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double delta0 = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  std::vector<BoundEntry> entries;
};

/// Residuals of the singleton/doubleton auxiliary identity. The expanded
/// odds form is skipped (nullopt) when p_a = 1 or q_b = 1.
struct AuxIdentityResult {
  double identity_residual = 0.0;
  std::optional<double> expanded_residual;
};

/// Delta_1 in O(n) via prefix/suffix products of (1 - y_j); no division,
/// so entries equal to 1 are exact.
double delta1_closed_form(const ParamPair& pair);

/// Tiny regime: l1/4 <= tv and tv <= l1. Throws RegimeMismatch unless the
/// pair is Tiny or force is set.
std::vector<BoundEntry> check_tiny_sandwich(const ParamPair& pair, double tv,
                                            bool force = false);

/// Small regime: delta1/2 <= tv and tv <= (2 - 1/n) delta1.
std::vector<BoundEntry> check_small_sandwich(const ParamPair& pair,
                                             double delta1, double tv,
                                             bool force = false);

/// Small regime: delta0 <= (2 - 1/n) delta1.
BoundEntry check_delta0_bound(const ParamPair& pair, double delta0,
                              double delta1, bool force = false);

/// Small regime: delta2 <= 3(n-1)/(2(2n-1)) delta1.
BoundEntry check_delta2_bound(const ParamPair& pair, double delta2,
                              double delta1, bool force = false);

/// The coefficient 3(n-1)/(2(2n-1)); equals B_2(n).
double delta2_coefficient(int n);

/// K(n) = (2n-1)/(n (1 - 1/(2n))^(n-1)); l1 <= K(n) delta1 in the small
/// regime. K(2) = 2, K(3) = 2.4, increasing to 2*sqrt(e).
double k_of_n(int n);

/// B_1..B_n by the recurrence plus the closed-form cross-check and the
/// tail sum. Both power chains use repeated multiplication, and the
/// recurrence is evaluated over a common denominator so small cases come
/// out as exact decimals (B_2(3) = 0.6).
BkSequence bk_sequence(int n);

/// Small regime: delta_k <= B_k(n) delta1 for k = 2..n, plus the aggregate
/// tail bound sum_{k>=2} delta_k <= ((n-1)/n) delta1 as the last entry.
std::vector<BoundEntry> check_universal_slice_bounds(const ParamPair& pair,
                                                     const SliceReport& report,
                                                     bool force = false);

/// Residual of beta_n/2 (delta_a + delta_b) - delta_ab = (S_p - S_q)/2
/// with S(y) = beta_n (P_{a}(y) + P_{b}(y)) - 2 P_{ab}(y), plus the
/// residual of the expanded odds form when defined. Indices 0-based,
/// a < b.
AuxIdentityResult delta2_auxiliary_identity(const ParamPair& pair, int a,
                                            int b);

/// Full per-pair report: regime, scalar statistics, and every bound whose
/// hypothesis the pair satisfies (exact-TV bounds only when n is within
/// the enumeration limit).
BoundReport evaluate_bounds(const ParamPair& pair,
                            const EnumerationConfig& config = {});

}  // namespace btv

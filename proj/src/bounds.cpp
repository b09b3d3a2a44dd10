#include "btv/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "btv/bhatta.hpp"
#include "btv/errors.hpp"
#include "btv/kahan.hpp"
#include "btv/pbin.hpp"

namespace btv {

namespace {

constexpr double kRelTol = 1e-12;

void require_small(const ParamPair& pair, const char* what, bool force) {
  if (force) {
    return;
  }
  if (pair.n() < 2) {
    throw NTooSmall(std::string(what) + " requires n >= 2");
  }
  if (classify_regime(pair).tag == RegimeTag::General) {
    throw RegimeMismatch(std::string(what) +
                         " requires all entries <= 1/(2n)");
  }
}

bool in_small_regime(const ParamPair& pair) {
  return pair.n() >= 2 && classify_regime(pair).tag != RegimeTag::General;
}

// Products of (1 - y_j) over j < i and j > i for every i, in one pass each.
void one_minus_prefix_suffix(const ParamVec& y, std::vector<double>& pre,
                             std::vector<double>& suf) {
  const std::size_t n = static_cast<std::size_t>(y.n());
  pre.assign(n, 1.0);
  suf.assign(n, 1.0);
  for (std::size_t i = 1; i < n; ++i) {
    pre[i] = pre[i - 1] * (1.0 - y[static_cast<int>(i - 1)]);
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    suf[i] = suf[i + 1] * (1.0 - y[static_cast<int>(i + 1)]);
  }
}

}  // namespace

double bound_tolerance(double rhs) {
  return kRelTol * std::max(1.0, std::abs(rhs));
}

BoundEntry make_bound_entry(std::string name, double lhs, double rhs,
                            bool in_regime) {
  BoundEntry e;
  e.name = std::move(name);
  e.lhs = lhs;
  e.rhs = rhs;
  e.margin = rhs - lhs;
  e.satisfied = e.margin >= -bound_tolerance(rhs);
  e.in_regime = in_regime;
  return e;
}

double delta1_closed_form(const ParamPair& pair) {
  const int n = pair.n();
  std::vector<double> pre_p, suf_p, pre_q, suf_q;
  one_minus_prefix_suffix(pair.p(), pre_p, suf_p);
  one_minus_prefix_suffix(pair.q(), pre_q, suf_q);
  KahanSum s;
  for (int i = 0; i < n; ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    s.add(std::abs(pair.p()[i] * pre_p[u] * suf_p[u] -
                   pair.q()[i] * pre_q[u] * suf_q[u]));
  }
  return s.value();
}

std::vector<BoundEntry> check_tiny_sandwich(const ParamPair& pair, double tv,
                                            bool force) {
  const bool tiny = classify_regime(pair).tag == RegimeTag::Tiny;
  if (!tiny && !force) {
    throw RegimeMismatch("tiny sandwich requires all entries <= 1/n^2");
  }
  const double l1 = l1_distance(pair);
  return {make_bound_entry("tiny_lower", 0.25 * l1, tv, tiny),
          make_bound_entry("tiny_upper", tv, l1, tiny)};
}

std::vector<BoundEntry> check_small_sandwich(const ParamPair& pair,
                                             double delta1, double tv,
                                             bool force) {
  require_small(pair, "small sandwich", force);
  const bool ok = in_small_regime(pair);
  const double coeff = 2.0 - 1.0 / pair.n();
  return {make_bound_entry("small_lower", 0.5 * delta1, tv, ok),
          make_bound_entry("small_upper", tv, coeff * delta1, ok)};
}

BoundEntry check_delta0_bound(const ParamPair& pair, double delta0,
                              double delta1, bool force) {
  require_small(pair, "delta0 bound", force);
  const double coeff = 2.0 - 1.0 / pair.n();
  return make_bound_entry("delta0_vs_delta1", delta0, coeff * delta1,
                          in_small_regime(pair));
}

BoundEntry check_delta2_bound(const ParamPair& pair, double delta2,
                              double delta1, bool force) {
  require_small(pair, "delta2 bound", force);
  return make_bound_entry("delta2_vs_delta1", delta2,
                          delta2_coefficient(pair.n()) * delta1,
                          in_small_regime(pair));
}

double delta2_coefficient(int n) {
  if (n < 2) {
    throw NTooSmall("delta2 coefficient requires n >= 2");
  }
  return (3.0 * (n - 1)) / (2.0 * (2 * n - 1));
}

double k_of_n(int n) {
  if (n < 2) {
    throw NTooSmall("K(n) requires n >= 2");
  }
  const double factor = 1.0 - 1.0 / (2.0 * n);
  double power = 1.0;
  for (int i = 0; i < n - 1; ++i) {
    power *= factor;
  }
  return (2.0 * n - 1.0) / (n * power);
}

BkSequence bk_sequence(int n) {
  if (n < 2) {
    throw NTooSmall("B_k sequence requires n >= 2");
  }
  BkSequence seq;
  seq.n = n;
  const double m = 2.0 * n - 1.0;

  // Recurrence, evaluated over the common denominator k*(2n-1)^(k-1) so
  // that small cases reduce to single exact divisions.
  seq.by_recurrence.resize(static_cast<std::size_t>(n));
  seq.by_recurrence[0] = 1.0;
  double pow_km2 = 1.0;  // (2n-1)^(k-2)
  for (int k = 2; k <= n; ++k) {
    const double pow_km1 = pow_km2 * m;
    const double numer =
        (n - k + 1) * pow_km2 * seq.by_recurrence[static_cast<std::size_t>(k - 2)] +
        2.0 * binomial_coefficient(n - 1, k - 1);
    seq.by_recurrence[static_cast<std::size_t>(k - 1)] = numer / (k * pow_km1);
    pow_km2 = pow_km1;
  }

  seq.by_closed_form.resize(static_cast<std::size_t>(n - 1));
  double pow_cf = m;  // (2n-1)^(k-1)
  for (int k = 2; k <= n; ++k) {
    seq.by_closed_form[static_cast<std::size_t>(k - 2)] =
        binomial_coefficient(n - 2, k - 2) * ((2.0 * k - 1.0) * (n - 1.0)) /
        ((static_cast<double>(k) * (k - 1.0)) * pow_cf);
    pow_cf *= m;
  }

  KahanSum tail;
  for (int k = 2; k <= n; ++k) {
    tail.add(seq.by_recurrence[static_cast<std::size_t>(k - 1)]);
  }
  seq.sum_tail = tail.value();
  return seq;
}

std::vector<BoundEntry> check_universal_slice_bounds(const ParamPair& pair,
                                                     const SliceReport& report,
                                                     bool force) {
  require_small(pair, "universal slice bounds", force);
  const int n = pair.n();
  if (report.n != n) {
    throw DimensionMismatch("slice report is for a different n");
  }
  const bool ok = in_small_regime(pair);
  const double delta1 = report.delta[1];
  const BkSequence seq = bk_sequence(n);

  std::vector<BoundEntry> entries;
  entries.reserve(static_cast<std::size_t>(n));
  KahanSum tail;
  for (int k = 2; k <= n; ++k) {
    const double dk = report.delta[static_cast<std::size_t>(k)];
    tail.add(dk);
    entries.push_back(make_bound_entry(
        "slice_" + std::to_string(k), dk,
        seq.by_recurrence[static_cast<std::size_t>(k - 1)] * delta1, ok));
  }
  entries.push_back(make_bound_entry(
      "slice_tail", tail.value(), ((n - 1.0) / n) * delta1, ok));
  return entries;
}

AuxIdentityResult delta2_auxiliary_identity(const ParamPair& pair, int a,
                                            int b) {
  const int n = pair.n();
  if (n < 2) {
    throw NTooSmall("auxiliary identity requires n >= 2");
  }
  if (a < 0 || b >= n || a >= b) {
    throw InvalidParameter("indices must satisfy 0 <= a < b < n");
  }
  const double beta = 1.0 / (2.0 * n - 1.0);
  const SubsetIndex sa(std::uint64_t{1} << a, n);
  const SubsetIndex sb(std::uint64_t{1} << b, n);
  const SubsetIndex sab((std::uint64_t{1} << a) | (std::uint64_t{1} << b), n);

  const double pa = atom_mass(pair.p(), sa);
  const double pb = atom_mass(pair.p(), sb);
  const double pab = atom_mass(pair.p(), sab);
  const double qa = atom_mass(pair.q(), sa);
  const double qb = atom_mass(pair.q(), sb);
  const double qab = atom_mass(pair.q(), sab);

  const double delta_a = pa - qa;
  const double delta_b = pb - qb;
  const double delta_ab = pab - qab;

  const double s_p = beta * (pa + pb) - 2.0 * pab;
  const double s_q = beta * (qa + qb) - 2.0 * qab;
  const double lhs = 0.5 * beta * (delta_a + delta_b) - delta_ab;
  const double rhs = 0.5 * (s_p - s_q);

  AuxIdentityResult result;
  result.identity_residual = std::abs(lhs - rhs);

  if (pair.p()[a] < 1.0 && pair.q()[b] < 1.0) {
    const double odds_a_p = pair.p()[a] / (1.0 - pair.p()[a]);
    const double odds_b_q = pair.q()[b] / (1.0 - pair.q()[b]);
    const SubsetIndex empty(0, n);
    const double dp_empty =
        atom_mass(pair.p(), empty) - atom_mass(pair.q(), empty);
    const double expanded = (beta - 2.0 * odds_b_q) * delta_a +
                            (beta - 2.0 * odds_a_p) * delta_b +
                            2.0 * odds_a_p * odds_b_q * dp_empty;
    result.expanded_residual = std::abs((s_p - s_q) - expanded);
  }
  return result;
}

BoundReport evaluate_bounds(const ParamPair& pair,
                            const EnumerationConfig& config) {
  BoundReport rep;
  rep.regime = classify_regime(pair);
  rep.n = pair.n();
  rep.l1 = l1_distance(pair);
  rep.l2 = l2_distance(pair);
  rep.delta1 = delta1_closed_form(pair);
  rep.tv = std::numeric_limits<double>::quiet_NaN();
  rep.delta0 = std::numeric_limits<double>::quiet_NaN();
  rep.delta2 = std::numeric_limits<double>::quiet_NaN();

  const bool small = in_small_regime(pair);
  if (small) {
    rep.entries.push_back(make_bound_entry(
        "l1_vs_delta1", rep.l1, k_of_n(rep.n) * rep.delta1));
  }
  if (rep.n > config.limit) {
    return rep;
  }

  const SliceReport sr = full_slice_report(pair, config);
  rep.tv = sr.tv;
  rep.delta0 = sr.delta[0];
  if (rep.n >= 2) {
    rep.delta2 = sr.delta[2];
  }

  rep.entries.push_back(make_bound_entry("l1_upper", rep.tv, rep.l1));
  rep.entries.push_back(
      make_bound_entry("bc_upper", rep.tv, tv_bc_bound(pair)));
  if (rep.regime.tag == RegimeTag::Tiny) {
    for (auto& e : check_tiny_sandwich(pair, rep.tv)) {
      rep.entries.push_back(std::move(e));
    }
  }
  if (small) {
    for (auto& e : check_small_sandwich(pair, rep.delta1, rep.tv)) {
      rep.entries.push_back(std::move(e));
    }
    rep.entries.push_back(
        check_delta0_bound(pair, rep.delta0, rep.delta1));
    rep.entries.push_back(
        check_delta2_bound(pair, rep.delta2, rep.delta1));
    for (auto& e : check_universal_slice_bounds(pair, sr)) {
      rep.entries.push_back(std::move(e));
    }
  }
  if (quasi_symmetry(pair).is_quasi_symmetric) {
    rep.entries.push_back(check_sqrt2_bound(pair, rep.tv));
  }
  return rep;
}

}  // namespace btv

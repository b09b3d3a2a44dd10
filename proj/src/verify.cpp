#include "btv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "btv/bhatta.hpp"
#include "btv/bounds.hpp"
#include "btv/errors.hpp"
#include "btv/pbin.hpp"

namespace btv {

namespace {

constexpr double kViolationTol = 1e-12;
constexpr double kBoundaryProb = 0.25;

double normalized(const BoundEntry& e) {
  return e.margin / std::max(1.0, std::abs(e.rhs));
}

// One trial's normalized margins plus the sampled instance for reporting.
struct TrialResult {
  std::vector<double> margins;
  std::optional<ParamPair> instance;
};

void append_entries(const std::vector<BoundEntry>& entries,
                    std::vector<double>& margins) {
  for (const auto& e : entries) {
    margins.push_back(normalized(e));
  }
}

ParamVec sample_box(int n, double bound, SplitMix64& rng,
                    bool boundary_biased) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& entry : v) {
    entry = rng.uniform(bound);
    if (boundary_biased && rng.chance(kBoundaryProb)) {
      entry = bound;
    }
  }
  return ParamVec(std::move(v));
}

TrialResult evaluate_trial(TheoremId id, int n, SampleDomain domain,
                           SplitMix64& rng, const VerifyOptions& opt,
                           bool force) {
  const EnumerationConfig& cfg = opt.enumeration;
  TrialResult result;

  // The Poisson-binomial lemmas sample within their own hypothesis box
  // r in [0, 1/(N+1)]^N rather than a pair domain.
  if (id == TheoremId::PbinExtremum || id == TheoremId::PbinMonotone) {
    const double cap = 1.0 / (n + 1);
    double lambda = rng.uniform(cap);
    if (opt.boundary_biased && rng.chance(kBoundaryProb)) {
      lambda = cap;
    }
    const ParamVec r = sample_box(n, lambda, rng, opt.boundary_biased);
    const PoissonBinomial pb(r);
    const std::vector<double> f = pmf(pb);
    if (id == TheoremId::PbinExtremum) {
      for (int m = 1; m <= n; ++m) {
        const double bound = pmf_extremal_bound(n, lambda, m);
        result.margins.push_back(bound - f[static_cast<std::size_t>(m)]);
      }
    } else {
      for (int m = 1; m <= n; ++m) {
        result.margins.push_back(f[static_cast<std::size_t>(m - 1)] -
                                 f[static_cast<std::size_t>(m)]);
      }
    }
    result.instance = ParamPair(
        r, ParamVec(std::vector<double>(static_cast<std::size_t>(n), lambda)));
    return result;
  }

  ParamPair pair = sample_pair(n, domain, rng, opt.boundary_biased);
  switch (id) {
    case TheoremId::TinySandwich: {
      const double tv = tv_exact(pair, cfg);
      append_entries(check_tiny_sandwich(pair, tv, force), result.margins);
      break;
    }
    case TheoremId::SmallSandwich: {
      const double tv = tv_exact(pair, cfg);
      append_entries(
          check_small_sandwich(pair, delta1_closed_form(pair), tv, force),
          result.margins);
      break;
    }
    case TheoremId::Delta0: {
      const double delta0 = std::abs(slice_delta(pair, SubsetIndex(0, n)));
      result.margins.push_back(normalized(
          check_delta0_bound(pair, delta0, delta1_closed_form(pair), force)));
      break;
    }
    case TheoremId::Delta2: {
      const double delta2 = slice_discrepancy(pair, 2, cfg);
      result.margins.push_back(normalized(
          check_delta2_bound(pair, delta2, delta1_closed_form(pair), force)));
      break;
    }
    case TheoremId::L1Delta1: {
      result.margins.push_back(normalized(make_bound_entry(
          "l1_vs_delta1", l1_distance(pair),
          k_of_n(n) * delta1_closed_form(pair), !force)));
      break;
    }
    case TheoremId::UniversalSlices:
    case TheoremId::SumSlices: {
      const SliceReport report = full_slice_report(pair, cfg);
      auto entries = check_universal_slice_bounds(pair, report, force);
      if (id == TheoremId::UniversalSlices) {
        entries.pop_back();  // per-k bounds only; the tail is SumSlices
        append_entries(entries, result.margins);
      } else {
        result.margins.push_back(normalized(entries.back()));
      }
      break;
    }
    case TheoremId::Sqrt2: {
      const double tv = tv_exact(pair, cfg);
      result.margins.push_back(
          normalized(check_sqrt2_bound(pair, tv, force)));
      break;
    }
    case TheoremId::BCTensor: {
      const double product = bhattacharyya_coefficient(pair);
      const double atoms = bhattacharyya_atom_sum(pair, cfg);
      const double scale =
          std::max(product, std::numeric_limits<double>::min());
      result.margins.push_back(-std::abs(atoms - product) / scale);
      const double tv = tv_exact(pair, cfg);
      result.margins.push_back(tv_bc_bound(pair) - tv);
      break;
    }
    case TheoremId::SliceIdentity: {
      const SliceReport report = full_slice_report(pair, cfg);
      result.margins.push_back(-report.identity_residual /
                               std::max(1.0, 2.0 * report.tv));
      break;
    }
    case TheoremId::AuxIdentity: {
      const bool small = classify_regime(pair).tag != RegimeTag::General;
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          const AuxIdentityResult aux = delta2_auxiliary_identity(pair, a, b);
          result.margins.push_back(-aux.identity_residual);
          // The expanded odds form is well-conditioned only when all odds
          // are bounded (entries <= 1/(2n)); skip it for general pairs.
          if (small && aux.expanded_residual) {
            result.margins.push_back(-*aux.expanded_residual);
          }
        }
      }
      break;
    }
    case TheoremId::OneDIdentity: {
      for (int i = 0; i < n; ++i) {
        result.margins.push_back(
            -one_d_identity_residual(pair.p()[i], pair.q()[i]));
      }
      break;
    }
    default:
      throw InvalidParameter("unknown theorem id");
  }
  result.instance = std::move(pair);
  return result;
}

}  // namespace

SplitMix64 SplitMix64::stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 seeder(seed + 0x9E3779B97F4A7C15ull * (index + 1));
  return SplitMix64(seeder.next());
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

const char* to_string(SampleDomain domain) {
  switch (domain) {
    case SampleDomain::Tiny:
      return "tiny";
    case SampleDomain::Small:
      return "small";
    case SampleDomain::General:
      return "general";
    case SampleDomain::QuasiSymmetric:
      return "quasisym";
  }
  return "?";
}

namespace {

struct TheoremRow {
  TheoremId id;
  TheoremInfo info;
};

const TheoremRow kTheorems[] = {
    {TheoremId::TinySandwich, {"TinySandwich", SampleDomain::Tiny, 1}},
    {TheoremId::SmallSandwich, {"SmallSandwich", SampleDomain::Small, 2}},
    {TheoremId::Delta0, {"Delta0", SampleDomain::Small, 2}},
    {TheoremId::Delta2, {"Delta2", SampleDomain::Small, 2}},
    {TheoremId::L1Delta1, {"L1Delta1", SampleDomain::Small, 2}},
    {TheoremId::UniversalSlices, {"UniversalSlices", SampleDomain::Small, 2}},
    {TheoremId::SumSlices, {"SumSlices", SampleDomain::Small, 2}},
    {TheoremId::PbinExtremum, {"PbinExtremum", SampleDomain::General, 1}},
    {TheoremId::PbinMonotone, {"PbinMonotone", SampleDomain::General, 1}},
    {TheoremId::Sqrt2, {"Sqrt2", SampleDomain::QuasiSymmetric, 1}},
    {TheoremId::BCTensor, {"BCTensor", SampleDomain::General, 1}},
    {TheoremId::SliceIdentity, {"SliceIdentity", SampleDomain::General, 1}},
    {TheoremId::AuxIdentity, {"AuxIdentity", SampleDomain::General, 2}},
    {TheoremId::OneDIdentity, {"OneDIdentity", SampleDomain::General, 1}},
};

}  // namespace

const char* to_string(TheoremId id) { return theorem_info(id).name; }

std::optional<TheoremId> theorem_from_string(std::string_view name) {
  for (const auto& row : kTheorems) {
    if (name == row.info.name) {
      return row.id;
    }
  }
  return std::nullopt;
}

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> v;
    for (const auto& row : kTheorems) {
      v.push_back(row.id);
    }
    return v;
  }();
  return ids;
}

const TheoremInfo& theorem_info(TheoremId id) {
  for (const auto& row : kTheorems) {
    if (row.id == id) {
      return row.info;
    }
  }
  throw InvalidParameter("unknown theorem id");
}

ParamPair sample_pair(int n, SampleDomain domain, SplitMix64& rng,
                      bool boundary_biased) {
  if (n < 1) {
    throw NTooSmall("n must be at least 1");
  }
  if (domain == SampleDomain::Small && n < 2) {
    throw NTooSmall("small-regime sampling requires n >= 2");
  }
  if (domain == SampleDomain::QuasiSymmetric) {
    std::vector<double> p(static_cast<std::size_t>(n));
    std::vector<double> q(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const std::size_t u = static_cast<std::size_t>(i);
      p[u] = 0.5 + rng.uniform(0.5);
      q[u] = rng.uniform(0.5);
      if (boundary_biased && rng.chance(kBoundaryProb)) {
        p[u] = rng.chance(0.5) ? 1.0 : 0.5;
      }
      if (boundary_biased && rng.chance(kBoundaryProb)) {
        q[u] = rng.chance(0.5) ? 0.0 : 0.5;
      }
      if (rng.chance(0.5)) {
        p[u] = 1.0 - p[u];
        q[u] = 1.0 - q[u];
      }
    }
    return ParamPair(ParamVec(std::move(p)), ParamVec(std::move(q)));
  }
  double bound = 1.0;
  if (domain == SampleDomain::Tiny) {
    bound = 1.0 / (static_cast<double>(n) * n);
  } else if (domain == SampleDomain::Small) {
    bound = 1.0 / (2.0 * n);
  }
  ParamVec p = sample_box(n, bound, rng, boundary_biased);
  ParamVec q = sample_box(n, bound, rng, boundary_biased);
  return ParamPair(std::move(p), std::move(q));
}

VerifyRun run_verification(TheoremId id, const VerifyOptions& options) {
  const TheoremInfo& info = theorem_info(id);
  if (options.n_min < info.min_n) {
    throw NTooSmall(std::string(info.name) + " requires n >= " +
                    std::to_string(info.min_n));
  }
  if (options.n_min > options.n_max) {
    throw InvalidParameter("n-min exceeds n-max");
  }
  if (options.trials < 1) {
    throw InvalidParameter("trials must be positive");
  }
  const SampleDomain domain = options.domain_override.value_or(info.domain);
  const bool force = domain != info.domain;

  VerifyRun run;
  run.theorem = id;
  run.n_min = options.n_min;
  run.n_max = options.n_max;
  run.seed = options.seed;
  run.out_of_regime = force;
  run.worst_margin = std::numeric_limits<double>::infinity();

  std::optional<ParamPair> worst_candidate;
  for (int n = options.n_min; n <= options.n_max; ++n) {
    for (int t = 0; t < options.trials; ++t) {
      SplitMix64 rng = SplitMix64::stream(
          options.seed, (static_cast<std::uint64_t>(n) << 32) |
                            static_cast<std::uint64_t>(t));
      TrialResult trial = evaluate_trial(id, n, domain, rng, options, force);
      ++run.trials;
      double trial_min = std::numeric_limits<double>::infinity();
      for (const double m : trial.margins) {
        trial_min = std::min(trial_min, m);
      }
      if (trial_min < -kViolationTol) {
        ++run.violations;
      }
      if (trial_min < run.worst_margin) {
        run.worst_margin = trial_min;
        run.worst_n = n;
        run.worst_trial = t;
        worst_candidate = std::move(trial.instance);
      }
    }
  }
  if (run.violations > 0) {
    run.worst_case = std::move(worst_candidate);
  }
  return run;
}

}  // namespace btv

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "btv/core.hpp"
#include "btv/enumerate.hpp"

namespace btv {

/// Counter-based splittable generator (splitmix64 finalizer). stream(seed,
/// index) yields a generator independent of any other index, so trial
/// streams do not depend on evaluation order.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next();

  /// Uniform in [0,1), 53 random bits.
  double uniform();

  /// Uniform in [0,bound).
  double uniform(double bound) { return bound * uniform(); }

  /// True with probability prob.
  bool chance(double prob) { return uniform() < prob; }

 private:
  std::uint64_t state_;
};

/// Sampling box for randomized trials. Tiny/Small/General draw each entry
/// uniformly from [0, 1/n^2], [0, 1/(2n)], [0, 1]; QuasiSymmetric draws
/// coordinate pairs straddling 1/2 with a random joint reflection.
enum class SampleDomain { Tiny, Small, General, QuasiSymmetric };

const char* to_string(SampleDomain domain);

enum class TheoremId {
  TinySandwich,
  SmallSandwich,
  Delta0,
  Delta2,
  L1Delta1,
  UniversalSlices,
  SumSlices,
  PbinExtremum,
  PbinMonotone,
  Sqrt2,
  BCTensor,
  SliceIdentity,
  AuxIdentity,
  OneDIdentity,
};

const char* to_string(TheoremId id);
std::optional<TheoremId> theorem_from_string(std::string_view name);
const std::vector<TheoremId>& all_theorems();

struct TheoremInfo {
  const char* name;
  SampleDomain domain;  // default sampling box
  int min_n;            // smallest n the statement covers
};

const TheoremInfo& theorem_info(TheoremId id);

struct VerifyOptions {
  int n_min = 2;
  int n_max = 10;
  int trials = 1000;  // per n
  std::uint64_t seed = 0;
  bool boundary_biased = false;
  std::optional<SampleDomain> domain_override;
  EnumerationConfig enumeration;
};

/// Aggregate of one randomized verification run. A trial violates when any
/// of its normalized margins falls below -1e-12; worst_margin is the
/// smallest margin seen, with ties broken by lowest (n, trial).
struct VerifyRun {
  TheoremId theorem{};
  int n_min = 0;
  int n_max = 0;
  long long trials = 0;  // total across all n
  std::uint64_t seed = 0;
  bool out_of_regime = false;  // sampling domain overrode the theorem's
  long long violations = 0;
  double worst_margin = 0.0;
  int worst_n = 0;
  long long worst_trial = 0;
  std::optional<ParamPair> worst_case;  // populated when violations > 0
};

/// Draw a pair from the domain's box. boundary_biased pins a random subset
/// of entries to the box boundary, where extremal behavior concentrates.
ParamPair sample_pair(int n, SampleDomain domain, SplitMix64& rng,
                      bool boundary_biased = false);

/// Run options.trials seeded trials for every n in [n_min, n_max],
/// evaluating the theorem's inequalities or identities against the
/// enumeration oracle. Identical inputs reproduce identical results.
VerifyRun run_verification(TheoremId id, const VerifyOptions& options);

}  // namespace btv

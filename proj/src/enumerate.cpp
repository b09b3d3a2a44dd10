#include "btv/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "btv/kahan.hpp"

namespace btv {

namespace {

constexpr int kFallbackLimit = 26;

// Chunk layout is a function of n only, never of the worker count, so that
// per-chunk compensated sums merged in fixed chunk order give bit-identical
// results for any number of workers.
constexpr int kChunkThreshold = 16;
constexpr int kChunkBits = 8;

int chunk_bits_for(int n) { return n >= kChunkThreshold ? kChunkBits : 0; }

void check_limit(int n, int limit) {
  if (n > limit) {
    throw DimensionTooLarge("n = " + std::to_string(n) +
                            " exceeds the enumeration limit " +
                            std::to_string(limit));
  }
}

struct ChunkAccum {
  KahanSum tv;
  std::vector<KahanSum> per_slice;  // empty unless slices requested
};

// Depth-first half-split over the first `level` coordinates: the 0-branch
// (i not in S, factor 1-y_i) precedes the 1-branch. fp/fq carry the partial
// products, so each atom mass is a fresh product of at most n factors.
template <bool WithSlices>
void descend(const double* p, const double* q, int level, double fp, double fq,
             int ones, ChunkAccum& acc) {
  if (level == 0) {
    const double d = std::abs(fp - fq);
    acc.tv.add(d);
    if constexpr (WithSlices) {
      acc.per_slice[static_cast<std::size_t>(ones)].add(d);
    }
    return;
  }
  const int i = level - 1;
  descend<WithSlices>(p, q, i, fp * (1.0 - p[i]), fq * (1.0 - q[i]), ones, acc);
  descend<WithSlices>(p, q, i, fp * p[i], fq * q[i], ones + 1, acc);
}

// Chunk `id` fixes the top `bits` coordinates: bit j of id decides whether
// coordinate n-1-j is in S.
template <bool WithSlices>
void run_chunk(const ParamPair& pair, int bits, std::uint64_t id,
               ChunkAccum& acc) {
  const int n = pair.n();
  const double* p = pair.p().values().data();
  const double* q = pair.q().values().data();
  double fp = 1.0;
  double fq = 1.0;
  int ones = 0;
  for (int j = 0; j < bits; ++j) {
    const int coord = n - 1 - j;
    if ((id >> j) & 1u) {
      fp *= p[coord];
      fq *= q[coord];
      ++ones;
    } else {
      fp *= 1.0 - p[coord];
      fq *= 1.0 - q[coord];
    }
  }
  descend<WithSlices>(p, q, n - bits, fp, fq, ones, acc);
}

template <bool WithSlices>
std::vector<ChunkAccum> enumerate_all(const ParamPair& pair,
                                      const EnumerationConfig& config) {
  const int n = pair.n();
  check_limit(n, config.limit);

  const int bits = chunk_bits_for(n);
  const std::uint64_t chunks = std::uint64_t{1} << bits;

  std::vector<ChunkAccum> results(chunks);
  if constexpr (WithSlices) {
    for (auto& r : results) {
      r.per_slice.resize(static_cast<std::size_t>(n) + 1);
    }
  }

  int workers = config.workers;
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
  }
  workers = std::clamp<int>(workers, 1, static_cast<int>(chunks));

  if (workers == 1) {
    for (std::uint64_t id = 0; id < chunks; ++id) {
      run_chunk<WithSlices>(pair, bits, id, results[id]);
    }
    return results;
  }

  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::uint64_t id = next.fetch_add(1, std::memory_order_relaxed);
        if (id >= chunks) return;
        run_chunk<WithSlices>(pair, bits, id, results[id]);
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  return results;
}

std::uint64_t next_k_subset(std::uint64_t mask) {
  // Gosper's hack: next mask with the same popcount in lexicographic order.
  const std::uint64_t u = mask & (~mask + 1);
  const std::uint64_t v = mask + u;
  return v | (((v ^ mask) >> 2) / u);
}

}  // namespace

int default_enumeration_limit() {
  static const int limit = [] {
    if (const char* env = std::getenv("BERNOULLI_TV_ENUM_LIMIT")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v >= 1 && v <= 62) return static_cast<int>(v);
    }
    return kFallbackLimit;
  }();
  return limit;
}

double slice_delta(const ParamPair& pair, const SubsetIndex& s) {
  if (s.universe() != pair.n()) {
    throw DimensionMismatch("subset universe " + std::to_string(s.universe()) +
                            " does not match pair length " +
                            std::to_string(pair.n()));
  }
  return atom_mass(pair.p(), s) - atom_mass(pair.q(), s);
}

double slice_discrepancy(const ParamPair& pair, int k,
                         const EnumerationConfig& config) {
  const int n = pair.n();
  if (k < 0 || k > n) {
    throw InvalidParameter("slice index k = " + std::to_string(k) +
                           " out of range [0," + std::to_string(n) + "]");
  }
  check_limit(n, config.limit);

  const double* p = pair.p().values().data();
  const double* q = pair.q().values().data();
  KahanSum sum;
  const auto visit = [&](std::uint64_t mask) {
    double fp = 1.0;
    double fq = 1.0;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) {
        fp *= p[i];
        fq *= q[i];
      } else {
        fp *= 1.0 - p[i];
        fq *= 1.0 - q[i];
      }
    }
    sum.add(std::abs(fp - fq));
  };

  if (k == 0) {
    visit(0);
    return sum.value();
  }
  const std::uint64_t end = std::uint64_t{1} << n;
  for (std::uint64_t mask = (std::uint64_t{1} << k) - 1; mask < end;
       mask = next_k_subset(mask)) {
    visit(mask);
  }
  return sum.value();
}

double tv_exact(const ParamPair& pair, const EnumerationConfig& config) {
  const auto chunks = enumerate_all<false>(pair, config);
  KahanSum total;
  for (const auto& c : chunks) {
    total.add_compensated(c.tv);
  }
  return std::clamp(0.5 * total.value(), 0.0, 1.0);
}

SliceReport full_slice_report(const ParamPair& pair,
                              const EnumerationConfig& config) {
  const int n = pair.n();
  const auto chunks = enumerate_all<true>(pair, config);

  SliceReport report;
  report.n = n;
  report.delta.resize(static_cast<std::size_t>(n) + 1);

  KahanSum total;
  for (const auto& c : chunks) {
    total.add_compensated(c.tv);
  }
  report.tv = std::clamp(0.5 * total.value(), 0.0, 1.0);

  KahanSum delta_sum;
  for (int k = 0; k <= n; ++k) {
    KahanSum dk;
    for (const auto& c : chunks) {
      dk.add_compensated(c.per_slice[static_cast<std::size_t>(k)]);
    }
    report.delta[static_cast<std::size_t>(k)] = dk.value();
    delta_sum.add(dk.value());
  }
  report.identity_residual = std::abs(2.0 * report.tv - delta_sum.value());
  return report;
}

}  // namespace btv

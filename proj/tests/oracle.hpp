// Brute-force reference implementations used to cross-check the library.
// Everything here is a direct transcription of a definition: plain mask
// loops, naive long double accumulation, no shared code with src/.
#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracle {

inline long double mass(const std::vector<double>& y, std::uint64_t mask) {
    long double m = 1.0L;
    for (std::size_t i = 0; i < y.size(); ++i) {
        m *= (mask >> i & 1u) ? static_cast<long double>(y[i])
                              : 1.0L - static_cast<long double>(y[i]);
    }
    return m;
}

inline double tv(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw std::invalid_argument("length mismatch");
    const std::uint64_t atoms = std::uint64_t{1} << p.size();
    long double sum = 0.0L;
    for (std::uint64_t mask = 0; mask < atoms; ++mask) {
        const long double d = mass(p, mask) - mass(q, mask);
        sum += d < 0 ? -d : d;
    }
    return static_cast<double>(sum / 2.0L);
}

inline double slice(const std::vector<double>& p, const std::vector<double>& q,
                    int k) {
    const std::uint64_t atoms = std::uint64_t{1} << p.size();
    long double sum = 0.0L;
    for (std::uint64_t mask = 0; mask < atoms; ++mask) {
        if (std::popcount(mask) != k) continue;
        const long double d = mass(p, mask) - mass(q, mask);
        sum += d < 0 ? -d : d;
    }
    return static_cast<double>(sum);
}

// P[X = m] for independent Bernoulli(r_i), by summing subset masses.
inline std::vector<double> pmf(const std::vector<double>& r) {
    std::vector<long double> acc(r.size() + 1, 0.0L);
    const std::uint64_t atoms = std::uint64_t{1} << r.size();
    for (std::uint64_t mask = 0; mask < atoms; ++mask) {
        acc[static_cast<std::size_t>(std::popcount(mask))] += mass(r, mask);
    }
    std::vector<double> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<double>(acc[i]);
    return out;
}

// e_m(a): sum of products over all m-element subsets, by definition.
inline double elementary_symmetric(const std::vector<double>& a, int m) {
    if (m == 0) return 1.0;
    const std::uint64_t atoms = std::uint64_t{1} << a.size();
    long double sum = 0.0L;
    for (std::uint64_t mask = 0; mask < atoms; ++mask) {
        if (std::popcount(mask) != m) continue;
        long double prod = 1.0L;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (mask >> i & 1u) prod *= static_cast<long double>(a[i]);
        }
        sum += prod;
    }
    return static_cast<double>(sum);
}

inline double bhattacharyya_atoms(const std::vector<double>& p,
                                  const std::vector<double>& q) {
    const std::uint64_t atoms = std::uint64_t{1} << p.size();
    long double sum = 0.0L;
    for (std::uint64_t mask = 0; mask < atoms; ++mask) {
        sum += std::sqrt(mass(p, mask) * mass(q, mask));
    }
    return static_cast<double>(sum);
}

}  // namespace oracle

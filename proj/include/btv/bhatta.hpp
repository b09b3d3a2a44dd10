#pragma once

#include <vector>

#include "btv/bounds.hpp"
#include "btv/core.hpp"
#include "btv/enumerate.hpp"

namespace btv {

/// Outcome of the quasi-symmetry test. A pair is quasi-symmetric when every
/// coordinate pair straddles 1/2 (non-strictly). reflected_pair has each
/// coordinate oriented so that p_i >= 1/2 >= q_i; it is meaningful only
/// when is_quasi_symmetric holds.
struct QuasiSymmetryCertificate {
  bool is_quasi_symmetric = false;
  ParamPair reflected_pair;
  std::vector<int> offending_indices;  // empty iff quasi-symmetric
};

/// Product over i of sqrt(p_i q_i) + sqrt((1-p_i)(1-q_i)), in [0,1].
double bhattacharyya_coefficient(const ParamPair& pair);

/// The same coefficient as the atom sum over all 2^n subsets of
/// sqrt(P_S(p) P_S(q)); the enumeration-side witness of tensorization.
double bhattacharyya_atom_sum(const ParamPair& pair,
                              const EnumerationConfig& config = {});

/// sqrt(1 - BC^2), an upper bound on tv for every pair; the radicand is
/// clamped at 0 against roundoff.
double tv_bc_bound(const ParamPair& pair);

/// Residual of 1 - b(p,q)^2 = (sqrt(p(1-q)) - sqrt(q(1-p)))^2 for scalar
/// p, q; also checks the fraction form (p-q)^2 / (sqrt(p(1-q)) +
/// sqrt(q(1-p)))^2 when the denominator is nonzero, returning the larger
/// residual.
double one_d_identity_residual(double p, double q);

/// Detect quasi-symmetry and build the reflected pair (coordinates with
/// q_i above 1/2 are flipped by y -> 1 - y, jointly in p and q).
QuasiSymmetryCertificate quasi_symmetry(const ParamPair& pair);

/// Quasi-symmetric pairs: tv <= sqrt(2) * l2. Throws NotQuasiSymmetric
/// unless force is set.
BoundEntry check_sqrt2_bound(const ParamPair& pair, double tv,
                             bool force = false);

}  // namespace btv

#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "btv/bhatta.hpp"
#include "btv/bounds.hpp"
#include "btv/core.hpp"
#include "btv/enumerate.hpp"
#include "btv/errors.hpp"
#include "btv/pbin.hpp"
#include "btv/verify.hpp"

namespace py = pybind11;

namespace {

using namespace btv;

ParamPair make_pair(const std::vector<double>& p,
                    const std::vector<double>& q) {
  return ParamPair(ParamVec(p), ParamVec(q));
}

EnumerationConfig make_config(int limit, int workers) {
  EnumerationConfig cfg;
  if (limit > 0) {
    cfg.limit = limit;
  }
  cfg.workers = workers;
  return cfg;
}

SampleDomain domain_from_string(const std::string& name) {
  if (name == "tiny") return SampleDomain::Tiny;
  if (name == "small") return SampleDomain::Small;
  if (name == "general") return SampleDomain::General;
  if (name == "quasisym") return SampleDomain::QuasiSymmetric;
  throw InvalidParameter("unknown domain \"" + name +
                         "\" (tiny|small|general|quasisym)");
}

py::dict regime_dict(const Regime& regime) {
  py::dict d;
  d["tag"] = std::string(to_string(regime.tag));
  d["lambda_n"] = regime.lambda_n;
  d["beta_n"] = regime.beta_n;
  return d;
}

py::dict entry_dict(const BoundEntry& e) {
  py::dict d;
  d["name"] = e.name;
  d["lhs"] = e.lhs;
  d["rhs"] = e.rhs;
  d["margin"] = e.margin;
  d["satisfied"] = e.satisfied;
  d["in_regime"] = e.in_regime;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Exact total variation distance between Bernoulli product measures, "
      "Hamming-slice decomposition, and bound verification.";

  py::register_exception<Error>(m, "Error");

  m.def(
      "tv_exact",
      [](const std::vector<double>& p, const std::vector<double>& q, int limit,
         int workers) { return tv_exact(make_pair(p, q), make_config(limit, workers)); },
      py::arg("p"), py::arg("q"), py::arg("limit") = 0, py::arg("workers") = 0,
      "Exact TV distance between Ber(p) and Ber(q) by atom enumeration.");

  m.def(
      "full_slice_report",
      [](const std::vector<double>& p, const std::vector<double>& q, int limit,
         int workers) {
        const SliceReport r =
            full_slice_report(make_pair(p, q), make_config(limit, workers));
        py::dict d;
        d["n"] = r.n;
        d["delta"] = r.delta;
        d["tv"] = r.tv;
        d["identity_residual"] = r.identity_residual;
        return d;
      },
      py::arg("p"), py::arg("q"), py::arg("limit") = 0, py::arg("workers") = 0,
      "All slice discrepancies Delta_0..Delta_n plus exact TV.");

  m.def(
      "slice_discrepancy",
      [](const std::vector<double>& p, const std::vector<double>& q, int k) {
        return slice_discrepancy(make_pair(p, q), k);
      },
      py::arg("p"), py::arg("q"), py::arg("k"),
      "Delta_k, the absolute discrepancy over the Hamming slice k.");

  m.def(
      "slice_delta",
      [](const std::vector<double>& p, const std::vector<double>& q,
         std::uint64_t mask) {
        const ParamPair pair = make_pair(p, q);
        return slice_delta(pair, SubsetIndex(mask, pair.n()));
      },
      py::arg("p"), py::arg("q"), py::arg("mask"),
      "Signed atom discrepancy P_S(p) - P_S(q) for the bitmask subset S.");

  m.def(
      "atom_mass",
      [](const std::vector<double>& y, std::uint64_t mask) {
        const ParamVec v{y};
        return atom_mass(v, SubsetIndex(mask, v.n()));
      },
      py::arg("y"), py::arg("mask"),
      "Mass Ber(y) assigns to the atom with ones exactly on the mask.");

  m.def(
      "classify_regime",
      [](const std::vector<double>& p, const std::vector<double>& q) {
        return regime_dict(classify_regime(make_pair(p, q)));
      },
      py::arg("p"), py::arg("q"),
      "Regime tag (tiny/small/general) with lambda_n and beta_n.");

  m.def(
      "l1_distance",
      [](const std::vector<double>& p, const std::vector<double>& q) {
        return l1_distance(make_pair(p, q));
      },
      py::arg("p"), py::arg("q"));

  m.def(
      "l2_distance",
      [](const std::vector<double>& p, const std::vector<double>& q) {
        return l2_distance(make_pair(p, q));
      },
      py::arg("p"), py::arg("q"));

  m.def(
      "delta1_closed_form",
      [](const std::vector<double>& p, const std::vector<double>& q) {
        return delta1_closed_form(make_pair(p, q));
      },
      py::arg("p"), py::arg("q"), "Delta_1 in O(n) via prefix/suffix products.");

  m.def(
      "evaluate_bounds",
      [](const std::vector<double>& p, const std::vector<double>& q, int limit,
         int workers) {
        const BoundReport r =
            evaluate_bounds(make_pair(p, q), make_config(limit, workers));
        py::dict d;
        d["regime"] = regime_dict(r.regime);
        d["n"] = r.n;
        d["tv"] = r.tv;
        d["l1"] = r.l1;
        d["l2"] = r.l2;
        d["delta0"] = r.delta0;
        d["delta1"] = r.delta1;
        d["delta2"] = r.delta2;
        py::list entries;
        for (const auto& e : r.entries) {
          entries.append(entry_dict(e));
        }
        d["entries"] = entries;
        return d;
      },
      py::arg("p"), py::arg("q"), py::arg("limit") = 0, py::arg("workers") = 0,
      "Every applicable bound with lhs/rhs/margin, plus scalar statistics.");

  m.def(
      "bk_sequence",
      [](int n) {
        const BkSequence seq = bk_sequence(n);
        py::dict d;
        d["n"] = seq.n;
        d["by_recurrence"] = seq.by_recurrence;
        d["by_closed_form"] = seq.by_closed_form;
        d["sum_tail"] = seq.sum_tail;
        return d;
      },
      py::arg("n"), "B_1..B_n by recurrence and closed form, with tail sum.");

  m.def("k_of_n", &k_of_n, py::arg("n"),
        "K(n) with l1 <= K(n) Delta_1 in the small regime.");
  m.def("delta2_coefficient", &delta2_coefficient, py::arg("n"),
        "The coefficient 3(n-1)/(2(2n-1)) bounding Delta_2/Delta_1.");

  m.def(
      "delta2_auxiliary_identity",
      [](const std::vector<double>& p, const std::vector<double>& q, int a,
         int b) {
        const AuxIdentityResult r =
            delta2_auxiliary_identity(make_pair(p, q), a, b);
        py::dict d;
        d["identity_residual"] = r.identity_residual;
        d["expanded_residual"] =
            r.expanded_residual ? py::cast(*r.expanded_residual)
                                : py::none();
        return d;
      },
      py::arg("p"), py::arg("q"), py::arg("a"), py::arg("b"),
      "Residuals of the singleton/doubleton auxiliary identity.");

  m.def("pmf", [](const std::vector<double>& r) { return pmf(PoissonBinomial(ParamVec(r))); },
        py::arg("r"), "Poisson-binomial pmf P[X=m] for m = 0..N.");

  m.def(
      "elementary_symmetric",
      [](const std::vector<double>& a, int m) {
        return elementary_symmetric(OddsVec(a), m);
      },
      py::arg("a"), py::arg("m"));

  m.def(
      "odds",
      [](const std::vector<double>& r) {
        return OddsVec::from_probabilities(ParamVec(r)).values();
      },
      py::arg("r"), "Odds r_i/(1 - r_i); requires every r_i < 1.");

  m.def(
      "pmf_is_nonincreasing",
      [](const std::vector<double>& r) {
        const MonotonicityCheck c =
            pmf_is_nonincreasing(PoissonBinomial(ParamVec(r)));
        return py::make_tuple(c.nonincreasing, c.first_violation);
      },
      py::arg("r"),
      "(nonincreasing, first_violation) under the sum-of-odds <= 1 "
      "hypothesis.");

  m.def("pmf_extremal_bound", &pmf_extremal_bound, py::arg("n"),
        py::arg("lam"), py::arg("m"),
        "C(N,m) lambda^m (1-lambda)^(N-m), the maximum over r in "
        "[0,lambda]^N.");

  m.def(
      "pmf_coordinate_derivative",
      [](const std::vector<double>& r, int j, int m) {
        return pmf_coordinate_derivative(PoissonBinomial(ParamVec(r)), j, m);
      },
      py::arg("r"), py::arg("j"), py::arg("m"),
      "d P[X=m] / d r_j via the leave-one-out pmf.");

  m.def("binomial_coefficient", &binomial_coefficient, py::arg("n"),
        py::arg("k"));

  m.def(
      "bhattacharyya_coefficient",
      [](const std::vector<double>& p, const std::vector<double>& q) {
        return bhattacharyya_coefficient(make_pair(p, q));
      },
      py::arg("p"), py::arg("q"),
      "Product over coordinates of sqrt(p q) + sqrt((1-p)(1-q)).");

  m.def(
      "tv_bc_bound",
      [](const std::vector<double>& p, const std::vector<double>& q) {
        return tv_bc_bound(make_pair(p, q));
      },
      py::arg("p"), py::arg("q"), "sqrt(1 - BC^2), an upper bound on TV.");

  m.def("one_d_identity_residual", &one_d_identity_residual, py::arg("p"),
        py::arg("q"));

  m.def(
      "quasi_symmetry",
      [](const std::vector<double>& p, const std::vector<double>& q) {
        const QuasiSymmetryCertificate c = quasi_symmetry(make_pair(p, q));
        py::dict d;
        d["is_quasi_symmetric"] = c.is_quasi_symmetric;
        d["reflected_p"] = c.reflected_pair.p().values();
        d["reflected_q"] = c.reflected_pair.q().values();
        d["offending_indices"] = c.offending_indices;
        return d;
      },
      py::arg("p"), py::arg("q"),
      "Quasi-symmetry certificate with the reflected pair.");

  m.def(
      "theorems",
      [] {
        std::vector<std::string> names;
        for (const TheoremId id : all_theorems()) {
          names.emplace_back(to_string(id));
        }
        return names;
      },
      "Names accepted by run_verification.");

  m.def(
      "run_verification",
      [](const std::string& theorem, int n_min, int n_max, int trials,
         std::uint64_t seed, bool boundary_biased,
         const std::optional<std::string>& domain) {
        const auto id = theorem_from_string(theorem);
        if (!id) {
          throw InvalidParameter("unknown theorem \"" + theorem + "\"");
        }
        VerifyOptions opt;
        opt.n_min = n_min;
        opt.n_max = n_max;
        opt.trials = trials;
        opt.seed = seed;
        opt.boundary_biased = boundary_biased;
        if (domain) {
          opt.domain_override = domain_from_string(*domain);
        }
        const VerifyRun run = run_verification(*id, opt);
        py::dict d;
        d["theorem"] = std::string(to_string(run.theorem));
        d["n_min"] = run.n_min;
        d["n_max"] = run.n_max;
        d["trials"] = run.trials;
        d["seed"] = run.seed;
        d["out_of_regime"] = run.out_of_regime;
        d["violations"] = run.violations;
        d["worst_margin"] = run.worst_margin;
        d["worst_n"] = run.worst_n;
        d["worst_trial"] = run.worst_trial;
        if (run.worst_case) {
          d["worst_p"] = run.worst_case->p().values();
          d["worst_q"] = run.worst_case->q().values();
        }
        return d;
      },
      py::arg("theorem"), py::arg("n_min"), py::arg("n_max"),
      py::arg("trials"), py::arg("seed"), py::arg("boundary_biased") = false,
      py::arg("domain") = py::none(),
      "Seeded randomized verification; identical inputs reproduce identical "
      "results.");

  m.def("default_enumeration_limit", &default_enumeration_limit);
}

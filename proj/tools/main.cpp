#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "btv/bhatta.hpp"
#include "btv/bounds.hpp"
#include "btv/core.hpp"
#include "btv/enumerate.hpp"
#include "btv/errors.hpp"
#include "btv/io.hpp"
#include "btv/kahan.hpp"
#include "btv/verify.hpp"

namespace {

using namespace btv;

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTooLarge = 3;

void write_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    throw ParseError("cannot write output file: " + out_path);
  }
  file << text;
  file.flush();
  if (!file) {
    throw ParseError("cannot write output file: " + out_path);
  }
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

void print_scalar(const char* name, const std::string& value) {
  std::cout << pad(name, 14) << value << "\n";
}

void print_scalar(const char* name, double value) {
  print_scalar(name, format_double(value));
}

void print_entries(const std::vector<BoundEntry>& entries) {
  if (entries.empty()) {
    return;
  }
  std::cout << "bounds (lhs <= rhs):\n";
  std::cout << "  " << pad("name", 16) << pad("lhs", 24) << pad("rhs", 24)
            << pad("margin", 24) << "status\n";
  for (const auto& e : entries) {
    std::string status = e.satisfied ? "ok" : "VIOLATED";
    if (!e.in_regime) {
      status += " (out of regime)";
    }
    std::cout << "  " << pad(e.name, 16) << pad(format_double(e.lhs), 24)
              << pad(format_double(e.rhs), 24)
              << pad(format_double(e.margin), 24) << status << "\n";
  }
}

struct TvOptions {
  std::string input;
  bool exact = false;
  bool bounds = false;
  bool all = false;
  int enum_limit = 0;
  int workers = 0;
};

EnumerationConfig enum_config(int limit, int workers) {
  EnumerationConfig cfg;
  if (limit > 0) {
    cfg.limit = limit;
  }
  cfg.workers = workers;
  return cfg;
}

void print_header(const InputDocument& doc, const ParamPair& pair) {
  if (!doc.label.empty()) {
    print_scalar("label", doc.label);
  }
  const Regime regime = classify_regime(pair);
  print_scalar("n", std::to_string(pair.n()));
  print_scalar("regime", to_string(regime.tag));
  print_scalar("lambda_n", regime.lambda_n);
  print_scalar("beta_n", regime.beta_n);
}

int run_tv(const TvOptions& opt) {
  const InputDocument doc = load_input_document(opt.input);
  const ParamPair pair = to_param_pair(doc);
  const EnumerationConfig cfg = enum_config(opt.enum_limit, opt.workers);

  if (opt.exact) {
    const SliceReport report = full_slice_report(pair, cfg);
    print_header(doc, pair);
    print_scalar("tv_exact", report.tv);
    print_scalar("l1", l1_distance(pair));
    print_scalar("l2", l2_distance(pair));
    print_scalar("delta0", report.delta[0]);
    print_scalar("delta1", report.delta[1]);
    if (pair.n() >= 2) {
      print_scalar("delta2", report.delta[2]);
    }
    return kExitOk;
  }

  const BoundReport report = evaluate_bounds(pair, cfg);
  print_header(doc, pair);
  if (std::isnan(report.tv)) {
    print_scalar("tv_exact", "unavailable (n exceeds enumeration limit " +
                                 std::to_string(cfg.limit) + ")");
  } else {
    print_scalar("tv_exact", report.tv);
  }
  print_scalar("l1", report.l1);
  print_scalar("l2", report.l2);
  if (!std::isnan(report.delta0)) {
    print_scalar("delta0", report.delta0);
  }
  print_scalar("delta1", report.delta1);
  if (!std::isnan(report.delta2)) {
    print_scalar("delta2", report.delta2);
  }
  print_entries(report.entries);
  return kExitOk;
}

struct SlicesOptions {
  std::string input;
  std::string out;
  int enum_limit = 0;
  int workers = 0;
};

int run_slices(const SlicesOptions& opt) {
  const InputDocument doc = load_input_document(opt.input);
  const ParamPair pair = to_param_pair(doc);
  const SliceReport report =
      full_slice_report(pair, enum_config(opt.enum_limit, opt.workers));

  std::ostringstream csv;
  csv << "k,delta_k\n";
  for (int k = 0; k <= report.n; ++k) {
    csv << k << "," << format_double(report.delta[static_cast<std::size_t>(k)])
        << "\n";
  }
  KahanSum delta_sum;
  for (const double d : report.delta) {
    delta_sum.add(d);
  }
  csv << "two_tv," << format_double(2.0 * report.tv) << "\n";
  csv << "sum_delta," << format_double(delta_sum.value()) << "\n";
  csv << "residual," << format_double(report.identity_residual) << "\n";
  write_text(csv.str(), opt.out);
  return kExitOk;
}

struct VerifyCliOptions {
  std::vector<std::string> theorems;
  bool all = false;
  int n_min = 2;
  int n_max = 10;
  int trials = 100;
  std::uint64_t seed = 0;
  bool boundary_biased = false;
  std::string domain;
  std::string out;
  bool csv = false;
  int enum_limit = 0;
  int workers = 0;
};

int run_verify(const VerifyCliOptions& opt) {
  std::vector<TheoremId> ids;
  if (opt.all) {
    ids = all_theorems();
  } else {
    for (const auto& name : opt.theorems) {
      const auto id = theorem_from_string(name);
      if (!id) {
        throw ParseError("unknown theorem \"" + name + "\"");
      }
      ids.push_back(*id);
    }
  }

  VerifyOptions base;
  base.n_min = opt.n_min;
  base.n_max = opt.n_max;
  base.trials = opt.trials;
  base.seed = opt.seed;
  base.boundary_biased = opt.boundary_biased;
  base.enumeration = enum_config(opt.enum_limit, opt.workers);
  if (!opt.domain.empty()) {
    if (opt.domain == "tiny") {
      base.domain_override = SampleDomain::Tiny;
    } else if (opt.domain == "small") {
      base.domain_override = SampleDomain::Small;
    } else if (opt.domain == "general") {
      base.domain_override = SampleDomain::General;
    } else if (opt.domain == "quasisym") {
      base.domain_override = SampleDomain::QuasiSymmetric;
    } else {
      throw ParseError("unknown domain \"" + opt.domain +
                       "\" (tiny|small|general|quasisym)");
    }
  }

  std::vector<VerifyRun> runs;
  for (const TheoremId id : ids) {
    VerifyOptions options = base;
    if (opt.all) {
      // --all is best effort: lift n_min to each theorem's smallest
      // meaningful n, and skip theorems whose range is empty.
      options.n_min = std::max(options.n_min, theorem_info(id).min_n);
      if (options.n_min > options.n_max) {
        std::cerr << "note: skipping " << to_string(id)
                  << " (needs n >= " << theorem_info(id).min_n << ")\n";
        continue;
      }
    }
    runs.push_back(run_verification(id, options));
  }

  long long total_violations = 0;
  if (opt.csv || !opt.out.empty()) {
    std::ostringstream csv;
    csv << "theorem,domain,n_min,n_max,trials,seed,boundary_biased,"
           "out_of_regime,violations,worst_margin,worst_n,worst_trial\n";
    for (const auto& run : runs) {
      const SampleDomain domain =
          base.domain_override.value_or(theorem_info(run.theorem).domain);
      csv << to_string(run.theorem) << "," << to_string(domain) << ","
          << run.n_min << "," << run.n_max << "," << run.trials << ","
          << run.seed << "," << (opt.boundary_biased ? 1 : 0) << ","
          << (run.out_of_regime ? 1 : 0) << "," << run.violations << ","
          << format_double(run.worst_margin) << "," << run.worst_n << ","
          << run.worst_trial << "\n";
      total_violations += run.violations;
    }
    write_text(csv.str(), opt.out);
  } else {
    std::cout << pad("theorem", 16) << pad("domain", 10) << pad("n", 8)
              << pad("trials", 9) << pad("violations", 11)
              << pad("worst_margin", 24) << "at\n";
    for (const auto& run : runs) {
      const SampleDomain domain =
          base.domain_override.value_or(theorem_info(run.theorem).domain);
      std::string range =
          std::to_string(run.n_min) + ".." + std::to_string(run.n_max);
      std::cout << pad(to_string(run.theorem), 16) << pad(to_string(domain), 10)
                << pad(range, 8) << pad(std::to_string(run.trials), 9)
                << pad(std::to_string(run.violations), 11)
                << pad(format_double(run.worst_margin), 24) << "n="
                << run.worst_n << " trial=" << run.worst_trial;
      if (run.out_of_regime) {
        std::cout << " (out of regime)";
      }
      std::cout << "\n";
      if (run.worst_case) {
        std::cout << "  worst case p =";
        for (const double v : run.worst_case->p()) {
          std::cout << " " << format_double(v);
        }
        std::cout << "\n             q =";
        for (const double v : run.worst_case->q()) {
          std::cout << " " << format_double(v);
        }
        std::cout << "\n";
      }
      total_violations += run.violations;
    }
  }
  return total_violations == 0 ? kExitOk : kExitViolations;
}

struct BkOptions {
  int n = 0;
  std::string out;
};

int run_bk(const BkOptions& opt) {
  const BkSequence seq = bk_sequence(opt.n);
  std::ostringstream csv;
  csv << "k,B_k_recurrence,B_k_closed_form\n";
  csv << "1," << format_double(seq.by_recurrence[0]) << ",\n";
  for (int k = 2; k <= opt.n; ++k) {
    csv << k << ","
        << format_double(seq.by_recurrence[static_cast<std::size_t>(k - 1)])
        << ","
        << format_double(seq.by_closed_form[static_cast<std::size_t>(k - 2)])
        << "\n";
  }
  const double target = (opt.n - 1.0) / opt.n;
  csv << "sum_tail," << format_double(seq.sum_tail) << ","
      << format_double(target) << "\n";
  csv << "sum_residual," << format_double(std::abs(seq.sum_tail - target))
      << ",\n";
  write_text(csv.str(), opt.out);
  return kExitOk;
}

struct SweepOptions {
  std::string regime;
  std::vector<int> n_list;
  int trials = 100;
  std::uint64_t seed = 0;
  std::string out;
  int enum_limit = 0;
  int workers = 0;
};

int run_sweep(const SweepOptions& opt) {
  SampleDomain domain;
  if (opt.regime == "tiny") {
    domain = SampleDomain::Tiny;
  } else if (opt.regime == "small") {
    domain = SampleDomain::Small;
  } else if (opt.regime == "general") {
    domain = SampleDomain::General;
  } else if (opt.regime == "quasisym") {
    domain = SampleDomain::QuasiSymmetric;
  } else {
    throw ParseError("unknown regime \"" + opt.regime +
                     "\" (tiny|small|general|quasisym)");
  }
  if (opt.n_list.empty()) {
    throw ParseError("--n-list must name at least one n");
  }
  if (opt.trials < 1) {
    throw ParseError("--trials must be positive");
  }
  const EnumerationConfig cfg = enum_config(opt.enum_limit, opt.workers);

  std::ostringstream csv;
  csv << "n,trial,tv,delta1,l1,l2,ratio_tv_delta1,ratio_tv_l1\n";
  for (const int n : opt.n_list) {
    for (int t = 0; t < opt.trials; ++t) {
      SplitMix64 rng = SplitMix64::stream(
          opt.seed,
          (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(t));
      const ParamPair pair = sample_pair(n, domain, rng);
      const double tv = tv_exact(pair, cfg);
      const double delta1 = delta1_closed_form(pair);
      const double l1 = l1_distance(pair);
      const double l2 = l2_distance(pair);
      csv << n << "," << t << "," << format_double(tv) << ","
          << format_double(delta1) << "," << format_double(l1) << ","
          << format_double(l2) << "," << format_double(tv / delta1) << ","
          << format_double(tv / l1) << "\n";
    }
  }
  write_text(csv.str(), opt.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact total variation distance between Bernoulli product measures,\n"
      "Hamming-slice decomposition, and randomized verification of the\n"
      "tiny/small-regime bounds."};
  app.require_subcommand(1);

  TvOptions tv_opt;
  CLI::App* tv = app.add_subcommand(
      "tv", "TV distance, slice statistics, and applicable bounds");
  tv->add_option("input", tv_opt.input,
                 "Input document (fields p, q, optional label; or two CSV "
                 "rows); \"-\" reads standard input")
      ->required();
  auto* f_exact = tv->add_flag("--exact", tv_opt.exact,
                               "Exact TV only; fails when n exceeds the "
                               "enumeration limit");
  auto* f_bounds =
      tv->add_flag("--bounds", tv_opt.bounds,
                   "Bounds and statistics; never requires enumeration");
  auto* f_all = tv->add_flag("--all", tv_opt.all,
                             "Exact TV plus bounds (default)");
  f_exact->excludes(f_bounds)->excludes(f_all);
  f_bounds->excludes(f_all);
  tv->add_option("--enum-limit", tv_opt.enum_limit,
                 "Exact-enumeration limit override");
  tv->add_option("--workers", tv_opt.workers,
                 "Worker threads for enumeration (0 = hardware)");

  SlicesOptions slices_opt;
  CLI::App* slices = app.add_subcommand(
      "slices", "Per-slice discrepancies Delta_0..Delta_n as CSV");
  slices->add_option("input", slices_opt.input, "Input document")->required();
  slices->add_option("--out", slices_opt.out, "Write CSV here (default stdout)");
  slices->add_option("--enum-limit", slices_opt.enum_limit,
                     "Exact-enumeration limit override");
  slices->add_option("--workers", slices_opt.workers,
                     "Worker threads for enumeration (0 = hardware)");

  VerifyCliOptions verify_opt;
  CLI::App* verify = app.add_subcommand(
      "verify", "Randomized verification of the bounds and identities");
  auto* f_theorem = verify->add_option("--theorem", verify_opt.theorems,
                                       "Theorem to verify (repeatable)");
  auto* f_vall =
      verify->add_flag("--all", verify_opt.all, "Verify every theorem");
  f_vall->excludes(f_theorem);
  verify->add_option("--n-min", verify_opt.n_min, "Smallest n")
      ->capture_default_str();
  verify->add_option("--n-max", verify_opt.n_max, "Largest n")
      ->capture_default_str();
  verify->add_option("--trials", verify_opt.trials, "Trials per n")
      ->capture_default_str();
  verify->add_option("--seed", verify_opt.seed, "Root seed (required)")
      ->required();
  verify->add_flag("--boundary-biased", verify_opt.boundary_biased,
                   "Pin random coordinates to the regime boundary");
  verify->add_option("--domain", verify_opt.domain,
                     "Override the sampling domain "
                     "(tiny|small|general|quasisym)");
  verify->add_flag("--csv", verify_opt.csv, "CSV output to stdout");
  verify->add_option("--out", verify_opt.out, "Write CSV here");
  verify->add_option("--enum-limit", verify_opt.enum_limit,
                     "Exact-enumeration limit override");
  verify->add_option("--workers", verify_opt.workers,
                     "Worker threads for enumeration (0 = hardware)");

  BkOptions bk_opt;
  CLI::App* bk = app.add_subcommand(
      "bk", "B_k(n) by recurrence and closed form, as CSV");
  bk->add_option("--n", bk_opt.n, "Sequence length (n >= 2)")->required();
  bk->add_option("--out", bk_opt.out, "Write CSV here (default stdout)");

  SweepOptions sweep_opt;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Sample pairs per regime and tabulate TV ratios as CSV");
  sweep->add_option("--regime", sweep_opt.regime,
                    "Sampling regime (tiny|small|general|quasisym)")
      ->required();
  sweep->add_option("--n-list", sweep_opt.n_list, "Comma-separated n values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--trials", sweep_opt.trials, "Trials per n")
      ->capture_default_str();
  sweep->add_option("--seed", sweep_opt.seed, "Root seed (required)")
      ->required();
  sweep->add_option("--out", sweep_opt.out, "Write CSV here (default stdout)");
  sweep->add_option("--enum-limit", sweep_opt.enum_limit,
                    "Exact-enumeration limit override");
  sweep->add_option("--workers", sweep_opt.workers,
                    "Worker threads for enumeration (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (tv->parsed()) {
      return run_tv(tv_opt);
    }
    if (slices->parsed()) {
      return run_slices(slices_opt);
    }
    if (verify->parsed()) {
      return run_verify(verify_opt);
    }
    if (bk->parsed()) {
      return run_bk(bk_opt);
    }
    if (sweep->parsed()) {
      return run_sweep(sweep_opt);
    }
  } catch (const DimensionTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTooLarge;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

#include "sepvar/verify.hpp"

#include <atomic>
#include <cstdlib>
#include <random>
#include <thread>

namespace sepvar {

namespace {

constexpr std::size_t kMaxDrawsPerTrial = 20;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct TrialOutcome {
  std::size_t draws = 0;
  std::size_t singular = 0;
  std::size_t comm_checks = 0;
  std::size_t comm_failures = 0;
  std::size_t prop1_checks = 0;
  std::size_t prop1_failures = 0;
  double worst_bracket = 0.0;
  double worst_prop1 = 0.0;
  bool exhausted = false;
};

template <class S>
S convert(const Rational& r) {
  if constexpr (std::is_same_v<S, double>)
    return to_double(r);
  else
    return r;
}

template <class S>
PointConfiguration<S> convert(const PointConfiguration<Rational>& pts) {
  PointConfiguration<S> out;
  for (const auto& v : pts.a) out.a.push_back(convert<S>(v));
  for (const auto& v : pts.b) out.b.push_back(convert<S>(v));
  return out;
}

template <class S>
TrialOutcome run_trial(const LinearSeparationSystem& sys, std::uint64_t seed, std::size_t trial, double tol) {
  TrialOutcome out;
  std::mt19937_64 rng(trial_seed(seed, trial));
  const std::size_t n = sys.n();
  for (std::size_t draw = 0; draw < kMaxDrawsPerTrial; ++draw) {
    ++out.draws;
    PointConfiguration<Rational> exact = random_points(n, rng);
    PointConfiguration<S> pts = convert<S>(exact);
    SolutionWithJacobian<S> sol;
    RankReport rank;
    try {
      rank = rank_report(sys, pts);
      if (!rank.full_rank) {
        ++out.singular;
        continue;
      }
      sol = solve(sys, pts);
    } catch (const NumericError&) {
      ++out.singular;
      continue;
    }

    std::vector<PoissonStructure> structures{PoissonStructure::canonical(n)};
    for (std::size_t k = 0; k < n; ++k) structures.push_back(PoissonStructure::slot(n, k));
    structures.push_back(random_structure(exact, rng));
    for (const auto& ps : structures) {
      ++out.comm_checks;
      try {
        auto report = check_commutation(sol, ps, pts, rank, tol);
        out.worst_bracket = std::max(out.worst_bracket, magnitude(report.max_abs_bracket));
        if (!report.pass) ++out.comm_failures;
      } catch (const HypothesisViolated&) {
        ++out.comm_failures;
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (!rank.hypothesis_holds(k)) continue;
      ++out.prop1_checks;
      auto report = check_prop1(sol, rank, k, tol);
      out.worst_prop1 = std::max(out.worst_prop1, magnitude(report.max_residual));
      if (!report.pass) ++out.prop1_failures;
    }
    return out;
  }
  out.exhausted = true;
  return out;
}

} // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial) + 1));
}

std::size_t default_threads() {
  if (const char* env = std::getenv("SEPVAR_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

FuzzReport fuzz(const FamilySpec& family, const FuzzOptions& opts) {
  if (opts.trials == 0) throw InputError("fuzz: trials must be at least 1");
  const LinearSeparationSystem sys = build(family);

  std::vector<TrialOutcome> outcomes(opts.trials);
  auto run = [&](std::size_t t) {
    outcomes[t] = opts.mode == Mode::Rational ? run_trial<Rational>(sys, opts.seed, t, opts.tol)
                                              : run_trial<double>(sys, opts.seed, t, opts.tol);
  };

  std::size_t threads = opts.threads == 0 ? default_threads() : opts.threads;
  threads = std::min(threads, opts.trials);
  if (threads <= 1) {
    for (std::size_t t = 0; t < opts.trials; ++t) run(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t t = next++; t < opts.trials; t = next++) run(t);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  FuzzReport report;
  report.family = family.describe();
  report.mode = opts.mode;
  report.seed = opts.seed;
  report.tol = opts.tol;
  report.trials = opts.trials;
  bool exhausted = false;
  for (const auto& o : outcomes) {
    report.draws += o.draws;
    report.singular_draws += o.singular;
    report.commutation_checks += o.comm_checks;
    report.commutation_failures += o.comm_failures;
    report.prop1_checks += o.prop1_checks;
    report.prop1_failures += o.prop1_failures;
    report.worst_bracket = std::max(report.worst_bracket, o.worst_bracket);
    report.worst_prop1 = std::max(report.worst_prop1, o.worst_prop1);
    exhausted = exhausted || o.exhausted;
  }
  if (exhausted || 10 * report.singular_draws > 9 * report.draws)
    throw TooManySingularSamples(report.singular_draws, report.draws);
  report.pass = report.commutation_failures == 0 && report.prop1_failures == 0;
  return report;
}

} // namespace sepvar

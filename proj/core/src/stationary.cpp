#include "alat/stationary.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "alat/error.hpp"

namespace alat {

void AffineWalkConfig::validate() const {
  if (support.empty()) throw InvalidArgument("walk support is empty");
  double total = 0;
  for (const auto& s : support) {
    if (!std::isfinite(s.a) || !std::isfinite(s.b)) throw InvalidArgument("walk atoms must be finite");
    if (!(s.prob > 0)) throw InvalidArgument("walk probabilities must be positive");
    total += s.prob;
  }
  if (std::abs(total - 1) > 1e-12) throw InvalidArgument("walk probabilities must sum to 1");
  if (trials < 1) throw InvalidArgument("walk needs at least one trial");
  if (horizon < 1) throw InvalidArgument("walk horizon must be positive");
}

double AffineWalkConfig::max_abs_b() const {
  double m = 0;
  for (const auto& s : support) m = std::max(m, std::abs(s.b));
  return m;
}

Contraction contraction_factor(const AffineWalkConfig& mu) {
  mu.validate();
  Contraction c;
  for (const auto& s : mu.support) c.q += s.prob * std::exp(s.a);
  c.contractive = c.q < 1;
  return c;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

double uniform53(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

WalkResult simulate_series(const AffineWalkConfig& mu) {
  WalkResult out;
  out.contraction = contraction_factor(mu);
  if (!out.contraction.contractive)
    out.warnings.push_back("measure is not contractive (q = " + std::to_string(out.contraction.q) + ")");

  std::vector<double> cumulative;
  double acc = 0;
  for (const auto& s : mu.support) cumulative.push_back(acc += s.prob);
  cumulative.back() = 1;

  const auto n = static_cast<std::size_t>(mu.horizon);
  const std::uint64_t base = splitmix64(mu.seed);
  out.trajectories.resize(static_cast<std::size_t>(mu.trials));
  for (std::size_t t = 0; t < out.trajectories.size(); ++t) {
    Trajectory& tr = out.trajectories[t];
    tr.trial = t;
    std::mt19937_64 rng(base ^ static_cast<std::uint64_t>(t));
    tr.B.reserve(n);
    tr.A.reserve(n);
    tr.terms.reserve(n);
    tr.steps.reserve(n);
    double A = 0, B = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double u = uniform53(rng);
      std::size_t i = 0;
      while (i + 1 < cumulative.size() && u >= cumulative[i]) ++i;
      const double scale = std::exp(A);
      const double term = scale * mu.support[i].b;
      if (!std::isfinite(scale) || !std::isfinite(B + term))
        throw OverflowError("walk diverged at step " + std::to_string(k + 1) + " of trial " + std::to_string(t));
      B += term;
      tr.A.push_back(A);
      tr.B.push_back(B);
      tr.terms.push_back(term);
      tr.steps.push_back(i);
      A += mu.support[i].a;
    }
  }
  return out;
}

ConvergenceReport convergence_report(const WalkResult& walk, double max_abs_b, std::int64_t fit_from,
                                     double ratio_margin, std::size_t min_trials) {
  if (walk.trajectories.size() < min_trials)
    throw InvalidArgument("convergence_report needs at least " + std::to_string(min_trials) + " trials");
  ConvergenceReport rep;
  rep.q = walk.contraction.q;
  rep.trials = walk.trajectories.size();
  rep.fit_from = fit_from;
  const std::size_t horizon = walk.trajectories.front().terms.size();
  for (const auto& tr : walk.trajectories)
    if (tr.terms.size() != horizon) throw InvalidArgument("trajectories have different horizons");

  for (std::size_t n = 1; 2 * n <= horizon; ++n) {
    double sum = 0;
    for (const auto& tr : walk.trajectories) {
      double tail = 0;
      for (std::size_t k = n; k < 2 * n; ++k) tail += tr.terms[k];
      sum += std::abs(tail);
    }
    TailRow row;
    row.n = static_cast<std::int64_t>(n);
    row.mean_abs_tail = sum / static_cast<double>(rep.trials);
    row.bound = rep.q < 1 ? 3 * max_abs_b * std::pow(rep.q, static_cast<double>(n) - 1) / (1 - rep.q)
                          : std::numeric_limits<double>::infinity();
    rep.rows.push_back(row);
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (const auto& r : rep.rows) {
    if (r.n < fit_from || !(r.mean_abs_tail > 0) || !std::isfinite(r.mean_abs_tail)) continue;
    const double x = static_cast<double>(r.n), y = std::log(r.mean_abs_tail);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m >= 2) {
    const double md = static_cast<double>(m);
    const double slope = (md * sxy - sx * sy) / (md * sxx - sx * sx);
    rep.fitted_ratio = std::exp(slope);
  } else {
    rep.fitted_ratio = std::numeric_limits<double>::quiet_NaN();
  }

  if (rep.q >= 1) {
    rep.verdict = "no decay verdict: q >= 1";
  } else if (!std::isfinite(rep.fitted_ratio)) {
    rep.verdict = "no decay verdict: too few positive tail values to fit";
  } else if (rep.fitted_ratio <= rep.q + ratio_margin) {
    rep.contractive_verdict = true;
    rep.verdict = "contractive: fitted ratio within q + margin";
  } else {
    rep.verdict = "fitted ratio exceeds q + margin";
  }
  return rep;
}

std::string trajectory_csv(const WalkResult& walk) {
  std::string out = "trial,n,B_n,A_n\n";
  char buf[128];
  for (const auto& tr : walk.trajectories)
    for (std::size_t k = 0; k < tr.B.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%llu,%zu,%.17g,%.17g\n", static_cast<unsigned long long>(tr.trial), k + 1,
                    tr.B[k], tr.A[k]);
      out += buf;
    }
  return out;
}

double deterministic_limit(double b, double a) {
  if (!(a < 0)) throw InvalidArgument("deterministic walk converges only for a < 0");
  return b / (1 - std::exp(a));
}

}  // namespace alat

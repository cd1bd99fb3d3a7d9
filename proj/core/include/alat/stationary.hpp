#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace alat {

/// Generator used for every walk; trial i is seeded with splitmix64(seed) ^ i.
inline constexpr std::string_view kWalkRng = "mt19937_64";

/// The splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

struct AffineStep {
  double b = 0;
  double a = 0;
  double prob = 0;
};

/// Finitely supported probability measure on the ax+b group plus run sizes.
struct AffineWalkConfig {
  std::vector<AffineStep> support;
  std::uint64_t seed = 0;
  std::int64_t trials = 1000;
  std::int64_t horizon = 60;

  /// Probabilities positive and summing to 1 within 1e-12, finite atoms,
  /// trials and horizon positive. Throws InvalidArgument.
  void validate() const;
  double max_abs_b() const;
};

struct Contraction {
  double q = 0;  ///< sum of p_i e^{a_i}
  bool contractive = false;
};

Contraction contraction_factor(const AffineWalkConfig& mu);

struct Trajectory {
  std::uint64_t trial = 0;
  std::vector<double> B;      ///< B[n-1] = B_n = sum_{k<=n} e^{A_k} b_k
  std::vector<double> A;      ///< A[n-1] = A_n = a_1 + ... + a_{n-1}
  std::vector<double> terms;  ///< terms[k-1] = e^{A_k} b_k
  std::vector<std::size_t> steps;  ///< index of the atom drawn at each step
};

struct WalkResult {
  Contraction contraction;
  std::vector<Trajectory> trajectories;
  std::vector<std::string> warnings;
};

/// Independent trajectories of the contraction series. Throws OverflowError
/// when e^{A_k} stops being finite.
WalkResult simulate_series(const AffineWalkConfig& mu);

struct TailRow {
  std::int64_t n = 0;
  double mean_abs_tail = 0;  ///< mean over trials of |B_{2n} - B_n|
  double bound = 0;          ///< 3 max|b| q^{n-1} / (1 - q), infinite when q >= 1
};

struct ConvergenceReport {
  std::vector<TailRow> rows;
  double q = 0;
  double fitted_ratio = 0;  ///< exp of the least-squares slope of log tail against n
  std::int64_t fit_from = 0;
  std::size_t trials = 0;
  bool contractive_verdict = false;
  std::string verdict;
};

/// Tail table for n = 1 .. horizon/2 and the fitted geometric ratio over
/// n >= fit_from. The contractive verdict needs q < 1 and a ratio of at most
/// q + ratio_margin. Throws InvalidArgument for fewer than min_trials trials.
ConvergenceReport convergence_report(const WalkResult& walk, double max_abs_b, std::int64_t fit_from = 5,
                                     double ratio_margin = 0.05, std::size_t min_trials = 100);

/// CSV with columns trial,n,B_n,A_n written with %.17g.
std::string trajectory_csv(const WalkResult& walk);

/// b / (1 - e^a), the limit for the point mass at (b, a) with a < 0.
double deterministic_limit(double b, double a);

}  // namespace alat

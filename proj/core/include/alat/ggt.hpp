#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alat/point_set.hpp"

namespace alat {

enum class WordFamily { ZPowers, HeisZ, BS12, QuadRingAdditive, SL2Z };

std::string_view word_family_name(WordFamily f) noexcept;

/// Finitely generated group with a finite symmetric generating set S.
struct WordGroup {
  WordFamily family = WordFamily::ZPowers;
  std::vector<GroupElem> S;
  GroupElem identity;

  /// Z^n (n <= 3) with the standard basis and inverses.
  static WordGroup z_powers(int n);
  /// Integer Heisenberg group with generators (+-1,0,0), (0,+-1,0).
  static WordGroup heis_z();
  /// BS(1,2) with S = {a, a^-1, b, b^-1}.
  static WordGroup bs12();
  /// Z[sqrt(d)] under addition with S = {+-1, +-sqrt(d)}.
  static WordGroup quad_ring_additive(std::int64_t d);
  /// SL2(Z) with the elementary matrices [[1,1],[0,1]], [[1,0],[1,1]] and inverses.
  static WordGroup sl2z();

  /// Throws InvalidArgument unless S is symmetric and of one kind.
  void validate() const;
};

struct BallEntry {
  GroupElem g;
  int dist = 0;
};

/// All elements with d_S(e, g) <= radius, sorted by (distance, canonical order).
std::vector<BallEntry> word_ball(const WordGroup& G, int radius, std::size_t budget = 4'000'000);

/// d_S(g, h) = |g^-1 h|_S by breadth-first search; BudgetExceeded if it is
/// larger than max_radius or the search outgrows the budget.
int word_distance(const WordGroup& G, const GroupElem& g, const GroupElem& h, int max_radius = 64,
                  std::size_t budget = 4'000'000);

struct RhoTable {
  std::vector<std::pair<int, int>> rows;  ///< (n, rho(n))
  double slope = 0;
  double intercept = 0;
  double max_residual = 0;   ///< max |rho(n) - (slope n + intercept)|
  double shadow_intercept = 0;  ///< intercept raised until slope n + D dominates every rho(n)
  bool nondecreasing() const;
  bool affine_within(double tolerance) const { return max_residual <= tolerance; }
};

/// rho(n) = max word length over F-words needed to reach each point of the set
/// with norm <= n K, for n = 0..n_max. Throws CoreViolation if n_max K exceeds
/// the core and VerificationFailure if a point stays unreached.
RhoTable ms_rho(const PointSet& set, double K, const std::vector<GroupElem>& F, int n_max,
                std::size_t state_budget = 20'000'000);

/// Least-squares line through (n, rho(n)).
void fit_rho(RhoTable& table);

/// max over f in F of max(|f|, |f^-1|); equals max |f| on abelian groups.
double witness_delta(const std::vector<GroupElem>& F);

/// Nearest point of the set to x (ties in canonical order). Throws
/// CoreViolation if the k delta ball about x leaves the enumeration and
/// VerificationFailure if the nearest point is farther than k delta.
GroupElem retraction(const PointSet& set, const GroupElem& x, int k, double delta);

/// lambda_g(x) = retraction(g x, k + 1) for g in Lambda^k.
GroupElem quasi_action_apply(const PointSet& set, const GroupElem& g, const GroupElem& x, int k, double delta);

struct DefectSample {
  GroupElem g, h, x;
  double defect = 0;
};

struct DefectReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double delta = 0;
  double bound = 0;  ///< 4 (k + l) delta
  double max_defect = 0;
  std::optional<DefectSample> worst;
  std::optional<DefectSample> first_violation;
};

/// d(lambda_{gh}(x), lambda_g lambda_h(x)) over random g in Lambda^k, h in
/// Lambda^l (products of factors of norm <= factor_norm) and x in the set with
/// norm <= x_radius.
DefectReport quasi_action_defect(const PointSet& set, const std::vector<GroupElem>& F, int k, int l,
                                 std::size_t samples, std::uint64_t seed, double factor_norm,
                                 double x_radius);

enum class FreimanMapKind { Identity, RationalPart, ModN, Star, AbsValue };

std::string_view freiman_map_name(FreimanMapKind k) noexcept;
FreimanMapKind freiman_map_from_name(std::string_view name);

struct FreimanMap {
  FreimanMapKind kind = FreimanMapKind::Identity;
  std::int64_t modulus = 2;  ///< for ModN
};

struct FreimanResult {
  bool is_freiman = true;
  std::size_t tuples = 0;
  std::size_t product_classes = 0;
  std::vector<GroupElem> lhs, rhs;  ///< counterexample tuples with equal products
};

/// Exhaustive Freiman-k test over all k-tuples of the domain, grouped by
/// exact product. Throws BudgetExceeded past tuple_budget tuples.
FreimanResult freiman_check(const FreimanMap& map, int k, const PointSet& domain,
                            std::size_t tuple_budget = 20'000'000);

struct DistortionResult {
  int n = 0;
  int k = 0;
  int unconstrained_upper = 0;           ///< 2n + 1, from b^n a b^-n
  bool word_verified = false;            ///< b^n a b^-n evaluates to a^(2^n)
  std::optional<int> unconstrained_bfs;  ///< exact |a^(2^n)|_S when n <= 4
  int constrained_length = 0;            ///< shortest path through Lambda^k vertices
  std::size_t states = 0;
};

/// Word length of a^(2^n) in BS(1,2), unconstrained and with every vertex of
/// the path of syllable length <= k (p, q <= k + 1, |m| <= 2^(n+1)).
DistortionResult bs_distortion(int n, int k, std::size_t budget = 20'000'000);

struct FolnerRow {
  double radius = 0;
  std::size_t window = 0;
  std::size_t boundary = 0;
  double ratio = 0;
};

/// Boundary ratio |dF| / |F| for F = set n closed ball of each radius, with
/// dF = {x : d(x, F) < R and d(x, set \ F) < R}.
std::vector<FolnerRow> folner_report(const PointSet& set, double R, const std::vector<double>& radii);

/// Ratios strictly decreasing and the last one below eps.
bool folner_evidence(const std::vector<FolnerRow>& rows, double eps);

struct CartanReport {
  std::vector<double> t;  ///< sorted, deduplicated within 1e-12
  std::vector<double> s;
  std::vector<double> gaps;
  double max_gap = 0;
  std::vector<std::size_t> violations;  ///< indices i with gap_i above the per-step bound
};

/// Cartan projections of SL2 elements, sorted, with each consecutive gap
/// checked against ln 2 + ln(s_{i+1} / s_i) + 1e-9.
CartanReport cartan_syndetic(const std::vector<GroupElem>& elems);

}  // namespace alat

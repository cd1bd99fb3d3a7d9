#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alat/patch.hpp"
#include "alat/point_set.hpp"

namespace alat {

struct DeloneReport {
  double packing_radius = 0;   ///< min pairwise distance among core points
  double covering_radius = 0;  ///< largest distance from a sampled core point to the set
  double covering_error = 0;   ///< 0 when exact (1-D), else the grid error bar
  double resolution = 0;       ///< grid step used (0 when exact)
  double core_radius = 0;
  double sampled_radius = 0;   ///< radius of the region the covering radius was measured over
  std::size_t core_points = 0;
};

/// Packing and covering radii of the fragment restricted to its core. In 1-D
/// the covering radius is the exact largest half-gap between consecutive core
/// points; otherwise it is grid-sampled at `resolution` (0 picks a default).
DeloneReport delone_parameters(const PointSet& set, double resolution = 0);

/// Covering radius of `set` over the ball of radius `region` (1-D exact,
/// otherwise sampled with step `resolution`).
double covering_radius(const PointSet& set, double region, double resolution, double* error = nullptr);

/// Lambda^k on a safe core: products x0 x1 ... x_{k-1} with x0 in the core of
/// `set` and every further factor of norm <= max_factor_norm. The returned
/// set's core is the radius inside which this product set is complete.
/// max_factor_norm <= 0 picks the largest factor norm that keeps half the core.
PointSet power_set(const PointSet& set, int k, double max_factor_norm = 0);

/// Radius of the core left after power_set(set, k, m); <= 0 means empty.
double power_core_radius(const PointSet& set, int k, double max_factor_norm);

struct AG3Options {
  double slack = -1;        ///< extra search radius beyond R; < 0 means 2R
  double pair_radius = -1;  ///< factors x, y range over norm <= this; < 0 picks the safe maximum
  std::size_t max_failures = 16;
};

struct AG3Failure {
  GroupElem x;
  GroupElem y;
  GroupElem product;
  bool near_boundary = false;
  std::string reason;
};

struct AG3Witness {
  std::vector<GroupElem> F;
  double verified_core_radius = 0;  ///< pairs x, y with norm <= this were verified
  double search_radius = 0;
  double delta = 0;                 ///< max norm over F
  std::size_t products_checked = 0;
};

struct AG3Result {
  std::optional<AG3Witness> witness;
  std::vector<AG3Failure> failures;
  double pair_radius = 0;
  std::size_t products_checked = 0;
  bool ok() const noexcept { return witness.has_value(); }
};

/// Constructs F in Lambda^3 n B_{R+slack}(e) with xy in F*Lambda for all core
/// pairs (w nearest to (xy)^-1, f = xyw), keeps the elements actually used, and
/// re-verifies the result with verify_ag3_witness before returning it.
AG3Result try_find_ag3_witness(const PointSet& set, double covering, const AG3Options& opts = {});

/// As try_find_ag3_witness, but throws VerificationFailure naming the first
/// failing pair.
AG3Witness find_ag3_witness(const PointSet& set, double covering, const AG3Options& opts = {});

/// Exhaustive check that every product xy (norms <= pair_radius) lies in F*Lambda.
AG3Result verify_ag3_witness(const PointSet& set, const std::vector<GroupElem>& F, double pair_radius,
                             std::size_t max_failures = 16);

/// Largest pair radius whose products can be checked against F of the given norm.
double ag3_pair_radius(const PointSet& set, double f_norm);

struct LocalFinitenessProfile {
  std::int64_t c_k = 0;  ///< max over sampled g of |g^-1 Lambda^k n B_K(e)|
  std::size_t centers = 0;
  double power_core = 0;
};

/// Max count of Lambda^k points in the closed K-ball around each point g of
/// the set with norm <= sample_radius.
LocalFinitenessProfile local_finiteness_profile(const PointSet& set, int k, double K, double sample_radius,
                                                double max_factor_norm);

/// Patch catalog: for each core center x (norm small enough that B_rho(x) lies
/// in the core), x^-1 (Lambda n B_rho(x)); dedup by exact equality.
std::vector<PatchCount> flc_patches(const PointSet& set, double rho);

struct RelDenseReport {
  double ambient_cover_half = 0;
  double ambient_cover_full = 0;
  double in_set_half = 0;
  double in_set_full = 0;
  bool dense_in_ambient = false;
  bool dense_in_set = false;
  bool equivalent() const noexcept { return dense_in_ambient == dense_in_set; }
};

/// Relative density of P0 in the ambient group and in P, each judged by
/// whether the measured radius stays bounded (<= 1.5x + 1e-9) when the
/// examined region doubles from half the core to the full core.
RelDenseReport rel_dense_subset_check(const PointSet& subset, const PointSet& set);

struct GeneratingReport {
  std::vector<GroupElem> F;
  std::size_t targets = 0;
  std::size_t reached = 0;
  int max_word_length = 0;
  std::optional<GroupElem> unreached;
};

/// Lambda^2 n B_K(e) from the fragment's pairs.
std::vector<GroupElem> square_ball(const PointSet& set, double K);

/// BFS over words in F = Lambda^2 n B_K(e) until every point of the set with
/// norm <= test_radius is reached. Throws VerificationFailure with the first
/// unreached point if the state budget runs out first.
GeneratingReport generating_check(const PointSet& set, double K, double test_radius,
                                  std::size_t state_budget = 5'000'000);

struct ChainReport {
  std::size_t patch_types = 0;
  double difference_min_gap = 0;  ///< min distance between distinct elements of Lambda^-1 Lambda n B_K
  double packing_radius = 0;
  std::int64_t c_k = 0;
  bool flc = false;
  bool difference_discrete = false;
  bool uniformly_discrete = false;
  bool locally_finite = false;
  std::vector<std::string> violations;
  bool holds() const noexcept { return violations.empty(); }
};

struct ChainOptions {
  double rho = 2;
  double K = 2;
  int k = 2;
  double max_factor_norm = 0;
  double sample_radius = 0;
};

/// FLC => uniformly discrete difference set => uniformly discrete => locally
/// finite Lambda^k, each measured independently; any failed implication is a
/// recorded violation.
ChainReport discreteness_chain(const PointSet& set, const ChainOptions& opts);

/// Largest number of points of the set in an open ball of radius `radius`
/// centered at the sampled translates (core points and grid points).
std::size_t max_points_in_translates(const PointSet& set, double radius, double sample_step);

}  // namespace alat

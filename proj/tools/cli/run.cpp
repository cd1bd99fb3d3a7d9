#include "run.hpp"

#include <cmath>
#include <sstream>

#include <alat/cutproject.hpp>
#include <alat/error.hpp>
#include <alat/ggt.hpp>
#include <alat/hull.hpp>
#include <alat/io.hpp>
#include <alat/stationary.hpp>
#include <alat/verify.hpp>

namespace alat::cli {

using json = nlohmann::json;

namespace {

struct Outcome {
  json result = json::object();
  json witnesses = json::array();
  json failures = json::array();
  std::string csv;
};

json exact_pair(const QuadInt& q) { return json::array({std::to_string(q.a()), std::to_string(q.b())}); }

json provenance_json(const PointSet& p) {
  json j = json::object();
  for (const auto& [k, v] : p.provenance) j[k] = v;
  j["family"] = family_name(p.family);
  j["ambient"] = ambient_name(p.ambient);
  j["d"] = p.d;
  j["enumRadius"] = p.enum_radius;
  j["points"] = p.size();
  if (p.scheme) {
    j["scheme"] = scheme_family_name(p.scheme->family);
    j["window"] = p.scheme->window.to_string();
  }
  return j;
}

json elements_json(const std::vector<GroupElem>& v) {
  json a = json::array();
  for (const auto& g : v) a.push_back(element_json(g));
  return a;
}

std::int64_t budget_or(const RunConfig& c, std::int64_t fallback) {
  return c.budget > 0 ? static_cast<std::int64_t>(c.budget) : fallback;
}

double measured_covering(RunConfig& rc, const PointSet& set) {
  if (!(rc.covering > 0)) rc.covering = delone_parameters(set).covering_radius;
  return rc.covering;
}

AG3Options ag3_options(const RunConfig& rc) {
  AG3Options o;
  o.slack = rc.slack;
  o.pair_radius = rc.pair_radius;
  return o;
}

json ag3_failures(const std::vector<AG3Failure>& fs) {
  json a = json::array();
  for (const auto& f : fs)
    a.push_back({{"x", element_json(f.x)},
                 {"y", element_json(f.y)},
                 {"product", element_json(f.product)},
                 {"nearBoundary", f.near_boundary},
                 {"reason", f.reason}});
  return a;
}

TestFunction bump_from(const RunConfig& rc, Ambient amb) {
  Bump b;
  b.center = Coords{rc.bump_center[0], rc.bump_center[1], rc.bump_center[2]};
  b.radius = rc.bump_radius;
  b.height = rc.bump_height;
  b.profile = bump_profile_from_name(rc.bump_profile);
  return TestFunction::bump(amb, b);
}

std::vector<Coords> translate_grid(Ambient amb, double radius, double step) {
  const int dims = amb == Ambient::Line ? 1 : amb == Ambient::Plane ? 2 : 3;
  const auto n = static_cast<std::int64_t>(std::floor(radius / step + 1e-9));
  std::vector<Coords> out;
  for (std::int64_t i = -n; i <= n; ++i)
    for (std::int64_t j = dims >= 2 ? -n : 0; j <= (dims >= 2 ? n : 0); ++j)
      for (std::int64_t k = dims >= 3 ? -n : 0; k <= (dims >= 3 ? n : 0); ++k) {
        const Coords g{static_cast<double>(i) * step, static_cast<double>(j) * step, static_cast<double>(k) * step};
        if (float_norm(amb, g) <= radius) out.push_back(g);
      }
  return out;
}

RunConfig derived(const RunConfig& rc) {
  if (!rc.input.empty()) throw InvalidArgument("transfer mode needs a generated family, not an input file");
  RunConfig small = rc;
  small.radius = rc.derive_radius;
  small.size = static_cast<std::int64_t>(rc.derive_radius);
  return small;
}

PointSet identity_adjoined(const PointSet& p, Outcome& o) {
  if (p.has_identity()) return p;
  o.result["identityAdjoined"] = true;
  return with_identity(p);
}

void verify_ag3(RunConfig& rc, const PointSet& input, Outcome& o) {
  const PointSet set = identity_adjoined(input, o);
  const double R = measured_covering(rc, set);
  if (rc.slack < 0) rc.slack = 2 * R;
  if (rc.derive_radius == 0 && set.family == Family::Visible && rc.input.empty())
    rc.derive_radius = static_cast<double>(rc.size) / 4;
  const bool transfer = rc.derive_radius > 0;
  o.result["mode"] = transfer ? "transfer" : "direct";
  o.result["coveringRadius"] = R;
  if (set.family == Family::Visible) {
    const std::int64_t half = std::max<std::int64_t>(1, rc.size / 2);
    const auto cov = visible_sumset_cover(rc.size, half);
    json s = {{"half", half}, {"targets", cov.targets}, {"covered", cov.covered}, {"complete", cov.complete()}};
    if (cov.first_miss) s["firstMiss"] = {cov.first_miss->first, cov.first_miss->second};
    o.result["sumsetCover"] = s;
  }

  AG3Result res;
  if (!transfer) {
    res = try_find_ag3_witness(set, R, ag3_options(rc));
  } else {
    const PointSet small = identity_adjoined(make_pointset(derived(rc)), o);
    const AG3Result derive = try_find_ag3_witness(small, R, ag3_options(rc));
    o.result["deriveProvenance"] = provenance_json(small);
    if (!derive.ok()) {
      o.result["stage"] = "derive";
      o.failures = ag3_failures(derive.failures);
      return;
    }
    const auto& F = derive.witness->F;
    const double pr = rc.pair_radius > 0 ? rc.pair_radius : ag3_pair_radius(set, derive.witness->delta);
    res = verify_ag3_witness(set, F, pr);
    if (res.ok()) res.witness->delta = derive.witness->delta;
    o.result["stage"] = "verify";
    o.witnesses = elements_json(F);
  }
  o.result["pairRadius"] = res.pair_radius;
  o.result["productsChecked"] = res.products_checked;
  if (res.ok()) {
    const auto& w = *res.witness;
    o.result["delta"] = w.delta;
    o.result["verifiedCoreRadius"] = w.verified_core_radius;
    o.result["witnessSize"] = w.F.size();
    o.witnesses = elements_json(w.F);
  } else {
    o.failures = ag3_failures(res.failures);
  }
}

void verify(RunConfig& rc, const PointSet& set, Outcome& o) {
  if (rc.check == "delone") {
    const auto d = delone_parameters(set);
    o.result = {{"packingRadius", d.packing_radius}, {"coveringRadius", d.covering_radius},
                {"coveringError", d.covering_error}, {"resolution", d.resolution},
                {"sampledRadius", d.sampled_radius}, {"corePoints", d.core_points}};
    if (!(d.packing_radius > 0)) o.failures.push_back({{"reason", "packing radius is zero"}});
    if (!std::isfinite(d.covering_radius)) o.failures.push_back({{"reason", "covering radius is infinite"}});
  } else if (rc.check == "ag3") {
    verify_ag3(rc, set, o);
  } else if (rc.check == "chain") {
    ChainOptions opts{rc.rho, rc.ball, rc.k, std::max(0.0, rc.factor_norm), rc.sample_radius};
    const auto r = discreteness_chain(set, opts);
    o.result = {{"patchTypes", r.patch_types},       {"differenceMinGap", r.difference_min_gap},
                {"packingRadius", r.packing_radius}, {"cK", r.c_k},
                {"flc", r.flc},                       {"differenceDiscrete", r.difference_discrete},
                {"uniformlyDiscrete", r.uniformly_discrete}, {"locallyFinite", r.locally_finite}};
    for (const auto& v : r.violations) o.failures.push_back({{"reason", v}});
  } else if (rc.check == "local-finiteness") {
    const auto p = local_finiteness_profile(set, rc.k, rc.ball, rc.sample_radius, std::max(0.0, rc.factor_norm));
    o.result = {{"cK", p.c_k}, {"centers", p.centers}, {"powerCore", p.power_core}};
  } else if (rc.check == "generating") {
    const auto g = generating_check(set, rc.ball, rc.test_radius,
                                    static_cast<std::size_t>(budget_or(rc, 5'000'000)));
    o.result = {{"generators", g.F.size()}, {"targets", g.targets}, {"reached", g.reached},
                {"maxWordLength", g.max_word_length}};
  } else if (rc.check == "unimodularity") {
    const double R = measured_covering(rc, set);
    const auto w = find_ag3_witness(set, R, ag3_options(rc));
    if (rc.tolerance < 0) rc.tolerance = 1e-12;
    if (!(rc.sample_radius > 0)) rc.sample_radius = 5;
    const auto f = bump_from(rc, set.ambient);
    const auto rep = unimodularity_inequality_check(set, w.F, w.verified_core_radius, f, set.within(rc.test_radius),
                                                    translate_grid(set.ambient, rc.sample_radius, rc.grid_step),
                                                    rc.tolerance);
    o.result = {{"samples", rep.samples},     {"violations", rep.violations}, {"minSlack", rep.min_slack},
                {"maxSlack", rep.max_slack}, {"witnessSize", w.F.size()},   {"verifiedRadius", w.verified_core_radius}};
    o.witnesses = elements_json(w.F);
    if (rep.first_violation)
      o.failures.push_back({{"reason", "P(f.t) exceeds the sum over F"},
                            {"g", {rep.first_violation->g[0], rep.first_violation->g[1], rep.first_violation->g[2]}},
                            {"t", element_json(rep.first_violation->t)},
                            {"lhs", rep.first_violation->lhs},
                            {"rhs", rep.first_violation->rhs}});
  }
}

json catalog_json(const PatchStats& s) {
  json a = json::array();
  for (const auto& e : s.catalog) {
    json pts = json::array();
    for (const auto& g : e.patch.points) pts.push_back(element_json(g));
    a.push_back({{"points", pts}, {"count", e.count}, {"frequency", e.frequency}});
  }
  return a;
}

void patches(RunConfig& rc, const PointSet& set, Outcome& o) {
  const auto stats = transversal_stats(set, rc.rho);
  o.result = {{"rho", rc.rho},
              {"centers", stats.centers},
              {"centerRadius", stats.center_radius},
              {"windowDescriptor", stats.window_descriptor},
              {"patchTypes", stats.catalog.size()},
              {"catalog", catalog_json(stats)}};
  for (const auto& g : patch_difference_violations(set, stats))
    o.failures.push_back({{"reason", "patch difference outside the difference set"}, {"element", element_json(g)}});
  if (rc.compare_radius > 0) {
    if (rc.tolerance < 0) rc.tolerance = 0.02;
    RunConfig other = rc;
    other.radius = rc.compare_radius;
    other.size = static_cast<std::int64_t>(rc.compare_radius);
    const PointSet big = make_pointset(other);
    const auto s2 = transversal_stats(big, rc.rho);
    const double diff = max_frequency_difference(stats, s2);
    o.result["comparison"] = {{"compareProvenance", provenance_json(big)},
                              {"maxFrequencyDifference", diff},
                              {"tolerance", rc.tolerance},
                              {"toleranceNote", "artifact choice; no convergence rate is known"}};
    if (diff > rc.tolerance)
      o.failures.push_back({{"reason", "patch frequencies differ by more than the tolerance"}, {"difference", diff}});
  }
}

void hull_freq(RunConfig& rc, const PointSet& set, Outcome& o) {
  const auto f = bump_from(rc, set.ambient);
  WindowFamily w;
  w.center = Coords{rc.window_center[0], rc.window_center[1], rc.window_center[2]};
  w.radii = rc.window_radii;
  w.mode = rc.average_mode == "grid" ? AverageMode::Grid : AverageMode::LatticePoints;
  w.grid_step = rc.grid_step;
  json rows = json::array();
  std::string csv = "radius,translates,average\n";
  for (const auto& a : ergodic_average(set, f, w)) {
    rows.push_back({{"radius", a.radius}, {"translates", a.translates}, {"average", a.average}});
    csv += format_double(a.radius) + "," + std::to_string(a.translates) + "," + format_double(a.average) + "\n";
  }
  o.result = {{"averages", rows}};
  o.csv = csv;
}

void qi(RunConfig& rc, const PointSet& set, Outcome& o) {
  const double R = measured_covering(rc, set);
  if (!(rc.ball > 0)) rc.ball = 3 * R;
  if (rc.tolerance < 0) rc.tolerance = 2;
  const auto gens = square_ball(set, rc.ball);
  const auto table = ms_rho(set, rc.ball, gens, rc.n_max, static_cast<std::size_t>(budget_or(rc, 20'000'000)));
  json rows = json::array();
  std::string csv = "n,rho\n";
  for (const auto& [n, r] : table.rows) {
    rows.push_back({{"n", n}, {"rho", r}});
    csv += std::to_string(n) + "," + std::to_string(r) + "\n";
  }
  o.csv = csv;
  o.result["rho"] = {{"rows", rows},
                     {"slope", table.slope},
                     {"intercept", table.intercept},
                     {"maxResidual", table.max_residual},
                     {"shadowIntercept", table.shadow_intercept},
                     {"nondecreasing", table.nondecreasing()},
                     {"generators", gens.size()},
                     {"constantNote", "measured covering radius stands in for the coarse connectivity constant"}};
  if (!table.affine_within(rc.tolerance))
    o.failures.push_back({{"reason", "rho is not affine within the tolerance"}, {"maxResidual", table.max_residual}});

  const auto w = find_ag3_witness(set, R, ag3_options(rc));
  if (!(rc.factor_norm > 0)) rc.factor_norm = std::min(5.0, set.core_radius / (4.0 * (rc.k + rc.l)));
  if (!(rc.x_radius > 0)) rc.x_radius = set.core_radius / 2;
  const auto d = quasi_action_defect(set, w.F, rc.k, rc.l, static_cast<std::size_t>(rc.samples), rc.seed,
                                     rc.factor_norm, rc.x_radius);
  o.result["defect"] = {{"samples", d.samples}, {"violations", d.violations}, {"delta", d.delta},
                        {"bound", d.bound},     {"maxDefect", d.max_defect}};
  o.witnesses = elements_json(w.F);
  if (d.first_violation)
    o.failures.push_back({{"reason", "quasi-action defect above 4(k+l)delta"},
                          {"g", element_json(d.first_violation->g)},
                          {"h", element_json(d.first_violation->h)},
                          {"x", element_json(d.first_violation->x)},
                          {"defect", d.first_violation->defect}});
}

void distortion(RunConfig& rc, Outcome& o) {
  json rows = json::array();
  std::string csv = "n,unconstrained_upper,unconstrained_bfs,constrained_length\n";
  for (int n = rc.n_min; n <= rc.n_max; ++n) {
    const auto r = bs_distortion(n, rc.k, static_cast<std::size_t>(budget_or(rc, 20'000'000)));
    json row = {{"n", n},
                {"unconstrainedUpper", r.unconstrained_upper},
                {"wordVerified", r.word_verified},
                {"constrainedLength", r.constrained_length},
                {"states", r.states}};
    if (r.unconstrained_bfs) row["unconstrainedBfs"] = *r.unconstrained_bfs;
    rows.push_back(row);
    csv += std::to_string(n) + "," + std::to_string(r.unconstrained_upper) + "," +
           (r.unconstrained_bfs ? std::to_string(*r.unconstrained_bfs) : std::string()) + "," +
           std::to_string(r.constrained_length) + "\n";
    if (!r.word_verified) o.failures.push_back({{"reason", "b^n a b^-n is not a^(2^n)"}, {"n", n}});
    if (r.unconstrained_bfs && *r.unconstrained_bfs > 2 * n + 1)
      o.failures.push_back({{"reason", "unconstrained length exceeds 2n+1"}, {"n", n}});
  }
  o.result = {{"k", rc.k}, {"rows", rows}};
  o.csv = csv;
}

void cartan(RunConfig& rc, Outcome& o) {
  std::vector<GroupElem> elems;
  if (rc.cartan_source == "diag-grid") {
    if (!(rc.t_step > 0) || !(rc.t_max >= 0)) throw InvalidArgument("diag-grid needs tStep > 0 and tMax >= 0");
    const auto steps = static_cast<std::int64_t>(std::floor(rc.t_max / rc.t_step + 1e-9));
    for (std::int64_t i = 0; i <= steps; ++i) elems.push_back(SL2Elem::diag(static_cast<double>(i) * rc.t_step));
  } else {
    for (const auto& e : word_ball(WordGroup::sl2z(), rc.ball_radius, static_cast<std::size_t>(budget_or(rc, 4'000'000))))
      elems.push_back(e.g);
  }
  const auto r = cartan_syndetic(elems);
  o.result = {{"source", rc.cartan_source}, {"elements", elems.size()}, {"distinctT", r.t.size()},
              {"maxGap", r.max_gap},        {"gapTolerance", 1e-9}};
  for (std::size_t i : r.violations)
    o.failures.push_back({{"reason", "Cartan gap above ln 2 + ln(s_{i+1}/s_i)"},
                          {"index", i},
                          {"t", r.t[i]},
                          {"tNext", r.t[i + 1]},
                          {"gap", r.gaps[i]}});
}

std::vector<AffineStep> parse_support(const std::string& text) {
  std::vector<AffineStep> out;
  std::stringstream ss(text);
  std::string atom;
  while (std::getline(ss, atom, ';')) {
    AffineStep s;
    char c1 = 0, c2 = 0;
    std::istringstream as(atom);
    if (!(as >> s.b >> c1 >> s.a >> c2 >> s.prob) || c1 != ':' || c2 != ':' || !(as >> std::ws).eof())
      throw InvalidArgument("walk atom '" + atom + "' must read b:a:p");
    out.push_back(s);
  }
  return out;
}

void walk(RunConfig& rc, Outcome& o) {
  AffineWalkConfig mu{parse_support(rc.support), rc.seed, rc.trials, rc.horizon};
  const auto w = simulate_series(mu);
  o.csv = trajectory_csv(w);
  o.result = {{"q", w.contraction.q}, {"contractive", w.contraction.contractive}, {"rng", std::string(kWalkRng)},
              {"warnings", w.warnings}};
  if (mu.support.size() == 1 && mu.support[0].a < 0) {
    double mean = 0;
    for (const auto& t : w.trajectories) mean += t.B.back();
    mean /= static_cast<double>(w.trajectories.size());
    o.result["deterministicLimit"] = deterministic_limit(mu.support[0].b, mu.support[0].a);
    o.result["finalMean"] = mean;
  }
  if (rc.tolerance < 0) rc.tolerance = 0.05;
  if (w.trajectories.size() >= 100) {
    const auto r = convergence_report(w, mu.max_abs_b(), 5, rc.tolerance);
    json rows = json::array();
    for (const auto& row : r.rows)
      rows.push_back({{"n", row.n}, {"meanAbsTail", row.mean_abs_tail},
                      {"bound", std::isfinite(row.bound) ? json(row.bound) : json(nullptr)}});
    o.result["fittedRatio"] = std::isfinite(r.fitted_ratio) ? json(r.fitted_ratio) : json(nullptr);
    o.result["verdict"] = r.verdict;
    o.result["contractiveVerdict"] = r.contractive_verdict;
    o.result["tails"] = rows;
    if (w.contraction.contractive && !r.contractive_verdict)
      o.failures.push_back({{"reason", r.verdict}, {"fittedRatio", r.fitted_ratio}, {"q", r.q}});
  } else {
    o.result["verdict"] = "no decay verdict: fewer than 100 trials";
  }
}

bool needs_pointset(const std::string& sub) {
  return sub != "distortion" && sub != "cartan" && sub != "walk";
}

std::string report_text(const RunConfig& rc, const PointSet* set, const Outcome& o) {
  json r = json::object();
  r["check"] = rc.subcommand == "verify" ? rc.check : rc.subcommand;
  r["inputProvenance"] = set ? provenance_json(*set) : json::object();
  r["coreRadius"] = set ? json(set->core_radius) : json(nullptr);
  r["result"] = o.result;
  r["witnesses"] = o.witnesses;
  r["failures"] = o.failures;
  r["config"] = to_json_value(rc);
  return r.dump(2) + "\n";
}

void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty() || path == "-")
    fallback << text;
  else
    write_file(path, text);
}

}  // namespace

json element_json(const GroupElem& g) {
  json j = json::object();
  j["text"] = to_string(g);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, EuclidElem>) {
          json ex = json::array();
          for (std::size_t i = 0; i < x.dim; ++i) ex.push_back(exact_pair(x.coords[i]));
          j["exact"] = ex;
        } else if constexpr (std::is_same_v<T, HeisElem>) {
          j["exact"] = json::array({exact_pair(x.x), exact_pair(x.y), exact_pair(x.z)});
        } else if constexpr (std::is_same_v<T, SL2Elem>) {
          j["matrix"] = {x.a, x.b, x.c, x.d};
        } else if constexpr (std::is_same_v<T, AffElem>) {
          j["b"] = x.b;
          j["a"] = x.a;
        } else {
          j["p"] = std::to_string(x.p);
          j["m"] = std::to_string(x.m);
          j["q"] = std::to_string(x.q);
        }
      },
      g);
  if (std::holds_alternative<EuclidElem>(g) || std::holds_alternative<HeisElem>(g)) {
    const Coords e = embed(g);
    const std::size_t n = std::holds_alternative<HeisElem>(g) ? 3 : std::get<EuclidElem>(g).dim;
    j["embedding"] = std::vector<double>(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n));
  }
  return j;
}

PointSet make_pointset(const RunConfig& c) {
  PointSet p;
  if (!c.input.empty()) {
    p = load_pointset(c.input);
  } else if (c.family == "integers") {
    p = integer_lattice(static_cast<std::int64_t>(std::floor(c.radius)));
  } else if (c.family == "fish") {
    p = fish_set(c.size);
  } else if (c.family == "visible") {
    p = visible_points(c.size);
  } else {
    const SchemeFamily f = c.family == "quad-line"    ? SchemeFamily::QuadraticLine
                           : c.family == "quad-plane" ? SchemeFamily::QuadraticPlane
                           : c.family == "heis"       ? SchemeFamily::HeisQuadratic
                                                      : throw InvalidArgument("unknown family '" + c.family + "'");
    EnumerateLimits limits;
    if (c.budget > 0) limits.max_points = static_cast<std::size_t>(c.budget);
    p = enumerate(Scheme{f, c.d, Window::parse(c.window)}, c.radius, limits);
  }
  if (c.with_identity) p = with_identity(std::move(p));
  return p;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunConfig rc = config;
  std::optional<PointSet> set;
  Outcome o;
  int code = 0;
  try {
    validate(rc);
    if (needs_pointset(rc.subcommand)) set = make_pointset(rc);
    if (rc.subcommand == "generate") {
      emit(rc.output, pointset_to_csv(*set), out);
      if (!rc.report.empty()) {
        o.result = {{"points", set->size()}};
        write_file(rc.report, report_text(rc, &*set, o));
      }
      return 0;
    }
    if (rc.subcommand == "verify") verify(rc, *set, o);
    else if (rc.subcommand == "patches") patches(rc, *set, o);
    else if (rc.subcommand == "hull-freq") hull_freq(rc, *set, o);
    else if (rc.subcommand == "qi") qi(rc, *set, o);
    else if (rc.subcommand == "distortion") distortion(rc, o);
    else if (rc.subcommand == "cartan") cartan(rc, o);
    else if (rc.subcommand == "walk") walk(rc, o);
    code = o.failures.empty() ? 0 : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    code = e.exit_code();
    o.failures.push_back({{"error", e.what()}, {"exitCode", code}});
  }
  try {
    if (!o.csv.empty() && !rc.output.empty()) write_file(rc.output, o.csv);
    emit(rc.report, report_text(rc, set ? &*set : nullptr, o), out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return code ? code : e.exit_code();
  }
  return code;
}

}  // namespace alat::cli

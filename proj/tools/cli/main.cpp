#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <alat/error.hpp>
#include <alat/io.hpp>

#include "config.hpp"
#include "run.hpp"

namespace {

using alat::cli::RunConfig;

std::string config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return {};
}

void source_options(CLI::App* s, RunConfig& c) {
  s->add_option("--family", c.family, "integers, fish, quad-line, quad-plane, heis or visible");
  s->add_option("--d", c.d, "Squarefree d of the ring Z[sqrt d]");
  s->add_option("--window", c.window, "Window, e.g. -5,5 or -1,1x-1,1");
  s->add_option("--radius", c.radius, "Enumeration radius");
  s->add_option("--size", c.size, "Fish blocks or visible-points N");
  s->add_flag("--with-identity", c.with_identity, "Adjoin the identity");
  s->add_option("--input", c.input, "Load the point set from a CSV file");
  s->add_option("--report", c.report, "JSON report path (stdout when unset)");
}

void bump_options(CLI::App* s, RunConfig& c) {
  s->add_option("--bump-center", c.bump_center, "Bump center x,y,z")->delimiter(',')->expected(3);
  s->add_option("--bump-radius", c.bump_radius);
  s->add_option("--bump-height", c.bump_height);
  s->add_option("--bump-profile", c.bump_profile, "triangle or indicator-smoothed");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  try {
    const std::string path = config_path(argc, argv);
    if (!path.empty()) c = alat::cli::from_text(alat::read_file(path));
  } catch (const alat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  }

  CLI::App app{"Approximate lattice experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_file;
  bool dump = false;
  app.add_option("--config", config_file, "JSON config providing defaults for every option");
  app.add_option("--seed", c.seed, "Random seed")->capture_default_str();
  app.add_option("--tolerance", c.tolerance, "Tolerance override (negative keeps the documented default)");
  app.add_option("--budget", c.budget, "State or point budget (0 keeps the default)");
  app.add_flag("--dump-config", dump, "Print the resolved config and exit");

  auto* gen = app.add_subcommand("generate", "Emit a point set as CSV");
  source_options(gen, c);
  gen->add_option("--output", c.output, "CSV path (stdout when unset)");

  auto* ver = app.add_subcommand("verify", "Check Delone, AG3 and discreteness properties");
  source_options(ver, c);
  ver->add_option("--check", c.check, "delone, ag3, chain, local-finiteness, generating or unimodularity");
  ver->add_option("--covering", c.covering, "Covering radius R (measured when unset)");
  ver->add_option("--slack", c.slack, "AG3 search slack beyond R");
  ver->add_option("--pair-radius", c.pair_radius, "AG3 pair radius");
  ver->add_option("--derive-radius", c.derive_radius, "Derive F on a smaller fragment, then verify");
  ver->add_option("--k", c.k);
  ver->add_option("--ball", c.ball, "Ball radius K");
  ver->add_option("--rho", c.rho, "Patch radius");
  ver->add_option("--sample-radius", c.sample_radius);
  ver->add_option("--test-radius", c.test_radius);
  ver->add_option("--grid-step", c.grid_step);
  ver->add_option("--factor-norm", c.factor_norm);
  bump_options(ver, c);

  auto* pat = app.add_subcommand("patches", "Patch catalog and frequencies");
  source_options(pat, c);
  pat->add_option("--rho", c.rho, "Patch radius");
  pat->add_option("--compare-radius", c.compare_radius, "Compare frequencies against this enumeration radius");

  auto* hf = app.add_subcommand("hull-freq", "Ergodic averages of a test function");
  source_options(hf, c);
  bump_options(hf, c);
  hf->add_option("--window-center", c.window_center, "x,y,z")->delimiter(',')->expected(3);
  hf->add_option("--window-radii", c.window_radii, "r1,r2,...")->delimiter(',');
  hf->add_option("--average-mode", c.average_mode, "lattice or grid");
  hf->add_option("--grid-step", c.grid_step);
  hf->add_option("--output", c.output, "CSV path");

  auto* qi = app.add_subcommand("qi", "Milnor-Schwarz profile and quasi-action defect");
  source_options(qi, c);
  qi->add_option("--ball", c.ball, "Generating ball K (3R when unset)");
  qi->add_option("--n-max", c.n_max);
  qi->add_option("--k", c.k);
  qi->add_option("--l", c.l);
  qi->add_option("--samples", c.samples);
  qi->add_option("--factor-norm", c.factor_norm);
  qi->add_option("--x-radius", c.x_radius);
  qi->add_option("--covering", c.covering);
  qi->add_option("--output", c.output, "CSV path");

  auto* dis = app.add_subcommand("distortion", "Word lengths of a^(2^n) in BS(1,2)");
  dis->add_option("--n-min", c.n_min);
  dis->add_option("--n-max", c.n_max);
  dis->add_option("--k", c.k, "Constraint parameter");
  dis->add_option("--output", c.output, "CSV path");
  dis->add_option("--report", c.report, "JSON report path");

  auto* car = app.add_subcommand("cartan", "Cartan projection gaps in SL2");
  car->add_option("--source", c.cartan_source, "diag-grid or sl2z-ball");
  car->add_option("--t-max", c.t_max);
  car->add_option("--t-step", c.t_step);
  car->add_option("--ball-radius", c.ball_radius);
  car->add_option("--report", c.report, "JSON report path");

  auto* wk = app.add_subcommand("walk", "Random affine walk partial sums");
  wk->add_option("--support", c.support, "b:a:p atoms separated by ';'");
  wk->add_option("--trials", c.trials);
  wk->add_option("--horizon", c.horizon);
  wk->add_option("--output", c.output, "Trajectory CSV path");
  wk->add_option("--report", c.report, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  if (dump) {
    std::cout << alat::cli::to_text(c);
    return 0;
  }
  return alat::cli::run(c, std::cout, std::cerr);
}

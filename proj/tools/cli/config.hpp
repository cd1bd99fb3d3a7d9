#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace alat::cli {

/// Every parameter of a run. Negative tolerances, radii and norms mean "use
/// the documented default" and are replaced by the resolved value before the
/// config is embedded in a report.
struct RunConfig {
  std::string subcommand;

  // Point set source.
  std::string family = "quad-line";  ///< integers, fish, quad-line, quad-plane, heis, visible
  std::int64_t d = 2;
  std::string window = "-5,5";
  double radius = 100;
  std::int64_t size = 10;            ///< Fish blocks or visible-points N
  bool with_identity = false;
  std::string input;

  // Artifacts.
  std::string output;
  std::string report;

  // Global.
  std::uint64_t seed = 0;
  double tolerance = -1;
  std::uint64_t budget = 0;

  // verify.
  std::string check = "delone";  ///< delone, ag3, chain, local-finiteness, generating, unimodularity
  double covering = -1;
  double slack = -1;
  double pair_radius = -1;
  double derive_radius = 0;      ///< > 0 switches ag3 to transfer mode; visible defaults to size/4
  int k = 2;
  double ball = 2;
  double rho = 2;
  double sample_radius = 0;
  double test_radius = 10;

  // patches and hull-freq.
  double compare_radius = 0;
  std::vector<double> bump_center{0, 0, 0};
  double bump_radius = 1;
  double bump_height = 1;
  std::string bump_profile = "triangle";
  std::vector<double> window_center{0, 0, 0};
  std::vector<double> window_radii{10, 20, 40};
  std::string average_mode = "lattice";  ///< lattice or grid
  double grid_step = 0.25;

  // qi.
  int n_max = 10;
  int l = 2;
  std::int64_t samples = 1000;
  double factor_norm = -1;
  double x_radius = -1;

  // distortion.
  int n_min = 0;

  // cartan.
  std::string cartan_source = "diag-grid";  ///< diag-grid or sl2z-ball
  double t_max = 10;
  double t_step = 0.25;
  int ball_radius = 6;

  // walk.
  std::string support = "1:-1:1";  ///< b:a:p atoms separated by ';'
  std::int64_t trials = 1000;
  std::int64_t horizon = 60;
};

nlohmann::json to_json_value(const RunConfig& c);
RunConfig from_json_value(const nlohmann::json& j);

/// Pretty JSON with sorted keys and a trailing newline.
std::string to_text(const RunConfig& c);
/// Throws ParseError on malformed JSON and InvalidArgument on wrong field types.
RunConfig from_text(const std::string& text);

/// Rejects unknown subcommands and option values (InvalidArgument).
void validate(const RunConfig& c);

}  // namespace alat::cli

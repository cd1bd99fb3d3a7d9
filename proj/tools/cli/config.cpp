#include "config.hpp"

#include <algorithm>
#include <set>

#include <alat/error.hpp>

namespace alat::cli {

#define ALAT_CONFIG_FIELDS(X)            \
  X(subcommand, "subcommand")            \
  X(family, "family")                    \
  X(d, "d")                              \
  X(window, "window")                    \
  X(radius, "radius")                    \
  X(size, "size")                        \
  X(with_identity, "withIdentity")       \
  X(input, "input")                      \
  X(output, "output")                    \
  X(report, "report")                    \
  X(seed, "seed")                        \
  X(tolerance, "tolerance")              \
  X(budget, "budget")                    \
  X(check, "check")                      \
  X(covering, "covering")                \
  X(slack, "slack")                      \
  X(pair_radius, "pairRadius")           \
  X(derive_radius, "deriveRadius")       \
  X(k, "k")                              \
  X(ball, "ball")                        \
  X(rho, "rho")                          \
  X(sample_radius, "sampleRadius")       \
  X(test_radius, "testRadius")           \
  X(compare_radius, "compareRadius")     \
  X(bump_center, "bumpCenter")           \
  X(bump_radius, "bumpRadius")           \
  X(bump_height, "bumpHeight")           \
  X(bump_profile, "bumpProfile")         \
  X(window_center, "windowCenter")       \
  X(window_radii, "windowRadii")         \
  X(average_mode, "averageMode")         \
  X(grid_step, "gridStep")               \
  X(n_max, "nMax")                       \
  X(l, "l")                              \
  X(samples, "samples")                  \
  X(factor_norm, "factorNorm")           \
  X(x_radius, "xRadius")                 \
  X(n_min, "nMin")                       \
  X(cartan_source, "cartanSource")       \
  X(t_max, "tMax")                       \
  X(t_step, "tStep")                     \
  X(ball_radius, "ballRadius")           \
  X(support, "support")                  \
  X(trials, "trials")                    \
  X(horizon, "horizon")

nlohmann::json to_json_value(const RunConfig& c) {
  nlohmann::json j = nlohmann::json::object();
#define X(field, key) j[key] = c.field;
  ALAT_CONFIG_FIELDS(X)
#undef X
  return j;
}

RunConfig from_json_value(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  static const std::set<std::string> known = {
#define X(field, key) key,
      ALAT_CONFIG_FIELDS(X)
#undef X
  };
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw InvalidArgument("unknown config key '" + key + "'");
  RunConfig c;
  try {
#define X(field, key) \
  if (j.contains(key)) j.at(key).get_to(c.field);
    ALAT_CONFIG_FIELDS(X)
#undef X
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("config field has the wrong type: ") + e.what());
  }
  return c;
}

#undef ALAT_CONFIG_FIELDS

std::string to_text(const RunConfig& c) { return to_json_value(c).dump(2) + "\n"; }

RunConfig from_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte is 1-based and counts from the start of the text.
    int line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("malformed config JSON", line, column);
  }
  return from_json_value(j);
}

void validate(const RunConfig& c) {
  static const std::set<std::string> subcommands = {"generate", "verify", "patches", "hull-freq",
                                                    "qi",       "distortion", "cartan", "walk"};
  static const std::set<std::string> families = {"integers", "fish", "quad-line", "quad-plane", "heis", "visible"};
  static const std::set<std::string> checks = {"delone", "ag3", "chain", "local-finiteness", "generating",
                                               "unimodularity"};
  if (!subcommands.count(c.subcommand)) throw InvalidArgument("unknown subcommand '" + c.subcommand + "'");
  if (c.input.empty() && !families.count(c.family)) throw InvalidArgument("unknown family '" + c.family + "'");
  if (!checks.count(c.check)) throw InvalidArgument("unknown check '" + c.check + "'");
  if (c.average_mode != "lattice" && c.average_mode != "grid")
    throw InvalidArgument("averageMode must be lattice or grid");
  if (c.cartan_source != "diag-grid" && c.cartan_source != "sl2z-ball")
    throw InvalidArgument("cartanSource must be diag-grid or sl2z-ball");
  if (c.bump_center.size() != 3 || c.window_center.size() != 3)
    throw InvalidArgument("bumpCenter and windowCenter need three coordinates");
  if (!(c.radius >= 0)) throw InvalidArgument("radius must be nonnegative");
}

}  // namespace alat::cli

#include "alat/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "alat/error.hpp"

namespace alat {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

constexpr std::string_view kMagic = "alat-pointset";

std::size_t coordinate_count(Ambient a) {
  switch (a) {
    case Ambient::Line: return 1;
    case Ambient::Plane: return 2;
    case Ambient::Heisenberg: return 3;
  }
  return 1;
}

std::vector<QuadInt> exact_coords(const GroupElem& g) {
  if (const auto* e = std::get_if<EuclidElem>(&g)) return {e->coords.begin(), e->coords.begin() + e->dim};
  const auto& h = std::get<HeisElem>(g);
  return {h.x, h.y, h.z};
}

std::string header_row(Ambient a) {
  static constexpr const char* names[] = {"x", "y", "z"};
  const std::size_t n = coordinate_count(a);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += std::string(i ? "," : "") + names[i] + ".a," + names[i] + ".b";
  for (std::size_t i = 0; i < n; ++i) out += std::string(",") + names[i];
  return out;
}

SchemeFamily scheme_family_from_name(std::string_view name) {
  for (SchemeFamily f : {SchemeFamily::QuadraticLine, SchemeFamily::QuadraticPlane, SchemeFamily::HeisQuadratic})
    if (scheme_family_name(f) == name) return f;
  throw InvalidArgument("unknown scheme '" + std::string(name) + "'");
}

struct Field {
  std::string_view text;
  int column;
};

std::vector<Field> split_fields(std::string_view line) {
  std::vector<Field> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? line.size() : comma;
    out.push_back(Field{line.substr(start, end - start), static_cast<int>(start) + 1});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::int64_t parse_int(std::string_view s, int line, int col, const char* what) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
    throw ParseError(std::string("expected an integer ") + what + ", got '" + std::string(s) + "'", line, col);
  return v;
}

double parse_real(std::string_view s, int line, int col, const char* what) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
    throw ParseError(std::string("expected a number ") + what + ", got '" + std::string(s) + "'", line, col);
  return v;
}

}  // namespace

std::string pointset_to_csv(const PointSet& set) {
  set.validate();
  std::string out;
  auto meta = [&](std::string_view key, std::string_view value) {
    out += "# ";
    out += key;
    out += ": ";
    out += value;
    out += '\n';
  };
  meta(kMagic, "1");
  meta("family", family_name(set.family));
  meta("ambient", ambient_name(set.ambient));
  meta("d", std::to_string(set.d));
  meta("enumRadius", format_double(set.enum_radius));
  meta("coreRadius", format_double(set.core_radius));
  if (set.scheme) {
    meta("scheme", scheme_family_name(set.scheme->family));
    meta("window", set.scheme->window.to_string());
  }
  for (const auto& [k, v] : set.provenance) meta("provenance." + k, v);
  out += header_row(set.ambient);
  out += '\n';
  for (const auto& g : set.points) {
    const auto cs = exact_coords(g);
    const Coords e = embed(g);
    std::string row;
    for (std::size_t i = 0; i < cs.size(); ++i)
      row += (i ? "," : "") + std::to_string(cs[i].a()) + "," + std::to_string(cs[i].b());
    for (std::size_t i = 0; i < cs.size(); ++i) row += "," + format_double(e[i]);
    out += row;
    out += '\n';
  }
  return out;
}

PointSet pointset_from_csv(std::string_view text) {
  PointSet p;
  p.provenance.clear();
  std::optional<SchemeFamily> scheme_family;
  std::optional<Window> window;
  bool magic = false, header = false;
  int core_line = 0, core_col = 0;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, (nl == std::string_view::npos ? text.size() : nl) - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    if (line.front() == '#') {
      if (header) throw ParseError("metadata after the column header", line_no, 1);
      const std::size_t colon = line.find(": ");
      if (line.size() < 3 || line[1] != ' ' || colon == std::string_view::npos)
        throw ParseError("metadata lines must read '# key: value'", line_no, 1);
      const std::string_view key = line.substr(2, colon - 2);
      const std::string value(line.substr(colon + 2));
      const int vcol = static_cast<int>(colon) + 3;
      try {
        if (key == kMagic) {
          if (value != "1") throw ParseError("unsupported format version '" + value + "'", line_no, vcol);
          magic = true;
        } else if (!magic) {
          throw ParseError("missing '# alat-pointset: 1' first line", line_no, 1);
        } else if (key == "family") {
          p.family = family_from_name(value);
        } else if (key == "ambient") {
          p.ambient = ambient_from_name(value);
        } else if (key == "d") {
          p.d = parse_int(value, line_no, vcol, "for d");
        } else if (key == "enumRadius") {
          p.enum_radius = parse_real(value, line_no, vcol, "for enumRadius");
        } else if (key == "coreRadius") {
          p.core_radius = parse_real(value, line_no, vcol, "for coreRadius");
          core_line = line_no;
          core_col = vcol;
        } else if (key == "scheme") {
          scheme_family = scheme_family_from_name(value);
        } else if (key == "window") {
          window = Window::parse(value);
        } else if (key.substr(0, 11) == "provenance.") {
          p.provenance[std::string(key.substr(11))] = value;
        } else {
          throw ParseError("unknown metadata key '" + std::string(key) + "'", line_no, 3);
        }
      } catch (const ParseError&) {
        throw;
      } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), line_no, vcol);
      }
      continue;
    }

    if (!magic) throw ParseError("missing '# alat-pointset: 1' first line", line_no, 1);
    if (!header) {
      if (line != header_row(p.ambient))
        throw ParseError("expected column header '" + header_row(p.ambient) + "'", line_no, 1);
      header = true;
      if (!(p.enum_radius >= 0) || !(p.core_radius >= 0))
        throw ParseError("radii must be nonnegative", core_line ? core_line : line_no, core_line ? core_col : 1);
      if (p.core_radius > p.enum_radius)
        throw ParseError("coreRadius " + format_double(p.core_radius) + " exceeds enumRadius " +
                             format_double(p.enum_radius),
                         core_line, core_col);
      continue;
    }

    const std::size_t n = coordinate_count(p.ambient);
    const auto fields = split_fields(line);
    if (fields.size() != 3 * n)
      throw ParseError("expected " + std::to_string(3 * n) + " fields, found " + std::to_string(fields.size()),
                       line_no, 1);
    std::vector<QuadInt> cs;
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = parse_int(fields[2 * i].text, line_no, fields[2 * i].column, "coordinate");
      const auto b = parse_int(fields[2 * i + 1].text, line_no, fields[2 * i + 1].column, "coordinate");
      try {
        cs.emplace_back(a, b, p.d);
      } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), line_no, fields[2 * i].column);
      }
    }
    GroupElem g;
    switch (p.ambient) {
      case Ambient::Line: g = EuclidElem::line(cs[0]); break;
      case Ambient::Plane: g = EuclidElem::plane(cs[0], cs[1]); break;
      case Ambient::Heisenberg: g = HeisElem{cs[0], cs[1], cs[2]}; break;
    }
    const Coords e = embed(g);
    for (std::size_t i = 0; i < n; ++i) {
      const Field& f = fields[2 * n + i];
      const double v = parse_real(f.text, line_no, f.column, "embedding");
      if (!(std::abs(v - e[i]) <= 1e-9 * (1 + std::abs(e[i]))))
        throw ParseError("embedding " + std::string(f.text) + " disagrees with the exact coordinates", line_no,
                         f.column);
    }
    p.points.push_back(std::move(g));
  }
  if (!magic) throw ParseError("empty point set file", line_no + 1, 1);
  if (!header) throw ParseError("missing column header", line_no + 1, 1);
  if (scheme_family || window) {
    if (!scheme_family || !window) throw ParseError("scheme and window must appear together", line_no, 1);
    Scheme s{*scheme_family, p.d, *window};
    try {
      s.validate();
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), line_no, 1);
    }
    p.scheme = s;
  }
  try {
    p.canonicalize();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), line_no, 1);
  }
  return p;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
}

void save_pointset(const PointSet& set, const std::string& path) { write_file(path, pointset_to_csv(set)); }

PointSet load_pointset(const std::string& path) { return pointset_from_csv(read_file(path)); }

}  // namespace alat

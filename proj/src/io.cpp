#include "phasescat/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace phasescat {

namespace {

constexpr int kMaxGray = 65535;

void append_number(std::string& out, double v) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  out.append(buf, static_cast<std::size_t>(n));
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view s, std::string_view what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw IoError("malformed number '" + std::string(s) + "' in " + std::string(what));
  }
  if (!std::isfinite(v)) throw IoError("non-finite value in " + std::string(what));
  return v;
}

std::pair<double, double> parse_pair(std::string_view s, char sep, std::string_view what) {
  const auto at = s.find(sep);
  if (at == std::string_view::npos || s.find(sep, at + 1) != std::string_view::npos) {
    throw IoError("expected two values separated by '" + std::string(1, sep) + "' in " + std::string(what));
  }
  return {parse_number(s.substr(0, at), what), parse_number(s.substr(at + 1), what)};
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto at = s.find(sep, start);
    parts.push_back(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) return parts;
    start = at + 1;
  }
}

std::string header(std::string_view kind, const FieldMetadata& meta, int n) {
  std::string out = "#pfft v1\n#kind=";
  out += kind;
  out += "\n#k=";
  append_number(out, meta.k);
  out += "\n#N=" + std::to_string(n) + "\n#model=";
  out += to_string(meta.model);
  out += '\n';
  if (meta.tau) {
    out += "#tau=";
    append_number(out, meta.tau->real());
    out += ',';
    append_number(out, meta.tau->imag());
    out += '\n';
  }
  if (meta.z0) {
    out += "#z0=";
    append_number(out, meta.z0->x());
    out += ',';
    append_number(out, meta.z0->y());
    out += '\n';
  }
  return out;
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::string format_far_field(const FarFieldMatrix& m) {
  std::string out = header("complex", m.meta, m.size());
  for (Eigen::Index j = 0; j < m.values.rows(); ++j) {
    for (Eigen::Index l = 0; l < m.values.cols(); ++l) {
      if (l > 0) out += ',';
      append_number(out, m.values(j, l).real());
      out += ';';
      append_number(out, m.values(j, l).imag());
    }
    out += '\n';
  }
  return out;
}

std::string format_far_field(const PhaselessMatrix& m) {
  std::string out = header("modulus", m.meta, m.size());
  for (Eigen::Index j = 0; j < m.values.rows(); ++j) {
    for (Eigen::Index l = 0; l < m.values.cols(); ++l) {
      if (l > 0) out += ',';
      append_number(out, m.values(j, l));
    }
    out += '\n';
  }
  return out;
}

AnyFarField parse_far_field(std::string_view text) {
  std::vector<std::string_view> lines = split(text, '\n');
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty() || trim(lines[0]) != "#pfft v1") throw IoError("missing '#pfft v1' header");

  std::map<std::string, std::string_view, std::less<>> keys;
  std::size_t row0 = 1;
  for (; row0 < lines.size() && !lines[row0].empty() && lines[row0][0] == '#'; ++row0) {
    const std::string_view line = trim(lines[row0].substr(1));
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw IoError("malformed header line '#" + std::string(line) + "'");
    const std::string key(trim(line.substr(0, eq)));
    if (key != "kind" && key != "k" && key != "N" && key != "model" && key != "tau" && key != "z0") {
      throw IoError("unknown header key '" + key + "'");
    }
    if (!keys.emplace(key, trim(line.substr(eq + 1))).second) throw IoError("duplicate header key '" + key + "'");
  }
  for (const char* required : {"kind", "k", "N", "model"}) {
    if (!keys.count(required)) throw IoError(std::string("missing header key '") + required + "'");
  }

  const std::string_view kind = keys.at("kind");
  if (kind != "complex" && kind != "modulus") throw IoError("unknown kind '" + std::string(kind) + "'");
  FieldMetadata meta;
  meta.k = parse_number(keys.at("k"), "header k");
  const double n_value = parse_number(keys.at("N"), "header N");
  if (n_value < 1 || n_value != std::floor(n_value) || n_value > 1e6) throw IoError("header N must be a positive integer");
  const int n = static_cast<int>(n_value);
  try {
    meta.model = parse_field_model(keys.at("model"));
  } catch (const std::invalid_argument& e) {
    throw IoError(e.what());
  }
  if (auto it = keys.find("tau"); it != keys.end()) {
    const auto [re, im] = parse_pair(it->second, ',', "header tau");
    meta.tau = Complex(re, im);
  }
  if (auto it = keys.find("z0"); it != keys.end()) {
    const auto [x, y] = parse_pair(it->second, ',', "header z0");
    meta.z0 = Point(x, y);
  }

  if (lines.size() - row0 != static_cast<std::size_t>(n)) {
    throw IoError("expected " + std::to_string(n) + " data lines, found " + std::to_string(lines.size() - row0));
  }
  const bool complex = kind == "complex";
  ComplexMatrix cvalues = complex ? ComplexMatrix(n, n) : ComplexMatrix();
  RealMatrix rvalues = complex ? RealMatrix() : RealMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    const std::string where = "data line " + std::to_string(j + 1);
    const auto fields = split(trim(lines[row0 + j]), ',');
    if (fields.size() != static_cast<std::size_t>(n)) {
      throw IoError(where + " has " + std::to_string(fields.size()) + " fields, expected " + std::to_string(n));
    }
    for (int l = 0; l < n; ++l) {
      if (complex) {
        const auto [re, im] = parse_pair(fields[l], ';', where);
        cvalues(j, l) = Complex(re, im);
      } else {
        const double v = parse_number(fields[l], where);
        if (v < 0.0) throw IoError("negative modulus in " + where);
        rvalues(j, l) = v;
      }
    }
  }
  if (complex) return FarFieldMatrix{std::move(cvalues), meta};
  return PhaselessMatrix{std::move(rvalues), meta};
}

void write_far_field(const FarFieldMatrix& m, const std::filesystem::path& path) {
  write_text(format_far_field(m), path);
}

void write_far_field(const PhaselessMatrix& m, const std::filesystem::path& path) {
  write_text(format_far_field(m), path);
}

AnyFarField read_far_field(const std::filesystem::path& path) {
  try {
    return parse_far_field(read_text(path));
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

FarFieldMatrix read_complex_far_field(const std::filesystem::path& path) {
  AnyFarField any = read_far_field(path);
  if (auto* m = std::get_if<FarFieldMatrix>(&any)) return std::move(*m);
  throw IoError(path.string() + ": expected kind=complex");
}

PhaselessMatrix read_phaseless_far_field(const std::filesystem::path& path) {
  AnyFarField any = read_far_field(path);
  if (auto* m = std::get_if<PhaselessMatrix>(&any)) return std::move(*m);
  throw IoError(path.string() + ": expected kind=modulus");
}

GridFormat parse_grid_format(std::string_view name) {
  if (name == "csv") return GridFormat::csv;
  if (name == "pgm") return GridFormat::pgm;
  throw std::invalid_argument("unknown grid format '" + std::string(name) + "'");
}

std::string format_grid(const GridField& g, GridFormat format) {
  std::string out;
  if (format == GridFormat::csv) {
    out = "x,y,value\n";
    for (int iy = 0; iy < g.ny(); ++iy) {
      for (int ix = 0; ix < g.nx(); ++ix) {
        const Point z = g.node(ix, iy);
        append_number(out, z.x());
        out += ',';
        append_number(out, z.y());
        out += ',';
        append_number(out, g.values(iy, ix));
        out += '\n';
      }
    }
    return out;
  }
  out = "P2\n" + std::to_string(g.nx()) + " " + std::to_string(g.ny()) + "\n" + std::to_string(kMaxGray) + "\n";
  const double lo = g.values.size() ? g.values.minCoeff() : 0.0;
  const double hi = g.values.size() ? g.values.maxCoeff() : 0.0;
  for (int iy = g.ny() - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < g.nx(); ++ix) {
      const long level = hi > lo ? std::lround((g.values(iy, ix) - lo) / (hi - lo) * kMaxGray) : 0;
      if (ix > 0) out += ' ';
      out += std::to_string(level);
    }
    out += '\n';
  }
  return out;
}

void write_grid(const GridField& g, const std::filesystem::path& path, GridFormat format) {
  write_text(format_grid(g, format), path);
}

}  // namespace phasescat

#include "ghm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ghm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_real(const std::string& s, double& out) {
  if (s.empty()) return false;
  try {
    std::size_t used = 0;
    out = std::stod(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

// Non-empty lines split into cells; the first row is a header when any of
// its cells is not a number.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table parse_table(const std::string& text) {
  Table t;
  std::stringstream ss(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_csv_line(line);
    std::vector<double> row;
    row.reserve(cells.size());
    bool numeric = true;
    for (const auto& c : cells) {
      double v = 0.0;
      if (!parse_real(c, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (t.rows.empty() && t.header.empty()) {
        t.header = cells;
        continue;
      }
      throw IoError("CSV line " + std::to_string(line_no) + ": non-numeric cell");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json number(double v) {
  if (std::nearbyint(v) == v && std::abs(v) < 9.0e15) return static_cast<std::int64_t>(v);
  return v;
}

template <typename T>
T get_param(const json& params, const char* key, T fallback) {
  if (!params.contains(key)) return fallback;
  return params.at(key).get<T>();
}

}  // namespace

SpaceFormat parse_format(const std::string& name) {
  if (name == "json") return SpaceFormat::Json;
  if (name == "csv") return SpaceFormat::Csv;
  throw IoError("unknown format '" + name + "' (expected json or csv)");
}

SpaceFormat format_for(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? SpaceFormat::Csv : SpaceFormat::Json;
}

json space_to_json(const FiniteMetricSpace& s) {
  json j;
  j["n"] = s.size();
  if (!s.labels().empty()) j["labels"] = s.labels();
  json d = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < s.size(); ++k) row.push_back(number(s(i, k)));
    d.push_back(std::move(row));
  }
  j["d"] = std::move(d);
  return j;
}

FiniteMetricSpace space_from_json(const json& j, double tolerance) {
  if (!j.is_object() || !j.contains("d")) throw IoError("space JSON needs a \"d\" matrix");
  std::vector<std::vector<double>> rows;
  try {
    rows = j.at("d").get<std::vector<std::vector<double>>>();
  } catch (const json::exception& e) {
    throw IoError(std::string("space JSON: \"d\" must be a matrix of numbers: ") + e.what());
  }
  if (j.contains("n") && j.at("n").get<std::size_t>() != rows.size())
    throw IoError("space JSON: \"n\" does not match the number of rows");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    labels = j.at("labels").get<std::vector<std::string>>();
    if (labels.size() != rows.size()) throw IoError("space JSON: one label per point expected");
  }
  return FiniteMetricSpace::from_rows(rows, tolerance, std::move(labels));
}

std::string space_to_csv(const FiniteMetricSpace& s) {
  std::string out;
  if (!s.labels().empty()) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ',';
      out += s.labels()[i];
    }
    out += '\n';
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k) out += ',';
      out += format_real(s(i, k));
    }
    out += '\n';
  }
  return out;
}

FiniteMetricSpace space_from_csv(const std::string& text, double tolerance) {
  Table t = parse_table(text);
  if (!t.header.empty() && t.header.size() != t.rows.size())
    throw IoError("CSV header must have one label per point");
  return FiniteMetricSpace::from_rows(t.rows, tolerance, std::move(t.header));
}

FiniteMetricSpace space_from_coordinates_csv(const std::string& text, double tolerance) {
  const Table t = parse_table(text);
  if (t.rows.empty()) throw IoError("coordinate CSV has no points");
  const std::size_t dim = t.rows.front().size();
  for (const auto& r : t.rows)
    if (r.size() != dim) throw IoError("coordinate rows differ in length");
  const std::size_t n = t.rows.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k) {
      double sq = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        const double diff = t.rows[i][c] - t.rows[k][c];
        sq += diff * diff;
      }
      d[i * n + k] = d[k * n + i] = std::sqrt(sq);
    }
  return FiniteMetricSpace(n, std::move(d), {}, tolerance);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

FiniteMetricSpace read_space(const std::filesystem::path& path, double tolerance) {
  const std::string text = read_text(path);
  if (format_for(path) == SpaceFormat::Csv) return space_from_csv(text, tolerance);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return space_from_json(j, tolerance);
}

std::string serialize_space(const FiniteMetricSpace& s, SpaceFormat format) {
  if (format == SpaceFormat::Csv) return space_to_csv(s);
  return space_to_json(s).dump() + "\n";
}

void write_space(const std::filesystem::path& path, const FiniteMetricSpace& s,
                 SpaceFormat format) {
  write_text(path, serialize_space(s, format));
}

json mapping_to_json(const Mapping& f) {
  return {{"source_n", f.source_n()}, {"target_n", f.target_n()}, {"image", f.image()}};
}

Mapping mapping_from_json(const json& j) {
  auto image = j.at("image").get<std::vector<std::size_t>>();
  if (j.contains("source_n") && j.at("source_n").get<std::size_t>() != image.size())
    throw IoError("mapping JSON: source_n does not match the image length");
  try {
    return Mapping(j.at("target_n").get<std::size_t>(), std::move(image));
  } catch (const std::out_of_range& e) {
    throw IoError(std::string("mapping JSON: ") + e.what());
  }
}

json result_to_json(const DistanceResult& r) {
  return {{"kind", to_string(r.kind)},
          {"value", number(r.value)},
          {"lower_bound", number(r.lower_bound)},
          {"upper_bound", number(r.upper_bound)},
          {"exact", r.exact},
          {"nodes_explored", r.nodes_explored},
          {"certificate",
           {{"f", mapping_to_json(r.certificate.f)}, {"g", mapping_to_json(r.certificate.g)}}}};
}

json relax_to_json(const RelaxResult& r) {
  json soft = json::array();
  const auto& m = r.soft.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    soft.push_back(std::move(row));
  }
  return {{"rounded", mapping_to_json(r.rounded)},
          {"rounded_distortion", number(r.rounded_value)},
          {"soft_distortion", r.soft_value},
          {"surrogate", r.surrogate},
          {"best_restart", r.best_restart},
          {"converged", r.converged},
          {"soft", std::move(soft)}};
}

json net_to_json(const EpsilonNet& net, const FiniteMetricSpace& parent) {
  return {{"epsilon", number(net.epsilon)},
          {"indices", net.indices},
          {"space", space_to_json(parent.subspace(net.indices))}};
}

json spec_to_json(const SpaceSpec& spec) {
  json params = json::object();
  switch (spec.kind) {
    case SpaceKind::Simplex:
      params = {{"m", spec.m}, {"diam", number(spec.diam)}};
      break;
    case SpaceKind::USequence:
    case SpaceKind::CounterexamplePair:
      params = {{"k", spec.k}};
      break;
    case SpaceKind::TightPair:
      params = {{"n", spec.n}};
      break;
    case SpaceKind::UnionSum: {
      json parts = json::array();
      for (const auto& p : spec.parts) parts.push_back(spec_to_json(p));
      params = {{"a", number(spec.a)}, {"parts", std::move(parts)}};
      if (spec.require_ultrametric) params["require_ultrametric"] = true;
      break;
    }
    case SpaceKind::RandomMetric:
    case SpaceKind::RandomUltrametric:
      params = {{"n", spec.n}, {"seed", spec.seed}, {"diam", number(spec.diam)}};
      break;
  }
  return {{"kind", to_string(spec.kind)}, {"params", std::move(params)}};
}

SpaceSpec spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw IoError("space spec needs a \"kind\"");
  SpaceSpec s;
  try {
    s.kind = parse_space_kind(j.at("kind").get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw IoError(e.what());
  }
  const json params = j.contains("params") ? j.at("params") : json::object();
  try {
    s.n = get_param<std::size_t>(params, "n", s.n);
    s.m = get_param<std::size_t>(params, "m", s.m);
    s.k = get_param<unsigned>(params, "k", s.k);
    s.diam = get_param<double>(params, "diam", s.diam);
    s.a = get_param<double>(params, "a", s.a);
    s.seed = get_param<std::uint64_t>(params, "seed", s.seed);
    s.require_ultrametric = get_param<bool>(params, "require_ultrametric", false);
    if (params.contains("parts"))
      for (const auto& p : params.at("parts")) s.parts.push_back(spec_from_json(p));
  } catch (const json::exception& e) {
    throw IoError(std::string("space spec parameters: ") + e.what());
  }
  return s;
}

}  // namespace ghm

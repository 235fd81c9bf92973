#include "ghm/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "ghm/constructions.hpp"
#include "ghm/simplex.hpp"

namespace ghm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Quantity parse_quantity(const std::string& s) {
  if (s == "gh") return Quantity::GH;
  if (s == "mgh") return Quantity::mGH;
  if (s == "ratio") return Quantity::Ratio;
  throw IoError("unknown assertion quantity '" + s + "'");
}

const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::GH: return "gh";
    case Quantity::mGH: return "mgh";
    case Quantity::Ratio: return "ratio";
  }
  return "?";
}

Comparison parse_comparison(const std::string& s) {
  if (s == "eq") return Comparison::Eq;
  if (s == "ge") return Comparison::Ge;
  if (s == "le") return Comparison::Le;
  throw IoError("unknown assertion op '" + s + "'");
}

const char* comparison_name(Comparison c) {
  switch (c) {
    case Comparison::Eq: return "eq";
    case Comparison::Ge: return "ge";
    case Comparison::Le: return "le";
  }
  return "?";
}

std::vector<FiniteMetricSpace> load_source(const json& j, const std::filesystem::path& base) {
  if (j.is_string()) {
    std::filesystem::path p = j.get<std::string>();
    if (p.is_relative()) p = base / p;
    return {read_space(p)};
  }
  if (j.is_object() && j.contains("file")) return load_source(j.at("file"), base);
  if (j.is_object() && j.contains("d")) return {space_from_json(j)};
  try {
    return generate(spec_from_json(j));
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("invalid space spec: ") + e.what());
  }
}

FiniteMetricSpace single(std::vector<FiniteMetricSpace> v, const char* what) {
  if (v.size() != 1) throw IoError(std::string(what) + " must describe a single space");
  return std::move(v.front());
}

InstanceSpec parse_instance(const json& j, std::size_t index,
                            const std::filesystem::path& base) {
  InstanceSpec inst;
  inst.id = j.value("id", "instance" + std::to_string(index));
  if (j.contains("params")) inst.params = j.at("params");
  if (j.contains("pair")) {
    inst.spaces = load_source(j.at("pair"), base);
    if (inst.spaces.size() != 2) throw IoError(inst.id + ": \"pair\" must generate two spaces");
  } else if (j.contains("x") && j.contains("y")) {
    inst.spaces.push_back(single(load_source(j.at("x"), base), "\"x\""));
    inst.spaces.push_back(single(load_source(j.at("y"), base), "\"y\""));
  } else {
    throw IoError(inst.id + ": instance needs \"pair\" or both \"x\" and \"y\"");
  }

  if (j.contains("solvers")) {
    inst.gh = inst.mgh = false;
    for (const auto& s : j.at("solvers")) {
      const auto name = s.get<std::string>();
      if (name == "gh") inst.gh = true;
      else if (name == "mgh") inst.mgh = true;
      else if (name == "simplex") inst.simplex = inst.gh = inst.mgh = true;
      else throw IoError(inst.id + ": unknown solver '" + name + "'");
    }
  }
  if (inst.simplex && !as_regular_simplex(inst.spaces[1]))
    throw IoError(inst.id + ": simplex solver needs a regular simplex as Y");

  for (const auto& a : j.value("assertions", json::array())) {
    AssertionSpec spec;
    spec.id = a.at("id").get<std::string>();
    spec.quantity = parse_quantity(a.at("quantity").get<std::string>());
    spec.op = parse_comparison(a.value("op", "eq"));
    spec.value = a.at("value").get<double>();
    if (a.contains("tolerance")) {
      spec.tolerance = a.at("tolerance").get<double>();
      if (!(*spec.tolerance >= 0.0)) throw IoError(spec.id + ": tolerance must be >= 0");
    }
    if ((spec.quantity == Quantity::GH && !inst.gh) ||
        (spec.quantity == Quantity::mGH && !inst.mgh) ||
        (spec.quantity == Quantity::Ratio && !(inst.gh && inst.mgh)))
      throw IoError(spec.id + ": asserted quantity is not computed by the chosen solvers");
    inst.assertions.push_back(std::move(spec));
  }
  return inst;
}

AssertionOutcome evaluate(const AssertionSpec& spec, const InstanceRecord& rec, double slack) {
  AssertionOutcome out{spec, 0.0, false, ""};
  const double tol = spec.tolerance.value_or(slack);
  bool exact = true;
  switch (spec.quantity) {
    case Quantity::GH:
      out.actual = rec.gh->value;
      exact = rec.gh->exact;
      break;
    case Quantity::mGH:
      out.actual = rec.mgh->value;
      exact = rec.mgh->exact;
      break;
    case Quantity::Ratio:
      if (!rec.ratio) {
        out.note = "ratio undefined (mGH is 0)";
        return out;
      }
      out.actual = *rec.ratio;
      exact = rec.gh->exact && rec.mgh->exact;
      break;
  }
  if (!exact) {
    out.note = "search budget exhausted";
    return out;
  }
  switch (spec.op) {
    case Comparison::Eq: out.passed = std::abs(out.actual - spec.value) <= tol; break;
    case Comparison::Ge: out.passed = out.actual >= spec.value - tol; break;
    case Comparison::Le: out.passed = out.actual <= spec.value + tol; break;
  }
  return out;
}

std::string params_text(const json& params) {
  std::string s;
  for (auto it = params.begin(); it != params.end(); ++it) {
    if (!s.empty()) s += ' ';
    s += it.key() + "=" + (it->is_string() ? it->get<std::string>() : it->dump());
  }
  return s;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

ExperimentManifest parse_manifest(const std::string& text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("manifest: ") + e.what());
  }
  if (!j.is_object()) throw IoError("manifest must be a JSON object");

  ExperimentManifest m;
  m.hash = fnv1a64(text);
  try {
    m.name = j.value("name", "unnamed");
    if (j.contains("output")) {
      std::filesystem::path out = j.at("output").get<std::string>();
      m.output = out.is_relative() ? base_dir / out : out;
    }
    if (j.contains("budget")) {
      const json& b = j.at("budget");
      if (b.contains("nodes")) {
        const auto nodes = b.at("nodes").get<double>();
        if (!(nodes >= 1.0)) throw IoError("manifest budget.nodes must be positive");
        m.budget.max_nodes = static_cast<std::uint64_t>(nodes);
      }
      if (b.contains("time_limit")) {
        m.budget.time_limit = b.at("time_limit").get<double>();
        if (!(*m.budget.time_limit > 0.0))
          throw IoError("manifest budget.time_limit must be positive");
      }
    }
    const json instances = j.value("instances", json::array());
    for (std::size_t i = 0; i < instances.size(); ++i)
      m.instances.push_back(parse_instance(instances[i], i, base_dir));
  } catch (const json::exception& e) {
    throw IoError(std::string("manifest: ") + e.what());
  }
  return m;
}

ExperimentManifest load_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_text(path), path.parent_path());
}

bool RunRecord::passed() const {
  for (const auto& inst : instances)
    for (const auto& a : inst.assertions)
      if (!a.passed) return false;
  return true;
}

RunRecord run_experiment(const ExperimentManifest& manifest) {
  RunRecord record;
  record.name = manifest.name;
  record.manifest_hash = manifest.hash;
  const auto start = Clock::now();
  for (const auto& inst : manifest.instances) {
    const auto t0 = Clock::now();
    const FiniteMetricSpace& x = inst.spaces[0];
    const FiniteMetricSpace& y = inst.spaces[1];
    InstanceRecord rec;
    rec.id = inst.id;
    rec.params = inst.params;
    rec.x_size = x.size();
    rec.y_size = y.size();
    if (inst.simplex) {
      const auto [m, lambda] = *as_regular_simplex(y);
      rec.gh = gh_to_simplex(x, m, lambda, manifest.budget);
      rec.mgh = mgh_to_simplex(x, m, lambda, manifest.budget);
    } else {
      if (inst.mgh) rec.mgh = exact_mgh(x, y, manifest.budget);
      if (inst.gh) rec.gh = exact_gh(x, y, manifest.budget);
    }
    if (rec.gh && rec.mgh && rec.mgh->value > 0.0) rec.ratio = rec.gh->value / rec.mgh->value;
    const double slack = comparison_slack(x, y);
    for (const auto& a : inst.assertions) rec.assertions.push_back(evaluate(a, rec, slack));
    rec.seconds = seconds_since(t0);
    record.instances.push_back(std::move(rec));
  }
  record.seconds = seconds_since(start);
  return record;
}

json record_to_json(const RunRecord& record) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(record.manifest_hash));
  json instances = json::array();
  for (const auto& inst : record.instances) {
    json j = {{"id", inst.id},
              {"params", inst.params},
              {"x_size", inst.x_size},
              {"y_size", inst.y_size},
              {"seconds", inst.seconds}};
    if (inst.gh) j["gh"] = result_to_json(*inst.gh);
    if (inst.mgh) j["mgh"] = result_to_json(*inst.mgh);
    j["ratio"] = inst.ratio ? json(*inst.ratio) : json(nullptr);
    json assertions = json::array();
    for (const auto& a : inst.assertions) {
      json aj = {{"id", a.spec.id},
                 {"quantity", quantity_name(a.spec.quantity)},
                 {"op", comparison_name(a.spec.op)},
                 {"expected", a.spec.value},
                 {"actual", a.actual},
                 {"passed", a.passed}};
      if (a.spec.tolerance) aj["tolerance"] = *a.spec.tolerance;
      if (!a.note.empty()) aj["note"] = a.note;
      assertions.push_back(std::move(aj));
    }
    j["assertions"] = std::move(assertions);
    instances.push_back(std::move(j));
  }
  return {{"name", record.name},
          {"manifest_hash", hash},
          {"passed", record.passed()},
          {"seconds", record.seconds},
          {"instances", std::move(instances)}};
}

std::string record_table(const RunRecord& record) {
  std::string out = record.name + "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %-12s %4s %4s %10s %10s %8s %6s  %s\n", "instance",
                "params", "|X|", "|Y|", "mGH", "GH", "ratio", "exact", "assertions");
  out += line;
  std::size_t failures = 0;
  for (const auto& inst : record.instances) {
    std::size_t passed = 0;
    for (const auto& a : inst.assertions) passed += a.passed ? 1 : 0;
    failures += inst.assertions.size() - passed;
    const bool exact = (!inst.gh || inst.gh->exact) && (!inst.mgh || inst.mgh->exact);
    std::snprintf(line, sizeof line, "%-16s %-12s %4zu %4zu %10s %10s %8s %6s  %zu/%zu\n",
                  inst.id.c_str(), params_text(inst.params).c_str(), inst.x_size, inst.y_size,
                  inst.mgh ? fixed(inst.mgh->value).c_str() : "-",
                  inst.gh ? fixed(inst.gh->value).c_str() : "-",
                  inst.ratio ? fixed(*inst.ratio).c_str() : "-", exact ? "yes" : "no", passed,
                  inst.assertions.size());
    out += line;
    for (const auto& a : inst.assertions)
      if (!a.passed)
        out += "  FAILED " + a.spec.id + ": " + quantity_name(a.spec.quantity) + " = " +
               fixed(a.actual) + ", expected " + comparison_name(a.spec.op) + " " +
               fixed(a.spec.value) + (a.note.empty() ? "" : " (" + a.note + ")") + "\n";
  }
  std::snprintf(line, sizeof line, "%zu instance(s), %zu failed assertion(s), %.2fs\n",
                record.instances.size(), failures, record.seconds);
  out += line;
  return out;
}

}  // namespace ghm

#include "helix_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "helix/error.hpp"

namespace helix::cli {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!keys.contains(it.key())) throw ValidationError(join(path, it.key()), "unknown key");
}

const json& require_object(const json& v, const std::string& path) {
  if (!v.is_object()) throw ValidationError(path, "expected an object");
  return v;
}

double finite_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ValidationError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError(path, "must be finite");
  return x;
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ValidationError(path, "expected an integer");
  return v.get<int>();
}

bool boolean(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ValidationError(path, "expected true or false");
  return v.get<bool>();
}

template <class T, class Fn>
void optional_field(const json& obj, const char* key, const std::string& path, T& out, Fn&& read) {
  if (auto it = obj.find(key); it != obj.end()) out = read(*it, join(path, key));
}

std::vector<double> number_list(const json& v, const std::string& path) {
  if (!v.is_array()) throw ValidationError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(finite_number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

PeriodicFunction parse_periodic(const json& v, const std::string& path) {
  if (v.is_number()) return PeriodicFunction::constant(finite_number(v, path));
  require_object(v, path);
  reject_unknown(v, path, {"const", "cos", "sin"});
  if (v.contains("const")) {
    if (v.size() != 1) throw ValidationError(path, "'const' cannot be combined with Fourier coefficients");
    return PeriodicFunction::constant(finite_number(v["const"], join(path, "const")));
  }
  std::vector<double> cos_c;
  std::vector<double> sin_c;
  optional_field(v, "cos", path, cos_c, number_list);
  optional_field(v, "sin", path, sin_c, number_list);
  return PeriodicFunction::fourier(std::move(cos_c), std::move(sin_c));
}

DomainParams parse_domain(const json& v, const std::string& path) {
  require_object(v, path);
  reject_unknown(v, path, {"omega", "epsilon", "R"});
  DomainParams d;
  optional_field(v, "omega", path, d.omega, finite_number);
  optional_field(v, "epsilon", path, d.epsilon, finite_number);
  optional_field(v, "R", path, d.big_r, finite_number);
  validate(d);
  return d;
}

std::optional<MultiplierParams> parse_multiplier(const json& v, const std::string& path) {
  if (v.is_string()) {
    if (v.get<std::string>() != "auto") throw ValidationError(path, "expected \"auto\" or {a, alpha}");
    return std::nullopt;
  }
  require_object(v, path);
  reject_unknown(v, path, {"a", "alpha"});
  if (!v.contains("a")) throw ValidationError(join(path, "a"), "required when the multiplier is explicit");
  MultiplierParams m;
  m.a = finite_number(v["a"], join(path, "a"));
  optional_field(v, "alpha", path, m.alpha, finite_number);
  return m;
}

void parse_boundary(const json& v, const std::string& path, const DomainParams& domain, RunConfig& cfg) {
  if (v.is_string()) {
    const auto label = v.get<std::string>();
    if (label == "sommerfeld+")
      cfg.boundary = sommerfeld_spec(domain, SommerfeldSign::Plus);
    else if (label == "sommerfeld-")
      cfg.boundary = sommerfeld_spec(domain, SommerfeldSign::Minus);
    else
      throw ValidationError(path, "expected \"sommerfeld+\", \"sommerfeld-\" or an object");
    cfg.boundary_label = label;
    return;
  }
  require_object(v, path);
  reject_unknown(v, path, {"sigma", "tau", "inner_k", "outer_l"});
  for (const char* key : {"sigma", "tau"})
    if (!v.contains(key)) throw ValidationError(join(path, key), "required");
  BoundarySpec spec;
  spec.sigma = parse_periodic(v["sigma"], join(path, "sigma"));
  spec.tau = parse_periodic(v["tau"], join(path, "tau"));
  optional_field(v, "inner_k", path, spec.inner_k, parse_periodic);
  optional_field(v, "outer_l", path, spec.outer_l, parse_periodic);
  validate(spec);
  cfg.boundary = std::move(spec);
  cfg.boundary_label = "custom";
}

GaussianCharge parse_charge(const json& v, const std::string& path) {
  require_object(v, path);
  reject_unknown(v, path, {"r0", "phi0", "amplitude", "width"});
  GaussianCharge q;
  optional_field(v, "r0", path, q.r0, finite_number);
  optional_field(v, "phi0", path, q.phi0, finite_number);
  optional_field(v, "amplitude", path, q.amplitude, finite_number);
  optional_field(v, "width", path, q.width, finite_number);
  if (!(q.width > 0.0)) throw ValidationError(join(path, "width"), "must be > 0");
  return q;
}

SourceSpec parse_source(const json& v, const std::string& path, const DomainParams& domain) {
  if (v.is_string()) {
    if (v.get<std::string>() != "zero") throw ValidationError(path, "expected \"zero\" or an object");
    return ZeroSource{};
  }
  require_object(v, path);
  reject_unknown(v, path, {"zero", "gaussians", "mms"});
  if (v.size() != 1) throw ValidationError(path, "exactly one of zero, gaussians, mms");
  if (v.contains("zero")) return ZeroSource{};
  if (v.contains("mms")) {
    const std::string p = join(path, "mms");
    if (!v["mms"].is_string()) throw ValidationError(p, "expected a catalog label");
    const auto label = v["mms"].get<std::string>();
    find_mms_entry(domain, label);
    return MmsSource{label};
  }
  const std::string p = join(path, "gaussians");
  const json& list = v["gaussians"];
  if (!list.is_array() || list.empty()) throw ValidationError(p, "expected a non-empty array");
  GaussianSource src;
  for (std::size_t i = 0; i < list.size(); ++i) {
    GaussianCharge q = parse_charge(list[i], p + "[" + std::to_string(i) + "]");
    if (q.r0 < domain.epsilon || q.r0 > domain.big_r)
      throw ValidationError(p + "[" + std::to_string(i) + "].r0", "must lie in [epsilon, R]");
    src.charges.push_back(q);
  }
  return src;
}

Tolerances parse_tolerances(const json& v, const std::string& path) {
  require_object(v, path);
  reject_unknown(v, path,
                 {"tol_psd", "margin", "radial_samples", "phi_samples", "oracle_intervals", "oracle_disagreement",
                  "cg_tolerance", "cg_max_iterations", "force_iterative"});
  Tolerances t;
  optional_field(v, "tol_psd", path, t.tol_psd, finite_number);
  optional_field(v, "margin", path, t.margin, finite_number);
  optional_field(v, "radial_samples", path, t.radial_samples, integer);
  optional_field(v, "phi_samples", path, t.phi_samples, integer);
  optional_field(v, "oracle_intervals", path, t.oracle_intervals, integer);
  optional_field(v, "oracle_disagreement", path, t.oracle_disagreement, finite_number);
  optional_field(v, "cg_tolerance", path, t.cg_tolerance, finite_number);
  optional_field(v, "cg_max_iterations", path, t.cg_max_iterations, integer);
  optional_field(v, "force_iterative", path, t.force_iterative, boolean);
  if (t.tol_psd < 0.0) throw ValidationError(join(path, "tol_psd"), "must be >= 0");
  if (t.margin < 0.0) throw ValidationError(join(path, "margin"), "must be >= 0");
  if (t.radial_samples < 2) throw ValidationError(join(path, "radial_samples"), "must be >= 2");
  if (t.phi_samples < 1) throw ValidationError(join(path, "phi_samples"), "must be >= 1");
  if (t.oracle_intervals < 16 || t.oracle_intervals % 4 != 0)
    throw ValidationError(join(path, "oracle_intervals"), "must be a multiple of 4 and at least 16");
  if (!(t.cg_tolerance > 0.0)) throw ValidationError(join(path, "cg_tolerance"), "must be > 0");
  if (t.cg_max_iterations < 1) throw ValidationError(join(path, "cg_max_iterations"), "must be >= 1");
  return t;
}

}  // namespace

VerifyOptions RunConfig::verify_options() const {
  return {tolerances.margin, tolerances.tol_psd, tolerances.radial_samples, tolerances.phi_samples};
}

ChoiceOptions RunConfig::choice_options() const {
  ChoiceOptions o;
  o.margin = tolerances.margin;
  o.radial_samples = tolerances.radial_samples;
  o.phi_samples = tolerances.phi_samples;
  o.tol_psd = tolerances.tol_psd;
  return o;
}

RunConfig parse_config(const json& doc) {
  require_object(doc, "");
  reject_unknown(doc, "", {"schema", "domain", "multiplier", "boundary", "source", "grid", "solver", "tolerances"});
  RunConfig cfg;
  if (doc.contains("schema")) {
    cfg.schema = integer(doc["schema"], "schema");
    if (cfg.schema != kSchemaVersion)
      throw ValidationError("schema", "unsupported version " + std::to_string(cfg.schema));
  }
  if (doc.contains("domain")) cfg.domain = parse_domain(doc["domain"], "domain");
  if (doc.contains("multiplier")) cfg.multiplier = parse_multiplier(doc["multiplier"], "multiplier");
  if (!doc.contains("boundary")) throw ValidationError("boundary", "required");
  parse_boundary(doc["boundary"], "boundary", cfg.domain, cfg);
  if (doc.contains("source")) cfg.source = parse_source(doc["source"], "source", cfg.domain);
  if (doc.contains("grid")) {
    const json& g = require_object(doc["grid"], "grid");
    reject_unknown(g, "grid", {"n_r", "n_phi"});
    optional_field(g, "n_r", "grid", cfg.n_r, integer);
    optional_field(g, "n_phi", "grid", cfg.n_phi, integer);
    if (cfg.n_r < 3) throw ValidationError("grid.n_r", "must be >= 3");
    if (cfg.n_phi < 4 || cfg.n_phi % 2 != 0) throw ValidationError("grid.n_phi", "must be even and >= 4");
  }
  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    const std::string name = s.is_string() ? s.get<std::string>() : "";
    if (name == "modes")
      cfg.solver = SolverChoice::Modes;
    else if (name == "fosls")
      cfg.solver = SolverChoice::Fosls;
    else
      throw ValidationError("solver", "expected \"modes\" or \"fosls\"");
  }
  if (doc.contains("tolerances")) cfg.tolerances = parse_tolerances(doc["tolerances"], "tolerances");
  if (cfg.solver == SolverChoice::Modes && !cfg.boundary.has_constant_coefficients())
    throw ValidationError("solver", "the mode solver needs constant sigma and tau");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config", "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

json periodic_to_json(const PeriodicFunction& fn) {
  if (fn.is_constant()) return fn.mean();
  return json{{"cos", fn.cos_coeffs()}, {"sin", fn.sin_coeffs()}};
}

json to_json(const RunConfig& cfg) {
  json doc;
  doc["schema"] = cfg.schema;
  doc["domain"] = {{"omega", cfg.domain.omega}, {"epsilon", cfg.domain.epsilon}, {"R", cfg.domain.big_r}};
  if (cfg.multiplier)
    doc["multiplier"] = {{"a", cfg.multiplier->a}, {"alpha", cfg.multiplier->alpha}};
  else
    doc["multiplier"] = "auto";
  if (cfg.boundary_label == "custom")
    doc["boundary"] = {{"sigma", periodic_to_json(cfg.boundary.sigma)},
                       {"tau", periodic_to_json(cfg.boundary.tau)},
                       {"inner_k", periodic_to_json(cfg.boundary.inner_k)},
                       {"outer_l", periodic_to_json(cfg.boundary.outer_l)}};
  else
    doc["boundary"] = cfg.boundary_label;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ZeroSource>) {
          doc["source"] = "zero";
        } else if constexpr (std::is_same_v<T, MmsSource>) {
          doc["source"] = {{"mms", s.label}};
        } else {
          json list = json::array();
          for (const auto& q : s.charges)
            list.push_back({{"r0", q.r0}, {"phi0", q.phi0}, {"amplitude", q.amplitude}, {"width", q.width}});
          doc["source"] = {{"gaussians", list}};
        }
      },
      cfg.source);
  doc["grid"] = {{"n_r", cfg.n_r}, {"n_phi", cfg.n_phi}};
  doc["solver"] = to_string(cfg.solver);
  const Tolerances& t = cfg.tolerances;
  doc["tolerances"] = {{"tol_psd", t.tol_psd},
                       {"margin", t.margin},
                       {"radial_samples", t.radial_samples},
                       {"phi_samples", t.phi_samples},
                       {"oracle_intervals", t.oracle_intervals},
                       {"oracle_disagreement", t.oracle_disagreement},
                       {"cg_tolerance", t.cg_tolerance},
                       {"cg_max_iterations", t.cg_max_iterations},
                       {"force_iterative", t.force_iterative}};
  return doc;
}

}  // namespace helix::cli

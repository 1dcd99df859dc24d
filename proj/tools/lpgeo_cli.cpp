// Command-line front end over the C API: reads a JSON config, runs one
// operation and writes a long-format CSV or JSON table.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "lpgeo/lpgeo.h"

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ComputationError : std::runtime_error {
  ComputationError(std::string n, const std::string& what) : std::runtime_error(what), name(std::move(n)) {}
  std::string name;
};

void check(lpgeo_status s, const std::string& field = {}) {
  if (s == LPGEO_OK) return;
  const std::string msg = lpgeo_last_error();
  if (s == LPGEO_CONFIG_ERROR) throw ConfigError(field.empty() ? msg : field + ": " + msg);
  throw ComputationError(lpgeo_status_name(s), msg);
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Grid = std::unique_ptr<lpgeo_grid, Deleter<lpgeo_grid, lpgeo_grid_free>>;
using Fn = std::unique_ptr<lpgeo_fn, Deleter<lpgeo_fn, lpgeo_fn_free>>;
using Tol = std::unique_ptr<lpgeo_tol, Deleter<lpgeo_tol, lpgeo_tol_free>>;
using Young = std::unique_ptr<lpgeo_young, Deleter<lpgeo_young, lpgeo_young_free>>;
using Form = std::unique_ptr<lpgeo_form, Deleter<lpgeo_form, lpgeo_form_free>>;
using Report = std::unique_ptr<lpgeo_report, Deleter<lpgeo_report, lpgeo_report_free>>;

// ---------------------------------------------------------------- output

using Cell = std::variant<std::string, double>;

struct Table {
  std::vector<std::string> columns{"quantity", "x", "value"};
  std::vector<std::vector<Cell>> rows;

  void scalar(const std::string& name, double v) { rows.push_back({name, std::string(), v}); }
  void field(const std::string& name, const lpgeo_fn* f) {
    const size_t n = lpgeo_fn_size(f);
    std::vector<double> v(n);
    check(lpgeo_fn_values(f, v.data(), n));
    for (size_t i = 0; i < n; ++i) {
      double x = 0.0;
      check(lpgeo_fn_node(f, i, &x));
      rows.push_back({name, x, v[i]});
    }
  }
};

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return number(*d);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string json_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return std::isfinite(*d) ? number(*d) : json(number(*d)).dump();
  return json(std::get<std::string>(c)).dump();
}

std::string render(const Table& t, const std::string& format, const std::string& command, const std::string& op) {
  std::ostringstream os;
  if (format == "csv") {
    for (size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& r : t.rows) {
      for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
      os << '\n';
    }
    return os.str();
  }
  os << "{\"command\":" << json(command).dump() << ",\"op\":" << json(op).dump() << ",\"columns\":[";
  for (size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << json(t.columns[i]).dump();
  os << "],\"rows\":[";
  for (size_t k = 0; k < t.rows.size(); ++k) {
    os << (k ? ",\n" : "\n") << "[";
    for (size_t i = 0; i < t.rows[k].size(); ++i) os << (i ? "," : "") << json_cell(t.rows[k][i]);
    os << "]";
  }
  os << "\n]}\n";
  return os.str();
}

// ---------------------------------------------------------------- config

// Field accessors that name the offending key on failure.
const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError(path + key + ": missing");
  return obj.at(key);
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path + ": expected a number");
  return v.get<double>();
}

long long as_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path + ": expected an integer");
  return v.get<long long>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path + ": expected a string");
  return v.get<std::string>();
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : keys) ok = ok || it.key() == k;
    if (!ok) throw ConfigError(path + it.key() + ": unknown key");
  }
}

double exponent_of(const json& v, const std::string& path) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return INFINITY;
    throw ConfigError(path + ": expected a number or \"inf\"");
  }
  return as_number(v, path);
}

class Context {
 public:
  Context(json cfg, std::string command) : cfg_(std::move(cfg)), command_(std::move(command)) {
    if (!cfg_.is_object()) throw ConfigError("config: expected a JSON object");
    only_keys(cfg_, {"command", "op", "grid", "functions", "forms", "p", "young", "tolerances", "params", "output"}, "");
    if (cfg_.contains("command") && as_string(cfg_["command"], "command") != command_)
      throw ConfigError("command: config names '" + cfg_["command"].get<std::string>() + "' but '" + command_ +
                        "' was requested");
    params_ = cfg_.value("params", json::object());
    if (!params_.is_object()) throw ConfigError("params: expected an object");
    make_grid();
    make_tolerances();
    if (cfg_.contains("functions")) {
      const auto& fs = cfg_["functions"];
      if (!fs.is_object()) throw ConfigError("functions: expected an object");
      for (auto it = fs.begin(); it != fs.end(); ++it) validate_def(it.value(), "functions." + it.key());
    }
    if (cfg_.contains("p")) p_ = exponent_of(cfg_["p"], "p");
    young_label_ = cfg_.contains("young") ? as_string(cfg_["young"], "young") : "power:2";
    {
      lpgeo_young* y = nullptr;
      check(lpgeo_young_from_label(young_label_.c_str(), &y), "young");
      young_.reset(y);
    }
  }

  const std::string& command() const { return command_; }
  std::string op(const std::string& fallback) const {
    return cfg_.contains("op") ? as_string(cfg_["op"], "op") : fallback;
  }
  double p() const { return p_; }
  const lpgeo_tol* tol() const { return tol_.get(); }
  const lpgeo_young* young() const { return young_.get(); }
  const lpgeo_grid* grid() const { return grid_.get(); }
  double tol_scale() const { return tol_scale_; }
  const json& config() const { return cfg_; }

  double param(const std::string& key, double fallback) const {
    return params_.contains(key) ? as_number(params_[key], "params." + key) : fallback;
  }
  long long int_param(const std::string& key, long long fallback) const {
    return params_.contains(key) ? as_integer(params_[key], "params." + key) : fallback;
  }
  std::string string_param(const std::string& key, const std::string& fallback) const {
    return params_.contains(key) ? as_string(params_[key], "params." + key) : fallback;
  }
  bool bool_param(const std::string& key, bool fallback) const {
    if (!params_.contains(key)) return fallback;
    if (!params_[key].is_boolean()) throw ConfigError("params." + key + ": expected true or false");
    return params_[key].get<bool>();
  }
  std::vector<double> list_param(const std::string& key, std::vector<double> fallback) const {
    if (!params_.contains(key)) return fallback;
    const auto& v = params_[key];
    if (!v.is_array() || v.empty()) throw ConfigError("params." + key + ": expected a non-empty array");
    std::vector<double> out;
    for (size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], "params." + key + "[" + std::to_string(i) + "]"));
    return out;
  }

  bool has_fn(const std::string& name) const { return cfg_.contains("functions") && cfg_["functions"].contains(name); }

  Fn fn(const std::string& name) const {
    if (!has_fn(name)) throw ConfigError("functions." + name + ": missing");
    return sample(cfg_["functions"][name], "functions." + name);
  }

  // Named function, or the constant 1 when absent.
  Fn fn_or_one(const std::string& name) const {
    if (has_fn(name)) return fn(name);
    return from_values(std::vector<double>(lpgeo_grid_size(grid()), 1.0));
  }

  Fn from_values(const std::vector<double>& v) const {
    lpgeo_fn* f = nullptr;
    check(lpgeo_fn_new(grid(), v.data(), v.size(), &f));
    return Fn(f);
  }

  std::vector<double> nodes() const {
    std::vector<double> x(lpgeo_grid_size(grid()));
    for (size_t i = 0; i < x.size(); ++i) check(lpgeo_grid_node(grid(), i, &x[i]));
    return x;
  }

  Form form(const std::string& name) const;

 private:
  void make_grid() {
    const json g = cfg_.value("grid", json{{"kind", "circle"}, {"n", 256}});
    if (!g.is_object()) throw ConfigError("grid: expected an object");
    only_keys(g, {"kind", "n", "half_width"}, "grid.");
    const std::string kind = g.contains("kind") ? as_string(g["kind"], "grid.kind") : "circle";
    const long long n = as_integer(member(g, "n", "grid."), "grid.n");
    if (n <= 0) throw ConfigError("grid.n: must be positive");
    lpgeo_grid* out = nullptr;
    lpgeo_status s;
    if (kind == "circle") {
      s = lpgeo_grid_circle(static_cast<size_t>(n), &out);
    } else if (kind == "line") {
      s = lpgeo_grid_line(as_number(member(g, "half_width", "grid."), "grid.half_width"), static_cast<size_t>(n), &out);
    } else {
      throw ConfigError("grid.kind: expected \"circle\" or \"line\"");
    }
    if (s != LPGEO_OK) throw ConfigError(std::string("grid: ") + lpgeo_last_error());
    grid_.reset(out);
  }

  void make_tolerances() {
    lpgeo_tol* t = nullptr;
    check(lpgeo_tol_new(&t));
    tol_.reset(t);
    if (cfg_.contains("tolerances")) {
      const auto& tols = cfg_["tolerances"];
      if (!tols.is_object()) throw ConfigError("tolerances: expected an object");
      for (auto it = tols.begin(); it != tols.end(); ++it) {
        const std::string path = "tolerances." + it.key();
        if (lpgeo_tol_set(tol_.get(), it.key().c_str(), as_number(it.value(), path)) != LPGEO_OK)
          throw ConfigError(path + ": " + lpgeo_last_error());
      }
    }
    if (const char* env = std::getenv("LPGEO_TOL_SCALE")) {
      char* end = nullptr;
      const double s = std::strtod(env, &end);
      if (end == env || *end != '\0' || !(std::isfinite(s) && s > 0.0))
        throw ConfigError("LPGEO_TOL_SCALE: expected a positive real");
      check(lpgeo_tol_scale(tol_.get(), s), "LPGEO_TOL_SCALE");
      tol_scale_ = s;
    }
  }

  static void validate_def(const json& def, const std::string& path) {
    if (!def.is_object()) throw ConfigError(path + ": expected an object");
    if (def.contains("values")) {
      only_keys(def, {"values", "normalize"}, path + ".");
      if (!def["values"].is_array()) throw ConfigError(path + ".values: expected an array");
      for (size_t i = 0; i < def["values"].size(); ++i)
        (void)as_number(def["values"][i], path + ".values[" + std::to_string(i) + "]");
    } else if (def.contains("sum")) {
      only_keys(def, {"sum", "normalize"}, path + ".");
      if (!def["sum"].is_array() || def["sum"].empty()) throw ConfigError(path + ".sum: expected a non-empty array");
      for (size_t i = 0; i < def["sum"].size(); ++i) validate_def(def["sum"][i], path + ".sum[" + std::to_string(i) + "]");
    } else {
      const std::string b = as_string(member(def, "builtin", path + "."), path + ".builtin");
      if (b == "constant")
        only_keys(def, {"builtin", "value", "normalize"}, path + ".");
      else if (b == "sine" || b == "cosine")
        only_keys(def, {"builtin", "amplitude", "mode", "phase", "offset", "normalize"}, path + ".");
      else if (b == "gaussian-bump" || b == "smoothed-step")
        only_keys(def, {"builtin", "amplitude", "center", "width", "normalize"}, path + ".");
      else if (b == "identity")
        only_keys(def, {"builtin", "normalize"}, path + ".");
      else
        throw ConfigError(path + ".builtin: unknown builtin '" + b + "'");
      for (auto it = def.begin(); it != def.end(); ++it)
        if (it.key() != "builtin" && it.key() != "normalize") (void)as_number(it.value(), path + "." + it.key());
      if (b == "gaussian-bump" || b == "smoothed-step")
        if (def.value("width", 1.0) <= 0.0) throw ConfigError(path + ".width: must be positive");
    }
    if (def.contains("normalize") && !def["normalize"].is_boolean())
      throw ConfigError(path + ".normalize: expected true or false");
  }

  std::vector<double> values(const json& def, const std::string& path) const {
    const auto x = nodes();
    std::vector<double> v(x.size(), 0.0);
    if (def.contains("values")) {
      if (def["values"].size() != x.size())
        throw ConfigError(path + ".values: expected " + std::to_string(x.size()) + " samples");
      for (size_t i = 0; i < x.size(); ++i) v[i] = def["values"][i].get<double>();
    } else if (def.contains("sum")) {
      for (size_t k = 0; k < def["sum"].size(); ++k) {
        const auto part = values(def["sum"][k], path + ".sum[" + std::to_string(k) + "]");
        for (size_t i = 0; i < v.size(); ++i) v[i] += part[i];
      }
    } else {
      const std::string b = def["builtin"].get<std::string>();
      const double a = def.value("amplitude", 1.0);
      for (size_t i = 0; i < x.size(); ++i) {
        if (b == "constant") {
          v[i] = def.value("value", 1.0);
        } else if (b == "identity") {
          v[i] = x[i];
        } else if (b == "sine" || b == "cosine") {
          const double arg = 2.0 * kPi * def.value("mode", 1.0) * x[i] + def.value("phase", 0.0);
          v[i] = def.value("offset", 0.0) + a * (b == "sine" ? std::sin(arg) : std::cos(arg));
        } else {
          const double u = (x[i] - def.value("center", 0.0)) / def.value("width", 1.0);
          v[i] = b == "gaussian-bump" ? a * std::exp(-u * u) : 0.5 * a * (1.0 + std::tanh(u));
        }
      }
    }
    return v;
  }

  Fn sample(const json& def, const std::string& path) const {
    auto v = values(def, path);
    Fn f = from_values(v);
    if (def.value("normalize", false)) {
      double mass = 0.0;
      check(lpgeo_fn_integral(f.get(), &mass));
      if (!(mass > 0.0)) throw ConfigError(path + ".normalize: function has no positive mass");
      for (double& x : v) x /= mass;
      f = from_values(v);
    }
    return f;
  }

  json cfg_;
  std::string command_;
  json params_;
  Grid grid_;
  Tol tol_;
  Young young_;
  std::string young_label_;
  double p_ = 2.0;
  double tol_scale_ = 1.0;
};

// 2-forms: constant coefficients plus sine terms plus d of a sine 1-form.
Form Context::form(const std::string& name) const {
  const size_t n = static_cast<size_t>(int_param("n", 16));
  const size_t m = n * n * n * n;
  const std::string path = "forms." + name;
  json def;
  if (cfg_.contains("forms") && cfg_["forms"].contains(name)) {
    def = cfg_["forms"][name];
  } else if (name == "omega0") {
    def = json{{"constant", {1, 0, 0, 0, 0, 1}}};
  } else {
    throw ConfigError(path + ": missing");
  }
  if (!def.is_object()) throw ConfigError(path + ": expected an object");
  only_keys(def, {"constant", "terms", "exact"}, path + ".");
  const auto coord = [n](size_t k, size_t axis) {
    size_t div = 1;
    for (size_t a = 3; a > axis; --a) div *= n;
    return static_cast<double>((k / div) % n) / static_cast<double>(n);
  };
  const auto wave = [&](const json& t, const std::string& tp, const char* slot, size_t slots, size_t& which) {
    only_keys(t, {slot, "amplitude", "axis", "mode", "phase"}, tp + ".");
    const long long s = as_integer(member(t, slot, tp + "."), tp + "." + slot);
    const long long axis = t.contains("axis") ? as_integer(t["axis"], tp + ".axis") : 0;
    if (s < 0 || static_cast<size_t>(s) >= slots) throw ConfigError(tp + "." + slot + ": out of range");
    if (axis < 0 || axis > 3) throw ConfigError(tp + ".axis: expected 0..3");
    which = static_cast<size_t>(s);
    const double a = t.contains("amplitude") ? as_number(t["amplitude"], tp + ".amplitude") : 1.0;
    const double k = t.contains("mode") ? as_number(t["mode"], tp + ".mode") : 1.0;
    const double ph = t.contains("phase") ? as_number(t["phase"], tp + ".phase") : 0.0;
    std::vector<double> v(m);
    for (size_t i = 0; i < m; ++i) v[i] = a * std::sin(2.0 * kPi * k * coord(i, static_cast<size_t>(axis)) + ph);
    return v;
  };
  std::vector<double> c(6 * m, 0.0);
  if (def.contains("constant")) {
    const auto& cc = def["constant"];
    if (!cc.is_array() || cc.size() != 6) throw ConfigError(path + ".constant: expected 6 numbers");
    for (size_t k = 0; k < 6; ++k) {
      const double v = as_number(cc[k], path + ".constant[" + std::to_string(k) + "]");
      std::fill(c.begin() + static_cast<long>(k * m), c.begin() + static_cast<long>((k + 1) * m), v);
    }
  }
  const auto list = [&](const char* key) {
    const json l = def.value(key, json::array());
    if (!l.is_array()) throw ConfigError(path + "." + key + ": expected an array");
    return l;
  };
  const json terms = list("terms");
  for (size_t j = 0; j < terms.size(); ++j) {
    size_t slot = 0;
    const auto v = wave(terms[j], path + ".terms[" + std::to_string(j) + "]", "coefficient", 6, slot);
    for (size_t i = 0; i < m; ++i) c[slot * m + i] += v[i];
  }
  lpgeo_form* base = nullptr;
  check(lpgeo_form_new(n, c.data(), c.size(), &base));
  Form out(base);
  const json exact = list("exact");
  if (!exact.empty()) {
    std::vector<double> sigma(4 * m, 0.0);
    for (size_t j = 0; j < exact.size(); ++j) {
      size_t slot = 0;
      const auto v = wave(exact[j], path + ".exact[" + std::to_string(j) + "]", "component", 4, slot);
      for (size_t i = 0; i < m; ++i) sigma[slot * m + i] += v[i];
    }
    lpgeo_form* d = nullptr;
    check(lpgeo_form_exact(n, sigma.data(), sigma.size(), &d));
    Form dsig(d);
    lpgeo_form* sum = nullptr;
    check(lpgeo_form_add(out.get(), dsig.get(), &sum));
    out.reset(sum);
  }
  return out;
}

// ---------------------------------------------------------------- commands

struct Outcome {
  Table table;
  bool passed = true;  // false only for a failing verify
};

using Handler = Outcome (*)(const Context&, const std::string& op);

Fn take(lpgeo_fn* f) { return Fn(f); }

Outcome metric(const Context& c, const std::string& op) {
  Outcome o;
  double v = 0.0;
  if (op == "fisher") {
    check(lpgeo_lp_fisher_norm(c.fn("mu").get(), c.fn("a").get(), c.p(), &v));
    o.table.scalar("lp_fisher_norm", v);
  } else if (op == "line-fp") {
    check(lpgeo_line_fp_norm(c.fn("g").get(), c.fn("a").get(), c.p(), &v));
    o.table.scalar("line_fp_norm", v);
  } else {
    check(lpgeo_w1p_energy(c.fn("fprime").get(), c.fn("h").get(), c.p(), c.tol(), &v));
    o.table.scalar("w1p_energy", v);
  }
  return o;
}

Outcome geodesic(const Context& c, const std::string& op) {
  Outcome o;
  const auto r0 = c.fn("rho0");
  const auto r1 = c.fn("rho1");
  if (op == "explicit") {
    lpgeo_fn* f = nullptr;
    check(lpgeo_geodesic_explicit(r0.get(), r1.get(), c.param("t", 0.5), c.p(), &f));
    o.table.field("rho", take(f).get());
    return o;
  }
  const double t0 = c.param("t0", 0.3);
  const double dt = c.param("dt", 1e-3);
  const long long count = c.int_param("count", 9);
  if (count < 1) throw ConfigError("params.count: must be positive");
  const std::string path = c.string_param("path", "explicit");
  const std::string kind = c.string_param("kind", "dens");
  lpgeo_residual_kind k;
  if (kind == "dens") k = LPGEO_RESIDUAL_DENS;
  else if (kind == "prob") k = LPGEO_RESIDUAL_PROB;
  else if (kind == "chern") k = LPGEO_RESIDUAL_CHERN;
  else throw ConfigError("params.kind: expected dens, prob or chern");
  if (path != "explicit" && path != "linear") throw ConfigError("params.path: expected explicit or linear");
  std::vector<double> v0(lpgeo_fn_size(r0.get())), v1(v0.size());
  check(lpgeo_fn_values(r0.get(), v0.data(), v0.size()));
  check(lpgeo_fn_values(r1.get(), v1.data(), v1.size()));
  std::vector<Fn> slices;
  for (long long j = 0; j < count; ++j) {
    const double t = t0 + static_cast<double>(j) * dt;
    if (path == "explicit") {
      lpgeo_fn* f = nullptr;
      check(lpgeo_geodesic_explicit(r0.get(), r1.get(), t, c.p(), &f));
      slices.push_back(take(f));
    } else {
      std::vector<double> v(v0.size());
      for (size_t i = 0; i < v.size(); ++i) v[i] = (1.0 - t) * v0[i] + t * v1[i];
      slices.push_back(c.from_values(v));
    }
  }
  std::vector<const lpgeo_fn*> ptrs;
  for (const auto& s : slices) ptrs.push_back(s.get());
  double sup = 0.0;
  check(lpgeo_geodesic_residual(ptrs.data(), ptrs.size(), t0, dt, c.p(), k, c.tol(), &sup));
  o.table.scalar("residual_sup", sup);
  return o;
}

Outcome embed(const Context& c, const std::string& op) {
  Outcome o;
  lpgeo_fn* f = nullptr;
  if (op == "flat") check(lpgeo_flat_embed(c.fn("rho").get(), c.p(), &f));
  else if (op == "flat-inverse") check(lpgeo_flat_embed_inverse(c.fn("f").get(), c.p(), &f));
  else if (op == "flat-differential") check(lpgeo_flat_embed_differential(c.fn("rho").get(), c.fn("a").get(), c.p(), &f));
  else if (op == "phi") check(lpgeo_phi_p(c.fn("fprime").get(), c.p(), c.tol(), &f));
  else if (op == "phi-inverse") check(lpgeo_phi_p_inverse(c.fn("g").get(), c.p(), c.tol(), &f));
  else if (op == "psi") check(lpgeo_psi_p(c.fn("g").get(), c.p(), &f));
  else if (op == "psi-inverse") check(lpgeo_psi_p_inverse(c.fn("f").get(), c.p(), &f));
  else if (op == "gamma-inverse") check(lpgeo_gamma_inverse(c.fn("g").get(), c.tol(), &f));
  else if (op == "line-map") check(lpgeo_line_map(c.fn("fprime").get(), c.tol(), &f));
  else if (op == "moser") check(lpgeo_moser_map(c.fn("mu").get(), c.fn("nu").get(), c.tol(), &f));
  else if (op == "invert") check(lpgeo_invert_map(c.fn("map").get(), c.tol(), &f));
  else if (op == "pullback") check(lpgeo_pullback(c.fn("rho").get(), c.fn("map").get(), &f));
  else check(lpgeo_phi_embedding(c.fn("rho").get(), c.young(), &f));
  o.table.field(op, take(f).get());
  return o;
}

Outcome schwarzian(const Context& c, const std::string& op) {
  Outcome o;
  const auto fp = c.fn("fprime");
  lpgeo_fn* f = nullptr;
  double v = 0.0;
  if (op == "classical") {
    check(lpgeo_schwarzian(fp.get(), c.tol(), &f));
    o.table.field("schwarzian", take(f).get());
  } else if (op == "potential-route") {
    check(lpgeo_schwarzian_via_potential(fp.get(), c.tol(), &f));
    o.table.field("schwarzian", take(f).get());
  } else if (op == "lp") {
    check(lpgeo_lp_schwarzian(fp.get(), c.p(), c.tol(), &f));
    o.table.field("lp_schwarzian", take(f).get());
  } else if (op == "potential") {
    check(lpgeo_schwarz_potential(fp.get(), c.param("y", 0.0), c.param("z", 0.0), c.tol(), &v));
    o.table.scalar("schwarz_potential", v);
  } else if (op == "chain") {
    const double p = c.config().contains("p") ? c.p() : INFINITY;
    check(lpgeo_schwarzian_chain_residual(fp.get(), c.fn("fprime2").get(), p, c.tol(), &v));
    o.table.scalar("chain_residual", v);
  } else {
    lpgeo_dynamics d{};
    check(lpgeo_dynamics_check(fp.get(), static_cast<int>(c.int_param("n", 2)), static_cast<int>(c.int_param("m", 1)),
                               c.param("lo", -0.5), c.param("hi", 0.5), c.tol(), &d));
    o.table.scalar("min_tangent", d.min_tangent);
    o.table.scalar("max_tangent", d.max_tangent);
    o.table.scalar("sign", d.sign);
    o.table.scalar("s_min", d.s_min);
    o.table.scalar("s_max", d.s_max);
  }
  return o;
}

Outcome bers(const Context& c, const std::string& op) {
  Outcome o;
  lpgeo_fn* f = nullptr;
  double v = 0.0;
  if (op == "map") {
    check(lpgeo_bers_map(c.fn("fprime").get(), c.tol(), &f, &v));
    o.table.field("schwarzian", take(f).get());
    o.table.scalar("integral", v);
  } else if (op == "preimage") {
    check(lpgeo_schwarzian_preimage(c.fn("u").get(), c.tol(), &f));
    o.table.field("fprime", take(f).get());
  } else {
    check(lpgeo_bers_kernel_probe(c.fn("fprime").get(), c.param("c0", 1.0), c.param("c1", 0.0), c.tol(), &v));
    o.table.scalar("kernel_probe", v);
  }
  return o;
}

Outcome cocycle(const Context& c, const std::string& op) {
  Outcome o;
  double v = 0.0;
  lpgeo_fn* f = nullptr;
  if (op == "omega") {
    check(lpgeo_gelfand_fuchs(c.fn("a1").get(), c.fn("a2").get(), c.fn_or_one("mu").get(), c.tol(), &v));
    o.table.scalar("omega", v);
  } else if (op == "bott-thurston") {
    check(lpgeo_bott_thurston(c.fn("map1").get(), c.fn("map2").get(), c.fn_or_one("mu").get(), c.tol(), &v));
    o.table.scalar("bott_thurston", v);
  } else if (op == "mixed") {
    check(lpgeo_mixed_derivative_check(c.fn("a1").get(), c.fn("a2").get(), c.fn_or_one("mu").get(), c.tol(), &v));
    o.table.scalar("mixed_derivative_error", v);
  } else if (op == "sphere") {
    const auto mu = c.fn_or_one("mu");
    lpgeo_fn *fe = nullptr, *b1 = nullptr, *b2 = nullptr;
    check(lpgeo_flat_embed(mu.get(), c.p(), &fe));
    const Fn emb(fe);
    check(lpgeo_flat_embed_differential(mu.get(), c.fn("a1").get(), c.p(), &b1));
    const Fn f1(b1);
    check(lpgeo_flat_embed_differential(mu.get(), c.fn("a2").get(), c.p(), &b2));
    const Fn f2(b2);
    check(lpgeo_omega_lp_sphere(emb.get(), f1.get(), f2.get(), c.p(), &v));
    o.table.scalar("omega_lp_sphere", v);
  } else if (op == "virasoro") {
    check(lpgeo_virasoro_bracket(c.fn("f").get(), c.param("cf", 0.0), c.fn("g").get(), c.param("cg", 0.0), &f, &v));
    o.table.field("vector_part", take(f).get());
    o.table.scalar("central", v);
  } else if (op == "group") {
    check(lpgeo_group_cocycle_residual(c.fn("map1").get(), c.fn("map2").get(), c.fn("map3").get(),
                                       c.fn_or_one("mu").get(), c.tol(), &v));
    o.table.scalar("cocycle_residual", v);
  } else {
    check(lpgeo_log_jacobian(c.fn("map").get(), c.fn_or_one("mu").get(), c.tol(), &f));
    o.table.field("log_jacobian", take(f).get());
  }
  return o;
}

Outcome symplectic(const Context& c, const std::string& op) {
  Outcome o;
  double v = 0.0;
  if (op == "norm") {
    check(lpgeo_symplectic_norm(c.form("omega0").get(), c.form("beta").get(), c.p(), c.tol(), &v));
    o.table.scalar("lp_symplectic_norm", v);
  } else if (op == "inner") {
    check(lpgeo_symplectic_inner(c.form("omega0").get(), c.form("alpha").get(), c.form("beta").get(), c.tol(), &v));
    o.table.scalar("l2_inner", v);
  } else if (op == "pushforward") {
    double rhs = 0.0;
    check(lpgeo_pushforward_check(c.form("omega0").get(), c.form("beta").get(), c.p(), c.tol(), &v, &rhs));
    o.table.scalar("lhs", v);
    o.table.scalar("rhs", rhs);
  } else if (op == "closedness") {
    check(lpgeo_form_closedness(c.form("omega").get(), &v));
    o.table.scalar("closedness_residual", v);
  } else {
    lpgeo_form* h = nullptr;
    check(lpgeo_harmonic_part(c.form("omega").get(), c.tol(), &h));
    const Form hf(h);
    const size_t m = lpgeo_form_n(h) * lpgeo_form_n(h) * lpgeo_form_n(h) * lpgeo_form_n(h);
    std::vector<double> coeff(6 * m);
    check(lpgeo_form_coefficients(hf.get(), coeff.data(), coeff.size()));
    const char* names[] = {"c12", "c13", "c14", "c23", "c24", "c34"};
    for (size_t k = 0; k < 6; ++k) o.table.scalar(names[k], coeff[k * m]);
  }
  return o;
}

// Jacobians (1 + t w0 / q)^q, the exact L^q flow with initial rate w0.
std::vector<Fn> flow(const Context& c, double& dt) {
  dt = c.param("dt", 1e-3);
  const double q = c.param("flow_exponent", 2.0);
  const long long count = c.int_param("count", 7);
  if (count < 1) throw ConfigError("params.count: must be positive");
  const auto w0 = c.fn("w0");
  std::vector<double> w(lpgeo_fn_size(w0.get()));
  check(lpgeo_fn_values(w0.get(), w.data(), w.size()));
  std::vector<Fn> out;
  for (long long k = 0; k < count; ++k) {
    const double t = dt * static_cast<double>(k);
    std::vector<double> v(w.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = std::pow(1.0 + t * w[i] / q, q);
    out.push_back(c.from_values(v));
  }
  return out;
}

Outcome luxemburg(const Context& c, const std::string& op) {
  Outcome o;
  double v = 0.0;
  if (op == "norm") {
    check(lpgeo_luxemburg_norm(c.fn("f").get(), c.fn_or_one("mu").get(), c.young(), c.tol(), &v));
    o.table.scalar("luxemburg_norm", v);
  } else if (op == "variation") {
    check(lpgeo_luxemburg_first_variation(c.fn("f").get(), c.fn("h").get(), c.fn_or_one("mu").get(), c.young(),
                                          c.tol(), &v));
    o.table.scalar("first_variation", v);
  } else if (op == "invariance") {
    double after = 0.0;
    check(lpgeo_orlicz_invariance(c.fn("a").get(), c.fn_or_one("mu").get(), c.young(), c.fn("map").get(), c.tol(), &v,
                                  &after));
    o.table.scalar("before", v);
    o.table.scalar("after", after);
  } else {
    double dt = 0.0;
    const auto js = flow(c, dt);
    std::vector<const lpgeo_fn*> ptrs;
    for (const auto& j : js) ptrs.push_back(j.get());
    if (op == "geodesic") {
      check(lpgeo_orlicz_geodesic_residual(ptrs.data(), ptrs.size(), dt, c.young(), c.tol(), &v));
      o.table.scalar("orlicz_residual_sup", v);
    } else {
      check(lpgeo_lp_reduction_residual(ptrs.data(), ptrs.size(), dt, c.p(), c.tol(), &v));
      o.table.scalar("reduction_residual_sup", v);
    }
  }
  return o;
}

Outcome fisher_hyperbolic(const Context& c, const std::string& op) {
  Outcome o;
  const auto g = c.fn("g");
  const int asym = c.bool_param("allow_asymmetric", false) ? 1 : 0;
  if (op == "matrix") {
    double m[4];
    check(lpgeo_fisher_matrix(g.get(), asym, c.param("t", 0.0), c.param("sigma", 1.0), c.tol(), m));
    o.table.scalar("g_tt", m[0]);
    o.table.scalar("g_ts", m[1]);
    o.table.scalar("g_ss", m[3]);
    return o;
  }
  const auto ts = c.list_param("ts", {-1.0, -0.5, 0.0, 0.5, 1.0});
  const auto ss = c.list_param("sigmas", {0.5, 0.75, 1.0, 1.25, 1.5});
  lpgeo_hyperbolic h{};
  check(lpgeo_hyperbolic_check(g.get(), asym, ts.data(), ts.size(), ss.data(), ss.size(), c.tol(), &h));
  o.table.scalar("c_tt", h.c_tt);
  o.table.scalar("c_ss", h.c_ss);
  o.table.scalar("max_spread", h.max_spread);
  o.table.scalar("max_offdiag", h.max_offdiag);
  o.table.scalar("positive_definite", h.positive_definite);
  o.table.scalar("hyperbolic", h.hyperbolic);
  return o;
}

Outcome verify(const Context& c, const std::string&) {
  Outcome o;
  o.table.columns = {"criterion", "title", "check", "measured", "lo", "hi", "passed"};
  const long long which = c.int_param("criterion", 0);
  if (which < 0 || which > 9) throw ConfigError("params.criterion: expected 0..9");
  lpgeo_report* r = nullptr;
  check(lpgeo_verify(static_cast<int>(which), c.tol_scale(), &r));
  const Report rep(r);
  for (size_t i = 0; i < lpgeo_report_criteria(r); ++i) {
    int id = 0, passed = 0;
    const char* title = nullptr;
    const char* error = nullptr;
    size_t n = 0;
    check(lpgeo_report_criterion(r, i, &id, &title, &passed, &error, &n));
    o.passed = o.passed && passed;
    for (size_t j = 0; j < n; ++j) {
      const char* name = nullptr;
      double m = 0, lo = 0, hi = 0;
      int ok = 0;
      check(lpgeo_report_check(r, i, j, &name, &m, &lo, &hi, &ok));
      o.table.rows.push_back({static_cast<double>(id), title, name, m, lo, hi, ok ? "pass" : "FAIL"});
    }
    if (*error) o.table.rows.push_back({static_cast<double>(id), title, std::string("error: ") + error, NAN, NAN, NAN, "FAIL"});
    o.table.rows.push_back({static_cast<double>(id), title, "criterion", NAN, NAN, NAN, passed ? "pass" : "FAIL"});
  }
  return o;
}

struct Command {
  const char* name;
  const char* about;
  Handler run;
  std::vector<const char*> ops;  // first is the default
};

const std::vector<Command>& commands() {
  static const std::vector<Command> table{
      {"metric", "L^p Fisher and W^{1,p} norms", metric, {"fisher", "line-fp", "w1p"}},
      {"geodesic", "explicit geodesics and geodesic-equation residuals", geodesic, {"explicit", "residual"}},
      {"embed",
       "flat, Orlicz and line-group embeddings, Moser maps",
       embed,
       {"flat", "flat-inverse", "flat-differential", "phi", "phi-inverse", "psi", "psi-inverse", "gamma-inverse",
        "line-map", "moser", "invert", "pullback", "young"}},
      {"schwarzian",
       "Schwarzian and L^p-Schwarzian derivatives",
       schwarzian,
       {"classical", "potential-route", "lp", "potential", "chain", "dynamics"}},
      {"bers", "Bers-type map, its preimage and kernel probe", bers, {"map", "preimage", "kernel-probe"}},
      {"cocycle",
       "Bott-Thurston and Gelfand-Fuchs cocycles",
       cocycle,
       {"omega", "bott-thurston", "mixed", "sphere", "virasoro", "group", "log-jacobian"}},
      {"symplectic",
       "L^p norms of symplectic tangent forms on T^4",
       symplectic,
       {"norm", "inner", "pushforward", "closedness", "harmonic"}},
      {"luxemburg",
       "Luxemburg norms and Orlicz geodesics",
       luxemburg,
       {"norm", "variation", "invariance", "geodesic", "reduction"}},
      {"fisher-hyperbolic", "Fisher metric of a location-scale family", fisher_hyperbolic, {"check", "matrix"}},
      {"verify", "run the acceptance suite", verify, {"suite"}},
  };
  return table;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("--out: cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw ConfigError("--out: write to '" + path + "' failed");
}

std::string choose_format(const std::string& flag, const json& cfg, const std::string& path) {
  std::string f = flag;
  if (f.empty() && cfg.is_object() && cfg.contains("output") && cfg["output"].contains("format"))
    f = as_string(cfg["output"]["format"], "output.format");
  if (f.empty()) f = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0 ? "json" : "csv";
  if (f != "csv" && f != "json") throw ConfigError("format: expected csv or json");
  return f;
}

int run(const std::string& command, const std::string& config_path, std::string out_path, const std::string& format_flag) {
  json cfg = json::object();
  std::string format;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("--config: cannot read '" + config_path + "'");
      try {
        cfg = json::parse(in);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
    }
    if (out_path.empty() && cfg.is_object() && cfg.contains("output") && cfg["output"].contains("path"))
      out_path = as_string(cfg["output"]["path"], "output.path");
    if (cfg.is_object() && cfg.contains("output")) only_keys(cfg["output"], {"path", "format"}, "output.");
    format = choose_format(format_flag, cfg, out_path);
    const Context ctx(cfg, command);
    const Command* cmd = nullptr;
    for (const auto& c : commands())
      if (command == c.name) cmd = &c;
    const std::string op = ctx.op(cmd->ops.front());
    bool known = false;
    for (const char* o : cmd->ops) known = known || op == o;
    if (!known) throw ConfigError("op: unknown operation '" + op + "' for command '" + command + "'");
    const Outcome o = cmd->run(ctx, op);
    write_output(render(o.table, format, command, op), out_path);
    return o.passed ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ComputationError& e) {
    std::cerr << "computation error: " << e.what() << '\n';
    Table t;
    t.columns = {"status", "error", "message"};
    t.rows.push_back({"error", e.name, e.what()});
    try {
      if (!out_path.empty()) write_output(render(t, format.empty() ? "csv" : format, command, "error"), out_path);
    } catch (const ConfigError&) {
    }
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"L^p geometry toolkit"};
  app.require_subcommand(0, 1);
  bool list_ops = false;
  app.add_flag("--list-ops", list_ops, "Print every command and operation, then exit");
  std::string config, out, format;
  for (const auto& c : commands()) {
    auto* sub = app.add_subcommand(c.name, c.about);
    auto* opt = sub->add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
    if (std::string(c.name) != "verify") opt->required();
    sub->add_option("--out", out, "Output path (stdout when absent)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (list_ops) {
    for (const auto& c : commands())
      for (const char* o : c.ops) std::cout << c.name << ' ' << o << '\n';
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }
  return run(app.get_subcommands().front()->get_name(), config, out, format);
}

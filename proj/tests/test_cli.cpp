#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_dir;

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = g_dir / (name + ".json");
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

Run run(const std::string& args, const std::string& env = {}) {
  const fs::path out = g_dir / "stdout.txt", err = g_dir / "stderr.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" + g_cli + "' " + args + " > '" + out.string() +
                          "' 2> '" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

const char* kCircle = R"("grid": {"kind": "circle", "n": 128})";
const char* kLine = R"("grid": {"kind": "line", "half_width": 12, "n": 1201})";
const char* kBump = R"({"builtin": "gaussian-bump", "amplitude": 0.2, "width": 1.5})";
// f' of a line diffeomorphism x + f(x).
const char* kFprime = R"({"builtin": "gaussian-bump", "amplitude": 0.3, "width": 1.2})";

std::string cfg(const char* grid, const std::string& functions, const std::string& extra = {}) {
  return std::string("{") + grid + ", \"functions\": {" + functions + "}" + (extra.empty() ? "" : ", " + extra) + "}";
}

std::string fn(const std::string& name, const std::string& spec) { return "\"" + name + "\": " + spec; }

struct Case {
  std::string command;
  std::string op;
  std::string config;
};

std::vector<Case> cases() {
  const std::string one = R"({"builtin": "constant"})";
  const std::string wave = R"({"builtin": "sine", "amplitude": 0.1})";
  const std::string wave2 = R"({"builtin": "cosine", "amplitude": 0.1})";
  const std::string pos = R"({"builtin": "sine", "amplitude": 0.3, "offset": 1})";
  const std::string map1 = R"({"sum": [{"builtin": "identity"}, {"builtin": "sine", "amplitude": 0.02}]})";
  const std::string map2 = R"({"sum": [{"builtin": "identity"}, {"builtin": "cosine", "amplitude": 0.01, "mode": 2}]})";
  const std::string map3 = R"({"sum": [{"builtin": "identity"}, {"builtin": "sine", "amplitude": 0.005, "mode": 3}]})";
  const std::string gen = R"({"builtin": "gaussian-bump", "normalize": true})";
  const std::string forms =
      R"("params": {"n": 8}, "forms": {"beta": {"exact": [{"component": 0, "amplitude": 0.05, "axis": 1}]},
         "alpha": {"exact": [{"component": 2, "amplitude": 0.05, "axis": 3, "mode": 2}]},
         "omega": {"constant": [1, 0, 0, 0, 0, 1], "exact": [{"component": 1, "amplitude": 0.05, "axis": 0}]}})";
  const auto op = [](const char* o) { return std::string("\"op\": \"") + o + "\""; };
  return {
      {"metric", "fisher", cfg(kCircle, fn("mu", one) + ", " + fn("a", wave), op("fisher"))},
      {"metric", "line-fp", cfg(kLine, fn("g", gen) + ", " + fn("a", kBump), op("line-fp"))},
      {"metric", "w1p", cfg(kLine, fn("fprime", kFprime) + ", " + fn("h", kBump), op("w1p"))},
      {"geodesic", "explicit", cfg(kCircle, fn("rho0", one) + ", " + fn("rho1", pos))},
      {"geodesic", "residual", cfg(kCircle, fn("rho0", one) + ", " + fn("rho1", pos), op("residual"))},
      {"embed", "flat", cfg(kCircle, fn("rho", pos))},
      {"embed", "flat-inverse", cfg(kCircle, fn("f", pos), op("flat-inverse"))},
      {"embed", "flat-differential", cfg(kCircle, fn("rho", pos) + ", " + fn("a", wave), op("flat-differential"))},
      {"embed", "phi", cfg(kLine, fn("fprime", kFprime), op("phi"))},
      {"embed", "phi-inverse", cfg(kLine, fn("g", kBump), op("phi-inverse"))},
      {"embed", "psi", cfg(kLine, fn("g", kBump), op("psi"))},
      {"embed", "psi-inverse", cfg(kLine, fn("f", kBump), op("psi-inverse"))},
      {"embed", "gamma-inverse", cfg(kLine, fn("g", kBump), op("gamma-inverse"))},
      {"embed", "line-map", cfg(kLine, fn("fprime", kFprime), op("line-map"))},
      {"embed", "moser", cfg(kCircle, fn("mu", one) + ", " + fn("nu", pos), op("moser"))},
      {"embed", "invert", cfg(kCircle, fn("map", map1), op("invert"))},
      {"embed", "pullback", cfg(kCircle, fn("rho", pos) + ", " + fn("map", map1), op("pullback"))},
      {"embed", "young", cfg(kCircle, fn("rho", pos), op("young") + R"(, "young": "loglinear")")},
      {"schwarzian", "classical", cfg(kLine, fn("fprime", kFprime))},
      {"schwarzian", "potential-route", cfg(kLine, fn("fprime", kFprime), op("potential-route"))},
      {"schwarzian", "lp", cfg(kLine, fn("fprime", kFprime), op("lp") + R"(, "p": 3)")},
      {"schwarzian", "potential", cfg(kLine, fn("fprime", kFprime), op("potential") + R"(, "params": {"y": 0.5, "z": -0.5})")},
      {"schwarzian", "chain", cfg(kLine, fn("fprime", kFprime) + ", " + fn("fprime2", kFprime), op("chain"))},
      {"schwarzian", "dynamics", cfg(kLine, fn("fprime", kFprime), op("dynamics"))},
      {"bers", "map", cfg(kLine, fn("fprime", kFprime))},
      {"bers", "preimage", cfg(kLine, fn("u", kBump), op("preimage"))},
      {"bers", "kernel-probe", cfg(kLine, fn("fprime", kFprime), op("kernel-probe"))},
      {"cocycle", "omega", cfg(kCircle, fn("a1", wave) + ", " + fn("a2", wave2))},
      {"cocycle", "bott-thurston", cfg(kCircle, fn("map1", map1) + ", " + fn("map2", map2), op("bott-thurston"))},
      {"cocycle", "mixed", cfg(kCircle, fn("a1", wave) + ", " + fn("a2", wave2), op("mixed"))},
      {"cocycle", "sphere", cfg(kCircle, fn("a1", wave) + ", " + fn("a2", wave2), op("sphere"))},
      {"cocycle", "virasoro", cfg(kCircle, fn("f", wave) + ", " + fn("g", wave2), op("virasoro"))},
      {"cocycle", "group",
       cfg(kCircle, fn("map1", map1) + ", " + fn("map2", map2) + ", " + fn("map3", map3), op("group"))},
      {"cocycle", "log-jacobian", cfg(kCircle, fn("map", map1), op("log-jacobian"))},
      {"symplectic", "norm", cfg(kCircle, "", forms)},
      {"symplectic", "inner", cfg(kCircle, "", op("inner") + ", " + forms)},
      {"symplectic", "pushforward", cfg(kCircle, "", op("pushforward") + ", " + forms)},
      {"symplectic", "closedness", cfg(kCircle, "", op("closedness") + ", " + forms)},
      {"symplectic", "harmonic", cfg(kCircle, "", op("harmonic") + ", " + forms)},
      {"luxemburg", "norm", cfg(kCircle, fn("f", pos))},
      {"luxemburg", "variation", cfg(kCircle, fn("f", pos) + ", " + fn("h", wave), op("variation"))},
      {"luxemburg", "invariance", cfg(kCircle, fn("a", pos) + ", " + fn("map", map1), op("invariance"))},
      {"luxemburg", "geodesic", cfg(kCircle, fn("w0", pos), op("geodesic"))},
      {"luxemburg", "reduction", cfg(kCircle, fn("w0", pos), op("reduction"))},
      {"fisher-hyperbolic", "check", cfg(kLine, fn("g", gen))},
      {"fisher-hyperbolic", "matrix", cfg(kLine, fn("g", gen), op("matrix") + R"(, "params": {"t": 0.5, "sigma": 1.25})")},
      {"verify", "suite", R"({"params": {"criterion": 2}})"},
  };
}

}  // namespace

TEST_CASE("every command and operation is listed and runs") {
  const Run listing = run("--list-ops");
  REQUIRE(listing.code == 0);
  std::set<std::string> listed;
  std::istringstream is(listing.out);
  for (std::string line; std::getline(is, line);) listed.insert(line);

  std::set<std::string> covered;
  for (const auto& c : cases()) {
    covered.insert(c.command + " " + c.op);
    const auto path = write_config(c.command + "_" + c.op, c.config);
    const Run r = run(c.command + " --config '" + path.string() + "'");
    INFO(c.command, " ", c.op, ": ", r.err);
    CHECK(r.code == 0);
    CHECK(r.out.rfind(c.command == "verify" ? "criterion," : "quantity,x,value\n", 0) == 0);
  }
  CHECK(listed == covered);
}

TEST_CASE("explicit geodesic between constants is 2.25 everywhere") {
  const auto path = write_config("geo", R"({"grid": {"kind": "circle", "n": 32},
    "functions": {"rho0": {"builtin": "constant", "value": 1}, "rho1": {"builtin": "constant", "value": 4}},
    "p": 2, "params": {"t": 0.5}})");
  const Run r = run("geodesic --config '" + path.string() + "'");
  REQUIRE(r.code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "quantity,x,value");
  int rows = 0;
  while (std::getline(is, line)) {
    CHECK(line.substr(line.rfind(',') + 1) == "2.25");
    ++rows;
  }
  CHECK(rows == 32);
}

TEST_CASE("identical configs give byte-identical output") {
  const auto path = write_config("det", cases()[4].config);
  for (const char* format : {"csv", "json"}) {
    const fs::path a = g_dir / "a.out", b = g_dir / "b.out";
    const std::string base = "geodesic --config '" + path.string() + "' --format " + format + " --out ";
    REQUIRE(run(base + "'" + a.string() + "'").code == 0);
    REQUIRE(run(base + "'" + b.string() + "'").code == 0);
    CHECK(!slurp(a).empty());
    CHECK(slurp(a) == slurp(b));
  }
}

TEST_CASE("json output parses as a table") {
  const auto path = write_config("json_out", cases()[0].config);
  const Run r = run("metric --config '" + path.string() + "' --format json");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"columns\":[\"quantity\",\"x\",\"value\"]") != std::string::npos);
  CHECK(r.out.find("lp_fisher_norm") != std::string::npos);
}

TEST_CASE("configuration errors exit 2 and name the field") {
  struct Bad {
    const char* command;
    std::string config;
    const char* field;
  };
  const std::string f = R"("functions": {"f": {"builtin": "constant"}})";
  const std::vector<Bad> bad{
      {"luxemburg", std::string("{") + kCircle + ", " + f + R"(, "young": "power:oops"})", "young"},
      {"luxemburg", std::string("{") + kCircle + R"(, "functions": {"f": {"builtin": "triangle"}}})", "functions.f.builtin"},
      {"luxemburg", std::string("{") + kCircle + ", " + f + R"(, "tolerances": {"mass": -1}})", "tolerances.mass"},
      {"luxemburg", std::string("{") + kCircle + ", " + f + R"(, "tolerances": {"nonsense": 1}})", "tolerances.nonsense"},
      {"luxemburg", std::string("{") + kCircle + ", " + f + R"(, "op": "nope"})", "op"},
      {"luxemburg", std::string("{") + kCircle + R"(, "functions": {"f": {"values": [1, 2]}}})", "functions.f.values"},
      {"geodesic", std::string("{") + kCircle + R"(, "functions": {"rho0": {"builtin": "constant"},
        "rho1": {"builtin": "constant", "value": 2}}, "params": {"t": "half"}})", "params.t"},
      {"metric", R"({"grid": {"kind": "sphere", "n": 16}})", "grid.kind"},
      {"metric", R"({"grid": {"kind": "circle", "n": 16}, "p": "big"})", "p"},
      {"luxemburg", "{ not json", "config"},
  };
  for (size_t i = 0; i < bad.size(); ++i) {
    const auto path = write_config("bad" + std::to_string(i), bad[i].config);
    const Run r = run(std::string(bad[i].command) + " --config '" + path.string() + "'");
    INFO(bad[i].config, " -> ", r.err);
    CHECK(r.code == 2);
    CHECK(r.err.find(bad[i].field) != std::string::npos);
  }
  CHECK(run("metric --config '" + (g_dir / "missing.json").string() + "'").code == 2);
  CHECK(run("metric").code == 2);
  const auto ok = write_config("scale", cases()[0].config);
  CHECK(run("metric --config '" + ok.string() + "'", "LPGEO_TOL_SCALE=-3").code == 2);
  CHECK(run("metric --config '" + ok.string() + "'", "LPGEO_TOL_SCALE=2").code == 0);
}

TEST_CASE("computation errors exit 3 and report the module error") {
  // 1 + f' < 0 near the origin: not an orientation-preserving diffeomorphism.
  const auto path = write_config("neg", std::string("{") + kLine +
                                            R"(, "functions": {"fprime": {"builtin": "gaussian-bump", "amplitude": -2}}})");
  const fs::path report = g_dir / "report.csv";
  const Run r = run("schwarzian --config '" + path.string() + "' --out '" + report.string() + "'");
  CHECK(r.code == 3);
  const std::string text = slurp(report);
  CHECK(text.rfind("status,error,message\nerror,", 0) == 0);
  CHECK(!r.err.empty());
}

TEST_CASE("verify exits 0 when every check passes") {
  const auto path = write_config("verify", R"({"params": {"criterion": 1}})");
  const Run r = run("verify --config '" + path.string() + "'");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

int main(int argc, char** argv) {
  if (argc < 2) return 2;
  g_cli = argv[1];
  g_dir = fs::temp_directory_path() / ("lpgeo_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(g_dir);
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv + 1);
  const int rc = ctx.run();
  fs::remove_all(g_dir);
  return rc;
}

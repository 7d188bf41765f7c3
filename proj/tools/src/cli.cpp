#include "ostrovsky_cli/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <sstream>

#include "ostrovsky/algebra/rational.hpp"
#include "ostrovsky/equation/equation.hpp"
#include "ostrovsky/errors.hpp"
#include "ostrovsky/recursion/recursion.hpp"
#include "ostrovsky/recursion/report.hpp"
#include "ostrovsky/simulator/simulator.hpp"
#include "ostrovsky/waves/waves.hpp"

#ifndef OSTROVSKY_VERSION
#define OSTROVSKY_VERSION "0.0.0"
#endif

namespace ostrovsky::cli {
namespace {

using nlohmann::ordered_json;

// Bad flags, bad input files and malformed values all end here with exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string utc_now() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Globals {
  std::string format;
  std::string output;
  std::optional<std::uint64_t> seed;
};

// Everything a command produces before it is written out.
struct Outcome {
  int code = kOk;
  std::string format;
  ordered_json report;
  // Non-JSON formats: the rendered body; the manifest and report go to the sidecar.
  std::optional<std::string> body;
  std::map<std::string, std::string> input_hashes;
};

std::string pick_format(const std::string& requested, const std::string& fallback,
                        std::initializer_list<std::string_view> allowed, std::string_view command) {
  std::string f = requested.empty() ? fallback : requested;
  for (auto a : allowed) {
    if (f == a) return f;
  }
  std::string list;
  for (auto a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
  throw UsageError("--format " + f + " is not available for " + std::string(command) + " (use " + list + ")");
}

// ---- integrability ----

struct IntegrabilityArgs {
  std::string equation;
  int max_order = 2;
  int depth = 6;
  bool exhaustive = false;
};

std::string render_text(const ordered_json& r) {
  std::ostringstream out;
  out << "equation: " << r["equation"].get<std::string>() << "\n";
  out << "omega: " << r["omega"].get<std::string>() << "\n";
  for (const auto& a : r["a"]) out << "a_" << a["k"].get<int>() << ": " << a["value"].get<std::string>() << "\n";
  for (const auto& phi : r["phi"]) {
    out << "phi_" << phi["m"].get<int>() << ": " << phi["value"].get<std::string>() << "\n";
    for (const auto& e : phi["expansion"]) {
      out << "  eta^-" << e["n"].get<int>() << ": " << e["coefficient"].get<std::string>()
          << (e["is_local"].get<bool>() ? "" : "  [nonlocal]") << "\n";
    }
  }
  out << "verdict: " << r["verdict"].get<std::string>();
  if (!r["first_obstruction"].is_null()) {
    const auto& o = r["first_obstruction"];
    out << " at m=" << o["m"].get<int>() << ", n=" << o["n"].get<int>() << ": " << o["coefficient"].get<std::string>();
  }
  out << "\n";
  out << "max_order: " << r["max_order"].get<int>() << ", depth: " << r["depth"].get<int>() << "\n";
  out << "note: " << r["necessary_condition_disclaimer"].get<std::string>() << "\n";
  return out.str();
}

Outcome cmd_integrability(const IntegrabilityArgs& args, const Globals& g) {
  Outcome o;
  o.format = pick_format(g.format, "json", {"json", "text"}, "integrability");
  if (args.max_order < 1) throw UsageError("--max-order must be at least 1");
  if (args.depth < 1) throw UsageError("--depth must be at least 1");

  std::string text;
  if (auto builtin = equation::builtin_equation(args.equation)) {
    text = *builtin;
  } else if (std::filesystem::is_regular_file(args.equation)) {
    text = read_file(args.equation);
    o.input_hashes[args.equation] = sha256_hex(text);
  } else {
    text = args.equation;
  }
  if (!o.input_hashes.count(args.equation)) o.input_hashes["equation"] = sha256_hex(text);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();

  auto eq = equation::to_symbols(equation::grade(equation::parse(text)));
  auto report = recursion::verdict(eq, {args.max_order, args.depth, args.exhaustive});
  o.report = recursion::report_json(text, eq, report);
  o.code = report.verdict == recursion::Verdict::ObstructionFound ? kObstruction : kOk;
  if (o.format == "text") o.body = render_text(o.report);
  return o;
}

// ---- waves ----

struct WavesArgs {
  std::optional<std::string> beta, gamma, c, p, q;
  bool scan = false;
  std::string grid;
  double tol = 1e-9;
  int beta_sign = 1;
};

double parse_number(const std::string& flag, const std::string& text) {
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    // "a/b" is accepted everywhere a number is.
    try {
      return algebra::parse_rational(text).get_d();
    } catch (const MalformedInput&) {
      throw UsageError(flag + ": not a number: '" + text + "'");
    }
  }
  if (!std::isfinite(value)) throw UsageError(flag + ": value must be finite");
  return value;
}

std::optional<algebra::BigRational> exact(const std::string& text) {
  try {
    return algebra::parse_rational(text);
  } catch (const MalformedInput&) {
    return std::nullopt;
  }
}

waves::Range parse_range(const std::string& flag, const std::string& text) {
  auto colon = text.find(':', 1);
  if (colon == std::string::npos) throw UsageError(flag + " expects lo:hi with --scan, got '" + text + "'");
  waves::Range r{parse_number(flag, text.substr(0, colon)), parse_number(flag, text.substr(colon + 1))};
  if (!(r.lo < r.hi)) throw UsageError(flag + " range must have lo < hi");
  return r;
}

std::pair<int, int> parse_grid(const std::string& text) {
  auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t a = 0, b = 0;
    int n = std::stoi(text.substr(0, x), &a);
    int m = std::stoi(text.substr(x + 1), &b);
    if (a != x || b != text.size() - x - 1 || n < 2 || m < 2) throw std::invalid_argument(text);
    return {n, m};
  } catch (const std::exception&) {
    throw UsageError("--grid expects NxM with N, M >= 2, got '" + text + "'");
  }
}

ordered_json region_json(const waves::RegionClass& rc) {
  return {{"label", std::string(waves::to_string(rc.label))},
          {"eigen_structure", rc.eigen_structure},
          {"annotation", rc.annotation}};
}

Outcome cmd_waves_scan(const WavesArgs& args, const Globals& g) {
  Outcome o;
  o.format = pick_format(g.format, "csv", {"csv", "json"}, "waves --scan");
  if (args.beta || args.gamma || args.c) throw UsageError("--scan takes --p and --q ranges, not --beta/--gamma/--c");
  if (!args.p || !args.q) throw UsageError("--scan requires --p lo:hi and --q lo:hi");
  if (args.grid.empty()) throw UsageError("--scan requires --grid NxM");
  auto pr = parse_range("--p", *args.p);
  auto qr = parse_range("--q", *args.q);
  auto [np, nq] = parse_grid(args.grid);
  auto rows = waves::scan(pr, qr, np, nq, args.tol);

  o.report = {{"p_range", {pr.lo, pr.hi}}, {"q_range", {qr.lo, qr.hi}}, {"grid", {np, nq}},
              {"tol", args.tol},           {"beta_sign", args.beta_sign}, {"rows", rows.size()}};
  if (o.format == "csv") {
    std::ostringstream csv;
    waves::write_csv(csv, rows, args.beta_sign);
    o.body = csv.str();
  } else {
    ordered_json list = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json row = {{"p", r.p}, {"q", r.q}};
      row.update(region_json(r.region));
      row["existence_flag"] = waves::existence_flag(r.p, r.q, args.beta_sign);
      list.push_back(std::move(row));
    }
    o.report["points"] = std::move(list);
  }
  return o;
}

Outcome cmd_waves(const WavesArgs& args, const Globals& g) {
  if (args.scan) return cmd_waves_scan(args, g);
  Outcome o;
  o.format = pick_format(g.format, "json", {"json", "text"}, "waves");
  if (!args.grid.empty()) throw UsageError("--grid needs --scan");
  bool physical = args.beta || args.gamma || args.c;
  bool plane = args.p || args.q;
  if (physical && plane) throw UsageError("give either --beta/--gamma/--c or --p/--q, not both");
  if (!physical && !plane) throw UsageError("waves needs --beta --gamma --c or --p --q");
  if (physical && !(args.beta && args.gamma && args.c)) throw UsageError("--beta, --gamma and --c go together");
  if (plane && !(args.p && args.q)) throw UsageError("--p and --q go together");

  ordered_json input;
  double p = 0, q = 0;
  std::optional<algebra::BigRational> ep, eq;
  ordered_json existence;
  if (physical) {
    waves::WaveParams params{parse_number("--beta", *args.beta), parse_number("--gamma", *args.gamma),
                             parse_number("--c", *args.c)};
    input = {{"beta", params.beta}, {"gamma", params.gamma}, {"c", params.c}};
    auto pq = waves::to_pq(params);
    p = pq.p;
    q = pq.q;
    auto b = exact(*args.beta), gm = exact(*args.gamma), c = exact(*args.c);
    if (b && gm && c) {
      auto e = waves::to_pq(*b, *gm, *c);
      ep = e.p;
      eq = e.q;
    }
    auto flags = waves::existence_flags(params);
    std::string flag = flags.existence_known ? "exists" : flags.nonexistence_known ? "does-not-exist" : "unknown";
    existence = {{"flag", flag},
                 {"existence_known", flags.existence_known},
                 {"nonexistence_known", flags.nonexistence_known},
                 {"reason", flags.reason}};
  } else {
    p = parse_number("--p", *args.p);
    q = parse_number("--q", *args.q);
    input = {{"p", p}, {"q", q}};
    ep = exact(*args.p);
    eq = exact(*args.q);
    existence = {{"flag", waves::existence_flag(p, q, args.beta_sign)}, {"beta_sign", args.beta_sign}};
  }

  auto rc = ep && eq ? waves::classify(*ep, *eq) : waves::classify(p, q, args.tol);
  auto spectrum = waves::characteristic_roots(p, q);
  ordered_json roots = ordered_json::array();
  for (auto l : spectrum.lambdas) roots.push_back({{"re", l.real()}, {"im", l.imag()}});

  o.report = {{"input", input}, {"p", p}, {"q", q}};
  if (ep && eq) {
    o.report["p_exact"] = algebra::to_string(*ep);
    o.report["q_exact"] = algebra::to_string(*eq);
  }
  o.report["arithmetic"] = ep && eq ? "exact" : "float";
  if (!(ep && eq)) o.report["tol"] = args.tol;
  o.report.update(region_json(rc));
  o.report["roots"] = roots;
  o.report["max_residual"] = waves::max_residual(spectrum, p, q);
  o.report["existence"] = existence;

  if (o.format == "text") {
    std::ostringstream t;
    t << "p: " << p << "\nq: " << q << "\nlabel: " << o.report["label"].get<std::string>()
      << "\neigen_structure: " << rc.eigen_structure << "\nannotation: " << rc.annotation
      << "\nexistence: " << existence["flag"].get<std::string>() << "\n";
    o.body = t.str();
  }
  return o;
}

// ---- simulate ----

struct SimulateArgs {
  std::string config;
  std::vector<std::string> set;
  std::string snapshot_dir;
};

std::string key_of(const std::string& line) {
  auto text = line.substr(0, line.find('#'));
  auto eq = text.find('=');
  if (eq == std::string::npos) return {};
  auto key = text.substr(0, eq);
  auto b = key.find_first_not_of(" \t"), e = key.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : key.substr(b, e - b + 1);
}

// Overridden keys are commented out in place so config line numbers stay valid.
std::string apply_overrides(const std::string& config, const std::vector<std::string>& overrides) {
  std::set<std::string> keys;
  for (const auto& o : overrides) {
    auto key = key_of(o);
    if (key.empty()) throw UsageError("--set expects key=value, got '" + o + "'");
    if (!keys.insert(key).second) throw UsageError("--set given twice for '" + key + "'");
  }
  std::istringstream in(config);
  std::ostringstream out;
  for (std::string line; std::getline(in, line);) {
    out << (keys.count(key_of(line)) ? "# overridden: " + line : line) << "\n";
  }
  for (const auto& o : overrides) out << o << "\n";
  return out.str();
}

ordered_json profile_json(const simulator::Profile& profile) {
  return std::visit(
      [](const auto& p) -> ordered_json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, simulator::KdvSolitonProfile>) {
          return {{"profile", "kdv-soliton"}, {"beta", p.beta}, {"k", p.k}, {"center", p.center}};
        } else if constexpr (std::is_same_v<T, simulator::GaussianDipoleProfile>) {
          return {{"profile", "gaussian-dipole"}, {"amplitude", p.amplitude}, {"width", p.width}, {"center", p.center}};
        } else if constexpr (std::is_same_v<T, simulator::RandomSmoothProfile>) {
          return {{"profile", "random-smooth"}, {"seed", p.seed}, {"cutoff", p.cutoff}, {"amplitude", p.amplitude}};
        } else {
          return {{"profile", "zero"}};
        }
      },
      profile);
}

Outcome cmd_simulate(const SimulateArgs& args, const Globals& g) {
  Outcome o;
  o.format = pick_format(g.format, "csv", {"csv", "json"}, "simulate");
  std::string text = read_file(args.config);
  o.input_hashes[args.config] = sha256_hex(text);
  auto overrides = args.set;
  if (g.seed) overrides.push_back("seed = " + std::to_string(*g.seed));
  std::istringstream in(apply_overrides(text, overrides));
  auto run = simulator::parse_config(in);
  const auto& c = run.sim;
  simulator::validate(c);

  std::vector<std::string> warnings;
  auto initial = simulator::make_state(run.profile, c.N, c.L, &warnings);
  auto result = simulator::integrate(initial, c);
  warnings.insert(warnings.end(), result.warnings.begin(), result.warnings.end());

  ordered_json summary = {{"steps", simulator::step_count(c)},
                          {"final_time", result.final_state.t},
                          {"stiffness", simulator::stiffness(c)},
                          {"blew_up", result.blew_up},
                          {"last_valid_time", result.last_valid_time}};
  double dP = result.series.drift_P(), dH = result.series.drift_H();
  bool finite = std::isfinite(dP) && std::isfinite(dH);
  summary["drift_P"] = finite ? ordered_json(dP) : ordered_json(nullptr);
  summary["drift_H"] = finite ? ordered_json(dH) : ordered_json(nullptr);
  summary["max_abs_I"] = std::isfinite(result.series.max_abs_I()) ? ordered_json(result.series.max_abs_I()) : ordered_json(nullptr);
  summary["drift_budget"] = c.drift_budget;
  bool within = finite && dP <= c.drift_budget && dH <= c.drift_budget;
  summary["within_budget"] = within;

  auto vc = simulator::variational_residual(initial, c.beta, c.gamma, c.dealias);
  summary["hamiltonian_form"] = {
      {"sign", vc.sign},
      {"residual", vc.residual},
      {"note", "u_t = -d/dx(dH/du): the opposite of the u_t = +d/dx(dH/du) convention"}};

  const auto* soliton = std::get_if<simulator::KdvSolitonProfile>(&run.profile);
  if (soliton && c.gamma == 0.0 && soliton->beta == c.beta && !result.blew_up) {
    auto expected = simulator::soliton_exact_state(*soliton, c.N, c.L, result.final_state.t);
    summary["shape_error"] = simulator::max_difference(result.final_state, expected);
  }
  summary["warnings"] = warnings;

  if (!args.snapshot_dir.empty()) {
    std::filesystem::create_directories(args.snapshot_dir);
    for (std::size_t i = 0; i < result.snapshots.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "snapshot_%05zu.bin", i);
      std::ofstream f(std::filesystem::path(args.snapshot_dir) / name, std::ios::binary);
      if (!f) throw UsageError("cannot write snapshots to '" + args.snapshot_dir + "'");
      simulator::write_snapshot(f, result.snapshots[i]);
    }
    summary["snapshots"] = result.snapshots.size();
  }

  o.report = {{"config",
               {{"N", c.N},
                {"L", c.L},
                {"dt", c.dt},
                {"T", c.T},
                {"beta", c.beta},
                {"gamma", c.gamma},
                {"dealias", c.dealias},
                {"scheme", c.scheme},
                {"record_every", c.record_every},
                {"snapshot_every", c.snapshot_every}}},
              {"initial", profile_json(run.profile)},
              {"summary", summary}};
  if (o.format == "csv") {
    std::ostringstream csv;
    simulator::write_series_csv(csv, result.series);
    o.body = csv.str();
  } else {
    ordered_json series = ordered_json::array();
    for (const auto& s : result.series.samples) {
      series.push_back({{"t", s.t}, {"I", s.I}, {"P", s.P}, {"H", s.H}, {"maxu", s.max_abs_u}});
    }
    o.report["series"] = std::move(series);
  }

  o.code = result.blew_up ? kBlowUp : within ? kOk : kDriftExceeded;
  return o;
}

void emit(const Outcome& o, const ordered_json& manifest, const Globals& g, std::ostream& out, std::ostream& err) {
  ordered_json doc = {{"schema", 1}, {"manifest", manifest}, {"report", o.report}};
  auto write = [&](const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << content)) throw UsageError("cannot write '" + path + "'");
  };
  if (!o.body) {
    std::string text = doc.dump(2) + "\n";
    if (g.output.empty()) {
      out << text;
    } else {
      write(g.output, text);
    }
    return;
  }
  if (g.output.empty()) {
    out << *o.body;
    err << doc.dump(2) << "\n";
  } else {
    write(g.output, *o.body);
    write(g.output + ".manifest.json", doc.dump(2) + "\n");
  }
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string s;
  for (unsigned i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

std::string version() { return OSTROVSKY_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
  CLI::App app{"Symbolic integrability test, traveling-wave classifier and spectral simulator for the Ostrovsky equation",
               "ostrovsky"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  Globals g;
  app.add_option("--format", g.format, "json, text or csv (defaults depend on the command)")
      ->check(CLI::IsMember({"json", "text", "csv"}));
  app.add_option("--output", g.output, "Write the report here instead of stdout");
  app.add_option("--seed", g.seed, "Seed for random-smooth initial data");

  IntegrabilityArgs ia;
  auto* integ = app.add_subcommand("integrability", "Formal recursion operator locality test");
  integ->fallthrough();
  integ->add_option("--equation", ia.equation, "Alias (ostrovsky, kdv), equation text or a file")->required();
  integ->add_option("--max-order", ia.max_order, "Highest coefficient order")->capture_default_str();
  integ->add_option("--depth", ia.depth, "Laurent depth in 1/eta")->capture_default_str();
  integ->add_flag("--exhaustive", ia.exhaustive, "Continue past the first obstruction");

  WavesArgs wa;
  auto* wv = app.add_subcommand("waves", "Classify the traveling-wave spectrum");
  wv->fallthrough();
  wv->add_option("--beta", wa.beta);
  wv->add_option("--gamma", wa.gamma);
  wv->add_option("--c", wa.c, "Wave speed");
  wv->add_option("--p", wa.p, "p, or lo:hi with --scan");
  wv->add_option("--q", wa.q, "q, or lo:hi with --scan");
  wv->add_flag("--scan", wa.scan, "Classify a grid");
  wv->add_option("--grid", wa.grid, "NxM grid for --scan");
  wv->add_option("--tol", wa.tol, "Boundary tolerance for floating-point input")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  wv->add_option("--beta-sign", wa.beta_sign, "Sign of beta for existence flags in the (p, q) plane")
      ->capture_default_str()
      ->check(CLI::IsMember({-1, 1}));

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Integrate the periodic initial value problem");
  sim->fallthrough();
  sim->add_option("--config", sa.config, "key = value config file")->required();
  sim->add_option("--set", sa.set, "Override a config entry, key=value (repeatable)");
  sim->add_option("--snapshot-dir", sa.snapshot_dir, "Directory for binary field snapshots");

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("ostrovsky");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::string command = integ->parsed() ? "integrability" : wv->parsed() ? "waves" : "simulate";
  try {
    Outcome o = command == "integrability" ? cmd_integrability(ia, g)
                : command == "waves"       ? cmd_waves(wa, g)
                                           : cmd_simulate(sa, g);
    ordered_json hashes = ordered_json::object();
    for (const auto& [k, v] : o.input_hashes) hashes[k] = v;
    ordered_json manifest = {{"command", command},
                             {"arguments", args},
                             {"version", version()},
                             {"timestamp", env.clock ? env.clock() : utc_now()},
                             {"input_hashes", hashes}};
    emit(o, manifest, g, out, err);
    return o.code;
  } catch (const ParseError& e) {
    err << "error: equation " << e.what() << "\n";
  } catch (const UnsupportedEquation& e) {
    err << "error: unsupported equation: " << e.what() << "\n";
  } catch (const DegenerateDispersion& e) {
    err << "error: " << e.what() << "\n";
  } catch (const MalformedInput& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kUsage;
}

}  // namespace ostrovsky::cli

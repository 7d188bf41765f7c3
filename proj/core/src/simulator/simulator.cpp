#include "ostrovsky/simulator/simulator.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <set>

#include "ostrovsky/errors.hpp"
#include "ostrovsky/waves/waves.hpp"
#include "spectral.hpp"

namespace ostrovsky::simulator {
namespace {

using detail::cplx;
using detail::Spectral;

constexpr cplx I_UNIT(0.0, 1.0);

void check_grid(int N, double L) {
  if (N < 16 || N % 2 != 0) throw ContractViolation("grid size must be even and at least 16, got " + std::to_string(N));
  if (!(L > 0.0) || !std::isfinite(L)) throw ContractViolation("period length must be positive");
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double mean(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

// Sum over periodic images so profiles centered near the boundary wrap cleanly.
template <class F>
double periodic(F f, double x, double center, double L) {
  double sum = 0.0;
  for (int m = -2; m <= 2; ++m) sum += f(x - center - m * L);
  return sum;
}

std::string shortest(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

// Linear symbol -i (beta k^4 + gamma) / k; mode 0 is removed.
cplx linear_symbol(double k, double beta, double gamma) {
  if (k == 0.0) return 0.0;
  return -I_UNIT * (beta * k * k * k * k + gamma) / k;
}

void check_zero_mean(const GridState& state) {
  double m = mean(state.values);
  if (std::abs(m) > 1e-12 * std::max(max_abs(state.values), 1e-300) && m != 0.0) {
    throw ContractViolation("state mean " + shortest(m) + " is not zero; Dinv is undefined");
  }
}

// Spectral coefficients of u^2 restricted to the retained modes, times -i k.
void nonlinear_term(Spectral& sp, std::span<const double> u, bool dealias, std::vector<double>& square,
                    std::vector<cplx>& out) {
  square.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) square[i] = u[i] * u[i];
  sp.forward(square, out);
  for (int j = 0; j < sp.modes(); ++j) {
    auto& c = out[static_cast<std::size_t>(j)];
    c = (j > 0 && sp.retained(j, dealias)) ? -I_UNIT * sp.k(j) * c : cplx(0.0);
  }
}

// Kassam and Trefethen contour-integral coefficients for one mode.
struct Etd {
  cplx E, E2, Q, f1, f2, f3;
};

Etd etd_coefficients(cplx hL, double h) {
  constexpr int M = 64;
  Etd c{std::exp(hL), std::exp(hL / 2.0), 0.0, 0.0, 0.0, 0.0};
  for (int j = 1; j <= M; ++j) {
    cplx r = std::exp(I_UNIT * std::numbers::pi * (j - 0.5) / static_cast<double>(M / 2));
    cplx z = hL + r;
    cplx ez = std::exp(z), ez2 = std::exp(z / 2.0);
    cplx z3 = z * z * z;
    c.Q += (ez2 - 1.0) / z;
    c.f1 += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
    c.f2 += (2.0 + z + ez * (-2.0 + z)) / z3;
    c.f3 += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
  }
  double scale = h / M;
  c.Q *= scale;
  c.f1 *= scale;
  c.f2 *= scale;
  c.f3 *= scale;
  return c;
}

bool all_finite(std::span<const cplx> v) {
  return std::all_of(v.begin(), v.end(), [](cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

double relative_drift(const std::vector<Sample>& samples, double Sample::*field) {
  if (samples.empty()) return 0.0;
  double x0 = samples.front().*field;
  double worst = 0.0;
  for (const auto& s : samples) worst = std::max(worst, std::abs(s.*field - x0));
  return x0 == 0.0 ? worst : worst / std::abs(x0);
}

}  // namespace

GridState make_state(const Profile& profile, int N, double L, std::vector<std::string>* warnings) {
  check_grid(N, L);
  GridState state{std::vector<double>(static_cast<std::size_t>(N), 0.0), L, 0.0};
  auto warn = [&](const std::string& text) {
    if (warnings) warnings->push_back(text);
  };
  auto x = [&](int i) { return L * i / N; };

  if (const auto* s = std::get_if<KdvSolitonProfile>(&profile)) {
    auto soliton = waves::kdv_soliton(s->beta, s->k);
    if (2.0 / std::abs(s->k) > L / 4) warn("soliton width 2/k exceeds L/4; periodic images overlap");
    for (int i = 0; i < N; ++i) {
      state.values[static_cast<std::size_t>(i)] =
          periodic([&](double z) { return soliton.profile(z); }, x(i), s->center, L);
    }
  } else if (const auto* g = std::get_if<GaussianDipoleProfile>(&profile)) {
    if (!(g->width > 0.0)) throw ContractViolation("dipole width must be positive");
    if (2.0 * g->width > L / 4) warn("dipole width exceeds L/8; periodic images overlap");
    for (int i = 0; i < N; ++i) {
      state.values[static_cast<std::size_t>(i)] = periodic(
          [&](double z) {
            double r = z / g->width;
            return g->amplitude * r * std::exp(-r * r);
          },
          x(i), g->center, L);
    }
  } else if (const auto* r = std::get_if<RandomSmoothProfile>(&profile)) {
    if (r->cutoff < 1) throw ContractViolation("random-smooth cutoff must be at least 1");
    if (3 * r->cutoff >= N) warn("random-smooth cutoff reaches the dealiased band; high modes will be removed");
    std::mt19937_64 rng(r->seed);
    for (int j = 1; j <= r->cutoff; ++j) {
      double decay = 1.0 / (static_cast<double>(j) * j);
      double a = (2.0 * unit_uniform(rng) - 1.0) * decay;
      double b = (2.0 * unit_uniform(rng) - 1.0) * decay;
      double k = 2.0 * std::numbers::pi * j / L;
      for (int i = 0; i < N; ++i) {
        state.values[static_cast<std::size_t>(i)] += a * std::cos(k * x(i)) + b * std::sin(k * x(i));
      }
    }
    double m = max_abs(state.values);
    if (m > 0.0) {
      for (double& v : state.values) v *= r->amplitude / m;
    }
  }
  double m = mean(state.values);
  for (double& v : state.values) v -= m;
  return state;
}

GridState soliton_exact_state(const KdvSolitonProfile& profile, int N, double L, double t) {
  GridState initial = make_state(profile, N, L);
  auto soliton = waves::kdv_soliton(profile.beta, profile.k);
  // make_state subtracted the sampled mean; recover it from any sample.
  double raw0 = periodic([&](double z) { return soliton.profile(z); }, 0.0, profile.center, L);
  double m = raw0 - initial.values[0];
  KdvSolitonProfile moved = profile;
  moved.center = profile.center + (soliton.speed - 2.0 * m) * t;
  GridState state = make_state(moved, N, L);
  state.t = t;
  return state;
}

double max_difference(const GridState& a, const GridState& b) {
  if (a.size() != b.size()) throw ContractViolation("states have different sizes");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

void validate(const SimConfig& c) {
  check_grid(c.N, c.L);
  if (!(c.dt > 0.0) || !std::isfinite(c.dt)) throw ContractViolation("dt must be positive");
  if (!(c.T >= c.dt)) throw ContractViolation("T must be at least dt");
  double steps = c.T / c.dt;
  if (std::abs(steps - std::round(steps)) > 1e-9 * steps) throw ContractViolation("T must be a whole number of steps dt");
  if (c.scheme != "etdrk4") throw ContractViolation("unknown scheme '" + c.scheme + "'; supported: etdrk4");
  if (c.record_every < 1) throw ContractViolation("record_every must be at least 1");
  if (c.snapshot_every < 0) throw ContractViolation("snapshot_every must be nonnegative");
  if (!std::isfinite(c.beta) || !std::isfinite(c.gamma)) throw ContractViolation("beta and gamma must be finite");
}

long step_count(const SimConfig& config) { return std::lround(config.T / config.dt); }

double stiffness(const SimConfig& config) {
  double worst = 0.0;
  for (int j = 1; j < config.N / 2; ++j) {
    double k = 2.0 * std::numbers::pi * j / config.L;
    worst = std::max(worst, std::abs(config.beta * k * k * k + config.gamma / k));
  }
  return worst * config.dt;
}

std::vector<double> rhs(const GridState& state, double beta, double gamma, bool dealias) {
  check_grid(state.size(), state.L);
  Spectral sp(state.size(), state.L);
  std::vector<cplx> u_hat, nl;
  std::vector<double> square, out;
  sp.forward(state.values, u_hat);
  nonlinear_term(sp, state.values, dealias, square, nl);
  for (int j = 0; j < sp.modes(); ++j) {
    auto idx = static_cast<std::size_t>(j);
    u_hat[idx] = j == sp.modes() - 1 ? cplx(0.0) : linear_symbol(sp.k(j), beta, gamma) * u_hat[idx] + nl[idx];
  }
  sp.backward(u_hat, out);
  return out;
}

Invariants invariants(const GridState& state, double beta, double gamma) {
  check_grid(state.size(), state.L);
  check_zero_mean(state);
  Spectral sp(state.size(), state.L);
  std::vector<cplx> u_hat, dx_hat, inv_hat;
  sp.forward(state.values, u_hat);
  dx_hat.resize(u_hat.size());
  inv_hat.resize(u_hat.size());
  for (int j = 0; j < sp.modes(); ++j) {
    auto idx = static_cast<std::size_t>(j);
    bool keep = j > 0 && j < state.size() / 2;
    dx_hat[idx] = keep ? I_UNIT * sp.k(j) * u_hat[idx] : cplx(0.0);
    inv_hat[idx] = keep ? u_hat[idx] / (I_UNIT * sp.k(j)) : cplx(0.0);
  }
  std::vector<double> ux, w;
  sp.backward(dx_hat, ux);
  sp.backward(inv_hat, w);
  double h = state.L / state.size();
  Invariants inv;
  for (std::size_t i = 0; i < state.values.size(); ++i) {
    double u = state.values[i];
    inv.I += u;
    inv.P += 0.5 * u * u;
    inv.H += 0.5 * beta * ux[i] * ux[i] + 0.5 * gamma * w[i] * w[i] + u * u * u / 3.0;
  }
  inv.I *= h;
  inv.P *= h;
  inv.H *= h;
  return inv;
}

VariationalCheck variational_residual(const GridState& state, double beta, double gamma, bool dealias) {
  check_zero_mean(state);
  std::vector<double> r = rhs(state, beta, gamma, dealias);

  // d/dx of dH/du = -beta u_xx - gamma Dinv^2 u + u^2, assembled mode by mode.
  Spectral sp(state.size(), state.L);
  std::vector<cplx> u_hat, sq_hat;
  std::vector<double> square(state.values.size());
  for (std::size_t i = 0; i < square.size(); ++i) square[i] = state.values[i] * state.values[i];
  sp.forward(state.values, u_hat);
  sp.forward(square, sq_hat);
  std::vector<cplx> grad(u_hat.size());
  for (int j = 1; j < sp.modes() - 1; ++j) {
    auto idx = static_cast<std::size_t>(j);
    double k = sp.k(j);
    cplx variational = beta * k * k * u_hat[idx] + gamma / (k * k) * u_hat[idx];
    if (sp.retained(j, dealias)) variational += sq_hat[idx];
    grad[idx] = I_UNIT * k * variational;
  }
  std::vector<double> g;
  sp.backward(grad, g);

  double scale = max_abs(r);
  double plus = 0.0, minus = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    plus = std::max(plus, std::abs(r[i] - g[i]));
    minus = std::max(minus, std::abs(r[i] + g[i]));
  }
  if (scale > 0.0) {
    plus /= scale;
    minus /= scale;
  }
  VariationalCheck check;
  check.residual_plus = plus;
  check.residual_minus = minus;
  check.sign = minus <= plus ? -1 : 1;
  check.residual = std::min(plus, minus);
  return check;
}

double InvariantSeries::drift_P() const { return relative_drift(samples, &Sample::P); }
double InvariantSeries::drift_H() const { return relative_drift(samples, &Sample::H); }
double InvariantSeries::max_abs_I() const {
  double worst = 0.0;
  for (const auto& s : samples) worst = std::max(worst, std::abs(s.I));
  return worst;
}

IntegrateResult integrate(const GridState& initial, const SimConfig& config) {
  validate(config);
  if (initial.size() != config.N) throw ContractViolation("initial state size differs from config N");
  if (std::abs(initial.L - config.L) > 1e-12 * config.L) throw ContractViolation("initial state length differs from config L");
  check_zero_mean(initial);

  IntegrateResult result;
  if (double s = stiffness(config); s > 100.0) {
    result.warnings.push_back("linear phase change per step is " + shortest(s) +
                              " rad; the exponential integrator stays stable but accuracy may suffer");
  }

  Spectral sp(config.N, config.L);
  const int modes = sp.modes();
  std::vector<cplx> v;
  sp.forward(initial.values, v);
  for (int j = 0; j < modes; ++j) {
    if (j == 0 || !sp.retained(j, config.dealias)) v[static_cast<std::size_t>(j)] = 0.0;
  }

  std::vector<Etd> coeff(static_cast<std::size_t>(modes));
  for (int j = 0; j < modes; ++j) {
    coeff[static_cast<std::size_t>(j)] =
        etd_coefficients(config.dt * linear_symbol(sp.k(j), config.beta, config.gamma), config.dt);
  }

  std::vector<double> u, square;
  auto physical = [&](const std::vector<cplx>& coeffs, double t) {
    sp.backward(coeffs, u);
    return GridState{u, config.L, t};
  };
  auto nonlinear = [&](const std::vector<cplx>& coeffs, std::vector<cplx>& out) {
    sp.backward(coeffs, u);
    nonlinear_term(sp, u, config.dealias, square, out);
  };
  auto record = [&](const GridState& state) {
    Invariants inv = invariants(state, config.beta, config.gamma);
    result.series.samples.push_back(Sample{state.t, inv.I, inv.P, inv.H, max_abs(state.values)});
  };

  const long steps = step_count(config);
  const double t0 = initial.t;
  GridState current = physical(v, t0);
  record(current);
  if (config.snapshot_every > 0) result.snapshots.push_back(current);

  std::vector<cplx> Nv(modes), a(modes), Na(modes), b(modes), Nb(modes), c(modes), Nc(modes), next(modes);
  double last_valid = t0;
  for (long n = 1; n <= steps; ++n) {
    nonlinear(v, Nv);
    for (int j = 0; j < modes; ++j) {
      auto i = static_cast<std::size_t>(j);
      a[i] = coeff[i].E2 * v[i] + coeff[i].Q * Nv[i];
    }
    nonlinear(a, Na);
    for (int j = 0; j < modes; ++j) {
      auto i = static_cast<std::size_t>(j);
      b[i] = coeff[i].E2 * v[i] + coeff[i].Q * Na[i];
    }
    nonlinear(b, Nb);
    for (int j = 0; j < modes; ++j) {
      auto i = static_cast<std::size_t>(j);
      c[i] = coeff[i].E2 * a[i] + coeff[i].Q * (2.0 * Nb[i] - Nv[i]);
    }
    nonlinear(c, Nc);
    for (int j = 0; j < modes; ++j) {
      auto i = static_cast<std::size_t>(j);
      next[i] = coeff[i].E * v[i] + Nv[i] * coeff[i].f1 + 2.0 * (Na[i] + Nb[i]) * coeff[i].f2 + Nc[i] * coeff[i].f3;
    }
    if (!all_finite(next)) {
      result.blew_up = true;
      result.warnings.push_back("non-finite field after t = " + shortest(last_valid));
      break;
    }
    v.swap(next);
    double t = t0 + static_cast<double>(n) * config.dt;
    last_valid = t;
    bool want_record = n % config.record_every == 0 || n == steps;
    bool want_snapshot = config.snapshot_every > 0 && n % config.snapshot_every == 0;
    if (want_record || want_snapshot) {
      current = physical(v, t);
      if (max_abs(current.values) > 1e150) {
        result.blew_up = true;
        result.warnings.push_back("field magnitude exceeded 1e150 at t = " + shortest(t));
        break;
      }
      if (want_record) record(current);
      if (want_snapshot) result.snapshots.push_back(current);
    }
  }
  result.last_valid_time = last_valid;
  result.final_state = result.blew_up ? current : physical(v, last_valid);
  if (!result.blew_up &&
      (result.series.drift_P() > config.drift_budget || result.series.drift_H() > config.drift_budget)) {
    result.warnings.push_back("invariant drift exceeds the budget " + shortest(config.drift_budget));
  }
  return result;
}

RunConfig parse_config(std::istream& in) {
  RunConfig config;
  std::map<std::string, std::pair<std::string, int>> entries;
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw MalformedInput("config line " + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw MalformedInput("config line " + std::to_string(line_no) + ": empty key or value");
    }
    if (!entries.emplace(key, std::pair(value, line_no)).second) {
      throw MalformedInput("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }

  std::set<std::string> used;
  auto fail = [&](const std::string& key, const std::string& what) -> MalformedInput {
    return MalformedInput("config line " + std::to_string(entries.at(key).second) + ": " + key + " " + what);
  };
  auto number = [&](const std::string& key, double fallback) {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    used.insert(key);
    const std::string& text = it->second.first;
    double v = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v)) throw fail(key, "is not a number");
    return v;
  };
  auto integer = [&](const std::string& key, long long fallback) {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    used.insert(key);
    const std::string& text = it->second.first;
    long long v = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size()) throw fail(key, "is not an integer");
    return v;
  };
  auto text = [&](const std::string& key, const std::string& fallback) {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    used.insert(key);
    return it->second.first;
  };

  SimConfig& s = config.sim;
  s.N = static_cast<int>(integer("N", s.N));
  s.L = number("L", s.L);
  s.dt = number("dt", s.dt);
  s.T = number("T", s.T);
  s.beta = number("beta", s.beta);
  s.gamma = number("gamma", s.gamma);
  std::string dealias = text("dealias", s.dealias ? "true" : "false");
  if (dealias == "true" || dealias == "on" || dealias == "1") {
    s.dealias = true;
  } else if (dealias == "false" || dealias == "off" || dealias == "0") {
    s.dealias = false;
  } else {
    throw fail("dealias", "must be true or false");
  }
  s.scheme = text("scheme", s.scheme);
  s.record_every = static_cast<int>(integer("record_every", s.record_every));
  s.snapshot_every = static_cast<int>(integer("snapshot_every", s.snapshot_every));
  s.drift_budget = number("drift_budget", s.drift_budget);

  std::string kind = text("profile", "zero");
  if (kind == "zero") {
    config.profile = ZeroProfile{};
  } else if (kind == "kdv-soliton") {
    config.profile = KdvSolitonProfile{s.beta, number("k", 1.0), number("center", s.L / 2)};
  } else if (kind == "gaussian-dipole") {
    config.profile = GaussianDipoleProfile{number("amplitude", 1.0), number("width", 1.0), number("center", s.L / 2)};
  } else if (kind == "random-smooth") {
    long long seed = integer("seed", 0);
    if (seed < 0) throw fail("seed", "must be nonnegative");
    config.profile = RandomSmoothProfile{static_cast<std::uint64_t>(seed), static_cast<int>(integer("cutoff", 8)),
                                         number("amplitude", 1.0)};
  } else {
    throw fail("profile", "must be one of zero, kdv-soliton, gaussian-dipole, random-smooth");
  }
  for (const auto& [key, entry] : entries) {
    if (!used.count(key)) {
      throw MalformedInput("config line " + std::to_string(entry.second) + ": unknown or unused key '" + key + "'");
    }
  }
  return config;
}

void write_series_csv(std::ostream& out, const InvariantSeries& series) {
  out << "t,I,P,H,maxu\n";
  for (const auto& s : series.samples) {
    out << shortest(s.t) << ',' << shortest(s.I) << ',' << shortest(s.P) << ',' << shortest(s.H) << ','
        << shortest(s.max_abs_u) << '\n';
  }
}

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw MalformedInput("truncated snapshot");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

}  // namespace

void write_snapshot(std::ostream& out, const GridState& state) {
  put_u64(out, static_cast<std::uint64_t>(static_cast<std::int64_t>(state.size())));
  put_u64(out, std::bit_cast<std::uint64_t>(state.L));
  put_u64(out, std::bit_cast<std::uint64_t>(state.t));
  for (double v : state.values) put_u64(out, std::bit_cast<std::uint64_t>(v));
}

GridState read_snapshot(std::istream& in) {
  auto n = static_cast<std::int64_t>(get_u64(in));
  if (n <= 0 || n > (std::int64_t{1} << 32)) throw MalformedInput("snapshot has an invalid sample count");
  GridState state;
  state.L = std::bit_cast<double>(get_u64(in));
  state.t = std::bit_cast<double>(get_u64(in));
  state.values.resize(static_cast<std::size_t>(n));
  for (auto& v : state.values) v = std::bit_cast<double>(get_u64(in));
  return state;
}

}  // namespace ostrovsky::simulator

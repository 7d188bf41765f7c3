#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ostrovsky::simulator {

/// Samples u(x_j), x_j = j L / N, of a periodic zero-mean field at time t.
struct GridState {
  std::vector<double> values;
  double L = 1.0;
  double t = 0.0;

  int size() const noexcept { return static_cast<int>(values.size()); }
};

struct ZeroProfile {};

/// -6 beta k^2 sech^2(k (x - center)), the gamma = 0 solitary wave.
struct KdvSolitonProfile {
  double beta = 1.0;
  double k = 1.0;
  double center = 0.0;
};

/// amplitude * (x - center)/width * exp(-((x - center)/width)^2), odd about center.
struct GaussianDipoleProfile {
  double amplitude = 1.0;
  double width = 1.0;
  double center = 0.0;
};

/// Random Fourier series over wavenumbers 1..cutoff, rescaled so max|u| = amplitude.
struct RandomSmoothProfile {
  std::uint64_t seed = 0;
  int cutoff = 8;
  double amplitude = 1.0;
};

using Profile = std::variant<ZeroProfile, KdvSolitonProfile, GaussianDipoleProfile, RandomSmoothProfile>;

/// Samples the profile with its mean subtracted. Requires N even, N >= 16,
/// L > 0 (ContractViolation otherwise). Profiles wider than L/4 add a warning.
GridState make_state(const Profile& profile, int N, double L, std::vector<std::string>* warnings = nullptr);

/// Exact gamma = 0 evolution of make_state(profile) to time t. Removing the
/// mean m is a Galilean shift, so the profile moves at c - 2 m.
GridState soliton_exact_state(const KdvSolitonProfile& profile, int N, double L, double t);

/// max |a - b| over the samples; sizes must agree.
double max_difference(const GridState& a, const GridState& b);

struct SimConfig {
  int N = 256;
  double L = 50.0;
  double dt = 1e-3;
  double T = 1.0;
  double beta = 1.0;
  double gamma = 0.0;
  /// 2/3 rule: modes with |j| > N/3 are removed from the state and the nonlinear term.
  bool dealias = true;
  std::string scheme = "etdrk4";
  /// Invariants are recorded every this many steps (and at the final time).
  int record_every = 100;
  /// Field snapshots every this many steps; 0 disables them.
  int snapshot_every = 0;
  /// Relative P and H drift above this marks the run as over budget.
  double drift_budget = 1e-6;
};

/// Throws ContractViolation on N odd or < 16, nonpositive L, dt, T < dt,
/// T not a whole number of steps, unknown scheme or bad intervals.
void validate(const SimConfig& config);

/// Number of steps of size dt that reach T.
long step_count(const SimConfig& config);

/// max_k |beta k^3 + gamma / k| dt, the largest linear phase change per step.
double stiffness(const SimConfig& config);

/// Spectral right-hand side of u_t = Dinv(beta u_xxxx + gamma u) - 2 u u_x.
std::vector<double> rhs(const GridState& state, double beta, double gamma, bool dealias = true);

struct Invariants {
  double I = 0.0;
  double P = 0.0;
  double H = 0.0;
};

/// I = int u, P = 1/2 int u^2, H = int beta/2 u_x^2 + gamma/2 (Dinv u)^2 + u^3/3 with
/// spectral derivatives and the trapezoid rule. Throws ContractViolation when
/// the mean is not zero to rounding.
Invariants invariants(const GridState& state, double beta, double gamma);

struct VariationalCheck {
  /// Smaller of the two relative residuals.
  double residual = 0.0;
  /// Sign s with rhs = s * d/dx (dH/du).
  int sign = -1;
  double residual_plus = 0.0;
  double residual_minus = 0.0;
};

/// Compares rhs(state) with s * d/dx(-beta u_xx - gamma Dinv^2 u + u^2) for s = +1, -1.
/// Residuals are max-norm differences relative to max|rhs| (absolute when rhs = 0).
VariationalCheck variational_residual(const GridState& state, double beta, double gamma, bool dealias = true);

struct Sample {
  double t = 0.0;
  double I = 0.0;
  double P = 0.0;
  double H = 0.0;
  double max_abs_u = 0.0;
};

struct InvariantSeries {
  std::vector<Sample> samples;

  /// max |X(t) - X(0)| / |X(0)|, or the absolute change when X(0) = 0.
  double drift_P() const;
  double drift_H() const;
  double max_abs_I() const;
};

struct IntegrateResult {
  GridState final_state;
  InvariantSeries series;
  std::vector<GridState> snapshots;
  std::vector<std::string> warnings;
  bool blew_up = false;
  /// Time of the last finite state (the final time unless blew_up).
  double last_valid_time = 0.0;
};

/// ETDRK4 with exact linear propagation. With dealiasing the initial state is
/// first projected onto the retained modes. Deterministic for a given input.
IntegrateResult integrate(const GridState& initial, const SimConfig& config);

/// Simulation config plus initial profile, read from `key = value` lines.
struct RunConfig {
  SimConfig sim;
  Profile profile = ZeroProfile{};
};

/// Keys: N, L, dt, T, beta, gamma, dealias, scheme, record_every, snapshot_every,
/// drift_budget, profile (zero | kdv-soliton | gaussian-dipole | random-smooth),
/// k, center, amplitude, width, seed, cutoff. '#' starts a comment.
/// Throws MalformedInput naming the line on unknown keys or bad values.
RunConfig parse_config(std::istream& in);

/// "t,I,P,H,maxu" followed by one line per sample.
void write_series_csv(std::ostream& out, const InvariantSeries& series);

/// N (int64), L and t (float64), then N float64 samples, all little-endian.
void write_snapshot(std::ostream& out, const GridState& state);
GridState read_snapshot(std::istream& in);

}  // namespace ostrovsky::simulator

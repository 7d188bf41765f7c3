#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ostrovsky/algebra/rational.hpp"

namespace ostrovsky::waves {

/// Traveling waves u = phi(x - c t) of u_t = Dinv(beta u_xxxx + gamma u) - 2 u u_x.
struct WaveParams {
  double beta = 1.0;
  double gamma = 0.0;
  double c = 0.0;
};

struct PQ {
  double p = 0.0;
  double q = 0.0;
};

struct ExactPQ {
  algebra::BigRational p;
  algebra::BigRational q;
};

/// p = gamma / beta, q = -c / beta. Throws MalformedInput when beta = 0.
PQ to_pq(const WaveParams& params);
ExactPQ to_pq(const algebra::BigRational& beta, const algebra::BigRational& gamma, const algebra::BigRational& c);

/// Roots of lambda^4 - q lambda^2 + p, paired as lambdas = {+r1, -r1, +r2, -r2}
/// with r_i = sqrt(mu_i) and mu the roots of mu^2 - q mu + p.
struct Spectrum {
  std::array<std::complex<double>, 4> lambdas;
  std::array<std::complex<double>, 2> mu;
};

Spectrum characteristic_roots(double p, double q);

/// |lambda^4 - q lambda^2 + p| maximized over the four roots.
double max_residual(const Spectrum& spectrum, double p, double q);

enum class Region { Region1, Region2, Region3, Region4, C0, C1, C2, C3, Origin };

std::string_view to_string(Region region);

struct RegionClass {
  Region label = Region::Origin;
  std::string eigen_structure;
  std::string annotation;
};

/// Boundary curves are matched within `tol` (|p| <= tol for C0/C1,
/// |q^2 - 4p| <= tol q^2 for C2/C3). Throws ContractViolation unless tol > 0.
RegionClass classify(double p, double q, double tol = 1e-9);

/// Exact classification; boundaries are equalities.
RegionClass classify(const algebra::BigRational& p, const algebra::BigRational& q);

RegionClass describe(Region region);

/// Root multiset shape: roots at zero, on the real axis, on the imaginary
/// axis and off both axes, plus the number of distinct roots.
struct RootPattern {
  int zero = 0;
  int real = 0;
  int imaginary = 0;
  int complex = 0;
  int distinct = 0;

  friend bool operator==(const RootPattern&, const RootPattern&) = default;
};

/// The pattern a region's eigen_structure string declares.
RootPattern expected_pattern(Region region);

struct ExistenceFlags {
  bool existence_known = false;
  bool nonexistence_known = false;
  std::string reason;
};

/// Existence holds for beta > 0 and c < 2 sqrt(gamma beta) (zero-mass waves);
/// nonexistence holds for beta < 0.
ExistenceFlags existence_flags(const WaveParams& params);

/// "exists", "does-not-exist" or "unknown" for a (p, q) point, given the sign of beta.
std::string existence_flag(double p, double q, int beta_sign);

/// phi(z) = amplitude sech^2(k z) traveling at `speed`, the gamma = 0 solitary wave.
struct KdvSoliton {
  double beta = 1.0;
  double k = 1.0;
  double amplitude = 0.0;
  double speed = 0.0;

  double profile(double z) const;
  double second_derivative(double z) const;
};

/// amplitude = -6 beta k^2, speed = -4 beta k^2. Throws ContractViolation for beta = 0 or k = 0.
KdvSoliton kdv_soliton(double beta, double k);

/// max |-c phi - beta phi'' + phi^2| over the sample points.
double soliton_residual(const KdvSoliton& soliton, std::span<const double> z);

struct ScanRow {
  double p = 0.0;
  double q = 0.0;
  RegionClass region;
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// Grid classification, p varying slowest. Throws ContractViolation unless
/// both grid sizes are at least 2 and tol > 0.
std::vector<ScanRow> scan(Range p_range, Range q_range, int p_points, int q_points, double tol = 1e-9);

/// Header "p,q,label,eigen_structure,existence_flag" then one line per row.
void write_csv(std::ostream& out, std::span<const ScanRow> rows, int beta_sign = 1);

}  // namespace ostrovsky::waves

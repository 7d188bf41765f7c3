#include "ostrovsky/waves/waves.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "ostrovsky/errors.hpp"

namespace ostrovsky::waves {
namespace {

using cplx = std::complex<double>;

std::string shortest(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

PQ to_pq(const WaveParams& params) {
  if (params.beta == 0.0) throw MalformedInput("beta = 0: p = gamma/beta and q = -c/beta are undefined");
  return PQ{params.gamma / params.beta, -params.c / params.beta};
}

ExactPQ to_pq(const algebra::BigRational& beta, const algebra::BigRational& gamma, const algebra::BigRational& c) {
  if (beta == 0) throw MalformedInput("beta = 0: p = gamma/beta and q = -c/beta are undefined");
  algebra::BigRational p = gamma / beta;
  algebra::BigRational q = -c / beta;
  return ExactPQ{p, q};
}

Spectrum characteristic_roots(double p, double q) {
  Spectrum s;
  cplx d = std::sqrt(cplx(q * q - 4.0 * p, 0.0));
  // Add d with the sign that avoids cancellation, then recover the other root from mu1 mu2 = p.
  cplx plus = q + d, minus = q - d;
  cplx mu1 = (std::abs(plus) >= std::abs(minus) ? plus : minus) / 2.0;
  cplx mu2 = mu1 == cplx(0.0) ? cplx(0.0) : cplx(p) / mu1;
  s.mu = {mu1, mu2};
  cplx r1 = std::sqrt(mu1), r2 = std::sqrt(mu2);
  s.lambdas = {r1, -r1, r2, -r2};
  return s;
}

double max_residual(const Spectrum& spectrum, double p, double q) {
  double worst = 0.0;
  for (cplx l : spectrum.lambdas) {
    cplx l2 = l * l;
    worst = std::max(worst, std::abs(l2 * l2 - q * l2 + p));
  }
  return worst;
}

std::string_view to_string(Region region) {
  switch (region) {
    case Region::Region1: return "Region1";
    case Region::Region2: return "Region2";
    case Region::Region3: return "Region3";
    case Region::Region4: return "Region4";
    case Region::C0: return "C0";
    case Region::C1: return "C1";
    case Region::C2: return "C2";
    case Region::C3: return "C3";
    case Region::Origin: return "Origin";
  }
  return "Origin";
}

RegionClass describe(Region region) {
  switch (region) {
    case Region::Region1:
      return {region, "±λ ± iω",
              "saddle-focus equilibrium; one symmetric homoclinic orbit forces infinitely many, so N-peaked "
              "solitary waves are expected for every N > 1"};
    case Region::Region2:
      return {region, "±λ₁, ±λ₂",
              "hyperbolic saddle; a symmetric homoclinic orbit may exist, existence is inconclusive here"};
    case Region::Region3:
      return {region, "±λ, ±iω", "saddle-center equilibrium; no solitary waves decaying with all derivatives"};
    case Region::Region4:
      return {region, "±iω₁, ±iω₂", "elliptic equilibrium with two frequencies; no homoclinic orbits known"};
    case Region::C0:
      return {region, "0, 0, ±λ",
              "double zero eigenvalue with a real pair; on the μ > 0 side a unique symmetric sech² homoclinic "
              "solution bifurcates"};
    case Region::C1:
      return {region, "0, 0, ±iω",
              "double zero eigenvalue with an imaginary pair; a sech² homoclinic orbit on the Region3 side"};
    case Region::C2:
      return {region, "±iω, ±iω",
              "double imaginary pair; envelope homoclinic orbits with oscillating tails are possible, "
              "persistence is undecided"};
    case Region::C3:
      return {region, "±λ, ±λ",
              "double real pair; hyperbolic, no small-amplitude bifurcation, crossing it creates infinitely "
              "many homoclinic orbits"};
    case Region::Origin:
      return {region, "0, 0, 0, 0", "quadruple zero eigenvalue"};
  }
  return {region, "", ""};
}

RegionClass classify(double p, double q, double tol) {
  if (!(tol > 0.0)) throw ContractViolation("classification tolerance must be positive");
  if (p < -tol) return describe(Region::Region3);
  if (std::abs(p) <= tol) {
    if (q > tol) return describe(Region::C0);
    if (q < -tol) return describe(Region::C1);
    return describe(Region::Origin);
  }
  if (std::abs(q) <= tol) return describe(Region::Region1);
  double disc = q * q - 4.0 * p;
  if (std::abs(disc) <= tol * q * q) return describe(q < 0 ? Region::C2 : Region::C3);
  if (disc < 0) return describe(Region::Region1);
  return describe(q > 0 ? Region::Region2 : Region::Region4);
}

RegionClass classify(const algebra::BigRational& p, const algebra::BigRational& q) {
  if (p < 0) return describe(Region::Region3);
  if (p == 0) {
    if (q > 0) return describe(Region::C0);
    if (q < 0) return describe(Region::C1);
    return describe(Region::Origin);
  }
  algebra::BigRational disc = q * q - 4 * p;
  if (disc == 0) return describe(q < 0 ? Region::C2 : Region::C3);
  if (disc < 0) return describe(Region::Region1);
  return describe(q > 0 ? Region::Region2 : Region::Region4);
}

RootPattern expected_pattern(Region region) {
  switch (region) {
    case Region::Region1: return {0, 0, 0, 4, 4};
    case Region::Region2: return {0, 4, 0, 0, 4};
    case Region::Region3: return {0, 2, 2, 0, 4};
    case Region::Region4: return {0, 0, 4, 0, 4};
    case Region::C0: return {2, 2, 0, 0, 3};
    case Region::C1: return {2, 0, 2, 0, 3};
    case Region::C2: return {0, 0, 4, 0, 2};
    case Region::C3: return {0, 4, 0, 0, 2};
    case Region::Origin: return {4, 0, 0, 0, 1};
  }
  return {};
}

ExistenceFlags existence_flags(const WaveParams& params) {
  ExistenceFlags flags;
  if (params.beta < 0) {
    flags.nonexistence_known = true;
    flags.reason = "beta < 0: stationary localized pulses cannot exist";
  } else if (params.beta > 0 && params.gamma >= 0 && params.c < 2.0 * std::sqrt(params.gamma * params.beta)) {
    flags.existence_known = true;
    flags.reason = "beta > 0 and c < 2 sqrt(gamma beta): zero-mass solitary waves exist";
  } else {
    flags.reason = "no existence or nonexistence result applies";
  }
  return flags;
}

std::string existence_flag(double p, double q, int beta_sign) {
  if (beta_sign < 0) return "does-not-exist";
  if (beta_sign == 0 || p < 0) return "unknown";
  // With beta > 0: c < 2 sqrt(gamma beta) reads q > -2 sqrt(p).
  return q > -2.0 * std::sqrt(p) ? "exists" : "unknown";
}

double KdvSoliton::profile(double z) const {
  double s = 1.0 / std::cosh(k * z);
  return amplitude * s * s;
}

double KdvSoliton::second_derivative(double z) const {
  double s = 1.0 / std::cosh(k * z);
  double s2 = s * s;
  return amplitude * k * k * (4.0 * s2 - 6.0 * s2 * s2);
}

KdvSoliton kdv_soliton(double beta, double k) {
  if (beta == 0.0 || k == 0.0) throw ContractViolation("soliton needs beta != 0 and k != 0");
  return KdvSoliton{beta, k, -6.0 * beta * k * k, -4.0 * beta * k * k};
}

double soliton_residual(const KdvSoliton& soliton, std::span<const double> z) {
  double worst = 0.0;
  for (double x : z) {
    double phi = soliton.profile(x);
    double r = -soliton.speed * phi - soliton.beta * soliton.second_derivative(x) + phi * phi;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

std::vector<ScanRow> scan(Range p_range, Range q_range, int p_points, int q_points, double tol) {
  if (p_points < 2 || q_points < 2) throw ContractViolation("scan grid needs at least 2 points per axis");
  if (!(tol > 0.0)) throw ContractViolation("classification tolerance must be positive");
  auto node = [](Range r, int i, int n) {
    return r.lo + (r.hi - r.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  std::vector<ScanRow> rows;
  rows.reserve(static_cast<std::size_t>(p_points) * static_cast<std::size_t>(q_points));
  for (int i = 0; i < p_points; ++i) {
    double p = node(p_range, i, p_points);
    for (int j = 0; j < q_points; ++j) {
      double q = node(q_range, j, q_points);
      rows.push_back(ScanRow{p, q, classify(p, q, tol)});
    }
  }
  return rows;
}

void write_csv(std::ostream& out, std::span<const ScanRow> rows, int beta_sign) {
  out << "p,q,label,eigen_structure,existence_flag\n";
  for (const auto& row : rows) {
    out << shortest(row.p) << ',' << shortest(row.q) << ',' << to_string(row.region.label) << ",\""
        << row.region.eigen_structure << "\"," << existence_flag(row.p, row.q, beta_sign) << '\n';
  }
}

}  // namespace ostrovsky::waves

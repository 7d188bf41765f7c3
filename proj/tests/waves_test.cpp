#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "ostrovsky/errors.hpp"
#include "ostrovsky/waves/waves.hpp"
#include "root_oracle.hpp"

using namespace ostrovsky;
using namespace ostrovsky::waves;
using ostrovsky::algebra::BigRational;
using cplx = std::complex<double>;

namespace {

bool contains(const Spectrum& s, cplx value, double tol = 1e-12) {
  for (cplx l : s.lambdas) {
    if (std::abs(l - value) <= tol) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("parameter mapping") {
  auto a = to_pq(WaveParams{1, 1, -2});
  CHECK(a.p == 1.0);
  CHECK(a.q == 2.0);
  auto b = to_pq(WaveParams{2, 0, 1});
  CHECK(b.p == 0.0);
  CHECK(b.q == -0.5);
  auto c = to_pq(WaveParams{-1, 1, 1});
  CHECK(c.p == -1.0);
  CHECK(c.q == 1.0);
  CHECK_THROWS_AS(to_pq(WaveParams{0, 1, 1}), MalformedInput);

  auto exact = to_pq(BigRational(2), BigRational(0), BigRational(1));
  CHECK(exact.p == 0);
  CHECK(exact.q == BigRational(-1, 2));
  CHECK_THROWS_AS(to_pq(BigRational(0), BigRational(1), BigRational(1)), MalformedInput);
}

TEST_CASE("characteristic roots") {
  auto s = characteristic_roots(0, 1);
  CHECK(contains(s, 0.0));
  CHECK(contains(s, 1.0));
  CHECK(contains(s, -1.0));

  auto quad = characteristic_roots(1, 0);
  double h = 1.0 / std::sqrt(2.0);
  for (cplx r : {cplx(h, h), cplx(h, -h), cplx(-h, h), cplx(-h, -h)}) CHECK(contains(quad, r));

  auto dbl = characteristic_roots(1, 2);
  int plus = 0, minus = 0;
  for (cplx l : dbl.lambdas) {
    if (std::abs(l - 1.0) < 1e-12) ++plus;
    if (std::abs(l + 1.0) < 1e-12) ++minus;
  }
  CHECK(plus == 2);
  CHECK(minus == 2);
}

TEST_CASE("root residuals and Vieta relations over random samples") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-100.0, 100.0);
  for (int i = 0; i < 10000; ++i) {
    double p = coord(rng), q = coord(rng);
    auto s = characteristic_roots(p, q);
    double scale = std::max({1.0, std::abs(p), q * q});
    REQUIRE(max_residual(s, p, q) <= 1e-10 * scale);
    // Roots come in +- pairs.
    CHECK(std::abs(s.lambdas[0] + s.lambdas[1]) == 0.0);
    CHECK(std::abs(s.lambdas[2] + s.lambdas[3]) == 0.0);
    CHECK(std::abs(s.mu[0] + s.mu[1] - q) <= 1e-12 * std::max(1.0, std::abs(q) + std::abs(s.mu[0])));
    cplx product = s.lambdas[0] * s.lambdas[1] * s.lambdas[2] * s.lambdas[3];
    CHECK(std::abs(product - p) <= 1e-12 * scale);
  }
}

TEST_CASE("classification examples") {
  CHECK(classify(-1, 0).label == Region::Region3);
  CHECK(classify(-1, 0).eigen_structure == "±λ, ±iω");
  CHECK(classify(1, 0).label == Region::Region1);
  CHECK(classify(1, 0).eigen_structure == "±λ ± iω");
  CHECK(classify(0, 1).label == Region::C0);
  CHECK(classify(0, 1).eigen_structure == "0, 0, ±λ");
  CHECK(classify(1, 3).label == Region::Region2);
  CHECK(classify(1, 3).eigen_structure == "±λ₁, ±λ₂");
  CHECK(classify(1, -3).label == Region::Region4);
  CHECK(classify(0, -1).label == Region::C1);
  CHECK(classify(1, -2).label == Region::C2);
  CHECK(classify(1, 2).label == Region::C3);
  CHECK(classify(0, 0).label == Region::Origin);
  CHECK(classify(1e-12, 1e-12).label == Region::Origin);
  CHECK_THROWS_AS(classify(1, 1, 0.0), ContractViolation);

  CHECK(classify(BigRational(1), BigRational(2)).label == Region::C3);
  CHECK(classify(BigRational(1, 4), BigRational(-1)).label == Region::C2);
  CHECK(classify(BigRational(0), BigRational(0)).label == Region::Origin);
  CHECK(classify(BigRational(-1, 3), BigRational(5)).label == Region::Region3);
  CHECK(classify(BigRational(1), BigRational(1)).label == Region::Region1);
  CHECK(classify(BigRational(1), BigRational(3)).label == Region::Region2);
  CHECK(classify(BigRational(1), BigRational(-3)).label == Region::Region4);
  CHECK(classify(BigRational(0), BigRational(-3)).label == Region::C1);
}

TEST_CASE("exact and floating classification agree away from boundaries") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(-40, 40);
  for (int i = 0; i < 2000; ++i) {
    BigRational p(num(rng), 8), q(num(rng), 8);
    CHECK(classify(p, q).label == classify(p.get_d(), q.get_d()).label);
  }
}

TEST_CASE("labels match the companion-matrix root pattern") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  for (int i = 0; i < 5000; ++i) {
    double p = coord(rng), q = coord(rng);
    auto label = classify(p, q).label;
    auto pattern = testing::observed_pattern(testing::companion_roots(p, q), testing::root_scale(p, q));
    CAPTURE(p);
    CAPTURE(q);
    CHECK(pattern == expected_pattern(label));
  }
  // Boundary curves generated parametrically.
  for (double t : {0.1, 0.5, 1.0, 1.7, 3.0}) {
    CHECK(classify(t * t, 2 * t).label == Region::C3);
    CHECK(classify(t * t, -2 * t).label == Region::C2);
    CHECK(testing::observed_pattern(testing::companion_roots(t * t, 2 * t), testing::root_scale(t * t, 2 * t)) ==
          expected_pattern(Region::C3));
    CHECK(classify(0.0, t).label == Region::C0);
    CHECK(testing::observed_pattern(testing::companion_roots(0.0, -t), 1.0) == expected_pattern(Region::C1));
  }
  CHECK(testing::observed_pattern(testing::companion_roots(0.0, 0.0), 1.0) == expected_pattern(Region::Origin));
}

TEST_CASE("points on q^2 = 4p classify as C3") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> t(0.01, 10.0);
  for (int i = 0; i < 1000; ++i) {
    double q = t(rng);
    CHECK(classify(q * q / 4.0, q, 1e-9).label == Region::C3);
  }
}

TEST_CASE("existence flags") {
  auto yes = existence_flags(WaveParams{1, 1, 0});
  CHECK(yes.existence_known);
  CHECK(!yes.nonexistence_known);
  auto no = existence_flags(WaveParams{-1, 1, 0});
  CHECK(no.nonexistence_known);
  CHECK(!no.existence_known);
  auto neither = existence_flags(WaveParams{1, 1, 3});
  CHECK(!neither.existence_known);
  CHECK(!neither.nonexistence_known);

  CHECK(existence_flag(1, 0, 1) == "exists");
  CHECK(existence_flag(1, -3, 1) == "unknown");
  CHECK(existence_flag(1, 0, -1) == "does-not-exist");
  CHECK(existence_flag(-1, 0, 1) == "unknown");
}

TEST_CASE("KdV soliton") {
  auto a = kdv_soliton(-1, 0.5);
  CHECK(a.amplitude == doctest::Approx(1.5));
  CHECK(a.speed == doctest::Approx(1.0));
  CHECK(a.profile(0) == doctest::Approx(1.5));
  auto b = kdv_soliton(1, 1);
  CHECK(b.amplitude == doctest::Approx(-6));
  CHECK(b.speed == doctest::Approx(-4));
  CHECK_THROWS_AS(kdv_soliton(0, 1), ContractViolation);
  CHECK_THROWS_AS(kdv_soliton(1, 0), ContractViolation);

  // Scaling k -> s k scales amplitude and speed by s^2.
  auto scaled = kdv_soliton(1, 3);
  CHECK(scaled.amplitude == doctest::Approx(9 * b.amplitude));
  CHECK(scaled.speed == doctest::Approx(9 * b.speed));

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> beta(-3.0, 3.0), k(0.1, 2.0);
  std::vector<double> z;
  for (int i = -200; i <= 200; ++i) z.push_back(i * 0.05);
  for (int i = 0; i < 100; ++i) {
    double bv = beta(rng);
    if (std::abs(bv) < 1e-3) continue;
    auto s = kdv_soliton(bv, k(rng));
    CHECK(soliton_residual(s, z) <= 1e-10 * s.amplitude * s.amplitude);
  }

  // Second derivative against a central difference.
  double h = 1e-4;
  for (double x : {-1.3, 0.0, 0.4, 2.5}) {
    double fd = (b.profile(x + h) - 2 * b.profile(x) + b.profile(x - h)) / (h * h);
    CHECK(b.second_derivative(x) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("scan") {
  auto rows = scan({-1, 1}, {-1, 1}, 3, 3, 1e-9);
  REQUIRE(rows.size() == 9);
  auto at = [&](double p, double q) {
    for (const auto& r : rows) {
      if (r.p == p && r.q == q) return r.region.label;
    }
    FAIL("missing grid point");
    return Region::Origin;
  };
  CHECK(at(-1, -1) == Region::Region3);
  CHECK(at(1, 1) == Region::Region1);
  CHECK(at(-1, 1) == Region::Region3);
  CHECK(at(1, -1) == Region::Region1);
  CHECK(at(0, 0) == Region::Origin);
  // p varies slowest.
  CHECK(rows[1].p == -1.0);
  CHECK(rows[1].q == 0.0);

  for (const auto& r : scan({-3, -0.5}, {-2, 2}, 4, 5)) CHECK(r.region.label == Region::Region3);
  CHECK_THROWS_AS(scan({0, 1}, {0, 1}, 1, 3), ContractViolation);
  CHECK_THROWS_AS(scan({0, 1}, {0, 1}, 3, 1), ContractViolation);

  std::ostringstream csv;
  write_csv(csv, rows);
  std::string text = csv.str();
  CHECK(text.rfind("p,q,label,eigen_structure,existence_flag\n", 0) == 0);
  CHECK(text.find("-1,-1,Region3,\"±λ, ±iω\",unknown\n") != std::string::npos);
  CHECK(text.find("1,0,Region1,\"±λ ± iω\",exists\n") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 10);
}

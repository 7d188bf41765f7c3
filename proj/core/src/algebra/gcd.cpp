#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "ostrovsky/algebra/polynomial.hpp"
#include "ostrovsky/errors.hpp"

// Multivariate gcd over Q.
//
// Strategy: strip monomial content, eliminate variables present in only one
// argument by taking contents, then bound the gcd degree in every remaining
// variable with univariate images modulo a large prime. The image degree is
// an upper bound on the true degree whenever both leading coefficients
// survive evaluation, so an all-zero bound proves the gcd is trivial. Only
// genuinely nontrivial cases reach the recursive primitive PRS.

namespace ostrovsky::algebra {
namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e) {
  std::uint64_t result = 1;
  while (e != 0) {
    if (e & 1u) result = mul_mod(result, base);
    base = mul_mod(base, base);
    e >>= 1u;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kPrime - 2); }

std::optional<std::uint64_t> reduce(const BigRational& c) {
  auto num = mpz_fdiv_ui(c.get_num_mpz_t(), kPrime);
  auto den = mpz_fdiv_ui(c.get_den_mpz_t(), kPrime);
  if (den == 0) return std::nullopt;
  return mul_mod(num, inv_mod(den));
}

using Image = std::vector<std::uint64_t>;

void trim(Image& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Univariate image of p in x with every other variable fixed by `point`.
std::optional<Image> univariate_image(const Polynomial& p, Variable x,
                                      const std::map<Variable, std::uint64_t>& point) {
  Image image(p.degree_in(x) + 1, 0);
  for (const auto& [m, c] : p.terms()) {
    auto value = reduce(c);
    if (!value) return std::nullopt;
    std::uint64_t v = *value;
    std::uint32_t e_x = 0;
    for (const auto& [var, e] : m.factors()) {
      if (var == x) {
        e_x = e;
      } else {
        v = mul_mod(v, pow_mod(point.at(var), e));
      }
    }
    image[e_x] = add_mod(image[e_x], v);
  }
  return image;
}

std::size_t image_gcd_degree(Image a, Image b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a <- a mod b
    std::uint64_t inv_lead = inv_mod(b.back());
    while (a.size() >= b.size()) {
      std::uint64_t factor = mul_mod(a.back(), inv_lead);
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        a[shift + i] = sub_mod(a[shift + i], mul_mod(factor, b[i]));
      }
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// Per-variable upper bounds on deg_x gcd(a, b). nullopt entries mean no bound
// could be certified (leading coefficient vanished at every trial point).
std::map<Variable, std::optional<std::size_t>> degree_bounds(const Polynomial& a, const Polynomial& b,
                                                             const std::vector<Variable>& vars) {
  std::mt19937_64 rng(0x5eed0fa11u);
  std::uniform_int_distribution<std::uint64_t> dist(2, kPrime - 1);
  std::map<Variable, std::optional<std::size_t>> bounds;
  for (Variable x : vars) bounds[x] = std::nullopt;
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::map<Variable, std::uint64_t> point;
    for (Variable v : vars) point[v] = dist(rng);
    bool all_done = true;
    for (Variable x : vars) {
      if (bounds[x]) continue;
      auto ia = univariate_image(a, x, point);
      auto ib = univariate_image(b, x, point);
      if (!ia || !ib || ia->back() == 0 || ib->back() == 0) {
        all_done = false;
        continue;
      }
      bounds[x] = image_gcd_degree(std::move(*ia), std::move(*ib));
    }
    if (all_done) break;
  }
  return bounds;
}

Monomial monomial_content(const Polynomial& p) {
  auto it = p.terms().begin();
  Monomial g = it->first;
  for (++it; it != p.terms().end() && !g.is_one(); ++it) g = Monomial::gcd(g, it->first);
  return g;
}

Polynomial divide_monomial(const Polynomial& p, const Monomial& m) {
  if (m.is_one()) return p;
  Polynomial result;
  for (const auto& [tm, c] : p.terms()) result += Polynomial::term(c, *tm.divide(m));
  return result;
}

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
  auto q = divide_exact(a, b);
  if (!q) throw ContractViolation("internal: expected exact division failed");
  return std::move(*q);
}

using Dense = std::vector<Polynomial>;

Dense to_dense(const Polynomial& p, Variable x) {
  Dense d(p.degree_in(x) + 1);
  for (auto& [e, c] : p.coefficients_in(x)) d[e] = std::move(c);
  return d;
}

Polynomial from_dense(const Dense& d, Variable x) {
  std::map<std::uint32_t, Polynomial> coeffs;
  for (std::size_t e = 0; e < d.size(); ++e) {
    if (!d[e].is_zero()) coeffs.emplace(static_cast<std::uint32_t>(e), d[e]);
  }
  return Polynomial::from_coefficients(x, coeffs);
}

void trim(Dense& d) {
  while (!d.empty() && d.back().is_zero()) d.pop_back();
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, Variable x) {
  Dense r = to_dense(a, x);
  const Dense divisor = to_dense(b, x);
  const Polynomial& lead_b = divisor.back();
  trim(r);
  while (r.size() >= divisor.size()) {
    Polynomial lead_r = r.back();
    std::size_t shift = r.size() - divisor.size();
    for (auto& c : r) c = c * lead_b;
    for (std::size_t i = 0; i < divisor.size(); ++i) r[shift + i] -= lead_r * divisor[i];
    trim(r);
  }
  return from_dense(r, x);
}

Polynomial primitive_in(const Polynomial& p, Variable x) {
  Polynomial c = content_in(p, x);
  return c.is_constant() ? primitive(p) : primitive(exact_quotient(p, c));
}

Polynomial prs_gcd(Polynomial a, Polynomial b, Variable x) {
  Polynomial ca = content_in(a, x);
  Polynomial cb = content_in(b, x);
  if (!ca.is_constant()) a = exact_quotient(a, ca);
  if (!cb.is_constant()) b = exact_quotient(b, cb);
  Polynomial c = gcd(ca, cb);
  a = primitive(a);
  b = primitive(b);
  if (a.degree_in(x) < b.degree_in(x)) std::swap(a, b);
  while (true) {
    Polynomial r = pseudo_remainder(a, b, x);
    if (r.is_zero()) break;
    if (!r.contains(x)) {
      b = Polynomial(BigRational(1));
      break;
    }
    a = std::move(b);
    b = primitive_in(r, x);
  }
  return c * b;
}

bool matches_degrees(const Polynomial& p, const std::vector<Variable>& vars,
                     const std::map<Variable, std::optional<std::size_t>>& bounds) {
  return std::all_of(vars.begin(), vars.end(), [&](Variable v) {
    const auto& bound = bounds.at(v);
    return bound && *bound == p.degree_in(v);
  });
}

}  // namespace

Polynomial content_in(const Polynomial& p, Variable v) {
  if (p.is_zero()) return p;
  auto coeffs = p.coefficients_in(v);
  std::vector<const Polynomial*> order;
  for (const auto& [e, c] : coeffs) order.push_back(&c);
  std::sort(order.begin(), order.end(),
            [](const Polynomial* x, const Polynomial* y) { return x->size() < y->size(); });
  Polynomial g = primitive(*order.front());
  for (std::size_t i = 1; i < order.size() && !g.is_constant(); ++i) g = gcd(g, *order[i]);
  return g.is_constant() ? Polynomial(BigRational(1)) : g;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return primitive(b);
  if (b.is_zero()) return primitive(a);
  if (a.is_constant() || b.is_constant()) return Polynomial(BigRational(1));
  if (a == b) return primitive(a);

  Monomial ma = monomial_content(a);
  Monomial mb = monomial_content(b);
  Monomial shared = Monomial::gcd(ma, mb);
  Polynomial pa = divide_monomial(a, ma);
  Polynomial pb = divide_monomial(b, mb);
  if (pa.is_constant() || pb.is_constant()) return Polynomial::term(1, shared);

  auto va = pa.variables();
  auto vb = pb.variables();
  std::vector<Variable> only_a, only_b, common;
  std::set_difference(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(only_a));
  std::set_difference(vb.begin(), vb.end(), va.begin(), va.end(), std::back_inserter(only_b));
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));

  if (!only_a.empty() || !only_b.empty()) {
    // The gcd cannot involve a variable missing from either side.
    for (Variable v : only_a) {
      pa = content_in(pa, v);
      if (pa.is_constant()) return Polynomial::term(1, shared);
    }
    for (Variable v : only_b) {
      pb = content_in(pb, v);
      if (pb.is_constant()) return Polynomial::term(1, shared);
    }
    return primitive(gcd(pa, pb).times(shared));
  }

  auto bounds = degree_bounds(pa, pb, common);
  bool trivial = std::all_of(common.begin(), common.end(),
                             [&](Variable v) { return bounds[v] && *bounds[v] == 0; });
  if (trivial) return Polynomial::term(1, shared);

  if (matches_degrees(pb, common, bounds)) {
    if (divide_exact(pa, pb)) return primitive(pb.times(shared));
  }
  if (matches_degrees(pa, common, bounds)) {
    if (divide_exact(pb, pa)) return primitive(pa.times(shared));
  }

  // Main variable: positive (or unknown) bound, cheapest pseudo-division.
  Variable main = common.front();
  std::uint32_t best = UINT32_MAX;
  for (Variable v : common) {
    if (bounds[v] && *bounds[v] == 0) continue;
    std::uint32_t cost = pa.degree_in(v) + pb.degree_in(v);
    if (cost < best) {
      best = cost;
      main = v;
    }
  }
  return primitive(prs_gcd(pa, pb, main).times(shared));
}

}  // namespace ostrovsky::algebra

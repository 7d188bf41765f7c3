#include "ostrovsky/algebra/laurent.hpp"

#include <string>
#include <vector>

#include "ostrovsky/errors.hpp"

namespace ostrovsky::algebra {

LaurentSeries::LaurentSeries(Variable var, int start_order, int depth,
                             std::map<int, RationalFunction> nonzero)
    : var_(var), start_order_(start_order), depth_(depth), coeffs_(std::move(nonzero)) {
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second.is_zero(); });
}

RationalFunction LaurentSeries::coefficient(int n) const {
  if (n > depth_) {
    throw ContractViolation("order " + std::to_string(n) + " exceeds computed depth " + std::to_string(depth_));
  }
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? RationalFunction() : it->second;
}

LaurentSeries LaurentSeries::truncated(int depth) const {
  if (depth < start_order_) throw EmptySeries("truncation below the first order of the series");
  if (depth > depth_) throw ContractViolation("truncation beyond the computed depth");
  std::map<int, RationalFunction> kept(coeffs_.begin(), coeffs_.upper_bound(depth));
  return LaurentSeries(var_, start_order_, depth, std::move(kept));
}

RationalFunction LaurentSeries::partial_sum() const {
  RationalFunction sum;
  RationalFunction x = RationalFunction::variable(var_);
  for (const auto& [n, c] : coeffs_) sum += c * x.pow(-n);
  return sum;
}

LaurentSeries laurent_expand(const RationalFunction& f, int depth, Variable var) {
  if (f.is_zero()) {
    if (depth < 0) throw EmptySeries("depth below the first order of the zero series");
    return LaurentSeries(var, 0, depth, {});
  }
  auto num = f.numerator().coefficients_in(var);
  auto den = f.denominator().coefficients_in(var);
  const int p = static_cast<int>(num.rbegin()->first);
  const int q = static_cast<int>(den.rbegin()->first);
  const int start = q - p;
  if (depth < start) {
    throw EmptySeries("depth " + std::to_string(depth) + " lies below the first order " + std::to_string(start));
  }
  auto coeff = [](const std::map<std::uint32_t, Polynomial>& c, int e) {
    if (e < 0) return Polynomial();
    auto it = c.find(static_cast<std::uint32_t>(e));
    return it == c.end() ? Polynomial() : it->second;
  };
  // With t = 1/var: f = var^{p-q} A(t)/B(t), A_k = num_{p-k}, B_k = den_{q-k}.
  // Series coefficients C_k = P_k / B_0^{k+1} with polynomial P_k:
  //   P_k = A_k B_0^k - sum_{j=1}^{k} B_j P_{k-j} B_0^{j-1}.
  const Polynomial lead = coeff(den, q);
  const int terms = depth - start + 1;
  std::vector<Polynomial> lead_powers{Polynomial(BigRational(1))};
  for (int k = 1; k <= terms; ++k) lead_powers.push_back(lead_powers.back() * lead);
  std::vector<Polynomial> partial;
  std::map<int, RationalFunction> out;
  for (int k = 0; k < terms; ++k) {
    Polynomial pk = coeff(num, p - k) * lead_powers[k];
    for (int j = 1; j <= k && j <= q; ++j) {
      Polynomial bj = coeff(den, q - j);
      if (bj.is_zero() || partial[k - j].is_zero()) continue;
      pk -= bj * partial[k - j] * lead_powers[j - 1];
    }
    if (!pk.is_zero()) out.emplace(start + k, RationalFunction(pk, lead_powers[k + 1]));
    partial.push_back(std::move(pk));
  }
  return LaurentSeries(var, start, depth, std::move(out));
}

bool resummation_matches(const RationalFunction& f, const LaurentSeries& series) {
  RationalFunction residual = series.partial_sum() * RationalFunction(f.denominator()) -
                              RationalFunction(f.numerator());
  if (residual.is_zero()) return true;
  const Variable var = series.variable();
  const int order = static_cast<int>(residual.numerator().degree_in(var)) -
                    static_cast<int>(residual.denominator().degree_in(var));
  const int bound = static_cast<int>(f.denominator().degree_in(var)) - series.depth() - 1;
  return order <= bound;
}

}  // namespace ostrovsky::algebra

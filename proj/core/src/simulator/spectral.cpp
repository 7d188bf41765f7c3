#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace ostrovsky::simulator::detail {
namespace {

// FFTW planning is not thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

Spectral::Spectral(int n, double L) : n_(n), L_(L), k_(static_cast<std::size_t>(n / 2 + 1)) {
  for (int j = 0; j <= n / 2; ++j) k_[static_cast<std::size_t>(j)] = 2.0 * std::numbers::pi * j / L;
  std::lock_guard lock(planner_mutex());
  real_ = fftw_alloc_real(static_cast<std::size_t>(n));
  spec_ = fftw_alloc_complex(static_cast<std::size_t>(modes()));
  r2c_ = fftw_plan_dft_r2c_1d(n, real_, spec_, FFTW_ESTIMATE);
  c2r_ = fftw_plan_dft_c2r_1d(n, spec_, real_, FFTW_ESTIMATE);
}

Spectral::~Spectral() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(r2c_);
  fftw_destroy_plan(c2r_);
  fftw_free(real_);
  fftw_free(spec_);
}

void Spectral::forward(std::span<const double> u, std::vector<cplx>& out) {
  std::copy(u.begin(), u.end(), real_);
  fftw_execute(r2c_);
  out.resize(static_cast<std::size_t>(modes()));
  for (int j = 0; j < modes(); ++j) out[static_cast<std::size_t>(j)] = cplx(spec_[j][0], spec_[j][1]);
}

void Spectral::backward(std::span<const cplx> in, std::vector<double>& out) {
  for (int j = 0; j < modes(); ++j) {
    spec_[j][0] = in[static_cast<std::size_t>(j)].real();
    spec_[j][1] = in[static_cast<std::size_t>(j)].imag();
  }
  fftw_execute(c2r_);
  out.resize(static_cast<std::size_t>(n_));
  double scale = 1.0 / n_;
  for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = real_[i] * scale;
}

}  // namespace ostrovsky::simulator::detail

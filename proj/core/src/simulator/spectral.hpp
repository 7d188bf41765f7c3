#pragma once

#include <fftw3.h>

#include <complex>
#include <span>
#include <vector>

namespace ostrovsky::simulator::detail {

using cplx = std::complex<double>;

/// Real-to-complex transforms on a periodic grid of n points and length L.
/// Coefficients are unnormalized on the way in; backward divides by n.
class Spectral {
 public:
  Spectral(int n, double L);
  ~Spectral();
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  int size() const noexcept { return n_; }
  int modes() const noexcept { return n_ / 2 + 1; }
  double length() const noexcept { return L_; }
  /// Angular wavenumber 2 pi j / L of mode j.
  double k(int j) const noexcept { return k_[static_cast<std::size_t>(j)]; }
  /// Nyquist is always dropped; with dealiasing only 3 j < n survives.
  bool retained(int j, bool dealias) const noexcept { return j < n_ / 2 && (!dealias || 3 * j < n_); }

  void forward(std::span<const double> u, std::vector<cplx>& out);
  void backward(std::span<const cplx> in, std::vector<double>& out);

 private:
  int n_;
  double L_;
  std::vector<double> k_;
  double* real_ = nullptr;
  fftw_complex* spec_ = nullptr;
  fftw_plan r2c_ = nullptr;
  fftw_plan c2r_ = nullptr;
};

}  // namespace ostrovsky::simulator::detail

/**
 * @file fourier_core.hpp
 * @brief Uniform grids on the one-dimensional torus, sampled fields and
 *        their Fourier coefficients.
 *
 * Conventions used throughout the library:
 *  - grid points are x_i = i/N, i = 0..N-1;
 *  - the forward transform carries the 1/N factor, so coefficient k is the
 *    Fourier coefficient f^(k) and coefficient 0 is the mean;
 *  - the duality pairing is bilinear (no conjugation), norms conjugate.
 */

#ifndef PARAPROD_FOURIER_CORE_HPP_INCLUDED_
#define PARAPROD_FOURIER_CORE_HPP_INCLUDED_

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace paraprod {

using cplx = std::complex<double>;

/// Raised when an operation's precondition on its arguments fails.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Uniform sampling of [0, 1) with a power-of-two number of points (>= 16).
class TorusGrid {
 public:
  explicit TorusGrid(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  double spacing() const noexcept { return 1.0 / static_cast<double>(size_); }
  double point(std::size_t i) const noexcept {
    return static_cast<double>(i) / static_cast<double>(size_);
  }

  /// Largest frequency magnitude that is represented without aliasing
  /// (|k| < N/2).
  long nyquist() const noexcept { return static_cast<long>(size_ / 2); }

  /// Storage slot of frequency k (any integer, reduced mod N).
  std::size_t slot(long k) const noexcept;

  /// Signed frequency in {-N/2, ..., N/2 - 1} stored at a slot.
  long frequency(std::size_t slot) const noexcept;

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;

 private:
  std::size_t size_;
};

/// Complex samples of a function on a TorusGrid.
class TorusField {
 public:
  explicit TorusField(TorusGrid grid);  // zero field
  TorusField(TorusGrid grid, std::vector<cplx> values);

  /// Samples fn(x_i).
  template <class Fn>
  static TorusField sample(TorusGrid grid, Fn&& fn) {
    std::vector<cplx> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = cplx(fn(grid.point(i)));
    return TorusField(grid, std::move(v));
  }

  static TorusField constant(TorusGrid grid, cplx c);

  const TorusGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const cplx> values() const noexcept { return values_; }
  std::span<cplx> values() noexcept { return values_; }
  const cplx& operator[](std::size_t i) const { return values_[i]; }
  cplx& operator[](std::size_t i) { return values_[i]; }

  cplx mean() const;
  double max_abs() const;

  TorusField& operator+=(const TorusField& other);
  TorusField& operator-=(const TorusField& other);
  TorusField& operator*=(cplx c);

  /// Pointwise product.
  friend TorusField operator*(const TorusField& a, const TorusField& b);
  friend TorusField operator+(TorusField a, const TorusField& b) { return a += b; }
  friend TorusField operator-(TorusField a, const TorusField& b) { return a -= b; }
  friend TorusField operator*(cplx c, TorusField a) { return a *= c; }

 private:
  TorusGrid grid_;
  std::vector<cplx> values_;
};

/// Fourier coefficients of a TorusField, stored in FFT slot order.
class Spectrum {
 public:
  explicit Spectrum(TorusGrid grid);  // zero spectrum
  Spectrum(TorusGrid grid, std::vector<cplx> coeffs);

  static Spectrum delta(TorusGrid grid, long k);

  const TorusGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Coefficient at frequency k (reduced mod N).
  const cplx& at(long k) const { return coeffs_[grid_.slot(k)]; }
  cplx& at(long k) { return coeffs_[grid_.slot(k)]; }

  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  std::span<cplx> coeffs() noexcept { return coeffs_; }

  /// Sum of |c_k|^2.
  double energy() const;

 private:
  TorusGrid grid_;
  std::vector<cplx> coeffs_;
};

Spectrum forward_dft(const TorusField& f);
TorusField inverse_dft(const Spectrum& s);

/// Riemann-sum L^p norm, ((1/N) sum |f_i|^p)^{1/p}; p = infinity gives max |f_i|.
double lp_norm(const TorusField& f, double p);

/// Bilinear duality bracket (1/N) sum f_i h_i.
cplx pairing(const TorusField& f, const TorusField& h);

/// (sum_k (1 + 4 pi^2 k^2)^s |f^(k)|^2)^{1/2}.
double sobolev_norm(const TorusField& f, double s);

/// Samples of e_n(x) = exp(2 pi i n x); requires |n| < N/2.
TorusField character(const TorusGrid& grid, long n);

/// Multiplies each coefficient by multiplier(k) and transforms back.
template <class Multiplier>
TorusField apply_multiplier(const TorusField& f, Multiplier&& multiplier) {
  Spectrum s = forward_dft(f);
  const TorusGrid& g = s.grid();
  auto c = s.coeffs();
  for (std::size_t slot = 0; slot < c.size(); ++slot) c[slot] *= multiplier(g.frequency(slot));
  return inverse_dft(s);
}

/// Keeps only frequencies with lo <= |k| <= hi.
TorusField band_limit(const TorusField& f, long lo, long hi);

/// Largest |k| carrying a coefficient with magnitude above tol (0 for constants).
long bandwidth(const TorusField& f, double tol = 1e-13);

void require_same_grid(const TorusField& a, const TorusField& b, const char* where);

}  // namespace paraprod

#endif  // PARAPROD_FOURIER_CORE_HPP_INCLUDED_

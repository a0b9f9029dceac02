#include "paraprod/fourier_core.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace paraprod {

namespace {

// FFTW planning is not thread-safe; execution on new arrays is.
class PlanCache {
 public:
  struct Plans {
    fftw_plan forward;
    fftw_plan backward;
  };

  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  const Plans& get(std::size_t n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    auto* in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    const int ni = static_cast<int>(n);
    Plans p{fftw_plan_dft_1d(ni, in, out, FFTW_FORWARD, FFTW_ESTIMATE),
            fftw_plan_dft_1d(ni, in, out, FFTW_BACKWARD, FFTW_ESTIMATE)};
    fftw_free(in);
    fftw_free(out);
    return plans_.emplace(n, p).first->second;
  }

  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, Plans> plans_;
};

struct FftwDeleter {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwDeleter>;

FftwBuffer make_buffer(std::size_t n) {
  return FftwBuffer(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
}

// Runs an unnormalized transform from src into a fresh vector.
std::vector<cplx> run(fftw_plan plan, std::span<const cplx> src) {
  const std::size_t n = src.size();
  FftwBuffer in = make_buffer(n);
  FftwBuffer out = make_buffer(n);
  for (std::size_t i = 0; i < n; ++i) {
    in[i][0] = src[i].real();
    in[i][1] = src[i].imag();
  }
  fftw_execute_dft(plan, in.get(), out.get());
  std::vector<cplx> result(n);
  for (std::size_t i = 0; i < n; ++i) result[i] = cplx(out[i][0], out[i][1]);
  return result;
}

// exp(2 pi i m / n) with exact values on the axes.
cplx unit_root(std::size_t m, std::size_t n) {
  m %= n;
  if ((4 * m) % n == 0) {
    switch ((4 * m) / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
  return {std::cos(theta), std::sin(theta)};
}

}  // namespace

TorusGrid::TorusGrid(std::size_t size) : size_(size) {
  if (size < 16 || (size & (size - 1)) != 0)
    throw DomainError("grid size must be a power of two >= 16, got " + std::to_string(size));
}

std::size_t TorusGrid::slot(long k) const noexcept {
  const long n = static_cast<long>(size_);
  long r = k % n;
  if (r < 0) r += n;
  return static_cast<std::size_t>(r);
}

long TorusGrid::frequency(std::size_t slot) const noexcept {
  const long s = static_cast<long>(slot);
  const long n = static_cast<long>(size_);
  return s < n / 2 ? s : s - n;
}

TorusField::TorusField(TorusGrid grid) : grid_(grid), values_(grid.size()) {}

TorusField::TorusField(TorusGrid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw DomainError("field has " + std::to_string(values_.size()) + " samples, grid has " +
                      std::to_string(grid_.size()));
}

TorusField TorusField::constant(TorusGrid grid, cplx c) {
  return TorusField(grid, std::vector<cplx>(grid.size(), c));
}

cplx TorusField::mean() const {
  cplx sum = 0.0;
  for (const cplx& v : values_) sum += v;
  return sum / static_cast<double>(values_.size());
}

double TorusField::max_abs() const {
  double m = 0.0;
  for (const cplx& v : values_) m = std::max(m, std::abs(v));
  return m;
}

TorusField& TorusField::operator+=(const TorusField& other) {
  require_same_grid(*this, other, "field addition");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

TorusField& TorusField::operator-=(const TorusField& other) {
  require_same_grid(*this, other, "field subtraction");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

TorusField& TorusField::operator*=(cplx c) {
  for (cplx& v : values_) v *= c;
  return *this;
}

TorusField operator*(const TorusField& a, const TorusField& b) {
  require_same_grid(a, b, "pointwise product");
  TorusField out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

Spectrum::Spectrum(TorusGrid grid) : grid_(grid), coeffs_(grid.size()) {}

Spectrum::Spectrum(TorusGrid grid, std::vector<cplx> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size()) throw DomainError("spectrum length does not match grid");
}

Spectrum Spectrum::delta(TorusGrid grid, long k) {
  Spectrum s(grid);
  s.at(k) = 1.0;
  return s;
}

double Spectrum::energy() const {
  double e = 0.0;
  for (const cplx& c : coeffs_) e += std::norm(c);
  return e;
}

Spectrum forward_dft(const TorusField& f) {
  const auto& plans = PlanCache::instance().get(f.size());
  std::vector<cplx> c = run(plans.forward, f.values());
  const double scale = 1.0 / static_cast<double>(f.size());
  for (cplx& v : c) v *= scale;
  return Spectrum(f.grid(), std::move(c));
}

TorusField inverse_dft(const Spectrum& s) {
  const auto& plans = PlanCache::instance().get(s.size());
  return TorusField(s.grid(), run(plans.backward, s.coeffs()));
}

double lp_norm(const TorusField& f, double p) {
  if (std::isinf(p) && p > 0) return f.max_abs();
  if (!(p >= 1.0)) throw DomainError("lp_norm requires p >= 1");
  double sum = 0.0;
  if (p == 2.0) {
    for (const cplx& v : f.values()) sum += std::norm(v);
    return std::sqrt(sum / static_cast<double>(f.size()));
  }
  for (const cplx& v : f.values()) sum += std::pow(std::abs(v), p);
  return std::pow(sum / static_cast<double>(f.size()), 1.0 / p);
}

cplx pairing(const TorusField& f, const TorusField& h) {
  require_same_grid(f, h, "pairing");
  cplx sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * h[i];
  return sum / static_cast<double>(f.size());
}

double sobolev_norm(const TorusField& f, double s) {
  if (!(s >= 0.0)) throw DomainError("sobolev_norm requires s >= 0");
  const Spectrum spec = forward_dft(f);
  const auto c = spec.coeffs();
  double sum = 0.0;
  for (std::size_t slot = 0; slot < c.size(); ++slot) {
    const double k = static_cast<double>(spec.grid().frequency(slot));
    const double w = 1.0 + 4.0 * std::numbers::pi * std::numbers::pi * k * k;
    sum += std::pow(w, s) * std::norm(c[slot]);
  }
  return std::sqrt(sum);
}

TorusField character(const TorusGrid& grid, long n) {
  if (std::abs(n) >= grid.nyquist())
    throw DomainError("character e_" + std::to_string(n) + " aliases on a grid of size " +
                      std::to_string(grid.size()));
  TorusField f(grid);
  const std::size_t step = grid.slot(n);
  for (std::size_t i = 0; i < grid.size(); ++i) f[i] = unit_root(step * i, grid.size());
  return f;
}

TorusField band_limit(const TorusField& f, long lo, long hi) {
  return apply_multiplier(f, [lo, hi](long k) {
    const long a = std::abs(k);
    return (a >= lo && a <= hi) ? 1.0 : 0.0;
  });
}

long bandwidth(const TorusField& f, double tol) {
  const Spectrum s = forward_dft(f);
  long widest = 0;
  const auto c = s.coeffs();
  for (std::size_t slot = 0; slot < c.size(); ++slot)
    if (std::abs(c[slot]) > tol) widest = std::max(widest, std::abs(s.grid().frequency(slot)));
  return widest;
}

void require_same_grid(const TorusField& a, const TorusField& b, const char* where) {
  if (!(a.grid() == b.grid()))
    throw DomainError(std::string(where) + ": grid mismatch (" + std::to_string(a.size()) +
                      " vs " + std::to_string(b.size()) + ")");
}

}  // namespace paraprod

/**
 * @file random.hpp
 * @brief Seeded generators for test inputs. Only the raw 64-bit output of
 *        std::mt19937_64 is used, so streams are identical across standard
 *        libraries.
 */

#ifndef PARAPROD_RANDOM_HPP_INCLUDED_
#define PARAPROD_RANDOM_HPP_INCLUDED_

#include <cstdint>
#include <random>

#include "paraprod/fourier_core.hpp"

namespace paraprod {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }

  double sign() { return (engine_() >> 63) != 0 ? 1.0 : -1.0; }

  cplx complex_symmetric() {
    const double re = symmetric();
    return {re, symmetric()};
  }

 private:
  std::mt19937_64 engine_;
};

/// Random field with Fourier support in 1 <= |k| <= kmax (plus a random mean
/// unless zero_mean). Real-valued fields get conjugate-symmetric coefficients.
TorusField random_band_limited(const TorusGrid& grid, long kmax, Rng& rng, bool real,
                               bool zero_mean = true);

}  // namespace paraprod

#endif  // PARAPROD_RANDOM_HPP_INCLUDED_

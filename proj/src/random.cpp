#include "paraprod/random.hpp"

#include <cmath>

namespace paraprod {

TorusField random_band_limited(const TorusGrid& grid, long kmax, Rng& rng, bool real,
                               bool zero_mean) {
  if (kmax < 0 || kmax >= grid.nyquist())
    throw DomainError("random_band_limited: kmax must lie in [0, N/2)");
  Spectrum s(grid);
  if (!zero_mean) s.at(0) = real ? cplx(rng.symmetric()) : rng.complex_symmetric();
  for (long k = 1; k <= kmax; ++k) {
    const cplx c = rng.complex_symmetric();
    s.at(k) = c;
    s.at(-k) = real ? std::conj(c) : rng.complex_symmetric();
  }
  TorusField f = inverse_dft(s);
  if (real)
    for (cplx& v : f.values()) v = cplx(v.real(), 0.0);
  return f;
}

}  // namespace paraprod

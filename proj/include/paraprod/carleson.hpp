/**
 * @file carleson.hpp
 * @brief The discrete measure |Q_j b(x_i)|^2 (1/N) ln2 over (scale, point)
 *        pairs, tent masses over dyadic intervals and Carleson constants.
 *
 * A dyadic block of scales carries dt/t mass ln2. The tent over a dyadic
 * interval Q of side 2^{-l} collects the points of Q at scales 2^{-j} <= 2^{-l}.
 * On the torus there are no far-away intervals, so vanishing is measured in
 * the small-side limit only.
 */

#ifndef PARAPROD_CARLESON_HPP_INCLUDED_
#define PARAPROD_CARLESON_HPP_INCLUDED_

#include <cmath>
#include <vector>

#include "paraprod/fourier_core.hpp"
#include "paraprod/littlewood_paley.hpp"

namespace paraprod {

struct DyadicInterval {
  int level = 0;
  long index = 0;  ///< in [0, 2^level)

  double side() const { return std::ldexp(1.0, -level); }
  bool contains(const DyadicInterval& other) const;
};

class CarlesonField {
 public:
  CarlesonField(LPFamily family, std::vector<std::vector<double>> density);

  const TorusGrid& grid() const noexcept { return family_.grid(); }
  const LPFamily& family() const noexcept { return family_; }

  /// |Q_j b(x_i)|^2.
  double density(int j, std::size_t i) const {
    return density_[static_cast<std::size_t>(j - family_.j_min())][i];
  }
  const std::vector<double>& density_at_scale(int j) const {
    return density_[static_cast<std::size_t>(j - family_.j_min())];
  }

  /// dt/t mass of one dyadic scale block.
  static double scale_weight() { return std::log(2.0); }

  /// Mass of one (scale, point) cell per unit density: ln2 / N.
  double cell_weight() const { return scale_weight() * grid().spacing(); }

  double total_mass() const;

  /// Deepest level whose tents still contain a scale and a grid point.
  int max_resolvable_level() const;

 private:
  LPFamily family_;
  std::vector<std::vector<double>> density_;
};

CarlesonField build_carleson_field(const LPFamily& fam, const TorusField& b);

double tent_mass(const CarlesonField& cf, const DyadicInterval& q);

/// max over dyadic intervals with level <= max_level of tent_mass / side.
double carleson_constant(const CarlesonField& cf, int max_level);

struct ProfileRow {
  int level;
  double value;  ///< sup over intervals at levels >= level (up to max_level)
};

std::vector<ProfileRow> vanishing_profile(const CarlesonField& cf, int max_level);

/// Last profile value over the first; 0 when the profile is identically 0.
double profile_tail_ratio(const std::vector<ProfileRow>& profile);

/// (sum_{j,i} |P_j f(x_i)|^p |Q_j b(x_i)|^2 ln2/N)^{1/p}, 1 < p < inf.
double lp_norm_under_measure(const CarlesonField& cf, const LPFamily& fam, const TorusField& f,
                             double p);

}  // namespace paraprod

#endif  // PARAPROD_CARLESON_HPP_INCLUDED_

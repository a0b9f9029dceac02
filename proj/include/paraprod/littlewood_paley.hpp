/**
 * @file littlewood_paley.hpp
 * @brief Dyadic Littlewood-Paley multipliers P_j, Q_j at scales t_j = 2^{-j}.
 *
 * All profiles are compactly supported on the Fourier side. They are built
 * from one smooth cutoff chi (chi = 1 on [0,1], chi = 0 on [2,inf)):
 *
 *   psi_j(k)^2 = chi(|k| 2^{-j}) - chi(|k| 2^{1-j})      j_min < j <= j_max
 *   psi_j(k)^2 = chi(|k| 2^{-j})  for k != 0, 0 at k = 0  j = j_min
 *   phi_j(k)   = chi(|k| 2^{1-j})
 *
 * so sum_j psi_j(k)^2 telescopes to chi(|k| 2^{-j_max}) = 1 for every
 * 1 <= |k| <= 2^{j_max}, which is the resolved band of the family.
 * The coarsest band-pass absorbs all nonzero frequencies below 2^{j_min};
 * the continuous scale integral has no discrete counterpart there.
 */

#ifndef PARAPROD_LITTLEWOOD_PALEY_HPP_INCLUDED_
#define PARAPROD_LITTLEWOOD_PALEY_HPP_INCLUDED_

#include <functional>
#include <string>
#include <vector>

#include "paraprod/fourier_core.hpp"

namespace paraprod {

/// Smooth monotone cutoff on [0, inf): 1 on [0,1], 0 on [2,inf).
class Cutoff {
 public:
  using Bridge = std::function<double(double)>;

  /// Canonical bridge: h(2-r) / (h(2-r) + h(r-1)), h(x) = exp(-1/x).
  static Cutoff standard();

  /// Custom bridge on the open interval (1,2); must decrease from 1 to 0.
  Cutoff(std::string name, Bridge bridge);

  double operator()(double r) const;
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
  Bridge bridge_;
};

class LPFamily {
 public:
  /// Requires 0 <= j_min < j_max and 2^{j_max} <= N/4.
  LPFamily(TorusGrid grid, int j_min, int j_max, const Cutoff& cutoff = Cutoff::standard());

  const TorusGrid& grid() const noexcept { return grid_; }
  int j_min() const noexcept { return j_min_; }
  int j_max() const noexcept { return j_max_; }
  int scale_count() const noexcept { return j_max_ - j_min_ + 1; }
  const std::string& cutoff_name() const noexcept { return cutoff_name_; }

  /// Largest frequency of the resolved band 1 <= |k| <= 2^{j_max}.
  long resolved_max() const noexcept { return 1L << j_max_; }

  /// phi_j(k) = 1 for |k| <= low_pass_cut(j).
  long low_pass_cut(int j) const noexcept { return j == 0 ? 0L : 1L << (j - 1); }

  double psi(int j, long k) const { return psi_[index(j)][grid_.slot(k)]; }
  double phi(int j, long k) const { return phi_[index(j)][grid_.slot(k)]; }

  /// Profiles in FFT slot order.
  const std::vector<double>& psi_profile(int j) const { return psi_[index(j)]; }
  const std::vector<double>& phi_profile(int j) const { return phi_[index(j)]; }

  /// max over the resolved band of |sum_j psi_j(k)^2 - 1|.
  double partition_residual() const;

 private:
  std::size_t index(int j) const;

  TorusGrid grid_;
  int j_min_;
  int j_max_;
  std::string cutoff_name_;
  std::vector<std::vector<double>> psi_;
  std::vector<std::vector<double>> phi_;
};

/// Q_j f = psi_j * f.
TorusField apply_Q(const LPFamily& fam, int j, const TorusField& f);

/// P_j f = phi_j * f.
TorusField apply_P(const LPFamily& fam, int j, const TorusField& f);

/// Multiplies a precomputed spectrum by a profile and transforms back.
TorusField apply_profile(const Spectrum& s, const std::vector<double>& profile);

struct Reconstruction {
  TorusField field;          ///< sum_j Q_j Q_j f
  double unresolved_energy;  ///< sum of |f^(k)|^2 over k != 0 outside the resolved band
};

/// Discrete Calderon reproducing formula.
Reconstruction calderon_reconstruct(const LPFamily& fam, const TorusField& f);

/// Pointwise (sum_j |Q_j h|^2)^{1/2}.
TorusField square_function(const LPFamily& fam, const TorusField& h);

}  // namespace paraprod

#endif  // PARAPROD_LITTLEWOOD_PALEY_HPP_INCLUDED_

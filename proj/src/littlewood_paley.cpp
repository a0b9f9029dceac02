#include "paraprod/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>

namespace paraprod {

namespace {

double smooth_step_kernel(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

Cutoff Cutoff::standard() {
  return Cutoff("exp-bridge", [](double r) {
    const double a = smooth_step_kernel(2.0 - r);
    const double b = smooth_step_kernel(r - 1.0);
    return a / (a + b);
  });
}

Cutoff::Cutoff(std::string name, Bridge bridge) : name_(std::move(name)), bridge_(std::move(bridge)) {
  if (!bridge_) throw DomainError("cutoff bridge must be callable");
}

double Cutoff::operator()(double r) const {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  return std::clamp(bridge_(r), 0.0, 1.0);
}

LPFamily::LPFamily(TorusGrid grid, int j_min, int j_max, const Cutoff& cutoff)
    : grid_(grid), j_min_(j_min), j_max_(j_max), cutoff_name_(cutoff.name()) {
  if (j_min < 0 || j_min >= j_max)
    throw DomainError("scale range requires 0 <= jmin < jmax, got " + std::to_string(j_min) +
                      ".." + std::to_string(j_max));
  if (j_max >= 62 || (std::size_t{1} << j_max) > grid.size() / 4)
    throw DomainError("jmax=" + std::to_string(j_max) + " needs 2^jmax <= N/4 (N=" +
                      std::to_string(grid.size()) + ")");

  const std::size_t n = grid.size();
  psi_.assign(static_cast<std::size_t>(scale_count()), std::vector<double>(n, 0.0));
  phi_.assign(static_cast<std::size_t>(scale_count()), std::vector<double>(n, 0.0));
  for (int j = j_min; j <= j_max; ++j) {
    const double fine = std::ldexp(1.0, -j);
    const double coarse = std::ldexp(1.0, 1 - j);
    auto& psi = psi_[index(j)];
    auto& phi = phi_[index(j)];
    for (std::size_t slot = 0; slot < n; ++slot) {
      const double a = static_cast<double>(std::abs(grid.frequency(slot)));
      double sq = 0.0;
      if (j == j_min)
        sq = a == 0.0 ? 0.0 : cutoff(a * fine);
      else
        sq = cutoff(a * fine) - cutoff(a * coarse);
      psi[slot] = std::sqrt(std::max(sq, 0.0));
      phi[slot] = cutoff(a * coarse);
    }
  }
}

std::size_t LPFamily::index(int j) const {
  if (j < j_min_ || j > j_max_)
    throw DomainError("scale " + std::to_string(j) + " outside [" + std::to_string(j_min_) + ", " +
                      std::to_string(j_max_) + "]");
  return static_cast<std::size_t>(j - j_min_);
}

double LPFamily::partition_residual() const {
  double worst = 0.0;
  for (long k = 1; k <= resolved_max(); ++k) {
    for (long kk : {k, -k}) {
      double sum = 0.0;
      for (int j = j_min_; j <= j_max_; ++j) sum += psi(j, kk) * psi(j, kk);
      worst = std::max(worst, std::abs(sum - 1.0));
    }
  }
  return worst;
}

TorusField apply_profile(const Spectrum& s, const std::vector<double>& profile) {
  Spectrum out = s;
  auto c = out.coeffs();
  for (std::size_t slot = 0; slot < c.size(); ++slot) c[slot] *= profile[slot];
  return inverse_dft(out);
}

TorusField apply_Q(const LPFamily& fam, int j, const TorusField& f) {
  if (!(f.grid() == fam.grid())) throw DomainError("apply_Q: field grid differs from family grid");
  return apply_profile(forward_dft(f), fam.psi_profile(j));
}

TorusField apply_P(const LPFamily& fam, int j, const TorusField& f) {
  if (!(f.grid() == fam.grid())) throw DomainError("apply_P: field grid differs from family grid");
  return apply_profile(forward_dft(f), fam.phi_profile(j));
}

Reconstruction calderon_reconstruct(const LPFamily& fam, const TorusField& f) {
  if (!(f.grid() == fam.grid()))
    throw DomainError("calderon_reconstruct: field grid differs from family grid");
  const Spectrum s = forward_dft(f);
  TorusField sum(fam.grid());
  for (int j = fam.j_min(); j <= fam.j_max(); ++j) {
    const Spectrum qf = forward_dft(apply_profile(s, fam.psi_profile(j)));
    sum += apply_profile(qf, fam.psi_profile(j));
  }
  double unresolved = 0.0;
  const auto c = s.coeffs();
  for (std::size_t slot = 0; slot < c.size(); ++slot) {
    const long k = std::abs(fam.grid().frequency(slot));
    if (k > fam.resolved_max()) unresolved += std::norm(c[slot]);
  }
  return {std::move(sum), unresolved};
}

TorusField square_function(const LPFamily& fam, const TorusField& h) {
  if (!(h.grid() == fam.grid()))
    throw DomainError("square_function: field grid differs from family grid");
  const Spectrum s = forward_dft(h);
  std::vector<double> acc(h.size(), 0.0);
  for (int j = fam.j_min(); j <= fam.j_max(); ++j) {
    const TorusField q = apply_profile(s, fam.psi_profile(j));
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += std::norm(q[i]);
  }
  TorusField out(h.grid());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = std::sqrt(acc[i]);
  return out;
}

}  // namespace paraprod

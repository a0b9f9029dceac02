#include "paraprod/carleson.hpp"

#include <algorithm>
#include <bit>

namespace paraprod {

bool DyadicInterval::contains(const DyadicInterval& other) const {
  if (other.level < level) return false;
  return (other.index >> (other.level - level)) == index;
}

CarlesonField::CarlesonField(LPFamily family, std::vector<std::vector<double>> density)
    : family_(std::move(family)), density_(std::move(density)) {
  if (density_.size() != static_cast<std::size_t>(family_.scale_count()))
    throw DomainError("Carleson density needs one row per scale");
  for (const auto& row : density_) {
    if (row.size() != grid().size()) throw DomainError("Carleson density row length != grid size");
    for (double d : row)
      if (!(d >= 0.0)) throw DomainError("Carleson density must be nonnegative");
  }
}

double CarlesonField::total_mass() const {
  double sum = 0.0;
  for (const auto& row : density_)
    for (double d : row) sum += d;
  return sum * cell_weight();
}

int CarlesonField::max_resolvable_level() const {
  const int grid_levels = std::countr_zero(grid().size());
  return std::min(family_.j_max(), grid_levels);
}

CarlesonField build_carleson_field(const LPFamily& fam, const TorusField& b) {
  if (!(b.grid() == fam.grid())) throw DomainError("build_carleson_field: grid mismatch");
  const Spectrum s = forward_dft(b);
  std::vector<std::vector<double>> density;
  density.reserve(static_cast<std::size_t>(fam.scale_count()));
  for (int j = fam.j_min(); j <= fam.j_max(); ++j) {
    const TorusField q = apply_profile(s, fam.psi_profile(j));
    std::vector<double> row(q.size());
    for (std::size_t i = 0; i < row.size(); ++i) row[i] = std::norm(q[i]);
    density.push_back(std::move(row));
  }
  return CarlesonField(fam, std::move(density));
}

double tent_mass(const CarlesonField& cf, const DyadicInterval& q) {
  if (q.level < 0 || q.level > cf.max_resolvable_level())
    throw DomainError("dyadic level " + std::to_string(q.level) + " is deeper than the family resolves (max " +
                      std::to_string(cf.max_resolvable_level()) + ")");
  if (q.index < 0 || q.index >= (1L << q.level)) throw DomainError("dyadic index out of range");
  const std::size_t width = cf.grid().size() >> q.level;
  const std::size_t begin = static_cast<std::size_t>(q.index) * width;
  double sum = 0.0;
  // scale 2^{-j} fits under the tent iff j >= level
  for (int j = std::max(q.level, cf.family().j_min()); j <= cf.family().j_max(); ++j) {
    const auto& row = cf.density_at_scale(j);
    for (std::size_t i = begin; i < begin + width; ++i) sum += row[i];
  }
  return sum * cf.cell_weight();
}

namespace {

double level_sup(const CarlesonField& cf, int level) {
  double best = 0.0;
  for (long idx = 0; idx < (1L << level); ++idx) {
    const DyadicInterval q{level, idx};
    best = std::max(best, tent_mass(cf, q) / q.side());
  }
  return best;
}

}  // namespace

double carleson_constant(const CarlesonField& cf, int max_level) {
  if (max_level < 0 || max_level > cf.max_resolvable_level())
    throw DomainError("carleson_constant: max_level out of range");
  double best = 0.0;
  for (int level = 0; level <= max_level; ++level) best = std::max(best, level_sup(cf, level));
  return best;
}

std::vector<ProfileRow> vanishing_profile(const CarlesonField& cf, int max_level) {
  if (max_level < 0 || max_level > cf.max_resolvable_level())
    throw DomainError("vanishing_profile: max_level out of range");
  std::vector<ProfileRow> rows(static_cast<std::size_t>(max_level + 1));
  double running = 0.0;
  for (int level = max_level; level >= 0; --level) {
    running = std::max(running, level_sup(cf, level));
    rows[static_cast<std::size_t>(level)] = {level, running};
  }
  return rows;
}

double profile_tail_ratio(const std::vector<ProfileRow>& profile) {
  if (profile.empty() || profile.front().value == 0.0) return 0.0;
  return profile.back().value / profile.front().value;
}

double lp_norm_under_measure(const CarlesonField& cf, const LPFamily& fam, const TorusField& f,
                             double p) {
  if (!(p > 1.0) || std::isinf(p)) throw DomainError("lp_norm_under_measure requires 1 < p < inf");
  if (!(fam.grid() == cf.grid()) || fam.j_min() != cf.family().j_min() ||
      fam.j_max() != cf.family().j_max())
    throw DomainError("lp_norm_under_measure: family does not match the measure's family");
  if (!(f.grid() == cf.grid())) throw DomainError("lp_norm_under_measure: grid mismatch");
  const Spectrum s = forward_dft(f);
  double sum = 0.0;
  for (int j = fam.j_min(); j <= fam.j_max(); ++j) {
    const TorusField pf = apply_profile(s, fam.phi_profile(j));
    const auto& row = cf.density_at_scale(j);
    for (std::size_t i = 0; i < row.size(); ++i) sum += std::pow(std::abs(pf[i]), p) * row[i];
  }
  return std::pow(sum * cf.cell_weight(), 1.0 / p);
}

}  // namespace paraprod

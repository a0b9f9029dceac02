#include "paraprod/paraproduct.hpp"

#include <algorithm>
#include <cmath>

namespace paraprod {

namespace {

void check_grid(const ParaproductContext& ctx, const TorusField& f, const char* where) {
  if (!(f.grid() == ctx.grid()))
    throw DomainError(std::string(where) + ": grid mismatch (" + std::to_string(f.size()) +
                      " vs " + std::to_string(ctx.grid().size()) + ")");
}

// sum_j outer_j( (Q_j b) (inner1_j u) (inner2_j v) ), accumulated spectrally.
template <class Outer, class Inner1, class Inner2>
TorusField scale_sum(const ParaproductContext& ctx, const TorusField& u, const TorusField& v,
                     Outer outer, Inner1 inner1, Inner2 inner2) {
  const LPFamily& fam = ctx.family();
  const Spectrum su = forward_dft(u);
  const Spectrum sv = forward_dft(v);
  Spectrum acc(ctx.grid());
  for (int j = fam.j_min(); j <= fam.j_max(); ++j) {
    const TorusField a = apply_profile(su, inner1(j));
    const TorusField c = apply_profile(sv, inner2(j));
    const TorusField& bj = ctx.symbol_piece(j);
    TorusField prod(ctx.grid());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = bj[i] * (a[i] * c[i]);
    const Spectrum sp = forward_dft(prod);
    const std::vector<double>& m = outer(j);
    auto dst = acc.coeffs();
    const auto src = sp.coeffs();
    for (std::size_t s = 0; s < dst.size(); ++s) dst[s] += m[s] * src[s];
  }
  return inverse_dft(acc);
}

}  // namespace

ParaproductContext::ParaproductContext(LPFamily family, const TorusField& symbol)
    : family_(std::move(family)), symbol_(symbol.grid()) {
  if (!(symbol.grid() == family_.grid()))
    throw DomainError("paraproduct symbol grid differs from family grid");
  Spectrum s = forward_dft(symbol);
  const long band = family_.resolved_max();
  auto c = s.coeffs();
  for (std::size_t slot = 0; slot < c.size(); ++slot) {
    const long k = std::abs(family_.grid().frequency(slot));
    if (k == 0) {
      c[slot] = 0.0;
    } else if (k > band) {
      discarded_energy_ += std::norm(c[slot]);
      c[slot] = 0.0;
    }
  }
  symbol_ = inverse_dft(s);
  pieces_.reserve(static_cast<std::size_t>(family_.scale_count()));
  for (int j = family_.j_min(); j <= family_.j_max(); ++j)
    pieces_.push_back(apply_profile(s, family_.psi_profile(j)));
}

TorusField apply_paraproduct(const ParaproductContext& ctx, const TorusField& f,
                             const TorusField& g) {
  check_grid(ctx, f, "apply_paraproduct");
  check_grid(ctx, g, "apply_paraproduct");
  const LPFamily& fam = ctx.family();
  auto psi = [&](int j) -> const std::vector<double>& { return fam.psi_profile(j); };
  auto phi = [&](int j) -> const std::vector<double>& { return fam.phi_profile(j); };
  return scale_sum(ctx, f, g, psi, phi, phi);
}

TorusField apply_transpose1(const ParaproductContext& ctx, const TorusField& h,
                            const TorusField& g) {
  check_grid(ctx, h, "apply_transpose1");
  check_grid(ctx, g, "apply_transpose1");
  const LPFamily& fam = ctx.family();
  auto psi = [&](int j) -> const std::vector<double>& { return fam.psi_profile(j); };
  auto phi = [&](int j) -> const std::vector<double>& { return fam.phi_profile(j); };
  return scale_sum(ctx, h, g, phi, psi, phi);
}

TorusField apply_transpose2(const ParaproductContext& ctx, const TorusField& f,
                            const TorusField& h) {
  check_grid(ctx, f, "apply_transpose2");
  check_grid(ctx, h, "apply_transpose2");
  const LPFamily& fam = ctx.family();
  auto psi = [&](int j) -> const std::vector<double>& { return fam.psi_profile(j); };
  auto phi = [&](int j) -> const std::vector<double>& { return fam.phi_profile(j); };
  return scale_sum(ctx, f, h, phi, phi, psi);
}

T1Report verify_t1_identities(const ParaproductContext& ctx) {
  const TorusField one = TorusField::constant(ctx.grid(), 1.0);
  const double b_norm = lp_norm(ctx.symbol(), 2.0);
  const double diff = lp_norm(apply_paraproduct(ctx, one, one) - ctx.symbol(), 2.0);
  return {b_norm > 0.0 ? diff / b_norm : diff,
          lp_norm(apply_transpose1(ctx, one, one), 2.0),
          lp_norm(apply_transpose2(ctx, one, one), 2.0)};
}

std::vector<DecayRow> weak_null_decay(const ParaproductContext& ctx, const SequenceSpec& seq,
                                      const TorusField& f0, const TorusField& g0, long n_max) {
  check_grid(ctx, f0, "weak_null_decay");
  check_grid(ctx, g0, "weak_null_decay");
  if (seq.kind == SequenceKind::basis_walk)
    throw DomainError("weak_null_decay: basis_walk sequences live in coefficient space");
  if (n_max < seq.first_index) throw DomainError("weak_null_decay: empty index range");

  const bool shift_first = seq.kind == SequenceKind::parity_shift ||
                           (seq.kind == SequenceKind::modulated && seq.slots != Slots::second);
  const bool shift_second = seq.kind == SequenceKind::parity_shift ||
                            (seq.kind == SequenceKind::modulated && seq.slots != Slots::first);
  const long limit = ctx.grid().nyquist();
  const long reach = std::max(shift_first ? bandwidth(f0) : 0L, shift_second ? bandwidth(g0) : 0L);
  const long top = std::max(std::abs(n_max), std::abs(seq.first_index));
  if (top + reach >= limit)
    throw DomainError("weak_null_decay: frequency " + std::to_string(top + reach) +
                      " aliases on a grid of size " + std::to_string(ctx.grid().size()));

  std::vector<DecayRow> rows;
  for (long n = seq.first_index; n <= n_max; ++n) {
    TorusField f = f0;
    TorusField g = g0;
    if (shift_first) f = character(ctx.grid(), n) * f0;
    if (shift_second) {
      const long m = seq.kind == SequenceKind::parity_shift ? -n + parity(n) : n;
      g = character(ctx.grid(), m) * g0;
    }
    rows.push_back({n, lp_norm(apply_paraproduct(ctx, f, g), 2.0)});
  }
  return rows;
}

DecaySummary summarize_decay(const std::vector<DecayRow>& table) {
  if (table.empty()) return {0.0, 0.0};
  const std::size_t quarter = std::max<std::size_t>(1, table.size() / 4);
  DecaySummary s{0.0, 0.0};
  for (std::size_t i = 0; i < quarter; ++i) s.head_max = std::max(s.head_max, table[i].norm);
  for (std::size_t i = table.size() - quarter; i < table.size(); ++i)
    s.tail_max = std::max(s.tail_max, table[i].norm);
  return s;
}

HolderReport holder_chain_check(const ParaproductContext& ctx, const CarlesonField& measure,
                                const TorusField& f, const TorusField& g, const TorusField& h,
                                double p, double q) {
  if (!(p > 1.0 && q > 1.0) || std::isinf(p) || std::isinf(q))
    throw DomainError("holder_chain_check requires 1 < p, q < inf");
  if (std::abs(1.0 / p + 1.0 / q - 0.5) > 1e-12)
    throw DomainError("holder_chain_check requires 1/p + 1/q = 1/2");
  if (lp_norm(h, 2.0) > 1.0 + 1e-12) throw DomainError("holder_chain_check requires ||h||_2 <= 1");

  constexpr double square_function_constant = 1.0;
  const double lhs = std::abs(pairing(apply_paraproduct(ctx, f, g), h));
  const double rhs = square_function_constant / std::sqrt(CarlesonField::scale_weight()) *
                     lp_norm_under_measure(measure, ctx.family(), f, p) *
                     lp_norm_under_measure(measure, ctx.family(), g, q);
  return {lhs, rhs, lhs <= rhs * (1.0 + 1e-8)};
}

HolderReport holder_chain_check(const ParaproductContext& ctx, const TorusField& f,
                                const TorusField& g, const TorusField& h, double p, double q) {
  return holder_chain_check(ctx, build_carleson_field(ctx.family(), ctx.symbol()), f, g, h, p, q);
}

}  // namespace paraprod

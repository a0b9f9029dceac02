/**
 * @file paraproduct.hpp
 * @brief The bilinear paraproduct
 *
 *     Pi_b(f, g) = sum_j Q_j( (Q_j b) (P_j f) (P_j g) )
 *
 * and its two transposes under the bilinear pairing,
 *
 *     <Pi_b(f,g), h> = <Pi_b^{*1}(h,g), f> = <Pi_b^{*2}(f,h), g>.
 *
 * All multipliers are real and even, so P_j and Q_j are their own
 * transposes and each summand transposes factor by factor. Scales are
 * always summed in ascending j.
 */

#ifndef PARAPROD_PARAPRODUCT_HPP_INCLUDED_
#define PARAPROD_PARAPRODUCT_HPP_INCLUDED_

#include <vector>

#include "paraprod/carleson.hpp"
#include "paraprod/fourier_core.hpp"
#include "paraprod/littlewood_paley.hpp"
#include "paraprod/sequence.hpp"

namespace paraprod {

/// Family plus a symbol normalized modulo constants and projected onto the
/// family's resolved band. Immutable.
class ParaproductContext {
 public:
  ParaproductContext(LPFamily family, const TorusField& symbol);

  const LPFamily& family() const noexcept { return family_; }
  const TorusGrid& grid() const noexcept { return family_.grid(); }
  const TorusField& symbol() const noexcept { return symbol_; }

  /// Energy the projection removed (mean excluded), for diagnostics.
  double discarded_energy() const noexcept { return discarded_energy_; }

  /// Q_j b.
  const TorusField& symbol_piece(int j) const {
    return pieces_[static_cast<std::size_t>(j - family_.j_min())];
  }

 private:
  LPFamily family_;
  TorusField symbol_;
  double discarded_energy_ = 0.0;
  std::vector<TorusField> pieces_;
};

TorusField apply_paraproduct(const ParaproductContext& ctx, const TorusField& f,
                             const TorusField& g);

/// Transpose in the first slot: sum_j P_j( (Q_j b) (P_j g) (Q_j h) ).
TorusField apply_transpose1(const ParaproductContext& ctx, const TorusField& h,
                            const TorusField& g);

/// Transpose in the second slot: sum_j P_j( (Q_j b) (P_j f) (Q_j h) ).
TorusField apply_transpose2(const ParaproductContext& ctx, const TorusField& f,
                            const TorusField& h);

struct T1Report {
  double err_b;   ///< ||Pi_b(1,1) - b|| / ||b|| (absolute when b = 0)
  double err_t1;  ///< ||Pi_b^{*1}(1,1)||
  double err_t2;  ///< ||Pi_b^{*2}(1,1)||
};

T1Report verify_t1_identities(const ParaproductContext& ctx);

struct DecayRow {
  long n;
  double norm;  ///< ||Pi_b(f_n, g_n)||_{L^2}
};

/// Runs Pi_b over a weakly null sequence built from base fields f0, g0.
/// basis_walk is not meaningful for fields and is rejected.
std::vector<DecayRow> weak_null_decay(const ParaproductContext& ctx, const SequenceSpec& seq,
                                      const TorusField& f0, const TorusField& g0, long n_max);

struct DecaySummary {
  double head_max;  ///< max over the first quarter of the table
  double tail_max;  ///< max over the last quarter
};

DecaySummary summarize_decay(const std::vector<DecayRow>& table);

struct HolderReport {
  double lhs;
  double rhs;
  bool ok;
};

/// Checks |<Pi_b(f,g), h>| <= ||P f||_{L^p(mu)} ||P g||_{L^q(mu)} / sqrt(ln 2)
/// for 1/p + 1/q = 1/2 and ||h||_2 <= 1. The 1/sqrt(ln 2) converts the ln2
/// block weight of mu to the unit block weight of the discrete scale sum;
/// the square-function constant itself is 1.
HolderReport holder_chain_check(const ParaproductContext& ctx, const CarlesonField& measure,
                                const TorusField& f, const TorusField& g, const TorusField& h,
                                double p, double q);

/// Same, with the measure built from the context's symbol.
HolderReport holder_chain_check(const ParaproductContext& ctx, const TorusField& f,
                                const TorusField& g, const TorusField& h, double p, double q);

}  // namespace paraprod

#endif  // PARAPROD_PARAPRODUCT_HPP_INCLUDED_

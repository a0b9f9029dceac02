#include <algorithm>
#include <cmath>
#include <numbers>

#include "paraprod/carleson.hpp"
#include "paraprod/cli.hpp"
#include "paraprod/compactness_lab.hpp"
#include "paraprod/paraproduct.hpp"
#include "paraprod/random.hpp"

namespace paraprod::cli {

namespace {

using nlohmann::json;

struct Setup {
  TorusGrid grid;
  LPFamily family;
};

Setup make_setup(const RunConfig& cfg) {
  validate(cfg);
  TorusGrid grid(cfg.grid_size);
  return {grid, LPFamily(grid, cfg.j_min, cfg.j_max)};
}

ParaproductContext make_context(const RunConfig& cfg, const Setup& setup) {
  return ParaproductContext(setup.family, make_symbol(cfg.symbol, setup.grid));
}

double relative(double err, double scale) { return scale > 0.0 ? err / scale : err; }

std::string pair_label(double p, double q) { return format_double(p) + ":" + format_double(q); }

}  // namespace

Report cmd_lpcheck(const RunConfig& cfg) {
  const Setup setup = make_setup(cfg);
  const LPFamily& fam = setup.family;
  Report report("lpcheck", to_json(cfg));

  report.add_check(make_check("partition_residual", "", fam.partition_residual(), "<", 1e-12));
  double psi_zero = 0.0;
  for (int j = fam.j_min(); j <= fam.j_max(); ++j) psi_zero = std::max(psi_zero, fam.psi(j, 0));
  report.add_check(make_check("psi_at_zero", "", psi_zero, "==", 0.0));

  Rng rng(cfg.seed);
  double rec_err = 0.0, sq_err = 0.0, adj_err = 0.0, unresolved = 0.0;
  for (int t = 0; t < cfg.trials; ++t) {
    const bool real = t % 2 == 0;
    const TorusField f = random_band_limited(setup.grid, fam.resolved_max(), rng, real, false);
    const TorusField h = random_band_limited(setup.grid, fam.resolved_max(), rng, real, false);
    const TorusField f0 = f - TorusField::constant(setup.grid, f.mean());
    const TorusField h0 = h - TorusField::constant(setup.grid, h.mean());

    const Reconstruction rec = calderon_reconstruct(fam, f);
    unresolved = std::max(unresolved, rec.unresolved_energy);
    rec_err = std::max(rec_err, relative(lp_norm(rec.field - f0, 2.0), lp_norm(f0, 2.0)));

    const double sq = lp_norm(square_function(fam, h), 2.0);
    sq_err = std::max(sq_err, relative(std::abs(sq - lp_norm(h0, 2.0)), lp_norm(h0, 2.0)));

    if (real)
      for (int j = fam.j_min(); j <= fam.j_max(); ++j)
        adj_err = std::max(adj_err, std::abs(pairing(apply_Q(fam, j, f), h) - pairing(f, apply_Q(fam, j, h))));
  }
  report.add_check(make_check("calderon_reconstruction", "relative", rec_err, "<", 1e-10));
  report.add_check(make_check("square_function_l2_equality", "relative", sq_err, "<", 1e-10));
  report.add_check(make_check("q_self_transpose", "absolute", adj_err, "<", 1e-12));
  report.set_summary("unresolved_energy_max", unresolved);
  report.set_summary("resolved_band", json::array({1, fam.resolved_max()}));
  report.set_summary("cutoff", fam.cutoff_name());

  Table partition{"partition", {"k", "sum_psi_squared"}, {}};
  for (long k = 0; k <= 2 * fam.resolved_max() && k < setup.grid.nyquist(); ++k) {
    double sum = 0.0;
    for (int j = fam.j_min(); j <= fam.j_max(); ++j) sum += fam.psi(j, k) * fam.psi(j, k);
    partition.rows.push_back(json::array({k, sum}));
  }
  report.add_table(std::move(partition));
  return report;
}

Report cmd_paraproduct(const RunConfig& cfg) {
  const Setup setup = make_setup(cfg);
  const ParaproductContext ctx = make_context(cfg, setup);
  const LPFamily& fam = ctx.family();
  const TorusGrid& grid = setup.grid;
  Report report("paraproduct", to_json(cfg));
  const double b_norm = lp_norm(ctx.symbol(), 2.0);
  report.set_summary("symbol_l2_norm", b_norm);
  report.set_summary("symbol_discarded_energy", ctx.discarded_energy());

  const T1Report t1 = verify_t1_identities(ctx);
  report.add_check(make_check("t1_pi_b_one_one_equals_b", "relative", t1.err_b, "<", 1e-10));
  report.add_check(make_check("t1_transpose1_one_one_vanishes", "", t1.err_t1, "<", 1e-12));
  report.add_check(make_check("t1_transpose2_one_one_vanishes", "", t1.err_t2, "<", 1e-12));

  Rng rng(cfg.seed);
  const long band = fam.resolved_max();
  double dual1 = 0.0, dual2 = 0.0;
  for (int t = 0; t < cfg.trials; ++t) {
    const TorusField f = random_band_limited(grid, band, rng, true, false);
    const TorusField g = random_band_limited(grid, band, rng, true, false);
    const TorusField h = random_band_limited(grid, band, rng, true, false);
    const TorusField pfg = apply_paraproduct(ctx, f, g);
    const TorusField t1h = apply_transpose1(ctx, h, g);
    const TorusField t2h = apply_transpose2(ctx, f, h);
    const cplx lhs = pairing(pfg, h);
    const double hn = lp_norm(h, 2.0);
    dual1 = std::max(dual1, relative(std::abs(lhs - pairing(t1h, f)),
                                     lp_norm(pfg, 2.0) * hn + lp_norm(t1h, 2.0) * lp_norm(f, 2.0)));
    dual2 = std::max(dual2, relative(std::abs(lhs - pairing(t2h, g)),
                                     lp_norm(pfg, 2.0) * hn + lp_norm(t2h, 2.0) * lp_norm(g, 2.0)));
  }
  report.add_check(make_check("duality_transpose1", "relative", dual1, "<", 1e-10));
  report.add_check(make_check("duality_transpose2", "relative", dual2, "<", 1e-10));

  const CarlesonField measure = build_carleson_field(fam, ctx.symbol());
  Table holder{"holder_chain", {"p", "q", "trials", "violations", "max_lhs_over_rhs"}, {}};
  for (const auto& [p, q] : cfg.exponents) {
    long violations = 0;
    double worst = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const TorusField f = random_band_limited(grid, band, rng, t % 2 == 0, false);
      const TorusField g = random_band_limited(grid, band, rng, t % 2 == 0, false);
      TorusField h = random_band_limited(grid, band, rng, t % 2 == 0, false);
      h *= (0.5 + 0.5 * rng.uniform()) / lp_norm(h, 2.0);
      const HolderReport r = holder_chain_check(ctx, measure, f, g, h, p, q);
      if (!r.ok) ++violations;
      if (r.rhs > 0.0) worst = std::max(worst, r.lhs / r.rhs);
    }
    report.add_check(make_check("holder_chain_violations", pair_label(p, q), static_cast<double>(violations), "==", 0.0));
    holder.rows.push_back(json::array({p, q, cfg.trials, violations, worst}));
  }
  report.add_table(std::move(holder));

  const TorusField f0 = TorusField::constant(grid, 1.0);
  const TorusField g0 = TorusField::sample(grid, [](double x) { return 1.0 + 0.5 * std::cos(2.0 * std::numbers::pi * x); });
  const long n_max = cfg.n_max > 0 ? cfg.n_max : grid.nyquist() - 1 - bandwidth(f0);
  const auto decay = weak_null_decay(ctx, SequenceSpec::modulated(Slots::first), f0, g0, n_max);
  Table decay_table{"weak_null_decay", {"n", "norm"}, {}};
  for (const auto& row : decay) decay_table.rows.push_back(json::array({row.n, row.norm}));
  const DecaySummary ds = summarize_decay(decay);
  report.set_summary("weak_null_head_max", ds.head_max);
  report.set_summary("weak_null_tail_max", ds.tail_max);
  if (b_norm == 0.0)
    report.add_check(make_check("weak_null_zero_symbol", "max", std::max(ds.head_max, ds.tail_max), "<", 1e-14));
  else
    report.add_check(make_check("weak_null_tail_over_head", "modulated-first",
                                ds.head_max > 0.0 ? ds.tail_max / ds.head_max : 0.0, "<", 0.1));
  report.add_table(std::move(decay_table));
  return report;
}

Report cmd_carleson(const RunConfig& cfg) {
  const Setup setup = make_setup(cfg);
  const ParaproductContext ctx = make_context(cfg, setup);
  const LPFamily& fam = ctx.family();
  const CarlesonField cf = build_carleson_field(fam, ctx.symbol());
  const int max_level = cfg.max_level >= 0 ? cfg.max_level : std::min(7, cf.max_resolvable_level());
  if (max_level > cf.max_resolvable_level())
    throw ConfigError("max_level " + std::to_string(max_level) + " exceeds the deepest resolvable level " +
                      std::to_string(cf.max_resolvable_level()));
  Report report("carleson", to_json(cfg));

  double expected_mass = 0.0;
  for (int j = fam.j_min(); j <= fam.j_max(); ++j) {
    const double qn = lp_norm(ctx.symbol_piece(j), 2.0);
    expected_mass += qn * qn;
  }
  expected_mass *= CarlesonField::scale_weight();
  const double mass = cf.total_mass();
  report.add_check(make_check("total_mass_identity", "relative",
                              relative(std::abs(mass - expected_mass), std::max(expected_mass, 1.0)), "<", 1e-10));

  const auto profile = vanishing_profile(cf, max_level);
  long increases = 0;
  for (std::size_t i = 1; i < profile.size(); ++i)
    if (profile[i].value > profile[i - 1].value) ++increases;
  report.add_check(make_check("profile_nonincreasing", "violations", static_cast<double>(increases), "==", 0.0));

  const double constant = carleson_constant(cf, max_level);
  report.add_check(make_check("constant_matches_profile_head", "absolute",
                              std::abs(constant - profile.front().value), "==", 0.0));

  const double ratio = profile_tail_ratio(profile);
  report.set_summary("carleson_constant", constant);
  report.set_summary("total_mass", mass);
  report.set_summary("tail_over_head", ratio);
  report.set_summary("max_level", max_level);
  std::string verdict = "indeterminate";
  if (constant == 0.0) verdict = "zero";
  else if (ratio < 0.05) verdict = "vanishing";
  else if (ratio > 0.3) verdict = "non-vanishing";
  report.set_summary("profile_class", verdict);

  Table table{"profile", {"level", "value"}, {}};
  for (const auto& row : profile) table.rows.push_back(json::array({row.level, row.value}));
  report.add_table(std::move(table));
  report.set_primary("profile");
  return report;
}

Report cmd_examples(const std::string& name, const RunConfig& cfg) {
  validate(cfg);
  if (name != "pairing" && name != "bessel" && name != "diagonal")
    throw ConfigError("unknown example '" + name + "' (expected pairing, bessel or diagonal)");
  const long m = cfg.tensor_size;
  const BilinearTensor t = gallery_tensor(name, m, cfg.s);
  Report report("examples", to_json(cfg));
  report.set_summary("example", name);
  Table rows{"examples", {"table", "index", "value", "detail"}, {}};
  auto add = [&rows](const char* table, long index, double value, const std::string& detail = "") {
    rows.rows.push_back(json::array({table, index, value, detail}));
  };

  const double norm = bilinear_norm(t, cfg.restarts);
  add("norm", 0, norm);
  report.set_summary("bilinear_norm", norm);
  if (name != "bessel") report.add_check(make_check("bilinear_norm_is_one", "absolute", std::abs(norm - 1.0), "<", 1e-6));

  if (name == "pairing" || name == "bessel") {
    const auto seq = run_weak_null_sequence(t, SequenceSpec::parity_shift(), std::min<long>(m, 64));
    const double odd_weight = std::pow(1.0 + 4.0 * std::numbers::pi * std::numbers::pi, -0.5 * cfg.s);
    double deviation = 0.0;
    for (const auto& row : seq) {
      add("parity_sequence", row.n, row.norm, row.description);
      CoeffVector expected(t.out_window().size());
      if (name == "pairing") expected[0] = parity(row.n) ? 0.0 : 1.0;
      else if (parity(row.n)) expected[t.out_window().position(1)] = odd_weight;
      else expected[t.out_window().position(0)] = 1.0;
      for (std::size_t i = 0; i < expected.size(); ++i) deviation = std::max(deviation, std::abs(row.output[i] - expected[i]));
    }
    if (name == "pairing")
      report.add_check(make_check("parity_sequence_alternates_0_1", "max deviation", deviation, "==", 0.0));
    else
      report.add_check(make_check("parity_sequence_alternates_bessel", "max deviation", deviation, "<", 1e-12));

    if (name == "pairing") {
      double entry_dev = 0.0;
      for (long n = -m; n <= m; ++n)
        for (long k = -m; k <= m; ++k)
          entry_dev = std::max(entry_dev, std::abs(t.at(0, n, k) - cplx(n + k == 0 ? 1.0 : 0.0)));
      report.add_check(make_check("pairing_entries_exact", "max deviation", entry_dev, "==", 0.0));
      add("tail", 0, tail_norm(t, 0, cfg.restarts));
      add("tail", 1, tail_norm(t, 1, cfg.restarts));

      double worst1 = 1e300, worst2 = 1e300;
      const std::size_t width = t.in1_window().size();
      const BilinearTensor t1 = transpose1(t);
      const BilinearTensor t2 = transpose2(t);
      for (std::size_t k = 0; k < width; ++k) {
        const double a = tail_norm(t1, k, cfg.restarts);
        const double b = tail_norm(t2, k, cfg.restarts);
        add("transpose1_tail", static_cast<long>(k), a);
        add("transpose2_tail", static_cast<long>(k), b);
        worst1 = std::min(worst1, a);
        worst2 = std::min(worst2, b);
      }
      report.add_check(make_check("transpose1_tail_min", "K < window", worst1, ">=", 1.0 - 1e-9));
      report.add_check(make_check("transpose2_tail_min", "K < window", worst2, ">=", 1.0 - 1e-9));
    } else {
      // Witness (z, y) = (delta_0, delta_{-n}) for the transposes: output delta_n.
      const BilinearTensor t1 = transpose1(t);
      double worst = 1e300;
      for (std::size_t k = 0; k < t1.out_window().size(); ++k) {
        double best = 0.0;
        for (long n = t1.out_window().lo; n <= t1.out_window().hi; ++n) {
          if (t1.out_window().magnitude_rank(n) < k) continue;
          const CoeffVector out = apply_tensor(t1.output_tail(k), t1.in1_window().basis(0), t1.in2_window().basis(-n));
          best = std::max(best, l2_norm(out));
        }
        add("transpose1_tail_witness", static_cast<long>(k), best);
        worst = std::min(worst, best);
      }
      report.add_check(make_check("transpose1_tail_witness_min", "K < window", worst, ">=", 1.0 - 1e-9));

      std::vector<std::size_t> kept;
      for (std::size_t k = 1; k <= t.out_window().size(); k = 2 * k + 1) kept.push_back(k);
      const auto section = section_tail_profile(t, Slot::second, t.in2_window().basis(0), kept);
      double worst_section = 0.0;
      for (const auto& row : section) {
        const long next = static_cast<long>((row.kept + 1) / 2);  // first |k| left after keeping `kept`
        const double expected =
            next <= m ? std::pow(1.0 + 4.0 * std::numbers::pi * std::numbers::pi * static_cast<double>(next * next),
                                 -0.5 * cfg.s)
                      : 0.0;
        add("section_tail", static_cast<long>(row.kept), row.norm);
        worst_section = std::max(worst_section, std::abs(row.norm - expected));
      }
      report.add_check(make_check("section_tail_matches_weights", "max deviation", worst_section, "<", 1e-12));
    }
  } else {
    const auto seq = run_weak_null_sequence(t, SequenceSpec::basis_walk(), m);
    double dist = 0.0;
    for (const auto& row : seq) add("basis_walk", row.n, row.norm, row.description);
    for (std::size_t a = 0; a < seq.size(); ++a)
      for (std::size_t b = a + 1; b < seq.size(); ++b) {
        CoeffVector d = seq[a].output;
        for (std::size_t i = 0; i < d.size(); ++i) d[i] -= seq[b].output[i];
        dist = std::max(dist, std::abs(l2_norm(d) - std::numbers::sqrt2));
      }
    report.add_check(make_check("basis_walk_pairwise_distance_sqrt2", "max deviation", dist, "<", 1e-12));

    double tail_dev = 0.0;
    for (long k = 0; k <= m - 1; ++k) {
      const double v = tail_norm(t, static_cast<std::size_t>(k), cfg.restarts);
      add("tail", k, v);
      tail_dev = std::max(tail_dev, std::abs(v - 1.0));
    }
    report.add_check(make_check("joint_tail_norm_is_one", "K <= M-1", tail_dev, "<", 1e-6));

    CoeffVector y(t.in2_window().size());
    for (long n = 1; n <= m; ++n) y[static_cast<std::size_t>(n - 1)] = 1.0 / static_cast<double>(n);
    const double yn = l2_norm(y);
    for (cplx& c : y) c /= yn;
    std::vector<std::size_t> kept;
    for (long k = 0; k <= m; ++k) kept.push_back(static_cast<std::size_t>(k));
    const auto section = section_tail_profile(t, Slot::second, y, kept);
    double dev = 0.0;
    for (const auto& row : section) {
      const double expected = row.kept < static_cast<std::size_t>(m) ? std::abs(y[row.kept]) : 0.0;
      add("section_tail", static_cast<long>(row.kept), row.norm);
      dev = std::max(dev, std::abs(row.norm - expected));
    }
    report.add_check(make_check("section_tail_equals_max_remaining", "max deviation", dev, "<", 1e-12));
    report.add_check(make_check("section_tail_vanishes", "K = M", section.back().norm, "==", 0.0));
  }

  report.add_table(std::move(rows));
  report.set_primary("examples");
  return report;
}

Report cmd_rellich(const RunConfig& cfg) {
  validate(cfg);
  if (cfg.k_list.empty()) throw ConfigError("rellich needs a non-empty K list (--K 1,2,4)");
  for (long k : cfg.k_list)
    if (k < 1) throw ConfigError("rellich cut-offs must be >= 1");
  Report report("rellich", to_json(cfg));
  Table table{"rellich", {"K", "formula_value", "operator_value"}, {}};
  double worst = 0.0;
  std::vector<std::pair<long, double>> column;
  for (long k : cfg.k_list) {
    const RellichTail r = rellich_tail(cfg.s, k);
    table.rows.push_back(json::array({k, r.formula_value, r.operator_value}));
    worst = std::max(worst, std::abs(r.formula_value - r.operator_value));
    column.emplace_back(k, r.formula_value);
  }
  std::sort(column.begin(), column.end());
  long non_decreasing = 0;
  for (std::size_t i = 1; i < column.size(); ++i)
    if (column[i].first > column[i - 1].first && !(column[i].second < column[i - 1].second)) ++non_decreasing;
  report.add_check(make_check("formula_matches_operator", "absolute", worst, "<", 1e-12));
  report.add_check(make_check("strictly_decreasing_in_K", "violations", static_cast<double>(non_decreasing), "==", 0.0));
  report.add_table(std::move(table));
  report.set_primary("rellich");
  return report;
}

}  // namespace paraprod::cli

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "paraprod/fourier_core.hpp"
#include "paraprod/random.hpp"

using namespace paraprod;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

// O(N^2) reference, straight from the definition
cplx direct_coeff(const TorusField& f, long k) {
  const double n = static_cast<double>(f.size());
  cplx acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    acc += f[i] * std::polar(1.0, -2.0 * kPi * static_cast<double>(k) * static_cast<double>(i) / n);
  return acc / n;
}

TorusField random_field(const TorusGrid& g, Rng& rng) {
  std::vector<cplx> v(g.size());
  for (auto& z : v) z = rng.complex_symmetric();
  return TorusField(g, std::move(v));
}

}  // namespace

TEST_CASE("grid rejects sizes that are not powers of two >= 16", "[grid]") {
  CHECK_THROWS_AS(TorusGrid(8), DomainError);
  CHECK_THROWS_AS(TorusGrid(48), DomainError);
  CHECK_THROWS_AS(TorusGrid(0), DomainError);
  CHECK_NOTHROW(TorusGrid(16));
  CHECK_NOTHROW(TorusGrid(1024));
}

TEST_CASE("slot and frequency are inverse", "[grid]") {
  const TorusGrid g(64);
  for (std::size_t s = 0; s < g.size(); ++s) CHECK(g.slot(g.frequency(s)) == s);
  CHECK(g.frequency(0) == 0);
  CHECK(g.slot(-1) == 63);
}

TEST_CASE("forward transform matches the direct sum", "[dft]") {
  Rng rng(7);
  for (std::size_t n : {16u, 64u, 256u}) {
    const TorusGrid g(n);
    const TorusField f = random_field(g, rng);
    const Spectrum s = forward_dft(f);
    for (long k = -g.nyquist(); k < g.nyquist(); ++k) {
      const cplx ref = direct_coeff(f, k);
      CHECK(std::abs(s.at(k) - ref) < 1e-13);
    }
  }
}

TEST_CASE("constant 1 transforms to delta at 0", "[dft]") {
  const TorusGrid g(32);
  const Spectrum s = forward_dft(TorusField::constant(g, 1.0));
  CHECK_THAT(s.at(0).real(), WithinAbs(1.0, 1e-15));
  for (long k = 1; k < 16; ++k) CHECK(std::abs(s.at(k)) < 1e-15);
}

TEST_CASE("round trip and Parseval on random fields", "[dft]") {
  Rng rng(2024);
  const TorusGrid g(128);
  double worst_rt = 0.0, worst_parseval = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const TorusField f = random_field(g, rng);
    const TorusField back = inverse_dft(forward_dft(f));
    for (std::size_t i = 0; i < g.size(); ++i) worst_rt = std::max(worst_rt, std::abs(back[i] - f[i]));
    const double l2 = lp_norm(f, 2.0);
    worst_parseval = std::max(worst_parseval, std::abs(l2 * l2 - forward_dft(f).energy()) / (l2 * l2));
  }
  CHECK(worst_rt < 1e-12);
  CHECK(worst_parseval < 1e-12);
}

TEST_CASE("characters", "[dft]") {
  const TorusGrid g(64);
  const TorusField e3 = character(g, 3);
  const Spectrum s = forward_dft(e3);
  CHECK_THAT(s.at(3).real(), WithinAbs(1.0, 1e-14));
  CHECK(std::abs(s.at(-3)) < 1e-14);
  CHECK(std::abs(e3[0] - cplx(1.0)) == 0.0);
  CHECK_THROWS_AS(character(g, 32), DomainError);
  CHECK_THROWS_AS(character(g, -32), DomainError);

  // bilinear pairing: <e_n, e_m> = 1 iff n + m = 0
  for (long n = -5; n <= 5; ++n)
    for (long m = -5; m <= 5; ++m) {
      const cplx p = pairing(character(g, n), character(g, m));
      CHECK(std::abs(p - cplx(n + m == 0 ? 1.0 : 0.0)) < 1e-14);
    }
}

TEST_CASE("Lp norms", "[norms]") {
  const TorusGrid g(256);
  const TorusField one = TorusField::constant(g, 1.0);
  for (double p : {1.0, 1.5, 2.0, 4.0}) CHECK_THAT(lp_norm(one, p), WithinAbs(1.0, 1e-14));
  const TorusField c = TorusField::sample(g, [](double x) { return std::cos(2.0 * kPi * x); });
  CHECK_THAT(lp_norm(c, 2.0), WithinRel(std::sqrt(0.5), 1e-14));
  CHECK_THAT(lp_norm(c, INFINITY), WithinAbs(1.0, 1e-15));
  CHECK_THROWS_AS(lp_norm(c, 0.5), DomainError);
  // monotone in p on a probability space
  Rng rng(3);
  const TorusField f = random_field(g, rng);
  CHECK(lp_norm(f, 1.5) <= lp_norm(f, 3.0) * (1 + 1e-14));
}

TEST_CASE("Sobolev norm", "[norms]") {
  const TorusGrid g(64);
  const TorusField e2 = character(g, 2);
  const double w = 1.0 + 4.0 * kPi * kPi * 4.0;
  CHECK_THAT(sobolev_norm(e2, 1.0), WithinRel(std::sqrt(w), 1e-13));
  CHECK_THAT(sobolev_norm(e2, 0.0), WithinRel(1.0, 1e-13));
  Rng rng(5);
  const TorusField f = random_field(g, rng);
  double prev = 0.0;
  for (double s : {0.0, 0.5, 1.0, 2.0}) {
    const double v = sobolev_norm(f, s);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("band limiting and bandwidth", "[multiplier]") {
  const TorusGrid g(64);
  Rng rng(11);
  const TorusField f = random_band_limited(g, 10, rng, true);
  CHECK(bandwidth(f) <= 10);
  const TorusField low = band_limit(f, 0, 4);
  CHECK(bandwidth(low) <= 4);
  const TorusField rest = f - low;
  const Spectrum s = forward_dft(rest);
  for (long k = -4; k <= 4; ++k) CHECK(std::abs(s.at(k)) < 1e-14);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(f[i].imag()) < 1e-15);
}

TEST_CASE("mismatched grids are rejected", "[grid]") {
  const TorusField a(TorusGrid(16)), b(TorusGrid(32));
  CHECK_THROWS_AS(a * b, DomainError);
  CHECK_THROWS_AS(pairing(a, b), DomainError);
}

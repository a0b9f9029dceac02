#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "paraprod/compactness_lab.hpp"
#include "paraprod/random.hpp"

using namespace paraprod;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kPi = std::numbers::pi;

double weight(long k, double s) { return std::pow(1.0 + 4.0 * kPi * kPi * double(k) * double(k), -s / 2.0); }

CoeffVector random_vec(std::size_t n, Rng& rng) {
  CoeffVector v(n);
  for (auto& z : v) z = rng.complex_symmetric();
  return v;
}

// dense contraction over every index triple
CoeffVector dense_apply(const BilinearTensor& t, const CoeffVector& x, const CoeffVector& y) {
  const Window &o = t.out_window(), &a = t.in1_window(), &b = t.in2_window();
  CoeffVector out(o.size(), 0.0);
  for (long k = o.lo; k <= o.hi; ++k)
    for (long n = a.lo; n <= a.hi; ++n)
      for (long m = b.lo; m <= b.hi; ++m) out[o.position(k)] += t.at(k, n, m) * x[a.position(n)] * y[b.position(m)];
  return out;
}

double max_diff(const CoeffVector& a, const CoeffVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

bool same_entries(const BilinearTensor& a, const BilinearTensor& b) {
  if (!(a.out_window() == b.out_window() && a.in1_window() == b.in1_window() && a.in2_window() == b.in2_window()))
    return false;
  if (a.entries().size() != b.entries().size()) return false;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    const auto &e = a.entries()[i], &f = b.entries()[i];
    if (e.k != f.k || e.n != f.n || e.m != f.m || e.value != f.value) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("windows", "[window]") {
  const Window w = Window::symmetric(3);
  CHECK(w.size() == 7);
  CHECK(w.position(-3) == 0);
  CHECK(w.index_at(6) == 3);
  CHECK_THROWS_AS(w.position(4), DomainError);
  // magnitude order 0, 1, -1, 2, -2, ...
  CHECK(w.magnitude_rank(0) == 0);
  CHECK(w.magnitude_rank(1) == 1);
  CHECK(w.magnitude_rank(-1) == 2);
  CHECK(w.magnitude_rank(-3) == 6);
  const Window p = Window::positive(5);
  CHECK(p.magnitude_rank(1) == 0);
  CHECK(p.magnitude_rank(5) == 4);
  const CoeffVector e = p.basis(2);
  CHECK(e[1] == cplx(1.0));
  CHECK(l2_norm(e) == 1.0);
}

TEST_CASE("tensor construction normalizes entries", "[tensor]") {
  const Window w = Window::symmetric(2);
  const BilinearTensor t("t", w, w, w, {{1, 0, 1, 2.0}, {0, 0, 0, 1.0}, {1, 0, 1, -0.5}, {2, 1, 1, 0.0}});
  CHECK(t.entries().size() == 2);
  CHECK(t.at(1, 0, 1) == cplx(1.5));
  CHECK(t.at(2, 1, 1) == cplx(0.0));
  CHECK_THROWS_AS(BilinearTensor("bad", w, w, w, {{3, 0, 0, 1.0}}), DomainError);
  CHECK_THROWS_AS(BilinearTensor("bad", w, w, w, {{0, 0, 0, cplx(NAN)}}), DomainError);
}

TEST_CASE("pairing tensor values", "[gallery]") {
  const BilinearTensor t = tensor_pairing(8);
  CHECK(t.out_window() == Window{0, 0});
  for (long n = -8; n <= 8; ++n)
    for (long m = -8; m <= 8; ++m) CHECK(t.at(0, n, m) == cplx(n + m == 0 ? 1.0 : 0.0));
  const Window w = Window::symmetric(8);
  CHECK(apply_tensor(t, w.basis(2), w.basis(-2))[0] == cplx(1.0));
  CHECK(apply_tensor(t, w.basis(1), w.basis(2))[0] == cplx(0.0));
  CHECK_THROWS_AS(tensor_pairing(1), DomainError);
}

TEST_CASE("Bessel tensor values", "[gallery]") {
  for (double s : {0.5, 1.0, 2.0}) {
    const BilinearTensor t = tensor_bessel(6, s);
    const Window w = Window::symmetric(6);
    for (long n = -6; n <= 6; ++n) {
      for (long m = -6; m <= 6; ++m) CHECK_THAT(std::abs(t.at(n + m, n, m) - weight(n + m, s)), WithinAbs(0.0, 1e-15));
      const CoeffVector out = apply_tensor(t, w.basis(n), w.basis(-n + parity(n)));
      CHECK_THAT(l2_norm(out), WithinAbs(parity(n) ? weight(1, s) : 1.0, 1e-15));
    }
    CHECK(t.at(0, 0, 0) == cplx(1.0));
  }
  CHECK(tensor_bessel(4, 50.0).at(0, 2, -2) == cplx(1.0));
  CHECK_THROWS_AS(tensor_bessel(4, 0.0), DomainError);
}

TEST_CASE("diagonal tensor values", "[gallery]") {
  const BilinearTensor t = tensor_diagonal(10);
  const Window w = Window::positive(10);
  CHECK(max_diff(apply_tensor(t, w.basis(4), w.basis(4)), w.basis(4)) == 0.0);
  CHECK(l2_norm(apply_tensor(t, w.basis(1), w.basis(2))) == 0.0);
  const CoeffVector u(10, 1.0 / std::sqrt(10.0));
  const CoeffVector out = apply_tensor(t, u, u);
  for (const cplx& c : out) CHECK_THAT(c.real(), WithinAbs(0.1, 1e-16));
  CHECK_THAT(l2_norm(out), WithinAbs(1.0 / std::sqrt(10.0), 1e-15));
  CHECK(gallery_tensor("diagonal", 10, 1.0).entries().size() == 10);
  CHECK_THROWS_AS(gallery_tensor("nope", 10, 1.0), DomainError);
}

TEST_CASE("apply matches dense contraction and is bilinear", "[apply]") {
  Rng rng(31);
  for (const BilinearTensor& t : {tensor_pairing(5), tensor_bessel(5, 1.0), tensor_diagonal(7)}) {
    const std::size_t n1 = t.in1_window().size(), n2 = t.in2_window().size();
    const CoeffVector x = random_vec(n1, rng), x2 = random_vec(n1, rng), y = random_vec(n2, rng);
    CHECK(max_diff(apply_tensor(t, x, y), dense_apply(t, x, y)) < 1e-13);
    CoeffVector sum(n1);
    for (std::size_t i = 0; i < n1; ++i) sum[i] = x[i] + x2[i];
    const CoeffVector a = apply_tensor(t, sum, y), b = apply_tensor(t, x, y), c = apply_tensor(t, x2, y);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i] - c[i]) < 1e-12);
    CHECK(l2_norm(apply_tensor(t, CoeffVector(n1, 0.0), y)) == 0.0);
    CHECK_THROWS_AS(apply_tensor(t, CoeffVector(n1 + 1), y), DomainError);
  }
}

TEST_CASE("transposes: entries, involution, duality", "[transpose]") {
  Rng rng(8);
  for (const BilinearTensor& t : {tensor_pairing(6), tensor_bessel(6, 0.5), tensor_diagonal(9)}) {
    const BilinearTensor t1 = transpose1(t), t2 = transpose2(t);
    for (const auto& e : t.entries()) {
      CHECK(t1.at(e.n, e.k, e.m) == e.value);
      CHECK(t2.at(e.m, e.n, e.k) == e.value);
    }
    CHECK(same_entries(transpose1(t1), t));
    CHECK(same_entries(transpose2(t2), t));
    for (int trial = 0; trial < 100; ++trial) {
      const CoeffVector x = random_vec(t.in1_window().size(), rng);
      const CoeffVector y = random_vec(t.in2_window().size(), rng);
      const CoeffVector z = random_vec(t.out_window().size(), rng);
      const cplx base = coordinate_pairing(apply_tensor(t, x, y), z);
      CHECK(std::abs(coordinate_pairing(apply_tensor(t1, z, y), x) - base) < 1e-12);
      CHECK(std::abs(coordinate_pairing(apply_tensor(t2, x, z), y) - base) < 1e-12);
    }
  }
  // transpose1 of the pairing: (z, y) -> z * (y flipped)
  const BilinearTensor p1 = transpose1(tensor_pairing(4));
  const Window w = Window::symmetric(4);
  CoeffVector y(9);
  for (std::size_t i = 0; i < 9; ++i) y[i] = double(i + 1);
  const CoeffVector out = apply_tensor(p1, {cplx(2.0)}, y);
  for (long n = -4; n <= 4; ++n) CHECK(out[w.position(n)] == 2.0 * y[w.position(-n)]);
}

TEST_CASE("bilinear norm of the gallery", "[norm]") {
  CHECK_THAT(bilinear_norm(tensor_pairing(16)), WithinAbs(1.0, 1e-6));
  CHECK_THAT(bilinear_norm(tensor_diagonal(16)), WithinAbs(1.0, 1e-6));
  // Bessel: the k = 0 slice is the pairing, so ||T|| >= 1; weights never exceed 1
  CHECK(bilinear_norm(tensor_bessel(8, 1.0)) >= 1.0 - 1e-9);
  const Window w = Window::symmetric(3);
  CHECK(bilinear_norm(BilinearTensor("zero", w, w, w, {})) == 0.0);
}

TEST_CASE("bilinear norm bounds every sampled pair", "[norm]") {
  Rng rng(71);
  const BilinearTensor t = tensor_bessel(5, 1.0);
  const double est = bilinear_norm(t);
  for (int i = 0; i < 200; ++i) {
    CoeffVector x = random_vec(11, rng), y = random_vec(11, rng);
    const double nx = l2_norm(x), ny = l2_norm(y);
    for (auto& c : x) c /= nx;
    for (auto& c : y) c /= ny;
    CHECK(l2_norm(apply_tensor(t, x, y)) <= est * (1 + 1e-9));
  }
}

TEST_CASE("tail norms", "[tail]") {
  const BilinearTensor d = tensor_diagonal(12);
  const Window w = d.in1_window();
  for (std::size_t k = 0; k < 12; ++k) {
    // brute force over basis pairs
    double brute = 0.0;
    const BilinearTensor tail = d.output_tail(k);
    for (long n = 1; n <= 12; ++n)
      for (long m = 1; m <= 12; ++m) brute = std::max(brute, l2_norm(apply_tensor(tail, w.basis(n), w.basis(m))));
    CHECK(brute == 1.0);
    CHECK_THAT(tail_norm(d, k), WithinAbs(1.0, 1e-6));
  }
  CHECK(tail_norm(d, 12) == 0.0);
  CHECK(tail_norm(tensor_pairing(6), 1) == 0.0);
  CHECK_THROWS_AS(tail_norm(d, 13), DomainError);

  const BilinearTensor p1 = transpose1(tensor_pairing(6));
  for (std::size_t k = 0; k < 13; ++k) CHECK(tail_norm(p1, k) >= 1.0 - 1e-9);
}

TEST_CASE("section tail profile", "[section]") {
  const BilinearTensor d = tensor_diagonal(16);
  CoeffVector y(16);
  for (std::size_t i = 0; i < 16; ++i) y[i] = 1.0 / double(i + 1);
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k <= 16; ++k) kept.push_back(k);
  const auto rows = section_tail_profile(d, Slot::second, y, kept);
  for (const auto& r : rows) CHECK_THAT(r.norm, WithinAbs(r.kept < 16 ? 1.0 / double(r.kept + 1) : 0.0, 1e-14));

  const auto delta = section_tail_profile(d, Slot::first, d.in1_window().basis(1), {0, 1, 5});
  CHECK_THAT(delta[0].norm, WithinAbs(1.0, 1e-14));
  CHECK(delta[1].norm < 1e-14);
  CHECK(delta[2].norm < 1e-14);

  // Bessel section at y = e_0 is diagonal with weights w(n); magnitude order keeps |k| <= K
  const double s = 1.0;
  const BilinearTensor b = tensor_bessel(10, s);
  const auto brows = section_tail_profile(b, Slot::second, b.in2_window().basis(0), {1, 3, 5, 9, 21});
  for (const auto& r : brows) {
    const long next = long(r.kept + 1) / 2;
    CHECK_THAT(r.norm, WithinAbs(next <= 10 ? weight(next, s) : 0.0, 1e-13));
  }
}

TEST_CASE("weak-null sequences on the gallery", "[sequence]") {
  const auto pr = run_weak_null_sequence(tensor_pairing(64), SequenceSpec::parity_shift(), 64);
  REQUIRE(pr.size() == 64);
  for (const auto& r : pr) CHECK(r.output[0] == cplx(parity(r.n) ? 0.0 : 1.0));
  for (std::size_t i = 1; i < pr.size(); ++i) CHECK(std::abs(pr[i].norm - pr[i - 1].norm) == 1.0);

  for (double s : {0.5, 1.0, 2.0}) {
    const BilinearTensor b = tensor_bessel(16, s);
    for (const auto& r : run_weak_null_sequence(b, SequenceSpec::parity_shift(), 16)) {
      const long k = parity(r.n);
      const Window& o = b.out_window();
      CHECK(std::abs(r.output[o.position(k)] - (k ? weight(1, s) : 1.0)) < 1e-12);
      CHECK_THAT(r.norm, WithinAbs(k ? weight(1, s) : 1.0, 1e-12));
    }
  }

  const BilinearTensor d = tensor_diagonal(20);
  const auto walk = run_weak_null_sequence(d, SequenceSpec::basis_walk(), 20);
  for (std::size_t i = 0; i < walk.size(); ++i)
    for (std::size_t j = i + 1; j < walk.size(); ++j) {
      CoeffVector diff(20);
      for (std::size_t c = 0; c < 20; ++c) diff[c] = walk[i].output[c] - walk[j].output[c];
      CHECK_THAT(l2_norm(diff), WithinAbs(std::sqrt(2.0), 1e-12));
    }
  CHECK(walk[2].description == "3:1");

  CHECK_THROWS_AS(run_weak_null_sequence(d, SequenceSpec::basis_walk(), 21), DomainError);
  CHECK_THROWS_AS(run_weak_null_sequence(tensor_pairing(4), SequenceSpec::parity_shift(), 5), DomainError);
}

TEST_CASE("modulated and constant sequences", "[sequence]") {
  const BilinearTensor d = tensor_diagonal(8);
  const Window w = d.in1_window();
  const CoeffVector x0 = w.basis(1), y0(8, 1.0);
  const auto rows = run_weak_null_sequence(d, SequenceSpec::modulated(Slots::first), 7, x0, y0);
  for (const auto& r : rows) CHECK(max_diff(r.output, w.basis(1 + r.n)) == 0.0);
  CHECK_THROWS_AS(run_weak_null_sequence(d, SequenceSpec::modulated(Slots::first), 8, x0, y0), DomainError);
  for (const auto& r : run_weak_null_sequence(d, SequenceSpec::constant(), 3, x0, y0)) CHECK(r.norm == 1.0);
}

TEST_CASE("Rellich tail", "[rellich]") {
  for (double s : {0.5, 1.0, 2.0}) {
    double prev = 2.0;
    for (long k = 1; k <= 64; ++k) {
      const RellichTail r = rellich_tail(s, k);
      CHECK_THAT(r.formula_value, WithinAbs(weight(k, s), 1e-15));
      CHECK(std::abs(r.formula_value - r.operator_value) < 1e-12);
      CHECK(r.operator_value < prev);
      prev = r.operator_value;
    }
  }
  CHECK_THAT(rellich_tail(1.0, 10).formula_value, WithinAbs(1.0 / std::sqrt(1.0 + 400.0 * kPi * kPi), 1e-15));
  CHECK(rellich_tail(0.5, 8).formula_value > rellich_tail(2.0, 8).formula_value);
  CHECK(rellich_tail(1e-9, 3).formula_value > 1.0 - 1e-8);
  CHECK_THROWS_AS(rellich_tail(0.0, 3), DomainError);
  CHECK_THROWS_AS(rellich_tail(1.0, 0), DomainError);
}

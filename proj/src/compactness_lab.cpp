#include "paraprod/compactness_lab.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <tuple>

#include "paraprod/random.hpp"

namespace paraprod {

namespace {

using Matrix = Eigen::MatrixXcd;

double bessel_weight(long k, double s) {
  const double kk = static_cast<double>(k);
  return std::pow(1.0 + 4.0 * std::numbers::pi * std::numbers::pi * kk * kk, -0.5 * s);
}

CoeffVector random_unit(std::size_t n, Rng& rng) {
  CoeffVector v(n);
  for (cplx& c : v) c = rng.complex_symmetric();
  const double norm = l2_norm(v);
  for (cplx& c : v) c /= norm;
  return v;
}

Matrix to_eigen(const SectionMatrix& s) {
  Matrix a(static_cast<Eigen::Index>(s.rows), static_cast<Eigen::Index>(s.cols));
  for (std::size_t r = 0; r < s.rows; ++r)
    for (std::size_t c = 0; c < s.cols; ++c)
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s.data[r * s.cols + c];
  return a;
}

bool is_diagonal(const Matrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (r != c && m(r, c) != cplx(0.0)) return false;
  return true;
}

// Unit eigenvector of the largest eigenvalue of a Hermitian matrix.
Eigen::VectorXcd top_eigenvector(const Matrix& gram) {
  if (is_diagonal(gram)) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < gram.rows(); ++i)
      if (gram(i, i).real() > gram(best, best).real()) best = i;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(gram.rows());
    v(best) = 1.0;
    return v;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  return eig.eigenvectors().col(gram.cols() - 1);
}

// Unit maximizer of ||A v||; works on the smaller of A^H A and A A^H.
CoeffVector top_right_singular_vector(const SectionMatrix& s) {
  const Matrix a = to_eigen(s);
  Eigen::VectorXcd v;
  if (a.rows() < a.cols()) {
    const Eigen::VectorXcd u = top_eigenvector(a * a.adjoint());
    v = a.adjoint() * u;
    const double norm = v.norm();
    if (norm == 0.0) v = Eigen::VectorXcd::Unit(a.cols(), 0);
    else v /= norm;
  } else {
    v = top_eigenvector(a.adjoint() * a);
  }
  return CoeffVector(v.data(), v.data() + v.size());
}

void require_size(const CoeffVector& v, const Window& w, const char* what) {
  if (v.size() != w.size())
    throw DomainError(std::string(what) + ": vector length " + std::to_string(v.size()) +
                      " does not match window size " + std::to_string(w.size()));
}

// x shifted by n: out[k] = x[k - n]; nonzero mass may not leave the window.
CoeffVector shifted(const Window& w, const CoeffVector& x, long n) {
  CoeffVector out(w.size());
  for (std::size_t pos = 0; pos < x.size(); ++pos) {
    if (x[pos] == cplx(0.0)) continue;
    const long k = w.index_at(pos) + n;
    if (!w.contains(k)) throw DomainError("sequence leaves the tensor window at index " + std::to_string(k));
    out[w.position(k)] = x[pos];
  }
  return out;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::size_t Window::position(long k) const {
  if (!contains(k))
    throw DomainError("index " + std::to_string(k) + " outside window [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  return static_cast<std::size_t>(k - lo);
}

std::size_t Window::magnitude_rank(long k) const {
  position(k);
  std::size_t rank = 0;
  for (long j = lo; j <= hi; ++j) {
    const bool before = std::abs(j) < std::abs(k) || (std::abs(j) == std::abs(k) && j > k);
    if (before) ++rank;
  }
  return rank;
}

CoeffVector Window::basis(long k) const {
  CoeffVector v(size());
  v[position(k)] = 1.0;
  return v;
}

BilinearTensor::BilinearTensor(std::string name, Window out, Window in1, Window in2,
                               std::vector<Entry> entries)
    : name_(std::move(name)), out_(out), in1_(in1), in2_(in2) {
  if (out.hi < out.lo || in1.hi < in1.lo || in2.hi < in2.lo) throw DomainError("empty tensor window");
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.k, a.n, a.m) < std::tie(b.k, b.n, b.m);
  });
  for (const Entry& e : entries) {
    if (!out.contains(e.k) || !in1.contains(e.n) || !in2.contains(e.m))
      throw DomainError("tensor entry outside its windows");
    if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag()))
      throw DomainError("tensor entry is not finite");
    if (!entries_.empty() && entries_.back().k == e.k && entries_.back().n == e.n &&
        entries_.back().m == e.m)
      entries_.back().value += e.value;
    else
      entries_.push_back(e);
  }
  std::erase_if(entries_, [](const Entry& e) { return e.value == cplx(0.0); });
}

cplx BilinearTensor::at(long k, long n, long m) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), std::tie(k, n, m),
                                   [](const Entry& e, const std::tuple<long&, long&, long&>& key) {
                                     return std::tie(e.k, e.n, e.m) < key;
                                   });
  if (it != entries_.end() && it->k == k && it->n == n && it->m == m) return it->value;
  return 0.0;
}

BilinearTensor BilinearTensor::output_tail(std::size_t kept) const {
  if (kept > out_.size())
    throw DomainError("cannot keep " + std::to_string(kept) + " of " + std::to_string(out_.size()) +
                      " output coordinates");
  std::vector<Entry> rest;
  for (const Entry& e : entries_)
    if (out_.magnitude_rank(e.k) >= kept) rest.push_back(e);
  return BilinearTensor(name_ + "-tail", out_, in1_, in2_, std::move(rest));
}

cplx coordinate_pairing(const CoeffVector& x, const CoeffVector& y) {
  if (x.size() != y.size()) throw DomainError("coordinate_pairing: length mismatch");
  cplx sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return sum;
}

double l2_norm(const CoeffVector& x) {
  double sum = 0.0;
  for (const cplx& c : x) sum += std::norm(c);
  return std::sqrt(sum);
}

BilinearTensor tensor_pairing(long m) {
  if (m < 2) throw DomainError("tensor_pairing requires M >= 2");
  std::vector<BilinearTensor::Entry> e;
  for (long n = -m; n <= m; ++n) e.push_back({0, n, -n, 1.0});
  return BilinearTensor("pairing", Window{0, 0}, Window::symmetric(m), Window::symmetric(m), std::move(e));
}

BilinearTensor tensor_bessel(long m, double s) {
  if (m < 2) throw DomainError("tensor_bessel requires M >= 2");
  if (!(s > 0.0)) throw DomainError("tensor_bessel requires s > 0");
  std::vector<BilinearTensor::Entry> e;
  for (long n = -m; n <= m; ++n)
    for (long mm = -m; mm <= m; ++mm) e.push_back({n + mm, n, mm, bessel_weight(n + mm, s)});
  return BilinearTensor("bessel", Window::symmetric(2 * m), Window::symmetric(m), Window::symmetric(m),
                        std::move(e));
}

BilinearTensor tensor_diagonal(long m) {
  if (m < 2) throw DomainError("tensor_diagonal requires M >= 2");
  std::vector<BilinearTensor::Entry> e;
  for (long n = 1; n <= m; ++n) e.push_back({n, n, n, 1.0});
  return BilinearTensor("diagonal", Window::positive(m), Window::positive(m), Window::positive(m), std::move(e));
}

BilinearTensor gallery_tensor(const std::string& name, long m, double s) {
  if (name == "pairing") return tensor_pairing(m);
  if (name == "bessel") return tensor_bessel(m, s);
  if (name == "diagonal") return tensor_diagonal(m);
  throw DomainError("unknown gallery tensor '" + name + "' (expected pairing, bessel or diagonal)");
}

CoeffVector apply_tensor(const BilinearTensor& t, const CoeffVector& x, const CoeffVector& y) {
  require_size(x, t.in1_window(), "apply_tensor first slot");
  require_size(y, t.in2_window(), "apply_tensor second slot");
  CoeffVector out(t.out_window().size());
  const long lo_k = t.out_window().lo;
  const long lo_n = t.in1_window().lo;
  const long lo_m = t.in2_window().lo;
  for (const auto& e : t.entries())
    out[static_cast<std::size_t>(e.k - lo_k)] +=
        e.value * x[static_cast<std::size_t>(e.n - lo_n)] * y[static_cast<std::size_t>(e.m - lo_m)];
  return out;
}

BilinearTensor transpose1(const BilinearTensor& t) {
  std::vector<BilinearTensor::Entry> e;
  e.reserve(t.entries().size());
  for (const auto& x : t.entries()) e.push_back({x.n, x.k, x.m, x.value});
  return BilinearTensor(t.name() + "*1", t.in1_window(), t.out_window(), t.in2_window(), std::move(e));
}

BilinearTensor transpose2(const BilinearTensor& t) {
  std::vector<BilinearTensor::Entry> e;
  e.reserve(t.entries().size());
  for (const auto& x : t.entries()) e.push_back({x.m, x.n, x.k, x.value});
  return BilinearTensor(t.name() + "*2", t.in2_window(), t.in1_window(), t.out_window(), std::move(e));
}

SectionMatrix section_matrix(const BilinearTensor& t, Slot fixed_slot, const CoeffVector& fixed) {
  const Window& out = t.out_window();
  const Window& free_w = fixed_slot == Slot::first ? t.in2_window() : t.in1_window();
  require_size(fixed, fixed_slot == Slot::first ? t.in1_window() : t.in2_window(), "section_matrix");
  SectionMatrix s{out.size(), free_w.size(), std::vector<cplx>(out.size() * free_w.size())};
  for (const auto& e : t.entries()) {
    const std::size_t r = out.position(e.k);
    if (fixed_slot == Slot::first)
      s.data[r * s.cols + free_w.position(e.m)] += e.value * fixed[t.in1_window().position(e.n)];
    else
      s.data[r * s.cols + free_w.position(e.n)] += e.value * fixed[t.in2_window().position(e.m)];
  }
  return s;
}

NormEstimate estimate_bilinear_norm(const BilinearTensor& t, const NormOptions& opts) {
  if (opts.restarts < 1) throw DomainError("bilinear_norm requires restarts >= 1");
  NormEstimate best{0.0, t.in1_window().basis(t.in1_window().lo), t.in2_window().basis(t.in2_window().lo)};
  if (t.entries().empty()) return best;

  Rng rng(opts.seed);
  for (int r = 0; r < opts.restarts; ++r) {
    CoeffVector y = random_unit(t.in2_window().size(), rng);
    CoeffVector x;
    double previous = -1.0;
    double value = 0.0;
    for (int it = 0; it < opts.iterations; ++it) {
      x = top_right_singular_vector(section_matrix(t, Slot::second, y));
      y = top_right_singular_vector(section_matrix(t, Slot::first, x));
      value = l2_norm(apply_tensor(t, x, y));
      if (value - previous < opts.tolerance) break;
      previous = value;
    }
    if (value > best.value) best = {value, x, y};
  }
  return best;
}

double bilinear_norm(const BilinearTensor& t, int restarts) {
  NormOptions opts;
  opts.restarts = restarts;
  return estimate_bilinear_norm(t, opts).value;
}

double tail_norm(const BilinearTensor& t, std::size_t kept, int restarts) {
  return bilinear_norm(t.output_tail(kept), restarts);
}

std::vector<SectionRow> section_tail_profile(const BilinearTensor& t, Slot fixed_slot,
                                             const CoeffVector& fixed,
                                             const std::vector<std::size_t>& kept_list) {
  const SectionMatrix full = section_matrix(t, fixed_slot, fixed);
  const Window& out = t.out_window();
  std::vector<std::size_t> rank(out.size());
  for (std::size_t r = 0; r < out.size(); ++r) rank[r] = out.magnitude_rank(out.index_at(r));

  std::vector<SectionRow> rows;
  for (std::size_t kept : kept_list) {
    if (kept > out.size()) throw DomainError("section_tail_profile: truncation beyond output window");
    SectionMatrix s = full;
    for (std::size_t r = 0; r < s.rows; ++r)
      if (rank[r] < kept) std::fill_n(s.data.begin() + static_cast<std::ptrdiff_t>(r * s.cols), s.cols, cplx(0.0));
    Eigen::JacobiSVD<Matrix> svd(to_eigen(s));
    const auto sv = svd.singularValues();
    rows.push_back({kept, sv.size() > 0 ? sv(0) : 0.0});
  }
  return rows;
}

std::vector<SequenceRow> run_weak_null_sequence(const BilinearTensor& t, const SequenceSpec& seq,
                                                long n_max, const CoeffVector& x0, const CoeffVector& y0) {
  const Window& w1 = t.in1_window();
  const Window& w2 = t.in2_window();
  auto in_window = [](const Window& w, long k) {
    if (!w.contains(k))
      throw DomainError("sequence index " + std::to_string(k) + " overflows window [" + std::to_string(w.lo) +
                        ", " + std::to_string(w.hi) + "]");
    return w.basis(k);
  };
  if (seq.kind == SequenceKind::modulated || seq.kind == SequenceKind::constant) {
    require_size(x0, w1, "sequence base x0");
    require_size(y0, w2, "sequence base y0");
  }

  std::vector<SequenceRow> rows;
  for (long n = seq.first_index; n <= n_max; ++n) {
    CoeffVector x, y;
    switch (seq.kind) {
      case SequenceKind::parity_shift:
        x = in_window(w1, n);
        y = in_window(w2, -n + parity(n));
        break;
      case SequenceKind::basis_walk:
        x = in_window(w1, n);
        y = in_window(w2, n);
        break;
      case SequenceKind::modulated:
        x = seq.slots != Slots::second ? shifted(w1, x0, n) : x0;
        y = seq.slots != Slots::first ? shifted(w2, y0, n) : y0;
        break;
      case SequenceKind::constant:
        x = x0;
        y = y0;
        break;
    }
    CoeffVector out = apply_tensor(t, x, y);
    const double norm = l2_norm(out);
    std::string text = describe(t.out_window(), out);
    rows.push_back({n, std::move(out), std::move(text), norm});
  }
  return rows;
}

RellichTail rellich_tail(double s, long k) {
  if (!(s > 0.0)) throw DomainError("rellich_tail requires s > 0");
  if (k < 1) throw DomainError("rellich_tail requires K >= 1");
  const double formula = std::pow(1.0 + 4.0 * std::numbers::pi * std::numbers::pi *
                                            static_cast<double>(k) * static_cast<double>(k),
                                  -0.5 * s);
  // Embedding H^s -> L^2 in the orthonormal bases e_k / <k>^s and e_k is
  // diagonal with entries <k>^{-s}; restricted to |k| >= K its norm is the
  // largest surviving entry.
  const Window w = Window::symmetric(k + 8);
  double norm = 0.0;
  for (long j = w.lo; j <= w.hi; ++j)
    if (std::abs(j) >= k) norm = std::max(norm, bessel_weight(j, s));
  return {formula, norm};
}

std::string describe(const Window& w, const CoeffVector& v, double tol) {
  std::string text;
  for (std::size_t pos = 0; pos < v.size(); ++pos) {
    if (std::abs(v[pos]) <= tol) continue;
    if (!text.empty()) text += ';';
    text += std::to_string(w.index_at(pos)) + ':' + format_number(v[pos].real());
    if (v[pos].imag() != 0.0) text += (v[pos].imag() < 0 ? "" : "+") + format_number(v[pos].imag()) + 'i';
  }
  return text.empty() ? "0" : text;
}

}  // namespace paraprod

/**
 * @file compactness_lab.hpp
 * @brief Finite truncations of bilinear operators between sequence spaces.
 *
 * A BilinearTensor stores the coefficients T[k; n, m] = <T(e_n, e_m), e_k>
 * sparsely over three integer index windows. Coefficient vectors are laid
 * out by window position (index k - lo).
 *
 * Output truncations keep the "first K" output coordinates, where
 * coordinates are ordered by increasing |k| with k >= 0 first on ties:
 * 0, 1, -1, 2, -2, ... for symmetric windows and 1, 2, 3, ... for {1..M}.
 */

#ifndef PARAPROD_COMPACTNESS_LAB_HPP_INCLUDED_
#define PARAPROD_COMPACTNESS_LAB_HPP_INCLUDED_

#include <cstdint>
#include <string>
#include <vector>

#include "paraprod/fourier_core.hpp"
#include "paraprod/sequence.hpp"

namespace paraprod {

using CoeffVector = std::vector<cplx>;

/// Contiguous index range lo..hi.
struct Window {
  long lo = 0;
  long hi = 0;

  static Window symmetric(long m) { return {-m, m}; }
  static Window positive(long m) { return {1, m}; }

  std::size_t size() const { return static_cast<std::size_t>(hi - lo + 1); }
  bool contains(long k) const { return k >= lo && k <= hi; }
  std::size_t position(long k) const;
  long index_at(std::size_t pos) const { return lo + static_cast<long>(pos); }

  /// Rank of index k in the magnitude ordering used by output truncations.
  std::size_t magnitude_rank(long k) const;

  /// Unit coordinate vector at index k.
  CoeffVector basis(long k) const;

  friend bool operator==(const Window&, const Window&) = default;
};

class BilinearTensor {
 public:
  struct Entry {
    long k;  ///< output index
    long n;  ///< first input index
    long m;  ///< second input index
    cplx value;
  };

  /// Entries with equal (k, n, m) are summed; zeros are dropped.
  BilinearTensor(std::string name, Window out, Window in1, Window in2, std::vector<Entry> entries);

  const std::string& name() const noexcept { return name_; }
  const Window& out_window() const noexcept { return out_; }
  const Window& in1_window() const noexcept { return in1_; }
  const Window& in2_window() const noexcept { return in2_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  /// T[k; n, m] (0 for absent entries).
  cplx at(long k, long n, long m) const;

  /// Zeroes the first `kept` output coordinates (magnitude order).
  BilinearTensor output_tail(std::size_t kept) const;

 private:
  std::string name_;
  Window out_;
  Window in1_;
  Window in2_;
  std::vector<Entry> entries_;  // sorted by (k, n, m)
};

/// <x, y> = sum_k x_k y_k. The transposes satisfy
/// <T(x,y), z> = <T^{*1}(z,y), x> = <T^{*2}(x,z), y> under this bracket.
cplx coordinate_pairing(const CoeffVector& x, const CoeffVector& y);

double l2_norm(const CoeffVector& x);

/// Example: T(x, y) = integral of x y over the torus, scalar output.
BilinearTensor tensor_pairing(long m);

/// Example: T(x, y) = Bessel potential of order s applied to x y; output window {-2M..2M}.
BilinearTensor tensor_bessel(long m, double s);

/// Example: T(x, y) = (x_1 y_1, x_2 y_2, ...) on {1..M}.
BilinearTensor tensor_diagonal(long m);

/// Builds a gallery tensor by name: "pairing", "bessel", "diagonal".
BilinearTensor gallery_tensor(const std::string& name, long m, double s);

/// out[k] = sum_{n,m} T[k;n,m] x_n y_m.
CoeffVector apply_tensor(const BilinearTensor& t, const CoeffVector& x, const CoeffVector& y);

/// T^{*1}[n; k, m] = T[k; n, m]: slots (z, y) -> x-space.
BilinearTensor transpose1(const BilinearTensor& t);

/// T^{*2}[m; n, k] = T[k; n, m]: slots (x, z) -> y-space.
BilinearTensor transpose2(const BilinearTensor& t);

struct NormOptions {
  int restarts = 16;
  int iterations = 200;
  double tolerance = 1e-10;
  std::uint64_t seed = 0x5eedULL;
};

struct NormEstimate {
  double value;  ///< ||T(x, y)|| at the best unit pair found; a lower bound on ||T||
  CoeffVector x;
  CoeffVector y;
};

/// Alternating maximization of ||T(x, y)||_2 over unit x, y with random restarts.
NormEstimate estimate_bilinear_norm(const BilinearTensor& t, const NormOptions& opts = {});
double bilinear_norm(const BilinearTensor& t, int restarts = 16);

/// Norm of the tensor with the first `kept` output coordinates discarded.
/// kept may equal the output window size (result 0).
double tail_norm(const BilinearTensor& t, std::size_t kept, int restarts = 16);

/// Dense matrix of the section operator obtained by freezing one slot.
struct SectionMatrix {
  std::size_t rows = 0;  ///< output window size
  std::size_t cols = 0;  ///< free input window size
  std::vector<cplx> data;  // row-major
};

enum class Slot { first, second };

SectionMatrix section_matrix(const BilinearTensor& t, Slot fixed_slot, const CoeffVector& fixed);

struct SectionRow {
  std::size_t kept;
  double norm;  ///< largest singular value of the truncated section
};

std::vector<SectionRow> section_tail_profile(const BilinearTensor& t, Slot fixed_slot,
                                             const CoeffVector& fixed,
                                             const std::vector<std::size_t>& kept_list);

struct SequenceRow {
  long n;
  CoeffVector output;
  std::string description;  ///< nonzero output coefficients, "k:value" pairs
  double norm;
};

/// Exact outputs T(x_n, y_n), n = first_index..n_max. x0 and y0 are the
/// base vectors for modulated and constant kinds (ignored otherwise).
std::vector<SequenceRow> run_weak_null_sequence(const BilinearTensor& t, const SequenceSpec& seq,
                                                long n_max, const CoeffVector& x0 = {},
                                                const CoeffVector& y0 = {});

struct RellichTail {
  double formula_value;   ///< (1 + 4 pi^2 K^2)^{-s/2}
  double operator_value;  ///< norm of H^s -> L^2 restricted to |k| >= K
};

/// Tail of the Sobolev embedding; the tail starts at |k| = K.
RellichTail rellich_tail(double s, long k);

/// Printable form of nonzero coefficients, e.g. "0:1" or "1:0.157...".
std::string describe(const Window& w, const CoeffVector& v, double tol = 1e-15);

}  // namespace paraprod

#endif  // PARAPROD_COMPACTNESS_LAB_HPP_INCLUDED_

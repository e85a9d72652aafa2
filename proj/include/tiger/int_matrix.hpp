#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tiger {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;

// Error taxonomy shared with the C API / CLI exit-code contract.
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SearchExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense matrix of arbitrary-precision integers, row-major.
// Zero-row or zero-column matrices are valid and represent absent
// constraint blocks.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows,
                             std::size_t cols_if_empty = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntVec row(std::size_t i) const;
  void set_row(std::size_t i, const IntVec& v);
  void append_row(const IntVec& v);

  IntMatrix transposed() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& rhs) const = default;

  bool is_zero() const;
  // M * v^T
  IntVec apply(const IntVec& v) const;
  // v * M
  IntVec apply_left(const IntVec& v) const;

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  IntVec data_;
};

IntVec to_intvec(const std::vector<long>& v);
std::vector<long> to_longs(const IntVec& v);

// V * M * W = D with V, W unimodular and D diagonal, non-negative,
// d_i | d_{i+1}.  Inverse factors are accumulated alongside so callers can
// reconstruct M = Vinv * D * Winv without a separate inversion.
struct SmithForm {
  IntMatrix v, vinv, d, w, winv;
  std::size_t rank = 0;
  IntVec diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

// Row-style Hermite normal form U * M = H (echelon, positive pivots,
// entries above each pivot reduced into [0, pivot)).
struct HermiteForm {
  IntMatrix h, u;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
};

HermiteForm hermite_normal_form(const IntMatrix& m);

// Rows form a Hermite-reduced basis of {v : M v^T = 0}.
IntMatrix integer_kernel_basis(const IntMatrix& m);

struct RowImageWitness {
  bool member = false;
  IntVec coeffs;  // v = coeffs * M when member
};

// Membership of v in the integer row span of M, with witness.
RowImageWitness in_row_image(const IntMatrix& m, const IntVec& v);

// G * H^T == 0, dimensions checked.
bool check_css(const IntMatrix& g, const IntMatrix& h);

// Basis of the saturation {v : k*v in rowspace(M) for some k != 0}.
IntMatrix saturation(const IntMatrix& m);

// Z with B * Z^T = I; exists iff the rows of B span a saturated lattice.
std::optional<IntMatrix> dual_rows(const IntMatrix& b);

// Greedy lattice size reduction of v modulo the row span of basis
// (strict norm decrease only, deterministic sweep order).
void size_reduce_row(IntVec& v, const IntMatrix& basis);

// det of a square matrix (fraction-free Gaussian elimination).
Int determinant(const IntMatrix& m);

// True iff some non-negative real x != 0 satisfies M x = 0 (decided
// exactly with a rational phase-1 simplex).  By Gordan's alternative the
// negation is equivalent to a strictly positive vector in the row image.
bool has_nonneg_kernel_vector(const IntMatrix& m);

}  // namespace tiger

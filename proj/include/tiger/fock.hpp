#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "tiger/homology.hpp"
#include "tiger/int_matrix.hpp"

namespace tiger {

using Cplx = std::complex<double>;

// Ordered (lexicographic) basis of {n in N^N : H n = delta, |n|_1 <= n_max}.
struct FockSector {
  std::vector<std::vector<long>> h_rows;
  std::vector<long> delta;
  long n_max = 0;
  std::size_t modes = 0;
  std::vector<std::vector<int>> basis;

  std::optional<std::size_t> index_of(const std::vector<int>& n) const;
  bool empty() const { return basis.empty(); }
};

using SectorPtr = std::shared_ptr<const FockSector>;

SectorPtr enumerate_sector(const IntMatrix& h, const std::vector<long>& delta,
                           long n_max);

// Smallest cutoff whose unconstrained coherent tail
// sum_{s > n_max} S^s / s!  (S = mean total occupation) drops below
// rel_tol * e^S.
long default_cutoff(double mean_total_occupation, double rel_tol = 1e-12);

// Absolute Poisson-style tail bound sum_{s > n_max} S^s / s!.
double coherent_tail_bound(double s, long n_max);

struct StateVector {
  SectorPtr sector;
  std::vector<Cplx> amp;
  double truncation_tail = 0.0;  // bound on the dropped relative weight

  double norm2() const;
  double norm() const { return std::sqrt(norm2()); }
};

// Projected coherent state with per-mode value alpha * e^{-i mu z_j},
// normalized over the truncated basis.
StateVector build_x_codeword(SectorPtr sector, const std::vector<long>& z,
                             double mu, double alpha);

// Z-type basis state on the sub-sector z.n = ell (mod K when K >= 2,
// exactly when K == 0 for infinite-dimensional factors).  Throws
// PreconditionViolation when the sub-sector is empty.
StateVector build_z_codeword(SectorPtr sector, const std::vector<long>& z,
                             long ell, long modulus, double alpha);

// Number of basis states with z.n = ell (mod K / exactly); lets callers
// probe for empty sub-sectors (mode-like factors) without throwing.
std::size_t z_sector_size(const FockSector& sector, const std::vector<long>& z,
                          long ell, long modulus);

// Distinguishes mode-like free factors (inner products z.n bounded on one
// side, with a stable extreme under cutoff growth) from rotor-like ones.
enum class FreeFactorKind { ModeLike, RotorLike };
FreeFactorKind classify_free_factor(const IntMatrix& h,
                                    const std::vector<long>& delta,
                                    const std::vector<long>& z, long n_max);

// a^dag^q a^p applied componentwise; the result lives in the sector with
// syndrome delta - H (p - q) and is not renormalized.
StateVector apply_loss_gain(const StateVector& state,
                            const std::vector<long>& p,
                            const std::vector<long>& q);

// <bra| a^dag^q a^p |ket> by direct summation over the ket basis.
Cplx matrix_element(const StateVector& bra, const std::vector<long>& p,
                    const std::vector<long>& q, const StateVector& ket);

// || (a^dag^q a^p - alpha^{|p|-|q|} (n)_q) |state> ||  for g = p - q.
double verify_dissipator(const StateVector& state, const IntVec& g_row,
                         double alpha);

// Diagonal polynomial with exact rational coefficients; per-coordinate
// factors are plain powers n^e or falling factorials (n)_e.
struct DiagonalPolynomial {
  struct Term {
    Rat coeff;
    std::vector<int> expo;
    std::vector<bool> falling;  // empty means all plain powers
  };
  std::vector<Term> terms;

  Rat eval(const std::vector<int>& n) const;
  double eval_d(const std::vector<int>& n) const;

  static DiagonalPolynomial linear_form(const std::vector<long>& z);
  static DiagonalPolynomial squared_linear_form(const std::vector<long>& z);
};

// amp(n) -> e^{i angle_scale * poly(n)} amp(n)
StateVector apply_diagonal_gate(const StateVector& state,
                                const DiagonalPolynomial& poly,
                                double angle_scale);

// One ladder term beta(n) * a^dag^w a^v of a finite-support logical X,
// with beta = alpha^{alpha_power} * poly(n) evaluated at the output label.
struct LogicalXTerm {
  IntVec x;  // v - w
  std::vector<long> v, w;
  DiagonalPolynomial poly;
  long alpha_power = 0;
};

struct LogicalXOperator {
  bool found = false;
  std::vector<LogicalXTerm> terms;
  int degree_bound = 0;
};

// Solves for occupation-polynomial coefficients (degree <= degree_bound)
// over representatives x + m G with |m|_1 <= shift_bound such that the
// resulting operator acts as the logical X on the finite sector.
LogicalXOperator solve_finite_logical_x(const GeneratorPair& code,
                                        const IntVec& x,
                                        const FockSector& sector,
                                        int degree_bound = 2,
                                        long shift_bound = 2);

StateVector apply_logical_x(const LogicalXOperator& op,
                            const StateVector& state, double alpha);

}  // namespace tiger

#pragma once

#include <complex>
#include <vector>

#include "tiger/fock.hpp"
#include "tiger/int_matrix.hpp"

namespace tiger {

// A_delta(y) = sum over {H n = delta} of y^n / n!
struct GkzSpec {
  IntMatrix h;
  std::vector<long> delta;
  std::vector<Cplx> y;
};

struct GkzValue {
  Cplx value{0.0, 0.0};
  double tail_bound = 0.0;      // bound on the dropped |y|-weighted tail
  double abs_sum = 0.0;         // sum of term magnitudes actually added
  bool cancellation_suspect = false;
  std::size_t terms = 0;
};

// Constrained summation with |n|_1 <= n_max.  The unconstrained case
// (no H rows) factorizes into per-mode exponential partial sums.
GkzValue gkz_sum(const GkzSpec& spec, long n_max);

// Uniform torus grid (trapezoidal, spectrally accurate) with grid_m points
// per dimension; refuses more than three torus dimensions unless forced.
Cplx gkz_integral(const GkzSpec& spec, int grid_m, bool allow_high_dim = false);

// Kernel-shifted form sum_{n in ker H, n + s >= 0} y^{n+s}/(n+s)! with the
// kernel lattice enumerated up to coefficient radius in each basis
// direction; valid when H s = delta.
Cplx gkz_kernel_shifted(const GkzSpec& spec, const std::vector<long>& s,
                        long radius);

enum class GkzFamily {
  PairCat,          // one charge constraint, two modes
  ExtendedPairCat,  // chain of difference constraints
  FourModeTiger,
  TwoModeBinomial,
  Multinomial,
  Chi2,
  Liger,
  Exponential,  // no constraint
};

// Reference evaluations through one-dimensional series reductions; these
// are the oracles for gkz_sum.
Cplx closed_form(GkzFamily family, const std::vector<long>& delta,
                 const std::vector<Cplx>& y);

double modified_bessel_i(long nu, double x);
double laguerre_l(long n, long a, double x);
Cplx hyp0f_ones(int q, Cplx arg);  // 0F_q(; 1..1; arg) = sum arg^k/(k!)^{q+1}

struct DephasingElement {
  Cplx value{0.0, 0.0};
  GkzValue numerator, denominator;
};

// alpha^{2|p|} A_{delta - Hp}(alpha^2 e^{i(mu-nu) z}) / A_delta(alpha^2 1)
DephasingElement dephasing_via_gkz(const IntMatrix& h,
                                   const std::vector<long>& delta,
                                   const std::vector<long>& z, double mu,
                                   double nu, const std::vector<long>& p,
                                   double alpha, long n_max);

// e^{N alpha^2} (2 pi alpha^2)^{-r_z/2} det(H H^T)^{-1/2}; requires the
// all-ones vector in ker H and full row rank.
double saddle_normalization(const IntMatrix& h, double alpha);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

// Least-squares fit of log |element|^2 against alpha^2 on the given grid.
SlopeFit dephasing_slope_fit(const IntMatrix& h,
                             const std::vector<long>& delta,
                             const std::vector<long>& z, double mu, double nu,
                             const std::vector<long>& p,
                             const std::vector<double>& alpha_sq_grid,
                             long n_max);

SlopeFit least_squares_line(const std::vector<double>& xs,
                            const std::vector<double>& ys);

}  // namespace tiger

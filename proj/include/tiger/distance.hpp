#pragma once

#include <optional>
#include <vector>

#include "tiger/homology.hpp"
#include "tiger/int_matrix.hpp"

namespace tiger {

enum class ErrorClass { Detectable, Trivial, Logical };

// p, q are non-negative loss/gain exponent vectors; the product operator
// carries the error vector p - q.
ErrorClass classify_error(const GeneratorPair& code, const std::vector<long>& p,
                          const std::vector<long>& q);

struct XDistanceResult {
  enum class Status { Found, ExceedsBound, Undefined };
  Status status = Status::Undefined;
  long value = 0;
  std::vector<long> witness;
  long bound = 0;
};

long default_x_search_bound(const GeneratorPair& code);

// Exhaustive search over ker H in increasing one-norm shells; witnesses are
// sign-canonicalized (first nonzero entry positive) with lexicographic
// tie-breaking inside a shell.
XDistanceResult x_distance(const GeneratorPair& code,
                           const LogicalStructure& structure, long bound = 0);

struct LossDetectionResult {
  long t_max = 0;
  bool capped = false;
  long bound = 0;
  std::vector<long> first_undetectable;  // empty when capped
};

// Largest t such that every non-negative p with 0 < |p|_1 <= t has H p != 0.
LossDetectionResult pure_loss_detection_limit(const GeneratorPair& code,
                                              long bound);

struct TorusOptimizerConfig {
  int grid_points = 0;  // 0: 8 for r_z <= 3, 4 for r_z <= 6, 3 for r_z <= 8
  bool allow_high_dim = false;
  int high_dim_grid = 2;
  double grad_tol = 1e-10;
  int max_iterations = 50000;
  int threads = 1;
};

struct ZDistanceResult {
  double value = 0.0;
  double mu = 0.0;  // logical angle at the optimum
  std::vector<double> phi;
  int starts = 0;
  int converged = 0;
};

// min over mu in {2 pi k / K : k = 1..K-1} and phi in T^{r_z} of
// || 1 - e^{i (phi H + mu z)} ||^2, by multistart damped gradient descent.
ZDistanceResult z_distance_qudit(const GeneratorPair& code, const IntVec& z,
                                 const Int& order,
                                 const TorusOptimizerConfig& cfg = {});

// Same objective at a fixed logical angle.
ZDistanceResult z_distance_continuous(const GeneratorPair& code,
                                      const IntVec& z, double phi_logical,
                                      const TorusOptimizerConfig& cfg = {});

// Minimum of the torus objective for a fixed offset vector c:
// min_phi 4 sum_j sin^2((phi H + c)_j / 2).  Exposed for property tests.
ZDistanceResult minimize_torus_objective(const IntMatrix& h,
                                         const std::vector<double>& offset,
                                         const TorusOptimizerConfig& cfg = {});

}  // namespace tiger

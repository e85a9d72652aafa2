#pragma once

#include <optional>
#include <vector>

#include "tiger/int_matrix.hpp"

namespace tiger {

// A CSS-valid pair of generator matrices on N modes.  finite_support is
// true when a strictly positive vector lies in the rational row image of
// H, i.e. every syndrome sector holds finitely many Fock states.
struct GeneratorPair {
  IntMatrix g, h;
  std::size_t modes = 0;
  bool finite_support = false;
};

// Validates G * H^T = 0 (naming the first offending row pair on failure)
// and classifies the Fock-state support.
GeneratorPair make_generator_pair(IntMatrix g, IntMatrix h);

enum class FactorKind { Torsion, Free };

struct LogicalFactor {
  FactorKind kind;
  Int order;  // K >= 2 for torsion factors, 0 for free factors
};

// Structure of ker H / im G: one row of l_x and l_z per factor, torsion
// factors first in ascending order, then free factors.
struct LogicalStructure {
  std::size_t free_rank = 0;
  IntVec torsion_orders;
  IntMatrix l_x, l_z;
  std::vector<LogicalFactor> factors;
};

LogicalStructure logical_structure(const GeneratorPair& code);

// Replaces each row x by a non-negative representative x + m G found by a
// breadth-first search over shift vectors with |m|_1 <= shift_bound.
// Returns nullopt when some row admits no representative in the searched
// range; only meaningful for infinite-support codes.
std::optional<IntMatrix> canonicalize_nonnegative_lx(const GeneratorPair& code,
                                                     const IntMatrix& l_x,
                                                     long shift_bound = 8);

}  // namespace tiger

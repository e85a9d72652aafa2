#include "tiger/homology.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

namespace tiger {

GeneratorPair make_generator_pair(IntMatrix g, IntMatrix h) {
  if (g.cols() == 0 && h.cols() != 0) g = IntMatrix(0, h.cols());
  if (h.cols() == 0 && g.cols() != 0) h = IntMatrix(0, g.cols());
  if (g.cols() != h.cols())
    throw InvalidInput("G and H must act on the same number of modes");
  if (g.rows() > 0 && h.rows() > 0) {
    IntMatrix prod = g * h.transposed();
    for (std::size_t i = 0; i < prod.rows(); ++i)
      for (std::size_t j = 0; j < prod.cols(); ++j)
        if (prod(i, j) != 0) {
          std::ostringstream os;
          os << "CSS condition violated: G row " << i << " . H row " << j
             << " = " << prod(i, j).get_str();
          throw InvalidInput(os.str());
        }
  }
  GeneratorPair out;
  out.modes = g.cols();
  out.finite_support = !has_nonneg_kernel_vector(h);
  out.g = std::move(g);
  out.h = std::move(h);
  return out;
}

LogicalStructure logical_structure(const GeneratorPair& code) {
  const std::size_t n = code.modes;
  LogicalStructure out;

  IntMatrix ker_h = integer_kernel_basis(code.h);  // k x N
  const std::size_t k = ker_h.rows();

  // Torsion generators: rows of Winv (for V G W = D) whose invariant
  // factor is >= 2; d_i * w_i is an integer combination of the rows of G.
  std::vector<std::pair<Int, IntVec>> torsion;
  std::size_t rank_g = 0;
  IntMatrix torsion_span(0, n);  // rows with d_i >= 1, a basis of sat(im G)
  if (code.g.rows() > 0) {
    SmithForm sg = smith_normal_form(code.g);
    rank_g = sg.rank;
    for (std::size_t i = 0; i < sg.rank; ++i) {
      IntVec w = sg.winv.row(i);
      torsion_span.append_row(w);
      if (sg.d(i, i) >= 2) torsion.emplace_back(sg.d(i, i), w);
    }
  }

  // Free generators: a basis of ker H / sat(im G), found by quotienting in
  // kernel coordinates.  Saturation keeps the quotient torsion-free: with
  // C = coords of sat(im G) in the kernel basis and V C W = D (all d_i = 1),
  // the trailing rows of Winv complete rowspan(C) to a basis of Z^k.
  std::vector<IntVec> free_gens;
  if (k > rank_g) {
    if (rank_g == 0) {
      for (std::size_t i = 0; i < k; ++i) free_gens.push_back(ker_h.row(i));
    } else {
      IntMatrix coords(0, k);
      for (std::size_t i = 0; i < torsion_span.rows(); ++i) {
        RowImageWitness w = in_row_image(ker_h, torsion_span.row(i));
        if (!w.member)
          throw std::logic_error("saturated image of G escapes ker H");
        coords.append_row(w.coeffs);
      }
      SmithForm sc = smith_normal_form(coords);
      for (std::size_t i = sc.rank; i < k; ++i)
        free_gens.push_back(ker_h.apply_left(sc.winv.row(i)));
    }
  }

  // Dual rows: solve B Z^T = I over the full kernel basis so each logical
  // z pairs 1 with its own x and 0 with every other kernel generator.
  IntMatrix basis = torsion_span;
  for (const IntVec& f : free_gens) basis.append_row(f);
  if (basis.rows() != k)
    throw std::logic_error("kernel basis assembly rank mismatch");
  std::optional<IntMatrix> dual = dual_rows(basis);
  if (basis.rows() > 0 && !dual)
    throw std::logic_error("kernel basis is not saturated");

  IntMatrix sat_h = saturation(code.h);
  out.l_x = IntMatrix(0, n);
  out.l_z = IntMatrix(0, n);
  std::size_t torsion_row = 0;
  for (std::size_t i = 0; i < torsion_span.rows(); ++i) {
    if (torsion_row < torsion.size() &&
        torsion_span.row(i) == torsion[torsion_row].second) {
      const Int& order = torsion[torsion_row].first;
      IntVec z = dual->row(i);
      size_reduce_row(z, sat_h);
      out.l_x.append_row(torsion_span.row(i));
      out.l_z.append_row(z);
      out.factors.push_back({FactorKind::Torsion, order});
      out.torsion_orders.push_back(order);
      ++torsion_row;
    }
  }
  for (std::size_t i = 0; i < free_gens.size(); ++i) {
    IntVec z = dual->row(torsion_span.rows() + i);
    size_reduce_row(z, sat_h);
    out.l_x.append_row(free_gens[i]);
    out.l_z.append_row(z);
    out.factors.push_back({FactorKind::Free, Int(0)});
  }
  out.free_rank = free_gens.size();

  // Invariants: every logical x in ker H, pairing identity, and the
  // modular/exact constraints on z rows.
  const std::size_t nf = out.factors.size();
  if (code.h.rows() > 0 && nf > 0)
    assert((code.h * out.l_x.transposed()).is_zero());
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = 0; j < nf; ++j) {
      Int dot = 0;
      for (std::size_t c = 0; c < n; ++c) dot += out.l_x(i, c) * out.l_z(j, c);
      if (dot != (i == j ? 1 : 0))
        throw std::logic_error("logical pairing is not the identity");
    }
  for (std::size_t j = 0; j < nf; ++j) {
    if (code.g.rows() == 0) continue;
    IntVec gz = code.g.apply(out.l_z.row(j));
    for (const Int& e : gz) {
      if (out.factors[j].kind == FactorKind::Free) {
        if (e != 0) throw std::logic_error("free z row not in ker G");
      } else if (e % out.factors[j].order != 0) {
        throw std::logic_error("torsion z row violates mod-K constraint");
      }
    }
  }
  return out;
}

std::optional<IntMatrix> canonicalize_nonnegative_lx(const GeneratorPair& code,
                                                     const IntMatrix& l_x,
                                                     long shift_bound) {
  if (code.finite_support)
    throw PreconditionViolation(
        "non-negative representatives exist only for infinite-support codes");
  const std::size_t rx = code.g.rows();
  IntMatrix out(0, code.modes);
  for (std::size_t row = 0; row < l_x.rows(); ++row) {
    IntVec x = l_x.row(row);
    bool found = false;
    // breadth-first over shift one-norm, lexicographic within a shell
    std::vector<long> m(rx, 0);
    auto nonneg = [&](const IntVec& v) {
      return std::all_of(v.begin(), v.end(),
                         [](const Int& e) { return e >= 0; });
    };
    for (long shell = 0; shell <= shift_bound && !found; ++shell) {
      // enumerate m with |m|_1 == shell
      std::vector<long> stack;
      std::function<void(std::size_t, long)> rec = [&](std::size_t idx,
                                                       long left) {
        if (found) return;
        if (idx == rx) {
          if (left != 0) return;
          IntVec cand = x;
          for (std::size_t i = 0; i < rx; ++i) {
            if (stack[i] == 0) continue;
            for (std::size_t j = 0; j < code.modes; ++j)
              cand[j] += Int(stack[i]) * code.g(i, j);
          }
          if (nonneg(cand)) {
            out.append_row(cand);
            found = true;
          }
          return;
        }
        for (long v = -left; v <= left && !found; ++v) {
          stack.push_back(v);
          rec(idx + 1, left - std::abs(v));
          stack.pop_back();
        }
      };
      if (rx == 0) {
        if (shell == 0 && nonneg(x)) {
          out.append_row(x);
          found = true;
        }
        continue;
      }
      stack.clear();
      rec(0, shell);
    }
    if (!found) return std::nullopt;
  }
  return out;
}

}  // namespace tiger

#include "tiger/int_matrix.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace tiger {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows,
                               std::size_t cols_if_empty) {
  if (rows.empty()) return IntMatrix(0, cols_if_empty);
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw InvalidInput("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVec IntMatrix::row(std::size_t i) const {
  IntVec v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

void IntMatrix::set_row(std::size_t i, const IntVec& v) {
  assert(v.size() == cols_);
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

void IntMatrix::append_row(const IntVec& v) {
  if (rows_ == 0 && cols_ == 0) cols_ = v.size();
  assert(v.size() == cols_);
  data_.insert(data_.end(), v.begin(), v.end());
  ++rows_;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidInput("matrix product shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Int& x) { return x == 0; });
}

IntVec IntMatrix::apply(const IntVec& v) const {
  if (v.size() != cols_) throw InvalidInput("apply: length mismatch");
  IntVec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

IntVec IntMatrix::apply_left(const IntVec& v) const {
  if (v.size() != rows_) throw InvalidInput("apply_left: length mismatch");
  IntVec out(cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < cols_; ++j) out[j] += v[i] * (*this)(i, j);
  }
  return out;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "[");
    for (std::size_t j = 0; j < cols_; ++j)
      os << (j ? " " : "") << (*this)(i, j).get_str();
  }
  os << "]";
  return os.str();
}

IntVec to_intvec(const std::vector<long>& v) {
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

std::vector<long> to_longs(const IntVec& v) {
  std::vector<long> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].fits_slong_p()) throw InvalidInput("integer too large for long");
    out[i] = v[i].get_si();
  }
  return out;
}

IntVec SmithForm::diagonal() const {
  std::size_t n = std::min(d.rows(), d.cols());
  IntVec out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = d(i, i);
  return out;
}

namespace {

// Elementary row/column operations applied consistently to the working
// matrix and the accumulated unimodular factors plus their inverses.
struct SnfWork {
  IntMatrix a, v, vinv, w, winv;

  void row_swap(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(i, j), a(k, j));
    for (std::size_t j = 0; j < v.cols(); ++j) std::swap(v(i, j), v(k, j));
    for (std::size_t r = 0; r < vinv.rows(); ++r)
      std::swap(vinv(r, i), vinv(r, k));
  }
  void row_axpy(std::size_t i, std::size_t k, const Int& q) {
    // row_i -= q * row_k
    if (q == 0) return;
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= q * a(k, j);
    for (std::size_t j = 0; j < v.cols(); ++j) v(i, j) -= q * v(k, j);
    for (std::size_t r = 0; r < vinv.rows(); ++r)
      vinv(r, k) += q * vinv(r, i);
  }
  void row_negate(std::size_t i) {
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = -a(i, j);
    for (std::size_t j = 0; j < v.cols(); ++j) v(i, j) = -v(i, j);
    for (std::size_t r = 0; r < vinv.rows(); ++r) vinv(r, i) = -vinv(r, i);
  }
  void col_swap(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, k));
    for (std::size_t r = 0; r < w.rows(); ++r) std::swap(w(r, i), w(r, k));
    for (std::size_t j = 0; j < winv.cols(); ++j)
      std::swap(winv(i, j), winv(k, j));
  }
  void col_axpy(std::size_t j, std::size_t k, const Int& q) {
    // col_j -= q * col_k
    if (q == 0) return;
    for (std::size_t r = 0; r < a.rows(); ++r) a(r, j) -= q * a(r, k);
    for (std::size_t r = 0; r < w.rows(); ++r) w(r, j) -= q * w(r, k);
    for (std::size_t c = 0; c < winv.cols(); ++c)
      winv(k, c) += q * winv(j, c);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  SnfWork work{m, IntMatrix::identity(r), IntMatrix::identity(r),
               IntMatrix::identity(c), IntMatrix::identity(c)};
  IntMatrix& a = work.a;

  std::size_t t = 0;
  const std::size_t lim = std::min(r, c);
  while (t < lim) {
    // pivot: smallest nonzero magnitude in the trailing submatrix
    std::size_t pi = r, pj = c;
    Int best;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j) {
        if (a(i, j) == 0) continue;
        Int mag = abs(a(i, j));
        if (pi == r || mag < best) {
          best = mag;
          pi = i;
          pj = j;
        }
      }
    if (pi == r) break;  // trailing block is zero
    work.row_swap(t, pi);
    work.col_swap(t, pj);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      // clear column t
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        work.row_axpy(i, t, q);
        if (a(i, t) != 0) {  // remainder becomes the smaller pivot
          work.row_swap(t, i);
          dirty = true;
        }
      }
      // clear row t
      for (std::size_t j = t + 1; j < c; ++j) {
        if (a(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        work.col_axpy(j, t, q);
        if (a(t, j) != 0) {
          work.col_swap(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // enforce divisibility of the trailing block by the pivot
      for (std::size_t i = t + 1; i < r && !dirty; ++i)
        for (std::size_t j = t + 1; j < c && !dirty; ++j)
          if (a(i, j) % a(t, t) != 0) {
            work.row_axpy(t, i, Int(-1));  // row_t += row_i
            dirty = true;
          }
    }
    if (a(t, t) < 0) work.row_negate(t);
    ++t;
  }

  SmithForm out;
  out.v = std::move(work.v);
  out.vinv = std::move(work.vinv);
  out.w = std::move(work.w);
  out.winv = std::move(work.winv);
  out.d = std::move(work.a);
  out.rank = 0;
  for (std::size_t i = 0; i < lim; ++i)
    if (out.d(i, i) != 0) ++out.rank;
  assert(out.v * m * out.w == out.d);
  assert(out.v * out.vinv == IntMatrix::identity(r));
  assert(out.winv * out.w == IntMatrix::identity(c));
  return out;
}

HermiteForm hermite_normal_form(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  IntMatrix h = m, u = IntMatrix::identity(r);

  auto row_swap = [&](std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < c; ++j) std::swap(h(i, j), h(k, j));
    for (std::size_t j = 0; j < r; ++j) std::swap(u(i, j), u(k, j));
  };
  auto row_axpy = [&](std::size_t i, std::size_t k, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < c; ++j) h(i, j) -= q * h(k, j);
    for (std::size_t j = 0; j < r; ++j) u(i, j) -= q * u(k, j);
  };
  auto row_negate = [&](std::size_t i) {
    for (std::size_t j = 0; j < c; ++j) h(i, j) = -h(i, j);
    for (std::size_t j = 0; j < r; ++j) u(i, j) = -u(i, j);
  };

  HermiteForm out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    // gcd-reduce entries below into the pivot position
    while (true) {
      std::size_t pi = r;
      Int best;
      for (std::size_t i = row; i < r; ++i) {
        if (h(i, col) == 0) continue;
        Int mag = abs(h(i, col));
        if (pi == r || mag < best) {
          best = mag;
          pi = i;
        }
      }
      if (pi == r) break;
      row_swap(row, pi);
      bool any = false;
      for (std::size_t i = row + 1; i < r; ++i) {
        if (h(i, col) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(),
                   h(row, col).get_mpz_t());
        row_axpy(i, col, q);
        if (h(i, col) != 0) any = true;
      }
      if (!any) break;
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) row_negate(row);
    // reduce entries above the pivot into [0, pivot)
    for (std::size_t i = 0; i < row; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(row, col).get_mpz_t());
      row_axpy(i, col, q);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.rank = row;
  out.h = std::move(h);
  out.u = std::move(u);
  return out;
}

IntMatrix integer_kernel_basis(const IntMatrix& m) {
  if (m.rows() == 0) return IntMatrix::identity(m.cols());
  SmithForm s = smith_normal_form(m);
  const std::size_t c = m.cols();
  IntMatrix raw(c - s.rank, c);
  for (std::size_t k = s.rank; k < c; ++k)
    for (std::size_t i = 0; i < c; ++i) raw(k - s.rank, i) = s.w(i, k);
  HermiteForm hf = hermite_normal_form(raw);
  IntMatrix out(raw.rows(), c);
  for (std::size_t i = 0; i < raw.rows(); ++i)
    out.set_row(i, hf.h.row(i));
  assert((m.rows() == 0 || (m * out.transposed()).is_zero()));
  return out;
}

RowImageWitness in_row_image(const IntMatrix& m, const IntVec& v) {
  if (v.size() != m.cols()) throw InvalidInput("in_row_image: length mismatch");
  RowImageWitness out;
  if (m.rows() == 0) {
    out.member = std::all_of(v.begin(), v.end(),
                             [](const Int& x) { return x == 0; });
    return out;
  }
  HermiteForm hf = hermite_normal_form(m);
  IntVec resid = v;
  IntVec t(m.rows());
  for (std::size_t i = 0; i < hf.rank; ++i) {
    std::size_t col = hf.pivot_cols[i];
    const Int& piv = hf.h(i, col);
    if (resid[col] % piv != 0) return out;  // not a member
    Int q = resid[col] / piv;
    t[i] = q;
    if (q != 0)
      for (std::size_t j = 0; j < m.cols(); ++j) resid[j] -= q * hf.h(i, j);
  }
  if (!std::all_of(resid.begin(), resid.end(),
                   [](const Int& x) { return x == 0; }))
    return out;
  out.member = true;
  out.coeffs = hf.u.apply_left(t);
  assert(m.apply_left(out.coeffs) == v);
  return out;
}

bool check_css(const IntMatrix& g, const IntMatrix& h) {
  if (g.cols() != h.cols())
    throw InvalidInput("check_css: G and H have different mode counts");
  if (g.rows() == 0 || h.rows() == 0) return true;
  return (g * h.transposed()).is_zero();
}

IntMatrix saturation(const IntMatrix& m) {
  return integer_kernel_basis(integer_kernel_basis(m));
}

std::optional<IntMatrix> dual_rows(const IntMatrix& b) {
  const std::size_t k = b.rows(), c = b.cols();
  if (k == 0) return IntMatrix(0, c);
  SmithForm s = smith_normal_form(b);
  if (s.rank != k) return std::nullopt;
  for (std::size_t i = 0; i < k; ++i)
    if (s.d(i, i) != 1) return std::nullopt;  // not saturated
  // B = Vinv D Winv with D = [I 0]  =>  Z^T = W[:, :k] V solves B Z^T = I.
  IntMatrix zt(c, k);
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Int acc = 0;
      for (std::size_t l = 0; l < k; ++l) acc += s.w(i, l) * s.v(l, j);
      zt(i, j) = acc;
    }
  IntMatrix z = zt.transposed();
  assert(b * z.transposed() == IntMatrix::identity(k));
  return z;
}

void size_reduce_row(IntVec& v, const IntMatrix& basis) {
  if (basis.rows() == 0) return;
  auto norm2 = [](const IntVec& x) {
    Int s = 0;
    for (const Int& e : x) s += e * e;
    return s;
  };
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i < basis.rows(); ++i) {
      IntVec b = basis.row(i);
      Int bb = 0, vb = 0;
      for (std::size_t j = 0; j < v.size(); ++j) {
        bb += b[j] * b[j];
        vb += v[j] * b[j];
      }
      if (bb == 0) continue;
      // nearest integer to vb/bb
      Int num = 2 * vb + bb, den = 2 * bb, q;
      mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      if (q == 0) continue;
      IntVec cand = v;
      for (std::size_t j = 0; j < v.size(); ++j) cand[j] -= q * b[j];
      if (norm2(cand) < norm2(v)) {
        v = std::move(cand);
        improved = true;
      }
    }
  }
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant: not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = num / prev;  // exact division
      }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

namespace {

// Phase-1 simplex with Bland's rule over exact rationals; decides
// feasibility of {A x = b, x >= 0}.
bool lp_feasible(std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
  const std::size_t m = a.size();
  if (m == 0) return true;
  const std::size_t n = a[0].size();
  for (std::size_t i = 0; i < m; ++i)
    if (b[i] < 0) {
      for (auto& x : a[i]) x = -x;
      b[i] = -b[i];
    }
  // tableau columns: n structural + m artificial, last col = rhs
  const std::size_t total = n + m;
  std::vector<std::vector<Rat>> t(m, std::vector<Rat>(total + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1;
    t[i][total] = b[i];
    basis[i] = n + i;
  }
  // objective: minimize sum of artificials; reduced-cost row
  std::vector<Rat> z(total + 1);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= total; ++j) z[j] += t[i][j];
  for (std::size_t i = 0; i < m; ++i) z[n + i] = 0;

  while (true) {
    std::size_t enter = total;
    for (std::size_t j = 0; j < total; ++j)
      if (z[j] > 0) {  // improves (decreases) the artificial sum
        enter = j;
        break;  // Bland: smallest index
      }
    if (enter == total) break;
    std::size_t leave = m;
    Rat best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][total] / t[i][enter];
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave == m) break;  // unbounded cannot happen in phase 1
    Rat piv = t[leave][enter];
    for (std::size_t j = 0; j <= total; ++j) t[leave][j] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (std::size_t j = 0; j <= total; ++j) t[i][j] -= f * t[leave][j];
    }
    Rat f = z[enter];
    for (std::size_t j = 0; j <= total; ++j) z[j] -= f * t[leave][j];
    basis[leave] = enter;
  }
  return z[total] == 0;  // all artificials driven to zero
}

}  // namespace

bool has_nonneg_kernel_vector(const IntMatrix& m) {
  const std::size_t n = m.cols();
  if (n == 0) return false;
  if (m.rows() == 0) return true;
  // feasibility of { M x = 0, sum x = 1, x >= 0 }
  std::vector<std::vector<Rat>> a(m.rows() + 1, std::vector<Rat>(n));
  std::vector<Rat> b(m.rows() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(m(i, j));
  for (std::size_t j = 0; j < n; ++j) a[m.rows()][j] = 1;
  b[m.rows()] = 1;
  return lp_feasible(std::move(a), std::move(b));
}

}  // namespace tiger

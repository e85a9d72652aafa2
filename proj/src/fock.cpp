#include "tiger/fock.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

namespace tiger {

namespace {

double lg_fact(long n) {
  static thread_local std::vector<double> cache{0.0, 0.0};
  while ((long)cache.size() <= n)
    cache.push_back(cache.back() + std::log((double)(cache.size() - 1) + 1.0));
  return cache[n];
}

// (n)_k = n (n-1) ... (n-k+1), exact in double for desk-scale arguments
double falling_d(long n, long k) {
  double f = 1.0;
  for (long j = 0; j < k; ++j) f *= (double)(n - j);
  return f;
}

struct KahanC {
  Cplx sum{0.0, 0.0};
  Cplx c{0.0, 0.0};
  void add(Cplx v) {
    Cplx y = v - c;
    Cplx t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

std::vector<long> long_rows_entry(const IntMatrix& h, std::size_t i,
                                  std::size_t n) {
  std::vector<long> row(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!h(i, j).fits_slong_p())
      throw InvalidInput("generator entry too large for sector enumeration");
    row[j] = h(i, j).get_si();
  }
  return row;
}

}  // namespace

std::optional<std::size_t> FockSector::index_of(
    const std::vector<int>& n) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), n);
  if (it == basis.end() || *it != n) return std::nullopt;
  return (std::size_t)(it - basis.begin());
}

SectorPtr enumerate_sector(const IntMatrix& h, const std::vector<long>& delta,
                           long n_max) {
  if (n_max < 0) throw InvalidInput("enumerate_sector: negative cutoff");
  if (delta.size() != h.rows())
    throw InvalidInput("enumerate_sector: delta length != rows(H)");
  auto sec = std::make_shared<FockSector>();
  sec->modes = h.cols();
  sec->delta = delta;
  sec->n_max = n_max;
  const std::size_t n = h.cols(), r = h.rows();
  for (std::size_t i = 0; i < r; ++i)
    sec->h_rows.push_back(long_rows_entry(h, i, n));

  // per (row, suffix) extreme coefficients for interval pruning
  std::vector<std::vector<long>> maxpos(r, std::vector<long>(n + 1, 0));
  std::vector<std::vector<long>> minneg(r, std::vector<long>(n + 1, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = n; j-- > 0;) {
      maxpos[i][j] = std::max(maxpos[i][j + 1], sec->h_rows[i][j]);
      minneg[i][j] = std::min(minneg[i][j + 1], sec->h_rows[i][j]);
    }

  std::vector<int> cur(n, 0);
  std::vector<long> partial(r, 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t j, long budget) {
    for (std::size_t i = 0; i < r; ++i) {
      long need = delta[i] - partial[i];
      if (need < budget * minneg[i][j] || need > budget * maxpos[i][j]) return;
    }
    if (j == n) {
      sec->basis.push_back(cur);
      return;
    }
    for (long v = 0; v <= budget; ++v) {
      cur[j] = (int)v;
      if (v > 0)
        for (std::size_t i = 0; i < r; ++i) partial[i] += sec->h_rows[i][j];
      rec(j + 1, budget - v);
    }
    for (std::size_t i = 0; i < r; ++i)
      partial[i] -= (long)cur[j] * sec->h_rows[i][j];
    cur[j] = 0;
  };
  rec(0, n_max);
  assert(std::is_sorted(sec->basis.begin(), sec->basis.end()));
  return sec;
}

double coherent_tail_bound(double s, long n_max) {
  if (s <= 0.0) return 0.0;
  // sum_{k > n_max} s^k / k! in log space, scaled stop
  double lterm = (double)(n_max + 1) * std::log(s) - lg_fact(n_max + 1);
  double total = 0.0, term = std::exp(lterm);
  for (long k = n_max + 1; k < n_max + 4000; ++k) {
    total += term;
    term *= s / (double)(k + 1);
    if (k > (long)s && term < 1e-18 * total) break;
  }
  return total;
}

long default_cutoff(double mean_total_occupation, double rel_tol) {
  double s = std::max(mean_total_occupation, 1.0);
  long n = (long)std::ceil(s) + 8;
  while (coherent_tail_bound(s, n) > rel_tol * std::exp(s)) ++n;
  return n;
}

double StateVector::norm2() const {
  double s = 0.0;
  for (const Cplx& a : amp) s += std::norm(a);
  return s;
}

namespace {

StateVector normalized_coherent_family(
    SectorPtr sector, double alpha,
    const std::function<double(const std::vector<int>&)>& phase,
    const std::function<bool(const std::vector<int>&)>& keep) {
  if (!sector || sector->empty())
    throw PreconditionViolation("inadmissible syndrome: empty Fock sector");
  const double la = std::log(alpha);
  std::vector<double> lw;
  lw.reserve(sector->basis.size());
  double lmax = -HUGE_VAL;
  for (const auto& n : sector->basis) {
    double l = -HUGE_VAL;
    bool k = keep(n);
    if (k) {
      long tot = std::accumulate(n.begin(), n.end(), 0L);
      l = (double)tot * la;
      for (int nj : n) l -= 0.5 * lg_fact(nj);
    }
    lw.push_back(l);
    lmax = std::max(lmax, l);
  }
  if (lmax == -HUGE_VAL)
    throw PreconditionViolation("empty logical sub-sector");
  StateVector out;
  out.sector = sector;
  out.amp.resize(sector->basis.size());
  double norm2 = 0.0;
  for (std::size_t i = 0; i < lw.size(); ++i) {
    if (lw[i] == -HUGE_VAL) continue;
    double mag = std::exp(lw[i] - lmax);
    double th = phase(sector->basis[i]);
    out.amp[i] = Cplx(mag * std::cos(th), mag * std::sin(th));
    norm2 += mag * mag;
  }
  double inv = 1.0 / std::sqrt(norm2);
  for (Cplx& a : out.amp) a *= inv;
  double s = (double)sector->modes * alpha * alpha;
  out.truncation_tail = coherent_tail_bound(s, sector->n_max) / std::exp(s);
  return out;
}

}  // namespace

StateVector build_x_codeword(SectorPtr sector, const std::vector<long>& z,
                             double mu, double alpha) {
  if (alpha <= 0.0) throw PreconditionViolation("alpha must be positive");
  return normalized_coherent_family(
      sector, alpha,
      [&](const std::vector<int>& n) {
        double zn = 0.0;
        for (std::size_t j = 0; j < n.size(); ++j) zn += (double)z[j] * n[j];
        return -mu * zn;
      },
      [](const std::vector<int>&) { return true; });
}

std::size_t z_sector_size(const FockSector& sector, const std::vector<long>& z,
                          long ell, long modulus) {
  std::size_t count = 0;
  for (const auto& n : sector.basis) {
    long zn = 0;
    for (std::size_t j = 0; j < n.size(); ++j) zn += z[j] * n[j];
    bool hit = modulus >= 2 ? ((zn - ell) % modulus == 0) : (zn == ell);
    if (hit) ++count;
  }
  return count;
}

StateVector build_z_codeword(SectorPtr sector, const std::vector<long>& z,
                             long ell, long modulus, double alpha) {
  if (alpha <= 0.0) throw PreconditionViolation("alpha must be positive");
  return normalized_coherent_family(
      sector, alpha, [](const std::vector<int>&) { return 0.0; },
      [&](const std::vector<int>& n) {
        long zn = 0;
        for (std::size_t j = 0; j < n.size(); ++j) zn += z[j] * n[j];
        if (modulus >= 2) return (zn - ell) % modulus == 0;
        return zn == ell;
      });
}

FreeFactorKind classify_free_factor(const IntMatrix& h,
                                    const std::vector<long>& delta,
                                    const std::vector<long>& z, long n_max) {
  auto extremes = [&](long cap) {
    SectorPtr s = enumerate_sector(h, delta, cap);
    long lo = 0, hi = 0;
    bool first = true;
    for (const auto& n : s->basis) {
      long zn = 0;
      for (std::size_t j = 0; j < n.size(); ++j) zn += z[j] * n[j];
      if (first || zn < lo) lo = zn;
      if (first || zn > hi) hi = zn;
      first = false;
    }
    return std::pair<long, long>(lo, hi);
  };
  auto [lo1, hi1] = extremes(n_max);
  auto [lo2, hi2] = extremes(2 * n_max);
  if (lo1 == lo2 && hi2 > hi1) return FreeFactorKind::ModeLike;
  if (hi1 == hi2 && lo2 < lo1) return FreeFactorKind::ModeLike;
  return FreeFactorKind::RotorLike;
}

StateVector apply_loss_gain(const StateVector& state,
                            const std::vector<long>& p,
                            const std::vector<long>& q) {
  const FockSector& in = *state.sector;
  const std::size_t nm = in.modes;
  if (p.size() != nm || q.size() != nm)
    throw InvalidInput("apply_loss_gain: vector length mismatch");
  long dp = 0, dq = 0;
  for (std::size_t j = 0; j < nm; ++j) {
    if (p[j] < 0 || q[j] < 0)
      throw InvalidInput("apply_loss_gain: negative loss/gain entries");
    dp += p[j];
    dq += q[j];
  }
  std::vector<long> delta_out(in.delta);
  for (std::size_t i = 0; i < in.h_rows.size(); ++i)
    for (std::size_t j = 0; j < nm; ++j)
      delta_out[i] -= in.h_rows[i][j] * (p[j] - q[j]);

  IntMatrix h = IntMatrix::from_rows(
      std::vector<std::vector<long>>(in.h_rows.begin(), in.h_rows.end()), nm);
  SectorPtr out_sector =
      enumerate_sector(h, delta_out, std::max(0L, in.n_max - dp + dq));
  StateVector out;
  out.sector = out_sector;
  out.amp.assign(out_sector->basis.size(), Cplx(0.0, 0.0));
  out.truncation_tail = state.truncation_tail;

  std::vector<int> m(nm), o(nm);
  for (std::size_t i = 0; i < in.basis.size(); ++i) {
    if (state.amp[i] == Cplx(0.0, 0.0)) continue;
    const auto& n = in.basis[i];
    bool ok = true;
    for (std::size_t j = 0; j < nm; ++j) {
      m[j] = n[j] - (int)p[j];
      if (m[j] < 0) {
        ok = false;
        break;
      }
      o[j] = m[j] + (int)q[j];
    }
    if (!ok) continue;
    double f = 1.0;
    for (std::size_t j = 0; j < nm; ++j)
      f *= falling_d(n[j], p[j]) * falling_d(o[j], q[j]);
    auto idx = out_sector->index_of(o);
    if (!idx) continue;  // beyond the shifted cutoff
    out.amp[*idx] += state.amp[i] * std::sqrt(f);
  }
  return out;
}

Cplx matrix_element(const StateVector& bra, const std::vector<long>& p,
                    const std::vector<long>& q, const StateVector& ket) {
  const FockSector& kin = *ket.sector;
  const FockSector& bin = *bra.sector;
  const std::size_t nm = kin.modes;
  if (bin.modes != nm) throw InvalidInput("matrix_element: mode mismatch");
  // bra sector must carry the shifted syndrome delta - H (p - q)
  for (std::size_t i = 0; i < kin.h_rows.size(); ++i) {
    long shift = 0;
    for (std::size_t j = 0; j < nm; ++j)
      shift += kin.h_rows[i][j] * (p[j] - q[j]);
    if (bin.delta[i] != kin.delta[i] - shift)
      throw PreconditionViolation(
          "matrix_element: bra sector incompatible with shifted syndrome");
  }
  KahanC acc;
  std::vector<int> m(nm), o(nm);
  for (std::size_t i = 0; i < kin.basis.size(); ++i) {
    const auto& n = kin.basis[i];
    bool ok = true;
    for (std::size_t j = 0; j < nm; ++j) {
      m[j] = n[j] - (int)p[j];
      if (m[j] < 0) {
        ok = false;
        break;
      }
      o[j] = m[j] + (int)q[j];
    }
    if (!ok) continue;
    auto idx = bin.index_of(o);
    if (!idx) continue;
    double f = 1.0;
    for (std::size_t j = 0; j < nm; ++j)
      f *= falling_d(n[j], p[j]) * falling_d(o[j], q[j]);
    acc.add(std::conj(bra.amp[*idx]) * ket.amp[i] * std::sqrt(f));
  }
  return acc.sum;
}

double verify_dissipator(const StateVector& state, const IntVec& g_row,
                         double alpha) {
  const FockSector& in = *state.sector;
  const std::size_t nm = in.modes;
  if (g_row.size() != nm) throw InvalidInput("verify_dissipator: bad g row");
  std::vector<long> p(nm, 0), q(nm, 0);
  long sigma = 0;
  for (std::size_t j = 0; j < nm; ++j) {
    long g = g_row[j].get_si();
    if (g > 0)
      p[j] = g;
    else
      q[j] = -g;
    sigma += g;
  }
  for (const auto& row : in.h_rows) {
    long dot = 0;
    for (std::size_t j = 0; j < nm; ++j) dot += row[j] * (p[j] - q[j]);
    if (dot != 0)
      throw PreconditionViolation("dissipator vector is not in ker H");
  }
  StateVector ladder = apply_loss_gain(state, p, q);
  double scale = std::pow(alpha, (double)sigma);
  // residual over the union of both supports
  double r2 = 0.0;
  for (std::size_t i = 0; i < in.basis.size(); ++i) {
    const auto& n = in.basis[i];
    double fq = 1.0;
    for (std::size_t j = 0; j < nm; ++j) fq *= falling_d(n[j], q[j]);
    Cplx want = scale * fq * state.amp[i];
    auto idx = ladder.sector->index_of(n);
    Cplx got = idx ? ladder.amp[*idx] : Cplx(0.0, 0.0);
    r2 += std::norm(got - want);
  }
  for (std::size_t i = 0; i < ladder.sector->basis.size(); ++i) {
    if (!in.index_of(ladder.sector->basis[i])) r2 += std::norm(ladder.amp[i]);
  }
  return std::sqrt(r2);
}

Rat DiagonalPolynomial::eval(const std::vector<int>& n) const {
  Rat total = 0;
  for (const Term& t : terms) {
    Int f = 1;
    for (std::size_t j = 0; j < t.expo.size(); ++j) {
      int e = t.expo[j];
      if (e == 0) continue;
      bool fall = !t.falling.empty() && t.falling[j];
      if (fall) {
        for (int k = 0; k < e; ++k) f *= Int(n[j] - k);
      } else {
        for (int k = 0; k < e; ++k) f *= Int(n[j]);
      }
    }
    total += t.coeff * Rat(f);
  }
  return total;
}

double DiagonalPolynomial::eval_d(const std::vector<int>& n) const {
  return eval(n).get_d();
}

DiagonalPolynomial DiagonalPolynomial::linear_form(
    const std::vector<long>& z) {
  DiagonalPolynomial p;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (z[j] == 0) continue;
    Term t;
    t.coeff = Rat((long)z[j]);
    t.expo.assign(z.size(), 0);
    t.expo[j] = 1;
    p.terms.push_back(std::move(t));
  }
  return p;
}

DiagonalPolynomial DiagonalPolynomial::squared_linear_form(
    const std::vector<long>& z) {
  DiagonalPolynomial p;
  for (std::size_t a = 0; a < z.size(); ++a)
    for (std::size_t b = 0; b < z.size(); ++b) {
      if (z[a] == 0 || z[b] == 0) continue;
      Term t;
      t.coeff = Rat(z[a] * z[b]);
      t.expo.assign(z.size(), 0);
      t.expo[a] += 1;
      t.expo[b] += 1;
      p.terms.push_back(std::move(t));
    }
  return p;
}

StateVector apply_diagonal_gate(const StateVector& state,
                                const DiagonalPolynomial& poly,
                                double angle_scale) {
  StateVector out = state;
  for (std::size_t i = 0; i < out.amp.size(); ++i) {
    if (out.amp[i] == Cplx(0.0, 0.0)) continue;
    double th = angle_scale * poly.eval_d(state.sector->basis[i]);
    out.amp[i] *= Cplx(std::cos(th), std::sin(th));
  }
  return out;
}

namespace {

std::vector<std::vector<int>> monomials_up_to(std::size_t nvars, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(nvars, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t j, int left) {
    if (j == nvars) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[j] = e;
      rec(j + 1, left - e);
    }
    cur[j] = 0;
  };
  rec(0, degree);
  std::stable_sort(out.begin(), out.end(),
                   [](const std::vector<int>& a, const std::vector<int>& b) {
                     int da = std::accumulate(a.begin(), a.end(), 0);
                     int db = std::accumulate(b.begin(), b.end(), 0);
                     if (da != db) return da < db;
                     return a < b;
                   });
  return out;
}

}  // namespace

LogicalXOperator solve_finite_logical_x(const GeneratorPair& code,
                                        const IntVec& x,
                                        const FockSector& sector,
                                        int degree_bound, long shift_bound) {
  if (!code.finite_support)
    throw PreconditionViolation(
        "polynomial logical-X solve applies to finite-support codes");
  LogicalXOperator op;
  op.degree_bound = degree_bound;
  const std::size_t nm = code.modes;
  const std::size_t rx = code.g.rows();

  // representatives x + m G, ordered by shift norm then lexicographic m
  std::vector<IntVec> reps;
  std::vector<long> shells_cur;
  std::function<void(std::size_t, long)> rec = [&](std::size_t idx,
                                                   long left) {
    if (idx == rx) {
      if (left != 0) return;
      IntVec cand = x;
      for (std::size_t i = 0; i < rx; ++i)
        for (std::size_t j = 0; j < nm; ++j)
          cand[j] += Int(shells_cur[i]) * code.g(i, j);
      bool zero = std::all_of(cand.begin(), cand.end(),
                              [](const Int& e) { return e == 0; });
      if (!zero && std::find(reps.begin(), reps.end(), cand) == reps.end())
        reps.push_back(cand);
      return;
    }
    for (long v = -left; v <= left; ++v) {
      shells_cur.push_back(v);
      rec(idx + 1, left - std::abs(v));
      shells_cur.pop_back();
    }
  };
  for (long shell = 0; shell <= shift_bound; ++shell) {
    if (rx == 0) {
      if (shell == 0) reps.push_back(x);
      continue;
    }
    shells_cur.clear();
    rec(0, shell);
  }

  auto monos = monomials_up_to(nm, degree_bound);
  // column order: total degree major, then representative, then monomial
  struct Col {
    std::size_t rep, mono;
  };
  std::vector<Col> cols;
  for (int d = 0; d <= degree_bound; ++d)
    for (std::size_t r = 0; r < reps.size(); ++r)
      for (std::size_t m = 0; m < monos.size(); ++m)
        if (std::accumulate(monos[m].begin(), monos[m].end(), 0) == d)
          cols.push_back({r, m});

  std::vector<std::vector<long>> v(reps.size(), std::vector<long>(nm)),
      w(reps.size(), std::vector<long>(nm));
  for (std::size_t r = 0; r < reps.size(); ++r)
    for (std::size_t j = 0; j < nm; ++j) {
      long g = reps[r][j].get_si();
      v[r][j] = g > 0 ? g : 0;
      w[r][j] = g < 0 ? -g : 0;
    }

  const std::size_t rows = sector.basis.size(), ncols = cols.size();
  if (rows == 0) return op;
  std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(ncols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& n = sector.basis[i];
    for (std::size_t c = 0; c < ncols; ++c) {
      Int f = 1;
      for (std::size_t j = 0; j < nm; ++j)
        for (long k = 0; k < w[cols[c].rep][j]; ++k) f *= Int(n[j] - k);
      for (std::size_t j = 0; j < nm; ++j)
        for (int k = 0; k < monos[cols[c].mono][j]; ++k) f *= Int(n[j]);
      a[i][c] = Rat(f);
    }
    a[i][ncols] = 1;
  }

  // exact Gaussian elimination, columns taken in canonical order
  std::vector<std::size_t> pivot_col;
  std::vector<std::size_t> pivot_row;
  std::size_t next_row = 0;
  for (std::size_t c = 0; c < ncols && next_row < rows; ++c) {
    std::size_t pr = rows;
    for (std::size_t i = next_row; i < rows; ++i)
      if (a[i][c] != 0) {
        pr = i;
        break;
      }
    if (pr == rows) continue;
    std::swap(a[next_row], a[pr]);
    Rat inv = a[next_row][c];
    for (std::size_t j = c; j <= ncols; ++j) a[next_row][j] /= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == next_row || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (std::size_t j = c; j <= ncols; ++j) a[i][j] -= f * a[next_row][j];
    }
    pivot_col.push_back(c);
    pivot_row.push_back(next_row);
    ++next_row;
  }
  for (std::size_t i = next_row; i < rows; ++i)
    if (a[i][ncols] != 0) return op;  // inconsistent: not found at this degree

  std::vector<Rat> gamma(ncols);
  for (std::size_t k = 0; k < pivot_col.size(); ++k)
    gamma[pivot_col[k]] = a[pivot_row[k]][ncols];

  for (std::size_t r = 0; r < reps.size(); ++r) {
    DiagonalPolynomial poly;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (cols[c].rep != r || gamma[c] == 0) continue;
      DiagonalPolynomial::Term t;
      t.coeff = gamma[c];
      t.expo = monos[cols[c].mono];
      poly.terms.push_back(std::move(t));
    }
    if (poly.terms.empty()) continue;
    LogicalXTerm term;
    term.x = reps[r];
    term.v = v[r];
    term.w = w[r];
    term.poly = std::move(poly);
    long sigma = 0;
    for (const Int& e : reps[r]) sigma += e.get_si();
    term.alpha_power = -sigma;
    op.terms.push_back(std::move(term));
  }
  op.found = !op.terms.empty();
  return op;
}

StateVector apply_logical_x(const LogicalXOperator& op,
                            const StateVector& state, double alpha) {
  const FockSector& sec = *state.sector;
  StateVector out;
  out.sector = state.sector;
  out.amp.assign(state.amp.size(), Cplx(0.0, 0.0));
  out.truncation_tail = state.truncation_tail;
  std::vector<int> o(sec.modes);
  for (std::size_t i = 0; i < sec.basis.size(); ++i) {
    if (state.amp[i] == Cplx(0.0, 0.0)) continue;
    const auto& n = sec.basis[i];
    for (const LogicalXTerm& t : op.terms) {
      bool ok = true;
      for (std::size_t j = 0; j < sec.modes; ++j) {
        o[j] = n[j] - (int)t.v[j] + (int)t.w[j];
        if (n[j] < t.v[j]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      auto idx = sec.index_of(o);
      if (!idx) continue;
      double f = 1.0;
      for (std::size_t j = 0; j < sec.modes; ++j)
        f *= falling_d(n[j], t.v[j]) * falling_d(o[j], t.w[j]);
      double beta =
          t.poly.eval_d(o) * std::pow(alpha, (double)t.alpha_power);
      out.amp[*idx] += state.amp[i] * std::sqrt(f) * beta;
    }
  }
  return out;
}

}  // namespace tiger

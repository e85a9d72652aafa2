#include "tiger/gkz.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <numeric>

namespace tiger {

namespace {

double lg_fact(long n) {
  static thread_local std::vector<double> cache{0.0, 0.0};
  while ((long)cache.size() <= n)
    cache.push_back(cache.back() + std::log((double)(cache.size() - 1) + 1.0));
  return cache[n];
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

Cplx term_value(const std::vector<Cplx>& y, const std::vector<int>& n) {
  double lmag = 0.0, arg = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (n[j] == 0) continue;
    double m = std::abs(y[j]);
    if (m == 0.0) return {0.0, 0.0};
    lmag += n[j] * std::log(m) - lg_fact(n[j]);
    arg += n[j] * std::arg(y[j]);
  }
  double mag = std::exp(lmag);
  return {mag * std::cos(arg), mag * std::sin(arg)};
}

}  // namespace

GkzValue gkz_sum(const GkzSpec& spec, long n_max) {
  if (n_max < 0) throw InvalidInput("gkz_sum: negative cutoff");
  const std::size_t nmodes = spec.y.size();
  if (spec.h.rows() > 0 && spec.h.cols() != nmodes)
    throw InvalidInput("gkz_sum: argument length != cols(H)");
  GkzValue out;
  double s_abs = 0.0;
  for (const Cplx& v : spec.y) s_abs += std::abs(v);

  if (spec.h.rows() == 0) {
    // unconstrained: per-mode exponential partial sums
    Cplx prod{1.0, 0.0};
    double abs_prod = 1.0;
    for (std::size_t j = 0; j < nmodes; ++j) {
      KahanC acc;
      double absacc = 0.0;
      Cplx term{1.0, 0.0};
      for (long k = 0; k <= n_max; ++k) {
        acc.add(term);
        absacc += std::abs(term);
        term *= spec.y[j] / (double)(k + 1);
      }
      prod *= acc.sum;
      abs_prod *= absacc;
      out.terms += (std::size_t)n_max + 1;
    }
    out.value = prod;
    out.abs_sum = abs_prod;
  } else {
    SectorPtr sec = enumerate_sector(spec.h, spec.delta, n_max);
    KahanC acc;
    for (const auto& n : sec->basis) {
      Cplx t = term_value(spec.y, n);
      acc.add(t);
      out.abs_sum += std::abs(t);
    }
    out.value = acc.sum;
    out.terms = sec->basis.size();
  }
  out.tail_bound = coherent_tail_bound(s_abs, n_max);
  out.cancellation_suspect =
      out.abs_sum > 0.0 && std::abs(out.value) < 1e-10 * out.abs_sum;
  return out;
}

Cplx gkz_integral(const GkzSpec& spec, int grid_m, bool allow_high_dim) {
  const std::size_t rz = spec.h.rows();
  if (rz > 3 && !allow_high_dim)
    throw PreconditionViolation(
        "gkz_integral refuses more than 3 torus dimensions without override");
  if (grid_m < 4) throw InvalidInput("gkz_integral: grid too coarse");
  const std::size_t nmodes = spec.y.size();
  if (rz == 0) {
    Cplx s{0.0, 0.0};
    for (const Cplx& v : spec.y) s += v;
    return std::exp(s);
  }
  std::vector<int> idx(rz, 0);
  KahanC acc;
  const double step = 2.0 * M_PI / grid_m;
  while (true) {
    double phase_delta = 0.0;
    for (std::size_t i = 0; i < rz; ++i)
      phase_delta += step * idx[i] * (double)spec.delta[i];
    Cplx expo{0.0, 0.0};
    for (std::size_t j = 0; j < nmodes; ++j) {
      double th = 0.0;
      for (std::size_t i = 0; i < rz; ++i)
        th += step * idx[i] * spec.h(i, j).get_d();
      expo += spec.y[j] * Cplx(std::cos(th), std::sin(th));
    }
    acc.add(std::exp(expo) * Cplx(std::cos(phase_delta), -std::sin(phase_delta)));
    std::size_t k = 0;
    while (k < rz && ++idx[k] == grid_m) idx[k++] = 0;
    if (k == rz) break;
  }
  double cells = std::pow((double)grid_m, (double)rz);
  return acc.sum / cells;
}

Cplx gkz_kernel_shifted(const GkzSpec& spec, const std::vector<long>& s,
                        long radius) {
  IntVec sv = to_intvec(s);
  IntVec hs = spec.h.rows() ? spec.h.apply(sv) : IntVec{};
  for (std::size_t i = 0; i < hs.size(); ++i)
    if (hs[i] != Int(spec.delta[i]))
      throw PreconditionViolation("gkz_kernel_shifted: H s != delta");
  IntMatrix kernel = integer_kernel_basis(spec.h);
  const std::size_t k = kernel.rows(), nm = spec.y.size();
  KahanC acc;
  std::vector<long> coeff(k, 0);
  std::vector<int> n(nm);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      for (std::size_t j = 0; j < nm; ++j) {
        Int e = sv[j];
        for (std::size_t l = 0; l < k; ++l)
          e += Int(coeff[l]) * kernel(l, j);
        if (e < 0 || !e.fits_slong_p()) return;
        n[j] = (int)e.get_si();
      }
      acc.add(term_value(spec.y, n));
      return;
    }
    for (long v = -radius; v <= radius; ++v) {
      coeff[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return acc.sum;
}

double modified_bessel_i(long nu, double x) {
  nu = std::labs(nu);
  double half = 0.5 * x;
  if (half == 0.0) return nu == 0 ? 1.0 : 0.0;
  double lstart = nu * std::log(std::abs(half)) - lg_fact(nu);
  double sign0 = (half < 0 && nu % 2) ? -1.0 : 1.0;
  double term = sign0 * std::exp(lstart);
  double sum = 0.0;
  double q = half * half;
  for (long kk = 0;; ++kk) {
    sum += term;
    term *= q / ((double)(kk + 1) * (double)(kk + 1 + nu));
    if (std::abs(term) < 1e-17 * std::abs(sum) + 1e-300) break;
    if (kk > 100000) break;
  }
  return sum;
}

double laguerre_l(long n, long a, double x) {
  // sum_{m=0}^n binom(n+a, n-m) (-x)^m / m!
  double sum = 0.0;
  for (long m = 0; m <= n; ++m) {
    double lb = lg_fact(n + a) - lg_fact(n - m) - lg_fact(a + m);
    double t = std::exp(lb - lg_fact(m)) * std::pow(-x, (double)m);
    sum += t;
  }
  return sum;
}

Cplx hyp0f_ones(int q, Cplx arg) {
  Cplx sum{0.0, 0.0}, term{1.0, 0.0};
  double absum = 0.0;
  for (long k = 0;; ++k) {
    sum += term;
    absum += std::abs(term);
    term *= arg / std::pow((double)(k + 1), (double)(q + 1));
    if (std::abs(term) < 1e-18 * (absum + 1.0) && (double)k > std::pow(std::abs(arg), 1.0 / (q + 1)) + 8)
      break;
    if (k > 1000000) break;
  }
  return sum;
}

namespace {

// one-dimensional ladder sum  sum_t  prod_j y_j^{t+c_j} / (t+c_j)!
Cplx ladder_series(const std::vector<Cplx>& y, const std::vector<long>& c) {
  long t0 = 0;
  for (long cj : c) t0 = std::max(t0, -cj);
  KahanC acc;
  double absum = 0.0;
  std::vector<int> n(y.size());
  for (long t = t0;; ++t) {
    for (std::size_t j = 0; j < y.size(); ++j) n[j] = (int)(t + c[j]);
    Cplx term = term_value(y, n);
    acc.add(term);
    absum += std::abs(term);
    double s_abs = 0.0;
    for (const Cplx& v : y) s_abs += std::abs(v);
    if ((double)t > s_abs + 8 && std::abs(term) < 1e-18 * (absum + 1e-300))
      break;
    if (t > t0 + 200000) break;
  }
  return acc.sum;
}

}  // namespace

Cplx closed_form(GkzFamily family, const std::vector<long>& delta,
                 const std::vector<Cplx>& y) {
  switch (family) {
    case GkzFamily::Exponential: {
      Cplx s{0.0, 0.0};
      for (const Cplx& v : y) s += v;
      return std::exp(s);
    }
    case GkzFamily::PairCat: {
      if (y.size() != 2 || delta.size() != 1)
        throw InvalidInput("pair-cat closed form needs 2 modes, 1 syndrome");
      long d = delta[0];
      std::vector<long> c{std::max(d, 0L), std::max(-d, 0L)};
      return ladder_series(y, c);
    }
    case GkzFamily::FourModeTiger: {
      if (y.size() != 4 || delta.size() != 1)
        throw InvalidInput("four-mode closed form needs 4 modes, 1 syndrome");
      long d = delta[0];
      std::vector<Cplx> uv{y[0] + y[3], y[1] + y[2]};
      std::vector<long> c{std::max(d, 0L), std::max(-d, 0L)};
      return ladder_series(uv, c);
    }
    case GkzFamily::ExtendedPairCat: {
      // chain n_j - n_{j+1} = delta_j  =>  offsets c_{j+1} = c_j - delta_j
      std::vector<long> c(y.size(), 0);
      for (std::size_t j = 0; j + 1 < y.size(); ++j) c[j + 1] = c[j] - delta[j];
      bool all_zero = std::all_of(delta.begin(), delta.end(),
                                  [](long v) { return v == 0; });
      if (all_zero) {
        Cplx prod{1.0, 0.0};
        for (const Cplx& v : y) prod *= v;
        return hyp0f_ones((int)y.size() - 1, prod);
      }
      return ladder_series(y, c);
    }
    case GkzFamily::TwoModeBinomial:
    case GkzFamily::Multinomial: {
      if (delta.size() != 1 || delta[0] < 0)
        throw InvalidInput("multinomial closed form needs one syndrome >= 0");
      Cplx s{0.0, 0.0};
      for (const Cplx& v : y) s += v;
      long d = delta[0];
      return std::pow(s, (double)d) * std::exp(-lg_fact(d));
    }
    case GkzFamily::Chi2: {
      if (y.size() != 3 || delta.size() != 2)
        throw InvalidInput("chi2 closed form needs 3 modes, 2 syndromes");
      long d1 = delta[0], d2 = delta[1];
      Cplx y1 = y[0], y2 = y[1], y3 = y[2];
      if (d1 > d2) {  // constraint symmetry: swap modes 1,2 and syndromes
        std::swap(d1, d2);
        std::swap(y1, y2);
      }
      if (d1 < 0) return {0.0, 0.0};
      // y1^{d2} (y3/y1)^{d1} / d2! * L_{d1}^{(d2-d1)}(-y1 y2 / y3),
      // expanded as the finite Laguerre series to stay branch-free
      KahanC acc;
      for (long m = 0; m <= d1; ++m) {
        double lb = -lg_fact(m) - lg_fact(d1 - m) - lg_fact(d2 - d1 + m);
        Cplx t = std::pow(y1, (double)(d2 - d1 + m)) *
                 std::pow(y2, (double)m) * std::pow(y3, (double)(d1 - m));
        acc.add(t * std::exp(lb));
      }
      return acc.sum;
    }
    case GkzFamily::Liger: {
      if (y.size() % 3 != 0) throw InvalidInput("liger needs 3r modes");
      const long r = (long)y.size() / 3;
      if ((long)delta.size() != r)
        throw InvalidInput("liger needs r syndromes");
      // pairs (i, r+i) collapse binomially; s = R_r^T n_w + delta
      std::vector<Cplx> u(r), w(r);
      for (long i = 0; i < r; ++i) {
        u[i] = y[i] + y[r + i];
        w[i] = y[2 * r + i];
      }
      double s_abs = 0.0;
      for (const Cplx& v : y) s_abs += std::abs(v);
      long cap = default_cutoff(s_abs, 1e-14);
      KahanC acc;
      std::vector<long> nw(r, 0);
      std::function<void(long, long)> rec = [&](long i, long left) {
        if (i == r) {
          // s_i = sum_j R[j][i] nw_j + delta_i with R the cyclic chain
          Cplx t{1.0, 0.0};
          double lmag = 0.0, arg = 0.0;
          for (long ii = 0; ii < r; ++ii) {
            long s_i = nw[ii] + nw[(ii + r - 1) % r] - delta[ii];
            if (s_i < 0) return;
            double mu = std::abs(u[ii]);
            if (s_i > 0 && mu == 0.0) return;
            if (s_i > 0) {
              lmag += s_i * std::log(mu) - lg_fact(s_i);
              arg += s_i * std::arg(u[ii]);
            }
            double mw = std::abs(w[ii]);
            if (nw[ii] > 0 && mw == 0.0) return;
            if (nw[ii] > 0) {
              lmag += nw[ii] * std::log(mw) - lg_fact(nw[ii]);
              arg += nw[ii] * std::arg(w[ii]);
            }
          }
          t = std::exp(lmag) * Cplx(std::cos(arg), std::sin(arg));
          acc.add(t);
          return;
        }
        for (long v = 0; v <= left; ++v) {
          nw[i] = v;
          rec(i + 1, left - v);
        }
        nw[i] = 0;
      };
      rec(0, cap);
      return acc.sum;
    }
  }
  throw InvalidInput("unsupported closed-form family");
}

DephasingElement dephasing_via_gkz(const IntMatrix& h,
                                   const std::vector<long>& delta,
                                   const std::vector<long>& z, double mu,
                                   double nu, const std::vector<long>& p,
                                   double alpha, long n_max) {
  const std::size_t nm = h.cols() ? h.cols() : z.size();
  double a2 = alpha * alpha;
  GkzSpec den_spec;
  den_spec.h = h;
  den_spec.delta = delta;
  den_spec.y.assign(nm, Cplx(a2, 0.0));
  DephasingElement out;
  out.denominator = gkz_sum(den_spec, n_max);
  if (out.denominator.terms == 0 || out.denominator.value == Cplx(0.0, 0.0))
    throw PreconditionViolation(
        "dephasing_via_gkz: empty or vanishing normalization sector");

  GkzSpec num_spec;
  num_spec.h = h;
  num_spec.delta = delta;
  long pnorm = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    long shift = 0;
    for (std::size_t j = 0; j < nm; ++j) shift += h(i, j).get_si() * p[j];
    num_spec.delta[i] -= shift;
  }
  for (long pj : p) pnorm += pj;
  num_spec.y.resize(nm);
  for (std::size_t j = 0; j < nm; ++j) {
    double th = (mu - nu) * (double)z[j];
    num_spec.y[j] = a2 * Cplx(std::cos(th), std::sin(th));
  }
  out.numerator = gkz_sum(num_spec, n_max);
  // (conj(beta) gamma)^p carries both the magnitude alpha^{2|p|} and the
  // relative rotation of the two codewords along p
  long zp = 0;
  for (std::size_t j = 0; j < nm; ++j) zp += z[j] * p[j];
  double th = (mu - nu) * (double)zp;
  out.value = std::pow(alpha, 2.0 * (double)pnorm) *
              Cplx(std::cos(th), std::sin(th)) * out.numerator.value /
              out.denominator.value;
  return out;
}

double saddle_normalization(const IntMatrix& h, double alpha) {
  const std::size_t nm = h.cols();
  double a2 = alpha * alpha;
  if (h.rows() == 0) return std::exp((double)nm * a2);
  IntVec ones(nm, Int(1));
  IntVec h1 = h.apply(ones);
  for (const Int& e : h1)
    if (e != 0)
      throw PreconditionViolation(
          "saddle normalization requires the all-ones vector in ker H");
  Int det = determinant(h * h.transposed());
  if (det <= 0)
    throw PreconditionViolation(
        "saddle normalization requires full row rank H");
  double rz = (double)h.rows();
  return std::exp((double)nm * a2) * std::pow(2.0 * M_PI * a2, -rz / 2.0) /
         std::sqrt(det.get_d());
}

SlopeFit least_squares_line(const std::vector<double>& xs,
                            const std::vector<double>& ys) {
  SlopeFit out;
  const std::size_t n = xs.size();
  if (n < 2 || ys.size() != n) throw InvalidInput("least_squares_line: need >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double denom = (double)n * sxx - sx * sx;
  out.slope = ((double)n * sxy - sx * sy) / denom;
  out.intercept = (sy - out.slope * sx) / (double)n;
  out.points = n;
  return out;
}

SlopeFit dephasing_slope_fit(const IntMatrix& h,
                             const std::vector<long>& delta,
                             const std::vector<long>& z, double mu, double nu,
                             const std::vector<long>& p,
                             const std::vector<double>& alpha_sq_grid,
                             long n_max) {
  if (alpha_sq_grid.size() < 4)
    throw PreconditionViolation("slope fit needs at least 4 grid points");
  for (std::size_t i = 1; i < alpha_sq_grid.size(); ++i)
    if (alpha_sq_grid[i] <= alpha_sq_grid[i - 1])
      throw PreconditionViolation("slope fit grid must be increasing");
  std::vector<double> xs, ys;
  for (double a2 : alpha_sq_grid) {
    DephasingElement el = dephasing_via_gkz(h, delta, z, mu, nu, p,
                                            std::sqrt(a2), n_max);
    double mag = std::abs(el.value);
    if (mag < 1e-300)
      throw PreconditionViolation(
          "slope fit grid rejected: element underflow below 1e-300");
    xs.push_back(a2);
    ys.push_back(2.0 * std::log(mag));
  }
  return least_squares_line(xs, ys);
}

}  // namespace tiger

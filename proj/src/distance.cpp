#include "tiger/distance.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <thread>

namespace tiger {

ErrorClass classify_error(const GeneratorPair& code, const std::vector<long>& p,
                          const std::vector<long>& q) {
  if (p.size() != code.modes || q.size() != code.modes)
    throw InvalidInput("classify_error: vector length mismatch");
  IntVec d(code.modes);
  for (std::size_t j = 0; j < code.modes; ++j) d[j] = Int(p[j]) - Int(q[j]);
  if (code.h.rows() > 0) {
    IntVec syn = code.h.apply(d);
    for (const Int& e : syn)
      if (e != 0) return ErrorClass::Detectable;
  }
  if (in_row_image(code.g, d).member) return ErrorClass::Trivial;
  return ErrorClass::Logical;
}

long default_x_search_bound(const GeneratorPair& code) {
  IntMatrix kernel = integer_kernel_basis(code.h);
  Int total = 0;
  for (std::size_t i = 0; i < kernel.rows(); ++i)
    for (std::size_t j = 0; j < kernel.cols(); ++j)
      total += abs(kernel(i, j));
  Int bound = 2 * total;
  if (!bound.fits_slong_p()) throw InvalidInput("search bound overflow");
  return std::max(1L, bound.get_si());
}

namespace {

void sign_canonicalize(std::vector<long>& v) {
  for (long e : v) {
    if (e > 0) return;
    if (e < 0) {
      for (long& x : v) x = -x;
      return;
    }
  }
}

// Enumerate kernel vectors v = u * K with |v|_1 <= cap.  K is in row
// Hermite form, so pivot columns are final once their row coefficient is
// chosen; the accumulated one-norm over settled pivot columns prunes.
void enumerate_kernel_shell(
    const IntMatrix& kernel, const std::vector<std::size_t>& pivots, long cap,
    const std::function<void(const std::vector<long>&)>& emit) {
  const std::size_t k = kernel.rows(), n = kernel.cols();
  if (k == 0) return;
  std::vector<long> kmat(k * n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!kernel(i, j).fits_slong_p())
        throw InvalidInput("kernel entries too large for shell enumeration");
      kmat[i * n + j] = kernel(i, j).get_si();
    }
  std::vector<long> acc(n, 0);
  std::vector<long> v(n);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i,
                                                   long settled) {
    if (settled > cap) return;
    if (i == k) {
      long norm = 0;
      for (std::size_t j = 0; j < n; ++j) norm += std::labs(acc[j]);
      if (norm == 0 || norm > cap) return;
      for (std::size_t j = 0; j < n; ++j) v[j] = acc[j];
      emit(v);
      return;
    }
    // bound |u_i| from the pivot column of row i: entries of later rows
    // vanish there, so pivot value = acc + u_i * piv must stay within cap.
    std::size_t pc = pivots[i];
    long piv = kmat[i * n + pc];
    long base = acc[pc];
    long slack = cap - settled;
    long lo = (long)std::floor((-(double)slack - (double)base) / (double)piv) - 1;
    long hi = (long)std::ceil(((double)slack - (double)base) / (double)piv) + 1;
    for (long u = lo; u <= hi; ++u) {
      if (u != 0)
        for (std::size_t j = 0; j < n; ++j) acc[j] += u * kmat[i * n + j];
      long pivot_norm = std::labs(acc[pc]);
      if (pivot_norm <= slack) rec(i + 1, settled + pivot_norm);
      if (u != 0)
        for (std::size_t j = 0; j < n; ++j) acc[j] -= u * kmat[i * n + j];
    }
  };
  rec(0, 0);
}

}  // namespace

XDistanceResult x_distance(const GeneratorPair& code,
                           const LogicalStructure& structure, long bound) {
  XDistanceResult out;
  out.bound = bound > 0 ? bound : default_x_search_bound(code);
  if (structure.factors.empty()) {
    out.status = XDistanceResult::Status::Undefined;
    return out;
  }
  HermiteForm hf = hermite_normal_form(integer_kernel_basis(code.h));
  IntMatrix kernel = hf.h;
  for (long shell = 1; shell <= out.bound; ++shell) {
    std::vector<std::vector<long>> hits;
    enumerate_kernel_shell(kernel, hf.pivot_cols, shell,
                           [&](const std::vector<long>& v) {
                             long norm = 0;
                             for (long e : v) norm += std::labs(e);
                             if (norm != shell) return;
                             std::vector<long> c = v;
                             sign_canonicalize(c);
                             hits.push_back(std::move(c));
                           });
    if (hits.empty()) continue;
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
    for (const auto& v : hits) {
      if (!in_row_image(code.g, to_intvec(v)).member) {
        out.status = XDistanceResult::Status::Found;
        out.value = shell;
        out.witness = v;
        return out;
      }
    }
  }
  out.status = XDistanceResult::Status::ExceedsBound;
  return out;
}

LossDetectionResult pure_loss_detection_limit(const GeneratorPair& code,
                                              long bound) {
  if (bound < 1) throw InvalidInput("pure_loss_detection_limit: bound >= 1");
  LossDetectionResult out;
  out.bound = bound;
  const std::size_t n = code.modes;
  std::vector<long> p(n, 0);
  for (long t = 1; t <= bound; ++t) {
    bool found = false;
    std::function<void(std::size_t, long)> rec = [&](std::size_t j,
                                                     long left) {
      if (found) return;
      if (j == n) {
        if (left != 0) return;
        IntVec syn = code.h.apply(to_intvec(p));
        if (std::all_of(syn.begin(), syn.end(),
                        [](const Int& e) { return e == 0; })) {
          found = true;
          out.first_undetectable = p;
        }
        return;
      }
      for (long v = 0; v <= left && !found; ++v) {
        p[j] = v;
        rec(j + 1, left - v);
      }
      p[j] = 0;
    };
    if (code.h.rows() == 0) {
      // everything is undetectable
      out.t_max = 0;
      out.first_undetectable.assign(n, 0);
      out.first_undetectable[0] = 1;
      return out;
    }
    rec(0, t);
    if (found) {
      out.t_max = t - 1;
      return out;
    }
  }
  out.t_max = bound;
  out.capped = true;
  return out;
}

namespace {

struct TorusProblem {
  std::vector<std::vector<double>> hrows;  // r_z x N
  std::vector<double> offset;              // length N
  std::size_t n = 0, rz = 0;

  double value(const std::vector<double>& phi) const {
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double th = offset[j];
      for (std::size_t i = 0; i < rz; ++i) th += phi[i] * hrows[i][j];
      double s = std::sin(0.5 * th);
      total += 4.0 * s * s;
    }
    return total;
  }
  void gradient(const std::vector<double>& phi, std::vector<double>& g) const {
    std::vector<double> sins(n);
    for (std::size_t j = 0; j < n; ++j) {
      double th = offset[j];
      for (std::size_t i = 0; i < rz; ++i) th += phi[i] * hrows[i][j];
      sins[j] = std::sin(th);
    }
    for (std::size_t i = 0; i < rz; ++i) {
      double gi = 0.0;
      for (std::size_t j = 0; j < n; ++j) gi += 2.0 * hrows[i][j] * sins[j];
      g[i] = gi;
    }
  }
};

struct LocalMin {
  double value = HUGE_VAL;
  std::vector<double> phi;
  bool converged = false;
};

LocalMin descend(const TorusProblem& prob, std::vector<double> phi,
                 const TorusOptimizerConfig& cfg) {
  LocalMin out;
  double f = prob.value(phi);
  std::vector<double> g(prob.rz), trial(prob.rz);
  double step = 0.25;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    prob.gradient(phi, g);
    double gmax = 0.0;
    for (double e : g) gmax = std::max(gmax, std::abs(e));
    if (gmax < cfg.grad_tol) {
      out.converged = true;
      break;
    }
    // backtracking line search on the smooth periodic objective
    bool moved = false;
    while (step > 1e-18) {
      for (std::size_t i = 0; i < prob.rz; ++i) trial[i] = phi[i] - step * g[i];
      double ft = prob.value(trial);
      if (ft < f) {
        phi = trial;
        f = ft;
        step *= 1.6;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  out.value = f;
  out.phi = std::move(phi);
  return out;
}

int grid_for(const TorusOptimizerConfig& cfg, std::size_t rz) {
  if (cfg.grid_points > 0) return cfg.grid_points;
  if (rz <= 3) return 8;
  if (rz <= 6) return 4;
  if (rz <= 8) return 3;
  return cfg.high_dim_grid;
}

}  // namespace

ZDistanceResult minimize_torus_objective(const IntMatrix& h,
                                         const std::vector<double>& offset,
                                         const TorusOptimizerConfig& cfg) {
  TorusProblem prob;
  prob.n = offset.size();
  prob.rz = h.rows();
  prob.offset = offset;
  for (std::size_t i = 0; i < prob.rz; ++i) {
    std::vector<double> row(prob.n);
    for (std::size_t j = 0; j < prob.n; ++j) row[j] = h(i, j).get_d();
    prob.hrows.push_back(std::move(row));
  }
  ZDistanceResult out;
  if (prob.rz == 0) {
    out.value = prob.value({});
    out.starts = 1;
    out.converged = 1;
    return out;
  }
  if (prob.rz > 8 && !cfg.allow_high_dim)
    throw PreconditionViolation(
        "torus optimizer refuses more than 8 dimensions without override");
  const int m = grid_for(cfg, prob.rz);
  long total = 1;
  for (std::size_t i = 0; i < prob.rz; ++i) total *= m;

  int threads = std::max(1, cfg.threads);
  std::vector<LocalMin> best_per(threads);
  std::vector<long> conv_per(threads, 0);
  std::vector<long> best_idx(threads, -1);
  auto run_chunk = [&](int tid) {
    std::vector<double> phi(prob.rz);
    for (long s = tid; s < total; s += threads) {
      long rem = s;
      for (std::size_t i = 0; i < prob.rz; ++i) {
        phi[i] = 2.0 * M_PI * (double)(rem % m) / (double)m;
        rem /= m;
      }
      LocalMin lm = descend(prob, phi, cfg);
      if (lm.converged) ++conv_per[tid];
      if (lm.value < best_per[tid].value ||
          (lm.value == best_per[tid].value && s < best_idx[tid])) {
        best_per[tid] = std::move(lm);
        best_idx[tid] = s;
      }
    }
  };
  if (threads == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(run_chunk, t);
    for (auto& th : pool) th.join();
  }
  // deterministic reduction: (value, start index) lexicographic minimum
  int winner = 0;
  for (int t = 1; t < threads; ++t) {
    if (best_idx[t] < 0) continue;
    if (best_idx[winner] < 0 || best_per[t].value < best_per[winner].value ||
        (best_per[t].value == best_per[winner].value &&
         best_idx[t] < best_idx[winner]))
      winner = t;
  }
  out.value = best_per[winner].value;
  out.phi = best_per[winner].phi;
  out.starts = (int)total;
  for (int t = 0; t < threads; ++t) out.converged += (int)conv_per[t];
  return out;
}

ZDistanceResult z_distance_qudit(const GeneratorPair& code, const IntVec& z,
                                 const Int& order,
                                 const TorusOptimizerConfig& cfg) {
  if (order < 2) throw PreconditionViolation("z_distance_qudit: order >= 2");
  long k_max = order.get_si();
  ZDistanceResult best;
  best.value = HUGE_VAL;
  for (long k = 1; k < k_max; ++k) {
    double mu = 2.0 * M_PI * (double)k / (double)k_max;
    std::vector<double> offset(code.modes);
    for (std::size_t j = 0; j < code.modes; ++j)
      offset[j] = mu * z[j].get_d();
    ZDistanceResult r = minimize_torus_objective(code.h, offset, cfg);
    r.mu = mu;
    best.starts += r.starts;
    best.converged += r.converged;
    if (r.value < best.value) {
      best.value = r.value;
      best.mu = r.mu;
      best.phi = r.phi;
    }
  }
  return best;
}

ZDistanceResult z_distance_continuous(const GeneratorPair& code,
                                      const IntVec& z, double phi_logical,
                                      const TorusOptimizerConfig& cfg) {
  std::vector<double> offset(code.modes);
  for (std::size_t j = 0; j < code.modes; ++j)
    offset[j] = phi_logical * z[j].get_d();
  ZDistanceResult r = minimize_torus_objective(code.h, offset, cfg);
  r.mu = phi_logical;
  return r;
}

}  // namespace tiger

#include "tiger/report.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "tiger/fock.hpp"
#include "tiger/gkz.hpp"

namespace tiger {

namespace {

constexpr double kMaxFileInt = 9007199254740992.0;  // 2^53

long checked_long(const Json& v, const std::string& where) {
  if (!v.is_number_integer())
    throw InvalidInput(where + ": expected an integer");
  std::int64_t i = v.get<std::int64_t>();
  if (i > (std::int64_t)kMaxFileInt || i < -(std::int64_t)kMaxFileInt)
    throw InvalidInput(where + ": integer magnitude above 2^53");
  return (long)i;
}

IntMatrix matrix_from_json(const Json& j, const std::string& where,
                           std::size_t cols_if_empty) {
  if (!j.is_array()) throw InvalidInput(where + ": expected an array of rows");
  std::vector<std::vector<long>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array())
      throw InvalidInput(where + " row " + std::to_string(i) +
                         ": expected an array");
    std::vector<long> row;
    for (std::size_t c = 0; c < j[i].size(); ++c)
      row.push_back(checked_long(
          j[i][c], where + "[" + std::to_string(i) + "][" +
                       std::to_string(c) + "]"));
    rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows, cols_if_empty);
}

Json matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_si());
    out.push_back(row);
  }
  return out;
}

Json complex_to_json(Cplx v) { return Json{{"re", v.real()}, {"im", v.imag()}}; }

std::vector<long> z_row_longs(const LogicalStructure& s, std::size_t i) {
  return to_longs(s.l_z.row(i));
}

}  // namespace

TigerCode code_from_definition(const Json& definition, std::string* name_out) {
  if (!definition.is_object())
    throw InvalidInput("definition: expected a JSON object");
  if (!definition.contains("G") || !definition.contains("H"))
    throw InvalidInput("definition: missing G or H");
  std::size_t cols = 0;
  if (definition["G"].is_array() && !definition["G"].empty() &&
      definition["G"][0].is_array())
    cols = definition["G"][0].size();
  else if (definition["H"].is_array() && !definition["H"].empty() &&
           definition["H"][0].is_array())
    cols = definition["H"][0].size();
  IntMatrix g = matrix_from_json(definition["G"], "G", cols);
  IntMatrix h = matrix_from_json(definition["H"], "H", g.cols() ? g.cols() : cols);
  std::vector<long> delta;
  if (definition.contains("delta")) {
    if (!definition["delta"].is_array())
      throw InvalidInput("delta: expected an array");
    for (std::size_t i = 0; i < definition["delta"].size(); ++i)
      delta.push_back(checked_long(definition["delta"][i], "delta"));
  } else {
    delta.assign(h.rows(), 0L);
  }
  double alpha = 1.0;
  if (definition.contains("alpha")) {
    if (!definition["alpha"].is_number())
      throw InvalidInput("alpha: expected a number");
    alpha = definition["alpha"].get<double>();
  }
  if (name_out)
    *name_out = definition.contains("name")
                    ? definition["name"].get<std::string>()
                    : "";
  return make_tiger_code(std::move(g), std::move(h), std::move(delta), alpha);
}

Json definition_from_code(const TigerCode& code, const std::string& name) {
  Json out;
  if (!name.empty()) out["name"] = name;
  out["G"] = matrix_to_json(code.pair.g);
  out["H"] = matrix_to_json(code.pair.h);
  out["delta"] = code.delta;
  out["alpha"] = code.alpha;
  return out;
}

long pick_cutoff(const TigerCode& code, long requested) {
  if (requested > 0) return requested;
  double mean = (double)code.pair.modes * code.alpha * code.alpha;
  long cutoff = default_cutoff(mean);
  if (code.pair.finite_support) {
    // sectors saturate; grow until the basis is stable under doubling
    long cap = 16;
    std::size_t prev = 0;
    for (int i = 0; i < 12; ++i) {
      SectorPtr s = enumerate_sector(code.pair.h, code.delta, cap);
      if (i > 0 && s->basis.size() == prev) return cap;
      prev = s->basis.size();
      cap *= 2;
    }
    return cap;
  }
  return cutoff;
}

Json distance_report(const TigerCode& code, const AnalysisOptions& opts) {
  Json out;
  XDistanceResult xd = x_distance(code.pair, code.structure, opts.x_bound);
  Json xj;
  xj["bound"] = xd.bound;
  switch (xd.status) {
    case XDistanceResult::Status::Found:
      xj["status"] = "found";
      xj["value"] = xd.value;
      xj["witness"] = xd.witness;
      break;
    case XDistanceResult::Status::ExceedsBound:
      xj["status"] = "exceeds_bound";
      break;
    case XDistanceResult::Status::Undefined:
      xj["status"] = "undefined";
      break;
  }
  out["x_distance"] = xj;

  LossDetectionResult loss =
      pure_loss_detection_limit(code.pair, std::max(1L, opts.loss_bound));
  out["pure_loss_detection"] = {{"t_max", loss.t_max},
                                {"capped", loss.capped},
                                {"bound", loss.bound}};
  if (!loss.first_undetectable.empty())
    out["pure_loss_detection"]["first_undetectable"] =
        loss.first_undetectable;

  TorusOptimizerConfig cfg;
  cfg.grid_points = opts.grid_points;
  cfg.threads = opts.threads;
  cfg.allow_high_dim = opts.grid_points > 0;
  Json zs = Json::array();
  for (std::size_t i = 0; i < code.structure.factors.size(); ++i) {
    Json zj;
    const LogicalFactor& f = code.structure.factors[i];
    if (f.kind == FactorKind::Torsion) {
      ZDistanceResult zd =
          z_distance_qudit(code.pair, code.structure.l_z.row(i), f.order, cfg);
      zj["kind"] = "qudit";
      zj["order"] = f.order.get_si();
      zj["value"] = zd.value;
      zj["mu"] = zd.mu;
      zj["phi"] = zd.phi;
      zj["starts"] = zd.starts;
      zj["converged"] = zd.converged;
    } else {
      ZDistanceResult zd = z_distance_continuous(
          code.pair, code.structure.l_z.row(i), opts.phi_logical, cfg);
      zj["kind"] = "continuous";
      zj["phi_logical"] = opts.phi_logical;
      zj["value"] = zd.value;
      zj["phi"] = zd.phi;
      zj["starts"] = zd.starts;
      zj["converged"] = zd.converged;
    }
    zs.push_back(zj);
  }
  out["z_distance"] = zs;
  return out;
}

namespace {

Json dephasing_table(const TigerCode& code, long cutoff) {
  Json rows = Json::array();
  if (code.structure.factors.empty()) return rows;
  const std::size_t n = code.pair.modes;
  const LogicalFactor& f = code.structure.factors[0];
  double mu = f.kind == FactorKind::Torsion
                  ? 2.0 * M_PI / f.order.get_d()
                  : M_PI;
  double nu = 0.0;
  std::vector<long> z = z_row_longs(code.structure, 0);

  std::set<std::vector<long>> ps;
  ps.insert(std::vector<long>(n, 0L));
  for (std::size_t j = 0; j < std::min<std::size_t>(n, 2); ++j) {
    std::vector<long> p(n, 0L);
    p[j] = 1;
    ps.insert(p);
  }
  {
    std::vector<long> p(n, 0L);
    for (std::size_t j = 0; j < n; ++j) {
      Int e = code.structure.l_x(0, j);
      p[j] = e > 0 ? e.get_si() : 0;
    }
    ps.insert(p);
  }

  SectorPtr sector = enumerate_sector(code.pair.h, code.delta, cutoff);
  StateVector ket = build_x_codeword(sector, z, mu, code.alpha);
  StateVector bra = build_x_codeword(sector, z, nu, code.alpha);
  for (const auto& p : ps) {
    Json row;
    row["p"] = p;
    row["mu"] = mu;
    row["nu"] = nu;
    IntVec pv = to_intvec(p);
    ErrorClass cls = classify_error(code.pair, p, std::vector<long>(n, 0L));
    row["loss_class"] = cls == ErrorClass::Detectable ? "detectable"
                        : cls == ErrorClass::Trivial  ? "trivial"
                                                      : "logical";
    Cplx fock = matrix_element(bra, p, p, ket);
    DephasingElement el = dephasing_via_gkz(code.pair.h, code.delta, z, mu, nu,
                                            p, code.alpha, cutoff);
    row["fock"] = complex_to_json(fock);
    row["gkz"] = complex_to_json(el.value);
    row["abs_difference"] = std::abs(fock - el.value);
    row["tail_bound"] = el.numerator.tail_bound;
    row["cancellation_suspect"] = el.numerator.cancellation_suspect;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

Json analyze_code(const TigerCode& code, const AnalysisOptions& opts,
                  const CatalogEntry* entry) {
  auto t0 = std::chrono::steady_clock::now();
  Json out;
  out["css_ok"] = true;
  out["modes"] = code.pair.modes;
  out["support"] = code.pair.finite_support ? "finite" : "infinite";
  out["G"] = matrix_to_json(code.pair.g);
  out["H"] = matrix_to_json(code.pair.h);
  out["delta"] = code.delta;
  out["alpha"] = code.alpha;

  Json logical;
  logical["free_rank"] = code.structure.free_rank;
  Json torsion = Json::array();
  for (const Int& k : code.structure.torsion_orders)
    torsion.push_back(k.get_si());
  logical["torsion_orders"] = torsion;
  logical["L_X"] = matrix_to_json(code.structure.l_x);
  logical["L_Z"] = matrix_to_json(code.structure.l_z);
  Json kinds = Json::array();
  for (std::size_t i = 0; i < code.structure.factors.size(); ++i) {
    const LogicalFactor& f = code.structure.factors[i];
    if (f.kind == FactorKind::Torsion) {
      kinds.push_back("Z" + std::to_string(f.order.get_si()));
      continue;
    }
    // free factors are tagged by the ledge structure of their label
    // sectors: one-sided labels behave like a mode, two-sided like a rotor
    FreeFactorKind kind = classify_free_factor(
        code.pair.h, code.delta, to_longs(code.structure.l_z.row(i)), 12);
    kinds.push_back(kind == FreeFactorKind::ModeLike ? "free (mode-like)"
                                                     : "free (rotor-like)");
  }
  logical["factors"] = kinds;
  if (!code.pair.finite_support && code.structure.l_x.rows() > 0) {
    auto nn = canonicalize_nonnegative_lx(code.pair, code.structure.l_x);
    if (nn)
      logical["L_X_nonnegative"] = matrix_to_json(*nn);
    else
      logical["L_X_nonnegative_error"] =
          "no non-negative representative within the shift bound";
  }
  out["logical"] = logical;

  out.update(distance_report(code, opts));

  long cutoff = pick_cutoff(code, opts.cutoff);
  out["meta"]["cutoff"] = cutoff;
  if (!opts.skip_dephasing && !code.structure.factors.empty()) {
    SectorPtr sector = enumerate_sector(code.pair.h, code.delta, cutoff);
    if (!sector->empty()) {
      out["dephasing"] = dephasing_table(code, cutoff);
    } else {
      throw PreconditionViolation("inadmissible delta: empty Fock sector");
    }
  }

  Json norm;
  {
    GkzSpec spec;
    spec.h = code.pair.h;
    spec.delta = code.delta;
    spec.y.assign(code.pair.modes, Cplx(code.alpha * code.alpha, 0.0));
    GkzValue a = gkz_sum(spec, cutoff);
    norm["sum"] = complex_to_json(a.value);
    norm["tail_bound"] = a.tail_bound;
    try {
      double saddle = saddle_normalization(code.pair.h, code.alpha);
      norm["saddle"] = saddle;
      norm["ratio"] = a.value.real() / saddle;
    } catch (const PreconditionViolation&) {
      norm["saddle"] = nullptr;
    }
  }
  out["gkz_normalization"] = norm;

  if (entry) {
    Json exp;
    exp["logical_type"] = entry->expected.logical_type;
    if (entry->expected.d_x) exp["d_x"] = *entry->expected.d_x;
    if (entry->expected.d_z) exp["d_z"] = *entry->expected.d_z;
    if (!entry->expected.d_z_formula.empty())
      exp["d_z_formula"] = entry->expected.d_z_formula;
    exp["flags"] = entry->expected.flags;
    out["expected"] = exp;
  }

  auto t1 = std::chrono::steady_clock::now();
  out["meta"]["runtime_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  out["meta"]["threads"] = opts.threads;
  out["meta"]["grid_points"] = opts.grid_points;
  return out;
}

Json dephasing_sweep(const TigerCode& code, const std::vector<long>& p,
                     double mu, double nu,
                     const std::vector<double>& alpha_sq_grid, long cutoff) {
  if (code.structure.factors.empty())
    throw PreconditionViolation("dephasing sweep needs a logical factor");
  std::vector<long> z = z_row_longs(code.structure, 0);
  Json rows = Json::array();
  std::vector<double> xs, ys;
  for (double a2 : alpha_sq_grid) {
    DephasingElement el = dephasing_via_gkz(code.pair.h, code.delta, z, mu, nu,
                                            p, std::sqrt(a2), cutoff);
    double mag = std::abs(el.value);
    Json row;
    row["alpha_sq"] = a2;
    row["element"] = complex_to_json(el.value);
    if (mag > 0)
      row["log_element_sq"] = 2.0 * std::log(mag);
    else
      row["log_element_sq"] = nullptr;
    row["cancellation_suspect"] = el.numerator.cancellation_suspect;
    rows.push_back(row);
    if (mag >= 1e-300) {
      xs.push_back(a2);
      ys.push_back(2.0 * std::log(mag));
    }
  }
  Json out;
  out["rows"] = rows;
  out["p"] = p;
  out["mu"] = mu;
  out["nu"] = nu;
  out["cutoff"] = cutoff;
  if (xs.size() >= 2) {
    SlopeFit fit = least_squares_line(xs, ys);
    out["slope"] = fit.slope;
    out["intercept"] = fit.intercept;
    out["fit_points"] = fit.points;
  }
  return out;
}

Json gkz_report(const TigerCode& code, const std::vector<Cplx>& y, long cutoff,
                const CatalogEntry* entry) {
  GkzSpec spec;
  spec.h = code.pair.h;
  spec.delta = code.delta;
  spec.y = y;
  Json out;
  GkzValue v = gkz_sum(spec, cutoff);
  out["sum"] = complex_to_json(v.value);
  out["tail_bound"] = v.tail_bound;
  out["terms"] = v.terms;
  out["cancellation_suspect"] = v.cancellation_suspect;
  out["cutoff"] = cutoff;
  if (code.pair.h.rows() <= 3) {
    Cplx integral = gkz_integral(spec, 64);
    out["integral"] = complex_to_json(integral);
    out["sum_integral_difference"] = std::abs(v.value - integral);
  }
  if (entry && entry->expected.gkz_family) {
    Cplx cf = closed_form(*entry->expected.gkz_family, code.delta, y);
    out["closed_form"] = complex_to_json(cf);
    out["sum_closed_form_difference"] = std::abs(v.value - cf);
  }
  return out;
}

std::string codeword_dump(const TigerCode& code, const std::string& basis,
                          double mu, long ell, long cutoff) {
  if (code.structure.factors.empty())
    throw PreconditionViolation("codeword dump needs a logical factor");
  long cut = pick_cutoff(code, cutoff);
  SectorPtr sector = enumerate_sector(code.pair.h, code.delta, cut);
  std::vector<long> z = z_row_longs(code.structure, 0);
  const LogicalFactor& f = code.structure.factors[0];
  StateVector st;
  if (basis == "x") {
    st = build_x_codeword(sector, z, mu, code.alpha);
  } else if (basis == "z") {
    long modulus =
        f.kind == FactorKind::Torsion ? f.order.get_si() : 0;
    st = build_z_codeword(sector, z, ell, modulus, code.alpha);
  } else {
    throw InvalidInput("basis must be x or z");
  }
  std::ostringstream os;
  Json header;
  header["H"] = matrix_to_json(code.pair.h);
  header["delta"] = code.delta;
  header["n_max"] = cut;
  header["basis"] = basis;
  header["z"] = z;
  if (basis == "x")
    header["mu"] = mu;
  else
    header["ell"] = ell;
  header["truncation_tail"] = st.truncation_tail;
  os << header.dump() << "\n";
  for (std::size_t i = 0; i < sector->basis.size(); ++i) {
    if (st.amp[i] == Cplx(0.0, 0.0)) continue;
    Json line;
    line["n"] = sector->basis[i];
    line["re"] = st.amp[i].real();
    line["im"] = st.amp[i].imag();
    os << line.dump() << "\n";
  }
  return os.str();
}

}  // namespace tiger

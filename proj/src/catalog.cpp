#include "tiger/catalog.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace tiger {

TigerCode make_tiger_code(IntMatrix g, IntMatrix h, std::vector<long> delta,
                          double alpha) {
  TigerCode code;
  code.pair = make_generator_pair(std::move(g), std::move(h));
  if (delta.size() != code.pair.h.rows())
    throw InvalidInput("delta length must equal the number of H rows");
  if (alpha <= 0.0) throw InvalidInput("alpha must be positive");
  code.structure = logical_structure(code.pair);
  code.delta = std::move(delta);
  code.alpha = alpha;
  return code;
}

TigerCode CatalogEntry::instantiate(std::vector<long> delta,
                                    double alpha) const {
  if (delta.empty()) delta = default_delta;
  if (delta.size() != pair.h.rows())
    throw InvalidInput("delta length must equal the number of H rows");
  TigerCode code;
  code.pair = pair;
  code.structure = logical_structure(pair);
  code.delta = std::move(delta);
  code.alpha = alpha;
  return code;
}

namespace {

long param_long(const Json& params, const std::string& key, long fallback,
                bool required = false) {
  if (!params.contains(key)) {
    if (required) throw InvalidInput("missing catalog parameter: " + key);
    return fallback;
  }
  if (!params[key].is_number_integer())
    throw InvalidInput("catalog parameter must be an integer: " + key);
  return params[key].get<long>();
}

std::string param_string(const Json& params, const std::string& key,
                         const std::string& fallback) {
  if (!params.contains(key)) return fallback;
  return params[key].get<std::string>();
}

// A_N chain rows e_j - e_{j+1}
IntMatrix chain_matrix(long n) {
  IntMatrix h(n - 1, n);
  for (long j = 0; j + 1 < n; ++j) {
    h(j, j) = 1;
    h(j, j + 1) = -1;
  }
  return h;
}

// cyclic repetition rows e_j + e_{j+1 mod n}
IntMatrix cyclic_repetition(long n) {
  IntMatrix g(n, n);
  for (long j = 0; j < n; ++j) {
    g(j, j) = 1;
    g(j, (j + 1) % n) = 1;
  }
  return g;
}

// open chain: cyclic repetition without its last row
IntMatrix open_repetition(long n) {
  IntMatrix g(n - 1, n);
  for (long j = 0; j + 1 < n; ++j) {
    g(j, j) = 1;
    g(j, j + 1) = 1;
  }
  return g;
}

IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

IntMatrix negated(IntMatrix m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
  return m;
}

double dz_chain(long n_modes, long k_rot) {
  // 4 N K sin^2(pi / 2K) pattern shared by several families
  double s = std::sin(M_PI / (2.0 * (double)k_rot));
  return 4.0 * (double)n_modes * s * s;
}

// hypergraph product of the cyclic chain R_r (possibly with a modified
// last row) and the open chain T_m.  H carries the orientation for which
// the first-block-negated normalization function is supported on
// non-negative syndromes; the opposite overall sign is the same code.
std::pair<IntMatrix, IntMatrix> surface_product(const IntMatrix& r_seed,
                                                long r, long m) {
  IntMatrix t_m = open_repetition(m);
  IntMatrix g = hstack(kron(IntMatrix::identity(m), r_seed),
                       kron(t_m.transposed(), IntMatrix::identity(r)));
  IntMatrix h = hstack(negated(kron(t_m, IntMatrix::identity(r))),
                       kron(IntMatrix::identity(m - 1), r_seed.transposed()));
  return {std::move(g), std::move(h)};
}

}  // namespace

CatalogEntry catalog_make(const std::string& name, const Json& params) {
  CatalogEntry e;
  e.name = name;
  e.params = params.is_null() ? Json::object() : params;

  auto finish = [&](IntMatrix g, IntMatrix h) {
    e.pair = make_generator_pair(std::move(g), std::move(h));
    if (e.default_delta.empty())
      e.default_delta.assign(e.pair.h.rows(), 0L);
  };

  if (name == "two-component-cat") {
    e.expected = {"qubit", {2}, 0, 1, 4.0, std::nullopt, "4",
                  GkzFamily::Exponential, {}};
    finish(IntMatrix::from_rows({{2}}), IntMatrix(0, 1));
  } else if (name == "pair-cat") {
    long m1 = param_long(e.params, "m1", 1);
    long m2 = param_long(e.params, "m2", 1);
    if (m1 < 1 || m2 < 1 || std::gcd(m1, m2) != 1)
      throw InvalidInput("pair-cat weights must be coprime positive integers");
    e.expected.logical_type = "qubit";
    e.expected.torsion_orders = {2};
    e.expected.d_x = m1 + m2;
    if (m1 == 1 && m2 == 1) {
      e.expected.d_z = 4.0;
      e.expected.d_z_formula = "4";
      e.expected.gkz_family = GkzFamily::PairCat;
    }
    finish(IntMatrix::from_rows({{2 * m2, 2 * m1}}),
           IntMatrix::from_rows({{m1, -m2}}));
  } else if (name == "extended-pair-cat") {
    long n = param_long(e.params, "n", 3, true);
    if (n < 2) throw InvalidInput("extended-pair-cat needs n >= 2 modes");
    e.expected = {"qubit", {2}, 0, n, dz_chain(n, n),
                  std::nullopt,
                  "4 n sin^2(pi/2n)",
                  GkzFamily::ExtendedPairCat,
                  {}};
    IntMatrix g(1, n);
    for (long j = 0; j < n; ++j) g(0, j) = 2;
    finish(std::move(g), chain_matrix(n));
  } else if (name == "pair-coherent-rotor") {
    e.expected = {"rotor", {}, 1, 1, std::nullopt, std::nullopt,
                  "4 sin^2(phi/2)", GkzFamily::Exponential, {}};
    finish(IntMatrix::from_rows({{1, 1}}), IntMatrix(0, 2));
  } else if (name == "pair-coherent-mode") {
    e.expected = {"mode", {}, 1, 2, std::nullopt, std::nullopt,
                  "8 sin^2(phi/4)", GkzFamily::PairCat, {}};
    finish(IntMatrix(0, 2), IntMatrix::from_rows({{1, -1}}));
  } else if (name == "fock-repetition") {
    long n = param_long(e.params, "n", 3, true);
    if (n < 1) throw InvalidInput("fock-repetition needs n >= 1 modes");
    e.expected = {n == 1 ? "rotor" : "mode", {}, 1, n, std::nullopt,
                  std::nullopt, "4 n sin^2(phi/2n)", std::nullopt, {}};
    if (n == 2) e.expected.gkz_family = GkzFamily::PairCat;
    finish(IntMatrix(0, n), chain_matrix(n));
  } else if (name == "coherent-repetition") {
    long n = param_long(e.params, "n", 3, true);
    std::string boundary = param_string(e.params, "boundary", "closed");
    if (n < 2) throw InvalidInput("coherent-repetition needs n >= 2 modes");
    bool closed = boundary == "closed";
    if (!closed && boundary != "open")
      throw InvalidInput("boundary must be closed or open");
    bool qubit = closed && n % 2 == 1;
    e.expected.logical_type = qubit ? "qubit" : "rotor";
    if (qubit) {
      e.expected.torsion_orders = {2};
      e.expected.d_z = 4.0 * (double)n;
      e.expected.d_z_formula = "4 n";
    } else {
      e.expected.free_rank = 1;
    }
    e.expected.d_x = 1;
    e.expected.gkz_family = GkzFamily::Exponential;
    finish(closed ? cyclic_repetition(n) : open_repetition(n),
           IntMatrix(0, n));
  } else if (name == "four-mode-tiger") {
    e.expected = {"qubit", {2}, 0, 2, 8.0, std::nullopt, "8",
                  GkzFamily::FourModeTiger,
                  {"exact zero dephasing for detectable p"}};
    finish(IntMatrix::from_rows({{1, 1, 0, 0}, {0, 0, 1, 1}, {0, 2, 0, 2}}),
           IntMatrix::from_rows({{1, -1, -1, 1}}));
  } else if (name == "tiger-shor") {
    long l = param_long(e.params, "l", 2, true);
    long m = param_long(e.params, "m", 2, true);
    if (l < 2 || m < 2) throw InvalidInput("tiger-shor needs l, m >= 2");
    e.expected = {"qubit", {2}, 0, m,
                  dz_chain(l * m, m),
                  std::nullopt,
                  "4 l m sin^2(pi/2m)",
                  std::nullopt,
                  {}};
    // G = [ T_l (x) 1_m ; e_1 (x) (2..2) ],  H = z_1 (x) A_m
    IntMatrix top = kron(open_repetition(l), IntMatrix::identity(m));
    IntMatrix twos(1, m);
    for (long j = 0; j < m; ++j) twos(0, j) = 2;
    IntMatrix e1(1, l);
    e1(0, 0) = 1;
    IntMatrix z1(1, l);
    for (long j = 0; j < l; ++j) z1(0, j) = (j % 2 == 0) ? 1 : -1;
    finish(vstack(top, kron(e1, twos)), kron(z1, chain_matrix(m)));
  } else if (name == "tiger-surface" || name == "liger" ||
             name == "tiger-surface-open") {
    long r = param_long(e.params, "r", 3, name != "tiger-surface-open");
    long m = name == "liger" ? 2 : param_long(e.params, "m", 2);
    if (m < 2) throw InvalidInput("surface length m must be >= 2");
    if (name == "tiger-surface-open") {
      long k = param_long(e.params, "k", 2, true);
      if (r < 3 || k < 2)
        throw InvalidInput("open surface needs r >= 3 and k >= 2");
      IntMatrix seed = cyclic_repetition(r);
      for (long j = 0; j < r; ++j) seed(r - 1, j) = 0;
      seed(r - 1, 0) = k;
      e.expected.logical_type = "qudit";
      e.expected.torsion_orders = {k};
      e.expected.d_x = m;
      auto [g, h] = surface_product(seed, r, m);
      finish(std::move(g), std::move(h));
    } else {
      if (r < 3 || r % 2 == 0)
        throw InvalidInput(
            "surface diameter r must be odd and >= 3; even r yields an "
            "infinite-dimensional logical space");
      e.expected.logical_type = "qubit";
      e.expected.torsion_orders = {2};
      e.expected.d_x = m;
      double lower = dz_chain(r * m, m);
      double extra = 0.0;
      for (long j = 1; j < m; ++j) {
        double s = std::sin((double)(m - j) * M_PI / (double)m);
        extra += 4.0 * s * s;
      }
      if (m == 2) {
        e.expected.d_z = 4.0 * (double)r;
        e.expected.d_z_formula = "4 r";
        e.expected.gkz_family = GkzFamily::Liger;
        e.expected.flags = {"exact zero dephasing when H p has a positive entry",
                            "orthogonal X basis for suitable syndromes"};
      } else {
        e.expected.d_z_bounds = {lower, lower + extra};
        e.expected.d_z_formula =
            "4 r m sin^2(pi/2m) <= d_Z <= 4 r m sin^2(pi/2m) + 4 "
            "sum_j sin^2((m-j)pi/m)";
      }
      auto [g, h] = surface_product(cyclic_repetition(r), r, m);
      finish(std::move(g), std::move(h));
    }
  } else if (name == "two-mode-binomial") {
    e.delta_required = true;
    e.expected = {"qubit", {2}, 0, 2, std::nullopt, std::nullopt, "",
                  GkzFamily::TwoModeBinomial,
                  {"exact zero dephasing for |p| < delta"}};
    e.default_delta = {1};
    finish(IntMatrix::from_rows({{2, -2}}), IntMatrix::from_rows({{1, 1}}));
  } else if (name == "multinomial") {
    long n = param_long(e.params, "n", 3, true);
    if (n < 2) throw InvalidInput("multinomial needs n >= 2 modes");
    e.delta_required = true;
    e.expected = {"qudit", {n}, 0, 2, std::nullopt, std::nullopt, "",
                  GkzFamily::Multinomial,
                  {"exact zero dephasing for |p| < delta"}};
    e.default_delta = {n};
    IntMatrix g(n - 1, n);
    for (long j = 0; j + 1 < n; ++j) {
      g(j, j % n) += 1;
      g(j, (j + 1) % n) += -2;
      g(j, (j + 2) % n) += 1;
    }
    IntMatrix h(1, n);
    for (long j = 0; j < n; ++j) h(0, j) = 1;
    finish(std::move(g), std::move(h));
  } else if (name == "center-of-mass") {
    e.expected = {"mode", {}, 1, 1, std::nullopt, std::nullopt, "",
                  GkzFamily::Exponential, {}};
    finish(IntMatrix::from_rows({{1, -1}}), IntMatrix(0, 2));
  } else if (name == "four-mode-binomial") {
    e.delta_required = true;
    e.expected = {"qubit", {2}, 0, 2, std::nullopt, std::nullopt, "",
                  GkzFamily::Multinomial, {}};
    e.default_delta = {2};
    finish(IntMatrix::from_rows({{1, -1, 0, 0}, {0, 0, 1, -1}, {1, 1, -1, -1}}),
           IntMatrix::from_rows({{1, 1, 1, 1}}));
  } else if (name == "chi2-like") {
    long d1 = param_long(e.params, "delta1", 2);
    long d2 = param_long(e.params, "delta2", 2);
    if (d1 < 1 || d2 < 1) throw InvalidInput("chi2-like needs deltas >= 1");
    e.delta_required = true;
    e.expected = {"qubit", {2}, 0, 3, std::nullopt, std::nullopt, "",
                  GkzFamily::Chi2, {}};
    e.default_delta = {d1, d2};
    finish(IntMatrix::from_rows({{2, 2, -2}}),
           IntMatrix::from_rows({{0, 1, 1}, {1, 0, 1}}));
  } else if (name == "calabi-yau-cubic") {
    long d = param_long(e.params, "delta", 3);
    if (d < 1) throw InvalidInput("calabi-yau-cubic needs delta >= 1");
    e.delta_required = true;
    e.expected = {"qubit", {2}, 0, 6, std::nullopt, std::nullopt, "",
                  std::nullopt,
                  {"detects arbitrary losses on any mode"}};
    e.default_delta = {d, 0, 0};
    finish(IntMatrix::from_rows({{-6, 2, 2, 2}}),
           IntMatrix::from_rows(
               {{1, 1, 1, 1}, {0, 1, 0, -1}, {0, 0, 1, -1}}));
  } else if (name == "calabi-yau-hypersurface") {
    long n = param_long(e.params, "n", 4, true);
    long d = param_long(e.params, "delta", 3);
    if (n < 3) throw InvalidInput("calabi-yau-hypersurface needs n >= 3");
    e.delta_required = true;
    e.expected = {"qubit", {2}, 0, 2 * (n - 1), std::nullopt, std::nullopt,
                  "", std::nullopt, {}};
    e.default_delta.assign(n - 1, 0L);
    e.default_delta[0] = d;
    IntMatrix h(n - 1, n);
    for (long j = 0; j < n; ++j) h(0, j) = 1;
    for (long j = 1; j + 1 < n; ++j) {
      h(j, j) = 1;
      h(j, n - 1) = -1;
    }
    IntMatrix g(1, n);
    g(0, 0) = -2 * (n - 1);
    for (long j = 1; j < n; ++j) g(0, j) = 2;
    finish(std::move(g), std::move(h));
  } else {
    throw InvalidInput("unknown catalog code: " + name);
  }
  return e;
}

std::vector<std::string> catalog_names() {
  return {"two-component-cat", "pair-cat",         "extended-pair-cat",
          "pair-coherent-rotor", "pair-coherent-mode", "fock-repetition",
          "coherent-repetition", "four-mode-tiger", "tiger-shor",
          "tiger-surface",     "tiger-surface-open", "liger",
          "two-mode-binomial", "multinomial",      "center-of-mass",
          "four-mode-binomial", "chi2-like",       "calabi-yau-cubic",
          "calabi-yau-hypersurface"};
}

Json catalog_listing() {
  static const std::map<std::string, Json> schemas = {
      {"two-component-cat", Json::object()},
      {"pair-cat", {{"m1", "coprime positive weight (default 1)"},
                    {"m2", "coprime positive weight (default 1)"}}},
      {"extended-pair-cat", {{"n", "mode count >= 2"}}},
      {"pair-coherent-rotor", Json::object()},
      {"pair-coherent-mode", Json::object()},
      {"fock-repetition", {{"n", "mode count >= 1"}}},
      {"coherent-repetition",
       {{"n", "mode count >= 2"}, {"boundary", "closed|open"}}},
      {"four-mode-tiger", Json::object()},
      {"tiger-shor", {{"l", "repetition length >= 2"}, {"m", "width >= 2"}}},
      {"tiger-surface", {{"r", "odd diameter >= 3"}, {"m", "length >= 2"}}},
      {"tiger-surface-open",
       {{"r", "diameter >= 3"}, {"m", "length >= 2"}, {"k", "logical order"}}},
      {"liger", {{"r", "odd diameter >= 3"}}},
      {"two-mode-binomial", Json::object()},
      {"multinomial", {{"n", "mode count >= 2"}}},
      {"center-of-mass", Json::object()},
      {"four-mode-binomial", Json::object()},
      {"chi2-like",
       {{"delta1", "first syndrome >= 1"}, {"delta2", "second syndrome >= 1"}}},
      {"calabi-yau-cubic", {{"delta", "total occupation >= 1"}}},
      {"calabi-yau-hypersurface",
       {{"n", "mode count >= 3"}, {"delta", "total occupation >= 1"}}},
  };
  Json out = Json::array();
  for (const std::string& name : catalog_names()) {
    Json defaults = Json::object();
    if (name == "extended-pair-cat" || name == "fock-repetition" ||
        name == "coherent-repetition" || name == "multinomial")
      defaults["n"] = 3;
    if (name == "tiger-shor") {
      defaults["l"] = 2;
      defaults["m"] = 2;
    }
    if (name == "tiger-surface" || name == "liger" ||
        name == "tiger-surface-open")
      defaults["r"] = 3;
    if (name == "tiger-surface-open") defaults["k"] = 2;
    if (name == "calabi-yau-hypersurface") defaults["n"] = 4;
    CatalogEntry e = catalog_make(name, defaults);
    Json j;
    j["name"] = name;
    j["params"] = schemas.at(name);
    Json ex;
    ex["logical_type"] = e.expected.logical_type;
    ex["torsion_orders"] = e.expected.torsion_orders;
    ex["free_rank"] = e.expected.free_rank;
    if (e.expected.d_x) ex["d_x"] = *e.expected.d_x;
    if (e.expected.d_z) ex["d_z"] = *e.expected.d_z;
    if (e.expected.d_z_bounds) {
      ex["d_z_lower"] = e.expected.d_z_bounds->first;
      ex["d_z_upper"] = e.expected.d_z_bounds->second;
    }
    if (!e.expected.d_z_formula.empty())
      ex["d_z_formula"] = e.expected.d_z_formula;
    ex["flags"] = e.expected.flags;
    j["expected"] = ex;
    j["delta_required"] = e.delta_required;
    j["modes"] = e.pair.modes;
    Json g = Json::array(), h = Json::array();
    for (std::size_t i = 0; i < e.pair.g.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t c = 0; c < e.pair.g.cols(); ++c)
        row.push_back(e.pair.g(i, c).get_si());
      g.push_back(row);
    }
    for (std::size_t i = 0; i < e.pair.h.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t c = 0; c < e.pair.h.cols(); ++c)
        row.push_back(e.pair.h(i, c).get_si());
      h.push_back(row);
    }
    j["G"] = g;
    j["H"] = h;
    j["delta"] = e.default_delta;
    out.push_back(j);
  }
  return out;
}

}  // namespace tiger

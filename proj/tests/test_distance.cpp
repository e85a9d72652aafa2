#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tiger/catalog.hpp"
#include "tiger/distance.hpp"

using namespace tiger;

namespace {

GeneratorPair pair_cat() {
  return make_generator_pair(IntMatrix::from_rows({{2, 2}}),
                             IntMatrix::from_rows({{1, -1}}));
}

double dz_formula(long n, long k) {
  double s = std::sin(M_PI / (2.0 * (double)k));
  return 4.0 * (double)n * s * s;
}

}  // namespace

TEST_CASE("error classification trichotomy") {
  GeneratorPair code = pair_cat();
  CHECK(classify_error(code, {1, 1}, {1, 0}) == ErrorClass::Detectable);
  CHECK(classify_error(code, {2, 2}, {1, 1}) == ErrorClass::Logical);
  CHECK(classify_error(code, {3, 0}, {3, 0}) == ErrorClass::Trivial);
  CHECK(classify_error(code, {2, 2}, {0, 0}) == ErrorClass::Trivial);
  CHECK(classify_error(code, {1, 1}, {0, 0}) == ErrorClass::Logical);
}

TEST_CASE("x distance: charge-constraint pairs") {
  GeneratorPair code = pair_cat();
  LogicalStructure s = logical_structure(code);
  XDistanceResult xd = x_distance(code, s);
  REQUIRE(xd.status == XDistanceResult::Status::Found);
  CHECK(xd.value == 2);
  CHECK(xd.witness == std::vector<long>{1, 1});

  // the witness splits into a logical loss-gain pair
  std::vector<long> p(xd.witness.size(), 0), q(xd.witness.size(), 0);
  for (std::size_t j = 0; j < xd.witness.size(); ++j) {
    if (xd.witness[j] > 0) p[j] = xd.witness[j];
    if (xd.witness[j] < 0) q[j] = -xd.witness[j];
  }
  CHECK(classify_error(code, p, q) == ErrorClass::Logical);

  // generalized weights: distance m1 + m2
  CatalogEntry gen = catalog_make("pair-cat", {{"m1", 1}, {"m2", 2}});
  LogicalStructure sg = logical_structure(gen.pair);
  XDistanceResult xg = x_distance(gen.pair, sg);
  CHECK(xg.value == 3);
}

TEST_CASE("x distance: chains, four-mode, and projective-variety code") {
  CatalogEntry ext = catalog_make("extended-pair-cat", {{"n", 4}});
  XDistanceResult xe = x_distance(ext.pair, logical_structure(ext.pair));
  CHECK(xe.value == 4);

  CatalogEntry four = catalog_make("four-mode-tiger", {});
  XDistanceResult x4 = x_distance(four.pair, logical_structure(four.pair));
  CHECK(x4.value == 2);
  // deterministic lexicographic tie-break; (0,1,-1,0) = (0,1,0,1) - g_2
  CHECK(x4.witness == std::vector<long>{0, 1, -1, 0});
  CHECK(classify_error(four.pair, {0, 1, 0, 0}, {0, 0, 1, 0}) ==
        ErrorClass::Logical);

  CatalogEntry cy = catalog_make("calabi-yau-cubic", {{"delta", 3}});
  XDistanceResult xc = x_distance(cy.pair, logical_structure(cy.pair));
  CHECK(xc.value == 6);
  std::vector<long> t{-3, 1, 1, 1}, tneg{3, -1, -1, -1};
  CHECK((xc.witness == t || xc.witness == tneg));
}

TEST_CASE("x distance on the thin surface strip: vertical signed string") {
  CatalogEntry liger = catalog_make("liger", {{"r", 3}});
  XDistanceResult xl = x_distance(liger.pair, logical_structure(liger.pair));
  REQUIRE(xl.status == XDistanceResult::Status::Found);
  CHECK(xl.value == 2);
  // support: column pair (j, r + j) with opposite signs, horizontal block 0
  long r = 3;
  int hits = 0;
  for (long j = 0; j < r; ++j) {
    if (xl.witness[j] != 0) {
      ++hits;
      CHECK(xl.witness[j] == -xl.witness[j + r]);
    }
  }
  CHECK(hits == 1);
  for (long j = 2 * r; j < 3 * r; ++j) CHECK(xl.witness[j] == 0);
}

TEST_CASE("x distance reports bound exhaustion honestly") {
  GeneratorPair code = pair_cat();
  LogicalStructure s = logical_structure(code);
  XDistanceResult xd = x_distance(code, s, 1);  // d_X = 2 is out of reach
  CHECK(xd.status == XDistanceResult::Status::ExceedsBound);
  CHECK(xd.bound == 1);
}

TEST_CASE("x distance reports undefined for a trivial codespace") {
  GeneratorPair trivial = make_generator_pair(IntMatrix::from_rows({{1}}),
                                              IntMatrix(0, 1));
  XDistanceResult xd = x_distance(trivial, logical_structure(trivial));
  CHECK(xd.status == XDistanceResult::Status::Undefined);
}

TEST_CASE("pure-loss detection limits") {
  GeneratorPair code = pair_cat();
  LossDetectionResult pc = pure_loss_detection_limit(code, 8);
  CHECK(pc.t_max == 1);  // (1 1) is an undetectable two-loss
  CHECK_FALSE(pc.capped);
  CHECK(pc.first_undetectable == std::vector<long>{1, 1});

  CatalogEntry liger = catalog_make("liger", {{"r", 3}});
  LossDetectionResult ll = pure_loss_detection_limit(liger.pair, 5);
  CHECK(ll.t_max == 2);

  CatalogEntry cy = catalog_make("calabi-yau-cubic", {{"delta", 3}});
  LossDetectionResult lc = pure_loss_detection_limit(cy.pair, 8);
  CHECK(lc.t_max == 8);
  CHECK(lc.capped);
}

TEST_CASE("z distance closed forms for qubit codes") {
  GeneratorPair code = pair_cat();
  LogicalStructure s = logical_structure(code);
  ZDistanceResult zd = z_distance_qudit(code, s.l_z.row(0), Int(2));
  CHECK(zd.value == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(zd.converged == zd.starts);

  // no torus directions at all: closed-form sum of sines
  CatalogEntry cat2 = catalog_make("two-component-cat", {});
  LogicalStructure s2 = logical_structure(cat2.pair);
  ZDistanceResult z2 = z_distance_qudit(cat2.pair, s2.l_z.row(0), Int(2));
  CHECK(z2.value == doctest::Approx(4.0));

  for (long n : {2L, 4L, 6L}) {
    CatalogEntry ext = catalog_make("extended-pair-cat", {{"n", n}});
    LogicalStructure se = logical_structure(ext.pair);
    ZDistanceResult ze = z_distance_qudit(ext.pair, se.l_z.row(0), Int(2));
    CHECK(ze.value == doctest::Approx(dz_formula(n, n)).epsilon(1e-8));
  }

  CatalogEntry four = catalog_make("four-mode-tiger", {});
  LogicalStructure s4 = logical_structure(four.pair);
  ZDistanceResult z4 = z_distance_qudit(four.pair, s4.l_z.row(0), Int(2));
  CHECK(z4.value == doctest::Approx(8.0).epsilon(1e-9));
}

TEST_CASE("continuous z distance") {
  CatalogEntry fock = catalog_make("fock-repetition", {{"n", 3}});
  LogicalStructure s = logical_structure(fock.pair);
  REQUIRE(s.free_rank == 1);
  for (double phi : {0.0, 0.8, M_PI}) {
    ZDistanceResult zd = z_distance_continuous(fock.pair, s.l_z.row(0), phi);
    double want = 4.0 * 3.0 * std::pow(std::sin(phi / 6.0), 2);
    CHECK(zd.value == doctest::Approx(want).epsilon(1e-8));
  }

  // single-mode rotation representative: bare-encoding distance
  CatalogEntry rotor = catalog_make("pair-coherent-rotor", {});
  ZDistanceResult zr =
      z_distance_continuous(rotor.pair, IntVec{1, 0}, 0.9);
  CHECK(zr.value ==
        doctest::Approx(4.0 * std::pow(std::sin(0.45), 2)).epsilon(1e-10));
  // the canonical generator (-1,1) rotates both modes
  LogicalStructure sr = logical_structure(rotor.pair);
  ZDistanceResult zc = z_distance_continuous(rotor.pair, sr.l_z.row(0), 0.9);
  CHECK(zc.value ==
        doctest::Approx(8.0 * std::pow(std::sin(0.45), 2)).epsilon(1e-10));
}

TEST_CASE("objective is invariant under stabilizer shifts of z") {
  CatalogEntry ext = catalog_make("extended-pair-cat", {{"n", 3}});
  LogicalStructure s = logical_structure(ext.pair);
  IntVec z = s.l_z.row(0);
  ZDistanceResult base = z_distance_qudit(ext.pair, z, Int(2));
  IntVec shifted = z;
  for (std::size_t c = 0; c < 3; ++c)
    shifted[c] += 2 * ext.pair.h(0, c) - ext.pair.h(1, c);
  ZDistanceResult moved = z_distance_qudit(ext.pair, shifted, Int(2));
  CHECK(std::abs(base.value - moved.value) < 1e-8);
}

TEST_CASE("finer multistart grids never increase the reported distance") {
  CatalogEntry shor = catalog_make("tiger-shor", {{"l", 2}, {"m", 3}});
  LogicalStructure s = logical_structure(shor.pair);
  double prev = HUGE_VAL;
  for (int grid : {2, 4, 8}) {
    TorusOptimizerConfig cfg;
    cfg.grid_points = grid;
    ZDistanceResult zd = z_distance_qudit(shor.pair, s.l_z.row(0), Int(2), cfg);
    CHECK(zd.value <= prev + 1e-9);
    prev = zd.value;
  }
  CHECK(prev == doctest::Approx(dz_formula(6, 3)).epsilon(1e-8));
}

TEST_CASE("surface-strip distance bounds") {
  for (long r : {3L, 5L}) {
    for (long m : {2L, 3L}) {
      CatalogEntry surf =
          catalog_make("tiger-surface", {{"r", r}, {"m", m}});
      LogicalStructure s = logical_structure(surf.pair);
      TorusOptimizerConfig cfg;
      std::size_t rz = surf.pair.h.rows();
      if (rz > 8) {
        cfg.allow_high_dim = true;
        cfg.threads = 4;
      }
      ZDistanceResult zd =
          z_distance_qudit(surf.pair, s.l_z.row(0), Int(2), cfg);
      double lower = dz_formula(r * m, m);
      double upper = lower;
      for (long j = 1; j < m; ++j)
        upper += 4.0 * std::pow(std::sin((double)(m - j) * M_PI / m), 2);
      CHECK(zd.value >= lower - 1e-7);
      CHECK(zd.value <= upper + 1e-7);
    }
  }
}

TEST_CASE("multistart reduction is independent of the worker count") {
  CatalogEntry liger = catalog_make("liger", {{"r", 3}});
  LogicalStructure s = logical_structure(liger.pair);
  TorusOptimizerConfig one, four;
  one.threads = 1;
  four.threads = 4;
  ZDistanceResult a = z_distance_qudit(liger.pair, s.l_z.row(0), Int(2), one);
  ZDistanceResult b = z_distance_qudit(liger.pair, s.l_z.row(0), Int(2), four);
  CHECK(a.value == b.value);
  REQUIRE(a.phi.size() == b.phi.size());
  for (std::size_t i = 0; i < a.phi.size(); ++i) CHECK(a.phi[i] == b.phi[i]);
}

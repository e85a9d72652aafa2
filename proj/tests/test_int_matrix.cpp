#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tiger/int_matrix.hpp"

using namespace tiger;

namespace {

IntMatrix random_matrix(std::mt19937& rng, int rows, int cols, int mag) {
  std::uniform_int_distribution<int> d(-mag, mag);
  IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("smith form of simple rows") {
  auto s = smith_normal_form(IntMatrix::from_rows({{1, -1}}));
  CHECK(s.d(0, 0) == 1);
  CHECK(s.d(0, 1) == 0);
  auto s2 = smith_normal_form(IntMatrix::from_rows({{2, 2}}));
  CHECK(s2.d(0, 0) == 2);
  CHECK(s2.d(0, 1) == 0);
}

TEST_CASE("smith form of the four-mode generator has a 2-torsion factor") {
  IntMatrix g = IntMatrix::from_rows({{1, 1, 0, 0}, {0, 0, 1, 1}, {0, 2, 0, 2}});
  auto s = smith_normal_form(g);
  IntVec diag = s.diagonal();
  CHECK(diag[0] == 1);
  CHECK(diag[1] == 1);
  CHECK(diag[2] == 2);
  CHECK(s.rank == 3);
  CHECK(s.v * g * s.w == s.d);
}

TEST_CASE("smith form reconstruction and divisibility on random matrices") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    int r = 1 + (int)(rng() % 6), c = 1 + (int)(rng() % 6);
    IntMatrix m = random_matrix(rng, r, c, 5);
    auto s = smith_normal_form(m);
    CHECK(s.v * m * s.w == s.d);
    CHECK(s.vinv * s.d * s.winv == m);
    IntVec diag = s.diagonal();
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
      if (diag[i + 1] != 0) {
        REQUIRE(diag[i] != 0);
        CHECK(diag[i + 1] % diag[i] == 0);
      }
      CHECK(diag[i] >= 0);
    }
  }
}

TEST_CASE("kernel basis examples") {
  IntMatrix k = integer_kernel_basis(IntMatrix::from_rows({{1, -1}}));
  REQUIRE(k.rows() == 1);
  CHECK(k.row(0) == IntVec{1, 1});

  // chain of difference constraints: kernel generated by the all-ones row
  IntMatrix a4 = IntMatrix::from_rows(
      {{1, -1, 0, 0}, {0, 1, -1, 0}, {0, 0, 1, -1}});
  IntMatrix k4 = integer_kernel_basis(a4);
  REQUIRE(k4.rows() == 1);
  CHECK(k4.row(0) == IntVec{1, 1, 1, 1});

  IntMatrix cy = IntMatrix::from_rows(
      {{1, 1, 1, 1}, {0, 1, 0, -1}, {0, 0, 1, -1}});
  IntMatrix kcy = integer_kernel_basis(cy);
  REQUIRE(kcy.rows() == 1);
  IntVec t = kcy.row(0);
  if (t[0] > 0)
    for (Int& e : t) e = -e;
  CHECK(t == IntVec{-3, 1, 1, 1});
}

TEST_CASE("kernel basis annihilates and has complementary rank") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 40; ++trial) {
    int r = 1 + (int)(rng() % 4), c = 1 + (int)(rng() % 6);
    IntMatrix m = random_matrix(rng, r, c, 4);
    IntMatrix k = integer_kernel_basis(m);
    if (k.rows() > 0) CHECK((m * k.transposed()).is_zero());
    auto s = smith_normal_form(m);
    CHECK(k.rows() == (std::size_t)c - s.rank);
  }
}

TEST_CASE("row image membership with witness") {
  IntMatrix m = IntMatrix::from_rows({{2, 2}});
  auto w = in_row_image(m, IntVec{2, 2});
  CHECK(w.member);
  CHECK(w.coeffs == IntVec{1});
  CHECK_FALSE(in_row_image(m, IntVec{1, 1}).member);
  auto z = in_row_image(m, IntVec{0, 0});
  CHECK(z.member);
  CHECK(z.coeffs == IntVec{0});
}

TEST_CASE("row image membership closure properties") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    int r = 1 + (int)(rng() % 4), c = 1 + (int)(rng() % 5);
    IntMatrix m = random_matrix(rng, r, c, 4);
    IntVec s(r);
    for (int i = 0; i < r; ++i) s[i] = d(rng);
    IntVec v = m.apply_left(s);
    auto w = in_row_image(m, v);
    CHECK(w.member);
    CHECK(m.apply_left(w.coeffs) == v);

    IntVec s2(r);
    for (int i = 0; i < r; ++i) s2[i] = d(rng);
    IntVec v2 = m.apply_left(s2);
    IntVec sum(c);
    for (int j = 0; j < c; ++j) sum[j] = v[j] + v2[j];
    CHECK(in_row_image(m, sum).member);
  }
}

TEST_CASE("css condition") {
  CHECK(check_css(IntMatrix::from_rows({{2, 2}}),
                  IntMatrix::from_rows({{1, -1}})));
  CHECK_FALSE(check_css(IntMatrix::from_rows({{2, 2}}),
                        IntMatrix::from_rows({{1, 1}})));
  CHECK_THROWS_AS(check_css(IntMatrix::from_rows({{2, 2}}),
                            IntMatrix::from_rows({{1, 1, 1}})),
                  InvalidInput);
}

TEST_CASE("empty matrices: no rows means no constraints") {
  IntMatrix empty(0, 3);
  IntMatrix k = integer_kernel_basis(empty);
  CHECK(k == IntMatrix::identity(3));
  CHECK(in_row_image(empty, IntVec{0, 0, 0}).member);
  CHECK_FALSE(in_row_image(empty, IntVec{1, 0, 0}).member);
  CHECK(check_css(empty, IntMatrix::from_rows({{1, -1, 0}})));
}

TEST_CASE("saturation and dual rows") {
  IntMatrix g = IntMatrix::from_rows({{2, 2}});
  IntMatrix sat = saturation(g);
  REQUIRE(sat.rows() == 1);
  CHECK(sat.row(0) == IntVec{1, 1});

  auto dual = dual_rows(sat);
  REQUIRE(dual.has_value());
  CHECK(sat * dual->transposed() == IntMatrix::identity(1));
  CHECK_FALSE(dual_rows(g).has_value());  // index-2 sublattice
}

TEST_CASE("determinant") {
  CHECK(determinant(IntMatrix::from_rows({{4, 1, 1}, {1, 4, 1}, {1, 1, 4}})) ==
        54);
  CHECK(determinant(IntMatrix::from_rows({{2, 0}, {0, 3}})) == 6);
  CHECK(determinant(IntMatrix::from_rows({{1, 2}, {2, 4}})) == 0);
  std::mt19937 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix m = random_matrix(rng, 4, 4, 6);
    // compare against cofactor expansion
    std::function<Int(const IntMatrix&)> cof = [&](const IntMatrix& a) -> Int {
      if (a.rows() == 1) return a(0, 0);
      Int total = 0;
      for (std::size_t j = 0; j < a.cols(); ++j) {
        IntMatrix sub(a.rows() - 1, a.cols() - 1);
        for (std::size_t i = 1; i < a.rows(); ++i) {
          std::size_t cc = 0;
          for (std::size_t c = 0; c < a.cols(); ++c) {
            if (c == j) continue;
            sub(i - 1, cc++) = a(i, c);
          }
        }
        Int term = a(0, j) * cof(sub);
        total += (j % 2 == 0) ? term : -term;
      }
      return total;
    };
    CHECK(determinant(m) == cof(m));
  }
}

TEST_CASE("non-negative kernel vector detection") {
  // total-occupation constraint forces finiteness
  CHECK_FALSE(has_nonneg_kernel_vector(IntMatrix::from_rows({{1, 1}})));
  CHECK(has_nonneg_kernel_vector(IntMatrix::from_rows({{1, -1}})));
  CHECK(has_nonneg_kernel_vector(IntMatrix(0, 2)));
  CHECK_FALSE(has_nonneg_kernel_vector(
      IntMatrix::from_rows({{0, 1, 1}, {1, 0, 1}})));
  CHECK_FALSE(has_nonneg_kernel_vector(IntMatrix::from_rows(
      {{1, 1, 1, 1}, {0, 1, 0, -1}, {0, 0, 1, -1}})));
  // chain of differences: the all-ones vector stays in the kernel
  CHECK(has_nonneg_kernel_vector(
      IntMatrix::from_rows({{1, -1, 0}, {0, 1, -1}})));
}

TEST_CASE("size reduction strictly shrinks when possible") {
  IntVec v{5, 0};
  size_reduce_row(v, IntMatrix::from_rows({{1, -1}}));
  Int n2 = v[0] * v[0] + v[1] * v[1];
  CHECK(n2 <= 13);  // (3,2) or smaller
  IntVec w{1, 0};
  size_reduce_row(w, IntMatrix::from_rows({{1, -1}}));
  CHECK(w == IntVec{1, 0});  // tie: unchanged
}

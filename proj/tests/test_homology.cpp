#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tiger/homology.hpp"

using namespace tiger;

namespace {

GeneratorPair pair_cat() {
  return make_generator_pair(IntMatrix::from_rows({{2, 2}}),
                             IntMatrix::from_rows({{1, -1}}));
}

void check_structure_invariants(const GeneratorPair& code,
                                const LogicalStructure& s) {
  const std::size_t nf = s.factors.size();
  REQUIRE(s.l_x.rows() == nf);
  REQUIRE(s.l_z.rows() == nf);
  if (code.h.rows() > 0 && nf > 0)
    CHECK((code.h * s.l_x.transposed()).is_zero());
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = 0; j < nf; ++j) {
      Int dot = 0;
      for (std::size_t c = 0; c < code.modes; ++c)
        dot += s.l_x(i, c) * s.l_z(j, c);
      CHECK(dot == (i == j ? 1 : 0));
    }
  for (std::size_t i = 0; i < nf; ++i) {
    if (s.factors[i].kind != FactorKind::Torsion) continue;
    const Int& k = s.factors[i].order;
    IntVec x = s.l_x.row(i);
    IntVec kx(x.size());
    for (std::size_t c = 0; c < x.size(); ++c) kx[c] = k * x[c];
    CHECK(in_row_image(code.g, kx).member);
    CHECK_FALSE(in_row_image(code.g, x).member);
  }
}

IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  std::uniform_int_distribution<int> coin(0, 2), val(-2, 2);
  for (int step = 0; step < 12; ++step) {
    std::size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    int c = coin(rng);
    if (c == 0) {
      for (std::size_t k = 0; k < n; ++k) std::swap(u(i, k), u(j, k));
    } else {
      Int q = val(rng);
      for (std::size_t k = 0; k < n; ++k) u(i, k) += q * u(j, k);
    }
  }
  return u;
}

}  // namespace

TEST_CASE("css violation is rejected with the offending rows") {
  CHECK_THROWS_WITH_AS(
      make_generator_pair(IntMatrix::from_rows({{2, 2}}),
                          IntMatrix::from_rows({{1, 1}})),
      doctest::Contains("G row 0 . H row 0"), InvalidInput);
}

TEST_CASE("support classification") {
  CHECK_FALSE(pair_cat().finite_support);
  CHECK(make_generator_pair(IntMatrix::from_rows({{2, -2}}),
                            IntMatrix::from_rows({{1, 1}}))
            .finite_support);
  // no H rows: every sector is infinite
  CHECK_FALSE(make_generator_pair(IntMatrix::from_rows({{1, -1}}),
                                  IntMatrix(0, 2))
                   .finite_support);
}

TEST_CASE("pair-cat encodes one qubit with the expected generators") {
  GeneratorPair code = pair_cat();
  LogicalStructure s = logical_structure(code);
  REQUIRE(s.factors.size() == 1);
  CHECK(s.free_rank == 0);
  REQUIRE(s.torsion_orders.size() == 1);
  CHECK(s.torsion_orders[0] == 2);
  CHECK(s.l_x.row(0) == IntVec{1, 1});
  CHECK(s.l_z.row(0) == IntVec{1, 0});
  check_structure_invariants(code, s);
}

TEST_CASE("four-mode tiger encodes one qubit") {
  GeneratorPair code = make_generator_pair(
      IntMatrix::from_rows({{1, 1, 0, 0}, {0, 0, 1, 1}, {0, 2, 0, 2}}),
      IntMatrix::from_rows({{1, -1, -1, 1}}));
  LogicalStructure s = logical_structure(code);
  REQUIRE(s.factors.size() == 1);
  CHECK(s.torsion_orders == IntVec{2});
  CHECK(s.free_rank == 0);
  check_structure_invariants(code, s);
}

TEST_CASE("multinomial chain encodes a qudit of order N") {
  for (long n : {2L, 3L, 4L}) {
    IntMatrix g(n - 1, n);
    for (long j = 0; j + 1 < n; ++j) {
      g(j, j % n) += 1;
      g(j, (j + 1) % n) += -2;
      g(j, (j + 2) % n) += 1;
    }
    IntMatrix h(1, n);
    for (long j = 0; j < n; ++j) h(0, j) = 1;
    GeneratorPair code = make_generator_pair(std::move(g), std::move(h));
    CHECK(code.finite_support);
    LogicalStructure s = logical_structure(code);
    REQUIRE(s.factors.size() == 1);
    CHECK(s.torsion_orders == IntVec{Int(n)});
    check_structure_invariants(code, s);
  }
}

TEST_CASE("repetition family: parity of the cycle decides qubit vs rotor") {
  auto cyclic = [](long n) {
    IntMatrix g(n, n);
    for (long j = 0; j < n; ++j) {
      g(j, j) = 1;
      g(j, (j + 1) % n) = 1;
    }
    return g;
  };
  // odd cycle: one qubit
  GeneratorPair odd = make_generator_pair(cyclic(5), IntMatrix(0, 5));
  LogicalStructure so = logical_structure(odd);
  CHECK(so.torsion_orders == IntVec{2});
  CHECK(so.free_rank == 0);
  check_structure_invariants(odd, so);
  // even cycle: one rotor
  GeneratorPair even = make_generator_pair(cyclic(4), IntMatrix(0, 4));
  LogicalStructure se = logical_structure(even);
  CHECK(se.torsion_orders.empty());
  CHECK(se.free_rank == 1);
  check_structure_invariants(even, se);
  // open chain of odd length: one rotor
  IntMatrix open(4, 5);
  for (long j = 0; j < 4; ++j) {
    open(j, j) = 1;
    open(j, j + 1) = 1;
  }
  GeneratorPair t5 = make_generator_pair(std::move(open), IntMatrix(0, 5));
  LogicalStructure st = logical_structure(t5);
  CHECK(st.free_rank == 1);
  CHECK(st.torsion_orders.empty());
  check_structure_invariants(t5, st);
}

TEST_CASE("mode and rotor two-mode codes have one free factor") {
  GeneratorPair rotor = make_generator_pair(IntMatrix::from_rows({{1, 1}}),
                                            IntMatrix(0, 2));
  LogicalStructure sr = logical_structure(rotor);
  CHECK(sr.free_rank == 1);
  CHECK(sr.factors.size() == 1);
  check_structure_invariants(rotor, sr);

  GeneratorPair mode = make_generator_pair(IntMatrix(0, 2),
                                           IntMatrix::from_rows({{1, -1}}));
  LogicalStructure sm = logical_structure(mode);
  CHECK(sm.free_rank == 1);
  check_structure_invariants(mode, sm);
}

TEST_CASE("trivial codespace reports zero factors") {
  GeneratorPair code = make_generator_pair(IntMatrix::from_rows({{1}}),
                                           IntMatrix(0, 1));
  LogicalStructure s = logical_structure(code);
  CHECK(s.factors.empty());
  CHECK(s.free_rank == 0);
}

TEST_CASE("structure is invariant under unimodular row changes of G and H") {
  std::mt19937 rng(2024);
  std::vector<std::pair<IntMatrix, IntMatrix>> codes;
  codes.emplace_back(IntMatrix::from_rows({{2, 2}}),
                     IntMatrix::from_rows({{1, -1}}));
  codes.emplace_back(
      IntMatrix::from_rows({{1, 1, 0, 0}, {0, 0, 1, 1}, {0, 2, 0, 2}}),
      IntMatrix::from_rows({{1, -1, -1, 1}}));
  codes.emplace_back(IntMatrix::from_rows({{2, 2, 2}}),
                     IntMatrix::from_rows({{1, -1, 0}, {0, 1, -1}}));
  codes.emplace_back(IntMatrix::from_rows({{2, -2}}),
                     IntMatrix::from_rows({{1, 1}}));
  for (auto& [g, h] : codes) {
    LogicalStructure base = logical_structure(make_generator_pair(g, h));
    for (int trial = 0; trial < 6; ++trial) {
      IntMatrix ug = random_unimodular(rng, g.rows());
      IntMatrix uh = random_unimodular(rng, h.rows());
      GeneratorPair changed = make_generator_pair(ug * g, uh * h);
      LogicalStructure s = logical_structure(changed);
      CHECK(s.free_rank == base.free_rank);
      CHECK(s.torsion_orders == base.torsion_orders);
      check_structure_invariants(changed, s);
    }
  }
}

TEST_CASE("pairing survives adding stabilizer rows to the logicals") {
  GeneratorPair code = make_generator_pair(
      IntMatrix::from_rows({{2, 2, 2}}),
      IntMatrix::from_rows({{1, -1, 0}, {0, 1, -1}}));
  LogicalStructure s = logical_structure(code);
  REQUIRE(s.factors.size() == 1);
  IntVec x = s.l_x.row(0), z = s.l_z.row(0);
  for (std::size_t c = 0; c < 3; ++c) {
    x[c] += 2 * code.g(0, c);                 // shift x by a G row
    z[c] += code.h(0, c) - 3 * code.h(1, c);  // shift z by H rows
  }
  IntVec hx = code.h.apply(x);
  for (const Int& e : hx) CHECK(e == 0);
  Int dot = 0;
  for (std::size_t c = 0; c < 3; ++c) dot += s.l_x(0, c) * z[c];
  CHECK(dot == 1);  // z shifts are orthogonal to ker H
  IntVec gz = code.g.apply(z);
  for (const Int& e : gz) CHECK(e % 2 == 0);
}

TEST_CASE("non-negative representatives") {
  GeneratorPair code = pair_cat();
  LogicalStructure s = logical_structure(code);
  auto nn = canonicalize_nonnegative_lx(code, s.l_x);
  REQUIRE(nn.has_value());
  CHECK(nn->row(0) == IntVec{1, 1});  // already non-negative

  IntMatrix negative(1, 2);
  negative(0, 0) = -1;
  negative(0, 1) = 1;
  auto shifted = canonicalize_nonnegative_lx(code, negative);
  REQUIRE(shifted.has_value());
  CHECK(shifted->row(0) == IntVec{1, 3});

  GeneratorPair finite = make_generator_pair(IntMatrix::from_rows({{2, -2}}),
                                             IntMatrix::from_rows({{1, 1}}));
  CHECK_THROWS_AS(canonicalize_nonnegative_lx(finite, negative),
                  PreconditionViolation);

  // no dissipator rows to shift with: failure is reported, not silent
  GeneratorPair bare = make_generator_pair(IntMatrix(0, 2),
                                           IntMatrix::from_rows({{1, -1}}));
  CHECK_FALSE(canonicalize_nonnegative_lx(bare, negative).has_value());
}

TEST_CASE("four-mode tiger x = (0 1 0 1) stays unchanged") {
  GeneratorPair code = make_generator_pair(
      IntMatrix::from_rows({{1, 1, 0, 0}, {0, 0, 1, 1}, {0, 2, 0, 2}}),
      IntMatrix::from_rows({{1, -1, -1, 1}}));
  IntMatrix x(1, 4);
  x(0, 1) = 1;
  x(0, 3) = 1;
  auto nn = canonicalize_nonnegative_lx(code, x);
  REQUIRE(nn.has_value());
  CHECK(nn->row(0) == IntVec{0, 1, 0, 1});
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tiger/catalog.hpp"
#include "tiger/distance.hpp"

using namespace tiger;

namespace {

std::vector<CatalogEntry> all_default_entries() {
  std::vector<CatalogEntry> out;
  for (const std::string& name : catalog_names()) {
    Json params = Json::object();
    if (name == "extended-pair-cat" || name == "fock-repetition" ||
        name == "coherent-repetition" || name == "multinomial")
      params["n"] = 3;
    if (name == "tiger-shor") {
      params["l"] = 2;
      params["m"] = 2;
    }
    if (name == "tiger-surface" || name == "liger" ||
        name == "tiger-surface-open")
      params["r"] = 3;
    if (name == "tiger-surface-open") params["k"] = 3;
    if (name == "calabi-yau-hypersurface") params["n"] = 4;
    out.push_back(catalog_make(name, params));
  }
  return out;
}

}  // namespace

TEST_CASE("every catalog entry satisfies the CSS condition") {
  for (const CatalogEntry& e : all_default_entries()) {
    INFO(e.name);
    CHECK(check_css(e.pair.g, e.pair.h));
  }
}

TEST_CASE("logical structures match the catalog expectations") {
  for (const CatalogEntry& e : all_default_entries()) {
    INFO(e.name);
    LogicalStructure s = logical_structure(e.pair);
    CHECK(s.free_rank == (std::size_t)e.expected.free_rank);
    REQUIRE(s.torsion_orders.size() == e.expected.torsion_orders.size());
    for (std::size_t i = 0; i < s.torsion_orders.size(); ++i)
      CHECK(s.torsion_orders[i] == e.expected.torsion_orders[i]);
  }
}

TEST_CASE("expected x distances hold at default parameters") {
  for (const CatalogEntry& e : all_default_entries()) {
    if (!e.expected.d_x) continue;
    INFO(e.name);
    LogicalStructure s = logical_structure(e.pair);
    XDistanceResult xd = x_distance(e.pair, s);
    REQUIRE(xd.status == XDistanceResult::Status::Found);
    CHECK(xd.value == *e.expected.d_x);
  }
}

TEST_CASE("surface strips are built from low-weight checks") {
  CatalogEntry surf = catalog_make("tiger-surface", {{"r", 3}, {"m", 2}});
  CHECK(surf.pair.modes == 9);
  for (std::size_t i = 0; i < surf.pair.g.rows(); ++i) {
    long weight = 0;
    for (std::size_t j = 0; j < surf.pair.g.cols(); ++j)
      if (surf.pair.g(i, j) != 0) ++weight;
    CHECK(weight <= 4);
  }
  for (std::size_t i = 0; i < surf.pair.h.rows(); ++i) {
    long weight = 0;
    for (std::size_t j = 0; j < surf.pair.h.cols(); ++j)
      if (surf.pair.h(i, j) != 0) ++weight;
    CHECK(weight <= 4);
  }
  CatalogEntry big = catalog_make("tiger-surface", {{"r", 5}, {"m", 3}});
  CHECK(big.pair.modes == (2 * 3 - 1) * 5);
}

TEST_CASE("parameter validation carries the structural reason") {
  CHECK_THROWS_WITH_AS(catalog_make("tiger-surface", {{"r", 4}, {"m", 2}}),
                       doctest::Contains("odd"), InvalidInput);
  CHECK_THROWS_AS(catalog_make("pair-cat", {{"m1", 2}, {"m2", 4}}),
                  InvalidInput);
  CHECK_THROWS_AS(catalog_make("coherent-repetition",
                               {{"n", 4}, {"boundary", "twisted"}}),
                  InvalidInput);
  CHECK_THROWS_AS(catalog_make("no-such-code", {}), InvalidInput);
}

TEST_CASE("degenerate one-mode chain") {
  CatalogEntry e = catalog_make("fock-repetition", {{"n", 1}});
  CHECK(e.pair.modes == 1);
  CHECK(e.pair.h.rows() == 0);
  LogicalStructure s = logical_structure(e.pair);
  CHECK(s.free_rank == 1);
}

TEST_CASE("open-boundary strip encodes a higher-order logical") {
  CatalogEntry e =
      catalog_make("tiger-surface-open", {{"r", 3}, {"m", 2}, {"k", 3}});
  LogicalStructure s = logical_structure(e.pair);
  REQUIRE(s.torsion_orders.size() == 1);
  CHECK(s.torsion_orders[0] == 3);
  XDistanceResult xd = x_distance(e.pair, s);
  CHECK(xd.value == 2);  // unchanged by the boundary
}

TEST_CASE("support classes split the catalog as constructed") {
  for (const CatalogEntry& e : all_default_entries()) {
    INFO(e.name);
    CHECK(e.pair.finite_support == e.delta_required);
  }
}

TEST_CASE("tiger-shor assembles the right shapes") {
  CatalogEntry e = catalog_make("tiger-shor", {{"l", 3}, {"m", 2}});
  CHECK(e.pair.modes == 6);
  CHECK(e.pair.g.rows() == (3 - 1) * 2 + 1);
  CHECK(e.pair.h.rows() == 1);
  // the wide dissipator row carries weight 2m on the first block
  IntVec last = e.pair.g.row(e.pair.g.rows() - 1);
  CHECK(last == IntVec{2, 2, 0, 0, 0, 0});
}

TEST_CASE("catalog listing round-trips through definitions") {
  Json listing = catalog_listing();
  REQUIRE(listing.is_array());
  CHECK(listing.size() == catalog_names().size());
  for (const auto& item : listing) {
    REQUIRE(item.contains("G"));
    REQUIRE(item.contains("H"));
    std::vector<std::vector<long>> g_rows, h_rows;
    for (const auto& row : item["G"])
      g_rows.push_back(row.get<std::vector<long>>());
    for (const auto& row : item["H"])
      h_rows.push_back(row.get<std::vector<long>>());
    std::size_t modes = item["modes"].get<std::size_t>();
    GeneratorPair pair = make_generator_pair(
        IntMatrix::from_rows(g_rows, modes), IntMatrix::from_rows(h_rows, modes));
    CHECK(pair.modes == modes);
  }
}

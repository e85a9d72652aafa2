#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "tiger/gkz.hpp"
#include "tiger/homology.hpp"

namespace tiger {

using Json = nlohmann::json;

// Fully assembled code: generator pair, logical structure, syndrome vector
// and energy density parameter.
struct TigerCode {
  GeneratorPair pair;
  LogicalStructure structure;
  std::vector<long> delta;
  double alpha = 1.0;
};

TigerCode make_tiger_code(IntMatrix g, IntMatrix h, std::vector<long> delta,
                          double alpha);

// Regression fixtures: every numeric expectation is evaluated from its
// defining formula at construction time, never a bare literal.
struct ExpectedMetadata {
  std::string logical_type;  // qubit | qudit | rotor | mode
  std::vector<long> torsion_orders;
  long free_rank = 0;
  std::optional<long> d_x;
  std::optional<double> d_z;
  std::optional<std::pair<double, double>> d_z_bounds;
  std::string d_z_formula;
  std::optional<GkzFamily> gkz_family;
  std::vector<std::string> flags;
};

struct CatalogEntry {
  std::string name;
  Json params;
  GeneratorPair pair;
  std::vector<long> default_delta;
  bool delta_required = false;  // codewords are sized by the syndrome
  ExpectedMetadata expected;

  TigerCode instantiate(std::vector<long> delta, double alpha) const;
};

CatalogEntry catalog_make(const std::string& name, const Json& params);
std::vector<std::string> catalog_names();
Json catalog_listing();

}  // namespace tiger

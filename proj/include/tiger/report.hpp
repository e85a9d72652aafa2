#pragma once

#include <json.hpp>
#include <string>

#include "tiger/catalog.hpp"
#include "tiger/distance.hpp"

namespace tiger {

struct AnalysisOptions {
  long cutoff = 0;       // 0: tail-bound default
  long x_bound = 0;      // 0: kernel-derived default
  long loss_bound = 6;
  int grid_points = 0;   // 0: dimension-based default
  int threads = 1;
  bool skip_dephasing = false;
  double phi_logical = M_PI;  // probe angle for infinite-dimensional factors
};

// Parses {"G": [[..]], "H": [[..]], "delta": [..], "alpha": x, "cutoff": n,
// "name": s}; integer magnitudes above 2^53 are rejected (files carry JSON
// numbers; internal arithmetic stays exact).
TigerCode code_from_definition(const Json& definition, std::string* name_out);
Json definition_from_code(const TigerCode& code, const std::string& name);

// Full pipeline: structure, distances, loss detection, dephasing
// cross-check table and normalization comparison.
Json analyze_code(const TigerCode& code, const AnalysisOptions& opts,
                  const CatalogEntry* entry = nullptr);

Json distance_report(const TigerCode& code, const AnalysisOptions& opts);

// (alpha^2, log |element|^2) sweep rows plus a least-squares slope.
Json dephasing_sweep(const TigerCode& code, const std::vector<long>& p,
                     double mu, double nu,
                     const std::vector<double>& alpha_sq_grid, long cutoff);

Json gkz_report(const TigerCode& code, const std::vector<Cplx>& y, long cutoff,
                const CatalogEntry* entry = nullptr);

// Sector header plus one JSON line per basis state: {"n": [...],
// "re": x, "im": y}.
std::string codeword_dump(const TigerCode& code, const std::string& basis,
                          double mu, long ell, long cutoff);

long pick_cutoff(const TigerCode& code, long requested);

}  // namespace tiger

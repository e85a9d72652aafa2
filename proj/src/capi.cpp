#include "tiger.h"

#include <cstring>
#include <string>

#include "tiger/report.hpp"

struct tiger_code {
  tiger::TigerCode code;
  std::string name;
  std::unique_ptr<tiger::CatalogEntry> entry;  // set for catalog codes
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = (char*)std::malloc(s.size() + 1);
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
tiger_status guarded(Fn&& fn) {
  try {
    fn();
    return TIGER_OK;
  } catch (const tiger::InvalidInput& e) {
    g_last_error = e.what();
    return TIGER_ERR_INVALID_INPUT;
  } catch (const tiger::PreconditionViolation& e) {
    g_last_error = e.what();
    return TIGER_ERR_PRECONDITION;
  } catch (const tiger::SearchExhausted& e) {
    g_last_error = e.what();
    return TIGER_ERR_SEARCH_EXHAUSTED;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return TIGER_ERR_INVALID_INPUT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TIGER_ERR_INTERNAL;
  }
}

tiger::AnalysisOptions parse_options(const char* options_json) {
  tiger::AnalysisOptions opts;
  if (!options_json || !*options_json) return opts;
  tiger::Json j = tiger::Json::parse(options_json);
  if (j.contains("cutoff")) opts.cutoff = j["cutoff"].get<long>();
  if (j.contains("x_bound")) opts.x_bound = j["x_bound"].get<long>();
  if (j.contains("loss_bound")) opts.loss_bound = j["loss_bound"].get<long>();
  if (j.contains("grid_points"))
    opts.grid_points = j["grid_points"].get<int>();
  if (j.contains("threads")) opts.threads = j["threads"].get<int>();
  if (j.contains("phi_logical"))
    opts.phi_logical = j["phi_logical"].get<double>();
  if (j.contains("skip_dephasing"))
    opts.skip_dephasing = j["skip_dephasing"].get<bool>();
  return opts;
}

}  // namespace

extern "C" {

tiger_status tiger_code_from_json(const char* definition_json,
                                  tiger_code** out) {
  return guarded([&] {
    if (!definition_json || !out)
      throw tiger::InvalidInput("null definition or output pointer");
    tiger::Json def = tiger::Json::parse(definition_json);
    auto handle = std::make_unique<tiger_code>();
    handle->code = tiger::code_from_definition(def, &handle->name);
    *out = handle.release();
  });
}

tiger_status tiger_code_from_catalog(const char* name, const char* params_json,
                                     const char* delta_json, double alpha,
                                     tiger_code** out) {
  return guarded([&] {
    if (!name || !out) throw tiger::InvalidInput("null name or output pointer");
    tiger::Json params = params_json && *params_json
                             ? tiger::Json::parse(params_json)
                             : tiger::Json::object();
    auto entry = std::make_unique<tiger::CatalogEntry>(
        tiger::catalog_make(name, params));
    std::vector<long> delta;
    if (delta_json && *delta_json) {
      tiger::Json dj = tiger::Json::parse(delta_json);
      for (const auto& v : dj) delta.push_back(v.get<long>());
    }
    auto handle = std::make_unique<tiger_code>();
    handle->code = entry->instantiate(delta, alpha > 0 ? alpha : 1.0);
    handle->name = name;
    handle->entry = std::move(entry);
    *out = handle.release();
  });
}

void tiger_code_free(tiger_code* code) { delete code; }

const char* tiger_last_error(void) { return g_last_error.c_str(); }

tiger_status tiger_analyze(const tiger_code* code, const char* options_json,
                           char** report_json) {
  return guarded([&] {
    if (!code || !report_json)
      throw tiger::InvalidInput("null code or output pointer");
    tiger::AnalysisOptions opts = parse_options(options_json);
    tiger::Json rep =
        tiger::analyze_code(code->code, opts, code->entry.get());
    if (!code->name.empty()) rep["name"] = code->name;
    *report_json = dup_string(rep.dump(2));
  });
}

tiger_status tiger_distance(const tiger_code* code, const char* options_json,
                            char** report_json) {
  return guarded([&] {
    if (!code || !report_json)
      throw tiger::InvalidInput("null code or output pointer");
    tiger::AnalysisOptions opts = parse_options(options_json);
    tiger::Json rep = tiger::distance_report(code->code, opts);
    *report_json = dup_string(rep.dump(2));
  });
}

tiger_status tiger_dephasing_sweep(const tiger_code* code,
                                   const char* sweep_json,
                                   char** report_json) {
  return guarded([&] {
    if (!code || !sweep_json || !report_json)
      throw tiger::InvalidInput("null argument");
    tiger::Json j = tiger::Json::parse(sweep_json);
    std::vector<long> p;
    if (j.contains("p"))
      for (const auto& v : j["p"]) p.push_back(v.get<long>());
    else
      p.assign(code->code.pair.modes, 0L);
    double mu = j.value("mu", -1.0), nu = j.value("nu", 0.0);
    if (mu < 0) {
      const auto& fs = code->code.structure.factors;
      mu = (!fs.empty() && fs[0].kind == tiger::FactorKind::Torsion)
               ? 2.0 * M_PI / fs[0].order.get_d()
               : M_PI;
    }
    std::vector<double> grid;
    for (const auto& v : j.at("alpha_sq")) grid.push_back(v.get<double>());
    long cutoff = j.value("cutoff", 0L);
    if (cutoff == 0) {
      tiger::TigerCode probe = code->code;
      probe.alpha = std::sqrt(grid.empty() ? 1.0 : grid.back());
      cutoff = tiger::pick_cutoff(probe, 0);
    }
    tiger::Json rep =
        tiger::dephasing_sweep(code->code, p, mu, nu, grid, cutoff);
    *report_json = dup_string(rep.dump(2));
  });
}

tiger_status tiger_gkz_eval(const tiger_code* code, const char* eval_json,
                            char** report_json) {
  return guarded([&] {
    if (!code || !eval_json || !report_json)
      throw tiger::InvalidInput("null argument");
    tiger::Json j = tiger::Json::parse(eval_json);
    std::vector<tiger::Cplx> y;
    for (const auto& v : j.at("y")) {
      if (v.is_number())
        y.emplace_back(v.get<double>(), 0.0);
      else
        y.emplace_back(v.value("re", 0.0), v.value("im", 0.0));
    }
    if (y.size() != code->code.pair.modes)
      throw tiger::InvalidInput("y length must equal the mode count");
    long cutoff = j.value("cutoff", 0L);
    if (cutoff == 0) cutoff = tiger::pick_cutoff(code->code, 0);
    tiger::Json rep =
        tiger::gkz_report(code->code, y, cutoff, code->entry.get());
    *report_json = dup_string(rep.dump(2));
  });
}

tiger_status tiger_codewords(const tiger_code* code, const char* basis,
                             double mu, long ell, long cutoff,
                             char** jsonl_out) {
  return guarded([&] {
    if (!code || !basis || !jsonl_out)
      throw tiger::InvalidInput("null argument");
    *jsonl_out = dup_string(
        tiger::codeword_dump(code->code, basis, mu, ell, cutoff));
  });
}

tiger_status tiger_definition(const tiger_code* code,
                              char** definition_json) {
  return guarded([&] {
    if (!code || !definition_json)
      throw tiger::InvalidInput("null argument");
    *definition_json =
        dup_string(tiger::definition_from_code(code->code, code->name).dump(2));
  });
}

tiger_status tiger_catalog_list(char** json_out) {
  return guarded([&] {
    if (!json_out) throw tiger::InvalidInput("null output pointer");
    *json_out = dup_string(tiger::catalog_listing().dump(2));
  });
}

void tiger_string_free(char* s) { std::free(s); }

const char* tiger_version(void) { return "0.1.0"; }

}  // extern "C"

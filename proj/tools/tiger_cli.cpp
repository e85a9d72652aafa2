// Command-line front end; everything flows through the public C API in
// tiger.h.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "tiger.h"

namespace {

using nlohmann::json;

struct CodeArgs {
  std::string file;
  std::string catalog;
  std::string delta;
  double alpha = 1.0;
  long n = 0, r = 0, m = 0, l = 0, k = 0, m1 = 0, m2 = 0;
  long delta1 = 0, delta2 = 0;
  std::string boundary;
};

void add_code_options(CLI::App* cmd, CodeArgs& args) {
  cmd->add_option("file", args.file, "code definition JSON file");
  cmd->add_option("--catalog", args.catalog, "catalog family name");
  cmd->add_option("--alpha", args.alpha, "energy density parameter alpha");
  cmd->add_option("--delta", args.delta,
                  "syndrome vector, comma-separated integers");
  cmd->add_option("--n", args.n, "mode count parameter");
  cmd->add_option("--r", args.r, "surface diameter parameter");
  cmd->add_option("--m", args.m, "surface length / width parameter");
  cmd->add_option("--l", args.l, "repetition length parameter");
  cmd->add_option("--k", args.k, "open-boundary logical order");
  cmd->add_option("--m1", args.m1, "first charge weight");
  cmd->add_option("--m2", args.m2, "second charge weight");
  cmd->add_option("--delta1", args.delta1, "first syndrome parameter");
  cmd->add_option("--delta2", args.delta2, "second syndrome parameter");
  cmd->add_option("--boundary", args.boundary, "closed|open");
}

std::vector<long> parse_long_list(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stol(item));
  }
  return out;
}

// "a:b:count" arithmetic grid or plain comma list
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double a, b;
    long count;
    if (std::sscanf(text.c_str(), "%lf:%lf:%ld", &a, &b, &count) != 3 ||
        count < 2)
      throw CLI::ValidationError("--alpha-sq", "expected start:stop:count");
    for (long i = 0; i < count; ++i)
      out.push_back(a + (b - a) * (double)i / (double)(count - 1));
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

int fail(tiger_status st) {
  std::cerr << "error: " << tiger_last_error() << "\n";
  return (int)st;
}

tiger_code* open_code(const CodeArgs& args, tiger_status* st) {
  tiger_code* code = nullptr;
  if (!args.catalog.empty()) {
    json params = json::object();
    if (args.n) params["n"] = args.n;
    if (args.r) params["r"] = args.r;
    if (args.m) params["m"] = args.m;
    if (args.l) params["l"] = args.l;
    if (args.k) params["k"] = args.k;
    if (args.m1) params["m1"] = args.m1;
    if (args.m2) params["m2"] = args.m2;
    if (args.delta1) params["delta1"] = args.delta1;
    if (args.delta2) params["delta2"] = args.delta2;
    if (!args.boundary.empty()) params["boundary"] = args.boundary;
    std::string delta_json;
    if (!args.delta.empty()) delta_json = json(parse_long_list(args.delta)).dump();
    *st = tiger_code_from_catalog(args.catalog.c_str(), params.dump().c_str(),
                                  delta_json.empty() ? nullptr
                                                     : delta_json.c_str(),
                                  args.alpha, &code);
    return code;
  }
  if (args.file.empty()) {
    *st = TIGER_ERR_INVALID_INPUT;
    std::cerr << "error: provide a definition file or --catalog name\n";
    return nullptr;
  }
  std::ifstream in(args.file);
  if (!in) {
    *st = TIGER_ERR_INVALID_INPUT;
    std::cerr << "error: cannot open " << args.file << "\n";
    return nullptr;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  json def;
  try {
    def = json::parse(buf.str());
  } catch (const std::exception& e) {
    *st = TIGER_ERR_INVALID_INPUT;
    std::cerr << "error: " << args.file << ": " << e.what() << "\n";
    return nullptr;
  }
  if (!args.delta.empty()) def["delta"] = parse_long_list(args.delta);
  if (args.alpha > 0) def["alpha"] = args.alpha;
  *st = tiger_code_from_json(def.dump().c_str(), &code);
  return code;
}

int emit(const char* text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    out << text << "\n";
  }
  return 0;
}

std::string options_json(long cutoff, long x_bound, long loss_bound, int grid,
                         int threads, double phi_logical) {
  json j;
  if (cutoff) j["cutoff"] = cutoff;
  if (x_bound) j["x_bound"] = x_bound;
  if (loss_bound) j["loss_bound"] = loss_bound;
  if (grid) j["grid_points"] = grid;
  j["threads"] = threads;
  if (phi_logical > 0) j["phi_logical"] = phi_logical;
  return j.dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tiger: bosonic code construction and analysis"};
  app.require_subcommand(1);

  int threads = 1;
  if (const char* env = std::getenv("TIGER_THREADS")) threads = std::atoi(env);
  app.add_option("--threads", threads, "worker cap (env TIGER_THREADS)")
      ->envname("TIGER_THREADS");

  CodeArgs code_args;
  long cutoff = 0, x_bound = 0, loss_bound = 0;
  int grid = 0;
  double phi_logical = 0.0;
  std::string out_path;

  auto* analyze = app.add_subcommand("analyze", "full analysis report");
  add_code_options(analyze, code_args);
  analyze->add_option("--cutoff", cutoff, "total-occupation cutoff");
  analyze->add_option("--bound", x_bound, "X-distance search bound");
  analyze->add_option("--loss-bound", loss_bound, "pure-loss search bound");
  analyze->add_option("--grid", grid, "optimizer seed grid per dimension");
  analyze->add_option("--phi-logical", phi_logical,
                      "probe angle for continuous factors");
  analyze->add_option("-o,--output", out_path, "write report to file");

  auto* distance = app.add_subcommand("distance", "distance report only");
  add_code_options(distance, code_args);
  distance->add_option("--bound", x_bound, "X-distance search bound");
  distance->add_option("--loss-bound", loss_bound, "pure-loss search bound");
  distance->add_option("--grid", grid, "optimizer seed grid per dimension");
  distance->add_option("--phi-logical", phi_logical,
                       "probe angle for continuous factors");
  distance->add_option("-o,--output", out_path, "write report to file");

  auto* dephasing =
      app.add_subcommand("dephasing", "dephasing-element sweep over alpha^2");
  add_code_options(dephasing, code_args);
  std::string p_text, grid_text = "4:12:9";
  double mu = -1.0, nu = 0.0;
  dephasing->add_option("--p", p_text, "dephasing vector, comma-separated");
  dephasing->add_option("--mu", mu, "left codeword angle");
  dephasing->add_option("--nu", nu, "right codeword angle");
  dephasing->add_option("--alpha-sq", grid_text,
                        "grid start:stop:count or comma list");
  dephasing->add_option("--cutoff", cutoff, "total-occupation cutoff");
  dephasing->add_option("-o,--output", out_path, "write table to file");

  auto* gkz = app.add_subcommand("gkz", "evaluate the normalization function");
  add_code_options(gkz, code_args);
  std::vector<double> y_values;
  gkz->add_option("--y", y_values, "argument vector (one value per mode)");
  gkz->add_option("--cutoff", cutoff, "total-occupation cutoff");
  gkz->add_option("-o,--output", out_path, "write result to file");

  auto* codewords = app.add_subcommand("codewords", "dump codeword amplitudes");
  add_code_options(codewords, code_args);
  std::string basis = "x";
  double cw_mu = 0.0;
  long ell = 0;
  codewords->add_option("--basis", basis, "x or z");
  codewords->add_option("--mu", cw_mu, "X-basis codeword angle");
  codewords->add_option("--ell", ell, "Z-basis codeword label");
  codewords->add_option("--cutoff", cutoff, "total-occupation cutoff");
  codewords->add_option("-o,--output", out_path, "write dump to file");

  auto* catalog = app.add_subcommand("catalog-list", "list catalog families");
  catalog->add_option("-o,--output", out_path, "write listing to file");

  // let --threads appear after the subcommand name too
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  tiger_status st = TIGER_OK;
  char* text = nullptr;

  if (catalog->parsed()) {
    st = tiger_catalog_list(&text);
    if (st != TIGER_OK) return fail(st);
    emit(text, out_path);
    tiger_string_free(text);
    return 0;
  }

  tiger_code* code = open_code(code_args, &st);
  if (!code) return st == TIGER_OK ? 2 : fail(st);

  if (analyze->parsed() || distance->parsed()) {
    std::string opts =
        options_json(cutoff, x_bound, loss_bound, grid, threads, phi_logical);
    st = analyze->parsed() ? tiger_analyze(code, opts.c_str(), &text)
                           : tiger_distance(code, opts.c_str(), &text);
  } else if (dephasing->parsed()) {
    json j;
    if (!p_text.empty()) j["p"] = parse_long_list(p_text);
    if (mu >= 0) j["mu"] = mu;
    j["nu"] = nu;
    j["alpha_sq"] = parse_grid(grid_text);
    if (cutoff) j["cutoff"] = cutoff;
    st = tiger_dephasing_sweep(code, j.dump().c_str(), &text);
  } else if (gkz->parsed()) {
    json j;
    j["y"] = y_values;
    if (cutoff) j["cutoff"] = cutoff;
    st = tiger_gkz_eval(code, j.dump().c_str(), &text);
  } else if (codewords->parsed()) {
    st = tiger_codewords(code, basis.c_str(), cw_mu, ell, cutoff, &text);
  }

  int rc = 0;
  if (st != TIGER_OK) {
    rc = fail(st);
  } else if (text) {
    if (dephasing->parsed()) {
      // print the slope next to the table for quick reading
      json rep = json::parse(text);
      if (rep.contains("slope"))
        std::cerr << "slope: " << std::setprecision(17)
                  << rep["slope"].get<double>() << "\n";
    }
    emit(text, out_path);
  }
  if (text) tiger_string_free(text);
  tiger_code_free(code);
  return rc;
}

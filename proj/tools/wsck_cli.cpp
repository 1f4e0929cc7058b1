// Command-line driver for the W/S conformal superalgebra toolkit.
// Builds a JSON config from the flags and hands it to the shared library.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "wsck/wsck.h"

using nlohmann::json;

namespace {

int emit(const json& cfg, const std::string& out_path,
         const std::string& format) {
  wsck_report* rep = wsck_run(cfg.dump().c_str());
  int status = wsck_report_status(rep);
  std::string payload = (format == "text") ? wsck_report_text(rep)
                                           : wsck_report_json(rep);
  if (format == "json") payload += "\n";
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "cannot open output file: " << out_path << "\n";
      wsck_report_free(rep);
      return 2;
    }
    f << payload;
  }
  wsck_report_free(rep);
  return status;
}

bool parse_krange(const std::string& spec, int& klo, int& khi) {
  auto dots = spec.find("..");
  try {
    if (dots == std::string::npos) {
      klo = khi = std::stoi(spec);
    } else {
      klo = std::stoi(spec.substr(0, dots));
      khi = std::stoi(spec.substr(dots + 2));
    }
  } catch (...) {
    return false;
  }
  return klo <= khi;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wsck: type W and S Lie conformal superalgebra toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // allow --out/--format after the subcommand

  std::string out_path, format = "json";
  app.add_option("--out", out_path, "write the report to this file");
  app.add_option("--format", format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  // axioms
  auto* ax = app.add_subcommand("axioms", "skew/jacobi/oracle/divergence");
  std::string ax_algebra = "W", ax_b = "0";
  int ax_n = 2;
  unsigned long ax_seed = 0;
  ax->add_option("--algebra", ax_algebra, "W, Vir, S, Sb, Stilde");
  ax->add_option("--n", ax_n, "rank parameter");
  ax->add_option("--b", ax_b, "deformation parameter (rational)");
  ax->add_option("--seed", ax_seed, "seed for mutation sampling");

  // classify
  auto* cl = app.add_subcommand("classify", "singular vector inventories");
  std::string cl_algebra = "W", cl_family = "theta", cl_k = "0",
              cl_alpha = "0", cl_variant = "derived", cl_rep;
  int cl_n = 2, cl_dmax = 2;
  cl->add_option("--algebra", cl_algebra, "W or S");
  cl->add_option("--n", cl_n, "rank parameter");
  cl->add_option("--family", cl_family, "theta, barforms, standard");
  cl->add_option("--k", cl_k, "degree or range like 0..3");
  cl->add_option("--dmax", cl_dmax, "ansatz d-degree bound (1..3)");
  cl->add_option("--alpha", cl_alpha, "twist parameter (rational)");
  cl->add_option("--variant", cl_variant,
                 "S constraint set: derived (default) or full");
  cl->add_option("--rep", cl_rep, "JSON file with a user representation");

  // derham
  auto* dr = app.add_subcommand("derham", "de Rham complex suite");
  int dr_n = 2, dr_jmax = 4, dr_T = 4;
  dr->add_option("--n", dr_n, "rank parameter");
  dr->add_option("--jmax", dr_jmax, "degree truncation");
  dr->add_option("--T", dr_T, "Laurent window size");

  // dual
  auto* du = app.add_subcommand("dual", "duality and transpose suite");
  std::string du_demo = "rm22";
  du->add_option("--demo", du_demo, "demo name (rm22)");

  // w1
  auto* w1 = app.add_subcommand("w1", "rank-1 family suite");
  std::string w1_a = "0", w1_b = "1";
  w1->add_option("--a", w1_a, "parameter a (rational)");
  w1->add_option("--b", w1_b, "parameter b (rational)");

  CLI11_PARSE(app, argc, argv);

  json cfg;
  if (ax->parsed()) {
    cfg["command"] = "axioms";
    cfg["algebra"] = ax_algebra;
    cfg["n"] = ax_n;
    cfg["b"] = ax_b;
    if (ax_seed) cfg["seed"] = ax_seed;
  } else if (cl->parsed()) {
    cfg["command"] = "classify";
    cfg["algebra"] = cl_algebra;
    cfg["n"] = cl_n;
    cfg["dmax"] = cl_dmax;
    cfg["alpha"] = cl_alpha;
    cfg["variant"] = cl_variant;
    if (!cl_rep.empty()) {
      std::ifstream f(cl_rep);
      if (!f) {
        std::cerr << "cannot read representation file: " << cl_rep << "\n";
        return 2;
      }
      json rep;
      try {
        f >> rep;
      } catch (const std::exception& e) {
        std::cerr << "bad representation file: " << e.what() << "\n";
        return 2;
      }
      cfg["rep"] = rep;
    } else {
      cfg["family"] = cl_family;
      int klo = 0, khi = 0;
      if (!parse_krange(cl_k, klo, khi)) {
        std::cerr << "bad --k range: " << cl_k << "\n";
        return 2;
      }
      cfg["kmin"] = klo;
      cfg["kmax"] = khi;
    }
  } else if (dr->parsed()) {
    cfg["command"] = "derham";
    cfg["n"] = dr_n;
    cfg["jmax"] = dr_jmax;
    cfg["T"] = dr_T;
  } else if (du->parsed()) {
    cfg["command"] = "dual";
    cfg["demo"] = du_demo;
  } else if (w1->parsed()) {
    cfg["command"] = "w1";
    cfg["a"] = w1_a;
    cfg["b"] = w1_b;
  }
  return emit(cfg, out_path, format);
}

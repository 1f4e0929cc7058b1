#include "wsck/wsck.h"

#include <cstring>
#include <string>

#include "engine.hpp"
#include "singular.hpp"

#include <json.hpp>

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

}  // namespace

struct wsck_report {
  wsck::RunResult result;
};

struct wsck_algebra {
  std::string kind;
  wsck::AlgebraPtr alg;                          // W or Vir
  std::unique_ptr<wsck::ConformalSubalgebra> sub;  // S-families
};

extern "C" {

wsck_report* wsck_run(const char* config_json) {
  auto* r = new wsck_report;
  r->result = wsck::run_command(config_json ? config_json : "");
  return r;
}

int wsck_report_status(const wsck_report* r) {
  return r ? r->result.status : 2;
}

const char* wsck_report_json(const wsck_report* r) {
  return r ? r->result.json.c_str() : "";
}

const char* wsck_report_text(const wsck_report* r) {
  return r ? r->result.text.c_str() : "";
}

void wsck_report_free(wsck_report* r) { delete r; }

wsck_algebra* wsck_algebra_create(const char* kind, int n, const char* b) {
  try {
    auto a = std::make_unique<wsck_algebra>();
    a->kind = kind ? kind : "";
    if (a->kind == "W") {
      if (n < 0 || n > 6) throw std::invalid_argument("W: n in 0..6");
      a->alg = wsck::build_W(n);
    } else if (a->kind == "Vir") {
      a->alg = wsck::build_Vir();
    } else if (a->kind == "S") {
      a->sub = std::make_unique<wsck::ConformalSubalgebra>(wsck::build_S(n));
      a->alg = a->sub->parent;
    } else if (a->kind == "Sb") {
      wsck::Rational bb = wsck::rat_parse(b ? b : "0");
      a->sub =
          std::make_unique<wsck::ConformalSubalgebra>(wsck::build_Sb(n, bb));
      a->alg = a->sub->parent;
    } else if (a->kind == "Stilde") {
      a->sub =
          std::make_unique<wsck::ConformalSubalgebra>(wsck::build_Stilde(n));
      a->alg = a->sub->parent;
    } else {
      throw std::invalid_argument("unknown algebra kind");
    }
    return a.release();
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

int wsck_algebra_rank(const wsck_algebra* a) {
  if (!a) return -1;
  return a->sub ? static_cast<int>(a->sub->basis.size()) : a->alg->rank();
}

int wsck_algebra_verify(const wsck_algebra* a) {
  if (!a) return -1;
  try {
    if (a->sub) {
      if (!wsck::check_closure(*a->sub).pass()) return 1;
      for (auto& x : a->sub->basis)
        for (auto& y : a->sub->basis)
          if (!wsck::skew_holds(*a->sub->parent, x, y)) return 2;
      for (auto& x : a->sub->basis)
        for (auto& y : a->sub->basis)
          for (auto& z : a->sub->basis)
            if (!wsck::jacobi_holds(*a->sub->parent, x, y, z)) return 3;
      return 0;
    }
    if (!wsck::check_skew(*a->alg).pass()) return 2;
    if (!wsck::check_jacobi(*a->alg).pass()) return 3;
    return 0;
  } catch (const std::exception& e) {
    set_error(e.what());
    return -1;
  }
}

char* wsck_algebra_table_json(const wsck_algebra* a) {
  if (!a) return nullptr;
  try {
    const wsck::ConformalAlgebra& A = *a->alg;
    nlohmann::json out = nlohmann::json::object();
    for (int x = 0; x < A.rank(); ++x)
      for (int y = 0; y < A.rank(); ++y) {
        const wsck::LambdaValued& t = A.table[x][y];
        if (t.zero()) continue;
        nlohmann::json terms = nlohmann::json::array();
        for (auto& [k, c] : t.terms()) {
          nlohmann::json e;
          e["la"] = k[0];
          e["d"] = k[1];
          e["gen"] = A.gens->name(k[2]);
          e["c"] = wsck::rat_str(c);
          terms.push_back(e);
        }
        out[A.gens->name(x) + "," + A.gens->name(y)] = terms;
      }
    std::string s = out.dump(2);
    char* buf = static_cast<char*>(std::malloc(s.size() + 1));
    if (!buf) return nullptr;
    std::memcpy(buf, s.c_str(), s.size() + 1);
    return buf;
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

void wsck_algebra_free(wsck_algebra* a) { delete a; }

void wsck_string_free(char* s) { std::free(s); }

const char* wsck_last_error(void) { return g_last_error.c_str(); }

const char* wsck_version(void) { return "wsconfkit 1.0.0"; }

}  // extern "C"

#ifndef WSCK_SINGULAR_HPP
#define WSCK_SINGULAR_HPP

#include "annihilation.hpp"

namespace wsck {

enum class GenSet { W, S, Sprime };

/// Unknowns are the coordinates of m = sum c_{k,id} d^k (basis id), k <= dmax.
struct Ansatz {
  ModulePtr module;
  int dmax = 2;
};

/// Homogeneous exact linear system over Q.
struct LinearSystem {
  int ncols = 0;
  std::vector<std::array<int, 2>> unknowns;  // (dpow, basis id) per column
  std::vector<std::map<int, Rational>> rows;
  long condition_count = 0;
};

LinearSystem assemble(const Ansatz& ansatz, GenSet gens);

struct SingularVector {
  ModuleVector vector;
  std::vector<Rational> weight;
  int ddegree = 0;
  bool trivial = false;      // lies in the inducing copy F
  std::string tag;           // W-a, W-b, W-c, S-a, S-b, S-c, S-d, unmatched
  std::vector<Rational> defining_weight;  // weight of the defining vector of
                                          // the matched case (empty if none)
};

struct SingularReport {
  std::vector<SingularVector> vectors;  // deterministic order
  long constraints = 0;
  int rank = 0;
  int solution_dim = 0;
  int nontrivial_count() const {
    int c = 0;
    for (auto& v : vectors)
      if (!v.trivial) ++c;
    return c;
  }
  int trivial_count() const {
    return static_cast<int>(vectors.size()) - nontrivial_count();
  }
  // Reducibility of the induced module: a nontrivial singular vector exists,
  // or the inducing copy itself is reducible (more than one trivial highest
  // singular vector).
  bool degenerate() const {
    return nontrivial_count() > 0 || trivial_count() > 1;
  }
};

SingularReport solve(const Ansatz& ansatz, GenSet gens);

/// Re-check every reported vector against the raw annihilation-algebra
/// singularity conditions (positive-degree elements plus the Borel rows),
/// bypassing the assembled system.
bool recheck_raw_conditions(const ConformalModule& M, const ModuleVector& m,
                            GenSet gens, int tmax);

/// Every nontrivial solution has d-degree <= 1 even with dmax = 3, and for
/// the W generator set its support lies in the d(xi_* x V), xi^l x V,
/// xi_* x V cells.
bool verify_degree_lemma(const ConformalModule& M, GenSet gens);

/// Solver summary for one tensor module family member.
struct InventoryEntry {
  std::string family;  // theta, barforms, standard
  int n = 0, k = 0;
  int count = 0;  // nontrivial vectors
  std::vector<std::vector<Rational>> weights;          // per vector
  std::vector<std::string> tags;                       // per vector
  std::vector<std::vector<Rational>> defining_weights; // per vector
};

InventoryEntry classify_family(const std::string& family, int n, int k,
                               GenSet gens, int dmax,
                               const Rational& alpha = Rational(0));

/// Expected inventories for the built-in families (classification data).
std::vector<InventoryEntry> expected_inventory(GenSet gens, int n);
bool inventory_matches(const InventoryEntry& got, const InventoryEntry& want,
                       std::string* why = nullptr);

}  // namespace wsck

#endif

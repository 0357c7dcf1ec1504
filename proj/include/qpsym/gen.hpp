#ifndef QPSYM_GEN_HPP
#define QPSYM_GEN_HPP

#include <cstdint>

#include "qpsym/connection.hpp"

namespace qpsym {

// Bounds for random instance generation. Defaults are the desk scale used by
// the verification suites.
struct GenConfig {
  std::uint64_t seed = 0;
  std::uint64_t trials = 200;
  int m = 2;
  int n = 2;
  int max_order = 3;
  int max_deg = 2;
  int max_coef = 5;
  std::int64_t only_trial = -1;  // restrict a suite to one trial index, for reruns

  void validate() const;
};

std::uint64_t splitmix64(std::uint64_t x);

// Per-trial seed: seed XOR hash(trial index). Trials are independent of
// execution order by construction.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

// Small deterministic generator; identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix64(seed ^ 0x9e3779b97f4a7c15ull)) {}
  std::uint64_t next();
  int range(int lo, int hi);  // inclusive bounds
  bool chance(int num, int den);

 private:
  std::uint64_t state_;
};

Rational gen_rational(Rng& rng, int max_coef, bool nonzero = false);
Poly gen_poly(Rng& rng, int m, int max_deg, int max_coef, bool nonzero = false);
MatPoly gen_matpoly(Rng& rng, int n, int m, int max_deg, int max_coef);
MatPoly gen_traceless(Rng& rng, int n, int m, int max_deg, int max_coef);

enum class OpConstraint { Any, InPk, ScalarPrincipal };

// Deterministic function of the rng stream; InPk forces scalar coefficients
// at |alpha| = k (and a nonempty level k), ScalarPrincipal forces scalar top
// coefficients.
DiffOp gen_diffop(Rng& rng, const GenConfig& cfg, OpConstraint constraint, int k = -1);
DiffOp gen_diffop_trial(const GenConfig& cfg, std::uint64_t trial, OpConstraint constraint,
                        int k = -1);

Section gen_section(Rng& rng, int m, int n, int max_deg, int max_coef);
SymbolElem gen_symbol(Rng& rng, int m, int n, int degree, int max_deg, int max_coef);
VectField gen_vectfield(Rng& rng, int m, int max_deg, int max_coef, bool nonzero = false);
Connection gen_connection(Rng& rng, int m, int n, int max_deg, int max_coef, bool metric);
SplitPair gen_splitpair(Rng& rng, int m, int n, int max_deg, int max_coef);

}  // namespace qpsym

#endif

#include "qpsym/gen.hpp"

#include <stdexcept>

namespace qpsym {

void GenConfig::validate() const {
  if (n <= 1) throw std::invalid_argument("GenConfig: rank n must exceed 1");
  if (m < 1) throw std::invalid_argument("GenConfig: base dimension must be >= 1");
  if (max_order < 0) throw std::invalid_argument("GenConfig: max_order must be >= 0");
  if (max_deg < 1) throw std::invalid_argument("GenConfig: max_deg must be >= 1");
  if (max_coef < 1) throw std::invalid_argument("GenConfig: max_coef must be >= 1");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return seed ^ splitmix64(trial);
}

std::uint64_t Rng::next() {
  state_ = splitmix64(state_);
  return state_;
}

int Rng::range(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("Rng: empty range");
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next() % span);
}

bool Rng::chance(int num, int den) { return range(1, den) <= num; }

Rational gen_rational(Rng& rng, int max_coef, bool nonzero) {
  int num = rng.range(nonzero ? 1 : 0, max_coef);
  if (rng.chance(1, 2)) num = -num;
  int den = rng.range(1, max_coef);
  return Rational(num, den);
}

Poly gen_poly(Rng& rng, int m, int max_deg, int max_coef, bool nonzero) {
  Poly p(m);
  for (const auto& e : multi_indices_upto(m, max_deg))
    if (rng.chance(1, 3)) p.add_term(e, gen_rational(rng, max_coef));
  if (nonzero && p.is_zero()) p.add_term(MultiIndex(m, 0), gen_rational(rng, max_coef, true));
  return p;
}

MatPoly gen_matpoly(Rng& rng, int n, int m, int max_deg, int max_coef) {
  MatPoly a(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rng.chance(2, 3)) a.set(i, j, gen_poly(rng, m, max_deg, max_coef));
  return a;
}

MatPoly gen_traceless(Rng& rng, int n, int m, int max_deg, int max_coef) {
  return traceless_project(gen_matpoly(rng, n, m, max_deg, max_coef));
}

DiffOp gen_diffop(Rng& rng, const GenConfig& cfg, OpConstraint constraint, int k) {
  cfg.validate();
  if (constraint == OpConstraint::InPk) {
    if (k < 0 || k > cfg.max_order)
      throw std::invalid_argument("gen_diffop: constraint in_Pk(k) unsatisfiable within max_order");
  }
  int top = (constraint == OpConstraint::InPk) ? k : rng.range(0, cfg.max_order);
  DiffOp t(cfg.m, cfg.n);
  for (const auto& alpha : multi_indices_upto(cfg.m, top)) {
    int o = mi_order(alpha);
    bool keep = (o == top) ? true : rng.chance(1, 2);
    if (!keep) continue;
    bool force_scalar = (o == top) && (constraint == OpConstraint::InPk ||
                                       constraint == OpConstraint::ScalarPrincipal);
    MatPoly coeff = force_scalar
                        ? MatPoly::scalar(cfg.n, gen_poly(rng, cfg.m, cfg.max_deg, cfg.max_coef,
                                                          /*nonzero=*/o == top))
                        : gen_matpoly(rng, cfg.n, cfg.m, cfg.max_deg, cfg.max_coef);
    if (o == top && coeff.is_zero())
      coeff = MatPoly::scalar(cfg.n, Poly::constant(cfg.m, gen_rational(rng, cfg.max_coef, true)));
    t.add_term(alpha, coeff);
  }
  return t;
}

DiffOp gen_diffop_trial(const GenConfig& cfg, std::uint64_t trial, OpConstraint constraint, int k) {
  Rng rng(trial_seed(cfg.seed, trial));
  return gen_diffop(rng, cfg, constraint, k);
}

Section gen_section(Rng& rng, int m, int n, int max_deg, int max_coef) {
  Section s(m, n);
  for (int i = 0; i < n; ++i) s.components[i] = gen_poly(rng, m, max_deg, max_coef);
  return s;
}

SymbolElem gen_symbol(Rng& rng, int m, int n, int degree, int max_deg, int max_coef) {
  XiPoly scalar(m);
  for (const auto& xi : multi_indices_exact(m, degree))
    if (rng.chance(1, 2)) scalar.add_term(xi, gen_poly(rng, m, max_deg, max_coef));
  XiMat sl(m);
  if (degree >= 1)
    for (const auto& xi : multi_indices_exact(m, degree - 1))
      if (rng.chance(1, 2)) sl.add_term(xi, gen_traceless(rng, n, m, max_deg, max_coef));
  return SymbolElem::make(m, n, degree, std::move(scalar), std::move(sl));
}

VectField gen_vectfield(Rng& rng, int m, int max_deg, int max_coef, bool nonzero) {
  VectField x(m);
  for (int i = 0; i < m; ++i)
    if (rng.chance(2, 3)) x.components[i] = gen_poly(rng, m, max_deg, max_coef);
  if (nonzero && x.is_zero())
    x.components[rng.range(0, m - 1)] = gen_poly(rng, m, max_deg, max_coef, /*nonzero=*/true);
  return x;
}

Connection gen_connection(Rng& rng, int m, int n, int max_deg, int max_coef, bool metric) {
  std::vector<MatPoly> gamma;
  gamma.reserve(m);
  for (int i = 0; i < m; ++i) {
    MatPoly g = gen_matpoly(rng, n, m, max_deg, max_coef);
    if (metric) g = (g - g.transpose()).scale(Rational(1, 2));
    gamma.push_back(std::move(g));
  }
  return Connection(m, n, std::move(gamma));
}

SplitPair gen_splitpair(Rng& rng, int m, int n, int max_deg, int max_coef) {
  return SplitPair{gen_vectfield(rng, m, max_deg, max_coef),
                   gen_traceless(rng, n, m, max_deg, max_coef)};
}

}  // namespace qpsym

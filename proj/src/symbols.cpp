#include "qpsym/symbols.hpp"

namespace qpsym {

namespace {

Poly mul_pp(const Poly& a, const Poly& b) { return a * b; }
MatPoly mul_pm(const Poly& a, const MatPoly& b) { return b.scale(a); }
MatPoly mul_mp(const MatPoly& a, const Poly& b) { return a.scale(b); }
MatPoly mul_comm(const MatPoly& a, const MatPoly& b) { return mat_comm(a, b); }

}  // namespace

SymbolElem::SymbolElem(int m, int n, int degree)
    : m_(m), n_(n), degree_(degree), scalar_(m), sl_(m) {
  if (degree < 0) throw std::invalid_argument("SymbolElem: negative degree");
  if (n < 2) throw std::invalid_argument("SymbolElem: fiber rank must exceed 1");
}

SymbolElem SymbolElem::make(int m, int n, int degree, XiPoly scalar, XiMat sl) {
  SymbolElem s(m, n, degree);
  if (scalar.m() != m || sl.m() != m) throw std::invalid_argument("SymbolElem: dimension mismatch");
  if (!scalar.homogeneous(degree))
    throw std::invalid_argument("SymbolElem: scalar part not homogeneous of the stated degree");
  if (!sl.homogeneous(degree - 1) || (degree == 0 && !sl.is_zero()))
    throw std::invalid_argument("SymbolElem: matrix part not homogeneous of degree k-1");
  for (const auto& [xi, a] : sl.terms()) {
    if (a.n() != n) throw std::invalid_argument("SymbolElem: fiber rank mismatch");
    if (!a.trace().is_zero()) throw std::invalid_argument("SymbolElem: matrix part must be trace-free");
  }
  s.scalar_ = std::move(scalar);
  s.sl_ = std::move(sl);
  return s;
}

SymbolElem operator+(const SymbolElem& a, const SymbolElem& b) {
  if (a.m_ != b.m_ || a.n_ != b.n_)
    throw std::invalid_argument("SymbolElem: cannot add symbols of different shape");
  if (a.degree_ != b.degree_) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    throw std::invalid_argument("SymbolElem: cannot add nonzero symbols of different degree");
  }
  return SymbolElem::make(a.m_, a.n_, a.degree_, a.scalar_ + b.scalar_, a.sl_ + b.sl_);
}

namespace {
SymbolElem negate(const SymbolElem& a) {
  XiPoly sc(a.m());
  for (const auto& [xi, u] : a.scalar_part().terms()) sc.add_term(xi, -u);
  XiMat sl(a.m());
  for (const auto& [xi, v] : a.sl_part().terms()) sl.add_term(xi, -v);
  return SymbolElem::make(a.m(), a.n(), a.degree(), std::move(sc), std::move(sl));
}
}  // namespace

SymbolElem operator-(const SymbolElem& a, const SymbolElem& b) {
  if (a.m_ != b.m_ || a.n_ != b.n_)
    throw std::invalid_argument("SymbolElem: cannot subtract symbols of different shape");
  if (a.degree_ != b.degree_) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return negate(b);
    throw std::invalid_argument("SymbolElem: cannot subtract nonzero symbols of different degree");
  }
  return SymbolElem::make(a.m_, a.n_, a.degree_, a.scalar_ - b.scalar_, a.sl_ - b.sl_);
}

PrincipalSymbol sigma_ppal(const DiffOp& t) {
  int d = d_order(t);  // rejects the zero operator
  XiMat coeffs(t.m());
  for (const auto& [alpha, c] : t.terms()) {
    if (mi_order(alpha) != d) break;
    coeffs.add_term(alpha, c);
  }
  return {d, coeffs};
}

SymbolElem symbol_class(const DiffOp& t, int k) {
  if (!is_in_Pk(t, k)) throw std::invalid_argument("symbol_class: operator not in P^k");
  XiPoly scalar(t.m());
  XiMat sl(t.m());
  for (const auto& [alpha, c] : t.terms()) {
    int o = mi_order(alpha);
    if (o == k) {
      scalar.add_term(alpha, *is_scalar(c));  // scalar by the membership check
    } else if (o == k - 1) {
      sl.add_term(alpha, traceless_project(c));
    } else if (o < k - 1) {
      break;
    }
  }
  return SymbolElem::make(t.m(), t.n(), k, std::move(scalar), std::move(sl));
}

SymbolElem sigma_pson(const DiffOp& t) { return symbol_class(t, p_order(t)); }

SymbolElem sigma_i(const DiffOp& t, int i) {
  if (t.is_zero()) throw std::invalid_argument("sigma_i: zero operator");
  if (i < p_order(t)) throw std::invalid_argument("sigma_i: class undefined below the filtration order");
  return symbol_class(t, i);
}

DiffOp lift(const SymbolElem& p) {
  DiffOp out(p.m(), p.n());
  for (const auto& [beta, u] : p.scalar_part().terms())
    out.add_term(beta, MatPoly::scalar(p.n(), u));
  for (const auto& [alpha, a] : p.sl_part().terms()) out.add_term(alpha, a);
  return out;
}

SymbolElem symbol_mul(const SymbolElem& p, const SymbolElem& q) {
  if (p.m() != q.m() || p.n() != q.n())
    throw std::invalid_argument("symbol_mul: dimension mismatch");
  int k = p.degree() + q.degree();
  XiPoly scalar = xi_conv(p.scalar_part(), q.scalar_part(), mul_pp);
  // matrix-by-matrix products land two orders down and vanish in degree k
  XiMat sl = xi_conv(p.scalar_part(), q.sl_part(), mul_pm) +
             xi_conv(q.scalar_part(), p.sl_part(), mul_pm);
  return SymbolElem::make(p.m(), p.n(), k, std::move(scalar), std::move(sl));
}

SymbolElem symbol_bracket(const SymbolElem& p, const SymbolElem& q) {
  if (p.m() != q.m() || p.n() != q.n())
    throw std::invalid_argument("symbol_bracket: dimension mismatch");
  if (p.degree() == 0 && q.degree() == 0) {
    // multiplication operators commute; the degree -1 bookkeeping collapses to 0
    return SymbolElem(p.m(), p.n(), 0);
  }
  int k = p.degree() + q.degree() - 1;
  XiPoly scalar = xi_poisson(p.scalar_part(), q.scalar_part(), mul_pp);
  XiMat sl = xi_conv(p.sl_part(), q.sl_part(), mul_comm) +
             xi_poisson(p.scalar_part(), q.sl_part(), mul_pm) +
             xi_poisson(p.sl_part(), q.scalar_part(), mul_mp);
  return SymbolElem::make(p.m(), p.n(), k, std::move(scalar), std::move(sl));
}

SymbolElem theta(const SymbolElem& p) {
  if (!p.scalar_part().is_zero())
    throw std::invalid_argument("theta: input must have empty scalar part");
  return p;
}

XiPoly delta(const SymbolElem& p) { return p.scalar_part(); }

GlSymbol::GlSymbol(MatPoly sl, Poly scalar) : sl_part(std::move(sl)), scalar_part(std::move(scalar)) {
  if (!sl_part.trace().is_zero()) throw std::invalid_argument("GlSymbol: sl part must be trace-free");
  if (sl_part.num_vars() != scalar_part.num_vars())
    throw std::invalid_argument("GlSymbol: num_vars mismatch");
}

GlSymbol gl_mul(const GlSymbol& a, const GlSymbol& b) {
  if (a.sl_part.n() != b.sl_part.n() || a.sl_part.num_vars() != b.sl_part.num_vars())
    throw std::invalid_argument("gl_mul: shape mismatch");
  MatPoly sl = a.sl_part.scale(b.scalar_part) + b.sl_part.scale(a.scalar_part);
  return GlSymbol(std::move(sl), a.scalar_part * b.scalar_part);
}

GlSymbol gl_bracket(const GlSymbol& a, const GlSymbol& b) {
  if (a.sl_part.n() != b.sl_part.n() || a.sl_part.num_vars() != b.sl_part.num_vars())
    throw std::invalid_argument("gl_bracket: shape mismatch");
  return GlSymbol(mat_comm(a.sl_part, b.sl_part), Poly(a.scalar_part.num_vars()));
}

}  // namespace qpsym

#ifndef QPSYM_SYMBOLS_HPP
#define QPSYM_SYMBOLS_HPP

#include <stdexcept>
#include <utility>

#include "qpsym/diffop.hpp"

namespace qpsym {

// Polynomial in the cotangent fiber coordinates xi_1..xi_m with coefficients
// in C (Poly for scalar symbols, MatPoly for endomorphism-valued ones).
template <class C>
class XiSeries {
 public:
  explicit XiSeries(int m) : m_(m) {
    if (m < 1) throw std::invalid_argument("XiSeries: base dimension must be positive");
  }

  int m() const { return m_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<MultiIndex, C, GrlexDesc>& terms() const { return terms_; }

  void add_term(const MultiIndex& xi, const C& v) {
    if (static_cast<int>(xi.size()) != m_)
      throw std::invalid_argument("XiSeries: xi multi-index length mismatch");
    if (v.is_zero()) return;
    auto it = terms_.find(xi);
    if (it == terms_.end()) {
      terms_.emplace(xi, v);
    } else {
      it->second = it->second + v;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool homogeneous(int k) const {
    for (const auto& [xi, v] : terms_)
      if (mi_order(xi) != k) return false;
    return true;
  }

  friend XiSeries operator+(const XiSeries& a, const XiSeries& b) {
    XiSeries out = a;
    for (const auto& [xi, v] : b.terms_) out.add_term(xi, v);
    return out;
  }
  friend XiSeries operator-(const XiSeries& a, const XiSeries& b) {
    XiSeries out = a;
    for (const auto& [xi, v] : b.terms_) out.add_term(xi, -v);
    return out;
  }
  friend bool operator==(const XiSeries& a, const XiSeries& b) {
    return a.m_ == b.m_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const XiSeries& a, const XiSeries& b) { return !(a == b); }

 private:
  int m_;
  std::map<MultiIndex, C, GrlexDesc> terms_;
};

using XiPoly = XiSeries<Poly>;
using XiMat = XiSeries<MatPoly>;

template <class A, class B, class Mul>
auto xi_conv(const XiSeries<A>& a, const XiSeries<B>& b, Mul mul)
    -> XiSeries<decltype(mul(std::declval<const A&>(), std::declval<const B&>()))> {
  XiSeries<decltype(mul(std::declval<const A&>(), std::declval<const B&>()))> out(a.m());
  for (const auto& [xa, va] : a.terms())
    for (const auto& [xb, vb] : b.terms()) out.add_term(mi_add(xa, xb), mul(va, vb));
  return out;
}

template <class C>
XiSeries<C> xi_deriv(const XiSeries<C>& a, int r) {  // d/d xi_r, 1-based
  XiSeries<C> out(a.m());
  for (const auto& [xi, v] : a.terms()) {
    if (xi[r - 1] == 0) continue;
    MultiIndex d = xi;
    d[r - 1] -= 1;
    out.add_term(d, v.scale(Rational(xi[r - 1])));
  }
  return out;
}

template <class C>
XiSeries<C> x_deriv(const XiSeries<C>& a, int r) {  // d/d x_r on coefficients
  XiSeries<C> out(a.m());
  for (const auto& [xi, v] : a.terms()) out.add_term(xi, v.deriv(r));
  return out;
}

// Canonical cotangent Poisson bracket
// {f,g} = sum_r d_{xi_r} f d_{x_r} g - d_{x_r} f d_{xi_r} g.
template <class A, class B, class Mul>
auto xi_poisson(const XiSeries<A>& a, const XiSeries<B>& b, Mul mul)
    -> decltype(xi_conv(a, b, mul)) {
  auto out = xi_conv(xi_deriv(a, 1), x_deriv(b, 1), mul);
  out = out - xi_conv(x_deriv(a, 1), xi_deriv(b, 1), mul);
  for (int r = 2; r <= a.m(); ++r) {
    out = out + xi_conv(xi_deriv(a, r), x_deriv(b, r), mul);
    out = out - xi_conv(x_deriv(a, r), xi_deriv(b, r), mul);
  }
  return out;
}

// Degree-k element of the graded symbol algebra S^k(P(E,M)): a scalar
// xi-homogeneous part of degree k plus a trace-free matrix part of degree k-1.
class SymbolElem {
 public:
  SymbolElem(int m, int n, int degree);  // the zero symbol of that degree
  static SymbolElem make(int m, int n, int degree, XiPoly scalar, XiMat sl);

  int m() const { return m_; }
  int n() const { return n_; }
  int degree() const { return degree_; }
  bool is_zero() const { return scalar_.is_zero() && sl_.is_zero(); }
  const XiPoly& scalar_part() const { return scalar_; }
  const XiMat& sl_part() const { return sl_; }

  // The zero symbol belongs to every graded piece: zeros compare equal and
  // absorb into sums regardless of their recorded degree.
  friend SymbolElem operator+(const SymbolElem& a, const SymbolElem& b);
  friend SymbolElem operator-(const SymbolElem& a, const SymbolElem& b);
  friend bool operator==(const SymbolElem& a, const SymbolElem& b) {
    if (a.m_ != b.m_ || a.n_ != b.n_) return false;
    if (a.is_zero() && b.is_zero()) return true;
    return a.degree_ == b.degree_ && a.scalar_ == b.scalar_ && a.sl_ == b.sl_;
  }
  friend bool operator!=(const SymbolElem& a, const SymbolElem& b) { return !(a == b); }

 private:
  int m_, n_, degree_;
  XiPoly scalar_;
  XiMat sl_;
};

// Usual principal symbol: the coefficients at |alpha| = d_order read as a
// matrix-valued xi-polynomial.
struct PrincipalSymbol {
  int degree;
  XiMat coeffs;
};
PrincipalSymbol sigma_ppal(const DiffOp& t);

// Class of t in S^k = P^k/P^{k-1}: scalar witnesses of the coefficients at
// |alpha| = k, trace-free projections of those at |alpha| = k-1.
// Requires t in P^k.
SymbolElem symbol_class(const DiffOp& t, int k);

// Quantum-Poisson symbol: the class of t at its filtration order.
SymbolElem sigma_pson(const DiffOp& t);

// 0 when i exceeds the filtration order, the class otherwise. Requires
// i >= p_order(t).
SymbolElem sigma_i(const DiffOp& t, int i);

// Canonical representative: xi^beta -> gamma_{u_beta} d^beta on the scalar
// part and A_alpha xi^alpha -> A_alpha d^alpha on the matrix part.
// sigma_pson(lift(p)) == p for nonzero p.
DiffOp lift(const SymbolElem& p);

// Graded product and bracket, closed forms. Both agree with the
// representative-level definitions sigma_{i+j}(T o D) and sigma_{i+j-1}([T,D]).
SymbolElem symbol_mul(const SymbolElem& p, const SymbolElem& q);
SymbolElem symbol_bracket(const SymbolElem& p, const SymbolElem& q);

// Injection of S^{k-1}(M) (x) sl(E): validates the scalar part is empty.
SymbolElem theta(const SymbolElem& p);

// Projection onto the scalar symbol; zero exactly on the image of theta.
XiPoly delta(const SymbolElem& p);

// The order-(0,1) symbol algebra of gl(E): a trace-free part plus a
// multiplication operator.
struct GlSymbol {
  MatPoly sl_part;
  Poly scalar_part;
  GlSymbol(MatPoly sl, Poly scalar);
};
GlSymbol gl_mul(const GlSymbol& a, const GlSymbol& b);
GlSymbol gl_bracket(const GlSymbol& a, const GlSymbol& b);

}  // namespace qpsym

#endif

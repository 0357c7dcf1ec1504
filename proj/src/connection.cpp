#include "qpsym/connection.hpp"

namespace qpsym {

VectField::VectField(int m_) : m(m_) {
  if (m < 1) throw std::invalid_argument("VectField: base dimension must be positive");
  components.assign(m, Poly(m));
}

bool VectField::is_zero() const {
  for (const auto& c : components)
    if (!c.is_zero()) return false;
  return true;
}

VectField vf_bracket(const VectField& x, const VectField& y) {
  if (x.m != y.m) throw std::invalid_argument("vf_bracket: dimension mismatch");
  VectField out(x.m);
  for (int j = 0; j < x.m; ++j) {
    Poly acc(x.m);
    for (int i = 0; i < x.m; ++i)
      acc = acc + x.components[i] * y.components[j].deriv(i + 1) -
            y.components[i] * x.components[j].deriv(i + 1);
    out.components[j] = acc;
  }
  return out;
}

Poly vf_apply(const VectField& x, const Poly& u) {
  Poly acc(x.m);
  for (int i = 0; i < x.m; ++i) acc = acc + x.components[i] * u.deriv(i + 1);
  return acc;
}

MatPoly vf_apply(const VectField& x, const MatPoly& a) {
  MatPoly acc(a.n(), a.num_vars());
  for (int i = 0; i < x.m; ++i) acc = acc + a.deriv(i + 1).scale(x.components[i]);
  return acc;
}

Connection::Connection(int m, int n, std::vector<MatPoly> gamma)
    : m_(m), n_(n), gamma_(std::move(gamma)) {
  if (m < 1) throw std::invalid_argument("Connection: base dimension must be positive");
  if (n < 2) throw std::invalid_argument("Connection: fiber rank must exceed 1");
  if (static_cast<int>(gamma_.size()) != m)
    throw std::invalid_argument("Connection: expected one Christoffel matrix per coordinate");
  for (const auto& g : gamma_)
    if (g.n() != n || g.num_vars() != m)
      throw std::invalid_argument("Connection: Christoffel matrix shape mismatch");
  metric_ = true;
  for (const auto& g : gamma_)
    if (!g.is_skew()) {
      metric_ = false;
      break;
    }
}

DiffOp nabla(const Connection& c, const VectField& x) {
  if (x.m != c.m()) throw std::invalid_argument("nabla: dimension mismatch");
  DiffOp out(c.m(), c.n());
  MatPoly order0(c.n(), c.m());
  for (int i = 0; i < c.m(); ++i) {
    MultiIndex e(c.m(), 0);
    e[i] = 1;
    out.add_term(e, MatPoly::scalar(c.n(), x.components[i]));
    order0 = order0 + c.gamma(i).scale(x.components[i]);
  }
  out.add_term(MultiIndex(c.m(), 0), order0);
  return out;
}

SplitPair lambda_decompose(const DiffOp& t, const Connection& c) {
  if (t.m() != c.m() || t.n() != c.n()) throw std::invalid_argument("lambda_decompose: shape mismatch");
  if (!is_in_Pk(t, 1)) throw std::invalid_argument("lambda_decompose: operator not in P^1");
  VectField x(t.m());
  for (int i = 0; i < t.m(); ++i) {
    MultiIndex e(t.m(), 0);
    e[i] = 1;
    if (const MatPoly* coeff = t.coeff(e)) x.components[i] = *is_scalar(*coeff);
  }
  DiffOp rest = t - nabla(c, x);
  MatPoly a(t.n(), t.m());
  if (const MatPoly* order0 = rest.coeff(MultiIndex(t.m(), 0))) a = *order0;
  return SplitPair{std::move(x), std::move(a)};
}

MatPoly curvature(const Connection& c, const VectField& x, const VectField& y) {
  DiffOp w = commutator(nabla(c, x), nabla(c, y)) - nabla(c, vf_bracket(x, y));
  if (w.is_zero()) return MatPoly(c.n(), c.m());
  if (d_order(w) != 0) throw std::logic_error("curvature: operator difference has positive order");
  return w.terms().begin()->second;
}

MatPoly nabla_end(const Connection& c, const VectField& x, const MatPoly& b) {
  MatPoly acc(c.n(), c.m());
  for (int i = 0; i < c.m(); ++i)
    acc = acc + (b.deriv(i + 1) + mat_comm(c.gamma(i), b)).scale(x.components[i]);
  return acc;
}

SplitPair bracket_star(const SplitPair& p, const SplitPair& q, const Connection& c) {
  MatPoly a = curvature(c, p.X, q.X) + nabla_end(c, p.X, q.A) - nabla_end(c, q.X, p.A) +
              mat_comm(p.A, q.A);
  return SplitPair{vf_bracket(p.X, q.X), std::move(a)};
}

DiffOp section_map(const SplitPair& p, const Connection& c) {
  if (!c.metric()) throw std::invalid_argument("section_map: connection is not metric");
  if (!p.A.trace().is_zero()) throw std::invalid_argument("section_map: matrix part must be trace-free");
  DiffOp out = nabla(c, p.X);
  out.add_term(MultiIndex(c.m(), 0), p.A);
  return out;
}

std::pair<DiffOp, Poly> trace_decompose(const DiffOp& t, const Connection& c) {
  if (!c.metric()) throw std::invalid_argument("trace_decompose: connection is not metric");
  SplitPair p = lambda_decompose(t, c);
  Poly scalar = p.A.trace().scale(Rational(1, t.n()));
  DiffOp adjusted = t - gamma(scalar, t.n());
  return {std::move(adjusted), std::move(scalar)};
}

namespace {

// Class of nabla_X + A in S^1.
SymbolElem embed_pair(const SplitPair& p, const Connection& c) {
  DiffOp op = nabla(c, p.X);
  op.add_term(MultiIndex(c.m(), 0), p.A);
  if (op.is_zero()) return SymbolElem(c.m(), c.n(), 1);
  return symbol_class(op, 1);
}

SymbolElem matrix_symbol(const MatPoly& a) {
  XiMat sl(a.num_vars());
  sl.add_term(MultiIndex(a.num_vars(), 0), traceless_project(a));
  return SymbolElem::make(a.num_vars(), a.n(), 1, XiPoly(a.num_vars()), std::move(sl));
}

}  // namespace

std::optional<int> ad_nilpotency_check(const MatPoly& a, const std::vector<SplitPair>& targets,
                                       const Connection& c, int r_max) {
  if (!is_nilpotent(a)) throw std::invalid_argument("ad_nilpotency_check: matrix is not nilpotent");
  SymbolElem ad_a = matrix_symbol(a);
  int worst = 1;
  for (const auto& target : targets) {
    SymbolElem cur = embed_pair(target, c);
    bool killed = cur.is_zero();
    for (int r = 1; r <= r_max && !killed; ++r) {
      cur = symbol_bracket(ad_a, cur);
      if (cur.is_zero()) {
        worst = std::max(worst, r);
        killed = true;
      }
    }
    if (!killed) return std::nullopt;
  }
  return worst;
}

std::optional<NilFalsification> nil_falsification(const SplitPair& t, int r_max) {
  if (t.X.is_zero())
    throw std::invalid_argument("nil_falsification: vector-field part is identically zero");
  int m = t.X.m;
  int n = t.A.n();
  XiPoly scalar(m);
  for (int i = 0; i < m; ++i) {
    MultiIndex e(m, 0);
    e[i] = 1;
    scalar.add_term(e, t.X.components[i]);
  }
  XiMat sl(m);
  sl.add_term(MultiIndex(m, 0), traceless_project(t.A));
  SymbolElem ad_t = SymbolElem::make(m, n, 1, std::move(scalar), std::move(sl));

  // u = x_i^p with enough powers to survive r_max derivatives along X
  for (int p = r_max; p <= r_max + 4; ++p) {
    for (int i = 0; i < m; ++i) {
      if (t.X.components[i].is_zero()) continue;
      MultiIndex e(m, 0);
      e[i] = p;
      Poly u = Poly::monomial(m, e, Rational(1));
      XiMat b(m);
      b.add_term(MultiIndex(m, 0), MatPoly::unit(n, m, 1, 2).scale(u));
      SymbolElem cur = SymbolElem::make(m, n, 1, XiPoly(m), std::move(b));
      bool survived = true;
      for (int r = 1; r <= r_max; ++r) {
        cur = symbol_bracket(ad_t, cur);
        if (cur.is_zero()) {
          survived = false;
          break;
        }
      }
      if (survived) return NilFalsification{std::move(u), r_max, std::move(cur)};
    }
  }
  return std::nullopt;
}

}  // namespace qpsym

#include "qpsym/diffop.hpp"

#include <stdexcept>

namespace qpsym {

Section::Section(int m_, int n_) : m(m_), n(n_) {
  if (m < 1) throw std::invalid_argument("Section: base dimension must be positive");
  if (n < 2) throw std::invalid_argument("Section: fiber rank must exceed 1");
  components.assign(n, Poly(m));
}

DiffOp::DiffOp(int m, int n) : m_(m), n_(n) {
  if (m < 1) throw std::invalid_argument("DiffOp: base dimension must be positive");
  if (n < 2) throw std::invalid_argument("DiffOp: fiber rank must exceed 1");
}

void DiffOp::add_term(const MultiIndex& alpha, const MatPoly& coeff) {
  if (static_cast<int>(alpha.size()) != m_)
    throw std::invalid_argument("DiffOp: multi-index length mismatch");
  for (int v : alpha)
    if (v < 0) throw std::invalid_argument("DiffOp: negative derivative index");
  if (coeff.n() != n_ || coeff.num_vars() != m_)
    throw std::invalid_argument("DiffOp: coefficient shape mismatch");
  if (coeff.is_zero()) return;
  auto it = terms_.find(alpha);
  if (it == terms_.end()) {
    terms_.emplace(alpha, coeff);
  } else {
    it->second = it->second + coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

const MatPoly* DiffOp::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? nullptr : &it->second;
}

DiffOp DiffOp::scale(const Rational& c) const {
  DiffOp out(m_, n_);
  if (c.is_zero()) return out;
  for (const auto& [a, t] : terms_) out.add_term(a, t.scale(c));
  return out;
}

static void check_shapes(const DiffOp& a, const DiffOp& b) {
  if (a.m() != b.m() || a.n() != b.n()) throw std::invalid_argument("DiffOp: shape mismatch");
}

DiffOp operator+(const DiffOp& a, const DiffOp& b) {
  check_shapes(a, b);
  DiffOp out = a;
  for (const auto& [alpha, t] : b.terms_) out.add_term(alpha, t);
  return out;
}

DiffOp operator-(const DiffOp& a, const DiffOp& b) {
  check_shapes(a, b);
  DiffOp out = a;
  for (const auto& [alpha, t] : b.terms_) out.add_term(alpha, -t);
  return out;
}

DiffOp operator-(const DiffOp& a) {
  DiffOp out(a.m_, a.n_);
  for (const auto& [alpha, t] : a.terms_) out.add_term(alpha, -t);
  return out;
}

DiffOp gamma(const Poly& u, int n) {
  DiffOp out(u.num_vars(), n);
  out.add_term(MultiIndex(u.num_vars(), 0), MatPoly::scalar(n, u));
  return out;
}

DiffOp partial(const MultiIndex& alpha, int n) {
  int m = static_cast<int>(alpha.size());
  DiffOp out(m, n);
  out.add_term(alpha, MatPoly::identity(n, m));
  return out;
}

Poly deriv_multi(const Poly& p, const MultiIndex& alpha) {
  Poly out = p;
  for (size_t i = 0; i < alpha.size(); ++i)
    for (int k = 0; k < alpha[i]; ++k) out = out.deriv(static_cast<int>(i) + 1);
  return out;
}

MatPoly deriv_multi(const MatPoly& a, const MultiIndex& alpha) {
  MatPoly out = a;
  for (size_t i = 0; i < alpha.size(); ++i)
    for (int k = 0; k < alpha[i]; ++k) out = out.deriv(static_cast<int>(i) + 1);
  return out;
}

Section apply(const DiffOp& t, const Section& s) {
  if (t.m() != s.m || t.n() != s.n) throw std::invalid_argument("apply: shape mismatch");
  Section out(s.m, s.n);
  for (const auto& [alpha, coeff] : t.terms()) {
    std::vector<Poly> ds;
    ds.reserve(s.n);
    for (const auto& c : s.components) ds.push_back(deriv_multi(c, alpha));
    for (int i = 0; i < s.n; ++i) {
      Poly acc(s.m);
      for (int j = 0; j < s.n; ++j) acc = acc + coeff.at(i, j) * ds[j];
      out.components[i] = out.components[i] + acc;
    }
  }
  return out;
}

DiffOp compose(const DiffOp& t, const DiffOp& d) {
  check_shapes(t, d);
  DiffOp out(t.m(), t.n());
  for (const auto& [alpha, tc] : t.terms()) {
    for (const auto& [beta, dc] : d.terms()) {
      for_each_sub_index(alpha, [&](const MultiIndex& g) {
        MatPoly inner = deriv_multi(dc, mi_sub(alpha, g));
        if (inner.is_zero()) return;
        MatPoly c(t.n(), t.m());
        if (auto u = is_scalar(inner)) {
          c = tc.scale(*u);
        } else if (auto v = is_scalar(tc)) {
          c = inner.scale(*v);
        } else {
          c = tc * inner;
        }
        Rational b = mi_binom(alpha, g);
        out.add_term(mi_add(g, beta), b.is_one() ? c : c.scale(b));
      });
    }
  }
  return out;
}

DiffOp commutator(const DiffOp& t, const DiffOp& d) { return compose(t, d) - compose(d, t); }

int d_order(const DiffOp& t) {
  if (t.is_zero()) throw std::invalid_argument("d_order: zero operator has no order");
  return mi_order(t.terms().begin()->first);  // descending graded-lex: leading term first
}

int p_order(const DiffOp& t) {
  int d = d_order(t);
  for (const auto& [alpha, coeff] : t.terms()) {
    if (mi_order(alpha) != d) break;  // top terms come first
    if (!is_scalar(coeff)) return d + 1;
  }
  return d;
}

bool is_in_Pk(const DiffOp& t, int k) {
  if (k < 0) throw std::invalid_argument("is_in_Pk: negative filtration index");
  for (const auto& [alpha, coeff] : t.terms()) {
    int o = mi_order(alpha);
    if (o > k) return false;
    if (o == k && !is_scalar(coeff)) return false;
    if (o < k) break;
  }
  return true;
}

bool p_order_oracle(const DiffOp& t, int k) {
  if (k < 0) throw std::invalid_argument("p_order_oracle: negative filtration index");
  if (t.is_zero()) return true;
  if (k == 0) {
    // ground case of the recursion: P^0 is exactly the multiplication operators
    if (d_order(t) != 0) return false;
    return is_scalar(t.terms().begin()->second).has_value();
  }
  int probe_deg = d_order(t) + 1;
  for (int deg = 1; deg <= probe_deg; ++deg) {
    for (const auto& g : multi_indices_exact(t.m(), deg)) {
      DiffOp br = commutator(t, gamma(Poly::monomial(t.m(), g, Rational(1)), t.n()));
      if (!p_order_oracle(br, k - 1)) return false;
    }
  }
  return true;
}

}  // namespace qpsym

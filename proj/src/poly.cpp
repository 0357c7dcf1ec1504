#include "qpsym/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace qpsym {

int mi_order(const MultiIndex& a) {
  int s = 0;
  for (int v : a) s += v;
  return s;
}

MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

MultiIndex mi_sub(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

bool mi_leq(const MultiIndex& a, const MultiIndex& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

bool grlex_less(const MultiIndex& a, const MultiIndex& b) {
  int oa = mi_order(a), ob = mi_order(b);
  if (oa != ob) return oa < ob;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Rational mi_binom(const MultiIndex& a, const MultiIndex& g) {
  unsigned long long prod = 1;
  for (size_t i = 0; i < a.size(); ++i) {
    unsigned long long c = 1;
    for (int j = 1; j <= g[i]; ++j) c = c * static_cast<unsigned long long>(a[i] - j + 1) / j;
    prod *= c;
  }
  return Rational(static_cast<long>(prod));
}

std::vector<MultiIndex> multi_indices_exact(int m, int order) {
  std::vector<MultiIndex> out;
  MultiIndex cur(m, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == m - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  if (m > 0 && order >= 0) rec(0, order);
  std::sort(out.begin(), out.end(), grlex_less);
  return out;
}

std::vector<MultiIndex> multi_indices_upto(int m, int max_order) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= max_order; ++d) {
    auto level = multi_indices_exact(m, d);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

void for_each_sub_index(const MultiIndex& alpha, const std::function<void(const MultiIndex&)>& fn) {
  MultiIndex cur(alpha.size(), 0);
  std::function<void(size_t)> rec = [&](size_t pos) {
    if (pos == alpha.size()) {
      fn(cur);
      return;
    }
    for (int v = 0; v <= alpha[pos]; ++v) {
      cur[pos] = v;
      rec(pos + 1);
    }
  };
  rec(0);
}

Poly::Poly(int num_vars) : num_vars_(num_vars) {
  if (num_vars < 1) throw std::invalid_argument("Poly: num_vars must be positive");
}

Poly Poly::constant(int num_vars, const Rational& c) {
  Poly p(num_vars);
  p.add_term(MultiIndex(num_vars, 0), c);
  return p;
}

Poly Poly::variable(int num_vars, int i) {
  if (i < 1 || i > num_vars) throw std::invalid_argument("Poly: variable index out of range");
  MultiIndex e(num_vars, 0);
  e[i - 1] = 1;
  return monomial(num_vars, e, Rational(1));
}

Poly Poly::monomial(int num_vars, const MultiIndex& e, const Rational& c) {
  Poly p(num_vars);
  p.add_term(e, c);
  return p;
}

bool Poly::is_one() const {
  if (terms_.size() != 1) return false;
  const auto& [e, c] = *terms_.begin();
  return mi_order(e) == 0 && c.is_one();
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  return mi_order(terms_.begin()->first);  // descending graded-lex: leading term first
}

void Poly::add_term(const MultiIndex& e, const Rational& c) {
  if (static_cast<int>(e.size()) != num_vars_)
    throw std::invalid_argument("Poly: exponent length mismatch");
  for (int v : e)
    if (v < 0) throw std::invalid_argument("Poly: negative exponent");
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::deriv(int i) const {
  if (i < 1 || i > num_vars_) throw std::invalid_argument("Poly: derivative index out of range");
  Poly out(num_vars_);
  for (const auto& [e, c] : terms_) {
    if (e[i - 1] == 0) continue;
    MultiIndex d = e;
    d[i - 1] -= 1;
    out.add_term(d, c * Rational(e[i - 1]));
  }
  return out;
}

Rational Poly::eval(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != num_vars_)
    throw std::invalid_argument("Poly: evaluation point length mismatch");
  Rational acc;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < num_vars_; ++i)
      if (e[i] > 0) t *= point[i].pow(static_cast<unsigned long>(e[i]));
    acc += t;
  }
  return acc;
}

Poly Poly::scale(const Rational& c) const {
  Poly out(num_vars_);
  if (c.is_zero()) return out;
  for (const auto& [e, v] : terms_) out.add_term(e, v * c);
  return out;
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("Poly: num_vars mismatch");
  Poly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

Poly operator-(const Poly& a, const Poly& b) {
  if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("Poly: num_vars mismatch");
  Poly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("Poly: num_vars mismatch");
  Poly out(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(mi_add(ea, eb), ca * cb);
  return out;
}

Poly operator-(const Poly& a) {
  Poly out(a.num_vars_);
  for (const auto& [e, c] : a.terms_) out.add_term(e, -c);
  return out;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    bool neg = c.sign() < 0;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    Rational mag = c.abs();
    std::string mono;
    for (int i = 0; i < num_vars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += " ";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      os << mag.str();
    } else {
      if (!mag.is_one()) os << mag.str() << " ";
      os << mono;
    }
  }
  return os.str();
}

namespace {

struct PolyLexer {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return s[pos];
  }
  std::string digits() {
    std::string d;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) d += s[pos++];
    return d;
  }
};

}  // namespace

Poly Poly::parse(const std::string& text, int num_vars) {
  Poly out(num_vars);
  PolyLexer lx{text};
  if (lx.eof()) throw std::invalid_argument("Poly: empty input");
  bool first = true;
  while (!lx.eof()) {
    int sign = 1;
    char c = lx.peek();
    if (c == '+' || c == '-') {
      sign = (c == '-') ? -1 : 1;
      ++lx.pos;
    } else if (!first) {
      throw std::invalid_argument("Poly: expected '+' or '-' between terms");
    }
    first = false;
    if (lx.eof()) throw std::invalid_argument("Poly: dangling sign");

    Rational coef(1);
    bool saw_number = false;
    c = lx.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = lx.digits();
      std::string lit = num;
      if (lx.pos < lx.s.size() && lx.s[lx.pos] == '/') {
        ++lx.pos;
        std::string den = lx.digits();
        if (den.empty()) throw std::invalid_argument("Poly: missing denominator");
        lit += "/" + den;
      }
      coef = Rational(lit);
      saw_number = true;
    }

    MultiIndex e(num_vars, 0);
    bool saw_factor = false;
    for (;;) {
      if (lx.eof()) break;
      c = lx.peek();
      if (c == '*') {
        ++lx.pos;
        if (lx.eof()) throw std::invalid_argument("Poly: dangling '*'");
        c = lx.peek();
      }
      if (c != 'x') break;
      ++lx.pos;
      std::string idx = lx.digits();
      if (idx.empty()) throw std::invalid_argument("Poly: variable index expected after 'x'");
      int k = std::stoi(idx);
      if (k < 1 || k > num_vars)
        throw std::invalid_argument("Poly: variable x" + idx + " out of range");
      int exp = 1;
      if (lx.pos < lx.s.size() && lx.s[lx.pos] == '^') {
        ++lx.pos;
        std::string es = lx.digits();
        if (es.empty()) throw std::invalid_argument("Poly: exponent expected after '^'");
        exp = std::stoi(es);
        if (exp < 1) throw std::invalid_argument("Poly: exponent must be >= 1");
      }
      e[k - 1] += exp;
      saw_factor = true;
    }
    if (!saw_number && !saw_factor) throw std::invalid_argument("Poly: malformed term");
    out.add_term(e, sign < 0 ? -coef : coef);
  }
  return out;
}

}  // namespace qpsym

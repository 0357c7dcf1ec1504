#include "qpsym/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "qpsym/io.hpp"

namespace qpsym {

namespace {

using nlohmann::json;

struct TrialFail {
  std::string check;
  std::string message;
  std::string expected;
  std::string actual;
};

struct TrialCtx {
  std::uint64_t trial;
  std::uint64_t seed;
  std::function<json()> inputs = [] { return json::object(); };

  [[noreturn]] void fail(const std::string& check, const std::string& message,
                         const std::string& expected = "", const std::string& actual = "") const {
    throw TrialFail{check, message, expected, actual};
  }
  void require(bool ok, const std::string& check, const std::string& message) const {
    if (!ok) fail(check, message);
  }
  template <class T>
  void require_eq(const T& a, const T& b, const std::string& check, const std::string& message,
                  const std::function<std::string(const T&)>& show = {}) const {
    if (a == b) return;
    if (show) fail(check, message, show(a), show(b));
    fail(check, message);
  }
};

std::string rerun_command(const GenConfig& cfg, const std::string& suite, std::uint64_t trial) {
  std::ostringstream os;
  os << "qpsym verify " << suite << " --seed " << cfg.seed << " --trials " << cfg.trials << " --m "
     << cfg.m << " --n " << cfg.n << " --max-order " << cfg.max_order << " --max-deg "
     << cfg.max_deg << " --max-coef " << cfg.max_coef << " --only-trial " << trial;
  return os.str();
}

class Runner {
 public:
  Runner(std::string suite, const GenConfig& cfg) {
    report_.suite = std::move(suite);
    report_.cfg = cfg;
  }

  // Runs `count` trials numbered consecutively across calls; each trial draws
  // from an rng seeded by seed ^ hash(trial index) only.
  void run(std::uint64_t count, const std::function<void(Rng&, TrialCtx&)>& body) {
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uint64_t trial = next_trial_++;
      if (report_.cfg.only_trial >= 0 &&
          trial != static_cast<std::uint64_t>(report_.cfg.only_trial))
        continue;
      TrialCtx ctx{trial, trial_seed(report_.cfg.seed, trial)};
      Rng rng(ctx.seed);
      ++report_.trials;
      try {
        body(rng, ctx);
      } catch (const TrialFail& f) {
        Failure rec;
        rec.trial = ctx.trial;
        rec.seed = ctx.seed;
        rec.check = f.check;
        rec.message = f.message;
        rec.expected = f.expected;
        rec.actual = f.actual;
        rec.rerun = rerun_command(report_.cfg, report_.suite, ctx.trial);
        rec.inputs = ctx.inputs();
        report_.failures.push_back(std::move(rec));
      } catch (const std::exception& e) {
        Failure rec;
        rec.trial = ctx.trial;
        rec.seed = ctx.seed;
        rec.check = "unexpected-exception";
        rec.message = e.what();
        rec.rerun = rerun_command(report_.cfg, report_.suite, ctx.trial);
        rec.inputs = ctx.inputs();
        report_.failures.push_back(std::move(rec));
      }
    }
  }

  void finding(const std::string& s) { report_.findings.push_back(s); }
  VerifyReport take() { return std::move(report_); }
  const GenConfig& cfg() const { return report_.cfg; }

 private:
  VerifyReport report_;
  std::uint64_t next_trial_ = 0;
};

std::string op_str(const DiffOp& t) { return diffop_to_json(t).dump(); }
std::string sym_str(const SymbolElem& p) { return symbol_to_json(p).dump(); }
std::string mat_str(const MatPoly& a) { return matpoly_to_json(a).dump(); }

// ---------------------------------------------------------------------------
// poly-ring: commutative ring axioms, derivations, evaluation homomorphism
// ---------------------------------------------------------------------------

void suite_poly_ring(Runner& r) {
  const GenConfig& cfg = r.cfg();
  r.run(cfg.trials, [&](Rng& rng, TrialCtx& ctx) {
    Poly p = gen_poly(rng, cfg.m, cfg.max_deg, cfg.max_coef);
    Poly q = gen_poly(rng, cfg.m, cfg.max_deg, cfg.max_coef);
    Poly s = gen_poly(rng, cfg.m, cfg.max_deg, cfg.max_coef);
    ctx.inputs = [p, q, s] { return json{{"p", p.str()}, {"q", q.str()}, {"s", s.str()}}; };

    ctx.require((p + q) + s == p + (q + s), "add-assoc", "(p+q)+s != p+(q+s)");
    ctx.require(p + q == q + p, "add-comm", "p+q != q+p");
    ctx.require((p * q) * s == p * (q * s), "mul-assoc", "(pq)s != p(qs)");
    ctx.require(p * q == q * p, "mul-comm", "pq != qp");
    ctx.require(p * (q + s) == p * q + p * s, "distrib", "p(q+s) != pq+ps");
    ctx.require((p - p).is_zero(), "add-inverse", "p-p != 0");

    int i = rng.range(1, cfg.m);
    int j = rng.range(1, cfg.m);
    ctx.require((p * q).deriv(i) == p.deriv(i) * q + p * q.deriv(i), "derivation",
                "pderiv is not a derivation");
    ctx.require(p.deriv(i).deriv(j) == p.deriv(j).deriv(i), "mixed-partials",
                "mixed partials do not commute");

    std::vector<Rational> point;
    for (int k = 0; k < cfg.m; ++k) point.push_back(gen_rational(rng, cfg.max_coef));
    ctx.require((p + q).eval(point) == p.eval(point) + q.eval(point), "eval-add",
                "eval not additive");
    ctx.require((p * q).eval(point) == p.eval(point) * q.eval(point), "eval-mul",
                "eval not multiplicative");

    ctx.require(Poly::parse(p.str(), cfg.m) == p, "text-roundtrip", "parse(str(p)) != p");
  });
}

// ---------------------------------------------------------------------------
// matalg: commutator laws, trace-free projection, nilpotent machinery
// ---------------------------------------------------------------------------

// independent exact rank via fraction-free elimination on Rational entries
int rational_rank(std::vector<std::vector<Rational>> rows) {
  int rank = 0;
  size_t cols = rows.empty() ? 0 : rows[0].size();
  for (size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (size_t rr = rank; rr < rows.size(); ++rr)
      if (!rows[rr][c].is_zero()) {
        piv = static_cast<int>(rr);
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (size_t rr = rank + 1; rr < rows.size(); ++rr) {
      if (rows[rr][c].is_zero()) continue;
      Rational f = rows[rr][c] / rows[rank][c];
      for (size_t cc = c; cc < cols; ++cc) rows[rr][cc] = rows[rr][cc] - f * rows[rank][cc];
    }
    ++rank;
  }
  return rank;
}

void suite_matalg(Runner& r) {
  const GenConfig& cfg = r.cfg();

  r.run(1, [&](Rng&, TrialCtx& ctx) {
    auto basis = nilpotent_basis(cfg.n, cfg.m);
    ctx.require(static_cast<int>(basis.size()) == cfg.n * cfg.n - 1, "basis-count",
                "nilpotent basis has wrong size");
    std::vector<std::vector<Rational>> rows;
    for (const auto& b : basis) {
      ctx.require(b.trace().is_zero(), "basis-traceless", "basis matrix has nonzero trace");
      MatPoly pw = b;
      for (int k = 1; k < cfg.n; ++k) pw = pw * b;
      ctx.require(pw.is_zero(), "basis-nilpotent", "basis matrix is not nilpotent");
      std::vector<Rational> row;
      for (int i = 0; i < cfg.n; ++i)
        for (int j = 0; j < cfg.n; ++j) {
          const Poly& e = b.at(i, j);
          row.push_back(e.is_zero() ? Rational(0) : e.terms().begin()->second);
        }
      rows.push_back(std::move(row));
    }
    ctx.require(rational_rank(rows) == cfg.n * cfg.n - 1, "basis-rank",
                "nilpotent basis does not span sl(n)");
  });

  r.run(cfg.trials, [&](Rng& rng, TrialCtx& ctx) {
    MatPoly a = gen_matpoly(rng, cfg.n, cfg.m, cfg.max_deg, cfg.max_coef);
    MatPoly b = gen_matpoly(rng, cfg.n, cfg.m, cfg.max_deg, cfg.max_coef);
    MatPoly c = gen_matpoly(rng, cfg.n, cfg.m, cfg.max_deg, cfg.max_coef);
    ctx.inputs = [=] { return json{{"a", mat_str(a)}, {"b", mat_str(b)}, {"c", mat_str(c)}}; };

    MatPoly jac = mat_comm(a, mat_comm(b, c)) + mat_comm(b, mat_comm(c, a)) +
                  mat_comm(c, mat_comm(a, b));
    ctx.require(jac.is_zero(), "jacobi", "Jacobi identity fails for mat_comm");
    ctx.require(mat_comm(a, b).trace().is_zero(), "comm-traceless",
                "commutator has nonzero trace");

    MatPoly ta = traceless_project(a);
    ctx.require(ta.trace().is_zero(), "project-traceless", "projection keeps a trace");
    ctx.require(traceless_project(ta) == ta, "project-idempotent", "projection not idempotent");
    ctx.require(traceless_project(a + b) == ta + traceless_project(b), "project-linear",
                "projection not additive");
    Poly u = a.trace().scale(Rational(1, cfg.n));
    ctx.require(a == ta + MatPoly::scalar(cfg.n, u), "scalar-plus-traceless",
                "a != a' + tr(a)/n id");
    auto w = is_scalar(MatPoly::scalar(cfg.n, u));
    ctx.require(w.has_value() && *w == u, "scalar-witness", "is_scalar loses the witness");

    MatPoly tf = gen_traceless(rng, cfg.n, cfg.m, cfg.max_deg, cfg.max_coef);
    auto parts = decompose_nilpotent(tf);
    MatPoly sum(cfg.n, cfg.m);
    for (const auto& [coef, mat] : parts) {
      sum = sum + mat.scale(coef);
      ctx.require(is_nilpotent(mat.scale(coef)), "summand-nilpotent",
                  "decomposition summand is not nilpotent");
    }
    ctx.require(sum == tf, "decompose-roundtrip", "sum of nilpotent summands != input");
  });
}

// ---------------------------------------------------------------------------
// operator-algebra: composition semantics, associativity, commutator laws
// ---------------------------------------------------------------------------

void suite_operator_algebra(Runner& r) {
  GenConfig cfg = r.cfg();
  cfg.max_order = std::min(cfg.max_order, 2);  // triple compositions stay at desk scale
  r.run(r.cfg().trials, [&](Rng& rng, TrialCtx& ctx) {
    DiffOp t = gen_diffop(rng, cfg, OpConstraint::Any);
    DiffOp d = gen_diffop(rng, cfg, OpConstraint::Any);
    DiffOp e = gen_diffop(rng, cfg, OpConstraint::Any);
    ctx.inputs = [=] { return json{{"t", op_str(t)}, {"d", op_str(d)}, {"e", op_str(e)}}; };

    ctx.require(compose(compose(t, d), e) == compose(t, compose(d, e)), "compose-assoc",
                "(t d) e != t (d e)");
    ctx.require(compose(t + d, e) == compose(t, e) + compose(d, e), "compose-left-linear",
                "(t+d) e != t e + d e");
    ctx.require(compose(e, t + d) == compose(e, t) + compose(e, d), "compose-right-linear",
                "e (t+d) != e t + e d");

    Section s = gen_section(rng, cfg.m, cfg.n, cfg.max_deg, cfg.max_coef);
    ctx.require(apply(compose(t, d), s) == apply(t, apply(d, s)), "apply-compose",
                "apply(compose) != nested apply");

    ctx.require(commutator(t, d) == -(commutator(d, t)), "commutator-antisym",
                "[t,d] != -[d,t]");
    DiffOp jac = commutator(t, commutator(d, e)) + commutator(d, commutator(e, t)) +
                 commutator(e, commutator(t, d));
    ctx.require(jac.is_zero(), "commutator-jacobi", "Jacobi identity fails");

    Poly u = gen_poly(rng, cfg.m, cfg.max_deg, cfg.max_coef);
    Poly v = gen_poly(rng, cfg.m, cfg.max_deg, cfg.max_coef);
    ctx.require(compose(gamma(u, cfg.n), gamma(v, cfg.n)) == gamma(u * v, cfg.n),
                "gamma-multiplicative", "gamma(u) gamma(v) != gamma(uv)");
  });
}

// ---------------------------------------------------------------------------
// filtration: product/bracket laws and the local membership criterion vs the
// recursive-definition oracle
// ---------------------------------------------------------------------------

void check_membership_agreement(TrialCtx& ctx, const DiffOp& t, int k, const char* name) {
  bool fast = is_in_Pk(t, k);
  bool slow = p_order_oracle(t, k);
  if (fast != slow)
    ctx.fail(name, "is_in_Pk disagrees with the recursive-definition oracle at k=" +
                       std::to_string(k),
             slow ? "in P^k" : "not in P^k", fast ? "in P^k" : "not in P^k");
}

void suite_filtration(Runner& r) {
  const GenConfig& cfg = r.cfg();

  // exhaustive family: single-term operators, coefficients in
  // {id, E12, x1 id, x1 E12}, orders <= 2, m = 2, n = 2
  r.run(1, [&](Rng&, TrialCtx& ctx) {
    int m = 2, n = 2;
    Poly one = Poly::constant(m, Rational(1));
    Poly x1 = Poly::variable(m, 1);
    std::vector<MatPoly> coeffs = {MatPoly::scalar(n, one), MatPoly::unit(n, m, 1, 2),
                                   MatPoly::scalar(n, x1), MatPoly::unit(n, m, 1, 2).scale(x1)};
    for (const auto& alpha : multi_indices_upto(m, 2)) {
      for (const auto& c : coeffs) {
        DiffOp t(m, n);
        t.add_term(alpha, c);
        for (int k = 0; k <= mi_order(alpha) + 1; ++k)
          check_membership_agreement(ctx, t, k, "membership-exhaustive");
      }
    }
  });

  int max_jk = std::min(cfg.max_order, 3);
  r.run(cfg.trials, [&](Rng& rng, TrialCtx& ctx) {
    int j = rng.range(0, max_jk);
    int k = rng.range(0, max_jk);
    DiffOp t = gen_diffop(rng, cfg, OpConstraint::InPk, j);
    DiffOp d = gen_diffop(rng, cfg, OpConstraint::InPk, k);
    ctx.inputs = [=] { return json{{"j", j}, {"k", k}, {"t", op_str(t)}, {"d", op_str(d)}}; };

    ctx.require(is_in_Pk(compose(t, d), j + k), "product-law",
                "P^j . P^k escapes P^{j+k}");
    DiffOp br = commutator(t, d);
    if (j + k == 0) {
      ctx.require(br.is_zero(), "bracket-law", "[P^0, P^0] != 0");
    } else {
      ctx.require(is_in_Pk(br, j + k - 1), "bracket-law", "[P^j, P^k] escapes P^{j+k-1}");
    }

    // membership equivalence across the whole filtration range of w
    DiffOp w = gen_diffop(rng, cfg, OpConstraint::Any);
    ctx.inputs = [=] {
      return json{{"j", j}, {"k", k}, {"t", op_str(t)}, {"d", op_str(d)}, {"w", op_str(w)}};
    };
    int po = p_order(w);
    ctx.require(po == d_order(w) || po == d_order(w) + 1, "p-order-range",
                "p_order outside {d_order, d_order+1}");
    ctx.require(is_in_Pk(w, po) && (po == 0 || !is_in_Pk(w, po - 1)), "p-order-minimal",
                "p_order is not the minimal filtration index");
    for (int kk = 0; kk <= d_order(w) + 1; ++kk)
      check_membership_agreement(ctx, w, kk, "membership-random");
  });
}

// ---------------------------------------------------------------------------
// quasi-distinguishing: commutation with every gamma_{x_i} detects order
// ---------------------------------------------------------------------------

void suite_quasi_distinguishing(Runner& r) {
  const GenConfig& cfg = r.cfg();
  r.run(cfg.trials, [&](Rng& rng, TrialCtx& ctx) {
    DiffOp t = gen_diffop(rng, cfg, OpConstraint::Any);
    ctx.inputs = [=] { return json{{"t", op_str(t)}}; };
    std::vector<DiffOp> brs;
    for (int i = 1; i <= cfg.m; ++i)
      brs.push_back(commutator(t, gamma(Poly::variable(cfg.m, i), cfg.n)));
    bool all_zero = true;
    int max_br_order = -1;
    for (const auto& b : brs) {
      if (!b.is_zero()) {
        all_zero = false;
        max_br_order = std::max(max_br_order, d_order(b));
      }
    }
    int d = d_order(t);
    if (all_zero) {
      ctx.require(d == 0, "order-detection", "operator of positive order commutes with all x_i");
    } else {
      ctx.require(d >= 1, "order-detection", "order-0 operator fails to commute with some x_i");
      ctx.require(max_br_order == d - 1, "bracket-drops-order",
                  "[t, gamma_{x_i}] does not peak at order d-1");
    }

    MatPoly a = gen_matpoly(rng, cfg.n, cfg.m, cfg.max_deg, cfg.max_coef);
    DiffOp order0(cfg.m, cfg.n);
    order0.add_term(MultiIndex(cfg.m, 0), a);
    for (int i = 1; i <= cfg.m; ++i)
      ctx.require(commutator(order0, gamma(Poly::variable(cfg.m, i), cfg.n)).is_zero(),
                  "order-zero-commutes", "order-0 operator does not commute with gamma_{x_i}");
  });
}

// ---------------------------------------------------------------------------
// symbol-oracle: closed-form product/bracket vs representative definitions
// ---------------------------------------------------------------------------

void suite_symbol_oracle(Runner& r) {
  const GenConfig& cfg = r.cfg();
  int max_deg_sym = std::min(cfg.max_order, 3);
  r.run(cfg.trials, [&](Rng& rng, TrialCtx& ctx) {
    int i = rng.range(0, max_deg_sym);
    int j = rng.range(0, max_deg_sym);
    SymbolElem p = gen_symbol(rng, cfg.m, cfg.n, i, cfg.max_deg, cfg.max_coef);
    SymbolElem q = gen_symbol(rng, cfg.m, cfg.n, j, cfg.max_deg, cfg.max_coef);
    ctx.inputs = [=] { return json{{"p", sym_str(p)}, {"q", sym_str(q)}}; };

    DiffOp tp = lift(p), tq = lift(q);
    SymbolElem closed_mul = symbol_mul(p, q);
    SymbolElem rep_mul = symbol_class(compose(tp, tq), i + j);
    ctx.require_eq<SymbolElem>(rep_mul, closed_mul, "mul-oracle",
                               "closed-form product differs from sigma_{i+j}(T o D)",
                               sym_str);

    SymbolElem closed_br = symbol_bracket(p, q);
    if (i + j == 0) {
      ctx.require(commutator(tp, tq).is_zero() && closed_br.is_zero(), "bracket-oracle",
                  "degree-0 bracket convention violated");
    } else {
      SymbolElem rep_br = symbol_class(commutator(tp, tq), i + j - 1);
      ctx.require_eq<SymbolElem>(rep_br, closed_br, "bracket-oracle",
                                 "closed-form bracket differs from sigma_{i+j-1}([T,D])",
                                 sym_str);
    }

    // representative independence: perturbing T inside P^{i-1} leaves the
    // product and bracket classes unchanged
    if (i >= 1) {
      GenConfig low = cfg;
      low.max_order = i - 1;
      DiffOp pert = gen_diffop(rng, low, OpConstraint::InPk, i - 1);
      DiffOp tp2 = tp + pert;
      ctx.require(symbol_class(compose(tp2, tq), i + j) == rep_mul, "well-defined-mul",
                  "product class depends on the representative");
      if (i + j >= 1)
        ctx.require(symbol_class(commutator(tp2, tq), i + j - 1) == closed_br,
                    "well-defined-bracket", "bracket class depends on the representative");
    }
  });
}

// ---------------------------------------------------------------------------
// poisson-laws: the classical Poisson algebra structure of S(P(E,M))
// ---------------------------------------------------------------------------

void suite_poisson_laws(Runner& r) {
  const GenConfig& cfg = r.cfg();
  int max_deg_sym = std::min(cfg.max_order, 2);
  r.run(cfg.trials, [&](Rng& rng, TrialCtx& ctx) {
    SymbolElem p = gen_symbol(rng, cfg.m, cfg.n, rng.range(0, max_deg_sym), cfg.max_deg,
                              cfg.max_coef);
    SymbolElem q = gen_symbol(rng, cfg.m, cfg.n, rng.range(0, max_deg_sym), cfg.max_deg,
                              cfg.max_coef);
    SymbolElem s = gen_symbol(rng, cfg.m, cfg.n, rng.range(0, max_deg_sym), cfg.max_deg,
                              cfg.max_coef);
    ctx.inputs = [=] { return json{{"p", sym_str(p)}, {"q", sym_str(q)}, {"s", sym_str(s)}}; };

    ctx.require(symbol_mul(p, q) == symbol_mul(q, p), "mul-comm", "symbol product not commutative");
    ctx.require(symbol_mul(symbol_mul(p, q), s) == symbol_mul(p, symbol_mul(q, s)), "mul-assoc",
                "symbol product not associative");

    SymbolElem pq = symbol_bracket(p, q);
    SymbolElem qp = symbol_bracket(q, p);
    ctx.require((pq + qp).is_zero(), "bracket-antisym", "{p,q} + {q,p} != 0");

    SymbolElem j1 = symbol_bracket(p, symbol_bracket(q, s));
    SymbolElem j2 = symbol_bracket(q, symbol_bracket(s, p));
    SymbolElem j3 = symbol_bracket(s, symbol_bracket(p, q));
    ctx.require((j1 + j2 + j3).is_zero(), "bracket-jacobi", "Jacobi fails for symbol bracket");

    SymbolElem left = symbol_bracket(p, symbol_mul(q, s));
    SymbolElem right = symbol_mul(symbol_bracket(p, q), s) + symbol_mul(q, symbol_bracket(p, s));
    ctx.require(left == right, "leibniz", "{p, q s} != {p,q} s + q {p,s}");

    // sigma_pson is multiplicative when the order is additive
    GenConfig small = cfg;
    small.max_order = std::min(cfg.max_order, 2);
    DiffOp t = gen_diffop(rng, small, OpConstraint::Any);
    DiffOp d = gen_diffop(rng, small, OpConstraint::Any);
    DiffOp td = compose(t, d);
    if (!td.is_zero() && p_order(td) == p_order(t) + p_order(d)) {
      ctx.require(sigma_pson(td) == symbol_mul(sigma_pson(t), sigma_pson(d)), "homomorphism",
                  "sigma_pson(T o D) != sigma_pson(T) . sigma_pson(D) at additive order");
    }
  });
}

// ---------------------------------------------------------------------------
// exact-sequence: theta/delta exactness and the lift section
// ---------------------------------------------------------------------------

void suite_exact_sequence(Runner& r) {
  const GenConfig& cfg = r.cfg();
  int kmax = std::max(1, std::min(cfg.max_order, 3));
  r.run(cfg.trials, [&](Rng& rng, TrialCtx& ctx) {
    int k = rng.range(1, kmax);

    // ker(delta) = Im(theta): a class of an operator of differential order
    // k-1 has empty scalar part and embeds back through theta and lift
    GenConfig low = cfg;
    low.max_order = k - 1;
    DiffOp d_op = gen_diffop(rng, low, OpConstraint::Any);
    ctx.inputs = [=] { return json{{"k", k}, {"d", op_str(d_op)}}; };
    SymbolElem p = symbol_class(d_op, k);
    ctx.require(delta(p).is_zero(), "delta-kills-lower-order",
                "delta nonzero on a D^{k-1} class");
    SymbolElem embedded = theta(p);
    ctx.require(embedded == p, "theta-identity", "theta changes the class");
    if (!p.is_zero())
      ctx.require(sigma_pson(lift(p)) == p, "lift-section-theta",
                  "sigma_pson(lift(theta(T))) != theta(T)");

    // delta o theta = 0 on a random sl-only symbol
    SymbolElem sl_only = gen_symbol(rng, cfg.m, cfg.n, k, 0, cfg.max_coef);
    sl_only = SymbolElem::make(cfg.m, cfg.n, k, XiPoly(cfg.m), sl_only.sl_part());
    ctx.require(delta(theta(sl_only)).is_zero(), "delta-theta-zero", "delta o theta != 0");

    // delta surjective: any scalar xi-polynomial arises from a scalar operator
    XiPoly scalar(cfg.m);
    for (const auto& xi : multi_indices_exact(cfg.m, k))
      if (rng.chance(1, 2)) scalar.add_term(xi, gen_poly(rng, cfg.m, cfg.max_deg, cfg.max_coef));
    SymbolElem scalar_sym = SymbolElem::make(cfg.m, cfg.n, k, scalar, XiMat(cfg.m));
    DiffOp preimage = lift(scalar_sym);
    ctx.require(delta(symbol_class(preimage, k)) == scalar, "delta-surjective",
                "constructed preimage does not hit the scalar symbol");

    // sigma_pson o lift = id on nonzero symbols
    SymbolElem q = gen_symbol(rng, cfg.m, cfg.n, k, cfg.max_deg, cfg.max_coef);
    if (!q.is_zero())
      ctx.require(sigma_pson(lift(q)) == q, "lift-section", "sigma_pson(lift(q)) != q");

    // lift(sigma_pson(t)) matches t modulo P^{k-1}
    DiffOp t = gen_diffop(rng, cfg, OpConstraint::Any);
    int kt = p_order(t);
    DiffOp diff = t - lift(sigma_pson(t));
    if (kt == 0) {
      ctx.require(diff.is_zero(), "lift-mod-reconstruct", "order-0 lift must be exact");
    } else {
      ctx.require(is_in_Pk(diff, kt - 1), "lift-mod-reconstruct",
                  "t - lift(sigma_pson(t)) escapes P^{k-1}");
    }
  });
}

// ---------------------------------------------------------------------------
// gl-case: the order-(0,1) symbol algebra of gl(E)
// ---------------------------------------------------------------------------

SymbolElem embed_matrix(const MatPoly& a) {
  XiMat sl(a.num_vars());
  sl.add_term(MultiIndex(a.num_vars(), 0), a);
  return SymbolElem::make(a.num_vars(), a.n(), 1, XiPoly(a.num_vars()), std::move(sl));
}

SymbolElem embed_scalar(const Poly& u, int n) {
  XiPoly sc(u.num_vars());
  sc.add_term(MultiIndex(u.num_vars(), 0), u);
  return SymbolElem::make(u.num_vars(), n, 0, std::move(sc), XiMat(u.num_vars()));
}

void suite_gl_case(Runner& r) {
  const GenConfig& cfg = r.cfg();
  r.run(cfg.trials, [&](Rng& rng, TrialCtx& ctx) {
    MatPoly a0 = gen_matpoly(rng, cfg.n, cfg.m, cfg.max_deg, cfg.max_coef);
    MatPoly b0 = gen_matpoly(rng, cfg.n, cfg.m, cfg.max_deg, cfg.max_coef);
    Poly u = gen_poly(rng, cfg.m, cfg.max_deg, cfg.max_coef);
    Poly v = gen_poly(rng, cfg.m, cfg.max_deg, cfg.max_coef);
    ctx.inputs = [=] {
      return json{{"a", mat_str(a0)}, {"b", mat_str(b0)}, {"u", u.str()}, {"v", v.str()}};
    };

    GlSymbol ga(traceless_project(a0), u);
    GlSymbol gb(traceless_project(b0), v);

    GlSymbol prod = gl_mul(ga, gb);
    ctx.require(prod.sl_part == ga.sl_part.scale(v) + gb.sl_part.scale(u) &&
                    prod.scalar_part == u * v,
                "gl-mul-shape", "(A+u).(B+v) != vA + uB + uv");
    GlSymbol br = gl_bracket(ga, gb);
    ctx.require(br.sl_part == mat_comm(ga.sl_part, gb.sl_part) && br.scalar_part.is_zero(),
                "gl-bracket-shape", "{A+u, B+v} != [A,B]");
    ctx.require(mat_comm(ga.sl_part, gb.sl_part) == traceless_project(mat_comm(a0, b0)),
                "bracket-projection-free", "[A,B] != [A',B']");

    // consistency with the general symbol operations under the (0,1) embedding
    SymbolElem sa = embed_matrix(ga.sl_part);
    SymbolElem sb = embed_matrix(gb.sl_part);
    SymbolElem su = embed_scalar(u, cfg.n);
    SymbolElem sv = embed_scalar(v, cfg.n);

    ctx.require(symbol_mul(sa, sb).is_zero(), "sigma-mul-vanishes", "sigma(A).sigma(B) != 0");
    ctx.require(symbol_mul(su, sb) == embed_matrix(gb.sl_part.scale(u)), "sigma-mul-cross",
                "sigma(gamma_u).sigma(B) != class of u B'");
    ctx.require(symbol_mul(su, sv) == embed_scalar(u * v, cfg.n), "sigma-mul-scalar",
                "sigma(gamma_u).sigma(gamma_v) != gamma_{uv}");
    ctx.require(symbol_bracket(sa, sb) == embed_matrix(br.sl_part), "sigma-bracket",
                "{sigma(A), sigma(B)} != class of [A,B]");
    ctx.require(symbol_bracket(su, sv).is_zero(), "sigma-bracket-scalars",
                "{gamma_u, gamma_v} != 0");

    // operator-level anchors
    if (!is_scalar(ga.sl_part) && !ga.sl_part.is_zero()) {
      DiffOp op_a(cfg.m, cfg.n);
      op_a.add_term(MultiIndex(cfg.m, 0), ga.sl_part);
      ctx.require(sigma_pson(op_a) == sa, "sigma-pson-matrix",
                  "sigma_pson(A) != A' + P^0");
      DiffOp comp = compose(gamma(u, cfg.n), op_a);
      ctx.require(symbol_class(comp, 1) == symbol_mul(su, sa), "sigma-pson-product",
                  "class of gamma_u o A' != sigma(gamma_u).sigma(A)");
    }
  });
}

// ---------------------------------------------------------------------------
// splitting: the pair-level bracket against the operator commutator, metric
// trace-freeness, the section of the symbol map, and the non-metric trace
// obstruction
// ---------------------------------------------------------------------------

void suite_splitting(Runner& r) {
  const GenConfig& cfg = r.cfg();
  std::uint64_t conn_trials = std::max<std::uint64_t>(1, cfg.trials / 10);

  r.run(conn_trials, [&](Rng& rng, TrialCtx& ctx) {
    Connection c = gen_connection(rng, cfg.m, cfg.n, cfg.max_deg, cfg.max_coef, /*metric=*/true);
    json cj = connection_to_json(c);
    ctx.inputs = [cj] { return json{{"connection", cj}}; };

    for (int rep = 0; rep < 10; ++rep) {
      SplitPair p = gen_splitpair(rng, cfg.m, cfg.n, cfg.max_deg, cfg.max_coef);
      SplitPair q = gen_splitpair(rng, cfg.m, cfg.n, cfg.max_deg, cfg.max_coef);

      DiffOp top = section_map(p, c);
      DiffOp dop = section_map(q, c);
      SplitPair from_ops = lambda_decompose(commutator(top, dop), c);
      SplitPair starred = bracket_star(p, q, c);
      ctx.require(from_ops == starred, "bracket-star-oracle",
                  "bracket_star differs from the operator-level commutator");
      ctx.require(starred.A.trace().is_zero(), "bracket-traceless",
                  "metric bracket leaves sl(E)");

      // right inverse of the symbol map through the connection identification
      ctx.require(lambda_decompose(top, c) == p, "section-roundtrip",
                  "lambda_decompose(section_map(p)) != p");
      ctx.require(symbol_class(top + gamma(Poly::constant(cfg.m, Rational(1)), cfg.n), 1) ==
                      symbol_class(top, 1),
                  "section-class-stable", "adding P^0 changes the class");

      // the section is a Lie algebra homomorphism
      ctx.require(section_map(starred, c) == commutator(top, dop), "section-homomorphism",
                  "section_map(bracket) != [section_map, section_map]");

      MatPoly curv = curvature(c, p.X, q.X);
      ctx.require(curv.trace().is_zero(), "curvature-trace", "metric curvature has a trace");
    }

    // Jacobi for bracket_star under the metric connection
    SplitPair p = gen_splitpair(rng, cfg.m, cfg.n, cfg.max_deg, cfg.max_coef);
    SplitPair q = gen_splitpair(rng, cfg.m, cfg.n, cfg.max_deg, cfg.max_coef);
    SplitPair s = gen_splitpair(rng, cfg.m, cfg.n, cfg.max_deg, cfg.max_coef);
    SplitPair j1 = bracket_star(p, bracket_star(q, s, c), c);
    SplitPair j2 = bracket_star(q, bracket_star(s, p, c), c);
    SplitPair j3 = bracket_star(s, bracket_star(p, q, c), c);
    VectField xsum(cfg.m);
    for (int i = 0; i < cfg.m; ++i)
      xsum.components[i] = j1.X.components[i] + j2.X.components[i] + j3.X.components[i];
    ctx.require(xsum.is_zero() && (j1.A + j2.A + j3.A).is_zero(), "bracket-star-jacobi",
                "Jacobi fails for bracket_star");
  });

  // non-metric connections must exhibit the trace obstruction on trace-free
  // inputs; the O(n) reduction is what removes it
  if (cfg.m < 2) {
    r.finding("obstruction search skipped: needs at least two base coordinates");
    return;
  }
  r.run(1, [&](Rng& rng, TrialCtx& ctx) {
    bool found = false;
    for (int attempt = 0; attempt < 8 && !found; ++attempt) {
      std::vector<MatPoly> gams;
      for (int i = 0; i < cfg.m; ++i)
        gams.push_back(gen_matpoly(rng, cfg.n, cfg.m, cfg.max_deg, cfg.max_coef));
      if (cfg.m >= 2 && attempt == 0) {
        // deterministic witness: Gamma_1 = 0, Gamma_2 = x1 E11 has R(d1,d2) = E11
        gams[0] = MatPoly(cfg.n, cfg.m);
        gams[1] = MatPoly::unit(cfg.n, cfg.m, 1, 1).scale(Poly::variable(cfg.m, 1));
      }
      Connection c(cfg.m, cfg.n, gams);
      if (c.metric()) continue;
      for (int i = 0; i < cfg.m && !found; ++i) {
        for (int j = 0; j < cfg.m && !found; ++j) {
          if (i == j) continue;
          VectField x(cfg.m), y(cfg.m);
          x.components[i] = Poly::constant(cfg.m, Rational(1));
          y.components[j] = Poly::constant(cfg.m, Rational(1));
          SplitPair p{x, MatPoly(cfg.n, cfg.m)};
          SplitPair q{y, MatPoly(cfg.n, cfg.m)};
          MatPoly out = bracket_star(p, q, c).A;
          if (!out.trace().is_zero()) {
            found = true;
            r.finding("non-metric obstruction: bracket_star on trace-free inputs returned "
                      "trace " +
                      out.trace().str() + " for coordinate fields d" + std::to_string(i + 1) +
                      ", d" + std::to_string(j + 1));
          }
        }
      }
    }
    ctx.require(found, "obstruction-detected",
                "no non-metric connection produced a trace obstruction");
  });
}

// ---------------------------------------------------------------------------
// trace-decomposition: independence of the metric connection
// ---------------------------------------------------------------------------

void suite_trace_decomposition(Runner& r) {
  const GenConfig& cfg = r.cfg();
  std::uint64_t pair_trials = std::max<std::uint64_t>(1, cfg.trials / 20);
  r.run(pair_trials, [&](Rng& rng, TrialCtx& ctx) {
    Connection c1 = gen_connection(rng, cfg.m, cfg.n, cfg.max_deg, cfg.max_coef, true);
    Connection c2 = gen_connection(rng, cfg.m, cfg.n, cfg.max_deg, cfg.max_coef, true);
    json cj1 = connection_to_json(c1), cj2 = connection_to_json(c2);
    ctx.inputs = [cj1, cj2] { return json{{"c1", cj1}, {"c2", cj2}}; };

    GenConfig order1 = cfg;
    order1.max_order = 1;
    for (int rep = 0; rep < 5; ++rep) {
      DiffOp t = gen_diffop(rng, order1, OpConstraint::ScalarPrincipal);
      auto [adj1, s1] = trace_decompose(t, c1);
      auto [adj2, s2] = trace_decompose(t, c2);
      ctx.require(s1 == s2 && adj1 == adj2, "connection-independence",
                  "trace decomposition depends on the metric connection");
      ctx.require(adj1 + gamma(s1, cfg.n) == t, "reconstruction",
                  "adjusted part + scalar does not rebuild t");
      ctx.require(lambda_decompose(adj1, c1).A.trace().is_zero(), "adjusted-traceless",
                  "adjusted endomorphism part keeps a trace");
    }
  });
}

// ---------------------------------------------------------------------------
// nilpotency: decompositions, ad-nilpotency budgets, falsification witnesses
// ---------------------------------------------------------------------------

void suite_nilpotency(Runner& r) {
  const GenConfig& cfg = r.cfg();

  r.run(cfg.trials / 2, [&](Rng& rng, TrialCtx& ctx) {
    MatPoly tf = gen_traceless(rng, cfg.n, cfg.m, cfg.max_deg, cfg.max_coef);
    ctx.inputs = [=] { return json{{"a", mat_str(tf)}}; };
    auto parts = decompose_nilpotent(tf);
    MatPoly sum(cfg.n, cfg.m);
    for (const auto& [coef, mat] : parts) sum = sum + mat.scale(coef);
    ctx.require(sum == tf, "decompose-roundtrip", "nilpotent decomposition does not rebuild");
  });

  std::uint64_t small = std::max<std::uint64_t>(1, cfg.trials / 10);

  r.run(small, [&](Rng& rng, TrialCtx& ctx) {
    // constant strictly triangular nilpotent over the flat metric connection
    MatPoly a(cfg.n, cfg.m);
    bool upper = rng.chance(1, 2);
    for (int i = 0; i < cfg.n; ++i)
      for (int j = 0; j < cfg.n; ++j)
        if ((upper && i < j) || (!upper && i > j))
          a.set(i, j, Poly::constant(cfg.m, gen_rational(rng, cfg.max_coef)));
    ctx.inputs = [=] { return json{{"a", mat_str(a)}}; };
    std::vector<MatPoly> flat(cfg.m, MatPoly(cfg.n, cfg.m));
    Connection c(cfg.m, cfg.n, flat);
    std::vector<SplitPair> targets;
    for (int k = 0; k < 3; ++k)
      targets.push_back(gen_splitpair(rng, cfg.m, cfg.n, cfg.max_deg, cfg.max_coef));
    auto res = ad_nilpotency_check(a, targets, c, 2 * cfg.n - 1);
    ctx.require(res.has_value(), "ad-constant-budget",
                "constant nilpotent not annihilated within 2n-1 brackets");
  });

  r.run(small, [&](Rng& rng, TrialCtx& ctx) {
    // strictly upper-triangular polynomial nilpotent, generic connection
    MatPoly a(cfg.n, cfg.m);
    for (int i = 0; i < cfg.n; ++i)
      for (int j = i + 1; j < cfg.n; ++j) a.set(i, j, gen_poly(rng, cfg.m, cfg.max_deg, cfg.max_coef));
    ctx.inputs = [=] { return json{{"a", mat_str(a)}}; };
    Connection c = gen_connection(rng, cfg.m, cfg.n, cfg.max_deg, cfg.max_coef, true);
    std::vector<SplitPair> targets;
    for (int k = 0; k < 2; ++k)
      targets.push_back(gen_splitpair(rng, cfg.m, cfg.n, cfg.max_deg, cfg.max_coef));
    auto res = ad_nilpotency_check(a, targets, c, 8);
    ctx.require(res.has_value(), "ad-polynomial-budget",
                "polynomial strictly-triangular nilpotent exceeded r_max=8");
  });

  r.run(small, [&](Rng& rng, TrialCtx& ctx) {
    SplitPair t{gen_vectfield(rng, cfg.m, cfg.max_deg, cfg.max_coef, /*nonzero=*/true),
                gen_traceless(rng, cfg.n, cfg.m, cfg.max_deg, cfg.max_coef)};
    json tj = splitpair_to_json(t, cfg.n);
    ctx.inputs = [tj] { return json{{"t", tj}}; };
    auto witness = nil_falsification(t, 6);
    ctx.require(witness.has_value(), "falsification-witness",
                "no coordinate monomial produced nonzero iterates up to r_max=6");
    if (witness)
      ctx.require(!witness->last_iterate.is_zero(), "falsification-nonzero",
                  "reported iterate is zero");
  });
}

using SuiteFn = void (*)(Runner&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"poly-ring", suite_poly_ring},
      {"matalg", suite_matalg},
      {"operator-algebra", suite_operator_algebra},
      {"filtration", suite_filtration},
      {"quasi-distinguishing", suite_quasi_distinguishing},
      {"symbol-oracle", suite_symbol_oracle},
      {"poisson-laws", suite_poisson_laws},
      {"exact-sequence", suite_exact_sequence},
      {"gl-case", suite_gl_case},
      {"splitting", suite_splitting},
      {"trace-decomposition", suite_trace_decomposition},
      {"nilpotency", suite_nilpotency},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suite_table()) out.push_back(name);
    return out;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  for (const auto& [n, fn] : suite_table())
    if (n == name) return true;
  return false;
}

VerifyReport run_suite(const std::string& name, const GenConfig& cfg) {
  cfg.validate();
  for (const auto& [n, fn] : suite_table()) {
    if (n != name) continue;
    Runner runner(name, cfg);
    auto start = std::chrono::steady_clock::now();
    fn(runner);
    VerifyReport rep = runner.take();
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
  }
  throw std::invalid_argument("unknown suite: " + name);
}

std::vector<VerifyReport> run_all(const GenConfig& cfg) {
  std::vector<VerifyReport> out;
  for (const auto& name : suite_names()) out.push_back(run_suite(name, cfg));
  return out;
}

nlohmann::json VerifyReport::to_json() const {
  json jcfg;
  jcfg["seed"] = cfg.seed;
  jcfg["trials"] = cfg.trials;
  jcfg["m"] = cfg.m;
  jcfg["n"] = cfg.n;
  jcfg["max_order"] = cfg.max_order;
  jcfg["max_deg"] = cfg.max_deg;
  jcfg["max_coef"] = cfg.max_coef;

  json jfails = json::array();
  for (const auto& f : failures) {
    json jf;
    jf["trial"] = f.trial;
    jf["seed"] = f.seed;
    jf["check"] = f.check;
    jf["message"] = f.message;
    jf["expected"] = f.expected;
    jf["actual"] = f.actual;
    jf["rerun"] = f.rerun;
    jf["inputs"] = f.inputs;
    jfails.push_back(jf);
  }
  json j;
  j["suite"] = suite;
  j["config"] = jcfg;
  j["trials"] = trials;
  j["failures"] = jfails;
  j["findings"] = findings;
  j["passed"] = passed();
  return j;
}

std::string VerifyReport::text() const {
  std::ostringstream os;
  os << suite << ": " << (passed() ? "PASS" : "FAIL") << " (trials=" << trials
     << ", failures=" << failures.size() << ", " << wall_seconds << " s)\n";
  for (const auto& f : findings) os << "  finding: " << f << "\n";
  for (const auto& f : failures) {
    os << "  failure [" << f.check << "] trial " << f.trial << " seed " << f.seed << ": "
       << f.message << "\n";
    if (!f.expected.empty()) os << "    expected: " << f.expected << "\n";
    if (!f.actual.empty()) os << "    actual:   " << f.actual << "\n";
    os << "    rerun: " << f.rerun << "\n";
  }
  return os.str();
}

nlohmann::json reports_to_json(const std::vector<VerifyReport>& reports) {
  json arr = json::array();
  std::uint64_t total_failures = 0;
  for (const auto& r : reports) {
    arr.push_back(r.to_json());
    total_failures += r.failures.size();
  }
  json j;
  j["reports"] = arr;
  j["total_failures"] = total_failures;
  j["passed"] = total_failures == 0;
  return j;
}

}  // namespace qpsym

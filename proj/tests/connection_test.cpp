#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qpsym/connection.hpp"
#include "qpsym/gen.hpp"

using namespace qpsym;

namespace {

const int M = 2, N = 2;

Poly P(const std::string& s) { return Poly::parse(s, M); }

Connection flat() { return Connection(M, N, std::vector<MatPoly>(M, MatPoly(N, M))); }

VectField coord(int i) {
  VectField x(M);
  x.components[i - 1] = P("1");
  return x;
}

MatPoly rotation_J() {
  return MatPoly::unit(N, M, 1, 2) - MatPoly::unit(N, M, 2, 1);  // [[0,1],[-1,0]]
}

DiffOp matrix_op(const MatPoly& a) {
  DiffOp t(a.num_vars(), a.n());
  t.add_term(MultiIndex(a.num_vars(), 0), a);
  return t;
}

}  // namespace

TEST_CASE("vector field bracket") {
  VectField x = coord(1);
  VectField y(M);
  y.components[1] = P("x1");  // x1 d_2
  VectField br = vf_bracket(x, y);
  CHECK(br.components[0].is_zero());
  CHECK(br.components[1] == P("1"));
  CHECK(vf_bracket(y, y).is_zero());
}

TEST_CASE("nabla") {
  CHECK(nabla(flat(), coord(1)) == partial(MultiIndex{1, 0}, N));
  CHECK(nabla(flat(), VectField(M)).is_zero());

  Rng rng(trial_seed(61, 0));
  Connection c = gen_connection(rng, M, N, 2, 4, true);
  VectField x = gen_vectfield(rng, M, 2, 4, true);
  PrincipalSymbol ps = sigma_ppal(nabla(c, x));
  CHECK(ps.degree == 1);
  for (const auto& [xi, coeff] : ps.coeffs.terms()) {
    int i = 0;
    while (xi[i] == 0) ++i;
    CHECK(coeff == MatPoly::scalar(N, x.components[i]));
  }
  CHECK(is_in_Pk(nabla(c, x), 1));
}

TEST_CASE("lambda_decompose") {
  SplitPair p = lambda_decompose(partial(MultiIndex{1, 0}, N), flat());
  CHECK(p.X == coord(1));
  CHECK(p.A.is_zero());

  Rng rng(trial_seed(67, 1));
  Connection c = gen_connection(rng, M, N, 2, 4, true);
  Poly u = P("x1 x2 - 2");
  SplitPair g = lambda_decompose(gamma(u, N), c);
  CHECK(g.X.is_zero());
  CHECK(g.A == MatPoly::scalar(N, u));

  for (std::uint64_t t = 0; t < 50; ++t) {
    Rng r2(trial_seed(71, t));
    Connection cc = gen_connection(r2, M, N, 2, 4, r2.chance(1, 2));
    GenConfig cfg;
    cfg.max_order = 1;
    DiffOp op = gen_diffop(r2, cfg, OpConstraint::ScalarPrincipal);
    SplitPair sp = lambda_decompose(op, cc);
    DiffOp rebuilt = nabla(cc, sp.X);
    rebuilt.add_term(MultiIndex(M, 0), sp.A);
    CHECK(rebuilt == op);
  }

  DiffOp bad(M, N);
  bad.add_term(MultiIndex{1, 0}, MatPoly::unit(N, M, 1, 2));
  CHECK_THROWS_AS(lambda_decompose(bad, flat()), std::invalid_argument);
}

TEST_CASE("curvature") {
  CHECK(curvature(flat(), coord(1), coord(2)).is_zero());

  // Gamma_1 = 0, Gamma_2 = x1 J: R(d1, d2) = d1 Gamma_2 - d2 Gamma_1 + [G1, G2] = J
  std::vector<MatPoly> gams = {MatPoly(N, M), rotation_J().scale(P("x1"))};
  Connection c(M, N, gams);
  CHECK(c.metric());
  CHECK(curvature(c, coord(1), coord(2)) == rotation_J());

  // metric connections keep the curvature trace-free
  for (std::uint64_t t = 0; t < 30; ++t) {
    Rng rng(trial_seed(73, t));
    Connection cm = gen_connection(rng, M, N, 2, 4, true);
    VectField x = gen_vectfield(rng, M, 2, 4);
    VectField y = gen_vectfield(rng, M, 2, 4);
    MatPoly r = curvature(cm, x, y);
    CHECK(r.trace().is_zero());
    // and against the Christoffel-level formula for coordinate fields
    MatPoly direct = cm.gamma(1).deriv(1) - cm.gamma(0).deriv(2) +
                     mat_comm(cm.gamma(0), cm.gamma(1));
    CHECK(curvature(cm, coord(1), coord(2)) == direct);
  }
}

TEST_CASE("bracket_star equals the operator-level commutator") {
  for (std::uint64_t t = 0; t < 40; ++t) {
    Rng rng(trial_seed(79, t));
    bool metric = rng.chance(1, 2);
    Connection c = gen_connection(rng, M, N, 2, 4, metric);
    SplitPair p = gen_splitpair(rng, M, N, 2, 4);
    SplitPair q = gen_splitpair(rng, M, N, 2, 4);

    DiffOp tp = nabla(c, p.X);
    tp.add_term(MultiIndex(M, 0), p.A);
    DiffOp tq = nabla(c, q.X);
    tq.add_term(MultiIndex(M, 0), q.A);
    CHECK(bracket_star(p, q, c) == lambda_decompose(commutator(tp, tq), c));
  }

  // A = B = 0 reduces to ([X,Y], R(X,Y))
  Rng rng(trial_seed(83, 0));
  Connection c = gen_connection(rng, M, N, 2, 4, true);
  VectField x = gen_vectfield(rng, M, 2, 4), y = gen_vectfield(rng, M, 2, 4);
  SplitPair p{x, MatPoly(N, M)}, q{y, MatPoly(N, M)};
  SplitPair out = bracket_star(p, q, c);
  CHECK(out.X == vf_bracket(x, y));
  CHECK(out.A == curvature(c, x, y));

  // X = Y = 0 reduces to (0, [A,B])
  MatPoly a = gen_traceless(rng, N, M, 2, 4), b = gen_traceless(rng, N, M, 2, 4);
  SplitPair pa{VectField(M), a}, pb{VectField(M), b};
  SplitPair out2 = bracket_star(pa, pb, c);
  CHECK(out2.X.is_zero());
  CHECK(out2.A == mat_comm(a, b));
}

TEST_CASE("section_map") {
  Rng rng(trial_seed(89, 0));
  Connection c = gen_connection(rng, M, N, 2, 4, true);

  MatPoly a = gen_traceless(rng, N, M, 2, 4);
  CHECK(section_map(SplitPair{VectField(M), a}, c) == matrix_op(a));

  for (std::uint64_t t = 0; t < 40; ++t) {
    Rng r2(trial_seed(97, t));
    Connection cm = gen_connection(r2, M, N, 2, 4, true);
    SplitPair p = gen_splitpair(r2, M, N, 2, 4);
    SplitPair q = gen_splitpair(r2, M, N, 2, 4);
    DiffOp sp = section_map(p, cm);
    DiffOp sq = section_map(q, cm);
    // right inverse through the connection identification
    CHECK(lambda_decompose(sp, cm) == p);
    // Lie algebra homomorphism
    CHECK(section_map(bracket_star(p, q, cm), cm) == commutator(sp, sq));
  }

  // over the flat connection the class of section_map(p) reads off p directly
  for (std::uint64_t t = 0; t < 10; ++t) {
    Rng r3(trial_seed(113, t));
    SplitPair p = gen_splitpair(r3, M, N, 2, 4);
    DiffOp sp = section_map(p, flat());
    if (sp.is_zero()) continue;
    SymbolElem cls = sigma_pson(sp);
    XiPoly expect_scalar(M);
    for (int i = 0; i < M; ++i) {
      MultiIndex e(M, 0);
      e[i] = 1;
      expect_scalar.add_term(e, p.X.components[i]);
    }
    XiMat expect_sl(M);
    expect_sl.add_term(MultiIndex(M, 0), p.A);
    CHECK(cls == SymbolElem::make(M, N, 1, expect_scalar, expect_sl));
  }

  Connection nonmetric(M, N, {MatPoly::unit(N, M, 1, 1), MatPoly(N, M)});
  CHECK_FALSE(nonmetric.metric());
  CHECK_THROWS_AS(section_map(SplitPair{VectField(M), a}, nonmetric), std::invalid_argument);
  CHECK_THROWS_AS(section_map(SplitPair{VectField(M), MatPoly::identity(N, M)}, flat()),
                  std::invalid_argument);
}

TEST_CASE("trace_decompose") {
  Rng rng(trial_seed(101, 0));
  Connection c = gen_connection(rng, M, N, 2, 4, true);

  // nabla_X + diag(3,1) -> (nabla_X + diag(1,-1), 2)
  VectField x = gen_vectfield(rng, M, 2, 4, true);
  DiffOp t = nabla(c, x);
  MatPoly d31(N, M);
  d31.set(0, 0, P("3"));
  d31.set(1, 1, P("1"));
  t.add_term(MultiIndex(M, 0), d31);
  auto [adjusted, scalar] = trace_decompose(t, c);
  CHECK(scalar == P("2"));
  DiffOp expect = nabla(c, x);
  MatPoly d1m1(N, M);
  d1m1.set(0, 0, P("1"));
  d1m1.set(1, 1, P("-1"));
  expect.add_term(MultiIndex(M, 0), d1m1);
  CHECK(adjusted == expect);

  // pure scalar case
  Poly u = P("x2^2 - x1");
  auto [adj_g, s_g] = trace_decompose(gamma(u, N), c);
  CHECK(s_g == u);
  CHECK(adj_g.is_zero());

  // identical outputs across metric connections differing by a skew perturbation
  for (std::uint64_t tr = 0; tr < 25; ++tr) {
    Rng r2(trial_seed(103, tr));
    Connection c1 = gen_connection(r2, M, N, 2, 4, true);
    Connection c2 = gen_connection(r2, M, N, 2, 4, true);
    GenConfig cfg;
    cfg.max_order = 1;
    DiffOp op = gen_diffop(r2, cfg, OpConstraint::ScalarPrincipal);
    auto [a1, s1] = trace_decompose(op, c1);
    auto [a2, s2] = trace_decompose(op, c2);
    CHECK(s1 == s2);
    CHECK(a1 == a2);
  }

  Connection nonmetric(M, N, {MatPoly::unit(N, M, 1, 1), MatPoly(N, M)});
  CHECK_THROWS_AS(trace_decompose(gamma(u, N), nonmetric), std::invalid_argument);
}

TEST_CASE("ad_nilpotency_check") {
  // constant E12 over the flat metric connection: r <= 2n-1 = 3
  MatPoly e12 = MatPoly::unit(N, M, 1, 2);
  SplitPair target{coord(2), MatPoly::unit(N, M, 2, 1)};
  auto r = ad_nilpotency_check(e12, {target}, flat(), 2 * N - 1);
  REQUIRE(r.has_value());
  CHECK(*r <= 3);
  CHECK(*r == 3);  // [E12,E21] = H, [E12,H] = -2 E12, [E12,-2E12] = 0

  CHECK(ad_nilpotency_check(MatPoly(N, M), {target}, flat(), 1) == 1);

  // strictly upper-triangular polynomial entries, n = 3
  Rng rng(trial_seed(107, 0));
  MatPoly a(3, M);
  a.set(0, 1, P("x1"));
  a.set(0, 2, P("x2^2 - 1"));
  a.set(1, 2, P("x1 x2"));
  std::vector<SplitPair> targets;
  for (int k = 0; k < 3; ++k) targets.push_back(gen_splitpair(rng, M, 3, 2, 4));
  Connection c3 = gen_connection(rng, M, 3, 2, 4, true);
  auto r3 = ad_nilpotency_check(a, targets, c3, 8);
  REQUIRE(r3.has_value());
  CHECK(*r3 <= 8);

  CHECK_THROWS_AS(ad_nilpotency_check(MatPoly::identity(N, M), {target}, flat(), 3),
                  std::invalid_argument);
}

TEST_CASE("nil_falsification") {
  // T = (d_1, 0): iterated brackets keep differentiating the monomial
  SplitPair t1{coord(1), MatPoly(N, M)};
  auto w1 = nil_falsification(t1, 6);
  REQUIRE(w1.has_value());
  CHECK(w1->iterations == 6);
  CHECK_FALSE(w1->last_iterate.is_zero());

  // T = (x1 d_2, 0)
  VectField x(M);
  x.components[1] = P("x1");
  auto w2 = nil_falsification(SplitPair{x, MatPoly(N, M)}, 6);
  REQUIRE(w2.has_value());
  CHECK_FALSE(w2->last_iterate.is_zero());

  // precondition: the vector-field part must not vanish
  CHECK_THROWS_AS(nil_falsification(SplitPair{VectField(M), MatPoly::unit(N, M, 1, 2)}, 6),
                  std::invalid_argument);

  for (std::uint64_t tr = 0; tr < 20; ++tr) {
    Rng rng(trial_seed(109, tr));
    SplitPair t{gen_vectfield(rng, M, 2, 4, true), gen_traceless(rng, N, M, 2, 4)};
    auto w = nil_falsification(t, 6);
    REQUIRE(w.has_value());
    CHECK_FALSE(w->last_iterate.is_zero());
  }
}

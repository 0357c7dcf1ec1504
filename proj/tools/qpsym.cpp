// qpsym: exact symbol calculus for matrix-coefficient differential operators.
// Subcommands operate on the JSON file formats described in the README.

#include <CLI11.hpp>
#include <iostream>

#include "qpsym/io.hpp"
#include "qpsym/verify.hpp"

namespace {

using qpsym::json;

void emit(const json& j, const std::string& out_path) {
  std::string text = qpsym::dump_json(j);
  if (out_path.empty())
    std::cout << text;
  else
    qpsym::write_file(out_path, text);
}

struct VerifyArgs {
  std::string suite;
  qpsym::GenConfig cfg;
  std::string json_path;
};

int run_verify(const VerifyArgs& args) {
  std::vector<qpsym::VerifyReport> reports;
  if (args.suite == "all") {
    reports = qpsym::run_all(args.cfg);
  } else {
    reports.push_back(qpsym::run_suite(args.suite, args.cfg));
  }
  bool ok = true;
  for (const auto& r : reports) {
    std::cout << r.text();
    ok = ok && r.passed();
  }
  if (!args.json_path.empty())
    qpsym::write_file(args.json_path, qpsym::dump_json(qpsym::reports_to_json(reports)));
  std::cout << (ok ? "verification passed" : "verification FAILED") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact calculus for matrix-coefficient differential operators and their symbols"};
  app.require_subcommand(1);

  std::string f1, f2, out, kind = "pson", xfile, yfile;
  VerifyArgs vargs;
  int exit_code = 0;

  // ---- op ----
  auto* op = app.add_subcommand("op", "operator algebra");
  op->require_subcommand(1);

  auto* op_order = op->add_subcommand("order", "print d-order and p-order of an operator");
  op_order->add_option("file", f1, "operator JSON file")->required();
  op_order->callback([&] {
    qpsym::DiffOp t = qpsym::diffop_from_json(qpsym::load_json(f1));
    int d = qpsym::d_order(t);
    int p = qpsym::p_order(t);
    std::cout << "d_order " << d << "\n"
              << "p_order " << p << "\n";
  });

  auto* op_apply = op->add_subcommand("apply", "apply an operator to a section");
  op_apply->add_option("op", f1, "operator JSON file")->required();
  op_apply->add_option("section", f2, "section JSON file")->required();
  op_apply->add_option("-o,--out", out, "write result here instead of stdout");
  op_apply->callback([&] {
    qpsym::DiffOp t = qpsym::diffop_from_json(qpsym::load_json(f1));
    qpsym::Section s = qpsym::section_from_json(qpsym::load_json(f2));
    emit(qpsym::section_to_json(qpsym::apply(t, s)), out);
  });

  auto* op_compose = op->add_subcommand("compose", "compose two operators");
  op_compose->add_option("f1", f1)->required();
  op_compose->add_option("f2", f2)->required();
  op_compose->add_option("-o,--out", out);
  op_compose->callback([&] {
    auto a = qpsym::diffop_from_json(qpsym::load_json(f1));
    auto b = qpsym::diffop_from_json(qpsym::load_json(f2));
    emit(qpsym::diffop_to_json(qpsym::compose(a, b)), out);
  });

  auto* op_bracket = op->add_subcommand("bracket", "commutator of two operators");
  op_bracket->add_option("f1", f1)->required();
  op_bracket->add_option("f2", f2)->required();
  op_bracket->add_option("-o,--out", out);
  op_bracket->callback([&] {
    auto a = qpsym::diffop_from_json(qpsym::load_json(f1));
    auto b = qpsym::diffop_from_json(qpsym::load_json(f2));
    emit(qpsym::diffop_to_json(qpsym::commutator(a, b)), out);
  });

  // ---- sym ----
  auto* sym = app.add_subcommand("sym", "symbol calculus");
  sym->require_subcommand(1);

  auto* sym_of = sym->add_subcommand("of", "symbol of an operator");
  sym_of->add_option("op", f1, "operator JSON file")->required();
  sym_of->add_option("--kind", kind, "pson or ppal")->check(CLI::IsMember({"pson", "ppal"}));
  sym_of->add_option("-o,--out", out);
  sym_of->callback([&] {
    auto t = qpsym::diffop_from_json(qpsym::load_json(f1));
    if (kind == "ppal") {
      emit(qpsym::principal_to_json(qpsym::sigma_ppal(t), t.n()), out);
    } else {
      emit(qpsym::symbol_to_json(qpsym::sigma_pson(t)), out);
    }
  });

  auto* sym_mul = sym->add_subcommand("mul", "graded symbol product");
  sym_mul->add_option("s1", f1)->required();
  sym_mul->add_option("s2", f2)->required();
  sym_mul->add_option("-o,--out", out);
  sym_mul->callback([&] {
    auto a = qpsym::symbol_from_json(qpsym::load_json(f1));
    auto b = qpsym::symbol_from_json(qpsym::load_json(f2));
    emit(qpsym::symbol_to_json(qpsym::symbol_mul(a, b)), out);
  });

  auto* sym_bracket = sym->add_subcommand("bracket", "graded Poisson bracket");
  sym_bracket->add_option("s1", f1)->required();
  sym_bracket->add_option("s2", f2)->required();
  sym_bracket->add_option("-o,--out", out);
  sym_bracket->callback([&] {
    auto a = qpsym::symbol_from_json(qpsym::load_json(f1));
    auto b = qpsym::symbol_from_json(qpsym::load_json(f2));
    emit(qpsym::symbol_to_json(qpsym::symbol_bracket(a, b)), out);
  });

  auto* sym_lift = sym->add_subcommand("lift", "canonical operator representative of a symbol");
  sym_lift->add_option("s", f1)->required();
  sym_lift->add_option("-o,--out", out);
  sym_lift->callback([&] {
    auto a = qpsym::symbol_from_json(qpsym::load_json(f1));
    emit(qpsym::diffop_to_json(qpsym::lift(a)), out);
  });

  // ---- conn ----
  auto* conn = app.add_subcommand("conn", "connections and the order-1 splitting");
  conn->require_subcommand(1);

  auto* conn_curv = conn->add_subcommand("curvature", "R(X,Y) as a matrix");
  conn_curv->add_option("conn", f1, "connection JSON file")->required();
  conn_curv->add_option("--x", xfile, "vector field JSON file")->required();
  conn_curv->add_option("--y", yfile, "vector field JSON file")->required();
  conn_curv->add_option("-o,--out", out);
  conn_curv->callback([&] {
    auto c = qpsym::connection_from_json(qpsym::load_json(f1));
    auto x = qpsym::vectfield_from_json(qpsym::load_json(xfile));
    auto y = qpsym::vectfield_from_json(qpsym::load_json(yfile));
    emit(qpsym::matpoly_to_json(qpsym::curvature(c, x, y)), out);
  });

  auto* conn_section = conn->add_subcommand("section", "operator realizing a (X, A) pair");
  conn_section->add_option("conn", f1)->required();
  conn_section->add_option("pair", f2, "pair JSON file")->required();
  conn_section->add_option("-o,--out", out);
  conn_section->callback([&] {
    auto c = qpsym::connection_from_json(qpsym::load_json(f1));
    auto p = qpsym::splitpair_from_json(qpsym::load_json(f2));
    emit(qpsym::diffop_to_json(qpsym::section_map(p, c)), out);
  });

  auto* conn_td = conn->add_subcommand("trace-decompose",
                                       "split an order-1 operator into a trace-free part and a scalar");
  conn_td->add_option("conn", f1)->required();
  conn_td->add_option("op", f2)->required();
  conn_td->add_option("-o,--out", out);
  conn_td->callback([&] {
    auto c = qpsym::connection_from_json(qpsym::load_json(f1));
    auto t = qpsym::diffop_from_json(qpsym::load_json(f2));
    auto [adjusted, scalar] = qpsym::trace_decompose(t, c);
    json j;
    j["adjusted"] = qpsym::diffop_to_json(adjusted);
    j["scalar"] = scalar.str();
    emit(j, out);
  });

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "run a verification suite (or 'all')");
  verify->add_option("suite", vargs.suite, "suite name or 'all'")->required();
  verify->add_option("--seed", vargs.cfg.seed, "base seed");
  verify->add_option("--trials", vargs.cfg.trials, "trial count");
  verify->add_option("--m", vargs.cfg.m, "base dimension");
  verify->add_option("--n", vargs.cfg.n, "fiber rank");
  verify->add_option("--max-order", vargs.cfg.max_order, "operator order bound");
  verify->add_option("--max-deg", vargs.cfg.max_deg, "coefficient degree bound");
  verify->add_option("--max-coef", vargs.cfg.max_coef, "rational magnitude bound");
  verify->add_option("--json", vargs.json_path, "write the machine-readable report here");
  verify->add_option("--only-trial", vargs.cfg.only_trial, "run a single trial index");
  verify->callback([&] {
    if (vargs.suite != "all" && !qpsym::is_suite(vargs.suite)) {
      std::string known = "all";
      for (const auto& s : qpsym::suite_names()) known += ", " + s;
      throw std::invalid_argument("unknown suite '" + vargs.suite + "' (known: " + known + ")");
    }
    exit_code = run_verify(vargs);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

#include "qpsym/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qpsym {

namespace {

int get_int(const json& j, const char* key, int lo) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw std::invalid_argument(std::string("missing integer field '") + key + "'");
  int v = j[key].get<int>();
  if (v < lo) throw std::invalid_argument(std::string("field '") + key + "' out of range");
  return v;
}

MultiIndex index_from_json(const json& j, int m) {
  if (!j.is_array() || static_cast<int>(j.size()) != m)
    throw std::invalid_argument("multi-index must be an array of length m");
  MultiIndex a(m);
  for (int i = 0; i < m; ++i) {
    if (!j[i].is_number_integer() || j[i].get<int>() < 0)
      throw std::invalid_argument("multi-index entries must be non-negative integers");
    a[i] = j[i].get<int>();
  }
  return a;
}

}  // namespace

json matpoly_to_json(const MatPoly& a) {
  json rows = json::array();
  for (int i = 0; i < a.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.n(); ++j) row.push_back(a.at(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

MatPoly matpoly_from_json(const json& j, int n, int num_vars) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw std::invalid_argument("matrix: expected an array of n rows");
  MatPoly a(n, num_vars);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != n)
      throw std::invalid_argument("matrix: expected n entries per row");
    for (int c = 0; c < n; ++c) {
      if (!j[i][c].is_string()) throw std::invalid_argument("matrix: entries must be polynomial strings");
      a.set(i, c, Poly::parse(j[i][c].get<std::string>(), num_vars));
    }
  }
  return a;
}

json diffop_to_json(const DiffOp& t) {
  json terms = json::array();
  const auto& map = t.terms();
  for (auto it = map.rbegin(); it != map.rend(); ++it) {  // ascending graded-lex
    json term;
    term["alpha"] = it->first;
    term["coeff"] = matpoly_to_json(it->second);
    terms.push_back(term);
  }
  json j;
  j["m"] = t.m();
  j["n"] = t.n();
  j["terms"] = terms;
  return j;
}

DiffOp diffop_from_json(const json& j) {
  int m = get_int(j, "m", 1);
  int n = get_int(j, "n", 2);
  DiffOp t(m, n);
  if (!j.contains("terms") || !j["terms"].is_array())
    throw std::invalid_argument("operator: missing 'terms' array");
  for (const auto& term : j["terms"]) {
    MultiIndex alpha = index_from_json(term.at("alpha"), m);
    t.add_term(alpha, matpoly_from_json(term.at("coeff"), n, m));
  }
  return t;
}

json section_to_json(const Section& s) {
  json comps = json::array();
  for (const auto& c : s.components) comps.push_back(c.str());
  json j;
  j["m"] = s.m;
  j["n"] = s.n;
  j["components"] = comps;
  return j;
}

Section section_from_json(const json& j) {
  int m = get_int(j, "m", 1);
  int n = get_int(j, "n", 2);
  Section s(m, n);
  const auto& comps = j.at("components");
  if (!comps.is_array() || static_cast<int>(comps.size()) != n)
    throw std::invalid_argument("section: expected n polynomial strings");
  for (int i = 0; i < n; ++i) s.components[i] = Poly::parse(comps[i].get<std::string>(), m);
  return s;
}

json vectfield_to_json(const VectField& x) {
  json comps = json::array();
  for (const auto& c : x.components) comps.push_back(c.str());
  json j;
  j["m"] = x.m;
  j["components"] = comps;
  return j;
}

VectField vectfield_from_json(const json& j) {
  int m = get_int(j, "m", 1);
  VectField x(m);
  const auto& comps = j.at("components");
  if (!comps.is_array() || static_cast<int>(comps.size()) != m)
    throw std::invalid_argument("vector field: expected m polynomial strings");
  for (int i = 0; i < m; ++i) x.components[i] = Poly::parse(comps[i].get<std::string>(), m);
  return x;
}

json connection_to_json(const Connection& c) {
  json mats = json::array();
  for (int i = 0; i < c.m(); ++i) mats.push_back(matpoly_to_json(c.gamma(i)));
  json j;
  j["m"] = c.m();
  j["n"] = c.n();
  j["gamma"] = mats;
  return j;
}

Connection connection_from_json(const json& j) {
  int m = get_int(j, "m", 1);
  int n = get_int(j, "n", 2);
  const auto& mats = j.at("gamma");
  if (!mats.is_array() || static_cast<int>(mats.size()) != m)
    throw std::invalid_argument("connection: expected m Christoffel matrices");
  std::vector<MatPoly> gamma;
  gamma.reserve(m);
  for (int i = 0; i < m; ++i) gamma.push_back(matpoly_from_json(mats[i], n, m));
  return Connection(m, n, std::move(gamma));
}

json symbol_to_json(const SymbolElem& p) {
  json scalar = json::array();
  const auto& sc = p.scalar_part().terms();
  for (auto it = sc.rbegin(); it != sc.rend(); ++it) {
    json e;
    e["xi"] = it->first;
    e["poly"] = it->second.str();
    scalar.push_back(e);
  }
  json sl = json::array();
  const auto& sm = p.sl_part().terms();
  for (auto it = sm.rbegin(); it != sm.rend(); ++it) {
    json e;
    e["xi"] = it->first;
    e["coeff"] = matpoly_to_json(it->second);
    sl.push_back(e);
  }
  json j;
  j["m"] = p.m();
  j["n"] = p.n();
  j["degree"] = p.degree();
  j["scalar"] = scalar;
  j["sl"] = sl;
  return j;
}

SymbolElem symbol_from_json(const json& j) {
  int m = get_int(j, "m", 1);
  int n = get_int(j, "n", 2);
  int degree = get_int(j, "degree", 0);
  XiPoly scalar(m);
  for (const auto& e : j.at("scalar")) {
    MultiIndex xi = index_from_json(e.at("xi"), m);
    scalar.add_term(xi, Poly::parse(e.at("poly").get<std::string>(), m));
  }
  XiMat sl(m);
  for (const auto& e : j.at("sl")) {
    MultiIndex xi = index_from_json(e.at("xi"), m);
    sl.add_term(xi, matpoly_from_json(e.at("coeff"), n, m));
  }
  return SymbolElem::make(m, n, degree, std::move(scalar), std::move(sl));
}

json principal_to_json(const PrincipalSymbol& p, int n) {
  json terms = json::array();
  const auto& map = p.coeffs.terms();
  for (auto it = map.rbegin(); it != map.rend(); ++it) {
    json e;
    e["xi"] = it->first;
    e["coeff"] = matpoly_to_json(it->second);
    terms.push_back(e);
  }
  json j;
  j["m"] = p.coeffs.m();
  j["n"] = n;
  j["degree"] = p.degree;
  j["terms"] = terms;
  return j;
}

json splitpair_to_json(const SplitPair& p, int n) {
  json x = json::array();
  for (const auto& c : p.X.components) x.push_back(c.str());
  json j;
  j["m"] = p.X.m;
  j["n"] = n;
  j["x"] = x;
  j["a"] = matpoly_to_json(p.A);
  return j;
}

SplitPair splitpair_from_json(const json& j) {
  int m = get_int(j, "m", 1);
  int n = get_int(j, "n", 2);
  VectField x(m);
  const auto& comps = j.at("x");
  if (!comps.is_array() || static_cast<int>(comps.size()) != m)
    throw std::invalid_argument("pair: expected m polynomial strings under 'x'");
  for (int i = 0; i < m; ++i) x.components[i] = Poly::parse(comps[i].get<std::string>(), m);
  MatPoly a = matpoly_from_json(j.at("a"), n, m);
  return SplitPair{std::move(x), std::move(a)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
}

json load_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("invalid JSON in " + path + ": " + e.what());
  }
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace qpsym

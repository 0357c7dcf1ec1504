#ifndef QPSYM_IO_HPP
#define QPSYM_IO_HPP

#include <json.hpp>
#include <string>

#include "qpsym/connection.hpp"

namespace qpsym {

using json = nlohmann::json;

// JSON codecs for the on-disk formats. Serialization is canonical: terms in
// ascending graded-lex order, polynomials rendered in canonical text form, so
// reading a written file and writing it again is byte-identical.

json matpoly_to_json(const MatPoly& a);
MatPoly matpoly_from_json(const json& j, int n, int num_vars);

json diffop_to_json(const DiffOp& t);
DiffOp diffop_from_json(const json& j);

json section_to_json(const Section& s);
Section section_from_json(const json& j);

json vectfield_to_json(const VectField& x);
VectField vectfield_from_json(const json& j);

json connection_to_json(const Connection& c);
Connection connection_from_json(const json& j);

json symbol_to_json(const SymbolElem& p);
SymbolElem symbol_from_json(const json& j);

json principal_to_json(const PrincipalSymbol& p, int n);

json splitpair_to_json(const SplitPair& p, int n);
SplitPair splitpair_from_json(const json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
json load_json(const std::string& path);
std::string dump_json(const json& j);  // canonical rendering with trailing newline

}  // namespace qpsym

#endif

#pragma once

#include "weylforge/cyclic.hpp"
#include "weylforge/forms.hpp"
#include "weylforge/genus.hpp"
#include "weylforge/liecoh.hpp"
#include "weylforge/weyl.hpp"

#include <json.hpp>

#include <initializer_list>
#include <string>

namespace wf {

using Json = nlohmann::json;

// Parse errors and schema violations raise MalformedInput with a position or JSON path.
Json parse_json(const std::string& text);
std::string dump_json(const Json& j);
void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where);
const Json& field(const Json& j, const char* key, const std::string& where);
int int_field(const Json& j, const char* key, const std::string& where);

Json to_json(const Rational& q);
Rational rational_from(const Json& j, const std::string& where);
Json to_json(const RVec& v);
RVec rvec_from(const Json& j, const std::string& where);
Json to_json(const RMat& m);
RMat rmat_from(const Json& j, const std::string& where);

Json to_json(const HUSeries& s);
HUSeries series_from(const Json& j, const std::string& where = "series");

Json to_json(const WeylElement& a);
Json to_json(const MatWeyl& m);
MatWeyl matweyl_from(const Json& j, const std::string& where = "weyl");
WeylElement weyl_from(const Json& j, const std::string& where = "weyl");

Json to_json(const ModuleElement& m);
ModuleElement module_element_from(const Json& j, const std::string& where = "module");

Json to_json(const FormalForm& a);
Json to_json(const PolyVec& v);
FormalForm form_from(const Json& j, const std::string& where = "form");
PolyVec polyvec_from(const Json& j, const std::string& where = "polyvec");

Json to_json(const LieAlgebra& g);
LieAlgebra lie_from(const Json& j, const std::string& where = "algebra");
Json to_json(const Cochain& c);
Cochain cochain_from(const Json& j, const std::string& where = "cochain");

Json to_json(const FinAlgebra& A);
FinAlgebra finalg_from(const Json& j, const std::string& where = "algebra");
Json to_json(const ChainTensor& c);
ChainTensor chain_from(const Json& j, const std::string& where = "chain");

Json to_json(const ChernClassExpr& c);
ChernClassExpr chern_from(const Json& j, const std::string& where = "classes");

}  // namespace wf

#pragma once

#include <string>

#include <json.hpp>

#include "latkit/classify.hpp"

namespace latkit {

using Json = nlohmann::ordered_json;

// integers beyond 2^53 - 1 in absolute value are written as decimal strings
Json int_to_json(const Int& x);
Int int_from_json(const Json& j, const std::string& path);
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j, const std::string& path);
Json invariants_to_json(const AbelianInvariants& a);
AbelianInvariants invariants_from_json(const Json& j, const std::string& path);

// group-spec documents: explicit factors and subgroup, or {"group": name, "param": n}
LatticeSpec spec_from_json(const Json& j);
Json spec_to_json(const LatticeSpec& s);

Json resolution_to_json(const PositiveResolution& r);
// the group is rebuilt as the Weyl group of the block
PositiveResolution resolution_from_json(const Json& j, const IntermediateLattice& block, std::size_t cap,
                                        const std::string& path);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j, const ClassifyOptions& opt = {}, const std::string& path = "");

Json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j, const ClassifyOptions& opt = {});

// parses text, reporting the line of a syntax error
Json parse_document(const std::string& text);

}  // namespace latkit

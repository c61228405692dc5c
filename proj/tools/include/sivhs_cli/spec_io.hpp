#pragma once

#include <string>

#include <json.hpp>

#include "sivhs/dgbv.hpp"
#include "sivhs/linalg.hpp"
#include "sivhs/vhs.hpp"

namespace sivhs::cli {

using Json = nlohmann::json;

// Rationals always serialize as "num/den".
Json rational(const Scalar& s);
Scalar parse_rational(const Json& j, const std::string& where);

// Algebra spec document to algebra without validation.
DgbvAlgebra algebra_from_json(const Json& doc, const std::string& origin);
Json algebra_to_json(const DgbvAlgebra& alg);

// Reads, builds and validates; ParseError with location, ValidationError embedding the axiom report.
DgbvAlgebra parse_spec(const std::string& path);
DgbvAlgebra parse_spec_text(const std::string& text, const std::string& origin);
std::string dump(const Json& j);

// {"n": k, "g": [["num/den", ...], ...]}
Matrix parse_metric(const std::string& path);
Json metric_to_json(const Matrix& g);

// {"spans": [{"r": "num/den", "vectors": [{class: "num/den"}]}]} applied over the default opposite filtration.
OppositeFiltration parse_filtration(const std::string& path, const VhsFrame& frame);

} // namespace sivhs::cli

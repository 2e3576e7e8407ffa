#pragma once

#include "freespec/dilation.hpp"
#include "freespec/extreme.hpp"
#include "freespec/oracles.hpp"
#include "freespec/pencil.hpp"

#include <json.hpp>

#include <string>

namespace freespec::json_io {

using Json = nlohmann::json;

/// Rows of entries; each entry is [re] for the real field and [re, im]
/// otherwise. Plain numbers and [re] are accepted on input.
Json matrix_to_json(const CMatrix& m, Field f);
CMatrix matrix_from_json(const Json& j);

/// {"g", "n", "field", "matrices"}. Throws InvalidTuple on malformed payloads.
Json tuple_to_json(const MatrixTuple& x);
MatrixTuple tuple_from_json(const Json& j);

/// {"A": tuple}. A bare tuple is also accepted on input.
Json pencil_to_json(const LinearPencil& a);
LinearPencil pencil_from_json(const Json& j);

Json verdict_to_json(const MembershipVerdict& v);
Json report_to_json(const ExtremeReport& r);
Json decomposition_to_json(const Decomposition& d);
Json combination_to_json(const MatrixConvexCombination& c);
Json search_report_to_json(const oracles::SearchReport& r, Field f);

/// Compact single-line dump with shortest round-trip doubles.
std::string dump(const Json& j);

}  // namespace freespec::json_io

#pragma once

#include <iosfwd>
#include <memory>

#include <json.hpp>

#include "pgblock/blocking.hpp"
#include "pgblock/constructions.hpp"
#include "pgblock/search.hpp"

namespace pgblock {

using Json = nlohmann::json;

Json field_to_json(const FieldSpec& field);
/// The field of order q, optionally pinned by {"p", "e", "modulus"}.
FieldSpec field_from_json(int q, const Json* field);

Json row_to_json(std::span<const Element> row);
Json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const GeometryContext& ctx, const Json& rows);

/// {"q", "n", "k", "field", "points": [[...]], "hyperplanes": [[...]]}.
Json blocking_set_to_json(const BlockingSet& b);

/// Parses the blocking-set document. Coordinates that are not normalized
/// are rescaled, with a note on `warnings` when it is non-null. Throws
/// InvalidInput on malformed documents.
BlockingSet blocking_set_from_json(const Json& doc, std::ostream* warnings = nullptr);

/// Element-id set rendered as a blocking-set document without the header.
Json element_set_to_json(const GeometryContext& ctx, std::span<const std::size_t> elements);

/// {"carrier", "axis", "point_spaces", "hyperplane_spaces"}, subspaces as basis rows.
Json construction1_params_to_json(const Construction1Params& p);
Construction1Params construction1_params_from_json(const GeometryContext& ctx, const Json& doc);

Json bound_report_to_json(const BoundReport& r);

/// Big integers are written as decimal strings. With include_timing false
/// the report is a pure function of its inputs.
Json search_report_to_json(const SearchReport& r, bool include_timing = true);
Json verdict_to_json(const ClassificationVerdict& v, bool include_timing = true);

}  // namespace pgblock

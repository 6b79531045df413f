#include "pgblock/json_io.hpp"

#include <algorithm>
#include <ostream>

namespace pgblock {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::InvalidInput, msg); }

int get_int(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) bad(std::string("missing field \"") + key + "\"");
  const Json& v = doc.at(key);
  if (!v.is_number_integer()) bad(std::string("field \"") + key + "\" must be an integer");
  const auto x = v.get<long long>();
  if (x < -1'000'000 || x > 1'000'000) bad(std::string("field \"") + key + "\" out of range");
  return static_cast<int>(x);
}

Row row_from_json(const GeometryContext& ctx, const Json& j) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(ctx.width())) {
    bad("coordinate vectors must have n+1 = " + std::to_string(ctx.width()) + " entries");
  }
  Row r;
  r.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number_integer()) bad("coordinates must be integers");
    const auto v = x.get<long long>();
    if (v < 0 || v >= ctx.q()) bad("coordinate " + std::to_string(v) + " is not a field element");
    r.push_back(static_cast<Element>(v));
  }
  return r;
}

/// Normalizes and indexes a list of coordinate rows.
std::vector<std::size_t> indices_from_json(const GeometryContext& ctx, const Json& list,
                                           const char* what, std::ostream* warnings) {
  if (!list.is_array()) bad(std::string("\"") + what + "\" must be an array");
  std::vector<std::size_t> out;
  out.reserve(list.size());
  for (const auto& j : list) {
    Row r = row_from_json(ctx, j);
    if (std::all_of(r.begin(), r.end(), [](Element e) { return e == 0; })) {
      bad(std::string("zero vector in \"") + what + "\"");
    }
    if (normalize(ctx.field(), r) && warnings) {
      *warnings << "warning: rescaled " << j.dump() << " in \"" << what << "\" to "
                << row_to_json(r).dump() << "\n";
    }
    out.push_back(ctx.point_index(r));
  }
  return out;
}

Json element_sets_to_json(const std::vector<ElementSet>& sets) {
  Json out = Json::array();
  for (const auto& s : sets) out.push_back(s);
  return out;
}

}  // namespace

Json field_to_json(const FieldSpec& field) {
  return Json{{"p", field.p()}, {"e", field.e()}, {"modulus", field.modulus()}};
}

FieldSpec field_from_json(int q, const Json* field) {
  if (!field) return FieldSpec::of_order(q);
  const int p = get_int(*field, "p");
  const int e = get_int(*field, "e");
  std::optional<std::vector<int>> modulus;
  if (field->contains("modulus")) {
    const Json& m = field->at("modulus");
    if (!m.is_array()) bad("\"modulus\" must be an array");
    std::vector<int> coeffs;
    for (const auto& c : m) {
      if (!c.is_number_integer()) bad("modulus coefficients must be integers");
      coeffs.push_back(c.get<int>());
    }
    modulus = std::move(coeffs);
  }
  FieldSpec f = FieldSpec::create(p, e, modulus);
  if (f.q() != q) bad("field order p^e does not match q");
  return f;
}

Json row_to_json(std::span<const Element> row) {
  Json out = Json::array();
  for (Element e : row) out.push_back(e);
  return out;
}

Json subspace_to_json(const Subspace& s) {
  Json out = Json::array();
  for (const auto& r : s.basis()) out.push_back(row_to_json(r));
  return out;
}

Subspace subspace_from_json(const GeometryContext& ctx, const Json& rows) {
  if (!rows.is_array()) bad("a subspace is given as an array of basis rows");
  std::vector<Row> out;
  for (const auto& r : rows) out.push_back(row_from_json(ctx, r));
  return Subspace::from_rows(ctx, std::move(out));
}

Json element_set_to_json(const GeometryContext& ctx, std::span<const std::size_t> elements) {
  Json points = Json::array();
  Json hyperplanes = Json::array();
  for (std::size_t e : elements) {
    if (e < ctx.num_points()) {
      points.push_back(row_to_json(ctx.point_coords(e)));
    } else {
      hyperplanes.push_back(row_to_json(ctx.point_coords(e - ctx.num_points())));
    }
  }
  return Json{{"points", points}, {"hyperplanes", hyperplanes}};
}

Json blocking_set_to_json(const BlockingSet& b) {
  const GeometryContext& ctx = b.ctx();
  Json doc = element_set_to_json(ctx, b.elements());
  doc["q"] = ctx.q();
  doc["n"] = ctx.n();
  doc["k"] = b.k();
  doc["field"] = field_to_json(ctx.field());
  return doc;
}

BlockingSet blocking_set_from_json(const Json& doc, std::ostream* warnings) {
  if (!doc.is_object()) bad("blocking-set document must be a JSON object");
  const int q = get_int(doc, "q");
  const int n = get_int(doc, "n");
  const int k = get_int(doc, "k");
  if (q < 2) bad("q must be a prime power >= 2");
  if (n < 1) bad("n must be >= 1");
  if (k < 0 || k >= n) bad("k must satisfy 0 <= k < n");
  const Json* field = doc.contains("field") ? &doc.at("field") : nullptr;
  auto ctx = GeometryContext::make(field_from_json(q, field), n);

  const Json empty = Json::array();
  auto points = indices_from_json(*ctx, doc.value("points", empty), "points", warnings);
  auto hyperplanes =
      indices_from_json(*ctx, doc.value("hyperplanes", empty), "hyperplanes", warnings);
  return BlockingSet(ctx, k, std::move(points), std::move(hyperplanes));
}

Json construction1_params_to_json(const Construction1Params& p) {
  Json points = Json::array();
  for (const auto& s : p.point_spaces) points.push_back(subspace_to_json(s));
  Json hyperplanes = Json::array();
  for (const auto& s : p.hyperplane_spaces) hyperplanes.push_back(subspace_to_json(s));
  return Json{{"carrier", subspace_to_json(p.carrier)},
              {"axis", subspace_to_json(p.axis)},
              {"point_spaces", points},
              {"hyperplane_spaces", hyperplanes}};
}

Construction1Params construction1_params_from_json(const GeometryContext& ctx, const Json& doc) {
  if (!doc.is_object()) bad("construction parameters must be a JSON object");
  for (const char* key : {"carrier", "axis", "point_spaces", "hyperplane_spaces"}) {
    if (!doc.contains(key)) bad(std::string("missing field \"") + key + "\"");
  }
  Construction1Params p;
  p.carrier = subspace_from_json(ctx, doc.at("carrier"));
  p.axis = subspace_from_json(ctx, doc.at("axis"));
  for (const char* key : {"point_spaces", "hyperplane_spaces"}) {
    const Json& list = doc.at(key);
    if (!list.is_array()) bad(std::string("\"") + key + "\" must be an array");
    auto& dst = std::string_view(key) == "point_spaces" ? p.point_spaces : p.hyperplane_spaces;
    for (const auto& s : list) dst.push_back(subspace_from_json(ctx, s));
  }
  return p;
}

Json bound_report_to_json(const BoundReport& r) {
  Json params = Json::object();
  for (const auto& [name, v] : r.params) params[name] = v.get_str();
  Json out{{"name", r.name}, {"params", params}, {"value", r.value}};
  if (r.comparison) {
    out["comparison"] = Json{{"actual", r.comparison->actual.get_str()},
                             {"satisfied", r.comparison->satisfied}};
  }
  return out;
}

Json search_report_to_json(const SearchReport& r, bool include_timing) {
  Json out{{"n", r.n},
           {"q", r.q},
           {"k", r.k},
           {"size_cap", r.size_cap},
           {"mode", to_string(r.mode)},
           {"minimum_size_found", r.minimum_size ? Json(*r.minimum_size) : Json("none")},
           {"minimum_sets", element_sets_to_json(r.minimum_sets)},
           {"num_minimum_sets", r.minimum_sets.size()},
           {"nodes_expanded", r.nodes_expanded},
           {"pruned", r.pruned},
           {"root_lower_bound", r.root_lower_bound}};
  if (include_timing) out["wall_time"] = r.wall_time;
  return out;
}

Json verdict_to_json(const ClassificationVerdict& v, bool include_timing) {
  Json counts = Json::object();
  for (const auto& [family, c] : v.family_counts) counts[family] = c;
  return Json{
      {"expected_bound", v.expected_bound ? Json(v.expected_bound->get_str()) : Json("open")},
      {"expected_family", v.expected_family},
      {"theorem_case", static_cast<int>(v.theorem_case)},
      {"observed_minimum", v.observed_minimum ? Json(*v.observed_minimum) : Json("none")},
      {"all_minima_match_theorem", v.all_minima_match_theorem},
      {"mismatches", element_sets_to_json(v.mismatches)},
      {"family_counts", counts},
      {"report", search_report_to_json(v.report, include_timing)}};
}

}  // namespace pgblock

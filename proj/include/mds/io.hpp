#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "mds/blowup.hpp"
#include "mds/certify.hpp"
#include "mds/curves.hpp"
#include "mds/error.hpp"
#include "mds/field.hpp"
#include "mds/lattice_geom.hpp"
#include "mds/laurent.hpp"
#include "mds/linalg.hpp"
#include "mds/number.hpp"
#include "mds/sections.hpp"

namespace mds {

using json = nlohmann::ordered_json;

namespace detail {

template <class F>
auto json_guard(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace detail

// Scalars ------------------------------------------------------------------

inline json rational_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw Error(ErrorCode::ParseError, "expected a rational string, got " + j.dump());
}

/// Integers that fit in 64 bits are emitted as numbers, larger ones as strings.
inline json integer_json(const Integer& z) {
  if (z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(z);
  return to_string(z);
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw Error(ErrorCode::ParseError, "expected an integer, got " + j.dump());
}

// Geometry -----------------------------------------------------------------

inline json point_json(const RationalPoint& p) { return json::array({rational_json(p.x), rational_json(p.y)}); }

inline RationalPoint point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::ParseError, "a point is a pair [x, y]");
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

inline json triangle_json(const RationalTriangle& t) {
  json v = json::array();
  for (const auto& p : t.vertices()) v.push_back(point_json(p));
  return {{"vertices", v}};
}

inline RationalTriangle triangle_from_json(const json& j) {
  return detail::json_guard([&] {
    const auto& v = j.at("vertices");
    if (!v.is_array() || v.size() != 3) throw Error(ErrorCode::ParseError, "a triangle has three vertices");
    return RationalTriangle(point_from_json(v[0]), point_from_json(v[1]), point_from_json(v[2]));
  });
}

/// "x,y" with rational coordinates.
inline RationalPoint parse_point(std::string_view s) {
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) throw Error(ErrorCode::ParseError, "expected x,y but got '" + std::string(s) + "'");
  return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
}

/// Three whitespace-separated "x,y" vertices, or the JSON object form.
inline RationalTriangle parse_triangle(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{')
    return triangle_from_json(detail::json_guard([&] { return json::parse(text); }));
  std::istringstream in{std::string(text)};
  std::vector<RationalPoint> pts;
  for (std::string tok; in >> tok;) pts.push_back(parse_point(tok));
  if (pts.size() != 3) throw Error(ErrorCode::ParseError, "a triangle needs exactly three vertices, got " + std::to_string(pts.size()));
  return {pts[0], pts[1], pts[2]};
}

inline json ray_json(const PrimitiveRay& r) { return json::array({integer_json(r.u1), integer_json(r.u2)}); }

inline PrimitiveRay ray_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::ParseError, "a ray is a pair [u1, u2]");
  return {integer_from_json(j[0]), integer_from_json(j[1])};
}

inline json weights_json(const WpsWeights& w) {
  return json::array({integer_json(w.w[0]), integer_json(w.w[1]), integer_json(w.w[2])});
}

inline WpsWeights weights_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::ParseError, "weights are a triple");
  return {{integer_from_json(j[0]), integer_from_json(j[1]), integer_from_json(j[2])}};
}

// Polynomials --------------------------------------------------------------

template <class Field>
json poly_json(const LaurentPoly<Field>& f) {
  json terms = json::array();
  for (const auto& t : f.terms())
    terms.push_back(json::array({t.exponent.i, t.exponent.j, rational_json(f.field().to_rational(t.coeff))}));
  return {{"field", f.field().name()}, {"terms", terms}};
}

template <class Field>
LaurentPoly<Field> poly_from_json(const json& j, const Field& field) {
  return detail::json_guard([&] {
    if (j.contains("field") && j.at("field").get<std::string>() != field.name())
      throw Error(ErrorCode::FieldMismatch, "polynomial is over " + j.at("field").get<std::string>() + ", expected " + field.name());
    std::vector<typename LaurentPoly<Field>::Term> terms;
    for (const auto& t : j.at("terms")) {
      if (!t.is_array() || t.size() != 3) throw Error(ErrorCode::ParseError, "a term is [i, j, coefficient]");
      terms.push_back({{t[0].get<std::int64_t>(), t[1].get<std::int64_t>()}, field.from_rational(rational_from_json(t[2]))});
    }
    return LaurentPoly<Field>::from_terms(field, std::move(terms));
  });
}

using AnyPoly = std::variant<QPoly, FpPoly>;

/// JSON object or text form; the field comes from the JSON when present.
inline AnyPoly parse_any_poly(std::string_view text, const FieldSpec& spec) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    const json j = detail::json_guard([&] { return json::parse(text); });
    const FieldSpec fs = j.contains("field") ? parse_field_spec(j.at("field").get<std::string>()) : spec;
    return std::visit([&](const auto& f) -> AnyPoly { return poly_from_json(j, f); }, fs);
  }
  return std::visit([&](const auto& f) -> AnyPoly { return parse_poly(text, f); }, spec);
}

// Blowup calculus ----------------------------------------------------------

inline json class_json(const NumericClass& c) { return {{"h", rational_json(c.h)}, {"e", rational_json(c.e)}}; }

inline NumericClass class_from_json(const json& j) {
  return detail::json_guard([&] { return NumericClass{rational_from_json(j.at("h")), rational_from_json(j.at("e"))}; });
}

/// "h,e"
inline NumericClass parse_class(std::string_view s) {
  const auto p = parse_point(s);
  return {p.x, p.y};
}

inline json interval_json(const DegreeInterval& d) { return {{"a", rational_json(d.a)}, {"b", rational_json(d.b)}}; }

inline DegreeInterval interval_from_json(const json& j) {
  return detail::json_guard([&] { return DegreeInterval{rational_from_json(j.at("a")), rational_from_json(j.at("b"))}; });
}

inline json negativity_json(const NegativityReport& r) {
  return {{"class", class_json(r.cls)},
          {"self_intersection", rational_json(r.self_intersection)},
          {"negative", r.negative},
          {"zero_curve", r.zero_curve}};
}

inline NegativityReport negativity_from_json(const json& j) {
  return detail::json_guard([&] {
    NegativityReport r;
    r.cls = class_from_json(j.at("class"));
    r.self_intersection = rational_from_json(j.at("self_intersection"));
    r.negative = j.at("negative").get<bool>();
    r.zero_curve = j.at("zero_curve").get<bool>();
    return r;
  });
}

// Linear algebra -----------------------------------------------------------

inline json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer_json(m(r, c)));
    rows.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

inline IntMatrix matrix_from_json(const json& j) {
  return detail::json_guard([&] {
    IntMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    const auto& e = j.at("entries");
    if (e.size() != m.rows()) throw Error(ErrorCode::ParseError, "row count mismatch");
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (e[r].size() != m.cols()) throw Error(ErrorCode::ParseError, "column count mismatch");
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = integer_from_json(e[r][c]);
    }
    return m;
  });
}

inline std::string matrix_csv(const IntMatrix& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += to_string(m(r, c));
    }
    out += '\n';
  }
  return out;
}

inline IntMatrix matrix_from_csv(std::string_view text) {
  std::vector<std::vector<Integer>> rows;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<Integer> row;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) row.push_back(parse_integer(cell));
    if (!rows.empty() && row.size() != rows.front().size()) throw Error(ErrorCode::ParseError, "ragged CSV matrix");
    rows.push_back(std::move(row));
  }
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  return m;
}

inline json snf_json(const SnfResult& s) {
  json d = json::array();
  for (const auto& x : s.divisors) d.push_back(integer_json(x));
  return {{"divisors", d}, {"rank", s.rank}};
}

inline SnfResult snf_from_json(const json& j) {
  return detail::json_guard([&] {
    SnfResult s;
    for (const auto& x : j.at("divisors")) s.divisors.push_back(integer_from_json(x));
    s.rank = j.at("rank").get<std::size_t>();
    return s;
  });
}

// Sections -----------------------------------------------------------------

inline HcReason hc_reason_from_string(std::string_view s) {
  for (auto r : {HcReason::NonIntegralVertex, HcReason::VertexCoordinateForcedZero, HcReason::WitnessFound})
    if (to_string(r) == s) return r;
  throw Error(ErrorCode::ParseError, "unknown HC reason '" + std::string(s) + "'");
}

template <class Field>
json hc_json(const HcReport<Field>& r) {
  json j = {{"l", r.l},
            {"field", r.field},
            {"member", r.member},
            {"reason", to_string(r.reason)},
            {"lattice_points", r.lattice_points},
            {"constraints", r.constraints},
            {"kernel_dimension", r.kernel_dimension}};
  j["witness"] = r.witness ? poly_json(*r.witness) : json(nullptr);
  return j;
}

template <class Field>
HcReport<Field> hc_from_json(const json& j, const Field& field) {
  return detail::json_guard([&] {
    HcReport<Field> r;
    r.l = j.at("l").get<std::int64_t>();
    r.field = j.at("field").get<std::string>();
    r.member = j.at("member").get<bool>();
    r.reason = hc_reason_from_string(j.at("reason").get<std::string>());
    r.lattice_points = j.at("lattice_points").get<std::size_t>();
    r.constraints = j.at("constraints").get<std::size_t>();
    r.kernel_dimension = j.at("kernel_dimension").get<std::size_t>();
    if (!j.at("witness").is_null()) r.witness = poly_from_json(j.at("witness"), field);
    return r;
  });
}

inline json zeta_json(const ZetaResult& z, bool with_poly) {
  json j = {{"m", z.m},
            {"p", z.p},
            {"k", z.k},
            {"l", z.l},
            {"j", z.j},
            {"terms", z.zeta.size()},
            {"degree", interval_json(z.degree)},
            {"multiplicity", z.multiplicity},
            {"constant_term", z.constant_term}};
  if (with_poly) j["zeta"] = poly_json(z.zeta);
  return j;
}

/// The polynomial is restored only when it was serialized.
inline ZetaResult zeta_from_json(const json& j) {
  return detail::json_guard([&] {
    ZetaResult z;
    z.m = j.at("m").get<std::int64_t>();
    z.p = j.at("p").get<std::int64_t>();
    z.k = j.at("k").get<std::int64_t>();
    z.l = j.at("l").get<std::int64_t>();
    z.j = j.at("j").get<std::int64_t>();
    z.degree = interval_from_json(j.at("degree"));
    z.multiplicity = j.at("multiplicity").get<std::int64_t>();
    z.constant_term = j.at("constant_term").get<std::uint64_t>();
    const PrimeField fp(static_cast<std::uint64_t>(z.p));
    z.zeta = j.contains("zeta") ? poly_from_json(j.at("zeta"), fp) : FpPoly(fp);
    return z;
  });
}

inline json clause_json(const Clause& c) { return {{"clause", c.name}, {"pass", c.pass}, {"detail", c.detail}}; }

inline json delta_bar_json(const DeltaBarReport& r) {
  json clauses = json::array();
  for (const auto& c : r.clauses) clauses.push_back(clause_json(c));
  return {{"m", r.m},
          {"delta_bar", triangle_json(r.delta_bar)},
          {"x_L", rational_json(r.x_left)},
          {"x_R", rational_json(r.x_right)},
          {"height", rational_json(r.height)},
          {"pass", r.pass()},
          {"clauses", clauses}};
}

inline DeltaBarReport delta_bar_from_json(const json& j) {
  return detail::json_guard([&] {
    DeltaBarReport r;
    r.m = j.at("m").get<std::int64_t>();
    r.delta_bar = triangle_from_json(j.at("delta_bar"));
    r.x_left = rational_from_json(j.at("x_L"));
    r.x_right = rational_from_json(j.at("x_R"));
    r.height = rational_from_json(j.at("height"));
    for (const auto& c : j.at("clauses"))
      r.clauses.push_back({c.at("clause").get<std::string>(), c.at("pass").get<bool>(), c.at("detail").get<std::string>()});
    return r;
  });
}

// Curves -------------------------------------------------------------------

inline json irreducibility_json(const IrreducibilityCertificate& c) {
  json conds = json::array();
  for (const auto& x : c.conditions) conds.push_back({{"condition", x.name}, {"holds", x.holds}});
  return {{"m", c.m}, {"field", c.field}, {"transformed", c.transformed}, {"holds", c.holds()}, {"conditions", conds}};
}

inline IrreducibilityCertificate irreducibility_from_json(const json& j) {
  return detail::json_guard([&] {
    IrreducibilityCertificate c;
    c.m = j.at("m").get<std::int64_t>();
    c.field = j.at("field").get<std::string>();
    c.transformed = j.at("transformed").get<std::string>();
    for (const auto& x : j.at("conditions")) c.conditions.push_back({x.at("condition").get<std::string>(), x.at("holds").get<bool>()});
    return c;
  });
}

// Certificates -------------------------------------------------------------

inline json certificate_json(const Certificate& c) {
  json premises = json::array();
  for (const auto& p : c.premises)
    premises.push_back({{"premise", p.name}, {"expected", p.expected}, {"actual", p.actual}, {"pass", p.pass}});
  json rays = json::array();
  for (const auto& r : c.rays) rays.push_back(ray_json(r));
  json zeta = json::array();
  for (const auto& z : c.zeta) {
    json e = {{"p", z.p}, {"status", z.status}};
    e["j"] = z.j ? json(*z.j) : json(nullptr);
    e["terms"] = z.terms;
    e["degree"] = z.degree ? interval_json(*z.degree) : json(nullptr);
    e["multiplicity"] = z.multiplicity;
    zeta.push_back(e);
  }
  json j = {{"kind", c.kind},
            {"theorem", c.theorem},
            {"m", c.m},
            {"alpha", rational_json(c.alpha)},
            {"beta", rational_json(c.beta)},
            {"verdict", c.verdict() ? "pass" : "fail"},
            {"rays", rays}};
  j["weights"] = c.weights ? weights_json(*c.weights) : json(nullptr);
  j["premises"] = premises;
  j["caveats"] = c.caveats;
  j["zeta_p"] = zeta;
  j["prime_threshold"] = c.prime_threshold ? json(*c.prime_threshold) : json(nullptr);
  return j;
}

inline Certificate certificate_from_json(const json& j) {
  return detail::json_guard([&] {
    Certificate c;
    c.kind = j.at("kind").get<std::string>();
    c.theorem = j.at("theorem").get<std::string>();
    c.m = j.at("m").get<std::int64_t>();
    c.alpha = rational_from_json(j.at("alpha"));
    c.beta = rational_from_json(j.at("beta"));
    for (const auto& r : j.at("rays")) c.rays.push_back(ray_from_json(r));
    if (!j.at("weights").is_null()) c.weights = weights_from_json(j.at("weights"));
    for (const auto& p : j.at("premises"))
      c.premises.push_back({p.at("premise").get<std::string>(), p.at("expected").get<std::string>(),
                            p.at("actual").get<std::string>(), p.at("pass").get<bool>()});
    c.caveats = j.at("caveats").get<std::vector<std::string>>();
    for (const auto& e : j.at("zeta_p")) {
      ZetaOutcome z;
      z.p = e.at("p").get<std::int64_t>();
      z.status = e.at("status").get<std::string>();
      if (!e.at("j").is_null()) z.j = e.at("j").get<std::int64_t>();
      z.terms = e.at("terms").get<std::size_t>();
      if (!e.at("degree").is_null()) z.degree = interval_from_json(e.at("degree"));
      z.multiplicity = e.at("multiplicity").get<std::int64_t>();
      c.zeta.push_back(z);
    }
    if (!j.at("prime_threshold").is_null()) c.prime_threshold = j.at("prime_threshold").get<std::int64_t>();
    return c;
  });
}

inline json example_family_json(const ExampleFamily& e) {
  json rays = json::array();
  for (const auto& r : e.rays) rays.push_back(ray_json(r));
  return {{"m", e.m},
          {"alpha", rational_json(e.alpha)},
          {"beta", rational_json(e.beta)},
          {"triangle", triangle_json(e.triangle)},
          {"rays", rays},
          {"weights", weights_json(e.weights)},
          {"closed_form", weights_json(e.closed_form)},
          {"matches", e.matches()}};
}

inline ExampleFamily example_family_from_json(const json& j) {
  return detail::json_guard([&] {
    ExampleFamily e;
    e.m = j.at("m").get<std::int64_t>();
    e.alpha = rational_from_json(j.at("alpha"));
    e.beta = rational_from_json(j.at("beta"));
    e.triangle = triangle_from_json(j.at("triangle"));
    const auto& rays = j.at("rays");
    if (rays.size() != 3) throw Error(ErrorCode::ParseError, "expected three rays");
    e.rays = {ray_from_json(rays[0]), ray_from_json(rays[1]), ray_from_json(rays[2])};
    e.weights = weights_from_json(j.at("weights"));
    e.closed_form = weights_from_json(j.at("closed_form"));
    return e;
  });
}

inline json scan_row_json(const ScanRow& r) {
  json j = {{"index", r.index},
            {"m", r.m},
            {"alpha", rational_json(r.alpha)},
            {"beta", rational_json(r.beta)},
            {"admissible", r.admissible}};
  j["self_intersection"] = r.self_intersection ? rational_json(*r.self_intersection) : json(nullptr);
  j["outcome"] = r.outcome;
  j["detail"] = r.detail;
  return j;
}

inline ScanRow scan_row_from_json(const json& j) {
  return detail::json_guard([&] {
    ScanRow r;
    r.index = j.at("index").get<std::size_t>();
    r.m = j.at("m").get<std::int64_t>();
    r.alpha = rational_from_json(j.at("alpha"));
    r.beta = rational_from_json(j.at("beta"));
    r.admissible = j.at("admissible").get<bool>();
    if (!j.at("self_intersection").is_null()) r.self_intersection = rational_from_json(j.at("self_intersection"));
    r.outcome = j.at("outcome").get<std::string>();
    r.detail = j.at("detail").get<std::string>();
    return r;
  });
}

/// Comma-separated rationals.
inline std::vector<Rational> parse_rational_list(std::string_view s) {
  std::vector<Rational> out;
  std::istringstream in{std::string(s)};
  for (std::string tok; std::getline(in, tok, ',');)
    if (tok.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_rational(tok));
  return out;
}

}  // namespace mds

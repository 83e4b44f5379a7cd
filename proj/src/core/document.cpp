#include "core/document.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fdom {

namespace {

Json real_json(const Real& x, int digits) { return to_string(x, digits); }

Json complex_json(const Complex& z, int digits) { return Json::array({real_json(z.re, digits), real_json(z.im, digits)}); }

Json bigint_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

BigInt bigint_from(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  fail(ErrorCode::invalid_argument, "document: expected an integer");
}

Real real_from(const Json& j) {
  if (!j.is_string()) fail(ErrorCode::invalid_argument, "document: expected a real number string");
  try {
    return Real(j.get<std::string>());
  } catch (const std::exception&) {
    fail(ErrorCode::invalid_argument, "document: malformed real number");
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::invalid_argument, std::string("document: missing field ") + key);
  return j.at(key);
}

}  // namespace

Json export_document(const DomainResult& result, const QuaternionOrder& order, const ToleranceContext& ctx,
                     std::uint64_t seed) {
  const int digits = ctx.digits();
  Json doc;
  doc["format_version"] = kFormatVersion;
  const GroupData data = group_data(order);
  doc["data"] = {{"n", data.degree}, {"d", data.field_disc}, {"N", bigint_json(data.norm_disc)}};

  Json primes = Json::array();
  for (auto p : order.algebra.ramified_primes) primes.push_back(p);
  doc["algebra"] = {{"a", to_string(order.algebra.a)},
                    {"b", to_string(order.algebra.b)},
                    {"discriminant", bigint_json(order.algebra.discriminant)},
                    {"ramified_primes", primes}};
  Json basis = Json::array();
  for (const auto& e : order.basis) {
    Json row = Json::array();
    for (const auto& c : e.x) row.push_back(to_string(c));
    basis.push_back(row);
  }
  doc["order"] = {{"basis", basis}, {"reduced_discriminant", bigint_json(order.reduced_discriminant)}};
  doc["center"] = complex_json(result.center, digits);
  doc["precision_digits"] = digits;
  doc["tolerance"] = real_json(ctx.tolerance(), digits);
  doc["seed"] = seed;

  const auto& pr = result.profile;
  doc["profile"] = {{"C", real_json(pr.C, digits)},
                    {"R", real_json(pr.R, digits)},
                    {"mu", real_json(pr.mu, digits)},
                    {"c_balance", pr.c_balance},
                    {"r_exponent", pr.r_exponent},
                    {"trials_per_iteration", pr.trials_per_iteration},
                    {"stop_after_first", pr.stop_after_first},
                    {"use_ifp", pr.use_ifp}};

  // Generators in side order, then any remaining elements.
  std::vector<const DiscAutomorphism*> gens;
  auto index_of = [&](const DiscAutomorphism& g) -> std::size_t {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i]->coords && g.coords && canonical_coords(*gens[i]->coords) == canonical_coords(*g.coords)) return i;
    gens.push_back(&g);
    return gens.size() - 1;
  };
  Json sides = Json::array();
  for (std::size_t j = 0; j < result.boundary.size(); ++j) {
    Json s;
    if (result.boundary.sides[j]) {
      s["generator"] = index_of(*result.boundary.sides[j]);
      const auto& c = *result.boundary.circles[j];
      s["circle"] = {{"center", complex_json(c.center, digits)}, {"radius", real_json(c.radius, digits)}};
    } else {
      s["generator"] = nullptr;
      s["circle"] = nullptr;
    }
    sides.push_back(s);
  }
  for (const auto& g : result.generators) index_of(g);
  Json generators = Json::array();
  for (const auto* g : gens) {
    Json item;
    Json coords = Json::array();
    if (g->coords)
      for (const auto& c : *g->coords) coords.push_back(bigint_json(c));
    item["coords"] = coords;
    if (g->matrix)
      item["matrix"] = Json::array({real_json(g->matrix->a, digits), real_json(g->matrix->b, digits),
                                    real_json(g->matrix->c, digits), real_json(g->matrix->d, digits)});
    item["psu"] = {{"A", complex_json(g->psu.A, digits)}, {"B", complex_json(g->psu.B, digits)}};
    generators.push_back(item);
  }
  doc["generators"] = generators;
  doc["sides"] = sides;

  Json vertices = Json::array();
  for (const auto& v : result.boundary.vertices)
    vertices.push_back({{"point", complex_json(v.point, digits)},
                        {"kind", v.kind == VertexKind::proper ? "proper" : "infinite"}});
  doc["vertices"] = vertices;

  Json pairs = Json::array();
  for (const auto& p : result.pairing.pairs) pairs.push_back({{"first", p.first}, {"second", p.second}});
  doc["pairing"] = {{"pairs", pairs}, {"complete", result.pairing.complete()}};

  doc["area"] = result.boundary.area ? real_json(*result.boundary.area, digits) : Json(nullptr);
  doc["mu_target"] = real_json(result.mu_target, digits);
  doc["converged"] = result.converged;
  doc["exact"] = result.exact;
  doc["stats"] = {{"iterations", result.stats.iterations},
                  {"trials", result.stats.trials},
                  {"elements_found", result.stats.elements_found},
                  {"basis_outer_iterations", result.stats.basis_outer_iterations},
                  {"center_perturbations", result.stats.center_perturbations}};
  return doc;
}

std::string serialize_document(const Json& doc) { return doc.dump(2) + "\n"; }

Json parse_document(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorCode::invalid_argument, std::string("document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("format_version") || doc["format_version"] != kFormatVersion)
    fail(ErrorCode::invalid_argument, "document has an unsupported format_version");
  return doc;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::io, "cannot open " + tmp + " for writing");
    out << content;
    out.flush();
    if (!out) fail(ErrorCode::io, "failed writing " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorCode::io, "cannot move output into place at " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void save_document(const Json& doc, const std::string& path) { write_file_atomic(path, serialize_document(doc)); }

Json load_document(const std::string& path) { return parse_document(read_file(path)); }

QuaternionOrder order_from_document(const Json& doc) {
  const Json& alg = field(doc, "algebra");
  QuaternionAlgebra algebra =
      make_algebra(parse_rational(field(alg, "a").get<std::string>()), parse_rational(field(alg, "b").get<std::string>()));
  const Json& rows = field(field(doc, "order"), "basis");
  if (!rows.is_array() || rows.size() != 4) fail(ErrorCode::invalid_argument, "document: order basis needs 4 rows");
  std::array<QuaternionElement, 4> basis;
  for (int i = 0; i < 4; ++i) {
    if (!rows[i].is_array() || rows[i].size() != 4) fail(ErrorCode::invalid_argument, "document: bad basis row");
    for (int k = 0; k < 4; ++k) basis[i].x[k] = parse_rational(rows[i][k].get<std::string>());
  }
  return make_order(algebra, basis);
}

VerifyReport verify_document(const Json& doc) {
  VerifyReport report;
  const int digits = field(doc, "precision_digits").get<int>();
  ToleranceContext ctx(digits);
  ctx.activate();
  QuaternionOrder order = order_from_document(doc);
  const Json& c = field(doc, "center");
  OrderArithmetic arith(order, Complex(real_from(c.at(0)), real_from(c.at(1))), ctx);

  std::vector<DiscAutomorphism> elements;
  for (const auto& g : field(doc, "generators")) {
    const Json& coords = field(g, "coords");
    if (!coords.is_array() || coords.size() != 4) fail(ErrorCode::invalid_argument, "document: bad generator");
    OrderCoords x{bigint_from(coords[0]), bigint_from(coords[1]), bigint_from(coords[2]), bigint_from(coords[3])};
    elements.push_back(arith.element(x));
  }
  NormalizedBoundary boundary = normalized_boundary(elements, ctx);
  SidePairing pairing = side_pairing(boundary, ctx);
  report.sides = boundary.size();
  report.sides_match = boundary.size() == field(doc, "sides").size();
  report.pairing_complete = pairing.complete() && !boundary.has_infinite_side();
  const Json& stored_area = field(doc, "area");
  if (boundary.area && stored_area.is_string()) {
    report.area = to_string(*boundary.area, digits);
    report.area_matches = abs(*boundary.area - real_from(stored_area)) < ctx.tolerance() * 10;
  } else {
    report.area_matches = !boundary.area && stored_area.is_null();
  }
  const bool stored_complete = field(field(doc, "pairing"), "complete").get<bool>();
  report.ok = report.sides_match && report.area_matches && report.pairing_complete == stored_complete &&
              report.pairing_complete;
  if (!report.sides_match)
    report.message = "side count differs from the stored boundary";
  else if (!report.area_matches)
    report.message = "area differs from the stored value";
  else if (!report.pairing_complete)
    report.message = "side pairing is incomplete";
  else
    report.message = "pairing complete; area matches";
  return report;
}

}  // namespace fdom

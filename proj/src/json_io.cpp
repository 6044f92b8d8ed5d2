#include "ihcoh/json_io.hpp"

namespace ihcoh {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw MalformedInput(what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) malformed(std::string("expected an object with field \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing field \"") + key + "\"");
  return *it;
}

const json& array(const json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array");
  return j;
}

std::size_t size_from_json(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) malformed(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<std::string> labels_from_json(const json& j, const char* what) {
  std::vector<std::string> out;
  for (const auto& x : array(j, what)) {
    if (!x.is_string()) malformed(std::string(what) + " entries must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

void check_width(const IVec& v, std::size_t n, const char* what) {
  if (v.size() != n) malformed(std::string(what) + " has length " + std::to_string(v.size()) + ", expected " + std::to_string(n));
}

}  // namespace

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(Int(j.dump()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  malformed("expected an integer or a \"p/q\" string, got " + j.dump());
}

Int int_from_json(const json& j) {
  Rat q = rat_from_json(j);
  if (q.get_den() != 1) malformed("expected an integer, got " + to_string(q));
  return q.get_num();
}

IVec ivec_from_json(const json& j) {
  IVec v;
  for (const auto& x : array(j, "integer vector")) v.push_back(int_from_json(x));
  return v;
}

QVec qvec_from_json(const json& j) {
  QVec v;
  for (const auto& x : array(j, "rational vector")) v.push_back(rat_from_json(x));
  return v;
}

IMat imat_from_json(const json& j, std::size_t cols) {
  std::vector<IVec> rows;
  for (const auto& r : array(j, "matrix")) rows.push_back(ivec_from_json(r));
  if (!rows.empty()) cols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) malformed("matrix rows have different lengths");
  return IMat::from_rows(rows, cols);
}

json to_json(const Int& z) { return z.get_str(); }
json to_json(const Rat& q) { return to_string(q); }

json to_json(const IVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

json to_json(const QVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

json to_json(const IMat& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

Cone cone_from_json(const json& j) {
  const std::size_t n = size_from_json(field(j, "rank"), "rank");
  std::vector<IVec> rays;
  for (const auto& r : array(field(j, "rays"), "rays")) {
    rays.push_back(ivec_from_json(r));
    check_width(rays.back(), n, "ray");
  }
  return Cone::from_generators(n, rays);
}

json to_json(const Cone& c) {
  json rays = json::array();
  for (const auto& r : c.rays()) rays.push_back(to_json(r));
  return {{"rank", c.rank()}, {"rays", rays}};
}

Polyhedron polyhedron_from_json(const json& j) {
  const std::size_t n = size_from_json(field(j, "rank"), "rank");
  std::vector<QVec> vertices;
  for (const auto& v : array(field(j, "vertices"), "vertices")) {
    vertices.push_back(qvec_from_json(v));
    if (vertices.back().size() != n) malformed("vertex length differs from rank");
  }
  if (vertices.empty()) malformed("polyhedron needs at least one vertex");
  std::vector<IVec> rays;
  if (j.contains("rays"))
    for (const auto& r : array(j.at("rays"), "rays")) {
      rays.push_back(ivec_from_json(r));
      check_width(rays.back(), n, "ray");
    }
  return Polyhedron::make(n, vertices, rays);
}

json to_json(const Polyhedron& p) {
  json verts = json::array(), rays = json::array();
  for (const auto& v : p.vertices()) verts.push_back(to_json(v));
  for (const auto& r : p.tail().rays()) rays.push_back(to_json(r));
  return {{"rank", p.rank()}, {"vertices", verts}, {"rays", rays}};
}

Fan fan_from_json(const json& j) {
  const std::size_t n = size_from_json(field(j, "rank"), "rank");
  std::vector<IVec> rays;
  for (const auto& r : array(field(j, "rays"), "rays")) {
    rays.push_back(ivec_from_json(r));
    check_width(rays.back(), n, "ray");
  }
  std::vector<Cone> cones;
  for (const auto& m : array(field(j, "maximal_cones"), "maximal_cones")) {
    std::vector<IVec> gens;
    for (const auto& k : array(m, "cone")) {
      std::size_t i = size_from_json(k, "ray index");
      if (i >= rays.size()) malformed("ray index " + std::to_string(i) + " out of range");
      gens.push_back(rays[i]);
    }
    cones.push_back(Cone::from_generators(n, gens));
  }
  if (cones.empty()) cones.push_back(Cone::zero(n));
  return build_fan(n, cones);
}

json to_json(const Fan& f) {
  json rays = json::array(), maxes = json::array();
  for (const auto& r : f.rays()) rays.push_back(to_json(r));
  for (const auto& m : f.maximal_cones()) maxes.push_back(m);
  return {{"rank", f.rank()}, {"rays", rays}, {"maximal_cones", maxes}};
}

IntPolynomial polynomial_from_json(const json& j) {
  std::vector<std::int64_t> c;
  for (const auto& x : array(field(j, "coeffs"), "coeffs")) {
    if (!x.is_number_integer()) malformed("polynomial coefficients must be integers");
    c.push_back(x.get<std::int64_t>());
  }
  return IntPolynomial(c);
}

json to_json(const IntPolynomial& p) { return {{"coeffs", p.coeffs()}, {"text", p.to_string()}}; }

CurveData curve_from_json(const json& j) {
  CurveData c;
  const json& g = field(j, "genus");
  if (!g.is_number_integer() || g.get<std::int64_t>() < 0) malformed("genus must be a nonnegative integer");
  c.genus = g.get<int>();
  const json& comp = field(j, "complete");
  if (!comp.is_boolean()) malformed("complete must be a boolean");
  c.complete = comp.get<bool>();
  c.punctures = j.contains("punctures") ? static_cast<int>(size_from_json(j.at("punctures"), "punctures")) : 0;
  if (j.contains("points")) c.points = labels_from_json(j.at("points"), "points");
  if (c.complete && c.punctures != 0) malformed("a complete curve has no punctures");
  return c;
}

json to_json(const CurveData& c) {
  return {{"genus", c.genus}, {"complete", c.complete}, {"punctures", c.punctures}, {"points", c.points}};
}

PolyhedralDivisor divisor_from_json(const json& j, const CurveData* curve) {
  PolyhedralDivisor d;
  d.curve = curve ? *curve : curve_from_json(field(j, "curve"));
  d.tail = cone_from_json(field(j, "tail"));
  if (j.contains("domain_excludes")) d.domain_excludes = labels_from_json(j.at("domain_excludes"), "domain_excludes");
  if (j.contains("coefficients")) {
    const json& cs = j.at("coefficients");
    if (!cs.is_object()) malformed("coefficients must be an object keyed by point label");
    for (auto it = cs.begin(); it != cs.end(); ++it) {
      if (!d.curve.has_point(it.key())) malformed("coefficient at undeclared point \"" + it.key() + "\"");
      d.coefficients.emplace(it.key(), polyhedron_from_json(it.value()));
    }
  }
  return d;
}

json to_json(const PolyhedralDivisor& d, bool with_curve) {
  json cs = json::object();
  for (const auto& [z, p] : d.coefficients) cs[z] = to_json(p);
  json out = {{"tail", to_json(d.tail)}, {"domain_excludes", d.domain_excludes}, {"coefficients", cs}};
  if (with_curve) out["curve"] = to_json(d.curve);
  return out;
}

DivisorialFan divfan_from_json(const json& j) {
  DivisorialFan e;
  e.curve = curve_from_json(field(j, "curve"));
  for (const auto& d : array(field(j, "divisors"), "divisors")) e.divisors.push_back(divisor_from_json(d, &e.curve));
  return e;
}

json to_json(const DivisorialFan& e) {
  json ds = json::array();
  for (const auto& d : e.divisors) ds.push_back(to_json(d, false));
  return {{"curve", to_json(e.curve)}, {"divisors", ds}};
}

TrinomialData trinomial_from_json(const json& j) {
  TrinomialData t;
  const json& ex = array(field(j, "exponents"), "exponents");
  if (ex.size() != 3) malformed("exponents must list exactly three monomials");
  for (std::size_t i = 0; i < 3; ++i)
    for (const auto& n : array(ex[i], "monomial exponents")) {
      if (!n.is_number_integer()) malformed("exponents must be integers");
      t.exponents[i].push_back(n.get<std::int64_t>());
    }
  const json& amb = field(j, "ambient");
  if (amb == "affine") t.ambient = Ambient::Affine;
  else if (amb == "projective") t.ambient = Ambient::Projective;
  else malformed("ambient must be \"affine\" or \"projective\"");
  if (j.contains("F") && !j.at("F").is_null()) t.F = imat_from_json(j.at("F"));
  if (j.contains("S") && !j.at("S").is_null()) t.S = imat_from_json(j.at("S"));
  return t;
}

WeightInput weights_from_json(const json& j) {
  WeightInput w;
  w.F = imat_from_json(field(j, "F"));
  if (j.contains("S") && !j.at("S").is_null()) w.S = imat_from_json(j.at("S"), w.F.rows());
  if (j.contains("P") && !j.at("P").is_null()) w.P = imat_from_json(j.at("P"), w.F.rows());
  return w;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace ihcoh

#include "ihcoh/tvar.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace ihcoh {

namespace {

IntPolynomial t_power(std::int64_t c, std::size_t k) { return IntPolynomial::monomial(c, k); }

// Cone(σ×{0} ∪ σ×{−1}) = σ × Q≤0.
Cone lower_cylinder(const Cone& sigma) {
  const std::size_t n = sigma.rank();
  std::vector<IVec> gens;
  for (const auto& r : sigma.rays()) {
    IVec v = r;
    v.push_back(0);
    gens.push_back(v);
  }
  IVec down(n + 1, 0);
  down[n] = -1;
  gens.push_back(down);
  return Cone::from_generators(n + 1, gens);
}

std::vector<Cone> sigma_z_inputs(const DivisorialFan& e, const std::string& z) {
  std::vector<Cone> cones;
  for (const auto& d : e.divisors) {
    if (d.in_domain(z)) cones.push_back(cayley_cone(d.coefficient(z)));
    cones.push_back(lower_cylinder(d.tail));
  }
  return cones;
}

std::string cones_key(const std::vector<Cone>& cones) {
  std::vector<std::string> keys;
  for (const auto& c : cones) keys.push_back(c.key());
  std::sort(keys.begin(), keys.end());
  std::string k;
  for (const auto& s : keys) k += s + ";";
  return k;
}

// Every marked point together with a pseudo-label for the generic point, which carries σ_i.
std::vector<std::optional<std::string>> all_points(const CurveData& c) {
  std::vector<std::optional<std::string>> pts{std::nullopt};
  for (const auto& p : c.points) pts.emplace_back(p);
  return pts;
}

Polyhedron coeff_at(const PolyhedralDivisor& d, const std::optional<std::string>& z) {
  return z ? d.coefficient(*z) : Polyhedron::from_cone(d.tail);
}

bool domain_at(const PolyhedralDivisor& d, const std::optional<std::string>& z) { return !z || d.in_domain(*z); }

bool same_optional(const std::optional<Polyhedron>& a, const std::optional<Polyhedron>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || *a == *b;
}

// deg(D^i ∩ D^j) for the pointwise intersection; empty coefficients shrink the domain.
std::optional<Polyhedron> degree_of_intersection(const PolyhedralDivisor& a, const PolyhedralDivisor& b) {
  if (!a.over_complete_curve() || !b.over_complete_curve()) return std::nullopt;
  auto acc = intersect(Polyhedron::from_cone(a.tail), Polyhedron::from_cone(b.tail));
  for (const auto& z : a.curve.points) {
    auto piece = intersect(a.coefficient(z), b.coefficient(z));
    if (!piece) return std::nullopt;
    acc = minkowski_sum(*acc, *piece);
  }
  return acc;
}

void check_schema(const DivisorialFan& e, DivFanReport& rep) {
  auto fail = [&](std::string detail, int i) {
    rep.valid = false;
    rep.violations.push_back({"schema", std::move(detail), std::nullopt, i, -1});
  };
  if (!e.curve.complete || e.curve.punctures != 0) fail("divisorial fan base curve must be complete", -1);
  if (e.divisors.empty()) fail("divisorial fan has no divisors", -1);
  std::size_t rank0 = e.divisors.empty() ? 0 : e.divisors.front().tail.rank();
  for (std::size_t i = 0; i < e.divisors.size(); ++i) {
    const auto& d = e.divisors[i];
    const int ii = static_cast<int>(i);
    if (d.tail.rank() != rank0) fail("tail rank differs from the first divisor", ii);
    if (!d.tail.strictly_convex()) fail("tail is not strictly convex", ii);
    for (const auto& [z, p] : d.coefficients) {
      if (!e.curve.has_point(z)) fail("coefficient at undeclared point " + z, ii);
      if (p.rank() != d.tail.rank() || !(p.tail() == d.tail)) fail("coefficient at " + z + " does not have the divisor's tail", ii);
    }
    for (const auto& z : d.domain_excludes)
      if (!e.curve.has_point(z)) fail("domain excludes undeclared point " + z, ii);
  }
}

}  // namespace

bool CurveData::has_point(const std::string& z) const { return std::find(points.begin(), points.end(), z) != points.end(); }

Polyhedron PolyhedralDivisor::coefficient(const std::string& z) const {
  auto it = coefficients.find(z);
  return it == coefficients.end() ? Polyhedron::from_cone(tail) : it->second;
}

bool PolyhedralDivisor::in_domain(const std::string& z) const {
  return std::find(domain_excludes.begin(), domain_excludes.end(), z) == domain_excludes.end();
}

std::vector<std::string> PolyhedralDivisor::support() const {
  std::vector<std::string> out;
  for (const auto& [z, p] : coefficients)
    if (!p.equals_tail()) out.push_back(z);
  return out;
}

bool PolyhedralDivisor::over_complete_curve() const { return curve.complete && domain_excludes.empty(); }

std::optional<Polyhedron> degree(const PolyhedralDivisor& d) {
  if (!d.over_complete_curve()) return std::nullopt;
  Polyhedron acc = Polyhedron::from_cone(d.tail);
  for (const auto& [z, p] : d.coefficients) acc = minkowski_sum(acc, p);
  return acc;
}

DivFanReport validate_divfan(const DivisorialFan& e) {
  DivFanReport rep;
  try {
    check_schema(e, rep);
    if (!rep.valid) return rep;
    const auto& ds = e.divisors;
    const auto pts = all_points(e.curve);

    for (std::size_t i = 0; i < ds.size(); ++i)
      for (std::size_t j = i + 1; j < ds.size(); ++j)
        for (const auto& z : pts) {
          if (!domain_at(ds[i], z) || !domain_at(ds[j], z)) continue;
          Polyhedron a = coeff_at(ds[i], z), b = coeff_at(ds[j], z);
          auto meet = intersect(a, b);
          if (meet && (!is_face_of(*meet, a) || !is_face_of(*meet, b))) {
            rep.valid = false;
            rep.violations.push_back({z ? "face" : "tail",
                                      "coefficients intersect in a set that is not a common face", z,
                                      static_cast<int>(i), static_cast<int>(j)});
          }
        }

    for (std::size_t i = 0; i < ds.size(); ++i)
      for (std::size_t j = 0; j < ds.size(); ++j) {
        if (i == j) continue;
        auto lhs = degree_of_intersection(ds[i], ds[j]);
        std::optional<Polyhedron> rhs;
        if (auto dj = degree(ds[j])) rhs = intersect(Polyhedron::from_cone(intersect(ds[i].tail, ds[j].tail)), *dj);
        if (!same_optional(lhs, rhs)) {
          rep.valid = false;
          rep.violations.push_back({"degree", "deg(D^i ∩ D^j) differs from σ_i ∩ σ_j ∩ deg D^j", std::nullopt,
                                    static_cast<int>(i), static_cast<int>(j)});
        }
      }
    if (!rep.valid) return rep;

    rep.complete_variety = true;
    if (!tail_fan(e).is_complete()) {
      rep.complete_variety = false;
      rep.violations.push_back({"coverage", "tails do not cover N_Q", std::nullopt, -1, -1});
    }
    for (const auto& z : e.curve.points) {
      try {
        sigma_z_fan(e, z);
      } catch (const Error& err) {
        rep.complete_variety = false;
        rep.violations.push_back({"coverage", err.detail(), z, -1, -1});
      }
    }
  } catch (const Error& err) {
    rep.valid = false;
    rep.complete_variety = false;
    rep.violations.push_back({"schema", err.what(), std::nullopt, -1, -1});
  }
  return rep;
}

IntPolynomial g_divisor(const PolyhedralDivisor& d) {
  const auto supp = d.support();
  const auto a = static_cast<std::int64_t>(supp.size());
  const std::int64_t g2 = 2 * static_cast<std::int64_t>(d.curve.genus);
  IntPolynomial lead = d.curve.complete ? IntPolynomial({1 - a, g2, 1})
                                        : IntPolynomial({1 - a, g2 + d.curve.punctures - 1});
  IntPolynomial out = lead * g_poly(d.tail);
  for (const auto& z : supp) out += g_poly(cayley_cone(d.coefficient(z)));
  return out;
}

Fan tail_fan(const DivisorialFan& e) {
  if (e.divisors.empty()) throw Error(ErrorKind::InvalidDivisorialFan, "no divisors");
  std::vector<Cone> tails;
  for (const auto& d : e.divisors) tails.push_back(d.tail);
  return build_fan(e.divisors.front().tail.rank(), tails);
}

Fan sigma_z_fan(const DivisorialFan& e, const std::string& z) {
  if (e.divisors.empty()) throw Error(ErrorKind::InvalidDivisorialFan, "no divisors");
  const std::size_t n = e.divisors.front().tail.rank();
  Fan f = generated_fan(n + 1, sigma_z_inputs(e, z));
  if (!f.is_complete()) throw Error(ErrorKind::SigmaZNotComplete, "fan at point " + z + " is not complete");
  return f;
}

IntPolynomial h_divfan(const DivisorialFan& e, bool /*contraction*/) {
  auto rep = validate_divfan(e);
  if (!rep.valid) throw Error(ErrorKind::InvalidDivisorialFan, rep.violations.front().detail);
  if (!rep.complete_variety) throw Error(ErrorKind::SigmaZNotComplete, rep.violations.front().detail);

  std::set<std::string> special;
  for (const auto& d : e.divisors)
    for (const auto& z : d.support()) special.insert(z);
  const auto c = static_cast<std::int64_t>(special.size());
  const std::int64_t g2 = 2 * static_cast<std::int64_t>(e.curve.genus);

  IntPolynomial out = IntPolynomial({1 - c, g2, 1 - c}) * h_poly(tail_fan(e));
  // Points with identical coefficient data share Σ_z.
  std::unordered_map<std::string, IntPolynomial> memo;
  for (const auto& z : special) {
    const std::string key = cones_key(sigma_z_inputs(e, z));
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, h_poly(sigma_z_fan(e, z))).first;
    out += it->second;
  }
  return out;
}

std::vector<HFEntry> hf_set(const DivisorialFan& e) {
  auto rep = validate_divfan(e);
  if (!rep.valid) throw Error(ErrorKind::InvalidDivisorialFan, rep.violations.front().detail);
  std::vector<Polyhedron> degs;
  for (const auto& d : e.divisors)
    if (auto p = degree(d)) degs.push_back(*p);

  Fan sigma = tail_fan(e);
  std::vector<Cone> hf;
  for (const auto& cell : sigma.all_cones())
    for (const auto& p : degs)
      if (intersect_nonempty(p, cell.cone).nonempty) {
        hf.push_back(cell.cone);
        break;
      }

  std::vector<HFEntry> out;
  for (const auto& tau : hf) {
    std::vector<Cone> above;
    for (const auto& g : hf)
      if (is_face_of(tau, g)) above.push_back(g);
    out.push_back({tau, star_fan(sigma.rank(), above, tau)});
  }
  return out;
}

std::vector<Cone> hf_faces(const PolyhedralDivisor& d) {
  std::vector<Cone> out;
  auto deg = degree(d);
  if (!deg) return out;
  for (const auto& tau : faces(d.tail))
    if (intersect_nonempty(*deg, tau).nonempty) out.push_back(tau);
  return out;
}

std::int64_t top_g_number(const Cone& tau) {
  if (tau.dim() == 0) return 0;
  return g_poly(tau).coeff(static_cast<std::size_t>(tau.dim() - 1));
}

namespace {

void check_correction(const IntPolynomial& corr) {
  if (!corr.is_even() || !corr.nonnegative())
    throw Error(ErrorKind::InternalInconsistency, "correction term " + corr.to_string() + " is not even and nonnegative");
}

}  // namespace

IntPolynomial poincare_complete(const DivisorialFan& e) {
  IntPolynomial h = h_divfan(e, true);
  IntPolynomial corr;
  for (const auto& entry : hf_set(e)) {
    const std::int64_t g = top_g_number(entry.tau);
    if (g == 0) continue;
    corr += t_power(g, static_cast<std::size_t>(entry.tau.dim() + 1)) * h_poly(entry.star);
  }
  check_correction(corr);
  return h - corr;
}

IntPolynomial poincare_affine(const PolyhedralDivisor& d) {
  if (!d.tail.full_dimensional()) throw Error(ErrorKind::TailNotFullDim, "tail cone is not full-dimensional");
  IntPolynomial g = g_divisor(d);
  if (!d.over_complete_curve()) return g;
  IntPolynomial corr;
  for (const auto& tau : hf_faces(d)) {
    const std::int64_t gt = top_g_number(tau);
    if (gt == 0) continue;
    Fan star = star_fan(d.tail.rank(), {d.tail}, tau);
    corr += t_power(gt, static_cast<std::size_t>(tau.dim() + 1)) * g_poly(star.maximal().front());
  }
  check_correction(corr);
  return g - corr;
}

}  // namespace ihcoh

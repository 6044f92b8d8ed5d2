#include "ihcoh/weightpkg.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ihcoh {

namespace {

IVec unit(std::size_t n, std::size_t i) {
  IVec v(n, 0);
  v[i] = 1;
  return v;
}

// Smallest positive multiple of the primitive direction r lying in P(Z^ℓ).
IVec lattice_primitive(const IMat& P, const IVec& r) {
  SmithForm snf = smith_normal_form(P);
  IVec ur = snf.U * r;
  auto d = snf.divisors();
  Int k = 1;
  for (std::size_t i = 0; i < ur.size(); ++i) {
    if (i >= d.size() || d[i] == 0) {
      if (ur[i] != 0) throw Error(ErrorKind::InternalInconsistency, "ray outside the span of P");
      continue;
    }
    Int g;
    mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), ur[i].get_mpz_t());
    Int need = d[i] / g;
    mpz_lcm(k.get_mpz_t(), k.get_mpz_t(), need.get_mpz_t());
  }
  return scale(k, r);
}

IMat prepend_balancing_column(const IMat& m) {
  IMat out(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int sum = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(i, j + 1) = m(i, j);
      sum += m(i, j);
    }
    out(i, 0) = -sum;
  }
  return out;
}

// Star subdivision of every cone at every ray of the collection lying in it without being one of
// its rays. Adds no rays; the caller checks whether the result is a fan.
std::vector<Cone> stellar_refinement(const std::vector<Cone>& cones) {
  std::set<IVec> rays;
  for (const auto& c : cones) rays.insert(c.rays().begin(), c.rays().end());
  std::vector<Cone> cur = cones;
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<Cone> next;
    for (const auto& c : cur) {
      const IVec* hit = nullptr;
      if (c.full_dimensional())
        for (const auto& r : rays)
          if (c.contains(r) && std::find(c.rays().begin(), c.rays().end(), r) == c.rays().end()) {
            hit = &r;
            break;
          }
      if (!hit) {
        next.push_back(c);
        continue;
      }
      changed = true;
      for (std::size_t f = 0; f < c.facets().size(); ++f) {
        if (dot(c.facets()[f], *hit) == 0) continue;
        std::vector<IVec> g{*hit};
        for (int i : c.tight_rays(f)) g.push_back(c.rays()[static_cast<std::size_t>(i)]);
        next.push_back(Cone::from_generators(c.rank(), g));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

Fan image_fan(const IMat& P, const Cone& delta) {
  std::vector<Cone> images;
  for (const auto& f : faces(delta)) {
    Cone im = linear_image(f, P);
    if (im.strictly_convex()) images.push_back(im);
  }
  return generated_fan(P.rows(), images);
}

WeightPackage build_weight_package(const IMat& F, const std::optional<IMat>& S, const std::optional<IMat>& P) {
  WeightPackage w;
  w.mf = matrix_factorization(F, S, P);
  w.ell = F.rows();
  w.n = F.cols();
  w.quotient_fan = image_fan(w.P(), Cone::orthant(w.ell));
  w.sigma_theta = linear_image(orthant_kernel_cone(w), w.S());
  if (!w.sigma_theta.strictly_convex()) throw Error(ErrorKind::NotStrictlyConvex, "σ_θ has lineality");
  return w;
}

Cone orthant_kernel_cone(const WeightPackage& w) {
  std::vector<IVec> ineqs;
  for (std::size_t i = 0; i < w.ell; ++i) ineqs.push_back(unit(w.ell, i));
  return Cone::from_inequalities(w.ell, ineqs, w.P().row_list());
}

std::vector<DThetaCoefficient> dtheta_coefficients(const WeightPackage& w) {
  std::vector<DThetaCoefficient> out;
  const std::size_t ell = w.ell, s = w.s();
  // S ⊕ 1 on the homogenized slice {x ≥ 0, h ≥ 0, P x = h v}.
  IMat lift(w.n + 1, ell + 1);
  for (std::size_t i = 0; i < w.n; ++i)
    for (std::size_t j = 0; j < ell; ++j) lift(i, j) = w.S()(i, j);
  lift(w.n, ell) = 1;

  for (const auto& ray : w.quotient_fan.rays()) {
    IVec v = lattice_primitive(w.P(), ray);
    std::vector<IVec> ineqs, eqs;
    for (std::size_t i = 0; i <= ell; ++i) ineqs.push_back(unit(ell + 1, i));
    for (std::size_t r = 0; r < s; ++r) {
      IVec e = w.P().row(r);
      e.push_back(-v[r]);
      eqs.push_back(e);
    }
    Cone hom = linear_image(Cone::from_inequalities(ell + 1, ineqs, eqs), lift);
    auto p = Polyhedron::from_homogenization(hom);
    if (!p) throw Error(ErrorKind::InternalInconsistency, "empty slice over ray " + to_string(ray));
    out.push_back({ray, v, *p});
  }
  return out;
}

IMat enhanced_P(const WeightPackage& w) { return prepend_balancing_column(w.P()); }
IMat enhanced_S(const WeightPackage& w) { return prepend_balancing_column(w.S()); }

std::vector<WeightPackage> enhance(const WeightPackage& w) {
  const std::size_t ell = w.ell, n = w.n;
  IMat Fhat(ell + 1, n);
  for (std::size_t i = 0; i < ell; ++i)
    for (std::size_t j = 0; j < n; ++j) Fhat(i + 1, j) = w.F()(i, j);
  const IMat Phat = enhanced_P(w), Shat = enhanced_S(w);

  std::vector<WeightPackage> out{w};
  for (std::size_t v = 1; v <= ell; ++v) {
    IMat shifted = Fhat;
    for (std::size_t i = 0; i <= ell; ++i)
      for (std::size_t j = 0; j < n; ++j) shifted(i, j) -= Fhat(v, j);
    out.push_back(build_weight_package(shifted.without_row(v), Shat.without_col(v), Phat.without_col(v)));
  }
  return out;
}

Cone projective_chart_cone(std::size_t ell, std::size_t i) {
  if (i == 0) return Cone::orthant(ell);
  std::vector<IVec> gens{IVec(ell, -1)};
  for (std::size_t j = 1; j <= ell; ++j)
    if (j != i) gens.push_back(unit(ell, j - 1));
  return Cone::from_generators(ell, gens);
}

Fan lift_fan(const IMat& P, const Fan& target, const Cone& support) {
  std::vector<Cone> cones;
  for (const auto& m : target.maximal()) cones.push_back(preimage(m, P, support));
  return generated_fan(support.rank(), cones);
}

LiftingFan lifting_fan(const WeightPackage& w) {
  LiftingFan out;
  out.delta = lift_fan(w.P(), w.quotient_fan, Cone::orthant(w.ell));
  out.Q = IMat::from_columns(out.delta.rays(), w.ell);
  return out;
}

std::vector<Fan> chart_lifting_fans(const WeightPackage& w) {
  std::vector<Fan> out;
  auto charts = enhance(w);
  for (std::size_t i = 0; i < charts.size(); ++i)
    out.push_back(lift_fan(w.P(), charts[i].quotient_fan, projective_chart_cone(w.ell, i)));
  return out;
}

Fan enhanced_lifting_fan(const WeightPackage& w) {
  std::vector<Cone> cones;
  for (const auto& d : chart_lifting_fans(w))
    for (const auto& m : d.maximal()) cones.push_back(m);
  // Neighbouring charts may subdivide a shared face differently. Star subdivision at the rays
  // already present usually reconciles them; otherwise fall back to the hyperplane refinement.
  try {
    return build_fan(w.ell, stellar_refinement(cones));
  } catch (const Error&) {
    return generated_fan(w.ell, cones);
  }
}

bool is_fan_morphism(const Fan& delta, const Fan& target, const IMat& P) {
  for (const auto& cell : delta.all_cones()) {
    Cone im = linear_image(cell.cone, P);
    bool inside = false;
    for (const auto& t : target.all_cones())
      if (t.cone.contains(im)) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

}  // namespace ihcoh

#include "ihcoh/trinomial.hpp"

#include <numeric>
#include <set>

namespace ihcoh {

namespace {

struct VarRef {
  int block;  // 0, 1, 2
  std::size_t j;
  std::int64_t n;
};

std::vector<VarRef> variables(const TrinomialData& t) {
  std::vector<VarRef> out;
  for (int i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < t.exponents[static_cast<std::size_t>(i)].size(); ++j)
      out.push_back({i, j, t.exponents[static_cast<std::size_t>(i)][j]});
  return out;
}

// S·(d/(d_i n) e_k) for column k of S.
QVec gamma_point(const IMat& S, std::size_t k, const TrinomialInvariants& inv, const VarRef& v) {
  Rat c(inv.d, inv.d_i[static_cast<std::size_t>(v.block)] * v.n);
  c.canonicalize();
  QVec q(S.rows());
  for (std::size_t r = 0; r < S.rows(); ++r) q[r] = c * Rat(S(r, k));
  return q;
}

// Points of E_i: d·d_i of them, each with multiplicity one.
CurveData trinomial_curve(const TrinomialInvariants& inv) {
  CurveData c;
  c.genus = static_cast<int>(inv.genus);
  c.complete = true;
  for (int i = 0; i < 3; ++i)
    for (std::int64_t k = 0; k < inv.d * inv.d_i[static_cast<std::size_t>(i)]; ++k)
      c.points.push_back(trinomial_point_label(i + 1, k));
  return c;
}

PolyhedralDivisor trinomial_divisor(const CurveData& curve, const Cone& sigma, const std::array<std::vector<QVec>, 3>& gamma,
                                    const TrinomialInvariants& inv) {
  PolyhedralDivisor d;
  d.curve = curve;
  d.tail = sigma;
  for (int i = 0; i < 3; ++i) {
    Polyhedron p = Polyhedron::make(sigma.rank(), gamma[static_cast<std::size_t>(i)], sigma.rays());
    for (std::int64_t k = 0; k < inv.d * inv.d_i[static_cast<std::size_t>(i)]; ++k)
      d.coefficients.emplace(trinomial_point_label(i + 1, k), p);
  }
  return d;
}

// Faces of σ containing one of the sums Σ_i d·d_i·q_{i,j_i}. These sums are the vertices of
// deg D̄_θ (block i sits on d·d_i points), so the set is exactly the faces meeting the degree.
// With d₁ = d₂ = d₃ = 1 the weights are a common factor and drop out.
std::vector<Cone> closed_form_H(const Cone& sigma, const std::array<std::vector<QVec>, 3>& gamma,
                                const TrinomialInvariants& inv) {
  std::array<Rat, 3> w;
  for (std::size_t i = 0; i < 3; ++i) w[i] = Rat(inv.d * inv.d_i[i]);
  std::vector<QVec> sums;
  for (const auto& a : gamma[0])
    for (const auto& b : gamma[1])
      for (const auto& c : gamma[2]) {
        QVec s(a.size());
        for (std::size_t r = 0; r < s.size(); ++r) s[r] = w[0] * a[r] + w[1] * b[r] + w[2] * c[r];
        sums.push_back(s);
      }
  std::vector<Cone> out;
  for (const auto& tau : faces(sigma))
    for (const auto& s : sums)
      if (tau.contains(s)) {
        out.push_back(tau);
        break;
      }
  return out;
}

std::int64_t gcd_all(const std::vector<std::int64_t>& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

void check_weight_matrix(const IMat& P, const IMat& F) {
  IMat pf = P * F;
  for (std::size_t i = 0; i < pf.rows(); ++i)
    for (std::size_t j = 0; j < pf.cols(); ++j)
      if (pf(i, j) != 0) throw Error(ErrorKind::InvalidInput, "supplied F is not in the kernel of the trinomial R-matrix");
}

}  // namespace

std::string trinomial_point_label(int i, std::int64_t k) { return "E" + std::to_string(i) + "." + std::to_string(k); }

TrinomialInvariants trinomial_invariants(const TrinomialData& t) {
  TrinomialInvariants inv;
  for (std::size_t i = 0; i < 3; ++i) {
    if (t.exponents[i].empty()) throw Error(ErrorKind::InvalidInput, "monomial " + std::to_string(i + 1) + " has no variables");
    for (auto n : t.exponents[i])
      if (n <= 0) throw Error(ErrorKind::InvalidInput, "exponents must be positive");
    inv.u_i[i] = gcd_all(t.exponents[i]);
  }
  const auto& u = inv.u_i;
  inv.d = std::gcd(u[0], std::gcd(u[1], u[2]));
  inv.d_i = {std::gcd(u[1] / inv.d, u[2] / inv.d), std::gcd(u[0] / inv.d, u[2] / inv.d), std::gcd(u[0] / inv.d, u[1] / inv.d)};
  const std::int64_t dsum = inv.d_i[0] + inv.d_i[1] + inv.d_i[2];
  inv.u = inv.d * inv.d_i[0] * inv.d_i[1] * inv.d_i[2];
  inv.gamma = inv.d * dsum;
  const std::int64_t twice = inv.d * (inv.u - dsum);
  if (twice % 2 != 0) throw Error(ErrorKind::NonIntegralGenus, "d(u − Σd_i) is odd");
  inv.genus = twice / 2 + 1;
  if (inv.genus < 0) throw Error(ErrorKind::NonIntegralGenus, "negative genus");
  return inv;
}

IMat trinomial_R(const TrinomialData& t) {
  auto vars = variables(t);
  IMat R(2, vars.size());
  for (std::size_t k = 0; k < vars.size(); ++k) {
    const auto& v = vars[k];
    if (v.block == 0) R(0, k) = R(1, k) = -v.n;
    if (v.block == 1) R(0, k) = v.n;
    if (v.block == 2) R(1, k) = v.n;
  }
  return R;
}

AffineTrinomialResult affine_trinomial_poincare(const TrinomialData& t) {
  AffineTrinomialResult res;
  res.inv = trinomial_invariants(t);
  const auto& inv = res.inv;
  const IMat R = trinomial_R(t);
  IMat F = t.F ? *t.F : integer_kernel(R);
  check_weight_matrix(R, F);
  res.package = build_weight_package(F, t.S, R);
  res.sigma_theta = res.package.sigma_theta;
  const Cone& sigma = res.sigma_theta;

  auto vars = variables(t);
  for (std::size_t k = 0; k < vars.size(); ++k)
    res.gamma_points[static_cast<std::size_t>(vars[k].block)].push_back(gamma_point(res.package.S(), k, inv, vars[k]));

  res.divisor = trinomial_divisor(trinomial_curve(inv), sigma, res.gamma_points, inv);
  IntPolynomial lead({1 - inv.gamma, inv.d * inv.u - inv.gamma + 2, 1});
  res.P_tilde = lead * g_poly(sigma);
  for (std::size_t i = 0; i < 3; ++i) {
    res.Pi[i] = cayley_cone(res.divisor.coefficient(trinomial_point_label(static_cast<int>(i) + 1, 0)));
    res.P_tilde += (inv.d * inv.d_i[i]) * g_poly(res.Pi[i]);
  }
  if (res.P_tilde != g_divisor(res.divisor))
    throw Error(ErrorKind::InternalInconsistency, "closed form disagrees with g_D for the trinomial divisor");

  res.H = closed_form_H(sigma, res.gamma_points, inv);
  IntPolynomial corr;
  for (const auto& tau : res.H)
    if (auto g = top_g_number(tau)) corr += IntPolynomial::monomial(g, static_cast<std::size_t>(tau.dim() + 1));
  res.P_X = res.P_tilde - corr;
  return res;
}

ProjectiveTrinomialResult projective_trinomial_poincare(const TrinomialData& t) {
  ProjectiveTrinomialResult res;
  res.inv = trinomial_invariants(t);
  const auto& inv = res.inv;
  std::int64_t s0 = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    std::int64_t s = std::accumulate(t.exponents[i].begin(), t.exponents[i].end(), std::int64_t{0});
    if (i == 0) s0 = s;
    if (s != s0) throw Error(ErrorKind::NotHomogeneous, "monomial degrees differ");
    if (t.exponents[i].size() < 2) throw Error(ErrorKind::NotRelevant, "monomial " + std::to_string(i + 1) + " has fewer than two variables");
  }

  // θ is the package of the chart T_{1,1} ≠ 0; its P̂ is the full R-matrix.
  const IMat Rhat = trinomial_R(t);
  const IMat P = Rhat.without_col(0);
  IMat F = t.F ? *t.F : integer_kernel(P);
  check_weight_matrix(P, F);
  res.package = build_weight_package(F, t.S, P);
  if (!(enhanced_P(res.package) == Rhat)) throw Error(ErrorKind::InternalInconsistency, "enhanced P differs from the R-matrix");
  res.charts = enhance(res.package);

  const auto vars = variables(t);
  const CurveData curve = trinomial_curve(inv);
  res.divfan.curve = curve;
  std::set<std::string> seen;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const auto& chart = res.charts[v];
    std::array<std::vector<QVec>, 3> gamma;
    for (std::size_t w = 0; w < vars.size(); ++w) {
      if (w == v) continue;
      gamma[static_cast<std::size_t>(vars[w].block)].push_back(gamma_point(chart.S(), w < v ? w : w - 1, inv, vars[w]));
    }
    res.divfan.divisors.push_back(trinomial_divisor(curve, chart.sigma_theta, gamma, inv));
    for (const auto& tau : closed_form_H(chart.sigma_theta, gamma, inv))
      if (seen.insert(tau.key()).second) res.H_union.push_back(tau);
  }

  res.Sigma_theta = tail_fan(res.divfan);
  res.h_Sigma = h_poly(res.Sigma_theta);
  IntPolynomial lead({1 - inv.gamma, inv.d * inv.u - inv.gamma + 2, 1 - inv.gamma});
  res.P_tilde = lead * res.h_Sigma;
  for (std::size_t i = 0; i < 3; ++i) {
    res.Sigma_i[i] = sigma_z_fan(res.divfan, trinomial_point_label(static_cast<int>(i) + 1, 0));
    res.h_Sigma_i[i] = h_poly(res.Sigma_i[i]);
    res.P_tilde += (inv.d * inv.d_i[i]) * res.h_Sigma_i[i];
  }

  // Orbit closures over the exceptional locus are projective spaces of dimension n − dim τ, n = ℓ − 2.
  const int n = static_cast<int>(vars.size()) - 3;
  IntPolynomial corr;
  for (const auto& tau : res.H_union)
    if (auto g = top_g_number(tau))
      corr += IntPolynomial::monomial(g, static_cast<std::size_t>(tau.dim() + 1)) * projective_space_poincare(n - tau.dim());
  if (!corr.is_even() || !corr.nonnegative())
    throw Error(ErrorKind::InternalInconsistency, "trinomial correction " + corr.to_string() + " is not even and nonnegative");
  res.P_X = res.P_tilde - corr;
  return res;
}

}  // namespace ihcoh

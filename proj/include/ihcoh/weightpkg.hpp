#pragma once

#include <optional>
#include <vector>

#include "ihcoh/fans.hpp"

namespace ihcoh {

// θ = (Z^ℓ, Z^n, F, S, Σ) with cokernel map P. Σ lives in Q^s, s = ℓ − n, in the coordinates of P.
struct WeightPackage {
  std::size_t ell = 0, n = 0;
  MatrixFactorization mf;
  Fan quotient_fan;
  Cone sigma_theta;  // S(δ ∩ F(N_Q))

  const IMat& F() const { return mf.F; }
  const IMat& S() const { return mf.S; }
  const IMat& P() const { return mf.P; }
  std::size_t s() const { return ell - n; }
};

// Throws NotInjective, NotSaturated, SuppliedSectionInvalid, NotStrictlyConvex (σ_θ).
WeightPackage build_weight_package(const IMat& F, const std::optional<IMat>& S = std::nullopt,
                                   const std::optional<IMat>& P = std::nullopt);

// Fan generated by the strictly convex images P(δ₀) over faces δ₀ of `delta`.
Fan image_fan(const IMat& P, const Cone& delta);

// δ ∩ F(N_Q) = {x ≥ 0, P x = 0}.
Cone orthant_kernel_cone(const WeightPackage& w);

struct DThetaCoefficient {
  IVec ray;        // primitive in Z^s
  IVec v_rho;      // primitive along the ray in the lattice P(Z^ℓ)
  Polyhedron coefficient;
};
// S(δ ∩ P⁻¹(v_ρ)) for every ray of Σ; the tail of each is σ_θ.
std::vector<DThetaCoefficient> dtheta_coefficients(const WeightPackage& w);

// P̂ = [b₀ | P] and Ŝ = [s₀ | S] with zero row sums.
IMat enhanced_P(const WeightPackage& w);
IMat enhanced_S(const WeightPackage& w);
// θ^{(0)} = θ, then θ^{(v)} for v = 1…ℓ.
std::vector<WeightPackage> enhance(const WeightPackage& w);

// Maximal cone δ^{(i)} of the fan of P^ℓ: δ^{(0)} is the orthant, δ^{(i)} replaces e_i by −Σe_j.
Cone projective_chart_cone(std::size_t ell, std::size_t i);

struct LiftingFan {
  Fan delta;
  IMat Q;  // columns are the primitive rays of delta
};
// Fan generated by P⁻¹(τ) ∩ support over τ ∈ target.
Fan lift_fan(const IMat& P, const Fan& target, const Cone& support);
LiftingFan lifting_fan(const WeightPackage& w);
// Fan generated by the per-chart lifts Δ^{(i)}: their common refinement, complete in Q^ℓ.
Fan enhanced_lifting_fan(const WeightPackage& w);
std::vector<Fan> chart_lifting_fans(const WeightPackage& w);

// Whether every cone of `delta` maps into some cone of `target` under P.
bool is_fan_morphism(const Fan& delta, const Fan& target, const IMat& P);

}  // namespace ihcoh

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ihcoh/tvar.hpp"
#include "ihcoh/weightpkg.hpp"

namespace ihcoh {

enum class Ambient { Affine, Projective };

// V(T₁^{n₁} + T₂^{n₂} + T₃^{n₃}); variables are numbered block by block.
struct TrinomialData {
  std::array<std::vector<std::int64_t>, 3> exponents;
  Ambient ambient = Ambient::Affine;
  std::optional<IMat> F, S;  // optional weight matrix and section, used verbatim when given

  std::size_t num_vars() const { return exponents[0].size() + exponents[1].size() + exponents[2].size(); }
};

struct TrinomialInvariants {
  std::array<std::int64_t, 3> u_i{}, d_i{};
  std::int64_t d = 0, u = 0, gamma = 0, genus = 0;
};
// Throws InvalidInput for empty blocks or nonpositive exponents, NonIntegralGenus.
TrinomialInvariants trinomial_invariants(const TrinomialData& t);

// The 2 × (#variables) matrix R with rows (−n₁ | n₂ | 0) and (−n₁ | 0 | n₃).
IMat trinomial_R(const TrinomialData& t);

struct AffineTrinomialResult {
  TrinomialInvariants inv;
  WeightPackage package;
  Cone sigma_theta;
  std::array<Cone, 3> Pi;
  std::array<std::vector<QVec>, 3> gamma_points;  // S(d/(d_i n_{i,j}) e_{i,j})
  PolyhedralDivisor divisor;                       // D̄_θ over C_{d₁,d₂,d₃}
  std::vector<Cone> H;                             // faces containing a weighted triple sum
  IntPolynomial P_tilde, P_X;
};
AffineTrinomialResult affine_trinomial_poincare(const TrinomialData& t);

struct ProjectiveTrinomialResult {
  TrinomialInvariants inv;
  WeightPackage package;                // θ of the chart T_{1,1} ≠ 0
  std::vector<WeightPackage> charts;    // θ^{(a,b)}, in variable order
  DivisorialFan divfan;                 // 𝓔_θ
  Fan Sigma_theta;                      // Σ(θ)
  std::array<Fan, 3> Sigma_i;           // Σ_i(θ) in rank n+1
  std::vector<Cone> H_union;            // closed-form union over charts
  IntPolynomial h_Sigma;
  std::array<IntPolynomial, 3> h_Sigma_i;
  IntPolynomial P_tilde, P_X;
};
// Throws NotHomogeneous, NotRelevant.
ProjectiveTrinomialResult projective_trinomial_poincare(const TrinomialData& t);

// Label of the k-th point of E_i (i = 1, 2, 3) on the curve.
std::string trinomial_point_label(int i, std::int64_t k);

}  // namespace ihcoh

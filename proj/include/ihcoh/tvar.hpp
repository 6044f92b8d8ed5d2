#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ihcoh/fans.hpp"
#include "ihcoh/ihpoly.hpp"

namespace ihcoh {

// Abstract smooth curve: only the numbers the formulas consume. `points` are the marked points of
// C that may carry nontrivial coefficients; `punctures` counts C̄ \ C.
struct CurveData {
  int genus = 0;
  bool complete = true;
  int punctures = 0;
  std::vector<std::string> points;

  bool has_point(const std::string& z) const;
};

// σ-polyhedral divisor. Points not in `coefficients` carry the tail σ. Inside a divisorial fan the
// divisor lives over C̄ minus `domain_excludes`.
struct PolyhedralDivisor {
  CurveData curve;
  Cone tail;
  std::map<std::string, Polyhedron> coefficients;
  std::vector<std::string> domain_excludes;

  Polyhedron coefficient(const std::string& z) const;
  bool in_domain(const std::string& z) const;
  // Points z with D_z ≠ σ, in label order.
  std::vector<std::string> support() const;
  // The divisor's own base curve is complete (complete curve and nothing excluded).
  bool over_complete_curve() const;
};

struct DivisorialFan {
  CurveData curve;
  std::vector<PolyhedralDivisor> divisors;
};

// Minkowski sum of all coefficients; nullopt when the base curve is not complete.
std::optional<Polyhedron> degree(const PolyhedralDivisor& d);

struct Violation {
  std::string kind;  // "schema", "tail", "face", "degree", "coverage"
  std::string detail;
  std::optional<std::string> point;
  int i = -1, j = -1;
};

struct DivFanReport {
  bool valid = true;
  bool complete_variety = false;
  std::vector<Violation> violations;
};

// Pairwise face condition at every marked point and at the generic point, the degree condition
// deg(D^i ∩ D^j) = σ_i ∩ σ_j ∩ deg D^j, and coverage of N_Q at every point. Never throws.
DivFanReport validate_divfan(const DivisorialFan& e);

IntPolynomial g_divisor(const PolyhedralDivisor& d);

// Σ(𝓔): the fan of the tails.
Fan tail_fan(const DivisorialFan& e);
// Σ_z(𝓔) in rank n+1 built from Cay(D^i_z) and σ_i × Q≤0. Throws SigmaZNotComplete.
Fan sigma_z_fan(const DivisorialFan& e, const std::string& z);

// `contraction` only documents intent: the formula reads the same marked points and coefficients
// whether or not the domains have been refined to an affine cover.
// Throws InvalidDivisorialFan, SigmaZNotComplete.
IntPolynomial h_divfan(const DivisorialFan& e, bool contraction = true);

struct HFEntry {
  Cone tau;
  Fan star;
};
// Cones of Σ(𝓔) meeting ⋃ deg D^i, each with its star over the HF cones containing it.
std::vector<HFEntry> hf_set(const DivisorialFan& e);
// Faces of the tail meeting deg D (empty when deg D is empty).
std::vector<Cone> hf_faces(const PolyhedralDivisor& d);

// g_{dim τ − 1}(τ), zero for τ = {0}.
std::int64_t top_g_number(const Cone& tau);

IntPolynomial poincare_complete(const DivisorialFan& e);
// Throws TailNotFullDim. Returns g_D when the curve is not complete.
IntPolynomial poincare_affine(const PolyhedralDivisor& d);

inline bool is_rational(const CurveData& c) { return c.genus == 0; }
inline bool is_rational(const DivisorialFan& e) { return is_rational(e.curve); }
inline bool is_rational(const PolyhedralDivisor& d) { return is_rational(d.curve); }

}  // namespace ihcoh

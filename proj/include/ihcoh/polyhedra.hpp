#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ihcoh/linalg.hpp"

namespace ihcoh {

// Extreme rays and lineality basis of {x : A x >= 0, E x = 0}.
struct DDResult {
  std::vector<IVec> lineality;
  std::vector<IVec> rays;
};
DDResult double_description(std::size_t n, const std::vector<IVec>& ineqs, const std::vector<IVec>& eqs = {});

// Rational polyhedral cone with both descriptions kept in canonical form:
// rays primitive and sorted; equations a canonical basis of span^⊥; facets primitive inward
// normals reduced modulo the equations and sorted. For cones with lineality, `rays` is a
// generating set modulo the lineality space and is not canonical.
class Cone {
 public:
  Cone() = default;
  static Cone from_generators(std::size_t rank, const std::vector<IVec>& gens);
  static Cone from_inequalities(std::size_t rank, const std::vector<IVec>& ineqs, const std::vector<IVec>& eqs = {});
  static Cone zero(std::size_t rank);
  static Cone orthant(std::size_t rank);

  std::size_t rank() const { return rank_; }
  int dim() const { return dim_; }
  const std::vector<IVec>& rays() const { return rays_; }
  const std::vector<IVec>& facets() const { return facets_; }
  const std::vector<IVec>& equations() const { return equations_; }
  const std::vector<IVec>& lineality() const { return lineality_; }
  bool strictly_convex() const { return lineality_.empty(); }
  bool full_dimensional() const { return dim_ == static_cast<int>(rank_); }
  bool is_simplicial() const { return strictly_convex() && static_cast<int>(rays_.size()) == dim_; }

  bool contains(const IVec& x) const;
  bool contains(const QVec& x) const;
  bool contains(const Cone& c) const;
  bool in_relative_interior(const QVec& x) const;

  // Ray-index sets of all faces, ordered by dimension then lexicographically. Requires strict convexity.
  std::vector<std::vector<int>> face_sets() const;
  std::vector<int> face_dims() const;  // parallel to face_sets()
  Cone face(const std::vector<int>& ray_indices) const;
  // Ray indices tight at facet j.
  std::vector<int> tight_rays(std::size_t facet) const;

  bool operator==(const Cone& o) const;
  bool operator!=(const Cone& o) const { return !(*this == o); }
  std::string key() const;

 private:
  std::size_t rank_ = 0;
  int dim_ = 0;
  std::vector<IVec> rays_, facets_, equations_, lineality_;
};

Cone dual_cone(const Cone& c);
// All faces including {0} and c, graded by dimension. Throws NotStrictlyConvex.
std::vector<Cone> faces(const Cone& c);
// Whether `small` is a face of `big`.
bool is_face_of(const Cone& small, const Cone& big);
Cone intersect(const Cone& a, const Cone& b);
// Cone generated by the images of the generators (lineality generators included).
Cone linear_image(const Cone& c, const IMat& m);
Cone linear_image(const Cone& c, const QMat& m);
// {x : M x in c} intersected with the cone given by `within` (pass the full space to skip).
Cone preimage(const Cone& c, const IMat& m, const Cone& within);

// σ-polyhedron: conv(vertices) + tail, stored through its homogenization
// Cone(P×{1} ∪ tail×{0}) in rank n+1.
class Polyhedron {
 public:
  Polyhedron() = default;
  static Polyhedron make(std::size_t rank, const std::vector<QVec>& points, const std::vector<IVec>& rays);
  static Polyhedron point(const QVec& p);
  static Polyhedron from_cone(const Cone& c);
  // Height-one slice of a cone contained in {h >= 0}; nullopt when the slice is empty.
  static std::optional<Polyhedron> from_homogenization(const Cone& hom);

  std::size_t rank() const { return rank_; }
  const std::vector<QVec>& vertices() const { return vertices_; }
  const Cone& tail() const { return tail_; }
  const Cone& homogenization() const { return hom_; }
  bool is_bounded() const { return tail_.dim() == 0; }
  bool contains(const QVec& x) const;
  // True when the polyhedron is its tail cone (single vertex at the origin).
  bool equals_tail() const;

  bool operator==(const Polyhedron& o) const { return rank_ == o.rank_ && hom_ == o.hom_; }
  bool operator!=(const Polyhedron& o) const { return !(*this == o); }

 private:
  std::size_t rank_ = 0;
  std::vector<QVec> vertices_;
  Cone tail_, hom_;
};

Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b);
std::optional<Polyhedron> intersect(const Polyhedron& a, const Polyhedron& b);

struct Feasibility {
  bool nonempty = false;
  QVec witness;
};
Feasibility intersect_nonempty(const Polyhedron& a, const Polyhedron& b);
Feasibility intersect_nonempty(const Polyhedron& a, const Cone& b);
Feasibility intersect_nonempty(const Cone& a, const Cone& b);

Polyhedron image(const Polyhedron& p, const IMat& m);
// Cone(σ×{0} ∪ Λ×{1}) in rank n+1.
Cone cayley_cone(const Polyhedron& lam);
// Whether `small` is a nonempty face of `big`.
bool is_face_of(const Polyhedron& small, const Polyhedron& big);

std::string to_string(const IVec& v);
std::string to_string(const QVec& v);

}  // namespace ihcoh

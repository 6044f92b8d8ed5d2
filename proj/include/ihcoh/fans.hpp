#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ihcoh/polyhedra.hpp"

namespace ihcoh {

// A fan with its full face closure computed at construction. Cones are identified by sorted
// index sets into the global ray list; all_cones() is graded by dimension, then lexicographic.
class Fan {
 public:
  struct Cell {
    std::vector<int> rays;
    int dim = 0;
    Cone cone;
  };

  Fan() = default;

  std::size_t rank() const { return rank_; }
  const std::vector<IVec>& rays() const { return rays_; }
  const std::vector<std::vector<int>>& maximal_cones() const { return maximal_; }
  std::vector<Cone> maximal() const;
  const std::vector<Cell>& all_cones() const { return cells_; }
  int dim() const;

  bool is_complete() const { return complete_; }
  bool is_simplicial() const { return simplicial_; }
  bool is_pure() const;
  // f[d] = number of d-dimensional cones.
  std::vector<std::size_t> f_vector() const;

  std::optional<std::size_t> index_of(const Cone& c) const;
  std::string key() const;
  bool operator==(const Fan& o) const {
    return rank_ == o.rank_ && rays_ == o.rays_ && maximal_ == o.maximal_;
  }

 private:
  friend Fan build_fan(std::size_t rank, const std::vector<Cone>& cones);
  std::size_t rank_ = 0;
  std::vector<IVec> rays_;
  std::vector<std::vector<int>> maximal_;
  std::vector<Cell> cells_;
  bool complete_ = false, simplicial_ = true;
};

// Validates that the cones and their faces form a fan. Inputs that are faces of other inputs are
// absorbed. Throws NotStrictlyConvex, NotAFan, RankMismatch.
Fan build_fan(std::size_t rank, const std::vector<Cone>& cones);
inline bool is_complete(const Fan& f) { return f.is_complete(); }

// Fan in N/N(τ) formed by the images of the cones having τ as a face. Throws TauNotInFan.
Fan star_fan(const Fan& f, const Cone& tau);
// Same, for the fan generated by a set of cones.
Fan star_fan(std::size_t rank, const std::vector<Cone>& cones, const Cone& tau);

// Normal fan of the cross-section polytope of σ^∨ cut by ⟨·,v⟩ = 1, living in span(σ)/Q·v.
// nullopt when dim σ ≤ 2. The one-argument form uses v = sum of the primitive rays.
std::optional<Fan> normal_fan_of_cone(const Cone& sigma);
std::optional<Fan> normal_fan_of_cone(const Cone& sigma, const IVec& interior);

// Coarsest fan we can certify whose cells cover each input cone exactly: the arrangement of all
// input facet and equation hyperplanes cuts the inputs into cells, and neighbouring cells are then
// merged greedily while the result stays a fan and every input remains a union of cells.
// Returns build_fan(inputs) when the inputs already form a fan.
Fan generated_fan(std::size_t rank, const std::vector<Cone>& cones);

}  // namespace ihcoh

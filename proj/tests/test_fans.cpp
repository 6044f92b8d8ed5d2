#include <random>

#include "doctest.h"
#include "ihcoh/fans.hpp"
#include "oracles.hpp"

using namespace ihcoh;

namespace {

IVec iv(std::initializer_list<long> xs) {
  IVec v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

Cone cone(std::size_t n, std::initializer_list<std::initializer_list<long>> gens) {
  std::vector<IVec> g;
  for (auto x : gens) g.push_back(iv(x));
  return Cone::from_generators(n, g);
}

std::set<std::vector<IVec>> cone_set(const Fan& f) {
  std::set<std::vector<IVec>> s;
  for (const auto& c : f.maximal()) s.insert(c.rays());
  return s;
}

std::set<std::vector<IVec>> cone_set(const std::vector<Cone>& cs) {
  std::set<std::vector<IVec>> s;
  for (const auto& c : cs) s.insert(c.rays());
  return s;
}

}  // namespace

TEST_CASE("fan of the projective line") {
  Fan f = build_fan(1, {cone(1, {{1}}), cone(1, {{-1}}), Cone::zero(1)});
  CHECK(f.is_complete());
  CHECK(f.is_simplicial());
  CHECK(f.maximal_cones().size() == 2);
  CHECK(f.all_cones().size() == 3);
}

TEST_CASE("fan from the curves-on-surfaces example") {
  std::vector<Cone> cs = {cone(2, {{1, 0}, {1, 1}}), cone(2, {{1, 1}, {0, 1}}), cone(2, {{0, 1}, {-1, -2}}),
                          cone(2, {{-1, -2}, {0, -1}}), cone(2, {{0, -1}, {1, 0}})};
  Fan f = build_fan(2, cs);
  CHECK(f.is_complete());
  CHECK(f.is_simplicial());
  CHECK(f.rays().size() == 5);
  CHECK(f.f_vector() == std::vector<std::size_t>{1, 5, 5});
}

TEST_CASE("overlapping cones are not a fan") {
  try {
    build_fan(2, {cone(2, {{1, 0}, {1, 2}}), cone(2, {{1, 1}, {0, 1}})});
    FAIL("expected NotAFan");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAFan);
  }
  // A cone strictly inside another without being a face.
  CHECK_THROWS_AS(build_fan(2, {cone(2, {{1, 0}, {0, 1}}), cone(2, {{1, 1}})}), Error);
  try {
    build_fan(2, {Cone::from_inequalities(2, {iv({1, 0})})});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotStrictlyConvex);
  }
}

TEST_CASE("completeness predicate") {
  CHECK(oracle::projective_space_fan(2).is_complete());
  Fan quad = build_fan(2, {Cone::orthant(2)});
  CHECK_FALSE(quad.is_complete());
  CHECK_FALSE(build_fan(2, {cone(2, {{1, 0}, {0, 1}}), cone(2, {{0, 1}, {-1, 0}})}).is_complete());
  CHECK(build_fan(0, {Cone::zero(0)}).is_complete());
}

TEST_CASE("build_fan is idempotent and absorbs faces") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    Fan f = oracle::random_face_fan(rng, 2 + static_cast<std::size_t>(trial % 2), 4);
    Fan g = build_fan(f.rank(), f.maximal());
    CHECK(f == g);
    std::vector<Cone> all;
    for (const auto& c : f.all_cones()) all.push_back(c.cone);
    CHECK(build_fan(f.rank(), all) == f);
  }
}

TEST_CASE("star fans") {
  Fan p2 = oracle::projective_space_fan(2);
  CHECK(star_fan(p2, Cone::zero(2)) == p2);
  Cone top = p2.maximal().front();
  Fan s = star_fan(p2, top);
  CHECK(s.rank() == 0);
  CHECK(s.is_complete());
  Fan sr = star_fan(p2, cone(2, {{1, 0}}));
  CHECK(sr.rank() == 1);
  CHECK(sr.is_complete());
  CHECK(sr.maximal_cones().size() == 2);
  CHECK_THROWS_AS(star_fan(p2, cone(2, {{1, 1}})), Error);

  // Ray of σ_θ from the affine quadric: the star is the image of σ_θ, a 2-dimensional cone.
  Cone st = cone(3, {{2, 1, 0}, {2, 1, 2}, {0, 1, 2}, {0, 1, 0}});
  Fan fs = build_fan(3, {st});
  Fan star = star_fan(fs, cone(3, {{0, 1, 0}}));
  CHECK(star.rank() == 2);
  CHECK(star.maximal_cones().size() == 1);
  CHECK(star.maximal().front().dim() == 2);
  CHECK(star.is_simplicial());
}

TEST_CASE("star dimension drop equals dim τ") {
  std::mt19937 rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    Fan f = oracle::random_face_fan(rng, 3, 3);
    for (const auto& c : f.all_cones()) {
      Fan s = star_fan(f, c.cone);
      CHECK(s.rank() == f.rank() - static_cast<std::size_t>(c.dim));
      CHECK(s.is_complete());
    }
  }
}

TEST_CASE("normal fans of cones") {
  CHECK_FALSE(normal_fan_of_cone(cone(3, {{1, 0, 0}, {0, 1, 0}})).has_value());
  auto sq = normal_fan_of_cone(cone(3, {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}}));
  REQUIRE(sq.has_value());
  CHECK(sq->is_complete());
  CHECK(sq->maximal_cones().size() == 4);
  auto tri = normal_fan_of_cone(Cone::orthant(3));
  REQUIRE(tri.has_value());
  CHECK(tri->maximal_cones().size() == 3);
  CHECK(tri->is_complete());
}

TEST_CASE("normal fan combinatorics are independent of the cross-section") {
  std::mt19937 rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial % 2);
    Cone c = oracle::random_full_cone(rng, n, n + 2);
    auto a = normal_fan_of_cone(c);
    IVec v(n, 0);
    for (std::size_t i = 0; i < c.rays().size(); ++i) v = add(v, scale(Int(static_cast<long>(i) + 1), c.rays()[i]));
    auto b = normal_fan_of_cone(c, v);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->is_complete());
    CHECK(a->f_vector() == b->f_vector());
    // Maximal cones biject with the vertices of the cross-section, i.e. the facets of σ.
    CHECK(a->maximal_cones().size() == c.facets().size());
  }
}

TEST_CASE("generated fans") {
  Fan p1 = build_fan(1, {cone(1, {{1}}), cone(1, {{-1}})});
  CHECK(generated_fan(1, p1.maximal()) == p1);

  // Images of faces of the orthant under the chart-0 P-matrix of the cubic surface.
  IMat p = IMat::from_rows({iv({1, 1, 0}), iv({1, 0, 3})}, 3);
  std::vector<Cone> imgs;
  for (const auto& f : faces(Cone::orthant(3))) imgs.push_back(linear_image(f, p));
  Fan s0 = generated_fan(2, imgs);
  CHECK(cone_set(s0) == cone_set({cone(2, {{1, 0}, {1, 1}}), cone(2, {{0, 1}, {1, 1}})}));

  CHECK_THROWS_AS(generated_fan(2, {}), Error);
  try {
    generated_fan(2, {Cone::from_inequalities(2, {iv({1, 0})})});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LinealityInInput);
  }
}

TEST_CASE("generated fan support equals the union of the inputs") {
  std::mt19937 rng(55);
  std::uniform_int_distribution<int> ent(-4, 4);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 2);
    std::vector<Cone> in;
    for (int k = 0; k < 3; ++k) in.push_back(oracle::random_full_cone(rng, n, n + 1, 3));
    Fan g = generated_fan(n, in);
    // Every cell lies in some input, and every input is a union of cells: sample lattice points.
    for (const auto& c : g.maximal()) {
      IVec mid(n, 0);
      for (const auto& r : c.rays()) mid = add(mid, r);
      bool in_some = false;
      for (const auto& x : in) in_some = in_some || x.contains(mid);
      CHECK(in_some);
    }
    for (int s = 0; s < 40; ++s) {
      IVec x = oracle::random_vec(rng, n, -5, 5);
      bool in_inputs = false, in_fan = false;
      for (const auto& c : in) in_inputs = in_inputs || c.contains(x);
      for (const auto& c : g.maximal()) in_fan = in_fan || c.contains(x);
      CHECK(in_inputs == in_fan);
      // Each input containing x contains a whole cell around x.
      for (const auto& c : in) {
        if (!c.contains(x)) continue;
        bool covered = false;
        for (const auto& cell : g.all_cones())
          if (cell.cone.in_relative_interior(to_rational(x))) covered = c.contains(cell.cone);
        CHECK(covered);
      }
    }
  }
}

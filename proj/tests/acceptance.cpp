// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.
// Every comparison is exact integer or rational equality; there are no numeric tolerances.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ihcoh;
using fx::P;

namespace {

constexpr double kTimeBudgetSeconds = 30.0;

// Collects failed checks of one criterion; the first few are printed after the verdict line.
struct Gate {
  std::vector<std::string> failures;
  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

TrinomialData trinomial(const std::string& file) { return trinomial_from_json(fx::load(file)); }

IVec weighted_interior(const Cone& c) {
  IVec v(c.rank(), 0);
  for (std::size_t i = 0; i < c.rays().size(); ++i) v = add(v, scale(Int(static_cast<long>(i) + 1), c.rays()[i]));
  return v;
}

const std::vector<std::string> kAffineTrinomials = {"quadric.json", "x2y2z2.json", "xyz.json"};
const std::vector<std::string> kProjectiveTrinomials = {"fourfold.json", "smooth_quadric_fourfold.json",
                                                        "genus2_projective.json"};
const std::vector<std::string> kDivisors = {"quadric_divisor.json", "affine_line_divisor.json"};
const std::vector<std::string> kDivFans = {"cubic_divfan.json"};

void small_dimensions(Gate& g) {
  std::mt19937 rng(1001);
  std::uniform_int_distribution<int> k_rays(3, 8);
  for (int i = 0; i < 50; ++i) {
    const std::size_t k = static_cast<std::size_t>(k_rays(rng));
    Fan f = oracle::random_complete_rank2(rng, k);
    const std::int64_t mid = static_cast<std::int64_t>(f.rays().size()) - 2;
    g.check(h_poly(f) == P({1, 0, mid, 0, 1}), "rank-2 fan #" + std::to_string(i));
  }
  for (int i = 0; i < 50; ++i) {
    Cone c = oracle::random_full_cone(rng, 3, 3 + static_cast<std::size_t>(i % 5));
    const std::int64_t mid = static_cast<std::int64_t>(c.rays().size()) - 3;
    g.check(g_poly(c) == P({1, 0, mid}), "rank-3 cone #" + std::to_string(i));
  }
  for (int i = 0; i < 30; ++i) {
    Cone c = oracle::random_full_cone(rng, 4, 4 + static_cast<std::size_t>(i % 4), 3);
    const std::int64_t mid = static_cast<std::int64_t>(c.rays().size()) - 4;
    g.check(g_poly(c) == P({1, 0, mid}), "rank-4 cone #" + std::to_string(i));
  }
}

void affine_quadric(Gate& g) {
  auto r = affine_trinomial_poincare(trinomial("quadric.json"));
  g.check(r.P_tilde == P({1, 0, 4, 0, 1}), "P_tilde = " + r.P_tilde.to_string());
  g.check(r.P_X == P({1}), "P_X = " + r.P_X.to_string());
  g.check(g_poly(r.sigma_theta) == P({1, 0, 1}), "g(sigma_theta)");
  g.check(g_poly(r.Pi[0]) == P({1, 0, 2}), "g(Pi_1)");
  g.check(g_poly(r.Pi[1]) == P({1, 0, 2}), "g(Pi_2)");
  g.check(g_poly(r.Pi[2]) == P({1, 0, 1}), "g(Pi_3)");
}

void projective_fourfold(Gate& g) {
  auto r = projective_trinomial_poincare(trinomial("fourfold.json"));
  g.check(fx::parity_coeffs(r.P_tilde, 0) == std::vector<std::int64_t>{1, 15, 28, 15, 1}, "even part of P_tilde");
  g.check(fx::parity_coeffs(r.P_X, 0) == std::vector<std::int64_t>{1, 7, 14, 7, 1}, "even part of P_X");
  g.check(r.h_Sigma == P({1, 0, 5, 0, 5, 0, 1}), "h(Sigma(theta))");
  for (std::size_t i = 0; i < 3; ++i) {
    const Fan& s = r.Sigma_i[i];
    g.check(r.h_Sigma_i[i] == P({1, 0, 7, 0, 12, 0, 7, 0, 1}), "h(Sigma_i) for i = " + std::to_string(i + 1));
    g.check(s.f_vector() == std::vector<std::size_t>{1, 11, 29, 30, 12}, "f-vector of Sigma_i");
    // Cones counted by (dimension, number of rays).
    std::map<std::pair<int, std::size_t>, int> by_type;
    for (const auto& c : s.all_cones()) ++by_type[{c.dim, c.rays.size()}];
    const std::map<std::pair<int, std::size_t>, int> table = {{{0, 0}, 1},  {{1, 1}, 11}, {{2, 2}, 29}, {{3, 3}, 20},
                                                              {{3, 4}, 10}, {{4, 5}, 8},  {{4, 6}, 4}};
    g.check(by_type == table, "cone types of Sigma_i");
  }
  // Odd part is 2g·t·h(Σ(θ)); the reference values (1,5,5,1) in the fixture are half of it.
  g.check(fx::parity_coeffs(r.P_X, 1) == std::vector<std::int64_t>{2, 10, 10, 2}, "odd part of P_X");
  g.check(r.P_X.odd_part() == P({0, 2 * r.inv.genus}) * r.h_Sigma, "odd part equals 2g t h(Sigma(theta))");
}

void weight_tables(Gate& g) {
  WeightInput wi = weights_from_json(fx::load("cubic_chart0.json"));
  WeightPackage w = build_weight_package(wi.F, wi.S, wi.P);
  auto charts = enhance(w);
  if (charts.size() != 4) {
    g.check(false, "expected four charts");
    return;
  }
  const std::vector<IMat> F = {fx::im({{-3}, {3}, {1}}, 1), fx::im({{3}, {6}, {4}}, 1),
                               fx::im({{-3}, {-6}, {-2}}, 1), fx::im({{-1}, {-4}, {2}}, 1)};
  const std::vector<IMat> S = {fx::im({{0, 1, -2}}, 3), fx::im({{1, 1, -2}}, 3), fx::im({{1, 0, -2}}, 3),
                               fx::im({{1, 0, 1}}, 3)};
  const IMat Phat = fx::im({{-2, 1, 1, 0}, {-4, 1, 0, 3}}, 4);
  g.check(enhanced_P(w) == Phat, "enhanced P");
  g.check(enhanced_S(w) == fx::im({{1, 0, 1, -2}}, 4), "enhanced S");
  auto C2 = [](std::initializer_list<std::initializer_list<long>> gens) { return fx::cone(2, gens); };
  const std::vector<std::vector<Cone>> sigma = {
      {C2({{1, 0}, {1, 1}}), C2({{0, 1}, {1, 1}})},
      {C2({{1, 0}, {0, 1}}), C2({{1, 0}, {-1, -2}}), C2({{0, 1}, {-1, -2}})},
      {C2({{1, 1}, {0, 1}}), C2({{1, 1}, {-1, -2}}), C2({{0, 1}, {-1, -2}})},
      {C2({{1, 1}, {1, 0}}), C2({{1, 0}, {-1, -2}})},
  };
  for (std::size_t i = 0; i < 4; ++i) {
    const std::string tag = " of chart " + std::to_string(i);
    g.check(charts[i].F() == F[i], "F" + tag);
    g.check(charts[i].S() == S[i], "S" + tag);
    g.check(charts[i].P() == Phat.without_col(i), "P" + tag);
    g.check(fx::maximal_keys(charts[i].quotient_fan) == fx::keys(sigma[i]), "quotient fan" + tag);
  }

  const IVec e1 = fx::iv({1, 0, 0}), e2 = fx::iv({0, 1, 0}), e3 = fx::iv({0, 0, 1}), e = fx::iv({-1, -1, -1});
  const IVec v0 = fx::iv({0, 3, 1}), v1 = fx::iv({-3, 3, 1}), v2 = fx::iv({3, -3, -1}), v3 = fx::iv({3, -1, -1});
  auto C3 = [](std::vector<IVec> gens) { return Cone::from_generators(3, gens); };
  const std::vector<std::vector<Cone>> delta = {
      {C3({e1, e2, v0}), C3({e1, e3, v0})},
      {C3({e, e2, v1}), C3({e2, e3, v1}), C3({e, e3, v1})},
      {C3({e1, e, v2}), C3({e1, e3, v2}), C3({e, e3, v2})},
      {C3({e1, e2, v3}), C3({e2, e, v3})},
  };
  auto per_chart = chart_lifting_fans(w);
  std::vector<Cone> listed;
  for (std::size_t i = 0; i < 4 && i < per_chart.size(); ++i) {
    g.check(fx::maximal_keys(per_chart[i]) == fx::keys(delta[i]), "Delta^(" + std::to_string(i) + ")");
    listed.insert(listed.end(), delta[i].begin(), delta[i].end());
  }
  // The glued fan refines the tables: complete, and every maximal cone sits inside a listed cone.
  Fan bar = enhanced_lifting_fan(w);
  g.check(bar.is_complete(), "enhanced lifting fan is complete");
  for (const auto& m : bar.maximal()) {
    bool inside = false;
    for (const auto& c : listed) inside |= c.contains(m);
    g.check(inside, "enhanced lifting fan cone outside the Delta table");
  }

  WeightInput wx = weights_from_json(fx::load("ex425.json"));
  LiftingFan lf = lifting_fan(build_weight_package(wx.F, wx.S, wx.P));
  const IVec a = fx::iv({1, 0, 0}), b = fx::iv({1, 1, 0}), c = fx::iv({0, 1, 0}), d = fx::iv({0, 0, 1});
  g.check(fx::maximal_keys(lf.delta) == fx::keys({C3({a, b, d}), C3({b, c, d})}), "Delta of the plane section");
  std::set<IVec> cols;
  for (std::size_t j = 0; j < lf.Q.cols(); ++j) cols.insert(lf.Q.col(j));
  g.check(lf.Q.rows() == 3 && cols == std::set<IVec>{a, b, c, d}, "Q of the plane section");
}

void property_suite(Gate& g) {
  std::mt19937 rng(2024);
  std::vector<Fan> corpus;
  for (int i = 0; i < 80; ++i) corpus.push_back(oracle::random_complete_rank2(rng, 3 + static_cast<std::size_t>(i % 7)));
  for (int i = 0; i < 90; ++i) corpus.push_back(oracle::random_face_fan(rng, 3, 2 + static_cast<std::size_t>(i % 4)));
  for (int i = 0; i < 30; ++i) corpus.push_back(oracle::random_face_fan(rng, 4, 1 + static_cast<std::size_t>(i % 2), 2));

  std::size_t simplicial = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Fan& f = corpus[i];
    const std::string tag = " on corpus fan #" + std::to_string(i);
    IntPolynomial h = h_poly(f);
    g.check(h.is_palindromic(), "(a) palindromic" + tag);
    if (f.is_simplicial()) {
      ++simplicial;
      g.check(h == oracle::fvector_h(f), "(b) f-vector h" + tag);
    }
    for (const auto& c : f.maximal()) {
      g.check(dual_cone(dual_cone(c)) == c, "(e) dual involutive" + tag);
      g.check(g_poly(c) == g_poly(c, weighted_interior(c)), "(e) cross-section invariance" + tag);
    }
  }
  g.check(simplicial >= 20, "(b) too few simplicial corpus fans: " + std::to_string(simplicial));

  auto even_nonneg = [&](const IntPolynomial& tilde, const IntPolynomial& px, const std::string& name) {
    const IntPolynomial d = tilde - px;
    g.check(d.is_even() && d.nonnegative(), "(c) P_tilde - P_X on " + name + ": " + d.to_string());
  };
  for (const auto& name : kAffineTrinomials) {
    auto r = affine_trinomial_poincare(trinomial(name));
    even_nonneg(r.P_tilde, r.P_X, name);
    g.check(fx::keys(r.H) == fx::keys(hf_faces(r.divisor)), "(d) H-set on " + name);
  }
  for (const auto& name : kProjectiveTrinomials) {
    auto r = projective_trinomial_poincare(trinomial(name));
    even_nonneg(r.P_tilde, r.P_X, name);
    std::set<std::string> hf;
    for (const auto& entry : hf_set(r.divfan)) hf.insert(entry.tau.key());
    g.check(fx::keys(r.H_union) == hf, "(d) H-set on " + name);
  }
  for (const auto& name : kDivisors) {
    PolyhedralDivisor d = divisor_from_json(fx::load(name));
    even_nonneg(g_divisor(d), poincare_affine(d), name);
  }
  for (const auto& name : kDivFans) {
    DivisorialFan e = divfan_from_json(fx::load(name));
    even_nonneg(h_divfan(e), poincare_complete(e), name);
  }

  std::uniform_int_distribution<int> len(1, 3), ex(1, 12);
  int tuples = 0;
  while (tuples < 100) {
    TrinomialData t;
    for (auto& block : t.exponents)
      for (int k = len(rng); k > 0; --k) block.push_back(ex(rng));
    TrinomialInvariants inv;
    try {
      inv = trinomial_invariants(t);
    } catch (const Error&) {
      continue;
    }
    ++tuples;
    g.check(inv.d * inv.u - inv.gamma + 2 == 2 * inv.genus, "(f) genus identity");
  }
}

void oracle_cases(Gate& g) {
  auto q = projective_trinomial_poincare(trinomial("smooth_quadric_fourfold.json"));
  g.check(q.P_X == P({1, 0, 1, 0, 2, 0, 1, 0, 1}), "smooth quadric fourfold: " + q.P_X.to_string());
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<std::int64_t> c(2 * n + 1, 0);
    for (std::size_t k = 0; k <= n; ++k) c[2 * k] = 1;
    g.check(h_poly(oracle::projective_space_fan(n)) == P(c), "P^" + std::to_string(n));
  }
  g.check(affine_trinomial_poincare(trinomial("x2y2z2.json")).P_X == P({1}), "x^2 + y^2 + z^2");
}

void rationality(Gate& g) {
  auto verdict = [&](std::int64_t genus, const IntPolynomial& px, const std::string& name) {
    const bool odd_vanish = px.odd_part().is_zero();
    g.check((genus == 0) == odd_vanish, name + ": genus " + std::to_string(genus) + ", P_X = " + px.to_string());
  };
  for (const auto& name : kProjectiveTrinomials) {
    auto r = projective_trinomial_poincare(trinomial(name));
    verdict(r.inv.genus, r.P_X, name);
    g.check(is_rational(r.divfan) == (r.inv.genus == 0), name + ": predicate disagrees with genus");
  }
  for (const auto& name : kDivFans) {
    DivisorialFan e = divfan_from_json(fx::load(name));
    verdict(e.curve.genus, poincare_complete(e), name);
  }
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::pair<std::string, std::function<void(Gate&)>>> criteria = {
      {"1 small-dimension g and h tables", small_dimensions},
      {"2 affine quadric trinomial", affine_quadric},
      {"3 projective fourfold trinomial", projective_fourfold},
      {"4 weight-package tables", weight_tables},
      {"5 property suite", property_suite},
      {"6 oracle cases", oracle_cases},
      {"7 rationality predicate", rationality},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Gate g;
    try {
      run(g);
    } catch (const std::exception& e) {
      g.failures.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (g.failures.empty() ? "PASS " : "FAIL ") << name << "\n";
    for (std::size_t i = 0; i < g.failures.size() && i < 5; ++i) std::cout << "     " << g.failures[i] << "\n";
    failed += !g.failures.empty();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("elapsed %.1f s (budget %.0f s)\n", secs, kTimeBudgetSeconds);
  if (secs > kTimeBudgetSeconds) {
    std::cout << "FAIL runtime budget exceeded\n";
    ++failed;
  }
  return failed == 0 ? 0 : 1;
}

#include "ihcoh/fans.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ihcoh {

namespace {

std::vector<IVec> rays_of(const std::vector<IVec>& global, const std::vector<int>& idx) {
  std::vector<IVec> out;
  for (int i : idx) out.push_back(global[static_cast<std::size_t>(i)]);
  return out;
}

// Separating-facet certificate that A ∩ B = cone(common): a facet of A nonpositive on B whose
// tight sets in both A and B are exactly the common rays.
bool separated_by_facet(const Cone& a, const Cone& b, const std::vector<IVec>& common) {
  for (const auto& f : a.facets()) {
    bool ok = true;
    std::vector<IVec> ta, tb;
    for (const auto& r : b.rays()) {
      Int v = dot(f, r);
      if (v > 0) {
        ok = false;
        break;
      }
      if (v == 0) tb.push_back(r);
    }
    if (!ok) continue;
    for (const auto& r : a.rays())
      if (dot(f, r) == 0) ta.push_back(r);
    if (ta == common && tb == common) return true;
  }
  return false;
}

bool meet_properly(const Cone& a, const Cone& b, const std::vector<IVec>& common) {
  if (separated_by_facet(a, b, common) || separated_by_facet(b, a, common)) return true;
  Cone c = intersect(a, b);
  return c.rays() == common && is_face_of(c, a) && is_face_of(c, b);
}

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::vector<Cone> Fan::maximal() const {
  std::vector<Cone> out;
  for (const auto& m : maximal_)
    for (const auto& c : cells_)
      if (c.rays == m) {
        out.push_back(c.cone);
        break;
      }
  return out;
}

int Fan::dim() const {
  int d = 0;
  for (const auto& c : cells_) d = std::max(d, c.dim);
  return d;
}

bool Fan::is_pure() const {
  const int d = dim();
  for (const auto& m : maximal_)
    if (static_cast<int>(ihcoh::rank(rays_of(rays_, m), rank_)) != d) return false;
  return true;
}

std::vector<std::size_t> Fan::f_vector() const {
  std::vector<std::size_t> f(static_cast<std::size_t>(dim()) + 1, 0);
  for (const auto& c : cells_) ++f[static_cast<std::size_t>(c.dim)];
  return f;
}

std::optional<std::size_t> Fan::index_of(const Cone& c) const {
  if (c.rank() != rank_ || !c.strictly_convex()) return std::nullopt;
  std::vector<int> idx;
  for (const auto& r : c.rays()) {
    auto it = std::lower_bound(rays_.begin(), rays_.end(), r);
    if (it == rays_.end() || *it != r) return std::nullopt;
    idx.push_back(static_cast<int>(it - rays_.begin()));
  }
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i].rays == idx) return i;
  return std::nullopt;
}

std::string Fan::key() const {
  std::string k = std::to_string(rank_) + "|";
  for (const auto& r : rays_) k += to_string(r);
  k += "|";
  for (const auto& m : maximal_) {
    k += "[";
    for (int i : m) k += std::to_string(i) + ",";
    k += "]";
  }
  return k;
}

Fan build_fan(std::size_t rank, const std::vector<Cone>& input) {
  std::vector<Cone> cones;
  {
    std::set<std::string> seen;
    for (const auto& c : input) {
      if (c.rank() != rank) throw Error(ErrorKind::RankMismatch, "cone of rank " + std::to_string(c.rank()) + " in a fan of rank " + std::to_string(rank));
      if (!c.strictly_convex()) throw Error(ErrorKind::NotStrictlyConvex, "fan cone " + c.key() + " has lineality");
      if (seen.insert(c.key()).second) cones.push_back(c);
    }
  }

  Fan f;
  f.rank_ = rank;
  for (const auto& c : cones) f.rays_.insert(f.rays_.end(), c.rays().begin(), c.rays().end());
  std::sort(f.rays_.begin(), f.rays_.end());
  f.rays_.erase(std::unique(f.rays_.begin(), f.rays_.end()), f.rays_.end());
  std::map<IVec, int> pos;
  for (std::size_t i = 0; i < f.rays_.size(); ++i) pos[f.rays_[i]] = static_cast<int>(i);

  std::vector<std::vector<int>> idx;
  for (const auto& c : cones) {
    std::vector<int> s;
    for (const auto& r : c.rays()) s.push_back(pos.at(r));
    idx.push_back(s);
  }

  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = i + 1; j < cones.size(); ++j) {
      auto common = rays_of(f.rays_, sorted_intersection(idx[i], idx[j]));
      if (!meet_properly(cones[i], cones[j], common))
        throw Error(ErrorKind::NotAFan, cones[i].key() + " and " + cones[j].key() + " do not meet in a common face");
    }

  // A cone whose ray set is contained in another's is a face of it, given the pairwise check.
  std::vector<bool> absorbed(cones.size(), false);
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = 0; j < cones.size() && !absorbed[i]; ++j)
      if (i != j && idx[i].size() < idx[j].size() && std::includes(idx[j].begin(), idx[j].end(), idx[i].begin(), idx[i].end()))
        absorbed[i] = true;
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (!absorbed[i]) f.maximal_.push_back(idx[i]);
  if (f.maximal_.empty()) f.maximal_.push_back({});
  std::sort(f.maximal_.begin(), f.maximal_.end());

  std::map<std::vector<int>, Cone> faces;
  faces.emplace(std::vector<int>{}, Cone::zero(rank));
  for (std::size_t i = 0; i < cones.size(); ++i) {
    if (absorbed[i]) continue;
    const Cone& c = cones[i];
    for (const auto& s : c.face_sets()) {
      std::vector<int> g;
      for (int k : s) g.push_back(pos.at(c.rays()[static_cast<std::size_t>(k)]));
      std::sort(g.begin(), g.end());
      if (faces.count(g)) continue;
      faces.emplace(g, g.size() == c.rays().size() ? c : c.face(s));
    }
  }
  for (auto& [s, c] : faces) f.cells_.push_back(Fan::Cell{s, c.dim(), c});
  std::stable_sort(f.cells_.begin(), f.cells_.end(), [](const Fan::Cell& a, const Fan::Cell& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.rays < b.rays;
  });

  for (const auto& c : f.cells_)
    if (!c.cone.is_simplicial()) f.simplicial_ = false;

  const int n = static_cast<int>(rank);
  bool complete = true;
  for (const auto& m : f.maximal_)
    if (static_cast<int>(ihcoh::rank(rays_of(f.rays_, m), rank)) != n) complete = false;
  if (complete && n > 0) {
    for (const auto& c : f.cells_) {
      if (c.dim != n - 1) continue;
      int count = 0;
      for (const auto& m : f.maximal_)
        if (std::includes(m.begin(), m.end(), c.rays.begin(), c.rays.end())) ++count;
      if (count != 2) {
        complete = false;
        break;
      }
    }
  }
  f.complete_ = complete;
  return f;
}

Fan star_fan(const Fan& f, const Cone& tau) {
  auto ti = f.index_of(tau);
  if (!ti) throw Error(ErrorKind::TauNotInFan, tau.key() + " is not a cone of the fan");
  const auto& tr = f.all_cones()[*ti].rays;
  SubLattice q = saturated_span(tau.rays(), f.rank());
  const std::size_t r = f.rank() - q.dim;
  std::vector<Cone> images;
  for (const auto& m : f.maximal_cones()) {
    if (!std::includes(m.begin(), m.end(), tr.begin(), tr.end())) continue;
    std::vector<IVec> g;
    for (int i : m) g.push_back(q.quotient(f.rays()[static_cast<std::size_t>(i)]));
    images.push_back(Cone::from_generators(r, g));
  }
  return build_fan(r, images);
}

Fan star_fan(std::size_t rank, const std::vector<Cone>& cones, const Cone& tau) {
  return star_fan(build_fan(rank, cones), tau);
}

std::optional<Fan> normal_fan_of_cone(const Cone& sigma) {
  if (!sigma.strictly_convex()) throw Error(ErrorKind::NotStrictlyConvex, "normal fan of a cone with lineality");
  IVec v(sigma.rank(), 0);
  for (const auto& r : sigma.rays()) v = add(v, r);
  return normal_fan_of_cone(sigma, v);
}

std::optional<Fan> normal_fan_of_cone(const Cone& sigma, const IVec& interior) {
  if (!sigma.strictly_convex()) throw Error(ErrorKind::NotStrictlyConvex, "normal fan of a cone with lineality");
  const int d = sigma.dim();
  if (d <= 2) return std::nullopt;
  if (!sigma.in_relative_interior(to_rational(interior)))
    throw Error(ErrorKind::InvalidInput, "cross-section point is not in the relative interior");

  const std::size_t du = static_cast<std::size_t>(d);
  SubLattice span = saturated_span(sigma.rays(), sigma.rank());
  std::vector<IVec> local;
  for (const auto& r : sigma.rays()) local.push_back(span.coords(r));
  Cone s = Cone::from_generators(du, local);
  IVec v = span.coords(interior);

  // Vertices of the cross-section are the facet normals scaled to ⟨·,v⟩ = 1.
  std::vector<QVec> q;
  for (const auto& m : s.facets()) {
    Rat h = Rat(dot(m, v));
    QVec x(du);
    for (std::size_t i = 0; i < du; ++i) x[i] = Rat(m[i]) / h;
    q.push_back(std::move(x));
  }
  SubLattice line = saturated_span({primitive(v)}, du);
  std::vector<Cone> cells;
  for (std::size_t j = 0; j < q.size(); ++j) {
    std::vector<IVec> ineq;
    for (std::size_t k = 0; k < q.size(); ++k) {
      if (k == j) continue;
      QVec w(du);
      for (std::size_t i = 0; i < du; ++i) w[i] = q[k][i] - q[j][i];
      ineq.push_back(line.quotient_functional(clear_denominators(w)));
    }
    cells.push_back(Cone::from_inequalities(du - 1, ineq));
  }
  return build_fan(du - 1, cells);
}

namespace {

IVec sign_normalized(IVec h) {
  h = primitive(h);
  for (const auto& x : h) {
    if (x == 0) continue;
    if (x < 0) h = negate(h);
    break;
  }
  return h;
}

std::vector<Cone> split(const Cone& c, const std::vector<IVec>& hyperplanes) {
  std::vector<Cone> pieces{c};
  for (const auto& h : hyperplanes) {
    std::vector<Cone> next;
    for (const auto& p : pieces) {
      bool pos = false, neg = false;
      for (const auto& r : p.rays()) {
        Int v = dot(h, r);
        if (v > 0) pos = true;
        if (v < 0) neg = true;
      }
      if (!(pos && neg)) {
        next.push_back(p);
        continue;
      }
      for (const IVec& side : {h, negate(h)}) {
        std::vector<IVec> ineq = p.facets();
        ineq.push_back(side);
        next.push_back(Cone::from_inequalities(c.rank(), ineq, p.equations()));
      }
    }
    pieces = std::move(next);
  }
  return pieces;
}

// Every input must meet each face of the candidate cell in a face.
bool inputs_are_unions(const Cone& cell, const std::vector<Cone>& inputs) {
  for (const auto& g : faces(cell))
    for (const auto& c : inputs) {
      Cone i = intersect(c, g);
      if (!is_face_of(i, g)) return false;
    }
  return true;
}

std::optional<Cone> convex_union(const Cone& a, const Cone& b) {
  if (a.dim() != b.dim()) return std::nullopt;
  std::vector<IVec> common;
  std::set_intersection(a.rays().begin(), a.rays().end(), b.rays().begin(), b.rays().end(), std::back_inserter(common));
  if (static_cast<int>(rank(common, a.rank())) != a.dim() - 1) return std::nullopt;
  std::vector<IVec> g = a.rays();
  g.insert(g.end(), b.rays().begin(), b.rays().end());
  Cone u = Cone::from_generators(a.rank(), g);
  if (!u.strictly_convex() || u.dim() != a.dim()) return std::nullopt;
  for (const auto& f : a.facets()) {
    std::vector<IVec> t;
    for (const auto& r : a.rays())
      if (dot(f, r) == 0) t.push_back(r);
    if (t != common) continue;
    std::vector<IVec> up = u.facets(), dn = u.facets();
    up.push_back(f);
    dn.push_back(negate(f));
    if (Cone::from_inequalities(a.rank(), up, u.equations()) == a &&
        Cone::from_inequalities(a.rank(), dn, u.equations()) == b)
      return u;
  }
  return std::nullopt;
}

}  // namespace

Fan generated_fan(std::size_t rank, const std::vector<Cone>& cones) {
  if (cones.empty()) throw Error(ErrorKind::EmptyInput, "no cones to generate a fan from");
  for (const auto& c : cones) {
    if (c.rank() != rank) throw Error(ErrorKind::RankMismatch, "input cone rank differs from fan rank");
    if (!c.strictly_convex()) throw Error(ErrorKind::LinealityInInput, "input cone " + c.key() + " has lineality");
  }
  try {
    return build_fan(rank, cones);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotAFan) throw;
  }

  std::set<IVec> hs;
  for (const auto& c : cones) {
    for (const auto& f : c.facets()) hs.insert(sign_normalized(f));
    for (const auto& e : c.equations()) hs.insert(sign_normalized(e));
  }
  std::vector<IVec> hyperplanes(hs.begin(), hs.end());
  std::vector<Cone> cells;
  for (const auto& c : cones)
    for (auto& p : split(c, hyperplanes)) cells.push_back(std::move(p));
  Fan fan = build_fan(rank, cells);

  for (bool merged = true; merged;) {
    merged = false;
    std::vector<Cone> max = fan.maximal();
    for (std::size_t i = 0; i < max.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < max.size() && !merged; ++j) {
        auto u = convex_union(max[i], max[j]);
        if (!u || !inputs_are_unions(*u, cones)) continue;
        std::vector<Cone> next;
        for (std::size_t k = 0; k < max.size(); ++k)
          if (k != i && k != j) next.push_back(max[k]);
        next.push_back(*u);
        try {
          fan = build_fan(rank, next);
          merged = true;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::NotAFan) throw;
        }
      }
  }
  return fan;
}

}  // namespace ihcoh

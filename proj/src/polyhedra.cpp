#include "ihcoh/polyhedra.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>

namespace ihcoh {

namespace {

// Fixed-width bitset over constraint indices.
class Bits {
 public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void set_all_below(std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) set(i);
  }
  Bits operator&(const Bits& o) const {
    Bits r;
    r.w_.resize(w_.size());
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> w_;
};

struct DDRay {
  IVec v;
  Bits zero;
};

void check_len(const IVec& v, std::size_t n) {
  if (v.size() != n) throw Error(ErrorKind::RankMismatch, "vector of length " + std::to_string(v.size()) + " in rank " + std::to_string(n));
}

std::vector<IVec> unique_sorted(std::vector<IVec> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

IVec unit(std::size_t n, std::size_t i) {
  IVec e(n, 0);
  e[i] = 1;
  return e;
}

}  // namespace

DDResult double_description(std::size_t n, const std::vector<IVec>& ineqs, const std::vector<IVec>& eqs) {
  std::vector<IVec> cons;
  for (const auto& a : ineqs) {
    check_len(a, n);
    cons.push_back(a);
  }
  for (const auto& e : eqs) {
    check_len(e, n);
    cons.push_back(e);
    cons.push_back(negate(e));
  }
  const std::size_t m = cons.size();

  std::vector<IVec> lin;
  for (std::size_t i = 0; i < n; ++i) lin.push_back(unit(n, i));
  std::vector<DDRay> rays;

  for (std::size_t k = 0; k < m; ++k) {
    const IVec& a = cons[k];
    std::size_t p = lin.size();
    Int ap;
    for (std::size_t i = 0; i < lin.size(); ++i) {
      ap = dot(a, lin[i]);
      if (ap != 0) {
        p = i;
        break;
      }
    }
    if (p < lin.size()) {
      // The constraint cuts the lineality space: one lineality direction becomes a ray.
      IVec l = lin[p];
      if (ap < 0) {
        l = negate(l);
        ap = -ap;
      }
      for (std::size_t i = 0; i < lin.size(); ++i) {
        if (i == p) continue;
        Int v = dot(a, lin[i]);
        if (v != 0) lin[i] = primitive(sub(scale(ap, lin[i]), scale(v, l)));
      }
      for (auto& r : rays) {
        Int v = dot(a, r.v);
        if (v != 0) r.v = primitive(sub(scale(ap, r.v), scale(v, l)));
        r.zero.set(k);
      }
      DDRay nr{l, Bits(m)};
      nr.zero.set_all_below(k);
      rays.push_back(std::move(nr));
      lin.erase(lin.begin() + static_cast<long>(p));
      continue;
    }

    std::vector<Int> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      if (val[i] > 0) pos.push_back(i);
      else if (val[i] < 0) neg.push_back(i);
    }
    if (neg.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (val[i] == 0) rays[i].zero.set(k);
      continue;
    }
    std::vector<DDRay> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (val[i] > 0) next.push_back(rays[i]);
      else if (val[i] == 0) {
        next.push_back(rays[i]);
        next.back().zero.set(k);
      }
    }
    for (auto pi : pos)
      for (auto ni : neg) {
        Bits z = rays[pi].zero & rays[ni].zero;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == pi || r == ni) continue;
          if (z.subset_of(rays[r].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        IVec c = primitive(sub(scale(val[pi], rays[ni].v), scale(val[ni], rays[pi].v)));
        DDRay nr{std::move(c), z};
        nr.zero.set(k);
        next.push_back(std::move(nr));
      }
    rays = std::move(next);
  }

  DDResult out;
  out.lineality = lin;
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  return out;
}

// ---------------------------------------------------------------------------------------------
// Cone

Cone Cone::zero(std::size_t rank) {
  Cone c;
  c.rank_ = rank;
  c.dim_ = 0;
  for (std::size_t i = 0; i < rank; ++i) c.equations_.push_back(unit(rank, i));
  return c;
}

Cone Cone::orthant(std::size_t rank) {
  Cone c;
  c.rank_ = rank;
  c.dim_ = static_cast<int>(rank);
  for (std::size_t i = 0; i < rank; ++i) c.rays_.push_back(unit(rank, i));
  std::sort(c.rays_.begin(), c.rays_.end());
  c.facets_ = c.rays_;
  return c;
}

Cone Cone::from_generators(std::size_t rank, const std::vector<IVec>& gens) {
  std::vector<IVec> g;
  for (const auto& v : gens) {
    check_len(v, rank);
    if (!is_zero(v)) g.push_back(primitive(v));
  }
  g = unique_sorted(std::move(g));
  if (g.empty()) return zero(rank);

  Cone c;
  c.rank_ = rank;
  DDResult dual = double_description(rank, g);
  c.equations_ = row_space_basis(dual.lineality, rank);
  std::vector<IVec> f;
  for (const auto& r : dual.rays) {
    IVec red = reduce_modulo(r, c.equations_);
    if (!is_zero(red)) f.push_back(red);
  }
  c.facets_ = unique_sorted(std::move(f));
  c.dim_ = static_cast<int>(rank - c.equations_.size());

  std::vector<IVec> hrows = c.equations_;
  hrows.insert(hrows.end(), c.facets_.begin(), c.facets_.end());
  c.lineality_ = row_space_basis(nullspace(hrows, rank), rank);

  if (c.lineality_.empty()) {
    for (const auto& v : g) {
      std::vector<IVec> tight = c.equations_;
      for (const auto& fa : c.facets_)
        if (dot(fa, v) == 0) tight.push_back(fa);
      if (ihcoh::rank(tight, rank) + 1 == rank) c.rays_.push_back(v);
    }
  } else {
    const std::size_t l = c.lineality_.size();
    for (const auto& v : g) {
      std::vector<IVec> t = c.lineality_;
      t.push_back(v);
      if (ihcoh::rank(t, rank) > l) c.rays_.push_back(v);
    }
  }
  return c;
}

Cone Cone::from_inequalities(std::size_t rank, const std::vector<IVec>& ineqs, const std::vector<IVec>& eqs) {
  DDResult dd = double_description(rank, ineqs, eqs);
  if (!dd.lineality.empty()) {
    std::vector<IVec> gens = dd.rays;
    for (const auto& l : dd.lineality) {
      gens.push_back(l);
      gens.push_back(negate(l));
    }
    return from_generators(rank, gens);
  }
  std::vector<IVec> rays;
  for (const auto& r : dd.rays) rays.push_back(primitive(r));
  rays = unique_sorted(std::move(rays));
  if (rays.empty()) return zero(rank);

  Cone c;
  c.rank_ = rank;
  c.rays_ = rays;
  c.equations_ = row_space_basis(nullspace(rays, rank), rank);
  c.dim_ = static_cast<int>(rank - c.equations_.size());
  std::vector<IVec> f;
  for (const auto& a : ineqs) {
    IVec red = reduce_modulo(a, c.equations_);
    if (is_zero(red)) continue;
    std::vector<IVec> tight;
    for (const auto& r : rays)
      if (dot(red, r) == 0) tight.push_back(r);
    if (static_cast<int>(ihcoh::rank(tight, rank)) + 1 == c.dim_) f.push_back(red);
  }
  c.facets_ = unique_sorted(std::move(f));
  return c;
}

bool Cone::contains(const IVec& x) const {
  check_len(x, rank_);
  for (const auto& e : equations_)
    if (dot(e, x) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, x) < 0) return false;
  return true;
}

bool Cone::contains(const QVec& x) const {
  check_len(IVec(x.size()), rank_);
  for (const auto& e : equations_)
    if (dot(e, x) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, x) < 0) return false;
  return true;
}

bool Cone::contains(const Cone& c) const {
  if (c.rank_ != rank_) throw Error(ErrorKind::RankMismatch, "cone containment across ranks");
  for (const auto& r : c.rays_)
    if (!contains(r)) return false;
  for (const auto& l : c.lineality_)
    if (!contains(l) || !contains(negate(l))) return false;
  return true;
}

bool Cone::in_relative_interior(const QVec& x) const {
  if (!contains(x)) return false;
  for (const auto& f : facets_)
    if (dot(f, x) == 0) return false;
  return true;
}

std::vector<int> Cone::tight_rays(std::size_t facet) const {
  std::vector<int> t;
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (dot(facets_[facet], rays_[i]) == 0) t.push_back(static_cast<int>(i));
  return t;
}

std::vector<std::vector<int>> Cone::face_sets() const {
  if (!strictly_convex()) throw Error(ErrorKind::NotStrictlyConvex, "faces of a cone with lineality");
  std::vector<std::vector<int>> tight;
  for (std::size_t j = 0; j < facets_.size(); ++j) tight.push_back(tight_rays(j));
  std::vector<int> all(rays_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);

  std::set<std::vector<int>> seen{all};
  std::deque<std::vector<int>> work{all};
  while (!work.empty()) {
    auto x = work.front();
    work.pop_front();
    for (const auto& t : tight) {
      std::vector<int> y;
      std::set_intersection(x.begin(), x.end(), t.begin(), t.end(), std::back_inserter(y));
      if (seen.insert(y).second) work.push_back(y);
    }
  }
  std::vector<std::pair<int, std::vector<int>>> graded;
  for (const auto& s : seen) {
    std::vector<IVec> rs;
    for (int i : s) rs.push_back(rays_[static_cast<std::size_t>(i)]);
    graded.emplace_back(static_cast<int>(ihcoh::rank(rs, rank_)), s);
  }
  std::sort(graded.begin(), graded.end());
  std::vector<std::vector<int>> out;
  for (auto& g : graded) out.push_back(std::move(g.second));
  return out;
}

std::vector<int> Cone::face_dims() const {
  std::vector<int> d;
  for (const auto& s : face_sets()) {
    std::vector<IVec> rs;
    for (int i : s) rs.push_back(rays_[static_cast<std::size_t>(i)]);
    d.push_back(static_cast<int>(ihcoh::rank(rs, rank_)));
  }
  return d;
}

Cone Cone::face(const std::vector<int>& idx) const {
  std::vector<IVec> rs;
  for (int i : idx) rs.push_back(rays_.at(static_cast<std::size_t>(i)));
  return from_generators(rank_, rs);
}

bool Cone::operator==(const Cone& o) const {
  if (rank_ != o.rank_ || dim_ != o.dim_) return false;
  if (strictly_convex() && o.strictly_convex()) return rays_ == o.rays_;
  return contains(o) && o.contains(*this);
}

std::string Cone::key() const {
  std::string k = std::to_string(rank_) + "|";
  for (const auto& r : rays_) k += to_string(r);
  if (!lineality_.empty()) {
    k += "|L";
    for (const auto& l : lineality_) k += to_string(l);
  }
  return k;
}

Cone dual_cone(const Cone& c) {
  std::vector<IVec> g = c.facets();
  for (const auto& e : c.equations()) {
    g.push_back(e);
    g.push_back(negate(e));
  }
  return Cone::from_generators(c.rank(), g);
}

std::vector<Cone> faces(const Cone& c) {
  std::vector<Cone> out;
  for (const auto& s : c.face_sets()) out.push_back(c.face(s));
  return out;
}

bool is_face_of(const Cone& small, const Cone& big) {
  if (small.rank() != big.rank()) throw Error(ErrorKind::RankMismatch, "face test across ranks");
  if (!big.strictly_convex()) throw Error(ErrorKind::NotStrictlyConvex, "face test in a cone with lineality");
  if (!small.strictly_convex() || !big.contains(small)) return false;
  std::vector<const IVec*> tight;
  for (const auto& f : big.facets()) {
    bool all = true;
    for (const auto& r : small.rays())
      if (dot(f, r) != 0) {
        all = false;
        break;
      }
    if (all) tight.push_back(&f);
  }
  std::vector<IVec> face_rays;
  for (const auto& r : big.rays()) {
    bool in = true;
    for (auto* f : tight)
      if (dot(*f, r) != 0) {
        in = false;
        break;
      }
    if (in) face_rays.push_back(r);
  }
  return face_rays == small.rays();
}

Cone intersect(const Cone& a, const Cone& b) {
  if (a.rank() != b.rank()) throw Error(ErrorKind::RankMismatch, "intersection across ranks");
  std::vector<IVec> ineq = a.facets(), eq = a.equations();
  ineq.insert(ineq.end(), b.facets().begin(), b.facets().end());
  eq.insert(eq.end(), b.equations().begin(), b.equations().end());
  return Cone::from_inequalities(a.rank(), ineq, eq);
}

Cone linear_image(const Cone& c, const IMat& m) {
  if (m.cols() != c.rank()) throw Error(ErrorKind::RankMismatch, "linear image: matrix has " + std::to_string(m.cols()) + " columns, cone rank " + std::to_string(c.rank()));
  std::vector<IVec> g;
  for (const auto& r : c.rays()) g.push_back(m * r);
  for (const auto& l : c.lineality()) {
    g.push_back(m * l);
    g.push_back(negate(m * l));
  }
  return Cone::from_generators(m.rows(), g);
}

Cone linear_image(const Cone& c, const QMat& m) {
  if (m.cols() != c.rank()) throw Error(ErrorKind::RankMismatch, "linear image: matrix/cone rank mismatch");
  std::vector<IVec> g;
  auto push = [&](const QVec& v) {
    if (!is_zero(v)) g.push_back(primitive_direction(v));
  };
  for (const auto& r : c.rays()) push(m * to_rational(r));
  for (const auto& l : c.lineality()) {
    QVec v = m * to_rational(l);
    push(v);
    for (auto& x : v) x = -x;
    push(v);
  }
  return Cone::from_generators(m.rows(), g);
}

Cone preimage(const Cone& c, const IMat& m, const Cone& within) {
  if (m.rows() != c.rank() || m.cols() != within.rank()) throw Error(ErrorKind::RankMismatch, "preimage: matrix/cone rank mismatch");
  IMat mt = m.transpose();
  std::vector<IVec> ineq = within.facets(), eq = within.equations();
  for (const auto& f : c.facets()) ineq.push_back(mt * f);
  for (const auto& e : c.equations()) eq.push_back(mt * e);
  return Cone::from_inequalities(within.rank(), ineq, eq);
}

// ---------------------------------------------------------------------------------------------
// Polyhedron

namespace {

IVec homogenize_point(const QVec& p) {
  Int l = 1;
  for (const auto& x : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IVec v(p.size() + 1);
  for (std::size_t i = 0; i < p.size(); ++i) v[i] = p[i].get_num() * (l / p[i].get_den());
  v[p.size()] = l;
  return v;
}

IVec homogenize_ray(const IVec& r) {
  IVec v = r;
  v.push_back(0);
  return v;
}

}  // namespace

Polyhedron Polyhedron::make(std::size_t rank, const std::vector<QVec>& points, const std::vector<IVec>& rays) {
  if (points.empty()) throw Error(ErrorKind::InvalidInput, "polyhedron without points");
  std::vector<IVec> gens;
  for (const auto& p : points) {
    if (p.size() != rank) throw Error(ErrorKind::RankMismatch, "polyhedron point of wrong length");
    gens.push_back(homogenize_point(p));
  }
  for (const auto& r : rays) {
    check_len(r, rank);
    if (!is_zero(r)) gens.push_back(homogenize_ray(r));
  }
  Cone hom = Cone::from_generators(rank + 1, gens);
  if (!hom.strictly_convex()) throw Error(ErrorKind::NotStrictlyConvex, "polyhedron tail cone has lineality");
  return *from_homogenization(hom);
}

Polyhedron Polyhedron::point(const QVec& p) { return make(p.size(), {p}, {}); }

Polyhedron Polyhedron::from_cone(const Cone& c) {
  if (!c.strictly_convex()) throw Error(ErrorKind::NotStrictlyConvex, "polyhedron from a cone with lineality");
  return make(c.rank(), {QVec(c.rank(), Rat(0))}, c.rays());
}

std::optional<Polyhedron> Polyhedron::from_homogenization(const Cone& hom) {
  if (hom.rank() == 0) throw Error(ErrorKind::RankMismatch, "homogenization of rank 0");
  if (!hom.strictly_convex()) throw Error(ErrorKind::NotStrictlyConvex, "homogenization with lineality");
  const std::size_t n = hom.rank() - 1;
  Polyhedron p;
  p.rank_ = n;
  std::vector<IVec> tail;
  for (const auto& r : hom.rays()) {
    if (r[n] < 0) throw Error(ErrorKind::InternalInconsistency, "homogenization meets h < 0");
    if (r[n] == 0) {
      tail.push_back(IVec(r.begin(), r.end() - 1));
    } else {
      QVec v(n);
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = Rat(r[i], r[n]);
        v[i].canonicalize();
      }
      p.vertices_.push_back(std::move(v));
    }
  }
  if (p.vertices_.empty()) return std::nullopt;
  std::sort(p.vertices_.begin(), p.vertices_.end());
  p.tail_ = Cone::from_generators(n, tail);
  p.hom_ = hom;
  return p;
}

bool Polyhedron::contains(const QVec& x) const {
  QVec h = x;
  h.push_back(1);
  return hom_.contains(h);
}

bool Polyhedron::equals_tail() const { return vertices_.size() == 1 && is_zero(vertices_[0]); }

Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b) {
  if (a.rank() != b.rank()) throw Error(ErrorKind::RankMismatch, "Minkowski sum across ranks");
  std::vector<QVec> pts;
  for (const auto& u : a.vertices())
    for (const auto& v : b.vertices()) {
      QVec s(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) s[i] = u[i] + v[i];
      pts.push_back(std::move(s));
    }
  std::vector<IVec> rays = a.tail().rays();
  rays.insert(rays.end(), b.tail().rays().begin(), b.tail().rays().end());
  return Polyhedron::make(a.rank(), pts, rays);
}

std::optional<Polyhedron> intersect(const Polyhedron& a, const Polyhedron& b) {
  if (a.rank() != b.rank()) throw Error(ErrorKind::RankMismatch, "polyhedron intersection across ranks");
  const std::size_t n = a.rank();
  std::vector<IVec> ineq = a.homogenization().facets(), eq = a.homogenization().equations();
  ineq.insert(ineq.end(), b.homogenization().facets().begin(), b.homogenization().facets().end());
  eq.insert(eq.end(), b.homogenization().equations().begin(), b.homogenization().equations().end());
  ineq.push_back(unit(n + 1, n));
  return Polyhedron::from_homogenization(Cone::from_inequalities(n + 1, ineq, eq));
}

Feasibility intersect_nonempty(const Polyhedron& a, const Polyhedron& b) {
  auto p = intersect(a, b);
  Feasibility f;
  if (p) {
    f.nonempty = true;
    f.witness = p->vertices().front();
  }
  return f;
}

Feasibility intersect_nonempty(const Polyhedron& a, const Cone& b) { return intersect_nonempty(a, Polyhedron::from_cone(b)); }

Feasibility intersect_nonempty(const Cone& a, const Cone& b) {
  if (a.rank() != b.rank()) throw Error(ErrorKind::RankMismatch, "cone intersection across ranks");
  Cone c = intersect(a, b);
  Feasibility f;
  f.nonempty = true;
  f.witness = c.rays().empty() ? QVec(a.rank(), Rat(0)) : to_rational(c.rays().front());
  return f;
}

Polyhedron image(const Polyhedron& p, const IMat& m) {
  if (m.cols() != p.rank()) throw Error(ErrorKind::RankMismatch, "polyhedron image: matrix/rank mismatch");
  QMat q = to_rational(m);
  std::vector<QVec> pts;
  for (const auto& v : p.vertices()) pts.push_back(q * v);
  std::vector<IVec> rays;
  for (const auto& r : p.tail().rays()) rays.push_back(m * r);
  return Polyhedron::make(m.rows(), pts, rays);
}

Cone cayley_cone(const Polyhedron& lam) { return lam.homogenization(); }

bool is_face_of(const Polyhedron& small, const Polyhedron& big) {
  return is_face_of(small.homogenization(), big.homogenization());
}

std::string to_string(const IVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::string to_string(const QVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

}  // namespace ihcoh

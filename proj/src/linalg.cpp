#include "ihcoh/linalg.hpp"

#include <algorithm>
#include <utility>

namespace ihcoh {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::NotSaturated: return "NotSaturated";
    case ErrorKind::SuppliedSectionInvalid: return "SuppliedSectionInvalid";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::NotStrictlyConvex: return "NotStrictlyConvex";
    case ErrorKind::NotAFan: return "NotAFan";
    case ErrorKind::TauNotInFan: return "TauNotInFan";
    case ErrorKind::LinealityInInput: return "LinealityInInput";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::InvalidDivisorialFan: return "InvalidDivisorialFan";
    case ErrorKind::SigmaZNotComplete: return "SigmaZNotComplete";
    case ErrorKind::TailNotFullDim: return "TailNotFullDim";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::NonIntegralGenus: return "NonIntegralGenus";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::NotRelevant: return "NotRelevant";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Int dot(const IVec& a, const IVec& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::RankMismatch, "dot product of vectors of different length");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::RankMismatch, "dot product of vectors of different length");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const IVec& a, const QVec& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::RankMismatch, "dot product of vectors of different length");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

Int content(const IVec& v) {
  Int g = 0;
  for (const auto& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

bool is_zero(const IVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

bool is_zero(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

IVec primitive_or_zero(const IVec& v) {
  Int g = content(v);
  if (g == 0 || g == 1) return v;
  IVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(out[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  return out;
}

IVec primitive(const IVec& v) {
  if (is_zero(v)) throw Error(ErrorKind::ZeroVector, "primitive generator of the zero vector");
  return primitive_or_zero(v);
}

IVec clear_denominators(const QVec& v) {
  Int l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_num() * (l / v[i].get_den());
  return out;
}

IVec primitive_direction(const QVec& v) { return primitive(clear_denominators(v)); }

QVec to_rational(const IVec& v) {
  QVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

QMat to_rational(const IMat& m) {
  QMat q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = m(i, j);
  return q;
}

IVec add(const IVec& a, const IVec& b) {
  IVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IVec sub(const IVec& a, const IVec& b) {
  IVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

IVec scale(const Int& c, const IVec& v) {
  IVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

IVec negate(const IVec& v) { return scale(Int(-1), v); }

namespace {

// Reduced row echelon form over Q; returns pivot columns.
std::vector<std::size_t> rref(std::vector<QVec>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    Rat inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rat f = rows[i][c];
      for (std::size_t j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::vector<QVec> to_qrows(const std::vector<IVec>& rows, std::size_t ncols) {
  std::vector<QVec> q;
  q.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != ncols) throw Error(ErrorKind::RankMismatch, "row length does not match column count");
    q.push_back(to_rational(r));
  }
  return q;
}

}  // namespace

std::size_t rank(const std::vector<IVec>& rows, std::size_t ncols) {
  if (rows.empty()) return 0;
  // Fraction-free elimination on a copy.
  std::vector<IVec> a = rows;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      Int f = a[i][c], g = a[r][c];
      for (std::size_t j = c; j < ncols; ++j) a[i][j] = g * a[i][j] - f * a[r][j];
      a[i] = primitive_or_zero(a[i]);
    }
    ++r;
  }
  return r;
}

std::size_t rank(const IMat& m) { return rank(m.row_list(), m.cols()); }

std::vector<IVec> row_space_basis(const std::vector<IVec>& rows, std::size_t ncols) {
  auto q = to_qrows(rows, ncols);
  rref(q, ncols);
  std::vector<IVec> out;
  for (const auto& r : q) out.push_back(primitive(clear_denominators(r)));
  return out;
}

std::vector<IVec> nullspace(const std::vector<IVec>& rows, std::size_t ncols) {
  auto q = to_qrows(rows, ncols);
  auto piv = rref(q, ncols);
  std::vector<bool> is_piv(ncols, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<IVec> out;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    QVec x(ncols);
    x[f] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = -q[k][f];
    out.push_back(primitive(clear_denominators(x)));
  }
  return out;
}

IVec reduce_modulo(const IVec& f, const std::vector<IVec>& basis) {
  IVec v = f;
  for (const auto& b : basis) {
    std::size_t p = 0;
    while (p < b.size() && b[p] == 0) ++p;
    if (p == b.size() || v[p] == 0) continue;
    // b[p] > 0 for canonical bases, so this keeps the orientation of v.
    Int bp = b[p] > 0 ? b[p] : Int(-b[p]);
    Int vp = b[p] > 0 ? v[p] : Int(-v[p]);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = bp * v[j] - vp * b[j];
    v = primitive_or_zero(v);
  }
  return primitive_or_zero(v);
}

std::vector<Int> SmithForm::divisors() const {
  std::vector<Int> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

SmithForm smith_normal_form(const IMat& m) {
  const std::size_t R = m.rows(), C = m.cols();
  IMat A = m, U = IMat::identity(R), V = IMat::identity(C);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < C; ++c) std::swap(A(i, c), A(j, c));
    for (std::size_t c = 0; c < R; ++c) std::swap(U(i, c), U(j, c));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < R; ++r) std::swap(A(r, i), A(r, j));
    for (std::size_t r = 0; r < C; ++r) std::swap(V(r, i), V(r, j));
  };
  // row_i -= q * row_j
  auto row_op = [&](std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < C; ++c) A(i, c) -= q * A(j, c);
    for (std::size_t c = 0; c < R; ++c) U(i, c) -= q * U(j, c);
  };
  auto col_op = [&](std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < R; ++r) A(r, i) -= q * A(r, j);
    for (std::size_t r = 0; r < C; ++r) V(r, i) -= q * V(r, j);
  };

  std::size_t t = 0;
  for (; t < std::min(R, C); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    bool found = false;
    std::size_t pi = 0, pj = 0;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (A(i, j) != 0 && (!found || abs(A(i, j)) < abs(A(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (A(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
        row_op(i, t, q);
        if (A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (A(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
        col_op(j, t, q);
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot survives; move it to the pivot slot.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < R; ++i)
          if (A(i, t) != 0 && abs(A(i, t)) < abs(A(bi, bj))) { bi = i; bj = t; }
        for (std::size_t j = t + 1; j < C; ++j)
          if (A(t, j) != 0 && abs(A(t, j)) < abs(A(bi, bj))) { bi = t; bj = j; }
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      // Divisibility: pivot must divide the trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < R && divides; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (A(i, j) % A(t, t) != 0) {
            row_op(t, i, Int(-1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (A(t, t) < 0) {
      for (std::size_t c = 0; c < C; ++c) A(t, c) = -A(t, c);
      for (std::size_t c = 0; c < R; ++c) U(t, c) = -U(t, c);
    }
  }
  SmithForm s{U, A, V, t};
  return s;
}

IMat inverse_unimodular(const IMat& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorKind::RankMismatch, "inverse of a non-square matrix");
  std::vector<QVec> a(n, QVec(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    a[i][n + i] = 1;
  }
  auto piv = rref(a, 2 * n);
  if (piv.size() < n || piv[n - 1] >= n) throw Error(ErrorKind::InternalInconsistency, "singular matrix");
  IMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& x = a[i][n + j];
      if (x.get_den() != 1) throw Error(ErrorKind::InternalInconsistency, "matrix is not unimodular");
      inv(i, j) = x.get_num();
    }
  return inv;
}

Int determinant(const IMat& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorKind::RankMismatch, "determinant of a non-square matrix");
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IMat a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

MatrixFactorization matrix_factorization(const IMat& F, const std::optional<IMat>& S, const std::optional<IMat>& P) {
  const std::size_t ell = F.rows(), n = F.cols();
  if (n > ell) throw Error(ErrorKind::NotInjective, "F has more columns than rows");
  SmithForm snf = smith_normal_form(F);
  if (snf.rank < n) throw Error(ErrorKind::NotInjective, "F has rank " + std::to_string(snf.rank) + " < " + std::to_string(n));
  for (const auto& d : snf.divisors())
    if (d != 1) throw Error(ErrorKind::NotSaturated, "elementary divisor " + d.get_str() + " of F is not 1");

  const std::size_t s = ell - n;
  MatrixFactorization out;
  out.F = F;
  out.saturated = true;

  if (S) {
    if (S->rows() != n || S->cols() != ell)
      throw Error(ErrorKind::SuppliedSectionInvalid, "S must be " + std::to_string(n) + "x" + std::to_string(ell));
    if (!(*S * F == IMat::identity(n))) throw Error(ErrorKind::SuppliedSectionInvalid, "S·F is not the identity");
    out.S = *S;
    out.supplied = true;
  } else {
    // S = V·[I | 0]·U.
    IMat top(n, ell);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < ell; ++j) top(i, j) = snf.U(i, j);
    out.S = snf.V * top;
  }

  if (P) {
    if (P->rows() != s || P->cols() != ell)
      throw Error(ErrorKind::SuppliedSectionInvalid, "P must be " + std::to_string(s) + "x" + std::to_string(ell));
    IMat pf = *P * F;
    for (std::size_t i = 0; i < pf.rows(); ++i)
      for (std::size_t j = 0; j < pf.cols(); ++j)
        if (pf(i, j) != 0) throw Error(ErrorKind::SuppliedSectionInvalid, "P·F is not zero");
    if (rank(*P) != s) throw Error(ErrorKind::SuppliedSectionInvalid, "P does not have rank ell−n");
    out.P = *P;
    out.supplied = true;
  } else {
    IMat p(s, ell);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < ell; ++j) p(i, j) = snf.U(n + i, j);
    out.P = p;
  }
  return out;
}

IMat integer_kernel(const IMat& a) {
  SmithForm snf = smith_normal_form(a);
  const std::size_t c = a.cols();
  IMat k(c, c - snf.rank);
  for (std::size_t j = snf.rank; j < c; ++j)
    for (std::size_t i = 0; i < c; ++i) k(i, j - snf.rank) = snf.V(i, j);
  return k;
}

IVec SubLattice::coords(const IVec& x) const {
  IVec y = U * x;
  y.resize(dim);
  return y;
}

IVec SubLattice::quotient(const IVec& x) const {
  IVec y = U * x;
  return IVec(y.begin() + static_cast<long>(dim), y.end());
}

QVec SubLattice::quotient(const QVec& x) const {
  QVec y = to_rational(U) * x;
  return QVec(y.begin() + static_cast<long>(dim), y.end());
}

IVec SubLattice::quotient_functional(const IVec& m) const {
  IVec w = Uinv.transpose() * m;
  return IVec(w.begin() + static_cast<long>(dim), w.end());
}

IVec SubLattice::span_functional(const IVec& m) const {
  IVec w = Uinv.transpose() * m;
  w.resize(dim);
  return w;
}

SubLattice saturated_span(const std::vector<IVec>& vecs, std::size_t ambient) {
  SubLattice s;
  s.ambient = ambient;
  if (vecs.empty()) {
    s.U = IMat::identity(ambient);
    s.Uinv = IMat::identity(ambient);
    s.dim = 0;
    return s;
  }
  IMat b = IMat::from_columns(vecs, ambient);
  SmithForm snf = smith_normal_form(b);
  s.U = snf.U;
  s.Uinv = inverse_unimodular(snf.U);
  s.dim = snf.rank;
  return s;
}

std::string to_string(const Rat& q_in) {
  Rat q = q_in;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Int& z) { return z.get_str(); }

Rat parse_rational(const std::string& s) {
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](const std::string& t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw MalformedInput("not a rational number: \"" + s + "\"");
    return Rat(Int(strip_plus(s)));
  }
  std::string a = s.substr(0, slash), b = s.substr(slash + 1);
  if (!valid_int(a) || !valid_int(b)) throw MalformedInput("not a rational number: \"" + s + "\"");
  Int den(strip_plus(b));
  if (den == 0) throw MalformedInput("zero denominator in \"" + s + "\"");
  Rat q(Int(strip_plus(a)), den);
  q.canonicalize();
  return q;
}

}  // namespace ihcoh

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ihcoh/fans.hpp"

namespace ihcoh {

// Integer polynomial in t, ascending coefficients, no trailing zeros. Arithmetic is checked and
// throws Overflow rather than wrapping.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<std::int64_t> coeffs);
  static IntPolynomial constant(std::int64_t c) { return IntPolynomial({c}); }
  static IntPolynomial monomial(std::int64_t c, std::size_t k);

  const std::vector<std::int64_t>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // −1 for zero
  std::int64_t coeff(std::size_t k) const { return k < c_.size() ? c_[k] : 0; }
  bool is_zero() const { return c_.empty(); }
  bool is_even() const;  // only even powers
  bool is_palindromic() const;
  bool nonnegative() const;
  IntPolynomial even_part() const;
  IntPolynomial odd_part() const;
  std::int64_t evaluate(std::int64_t x) const;
  std::string to_string() const;  // "1 + 4t^2 + t^4"

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(std::int64_t s, const IntPolynomial& a);
  IntPolynomial& operator+=(const IntPolynomial& o) { return *this = *this + o; }
  IntPolynomial& operator-=(const IntPolynomial& o) { return *this = *this - o; }
  bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }
  bool operator!=(const IntPolynomial& o) const { return c_ != o.c_; }

 private:
  void strip();
  std::vector<std::int64_t> c_;
};

IntPolynomial truncate(const IntPolynomial& p, int d);
// p^k for k ≥ 0.
IntPolynomial power(const IntPolynomial& p, int k);
// 1 + t² + … + t^{2k}; zero for k < 0.
IntPolynomial projective_space_poincare(int k);

// g(σ; t²) written in t. Throws NotStrictlyConvex, DepthExceeded.
IntPolynomial g_poly(const Cone& sigma);
// Same recursion with an explicit cross-section point for the top level.
IntPolynomial g_poly(const Cone& sigma, const IVec& interior);
// h(Σ; t²) written in t. Throws NotComplete.
IntPolynomial h_poly(const Fan& f);
std::int64_t g_number(const Cone& sigma, std::size_t j);

// Process-wide memo for g_poly keyed by the canonical ray list. Off by default.
void set_g_cache_enabled(bool on);
bool g_cache_enabled();
void clear_g_cache();

}  // namespace ihcoh

#include "ihcoh/ihpoly.hpp"

#include <atomic>
#include <mutex>
#include <unordered_map>

namespace ihcoh {

namespace {

constexpr std::size_t kMaxRank = 16;

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "polynomial coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "polynomial coefficient overflow");
  return r;
}

std::atomic<bool> cache_on{false};
std::mutex cache_mu;
std::unordered_map<std::string, IntPolynomial> cache;

const IntPolynomial& one_minus_t2() {
  static const IntPolynomial p({1, 0, -1});
  return p;
}

const IntPolynomial& t2_minus_one() {
  static const IntPolynomial p({-1, 0, 1});
  return p;
}

IntPolynomial h_of(const Fan& f, std::size_t depth);

IntPolynomial g_of(const Cone& sigma, const IVec* interior, std::size_t depth) {
  if (!sigma.strictly_convex()) throw Error(ErrorKind::NotStrictlyConvex, "g-polynomial of a cone with lineality");
  if (depth > kMaxRank || sigma.rank() > kMaxRank)
    throw Error(ErrorKind::DepthExceeded, "g/h recursion beyond rank " + std::to_string(kMaxRank));
  if (sigma.dim() <= 2) return IntPolynomial::constant(1);

  const bool use_cache = interior == nullptr && cache_on.load(std::memory_order_relaxed);
  std::string key;
  if (use_cache) {
    key = sigma.key();
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  auto nf = interior ? normal_fan_of_cone(sigma, *interior) : normal_fan_of_cone(sigma);
  IntPolynomial g = truncate(one_minus_t2() * h_of(*nf, depth + 1), sigma.dim() - 1);
  if (!g.is_even() || g.coeff(0) != 1)
    throw Error(ErrorKind::InternalInconsistency, "g-polynomial " + g.to_string() + " of " + sigma.key() + " is not even with constant term 1");

  if (use_cache) {
    std::lock_guard<std::mutex> lock(cache_mu);
    cache.emplace(key, g);
  }
  return g;
}

IntPolynomial h_of(const Fan& f, std::size_t depth) {
  if (!f.is_complete()) throw Error(ErrorKind::NotComplete, "h-polynomial of an incomplete fan");
  const int n = static_cast<int>(f.rank());
  IntPolynomial h;
  for (const auto& c : f.all_cones()) h += power(t2_minus_one(), n - c.dim) * g_of(c.cone, nullptr, depth);
  if (!h.is_even()) throw Error(ErrorKind::InternalInconsistency, "h-polynomial is not even");
  return h;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) { strip(); }

IntPolynomial IntPolynomial::monomial(std::int64_t c, std::size_t k) {
  std::vector<std::int64_t> v(k + 1, 0);
  v[k] = c;
  return IntPolynomial(std::move(v));
}

void IntPolynomial::strip() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

bool IntPolynomial::is_even() const {
  for (std::size_t k = 1; k < c_.size(); k += 2)
    if (c_[k] != 0) return false;
  return true;
}

bool IntPolynomial::is_palindromic() const {
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != c_[c_.size() - 1 - k]) return false;
  return true;
}

bool IntPolynomial::nonnegative() const {
  for (auto x : c_)
    if (x < 0) return false;
  return true;
}

IntPolynomial IntPolynomial::even_part() const {
  auto v = c_;
  for (std::size_t k = 1; k < v.size(); k += 2) v[k] = 0;
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::odd_part() const {
  auto v = c_;
  for (std::size_t k = 0; k < v.size(); k += 2) v[k] = 0;
  return IntPolynomial(std::move(v));
}

std::int64_t IntPolynomial::evaluate(std::int64_t x) const {
  std::int64_t r = 0;
  for (std::size_t k = c_.size(); k-- > 0;) r = checked_add(checked_mul(r, x), c_[k]);
  return r;
}

std::string IntPolynomial::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    std::int64_t c = c_[k];
    if (c == 0) continue;
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    std::uint64_t a = c < 0 ? 0 - static_cast<std::uint64_t>(c) : static_cast<std::uint64_t>(c);
    if (a != 1 || k == 0) s += std::to_string(a);
    if (k >= 1) s += "t";
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<std::int64_t> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = checked_add(a.coeff(k), b.coeff(k));
  return IntPolynomial(std::move(v));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-1) * b; }

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<std::int64_t> v(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = checked_add(v[i + j], checked_mul(a.c_[i], b.c_[j]));
  return IntPolynomial(std::move(v));
}

IntPolynomial operator*(std::int64_t s, const IntPolynomial& a) {
  auto v = a.c_;
  for (auto& x : v) x = checked_mul(s, x);
  return IntPolynomial(std::move(v));
}

IntPolynomial truncate(const IntPolynomial& p, int d) {
  if (d < 0) return {};
  auto v = p.coeffs();
  if (v.size() > static_cast<std::size_t>(d) + 1) v.resize(static_cast<std::size_t>(d) + 1);
  return IntPolynomial(std::move(v));
}

IntPolynomial power(const IntPolynomial& p, int k) {
  IntPolynomial r = IntPolynomial::constant(1);
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

IntPolynomial projective_space_poincare(int k) {
  if (k < 0) return {};
  std::vector<std::int64_t> v(2 * static_cast<std::size_t>(k) + 1, 0);
  for (int i = 0; i <= k; ++i) v[2 * static_cast<std::size_t>(i)] = 1;
  return IntPolynomial(std::move(v));
}

IntPolynomial g_poly(const Cone& sigma) { return g_of(sigma, nullptr, 0); }

IntPolynomial g_poly(const Cone& sigma, const IVec& interior) { return g_of(sigma, &interior, 0); }

IntPolynomial h_poly(const Fan& f) {
  if (f.rank() > kMaxRank) throw Error(ErrorKind::DepthExceeded, "fan rank beyond " + std::to_string(kMaxRank));
  return h_of(f, 0);
}

std::int64_t g_number(const Cone& sigma, std::size_t j) { return g_poly(sigma).coeff(j); }

void set_g_cache_enabled(bool on) { cache_on.store(on); }

bool g_cache_enabled() { return cache_on.load(); }

void clear_g_cache() {
  std::lock_guard<std::mutex> lock(cache_mu);
  cache.clear();
}

}  // namespace ihcoh

#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "ihcoh/json_io.hpp"

namespace fx {

using namespace ihcoh;

inline json load(const std::string& name) {
  std::ifstream in(std::string(IHCOH_FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return json::parse(ss.str());
}

inline IVec iv(std::initializer_list<long> xs) {
  IVec v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

inline QVec qv(std::initializer_list<const char*> xs) {
  QVec v;
  for (const char* x : xs) v.push_back(parse_rational(x));
  return v;
}

inline IMat im(std::initializer_list<std::initializer_list<long>> rows, std::size_t cols) {
  std::vector<IVec> r;
  for (auto x : rows) r.push_back(iv(x));
  return IMat::from_rows(r, cols);
}

inline Cone cone(std::size_t n, std::initializer_list<std::initializer_list<long>> gens) {
  std::vector<IVec> g;
  for (auto x : gens) g.push_back(iv(x));
  return Cone::from_generators(n, g);
}

inline IntPolynomial P(std::vector<std::int64_t> c) { return IntPolynomial(std::move(c)); }

inline IntPolynomial PJ(const json& coeffs) { return IntPolynomial(coeffs.get<std::vector<std::int64_t>>()); }

inline std::set<std::string> keys(const std::vector<Cone>& cs) {
  std::set<std::string> s;
  for (const auto& c : cs) s.insert(c.key());
  return s;
}

inline std::set<std::string> maximal_keys(const Fan& f) { return keys(f.maximal()); }

// Coefficients at even (or odd) degrees, lowest first.
inline std::vector<std::int64_t> parity_coeffs(const IntPolynomial& p, int parity) {
  std::vector<std::int64_t> out;
  for (int k = parity; k <= p.degree(); k += 2) out.push_back(p.coeff(static_cast<std::size_t>(k)));
  return out;
}

}  // namespace fx

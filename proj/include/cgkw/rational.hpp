#pragma once
// Exact arithmetic: thin aliases over GMP's C++ bindings plus string/JSON
// helpers.  Rationals are always kept in canonical form (gmp does this for
// mpq_class on construction from canonical parts; we canonicalize explicitly
// after raw numerator/denominator assembly).

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

#include "json.hpp"

namespace cgkw {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat_from_strings(const std::string& num, const std::string& den) {
  Rat r{Int(num), Int(den)};
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// JSON encoding of a rational: a two-element array of decimal strings
// [numerator, denominator], denominator always positive.
inline nlohmann::json rat_json(const Rat& r) {
  return nlohmann::json::array({r.get_num().get_str(), r.get_den().get_str()});
}

inline Rat rat_from_json(const nlohmann::json& j) {
  return rat_from_strings(j.at(0).get<std::string>(), j.at(1).get<std::string>());
}

inline int sign(const Rat& r) { return sgn(r); }

inline Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

inline Int factorial(int n) {
  Int out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

}  // namespace cgkw

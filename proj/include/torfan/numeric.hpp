#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace torfan {

// Arbitrary precision throughout; nothing in the library uses a
// fixed-width integer or floating point.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroVectorError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct NotSplitSummandError : Error { using Error::Error; };
struct NotATwoFaceError : Error { using Error::Error; };
struct ConeNotInFanError : Error { using Error::Error; };
struct MixedDimensionError : Error { using Error::Error; };
struct NotBadConeError : Error { using Error::Error; };
struct NotCompleteError : Error { using Error::Error; };
struct CapExceededError : Error { using Error::Error; };
struct ZeroCharacterError : Error { using Error::Error; };
// Raised by anything that reads external data (JSON files, CLI input).
struct ParseError : Error { using Error::Error; };

struct PropertyEViolatedError : Error {
  std::vector<IntVec> witness_cone;
  PropertyEViolatedError(const std::string& msg, std::vector<IntVec> witness)
      : Error(msg), witness_cone(std::move(witness)) {}
};

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int rat_floor(const Rat& r) {
  return floor_div(numerator(r), denominator(r));
}

// Reduce into [0,1); used for the torsion part of torus values.
inline Rat mod1(const Rat& r) { return r - Rat(rat_floor(r)); }

inline bool vec_eq(const IntVec& a, const IntVec& b) { return a == b; }

inline bool vec_less(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

inline IntVec vec_neg(const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline IntVec vec_add(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw DimensionMismatchError("vector length mismatch");
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline bool vec_is_zero(const IntVec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

inline std::string vec_str(const IntVec& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += a[i].str();
  }
  return s + ")";
}

// Parses "p/q" or "p" (used by the JSON value-group encoding).
inline Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in rational: " + s);
    return Rat(num, den);
  } catch (const std::runtime_error& e) {
    throw ParseError("bad rational literal: " + s);
  }
}

inline std::string format_rational(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace torfan

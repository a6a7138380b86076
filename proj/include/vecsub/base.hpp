#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace vecsub {

/// Exact scalar backend: arbitrary-precision rationals.
using Rat = mpq_class;
/// Float scalar backend: complex double precision.
using CD = std::complex<double>;

/// Input that cannot be parsed (filter files, CLI multi-index syntax, ...).
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A mathematical precondition is violated (dimension mismatch, eigenvalue
/// degeneracy, membership failure, ...).
struct math_error : std::runtime_error {
  explicit math_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configured resource limit was hit; not a math error.
struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
  static constexpr bool exact = true;
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static bool is_zero(const Rat& x) { return sgn(x) == 0; }
  static double to_double(const Rat& x) { return x.get_d(); }
  static CD to_cd(const Rat& x) { return CD(x.get_d(), 0.0); }
  static Rat from_int(long v) { return Rat(v); }
};

template <>
struct scalar_traits<CD> {
  static constexpr bool exact = false;
  static CD zero() { return CD(0, 0); }
  static CD one() { return CD(1, 0); }
  static bool is_zero(const CD& x) { return x.real() == 0.0 && x.imag() == 0.0; }
  static double to_double(const CD& x) { return x.real(); }
  static CD to_cd(const CD& x) { return x; }
  static CD from_int(long v) { return CD(double(v), 0.0); }
};

inline CD to_cd(const Rat& x) { return scalar_traits<Rat>::to_cd(x); }
inline CD to_cd(const CD& x) { return x; }

/// Canonicalized fraction; the raw two-argument mpq constructor does not
/// reduce and breaks comparisons.
inline Rat ratq(std::int64_t num, std::int64_t den) {
  Rat r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

/// Canonical "p/q" (or "p") rendering; bit-exact round-trip.
inline std::string rat_to_string(const Rat& x) {
  Rat c = x;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace vecsub

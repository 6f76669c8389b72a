// numeric.hpp -- exact arithmetic and dense linear-algebra scalar types.
//
// All probability computations in the library run on exact rationals until a
// call site explicitly opts into certified floating point.  Eigen is the only
// math dependency; its dense types are used with both double and the exact
// rational scalar (boost/multiprecision/eigen.hpp provides the NumTraits).
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pvass {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RatMat = Mat<Rat>;
using RatVec = Vec<Rat>;
using DMat = Mat<double>;
using DVec = Vec<double>;

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

inline RatMat rat_of(const DMat&) = delete;  // never round floats back to rationals implicitly

inline DMat double_of(const RatMat& m) {
  DMat out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

inline DVec double_of(const RatVec& v) {
  DVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = to_double(v(i));
  return out;
}

// "num/den" string, the canonical report encoding for exact values.
inline std::string rat_string(const Rat& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

// A closed interval [lo, hi] used wherever a quantity is only known up to a
// certified error (e.g. D_S edge probabilities, mean payoffs).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double value) : lo(value), hi(value) {}
  Interval(double l, double h) : lo(l), hi(h) {
    if (l > h) throw std::invalid_argument("interval: lo > hi");
  }
  static Interval around(double mid, double half_width) {
    return {mid - half_width, mid + half_width};
  }

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool positive() const { return lo > 0.0; }
  bool negative() const { return hi < 0.0; }
};

inline Interval operator+(const Interval& a, const Interval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}
inline Interval operator-(const Interval& a, const Interval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}
inline Interval operator*(const Interval& a, const Interval& b) {
  double c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  double lo = c[0], hi = c[0];
  for (double x : c) { lo = std::min(lo, x); hi = std::max(hi, x); }
  return {lo, hi};
}
inline Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains(0.0)) throw std::domain_error("interval division by zero-straddling interval");
  return a * Interval{1.0 / b.hi, 1.0 / b.lo};
}

// Three-valued sign decision with dead band theta (analysis never silently
// guesses the sign of a value whose certification straddles zero).
enum class Sign { Negative, ZeroUnresolved, Positive };

inline Sign decide_sign(const Interval& v, double theta) {
  if (v.lo > theta) return Sign::Positive;
  if (v.hi < -theta) return Sign::Negative;
  return Sign::ZeroUnresolved;
}

inline const char* sign_name(Sign s) {
  switch (s) {
    case Sign::Negative: return "neg";
    case Sign::ZeroUnresolved: return "zero-unresolved";
    case Sign::Positive: return "pos";
  }
  return "?";
}

}  // namespace pvass

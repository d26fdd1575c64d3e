#pragma once

#include <cmath>
#include <cstdint>

// Instrumented scalar: counts every {+, -, *, /, sqrt, trig} evaluation so a
// filter step templated on the scalar type reports its dynamic op count.
// Comparisons, copies and unary negation are free.

namespace orient {

struct CountedScalar {
  double v = 0.0;

  CountedScalar() = default;
  CountedScalar(double d) : v(d) {}  // NOLINT: implicit by design

  inline static thread_local std::uint64_t ops = 0;
  static void reset() { ops = 0; }
  static std::uint64_t count() { return ops; }

  CountedScalar operator-() const { return CountedScalar(-v); }

  friend CountedScalar operator+(CountedScalar a, CountedScalar b) {
    ++ops;
    return CountedScalar(a.v + b.v);
  }
  friend CountedScalar operator-(CountedScalar a, CountedScalar b) {
    ++ops;
    return CountedScalar(a.v - b.v);
  }
  friend CountedScalar operator*(CountedScalar a, CountedScalar b) {
    ++ops;
    return CountedScalar(a.v * b.v);
  }
  friend CountedScalar operator/(CountedScalar a, CountedScalar b) {
    ++ops;
    return CountedScalar(a.v / b.v);
  }

  friend bool operator<(CountedScalar a, CountedScalar b) { return a.v < b.v; }
  friend bool operator>(CountedScalar a, CountedScalar b) { return a.v > b.v; }
  friend bool operator==(CountedScalar a, CountedScalar b) { return a.v == b.v; }

  friend CountedScalar sqrt(CountedScalar a) {
    ++ops;
    return CountedScalar(std::sqrt(a.v));
  }
  friend CountedScalar sin(CountedScalar a) {
    ++ops;
    return CountedScalar(std::sin(a.v));
  }
  friend CountedScalar cos(CountedScalar a) {
    ++ops;
    return CountedScalar(std::cos(a.v));
  }
  friend CountedScalar atan2(CountedScalar a, CountedScalar b) {
    ++ops;
    return CountedScalar(std::atan2(a.v, b.v));
  }
  friend CountedScalar asin(CountedScalar a) {
    ++ops;
    return CountedScalar(std::asin(a.v));
  }
  friend CountedScalar fabs(CountedScalar a) {
    return CountedScalar(std::fabs(a.v));
  }
};

}  // namespace orient

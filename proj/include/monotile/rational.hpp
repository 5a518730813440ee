#pragma once

// Exact arithmetic types.
//
// Integer and Fraction are plain GMP classes and are used wherever sizes are
// small (matrices, simplex points, reports). Rational is the coordinate type
// of group elements: it keeps a reduced int64 numerator/denominator inline and
// only spills to a heap-allocated mpq_class when a value does not fit, so
// enumerating millions of lattice or Heisenberg points never allocates.

#include <gmpxx.h>

#include <climits>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace monotile {

using Integer  = mpz_class;
using Fraction = mpq_class;

Fraction    parse_fraction(std::string_view text);
Integer     parse_integer(std::string_view text);
std::string to_string(Fraction const& q);

class Rational {
 public:
  Rational() noexcept : _num(0), _den(1) {}
  Rational(std::int64_t n) noexcept : _num(n), _den(1) {  // NOLINT(runtime/explicit)
    if (n == INT64_MIN) {
      promote_min();
    }
  }
  Rational(int n) noexcept : Rational(static_cast<std::int64_t>(n)) {}
  Rational(std::int64_t n, std::int64_t d);
  explicit Rational(Fraction const& q);
  explicit Rational(Integer const& z);

  Rational(Rational const& other) : _num(other._num), _den(other._den) {
    if (_den == 0) {
      copy_big(other);
    }
  }
  Rational(Rational&& other) noexcept : _num(other._num), _den(other._den) {
    if (other._den == 0) {
      other._den = 1;
      other._num = 0;
    }
  }
  Rational& operator=(Rational const& other) {
    if (_den != 0 && other._den != 0) {
      _num = other._num;
      _den = other._den;
      return *this;
    }
    return assign_slow(other);
  }
  Rational& operator=(Rational&& other) noexcept {
    if (this != &other) {
      release();
      _num = other._num;
      _den = other._den;
      if (other._den == 0) {
        other._den = 1;
        other._num = 0;
      }
    }
    return *this;
  }
  ~Rational() {
    release();
  }

  static Rational parse(std::string_view text);

  bool is_small() const noexcept {
    return _den != 0;
  }
  bool is_integer() const noexcept;
  bool is_zero() const noexcept {
    return _den != 0 && _num == 0;
  }
  int sign() const noexcept;

  Integer  numerator() const;
  Integer  denominator() const;
  Fraction to_fraction() const;

  // Fast-path accessors; only meaningful when is_small().
  std::int64_t small_num() const noexcept {
    return _num;
  }
  std::int64_t small_den() const noexcept {
    return _den;
  }

  std::string str() const;
  std::size_t hash() const noexcept;

  Rational operator-() const;
  // Integer fast paths inline; everything else goes through __int128 or GMP.
  friend Rational operator+(Rational const& a, Rational const& b) {
    std::int64_t r;
    if (a._den == 1 && b._den == 1 && !__builtin_add_overflow(a._num, b._num, &r)
        && r != INT64_MIN) {
      return Rational(r, Small{});
    }
    return add_slow(a, b);
  }
  friend Rational operator-(Rational const& a, Rational const& b) {
    std::int64_t r;
    if (a._den == 1 && b._den == 1 && !__builtin_sub_overflow(a._num, b._num, &r)
        && r != INT64_MIN) {
      return Rational(r, Small{});
    }
    return sub_slow(a, b);
  }
  friend Rational operator*(Rational const& a, Rational const& b) {
    std::int64_t r;
    if (a._den == 1 && b._den == 1 && !__builtin_mul_overflow(a._num, b._num, &r)
        && r != INT64_MIN) {
      return Rational(r, Small{});
    }
    return mul_slow(a, b);
  }
  friend Rational operator/(Rational const& a, Rational const& b);
  Rational& operator+=(Rational const& b) {
    return *this = *this + b;
  }
  Rational& operator-=(Rational const& b) {
    return *this = *this - b;
  }

  Rational abs() const;
  // Largest integer <= value.
  Rational floor() const;

  friend bool operator==(Rational const& a, Rational const& b) noexcept {
    if (a._den != 0 && b._den != 0) {
      return a._num == b._num && a._den == b._den;
    }
    return equal_slow(a, b);
  }
  friend std::strong_ordering operator<=>(Rational const& a,
                                          Rational const& b) noexcept {
    if (a._den == 1 && b._den == 1) {
      return a._num <=> b._num;
    }
    return compare_slow(a, b);
  }

 private:
  struct Small {};
  Rational(std::int64_t n, Small) noexcept : _num(n), _den(1) {}

  // _den == 0 marks the heap representation; otherwise (_num, _den) is the
  // reduced value with _den > 0 and both magnitudes <= INT64_MAX.
  union {
    std::int64_t _num;
    mpq_class*   _big;
  };
  std::int64_t _den;

  void assign_fraction(Fraction&& q);
  void promote_min();
  void copy_big(Rational const& other);
  Rational& assign_slow(Rational const& other);
  void release() noexcept {
    if (_den == 0) {
      release_big();
    }
  }
  void release_big() noexcept;

  static bool                 equal_slow(Rational const& a, Rational const& b) noexcept;
  static std::strong_ordering compare_slow(Rational const& a, Rational const& b) noexcept;
  static Rational             add_slow(Rational const& a, Rational const& b);
  static Rational             sub_slow(Rational const& a, Rational const& b);
  static Rational             mul_slow(Rational const& a, Rational const& b);
};

}  // namespace monotile

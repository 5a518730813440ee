#include "monotile/rational.hpp"

#include <cctype>
#include <climits>
#include <functional>
#include <utility>

#include "monotile/error.hpp"

namespace monotile {

namespace {

  __extension__ typedef __int128          i128;
  __extension__ typedef unsigned __int128 u128;

  constexpr std::int64_t kMax = INT64_MAX;

  u128 gcd(u128 a, u128 b) noexcept {
    while (b != 0) {
      u128 t = a % b;
      a      = b;
      b      = t;
    }
    return a;
  }

  Integer to_integer(i128 v) {
    bool neg = v < 0;
    u128 u   = neg ? static_cast<u128>(0) - static_cast<u128>(v)
                   : static_cast<u128>(v);
    Integer hi(static_cast<unsigned long>(u >> 64));
    Integer r = hi << 64;
    r += static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL);
    return neg ? Integer(-r) : r;
  }

  std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
      s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
      s.remove_suffix(1);
    }
    return s;
  }

}  // namespace

Integer parse_integer(std::string_view text) {
  auto s = trim(text);
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
  }
  std::string_view digits = s;
  if (!digits.empty() && digits.front() == '-') {
    digits.remove_prefix(1);
  }
  if (digits.empty()) {
    throw Error(ErrorCode::encoding, "empty integer '" + std::string(text) + "'");
  }
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw Error(ErrorCode::encoding,
                  "malformed integer '" + std::string(text) + "'");
    }
  }
  return Integer(std::string(s), 10);
}

Fraction parse_fraction(std::string_view text) {
  auto s     = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    auto dot = s.find('.');
    if (dot == std::string_view::npos) {
      return Fraction(parse_integer(s));
    }
    // exact decimal: "0.125" -> 1/8
    auto frac = s.substr(dot + 1);
    auto head = s.substr(0, dot);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string_view::npos) {
      throw Error(ErrorCode::encoding, "malformed decimal '" + std::string(text) + "'");
    }
    bool    neg = !head.empty() && head[0] == '-';
    Integer whole = (head.empty() || head == "-" || head == "+") ? Integer(0) : parse_integer(head);
    Integer den(1);
    for (std::size_t i = 0; i < frac.size(); ++i) {
      den *= 10;
    }
    Integer num = abs(whole) * den + parse_integer(frac);
    Fraction q(neg ? Integer(-num) : num, den);
    q.canonicalize();
    return q;
  }
  Integer num = parse_integer(s.substr(0, slash));
  Integer den = parse_integer(s.substr(slash + 1));
  if (den == 0) {
    throw Error(ErrorCode::encoding, "zero denominator in '" + std::string(text) + "'");
  }
  Fraction q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(Fraction const& q) {
  return q.get_str();
}

////////////////////////////////////////////////////////////////////////////
// Rational
////////////////////////////////////////////////////////////////////////////

namespace {

  // Builds a canonical Rational from an exact 128-bit quotient.
  Rational from_i128(i128 n, i128 d) {
    if (d == 0) {
      throw Error(ErrorCode::domain, "division by zero");
    }
    if (d < 0) {
      n = -n;
      d = -d;
    }
    u128 un = n < 0 ? static_cast<u128>(0) - static_cast<u128>(n)
                    : static_cast<u128>(n);
    u128 g  = gcd(un, static_cast<u128>(d));
    if (g > 1) {
      n /= static_cast<i128>(g);
      d /= static_cast<i128>(g);
    }
    if (n <= kMax && n >= -kMax && d <= kMax) {
      return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    }
    Fraction q(to_integer(n), to_integer(d));
    q.canonicalize();
    return Rational(q);
  }

}  // namespace

void Rational::promote_min() {
  _den = 0;
  _big = new mpq_class(Integer(std::to_string(INT64_MIN)));
}

Rational::Rational(std::int64_t n, std::int64_t d) : _num(0), _den(1) {
  if (d == 0) {
    throw Error(ErrorCode::domain, "zero denominator");
  }
  i128 nn = n, dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  u128 un = nn < 0 ? static_cast<u128>(-nn) : static_cast<u128>(nn);
  u128 g  = gcd(un, static_cast<u128>(dd));
  if (g > 1) {
    nn /= static_cast<i128>(g);
    dd /= static_cast<i128>(g);
  }
  if (nn <= kMax && nn >= -kMax && dd <= kMax) {
    _num = static_cast<std::int64_t>(nn);
    _den = static_cast<std::int64_t>(dd);
  } else {
    Fraction q(to_integer(nn), to_integer(dd));
    q.canonicalize();
    assign_fraction(std::move(q));
  }
}

Rational::Rational(Fraction const& q) : _num(0), _den(1) {
  Fraction c(q);
  c.canonicalize();
  assign_fraction(std::move(c));
}

Rational::Rational(Integer const& z) : _num(0), _den(1) {
  assign_fraction(Fraction(z));
}

void Rational::copy_big(Rational const& other) {
  _big = new mpq_class(*other._big);
}

Rational& Rational::assign_slow(Rational const& other) {
  if (this != &other) {
    Rational tmp(other);
    *this = std::move(tmp);
  }
  return *this;
}

void Rational::release_big() noexcept {
  delete _big;
  _den = 1;
  _num = 0;
}

void Rational::assign_fraction(Fraction&& q) {
  release();
  mpz_srcptr n = q.get_num_mpz_t();
  mpz_srcptr d = q.get_den_mpz_t();
  if (mpz_fits_slong_p(n) && mpz_fits_slong_p(d)) {
    long ln = mpz_get_si(n);
    long ld = mpz_get_si(d);
    if (ln != LONG_MIN) {
      _num = ln;
      _den = ld;
      return;
    }
  }
  _big = new mpq_class(std::move(q));
  _den = 0;
}

Rational Rational::parse(std::string_view text) {
  return Rational(parse_fraction(text));
}

bool Rational::is_integer() const noexcept {
  if (_den != 0) {
    return _den == 1;
  }
  return mpz_cmp_ui(_big->get_den_mpz_t(), 1) == 0;
}

int Rational::sign() const noexcept {
  if (_den != 0) {
    return (_num > 0) - (_num < 0);
  }
  return sgn(*_big);
}

Integer Rational::numerator() const {
  if (_den != 0) {
    return Integer(static_cast<long>(_num));
  }
  return _big->get_num();
}

Integer Rational::denominator() const {
  if (_den != 0) {
    return Integer(static_cast<long>(_den));
  }
  return _big->get_den();
}

Fraction Rational::to_fraction() const {
  if (_den != 0) {
    return Fraction(Integer(static_cast<long>(_num)), Integer(static_cast<long>(_den)));
  }
  return *_big;
}

std::string Rational::str() const {
  if (_den != 0) {
    return _den == 1 ? std::to_string(_num)
                     : std::to_string(_num) + "/" + std::to_string(_den);
  }
  return _big->get_str();
}

std::size_t Rational::hash() const noexcept {
  if (_den != 0) {
    std::size_t h = std::hash<std::int64_t>{}(_num);
    return h ^ (std::hash<std::int64_t>{}(_den) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
  return std::hash<std::string>{}(_big->get_str());
}

Rational Rational::operator-() const {
  if (_den != 0) {
    Rational r;
    r._num = -_num;
    r._den = _den;
    return r;
  }
  return Rational(Fraction(-*_big));
}

Rational Rational::add_slow(Rational const& a, Rational const& b) {
  if (a._den != 0 && b._den != 0) {
    return from_i128(static_cast<i128>(a._num) * b._den + static_cast<i128>(b._num) * a._den,
                     static_cast<i128>(a._den) * b._den);
  }
  return Rational(Fraction(a.to_fraction() + b.to_fraction()));
}

Rational Rational::sub_slow(Rational const& a, Rational const& b) {
  if (a._den != 0 && b._den != 0) {
    return from_i128(static_cast<i128>(a._num) * b._den - static_cast<i128>(b._num) * a._den,
                     static_cast<i128>(a._den) * b._den);
  }
  return Rational(Fraction(a.to_fraction() - b.to_fraction()));
}

Rational Rational::mul_slow(Rational const& a, Rational const& b) {
  if (a._den != 0 && b._den != 0) {
    return from_i128(static_cast<i128>(a._num) * b._num,
                     static_cast<i128>(a._den) * b._den);
  }
  return Rational(Fraction(a.to_fraction() * b.to_fraction()));
}

Rational operator/(Rational const& a, Rational const& b) {
  if (b.is_zero()) {
    throw Error(ErrorCode::domain, "division by zero");
  }
  if (a._den != 0 && b._den != 0) {
    return from_i128(static_cast<i128>(a._num) * b._den,
                     static_cast<i128>(a._den) * b._num);
  }
  return Rational(Fraction(a.to_fraction() / b.to_fraction()));
}

Rational Rational::abs() const {
  return sign() < 0 ? -*this : *this;
}

Rational Rational::floor() const {
  if (_den != 0) {
    if (_den == 1) {
      return *this;
    }
    std::int64_t q = _num / _den;
    if (_num < 0 && _num % _den != 0) {
      --q;
    }
    return Rational(q);
  }
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), _big->get_num_mpz_t(), _big->get_den_mpz_t());
  return Rational(q);
}

bool Rational::equal_slow(Rational const& a, Rational const& b) noexcept {
  if (a._den != 0 || b._den != 0) {
    return false;  // canonical split: a small value is never stored on the heap
  }
  return *a._big == *b._big;
}

std::strong_ordering Rational::compare_slow(Rational const& a, Rational const& b) noexcept {
  if (a._den != 0 && b._den != 0) {
    i128 l = static_cast<i128>(a._num) * b._den;
    i128 r = static_cast<i128>(b._num) * a._den;
    return l < r ? std::strong_ordering::less
                 : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  int c = cmp(a.to_fraction(), b.to_fraction());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

}  // namespace monotile

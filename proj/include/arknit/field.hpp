#pragma once

// Exact scalar arithmetic: arbitrary-precision rationals and odd/even prime
// fields with a runtime modulus.
//
// Field descriptors (QQ, GF) are small value objects that manufacture
// elements; matrices and representations carry a descriptor copy so that
// zero/one of the right field is always constructible. Elements of distinct
// field *types* cannot meet (compile error); elements of GF(p) and GF(q)
// with p != q throw on contact.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "arknit/common.hpp"

namespace arknit {

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (maintained by the backing boost type).
class Rational {
 public:
  using backend = boost::multiprecision::cpp_rational;

  Rational() : v_(0) {}
  Rational(long long n) : v_(n) {}  // NOLINT: implicit by design
  Rational(long long num, long long den) {
    ARKNIT_CHECK(den != 0, "rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    v_ = backend(num, den);
  }
  explicit Rational(backend v) : v_(std::move(v)) {}

  /// Accepts "n" or "n/d" with optional leading '-'.
  static Rational from_string(std::string_view s);

  bool is_zero() const { return v_ == 0; }
  Rational inverse() const {
    ARKNIT_CHECK(!is_zero(), "inverse of zero");
    return Rational(backend(1) / v_);
  }
  Rational operator-() const { return Rational(-v_); }
  Rational operator+(const Rational& o) const { return Rational(v_ + o.v_); }
  Rational operator-(const Rational& o) const { return Rational(v_ - o.v_); }
  Rational operator*(const Rational& o) const { return Rational(v_ * o.v_); }
  Rational operator/(const Rational& o) const {
    ARKNIT_CHECK(!o.is_zero(), "division by zero");
    return Rational(v_ / o.v_);
  }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }

  std::string str() const { return v_.str(); }

  bool is_integer() const {
    return boost::multiprecision::denominator(v_) == 1;
  }
  /// The value as a machine integer; requires an integral value in range.
  long long as_int() const {
    ARKNIT_CHECK(is_integer(), "rational " + str() + " is not an integer");
    return boost::multiprecision::numerator(v_).template convert_to<long long>();
  }
  const backend& value() const { return v_; }

 private:
  backend v_;
};

inline Rational Rational::from_string(std::string_view s) {
  ARKNIT_CHECK(!s.empty(), "empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(backend(std::string(s)));
    }
    boost::multiprecision::cpp_int num{std::string(s.substr(0, slash))};
    boost::multiprecision::cpp_int den{std::string(s.substr(slash + 1))};
    ARKNIT_CHECK(den != 0, "rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    return Rational(backend(num, den));
  } catch (const std::exception& e) {
    throw Error("bad rational literal '" + std::string(s) + "': " + e.what());
  }
}

/// Field descriptor for the rationals.
struct QQ {
  using Elem = Rational;
  static constexpr bool is_finite = false;

  Elem zero() const { return Rational(); }
  Elem one() const { return Rational(1); }
  Elem from_int(long long n) const { return Rational(n); }
  Elem parse(std::string_view s) const { return Rational::from_string(s); }
  std::string name() const { return "Q"; }
  bool operator==(const QQ&) const { return true; }
  bool operator!=(const QQ&) const { return false; }
};

/// Element of GF(p). An untagged zero (modulus 0) is the default-constructed
/// state; it behaves as the zero of whichever field it first meets. Nonzero
/// elements always carry their modulus and refuse to mix across moduli.
class FpElem {
 public:
  FpElem() : v_(0), p_(0) {}
  FpElem(std::uint64_t v, std::uint64_t p) : v_(v % p), p_(p) {
    ARKNIT_CHECK(p >= 2, "modulus must be at least 2");
  }

  bool is_zero() const { return v_ == 0; }
  std::uint64_t residue() const { return v_; }
  std::uint64_t modulus() const { return p_; }

  FpElem operator-() const {
    if (v_ == 0) return *this;
    return FpElem(p_ - v_, p_);
  }
  FpElem operator+(const FpElem& o) const {
    std::uint64_t p = join(o);
    if (p == 0) return FpElem();
    return FpElem((v_ + o.v_) % p, p);
  }
  FpElem operator-(const FpElem& o) const { return *this + (-o); }
  FpElem operator*(const FpElem& o) const {
    std::uint64_t p = join(o);
    if (p == 0) return FpElem();
    using u128 = unsigned __int128;
    return FpElem(static_cast<std::uint64_t>((u128(v_) * o.v_) % p), p);
  }
  FpElem operator/(const FpElem& o) const { return *this * o.inverse(); }
  FpElem& operator+=(const FpElem& o) { return *this = *this + o; }
  FpElem& operator-=(const FpElem& o) { return *this = *this - o; }
  FpElem& operator*=(const FpElem& o) { return *this = *this * o; }

  FpElem inverse() const {
    ARKNIT_CHECK(v_ != 0, "inverse of zero");
    // Extended Euclid on (v, p); p prime so the gcd is 1.
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p_),
                 new_r = static_cast<std::int64_t>(v_);
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      t -= q * new_t;
      std::swap(t, new_t);
      r -= q * new_r;
      std::swap(r, new_r);
    }
    ARKNIT_CHECK(r == 1, "element not invertible; modulus not prime?");
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return FpElem(static_cast<std::uint64_t>(t), p_);
  }

  bool operator==(const FpElem& o) const {
    if (p_ != 0 && o.p_ != 0 && p_ != o.p_) {
      throw CheckError("comparing elements of GF(" + std::to_string(p_) +
                       ") and GF(" + std::to_string(o.p_) + ")");
    }
    return v_ == o.v_;
  }
  bool operator!=(const FpElem& o) const { return !(*this == o); }

  std::string str() const { return std::to_string(v_); }

 private:
  // Reconciles moduli: untagged zeros adopt the other side's field.
  std::uint64_t join(const FpElem& o) const {
    if (p_ == 0) return o.p_;
    if (o.p_ == 0) return p_;
    if (p_ != o.p_) {
      throw CheckError("mixing elements of GF(" + std::to_string(p_) +
                       ") and GF(" + std::to_string(o.p_) + ")");
    }
    return p_;
  }

  std::uint64_t v_;
  std::uint64_t p_;
};

/// Field descriptor for GF(p), p prime.
class GF {
 public:
  using Elem = FpElem;
  static constexpr bool is_finite = true;

  explicit GF(std::uint64_t p) : p_(p) {
    ARKNIT_CHECK(p >= 2, "modulus must be at least 2");
    for (std::uint64_t d = 2; d * d <= p; ++d) {
      ARKNIT_CHECK(p % d != 0,
                   "modulus " + std::to_string(p) + " is not prime");
    }
  }

  Elem zero() const { return FpElem(0, p_); }
  Elem one() const { return FpElem(1, p_); }
  Elem from_int(long long n) const {
    long long m = n % static_cast<long long>(p_);
    if (m < 0) m += static_cast<long long>(p_);
    return FpElem(static_cast<std::uint64_t>(m), p_);
  }
  /// Accepts "n" or "n/d"; throws if d vanishes in this field.
  Elem parse(std::string_view s) const {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return from_int(parse_int(s));
    Elem num = from_int(parse_int(s.substr(0, slash)));
    Elem den = from_int(parse_int(s.substr(slash + 1)));
    ARKNIT_CHECK(!den.is_zero(), "denominator vanishes in GF(" +
                                     std::to_string(p_) + ")");
    return num / den;
  }
  std::uint64_t modulus() const { return p_; }
  std::string name() const { return "F" + std::to_string(p_); }
  bool operator==(const GF& o) const { return p_ == o.p_; }
  bool operator!=(const GF& o) const { return p_ != o.p_; }

 private:
  static long long parse_int(std::string_view s) {
    try {
      size_t used = 0;
      long long v = std::stoll(std::string(s), &used);
      ARKNIT_CHECK(used == s.size(), "trailing junk in integer literal");
      return v;
    } catch (const CheckError&) {
      throw;
    } catch (const std::exception&) {
      throw Error("bad integer literal '" + std::string(s) + "'");
    }
  }

  std::uint64_t p_;
};

}  // namespace arknit

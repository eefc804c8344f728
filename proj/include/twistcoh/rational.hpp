#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "twistcoh/errors.hpp"

namespace twistcoh {

/// Exact rational number. Always canonical: denominator > 0, gcd(num, den) = 1.
class Rat {
 public:
  Rat() = default;
  Rat(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rat(long n, long d) {
    if (d == 0) throw Error("rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  Rat(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw Error("rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }

  /// Parses "p/q" or "p"; a leading '-' (or U+2212) is allowed on p only.
  static Rat parse(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (s.substr(0, 1) == "-") {
      negative = true;
      s.remove_prefix(1);
    } else if (s.substr(0, 3) == "\xE2\x88\x92") {
      negative = true;
      s.remove_prefix(3);
    }
    auto digits = [](std::string_view d) {
      if (d.empty()) return false;
      for (char c : d)
        if (c < '0' || c > '9') return false;
      return true;
    };
    const auto slash = s.find('/');
    const std::string_view num = s.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!digits(num) || !digits(den)) throw ParseError("malformed rational \"" + std::string(text) + "\"");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in rational \"" + std::string(text) + "\"");
    if (negative) n = -n;
    return Rat(n, d);
  }

  /// "p/q", or "p" when q = 1.
  std::string str() const {
    std::string out = v_.get_num().get_str();
    if (v_.get_den() != 1) out += "/" + v_.get_den().get_str();
    return out;
  }

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  Rat inverse() const {
    if (is_zero()) throw Error("inverse of zero");
    return Rat(mpq_class(1) / v_);
  }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw Error("division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class v_;
};

/// a += b * c without a temporary Rat.
inline void add_product(Rat& a, const Rat& b, const Rat& c) {
  if (b.is_zero() || c.is_zero()) return;
  a += b * c;
}

}  // namespace twistcoh

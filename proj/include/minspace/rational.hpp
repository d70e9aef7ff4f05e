#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>
#include <string_view>

namespace minspace {

using Rational = boost::multiprecision::cpp_rational;

/// "3", "1/2" or "-5/7".
[[nodiscard]] std::string to_string(const Rational& q);

/// Accepts integers, fractions "a/b" and exact decimals "0.75".
/// Throws Error("bad-number").
[[nodiscard]] Rational parse_rational(std::string_view text);

/// Nonnegative rational or +infinity.
class Extended {
public:
  Extended() = default;
  Extended(Rational v) : value_(std::move(v)) {} // NOLINT(google-explicit-constructor)
  Extended(long long v) : value_(v) {}            // NOLINT(google-explicit-constructor)

  static Extended infinity() {
    Extended e;
    e.infinite_ = true;
    return e;
  }

  [[nodiscard]] bool is_infinite() const noexcept { return infinite_; }
  /// Finite value; throws on infinity.
  [[nodiscard]] const Rational& value() const;

  friend Extended operator+(const Extended& a, const Extended& b);
  friend bool operator==(const Extended& a, const Extended& b);
  friend std::strong_ordering operator<=>(const Extended& a, const Extended& b);

  /// "inf" or the rational.
  [[nodiscard]] std::string to_string() const;
  /// Also accepts "inf".
  static Extended parse(std::string_view text);

private:
  bool infinite_ = false;
  Rational value_{0};
};

/// |a - b| of finite values.
[[nodiscard]] Rational abs_diff(const Rational& a, const Rational& b);

} // namespace minspace

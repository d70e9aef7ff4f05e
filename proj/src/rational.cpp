#include "minspace/rational.hpp"

#include "minspace/error.hpp"

#include <cctype>

namespace minspace {

std::string to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

boost::multiprecision::cpp_int parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw Error("bad-number", "malformed number '" + std::string(whole) + "'");
  for (char ch : digits)
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw Error("bad-number", "malformed number '" + std::string(whole) + "'");
  return boost::multiprecision::cpp_int(std::string(digits));
}

} // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational out;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = parse_digits(body.substr(0, slash), text);
    const auto den = parse_digits(body.substr(slash + 1), text);
    if (den == 0) throw Error("bad-number", "zero denominator in '" + std::string(text) + "'");
    out = Rational(num, den);
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const std::string_view ip = body.substr(0, dot);
    const std::string_view fp = body.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw Error("bad-number", "malformed number '" + std::string(text) + "'");
    boost::multiprecision::cpp_int scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    const auto whole = ip.empty() ? boost::multiprecision::cpp_int(0) : parse_digits(ip, text);
    const auto frac = fp.empty() ? boost::multiprecision::cpp_int(0) : parse_digits(fp, text);
    out = Rational(whole * scale + frac, scale);
  } else {
    out = Rational(parse_digits(body, text));
  }
  return negative ? Rational(-out) : out;
}

const Rational& Extended::value() const {
  if (infinite_) throw Error("infinite-distance", "value is infinite");
  return value_;
}

Extended operator+(const Extended& a, const Extended& b) {
  if (a.infinite_ || b.infinite_) return Extended::infinity();
  return Extended(Rational(a.value_ + b.value_));
}

bool operator==(const Extended& a, const Extended& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Extended& a, const Extended& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (b.value_ < a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Extended::to_string() const { return infinite_ ? "inf" : minspace::to_string(value_); }

Extended Extended::parse(std::string_view text) {
  if (text == "inf" || text == "Infinity" || text == "infinity") return infinity();
  return Extended(parse_rational(text));
}

Rational abs_diff(const Rational& a, const Rational& b) { return a < b ? Rational(b - a) : Rational(a - b); }

} // namespace minspace

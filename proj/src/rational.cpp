#include "velim/rational.hpp"

#include "velim/errors.hpp"

namespace velim {

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  try {
    using Int = boost::multiprecision::cpp_int;
    if (slash == std::string_view::npos) {
      return Rational(Int(std::string(text)));
    }
    Int num{std::string(text.substr(0, slash))};
    Int den{std::string(text.substr(slash + 1))};
    if (den == 0)
      throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'");
  }
}

std::string format_rational(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

}  // namespace velim

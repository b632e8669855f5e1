#include "veechmix/rational.hpp"

#include <cctype>

namespace veechmix {

std::string to_string(const Rational& r) {
  if (is_integer(r)) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  auto check_digits = [&](const std::string& s) {
    if (s.empty()) throw ParseError("bad rational literal: " + text);
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw ParseError("bad rational literal: " + text);
    for (std::size_t i = start; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw ParseError("bad rational literal: " + text);
    }
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    check_digits(text);
    return Rational(BigInt(text));
  }
  std::string p = text.substr(0, slash);
  std::string q = text.substr(slash + 1);
  check_digits(p);
  check_digits(q);
  BigInt qi(q);
  if (qi == 0) throw ParseError("zero denominator: " + text);
  return Rational(BigInt(p), qi);
}

}  // namespace veechmix

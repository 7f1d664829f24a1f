#include "ig/rational.hpp"

#include <cctype>

#include "ig/errors.hpp"

namespace ig {

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ValidationError("empty rational literal");
  std::size_t slash = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '/') {
      if (slash != 0 || i == 0 || i + 1 == text.size())
        throw ValidationError("malformed rational '" + std::string(text) + "'");
      slash = i;
    } else if (!std::isdigit(static_cast<unsigned char>(c)) && !(i == 0 && c == '-')) {
      throw ValidationError("malformed rational '" + std::string(text) + "'");
    }
  }
  Rational q;
  if (q.set_str(std::string(text), 10) != 0)
    throw ValidationError("malformed rational '" + std::string(text) + "'");
  if (slash != 0 && q.get_den() == 0) throw ValidationError("zero denominator");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double approx(const Rational& q) { return q.get_d(); }

}  // namespace ig

#include "oneclock/rational.h"

#include <cctype>

#include "oneclock/error.h"

namespace oneclock {

namespace {

bool IsIntegerLiteral(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) : q_(num, den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_.canonicalize();
}

Rational Rational::Parse(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : text.substr(slash + 1);
  if (!IsIntegerLiteral(num) || !IsIntegerLiteral(den) ||
      den.front() == '-' || den.front() == '+') {
    throw DomainError("malformed rational '" + std::string(text) + "'");
  }
  if (num.front() == '+') num.remove_prefix(1);
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw DomainError("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(mpq_class(n, d));
}

std::string Rational::ToString() const { return q_.get_str(10); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.q_ == 0) throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

std::size_t Rational::Hash() const {
  std::size_t h = std::hash<std::string>()(q_.get_num().get_str(16));
  h ^= std::hash<std::string>()(q_.get_den().get_str(16)) + 0x9e3779b97f4a7c15ULL +
       (h << 6) + (h >> 2);
  return h;
}

}  // namespace oneclock

#include "bundle_forge/rational.hpp"

#include "bundle_forge/errors.hpp"

#include <cctype>

namespace bundle_forge {

namespace {

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer_text(num) || !valid_integer_text(den) || den.front() == '-' || den.front() == '+')
    throw InvalidInput("malformed rational '" + std::string(text) + "'");
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  mpz_class d{std::string(den)};
  if (d == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  Rational q(mpz_class(n), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational GaussianRational::inverse() const {
  Rational n = norm();
  if (sgn(n) == 0) throw InvalidInput("division by zero Gaussian rational");
  return {re_ / n, -im_ / n};
}

std::string to_string(const GaussianRational& q) {
  if (q.is_real()) return q.re().get_str();
  if (sgn(q.re()) == 0) return q.im().get_str() + "i";
  std::string im = q.im().get_str();
  return "(" + q.re().get_str() + (sgn(q.im()) > 0 ? "+" : "") + im + "i)";
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& q) { return os << to_string(q); }

RadicalSplit split_radical(const Rational& q) {
  if (sgn(q) <= 0) throw InvalidInput("radical weight must be positive, got " + q.get_str());
  // sqrt(p/d) = sqrt(p*d)/d; strip square factors of p*d by trial division.
  mpz_class m = q.get_num() * q.get_den();
  mpz_class square_root = 1;
  mpz_class squarefree = 1;
  for (mpz_class f = 2; f * f <= m; ++f) {
    while (m % (f * f) == 0) {
      m /= f * f;
      square_root *= f;
    }
    if (m % f == 0) {
      m /= f;
      squarefree *= f;
    }
  }
  squarefree *= m;
  Rational root(square_root, q.get_den());
  root.canonicalize();
  return {root, squarefree};
}

}  // namespace bundle_forge

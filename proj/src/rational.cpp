#include "polydyn/rational.hpp"

#include "polydyn/errors.hpp"

namespace polydyn {

Rational::Rational(const mpz_class& n, const mpz_class& d) {
  if (d == 0) throw DomainError("zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view s) {
  std::string t;
  for (char c : s)
    if (c != ' ' && c != '\t' && c != '+') t.push_back(c);
  if (t.empty()) throw DomainError("empty rational");
  auto slash = t.find('/');
  mpz_class n, d(1);
  auto num = t.substr(0, slash);
  if (n.set_str(num, 10) != 0) throw DomainError("bad rational: " + std::string(s));
  if (slash != std::string::npos) {
    if (d.set_str(t.substr(slash + 1), 10) != 0) throw DomainError("bad rational: " + std::string(s));
  }
  return Rational(n, d);
}

Rational Rational::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  return Rational(mpq_class(1 / v_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  v_ /= o.v_;
  return *this;
}

std::size_t Rational::bits() const {
  return mpz_sizeinbase(v_.get_num_mpz_t(), 2) + mpz_sizeinbase(v_.get_den_mpz_t(), 2);
}

Rational pow(const Rational& x, long e) {
  if (e < 0) return pow(x.inverse(), -e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), x.value().get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), x.value().get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(n, d);
}

bool exact_root(const Rational& x, unsigned long k, Rational& out) {
  if (k == 0) return false;
  if (x.sign() < 0 && k % 2 == 0) return false;
  mpz_class n = x.num(), d = x.den(), rn, rd;
  bool neg = n < 0;
  if (neg) n = -n;
  if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), k)) return false;
  if (!mpz_root(rd.get_mpz_t(), d.get_mpz_t(), k)) return false;
  out = Rational(neg ? mpz_class(-rn) : rn, rd);
  return true;
}

std::string to_string(const Rational& r) { return r.str(); }

}  // namespace polydyn

#include "polydyn/parampoly.hpp"

#include <algorithm>

#include "polydyn/errors.hpp"

namespace polydyn {

int Degree::value() const {
  if (neg_inf_) throw DomainError("degree of the zero polynomial is -inf");
  return v_;
}

ParamPoly::ParamPoly(const Rational& c) {
  if (!c.is_zero()) c_.push_back(c);
}

ParamPoly::ParamPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

ParamPoly ParamPoly::t() { return ParamPoly(std::vector<Rational>{Rational(0), Rational(1)}); }

void ParamPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

ParamPoly ParamPoly::parse(std::string_view s) {
  auto b = s.find('[');
  if (b == std::string_view::npos) return ParamPoly(Rational::parse(s));
  auto e = s.find(']', b);
  if (e == std::string_view::npos) throw DomainError("unterminated parameter polynomial");
  std::vector<Rational> v;
  auto body = s.substr(b + 1, e - b - 1);
  std::size_t pos = 0;
  while (pos <= body.size()) {
    auto comma = body.find(',', pos);
    auto tok = body.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (tok.find_first_not_of(" \t") != std::string_view::npos) v.push_back(Rational::parse(tok));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return ParamPoly(std::move(v));
}

Degree ParamPoly::degree() const {
  if (c_.empty()) return Degree::neg_inf();
  return Degree(static_cast<int>(c_.size()) - 1);
}

Rational ParamPoly::leading() const { return c_.empty() ? Rational() : c_.back(); }

ParamPoly ParamPoly::inverse() const {
  if (c_.size() != 1) throw DomainError("parameter polynomial is not a unit: " + str());
  return ParamPoly(c_[0].inverse());
}

Rational ParamPoly::eval(const Rational& t) const {
  Rational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

ParamPoly ParamPoly::compose(const ParamPoly& inner) const {
  ParamPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + ParamPoly(*it);
  return acc;
}

std::size_t ParamPoly::bits() const {
  std::size_t b = 0;
  for (const auto& c : c_) b += c.bits();
  return b;
}

std::string ParamPoly::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ", ";
    s += c_[i].str();
  }
  return s + "]";
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return ParamPoly();
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return ParamPoly(std::move(r));
}

ParamPoly operator-(const ParamPoly& a) {
  ParamPoly r = a;
  for (auto& c : r.c_) c = -c;
  return r;
}

bool operator<(const ParamPoly& a, const ParamPoly& b) {
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
  return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
}

void ParamPoly::divmod(const ParamPoly& a, const ParamPoly& b, ParamPoly& q, ParamPoly& r) {
  if (b.is_zero()) throw DomainError("division by zero polynomial");
  r = a;
  std::vector<Rational> qc;
  if (a.c_.size() >= b.c_.size()) qc.resize(a.c_.size() - b.c_.size() + 1);
  Rational inv = b.c_.back().inverse();
  while (!r.is_zero() && r.c_.size() >= b.c_.size()) {
    std::size_t shift = r.c_.size() - b.c_.size();
    Rational f = r.c_.back() * inv;
    qc[shift] = f;
    for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i + shift] -= f * b.c_[i];
    r.trim();
  }
  q = ParamPoly(std::move(qc));
}

ParamPoly ParamPoly::gcd(ParamPoly a, ParamPoly b) {
  while (!b.is_zero()) {
    ParamPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  Rational inv = a.leading().inverse();
  for (auto& c : a.c_) c *= inv;
  return a;
}

ParamPoly ParamPoly::derivative() const {
  std::vector<Rational> r;
  for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * Rational(static_cast<long>(i)));
  return ParamPoly(std::move(r));
}

}  // namespace polydyn

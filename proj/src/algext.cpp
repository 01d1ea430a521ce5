#include "polydyn/algext.hpp"

#include <algorithm>

#include "polydyn/errors.hpp"

namespace polydyn {

namespace {

std::optional<Modulus> join(const std::optional<Modulus>& a, const std::optional<Modulus>& b) {
  if (!a) return b;
  if (!b) return a;
  if (!(*a == *b)) throw DomainError("ring mismatch: " + a->str() + " vs " + b->str());
  return a;
}

}  // namespace

AlgExt::AlgExt(const Modulus& m, std::vector<Rational> coords) : mod_(m), coords_(std::move(coords)) {
  if (m.e < 1) throw DomainError("extension degree must be positive");
  if (m.A.is_zero()) throw DomainError("modulus alpha^e = 0 is not a field");
  // reduce powers >= e
  for (std::size_t i = coords_.size(); i-- > static_cast<std::size_t>(m.e);) {
    coords_[i - m.e] += coords_[i] * m.A;
  }
  coords_.resize(m.e);
}

AlgExt AlgExt::generator(const Modulus& m) {
  std::vector<Rational> c(2);
  c[1] = Rational(1);
  return AlgExt(m, c);
}

AlgExt AlgExt::bound_to(const Modulus& m) const {
  if (mod_) {
    if (!(*mod_ == m)) throw DomainError("ring mismatch: " + mod_->str() + " vs " + m.str());
    return *this;
  }
  return AlgExt(m, coords_);
}

bool AlgExt::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& r) { return r.is_zero(); });
}

bool AlgExt::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (!coords_[i].is_zero()) return false;
  return true;
}

Rational AlgExt::as_rational() const {
  if (!is_rational()) throw DomainError("element is not rational: " + str());
  return coords_[0];
}

AlgExt operator+(const AlgExt& a, const AlgExt& b) {
  auto m = join(a.mod_, b.mod_);
  std::vector<Rational> c(std::max(a.coords_.size(), b.coords_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coord(i) + b.coord(i);
  if (!m) return AlgExt(c[0]);
  return AlgExt(*m, std::move(c));
}

AlgExt operator-(const AlgExt& a) {
  AlgExt r = a;
  for (auto& c : r.coords_) c = -c;
  return r;
}

AlgExt operator-(const AlgExt& a, const AlgExt& b) { return a + (-b); }

AlgExt operator*(const AlgExt& a, const AlgExt& b) {
  auto m = join(a.mod_, b.mod_);
  std::vector<Rational> c(a.coords_.size() + b.coords_.size() - 1);
  for (std::size_t i = 0; i < a.coords_.size(); ++i) {
    if (a.coords_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coords_.size(); ++j) c[i + j] += a.coords_[i] * b.coords_[j];
  }
  if (!m) return AlgExt(c[0]);
  return AlgExt(*m, std::move(c));
}

bool operator==(const AlgExt& a, const AlgExt& b) {
  if (a.mod_ && b.mod_ && !(*a.mod_ == *b.mod_)) return false;
  std::size_t n = std::max(a.coords_.size(), b.coords_.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a.coord(i) != b.coord(i)) return false;
  return true;
}

bool operator<(const AlgExt& a, const AlgExt& b) {
  std::size_t n = std::max(a.coords_.size(), b.coords_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coord(i) < b.coord(i)) return true;
    if (b.coord(i) < a.coord(i)) return false;
  }
  return false;
}

// Solve x * this = 1 as a linear system on coordinates.
AlgExt AlgExt::inverse() const {
  if (!mod_) return AlgExt(coords_[0].inverse());
  const int e = mod_->e;
  std::vector<std::vector<Rational>> M(e, std::vector<Rational>(e + 1));
  AlgExt basis = AlgExt(*mod_, {Rational(1)});
  AlgExt gen = generator(*mod_);
  for (int j = 0; j < e; ++j) {
    AlgExt col = *this * basis;
    for (int i = 0; i < e; ++i) M[i][j] = col.coord(i);
    basis = basis * gen;
  }
  M[0][e] = Rational(1);
  for (int c = 0; c < e; ++c) {
    int p = c;
    while (p < e && M[p][c].is_zero()) ++p;
    if (p == e) throw DomainError("element is not invertible: " + str());
    std::swap(M[p], M[c]);
    Rational inv = M[c][c].inverse();
    for (int k = c; k <= e; ++k) M[c][k] *= inv;
    for (int r = 0; r < e; ++r) {
      if (r == c || M[r][c].is_zero()) continue;
      Rational f = M[r][c];
      for (int k = c; k <= e; ++k) M[r][k] -= f * M[c][k];
    }
  }
  std::vector<Rational> x(e);
  for (int i = 0; i < e; ++i) x[i] = M[i][e];
  return AlgExt(*mod_, std::move(x));
}

std::string AlgExt::str() const {
  if (is_rational()) return coords_[0].str();
  std::string s = "{";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ", ";
    s += coords_[i].str();
  }
  return s + "}";
}

AlgExt parse_algext(std::string_view s, const std::optional<Modulus>& m) {
  auto b = s.find('{');
  std::vector<Rational> v;
  if (b == std::string_view::npos) {
    v.push_back(Rational::parse(s));
  } else {
    auto e = s.find('}', b);
    if (e == std::string_view::npos) throw DomainError("unterminated extension element");
    auto body = s.substr(b + 1, e - b - 1);
    std::size_t pos = 0;
    while (true) {
      auto comma = body.find(',', pos);
      auto tok = body.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
      if (tok.find_first_not_of(" \t") != std::string_view::npos) v.push_back(Rational::parse(tok));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (v.empty()) v.push_back(Rational());
  }
  if (!m) {
    if (v.size() > 1) throw DomainError("extension element without a modulus");
    return AlgExt(v[0]);
  }
  return AlgExt(*m, std::move(v));
}

}  // namespace polydyn

#include "cbtau/diffpoly.hpp"

#include <sstream>

#include "cbtau/errors.hpp"

namespace cbtau {

DiffPoly::DiffPoly(const Rational& c) {
  if (!cbtau::is_zero(c)) terms_[DiffMonomial{}] = c;
}

DiffPoly DiffPoly::t(int power) {
  DiffPoly p;
  p.terms_[DiffMonomial{power, {}}] = 1;
  return p;
}

DiffPoly DiffPoly::T(int j) {
  if (j < 0 || j > 3) throw UsageError("derivative order out of range");
  DiffMonomial m;
  m.e[j] = 1;
  DiffPoly p;
  p.terms_[m] = 1;
  return p;
}

void DiffPoly::add_term(const DiffMonomial& m, const Rational& c) {
  if (cbtau::is_zero(c)) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (cbtau::is_zero(it->second)) terms_.erase(it);
  }
}

bool DiffPoly::is_homogeneous(int* degree) const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    if (d < 0) d = m.degree();
    if (m.degree() != d) return false;
  }
  if (degree) *degree = d;
  return true;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

DiffPoly& DiffPoly::operator*=(const DiffPoly& o) {
  DiffPoly out;
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      DiffMonomial m{a.tpow + b.tpow, {}};
      for (int j = 0; j < 4; ++j) m.e[j] = a.e[j] + b.e[j];
      out.add_term(m, ca * cb);
    }
  *this = std::move(out);
  return *this;
}

DiffPoly DiffPoly::derive() const {
  DiffPoly out;
  for (const auto& [m, c] : terms_) {
    if (m.tpow != 0) {
      DiffMonomial d = m;
      d.tpow -= 1;
      out.add_term(d, c * m.tpow);
    }
    for (int j = 0; j < 4; ++j) {
      if (m.e[j] == 0) continue;
      if (j == 3) throw UsageError("cannot differentiate T_3");
      DiffMonomial d = m;
      d.e[j] -= 1;
      d.e[j + 1] += 1;
      out.add_term(d, c * m.e[j]);
    }
  }
  return out;
}

std::string DiffPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << cbtau::to_string(c) << ")";
    if (m.tpow) os << "*t^" << m.tpow;
    for (int j = 0; j < 4; ++j)
      if (m.e[j]) os << "*T" << j << "^" << m.e[j];
  }
  return os.str();
}

}  // namespace cbtau

#include "cellkit/poly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace cellkit {

namespace {

void append_term(std::ostream& out, bool first, long long c, int e,
                 const char* var) {
  if (!first) out << (c < 0 ? " - " : " + ");
  long long a = (!first && c < 0) ? -c : c;
  if (e == 0) {
    out << a;
    return;
  }
  if (a == -1)
    out << '-';
  else if (a != 1)
    out << a;
  out << var;
  if (e != 1) out << '^' << e;
}

}  // namespace

Poly Poly::monomial(long long coeff, int degree) {
  Poly p;
  if (coeff != 0) {
    assert(degree >= 0);
    p.c_.assign(static_cast<std::size_t>(degree) + 1, 0);
    p.c_.back() = coeff;
  }
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void Poly::add_scaled(const Poly& p, long long c, int shift) {
  if (c == 0 || p.is_zero()) return;
  assert(shift >= 0);
  std::size_t need = p.c_.size() + static_cast<std::size_t>(shift);
  if (c_.size() < need) c_.resize(need, 0);
  for (std::size_t i = 0; i < p.c_.size(); ++i)
    c_[i + static_cast<std::size_t>(shift)] += c * p.c_[i];
  trim();
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  if (a.is_zero() || b.is_zero()) return out;
  out.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      out.c_[i + j] += a.c_[i] * b.c_[j];
  }
  out.trim();
  return out;
}

long long Poly::eval_one() const {
  long long s = 0;
  for (long long c : c_) s += c;
  return s;
}

bool Poly::all_coeffs_nonnegative() const {
  return std::all_of(c_.begin(), c_.end(), [](long long v) { return v >= 0; });
}

Poly Poly::from_coeffs(std::vector<long long> coeffs) {
  Poly p;
  p.c_ = std::move(coeffs);
  p.trim();
  return p;
}

std::string Poly::str(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    append_term(out, first, c_[i], static_cast<int>(i), var);
    first = false;
  }
  return out.str();
}

std::size_t Poly::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (long long c : c_) {
    h ^= static_cast<std::size_t>(c);
    h *= 1099511628211ull;
  }
  return h;
}

Laurent Laurent::monomial(long long coeff, int exponent) {
  Laurent p;
  if (coeff != 0) {
    p.lo_ = exponent;
    p.c_.push_back(coeff);
  }
  return p;
}

Laurent Laurent::v_plus_vinv() {
  Laurent p;
  p.lo_ = -1;
  p.c_ = {1, 0, 1};
  return p;
}

void Laurent::trim() {
  std::size_t skip = 0;
  while (skip < c_.size() && c_[skip] == 0) ++skip;
  if (skip == c_.size()) {
    c_.clear();
    lo_ = 0;
    return;
  }
  if (skip > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(skip));
    lo_ += static_cast<int>(skip);
  }
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void Laurent::add_scaled(const Laurent& p, long long c, int shift) {
  if (c == 0 || p.is_zero()) return;
  int plo = p.lo_ + shift;
  int phi = plo + static_cast<int>(p.c_.size()) - 1;
  if (c_.empty()) {
    lo_ = plo;
    c_.assign(p.c_.size(), 0);
  } else {
    int lo = std::min(lo_, plo);
    int hi = std::max(lo_ + static_cast<int>(c_.size()) - 1, phi);
    if (lo < lo_) {
      c_.insert(c_.begin(), static_cast<std::size_t>(lo_ - lo), 0);
      lo_ = lo;
    }
    if (hi > lo_ + static_cast<int>(c_.size()) - 1)
      c_.resize(static_cast<std::size_t>(hi - lo_) + 1, 0);
  }
  for (std::size_t i = 0; i < p.c_.size(); ++i)
    c_[static_cast<std::size_t>(plo - lo_) + i] += c * p.c_[i];
  trim();
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent out;
  if (a.is_zero() || b.is_zero()) return out;
  out.lo_ = a.lo_ + b.lo_;
  out.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      out.c_[i + j] += a.c_[i] * b.c_[j];
  }
  out.trim();
  return out;
}

long long Laurent::eval_one() const {
  long long s = 0;
  for (long long c : c_) s += c;
  return s;
}

std::string Laurent::str(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    append_term(out, first, c_[i], lo_ + static_cast<int>(i), var);
    first = false;
  }
  return out.str();
}

}  // namespace cellkit

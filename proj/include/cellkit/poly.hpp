#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace cellkit {

// Polynomial in q with integer coefficients.  Coefficients are stored
// densely; trailing zeros are trimmed so that two equal polynomials have
// identical storage.
class Poly {
 public:
  static constexpr int kNegInfinity = std::numeric_limits<int>::min();

  Poly() = default;
  explicit Poly(long long constant) {
    if (constant != 0) c_.push_back(constant);
  }

  static Poly monomial(long long coeff, int degree);

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

  // Degree of the zero polynomial is kNegInfinity.
  int degree() const {
    return c_.empty() ? kNegInfinity : static_cast<int>(c_.size()) - 1;
  }

  long long coeff(int d) const {
    if (d < 0 || d >= static_cast<int>(c_.size())) return 0;
    return c_[static_cast<std::size_t>(d)];
  }

  // *this += c * q^shift * p
  void add_scaled(const Poly& p, long long c, int shift);

  Poly& operator+=(const Poly& o) {
    add_scaled(o, 1, 0);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    add_scaled(o, -1, 0);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  long long eval_one() const;
  bool all_coeffs_nonnegative() const;

  const std::vector<long long>& coeffs() const { return c_; }
  static Poly from_coeffs(std::vector<long long> coeffs);

  std::string str(const char* var = "q") const;
  std::size_t hash() const;

 private:
  void trim();
  std::vector<long long> c_;
};

struct PolyHash {
  std::size_t operator()(const Poly& p) const { return p.hash(); }
};

// Laurent polynomial in v with integer coefficients (v^2 = q in the Hecke
// conventions used by this project; the class itself is generic).
class Laurent {
 public:
  static constexpr int kNegInfinity = std::numeric_limits<int>::min();
  static constexpr int kPosInfinity = std::numeric_limits<int>::max();

  Laurent() = default;
  explicit Laurent(long long constant) {
    if (constant != 0) {
      lo_ = 0;
      c_.push_back(constant);
    }
  }
  static Laurent monomial(long long coeff, int exponent);

  // v + v^{-1}
  static Laurent v_plus_vinv();

  bool is_zero() const { return c_.empty(); }
  // Minimum exponent (kPosInfinity on zero); maximum (kNegInfinity on zero).
  int min_exp() const { return c_.empty() ? kPosInfinity : lo_; }
  int max_exp() const {
    return c_.empty() ? kNegInfinity : lo_ + static_cast<int>(c_.size()) - 1;
  }
  long long coeff(int e) const {
    if (c_.empty() || e < lo_ || e > max_exp()) return 0;
    return c_[static_cast<std::size_t>(e - lo_)];
  }

  // *this += c * v^shift * p
  void add_scaled(const Laurent& p, long long c, int shift = 0);

  Laurent& operator+=(const Laurent& o) {
    add_scaled(o, 1);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    add_scaled(o, -1);
    return *this;
  }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.lo_ == b.lo_ && a.c_ == b.c_;
  }
  friend bool operator!=(const Laurent& a, const Laurent& b) {
    return !(a == b);
  }

  long long eval_one() const;
  std::string str(const char* var = "v") const;

 private:
  void trim();
  int lo_ = 0;
  std::vector<long long> c_;
};

}  // namespace cellkit

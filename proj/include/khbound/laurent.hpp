#pragma once

#include <map>
#include <string>

namespace khbound {

/// Laurent polynomial in one variable with integer coefficients.
class Laurent {
 public:
  Laurent() = default;
  /// c * x^exponent
  static Laurent monomial(int exponent, long long coefficient = 1);

  const std::map<int, long long>& terms() const { return terms_; }
  long long coefficient(int exponent) const;
  bool is_zero() const { return terms_.empty(); }
  int min_degree() const;
  int max_degree() const;

  void add_term(int exponent, long long coefficient);
  Laurent& operator+=(const Laurent& rhs);
  Laurent& operator-=(const Laurent& rhs);
  Laurent& operator*=(const Laurent& rhs);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(Laurent a, const Laurent& b) { return a *= b; }
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }

  Laurent pow(unsigned n) const;
  /// x -> x^-1
  Laurent invert_variable() const;
  /// x -> x^k
  Laurent substitute_power(int k) const;

  /// Human-readable form, e.g. "q^-1 + q" or "-q^9 + q^5 + q^3 + q".
  std::string to_string(const std::string& var = "q") const;

 private:
  std::map<int, long long> terms_;
};

}  // namespace khbound

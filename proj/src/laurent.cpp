#include "khbound/laurent.hpp"

#include <stdexcept>

namespace khbound {

Laurent Laurent::monomial(int exponent, long long coefficient) {
  Laurent p;
  p.add_term(exponent, coefficient);
  return p;
}

long long Laurent::coefficient(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? 0 : it->second;
}

int Laurent::min_degree() const {
  if (terms_.empty()) throw std::logic_error("Laurent::min_degree of zero polynomial");
  return terms_.begin()->first;
}

int Laurent::max_degree() const {
  if (terms_.empty()) throw std::logic_error("Laurent::max_degree of zero polynomial");
  return terms_.rbegin()->first;
}

void Laurent::add_term(int exponent, long long coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

Laurent& Laurent::operator+=(const Laurent& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Laurent& Laurent::operator*=(const Laurent& rhs) {
  Laurent out;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : rhs.terms_) out.add_term(e1 + e2, c1 * c2);
  }
  *this = std::move(out);
  return *this;
}

Laurent Laurent::pow(unsigned n) const {
  Laurent out = monomial(0);
  for (unsigned i = 0; i < n; ++i) out *= *this;
  return out;
}

Laurent Laurent::invert_variable() const {
  Laurent out;
  for (const auto& [e, c] : terms_) out.add_term(-e, c);
  return out;
}

Laurent Laurent::substitute_power(int k) const {
  Laurent out;
  for (const auto& [e, c] : terms_) out.add_term(e * k, c);
  return out;
}

std::string Laurent::to_string(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto [e, c] = *it;
    long long mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      s += std::to_string(mag);
      continue;
    }
    if (mag != 1) s += std::to_string(mag) + "*";
    s += var;
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace khbound

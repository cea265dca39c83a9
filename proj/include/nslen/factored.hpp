#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "nslen/errors.hpp"

namespace nslen {

/// A positive integer kept as a prime -> exponent map. Group orders in this
/// library routinely exceed 64 bits (60^6 and friends), so orders are never
/// collapsed to a machine word unless the caller checks fits_u64() first.
class FactoredInteger {
public:
  FactoredInteger() = default;

  static FactoredInteger one() { return FactoredInteger(); }

  static FactoredInteger from_u64(std::uint64_t n) {
    if (n == 0) throw Error("FactoredInteger: zero has no factorization");
    FactoredInteger r;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
      while (n % p == 0) {
        r.factors_[p] += 1;
        n /= p;
      }
    }
    if (n > 1) r.factors_[n] += 1;
    return r;
  }

  static FactoredInteger prime_power(std::uint64_t p, unsigned e) {
    FactoredInteger r;
    if (e > 0) r.factors_[p] = e;
    return r;
  }

  bool is_one() const { return factors_.empty(); }

  const std::map<std::uint64_t, unsigned>& factors() const { return factors_; }

  unsigned exponent_of(std::uint64_t p) const {
    auto it = factors_.find(p);
    return it == factors_.end() ? 0u : it->second;
  }

  bool divisible_by(std::uint64_t p) const { return exponent_of(p) > 0; }

  std::vector<std::uint64_t> primes() const {
    std::vector<std::uint64_t> ps;
    ps.reserve(factors_.size());
    for (auto& [p, e] : factors_) ps.push_back(p);
    return ps;
  }

  FactoredInteger& operator*=(const FactoredInteger& o) {
    for (auto& [p, e] : o.factors_) factors_[p] += e;
    return *this;
  }

  friend FactoredInteger operator*(FactoredInteger a, const FactoredInteger& b) {
    a *= b;
    return a;
  }

  /// Exact division; throws if the divisor does not divide this value.
  FactoredInteger operator/(const FactoredInteger& o) const {
    FactoredInteger r = *this;
    for (auto& [p, e] : o.factors_) {
      auto it = r.factors_.find(p);
      if (it == r.factors_.end() || it->second < e)
        throw Error("FactoredInteger: non-exact division");
      it->second -= e;
      if (it->second == 0) r.factors_.erase(it);
    }
    return r;
  }

  bool divides(const FactoredInteger& o) const {
    for (auto& [p, e] : factors_)
      if (o.exponent_of(p) < e) return false;
    return true;
  }

  friend bool operator==(const FactoredInteger& a, const FactoredInteger& b) {
    return a.factors_ == b.factors_;
  }
  friend bool operator!=(const FactoredInteger& a, const FactoredInteger& b) {
    return !(a == b);
  }

  FactoredInteger p_part(std::uint64_t p) const {
    return prime_power(p, exponent_of(p));
  }

  FactoredInteger p_prime_part(std::uint64_t p) const {
    FactoredInteger r = *this;
    r.factors_.erase(p);
    return r;
  }

  bool is_prime_power(std::uint64_t p) const {
    return factors_.empty() || (factors_.size() == 1 && factors_.begin()->first == p);
  }

  static FactoredInteger lcm(const FactoredInteger& a, const FactoredInteger& b) {
    FactoredInteger r = a;
    for (auto& [p, e] : b.factors_) {
      unsigned& cur = r.factors_[p];
      cur = std::max(cur, e);
    }
    return r;
  }

  static FactoredInteger gcd(const FactoredInteger& a, const FactoredInteger& b) {
    FactoredInteger r;
    for (auto& [p, e] : a.factors_) {
      unsigned f = std::min(e, b.exponent_of(p));
      if (f > 0) r.factors_[p] = f;
    }
    return r;
  }

  bool fits_u64() const {
    std::uint64_t acc = 1;
    for (auto& [p, e] : factors_)
      for (unsigned i = 0; i < e; ++i) {
        if (acc > UINT64_MAX / p) return false;
        acc *= p;
      }
    return true;
  }

  std::uint64_t as_u64() const {
    if (!fits_u64()) throw Error("FactoredInteger: value exceeds 64 bits");
    std::uint64_t acc = 1;
    for (auto& [p, e] : factors_)
      for (unsigned i = 0; i < e; ++i) acc *= p;
    return acc;
  }

  /// UINT64_MAX when the value does not fit; handy for cap comparisons.
  std::uint64_t as_u64_saturating() const {
    return fits_u64() ? as_u64() : UINT64_MAX;
  }

  /// "1", "2^3*3*5", ... with primes ascending.
  std::string str() const {
    if (factors_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (auto& [p, e] : factors_) {
      if (!first) os << '*';
      first = false;
      os << p;
      if (e > 1) os << '^' << e;
    }
    return os.str();
  }

private:
  std::map<std::uint64_t, unsigned> factors_;
};

} // namespace nslen

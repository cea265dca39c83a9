#pragma once

#include <cctype>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nslen/errors.hpp"
#include "nslen/factored.hpp"

namespace nslen {

/// A permutation of {0, ..., degree-1} stored as a full image array.
/// Composition is left-to-right: x^(a*b) = (x^a)^b, so conjugation is
/// a^g = g^-1 * a * g and [a,b] = a^-1 * b^-1 * a * b.
class Permutation {
public:
  Permutation() = default;

  explicit Permutation(int degree) : img_(static_cast<std::size_t>(degree)) {
    std::iota(img_.begin(), img_.end(), 0);
  }

  explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
    check_bijection();
  }

  static Permutation identity(int degree) { return Permutation(degree); }

  /// Build from disjoint-cycle data, e.g. {{0,1,2},{3,4}} at degree >= 5.
  static Permutation from_cycles(const std::vector<std::vector<int>>& cycles, int degree) {
    std::vector<int> img(static_cast<std::size_t>(degree));
    std::iota(img.begin(), img.end(), 0);
    for (auto& cyc : cycles) {
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        int from = cyc[i];
        int to = cyc[(i + 1) % cyc.size()];
        if (from < 0 || from >= degree)
          throw Error("cycle point out of range");
        img[static_cast<std::size_t>(from)] = to;
      }
    }
    return Permutation(std::move(img));
  }

  int degree() const { return static_cast<int>(img_.size()); }

  int operator[](int x) const { return img_[static_cast<std::size_t>(x)]; }

  const std::vector<int>& images() const { return img_; }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (img_[static_cast<std::size_t>(i)] != i) return false;
    return true;
  }

  /// Smallest moved point, or -1 for the identity.
  int first_moved() const {
    for (int i = 0; i < degree(); ++i)
      if (img_[static_cast<std::size_t>(i)] != i) return i;
    return -1;
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree())
      throw DegreeMismatch("compose: degree mismatch");
    Permutation r;
    r.img_.resize(a.img_.size());
    for (std::size_t i = 0; i < a.img_.size(); ++i)
      r.img_[i] = b.img_[static_cast<std::size_t>(a.img_[i])];
    return r;
  }

  Permutation inverse() const {
    Permutation r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i)
      r.img_[static_cast<std::size_t>(img_[i])] = static_cast<int>(i);
    return r;
  }

  /// g^-1 * a * g, computed in one pass.
  Permutation conjugated_by(const Permutation& g) const {
    if (degree() != g.degree())
      throw DegreeMismatch("conjugate: degree mismatch");
    Permutation r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i)
      r.img_[static_cast<std::size_t>(g.img_[i])] = g.img_[static_cast<std::size_t>(img_[i])];
    return r;
  }

  Permutation pow(long long e) const {
    Permutation base = e < 0 ? inverse() : *this;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e)
                                 : static_cast<unsigned long long>(e);
    Permutation acc = identity(degree());
    while (k > 0) {
      if (k & 1ull) acc = acc * base;
      base = base * base;
      k >>= 1;
    }
    return acc;
  }

  std::vector<int> cycle_lengths() const {
    std::vector<int> lens;
    std::vector<char> seen(img_.size(), 0);
    for (int i = 0; i < degree(); ++i) {
      if (seen[static_cast<std::size_t>(i)]) continue;
      int len = 0;
      int j = i;
      while (!seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = 1;
        j = img_[static_cast<std::size_t>(j)];
        ++len;
      }
      lens.push_back(len);
    }
    return lens;
  }

  /// Element order: lcm of cycle lengths, factored.
  FactoredInteger order() const {
    FactoredInteger ord;
    for (int len : cycle_lengths())
      if (len > 1)
        ord = FactoredInteger::lcm(ord, FactoredInteger::from_u64(static_cast<std::uint64_t>(len)));
    return ord;
  }

  std::uint64_t order_u64() const { return order().as_u64(); }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.img_ == b.img_;
  }
  friend bool operator!=(const Permutation& a, const Permutation& b) {
    return !(a == b);
  }
  friend bool operator<(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.img_ < b.img_;
  }

  std::uint64_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (int v : img_) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return h;
  }

  /// Disjoint-cycle form: "(0 1 2)(3 4)", "()" for the identity.
  std::string cycle_string() const {
    std::ostringstream os;
    std::vector<char> seen(img_.size(), 0);
    bool any = false;
    for (int i = 0; i < degree(); ++i) {
      if (seen[static_cast<std::size_t>(i)] || img_[static_cast<std::size_t>(i)] == i) continue;
      any = true;
      os << '(';
      int j = i;
      bool first = true;
      while (!seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = 1;
        if (!first) os << ' ';
        first = false;
        os << j;
        j = img_[static_cast<std::size_t>(j)];
      }
      os << ')';
    }
    if (!any) return "()";
    return os.str();
  }

  /// Parse "(0 1 2)(3 4)" or "()"; whitespace-insensitive. The result is
  /// padded to at least min_degree points.
  static Permutation parse(std::string_view text, int min_degree = 0) {
    std::vector<std::vector<int>> cycles;
    int max_pt = -1;
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i == text.size())
      throw Error("permutation parse: empty input");
    while (i < text.size()) {
      skip_ws();
      if (i == text.size()) break;
      if (text[i] != '(')
        throw Error("permutation parse: expected '(' at position " + std::to_string(i));
      ++i;
      std::vector<int> cyc;
      for (;;) {
        skip_ws();
        if (i < text.size() && text[i] == ')') {
          ++i;
          break;
        }
        if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
          throw Error("permutation parse: expected point or ')'");
        int v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          v = v * 10 + (text[i] - '0');
          ++i;
        }
        cyc.push_back(v);
        max_pt = std::max(max_pt, v);
        skip_ws();
        if (i < text.size() && text[i] == ',') ++i; // tolerate comma separators
      }
      if (!cyc.empty()) cycles.push_back(std::move(cyc));
    }
    int degree = std::max(min_degree, max_pt + 1);
    if (degree == 0) degree = 1;
    // reject repeated points across all cycles
    std::vector<char> used(static_cast<std::size_t>(degree), 0);
    for (auto& cyc : cycles)
      for (int p : cyc) {
        if (used[static_cast<std::size_t>(p)])
          throw Error("permutation parse: point " + std::to_string(p) + " repeated");
        used[static_cast<std::size_t>(p)] = 1;
      }
    return from_cycles(cycles, degree);
  }

private:
  void check_bijection() const {
    std::vector<char> seen(img_.size(), 0);
    for (int v : img_) {
      if (v < 0 || v >= degree() || seen[static_cast<std::size_t>(v)])
        throw Error("permutation images are not a bijection");
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }

  std::vector<int> img_;
};

/// [a,b] = a^-1 b^-1 a b.
inline Permutation commutator(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree())
    throw DegreeMismatch("commutator: degree mismatch");
  const auto& ai = a.inverse();
  const auto& bi = b.inverse();
  std::vector<int> img(static_cast<std::size_t>(a.degree()));
  for (int x = 0; x < a.degree(); ++x)
    img[static_cast<std::size_t>(x)] = b[a[bi[ai[x]]]];
  return Permutation(std::move(img));
}

/// Pad p with fixed points up to the given degree.
inline Permutation extend_degree(const Permutation& p, int degree) {
  if (p.degree() > degree) throw DegreeMismatch("extend_degree: shrink not allowed");
  std::vector<int> img(static_cast<std::size_t>(degree));
  std::iota(img.begin(), img.end(), 0);
  for (int i = 0; i < p.degree(); ++i) img[static_cast<std::size_t>(i)] = p[i];
  return Permutation(std::move(img));
}

} // namespace nslen

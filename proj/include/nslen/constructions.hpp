#pragma once

#include <cctype>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "nslen/errors.hpp"
#include "nslen/group.hpp"
#include "nslen/hom.hpp"
#include "nslen/perm.hpp"

namespace nslen {

/// Construction provenance attached to built groups. Metadata is advisory:
/// every structural shortcut drawn from it (Sylow recipes, block systems) is
/// cross-checked against a metadata-free computation in the tests.
struct StructureMetadata {
  enum class Kind { named, direct, wreath };
  Kind kind = Kind::named;
  std::string family; // for named groups: "symmetric", "alternating", ...
  int parameter = 0;  // n or q for named groups
  std::vector<PermGroup> parts;         // components of direct/wreath products
  std::vector<std::vector<int>> blocks; // point blocks of the product structure
  std::string sylow_recipe;             // "", "direct" or "wreath"
};

namespace detail {

inline Permutation cycle(int degree, std::vector<int> pts) {
  return Permutation::from_cycles({std::move(pts)}, degree);
}

inline std::vector<int> iota_vec(int from, int count) {
  std::vector<int> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = from + i;
  return v;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

} // namespace detail

inline PermGroup symmetric_group(int n) {
  if (n < 1) throw UnsupportedSpec("symmetric: n must be >= 1");
  auto meta = std::make_shared<StructureMetadata>();
  meta->family = "symmetric";
  meta->parameter = n;
  std::vector<Permutation> gens;
  if (n >= 2) gens.push_back(detail::cycle(n, {0, 1}));
  if (n >= 3) gens.push_back(detail::cycle(n, detail::iota_vec(0, n)));
  return PermGroup(n, std::move(gens), std::move(meta), "S" + std::to_string(n));
}

inline PermGroup alternating_group(int n) {
  if (n < 1) throw UnsupportedSpec("alternating: n must be >= 1");
  auto meta = std::make_shared<StructureMetadata>();
  meta->family = "alternating";
  meta->parameter = n;
  std::vector<Permutation> gens;
  if (n >= 3) gens.push_back(detail::cycle(n, {0, 1, 2}));
  if (n >= 4) {
    if (n % 2 == 1)
      gens.push_back(detail::cycle(n, detail::iota_vec(0, n)));
    else
      gens.push_back(detail::cycle(n, detail::iota_vec(1, n - 1)));
  }
  return PermGroup(n, std::move(gens), std::move(meta), "A" + std::to_string(n));
}

inline PermGroup cyclic_group(int n) {
  if (n < 1) throw UnsupportedSpec("cyclic: n must be >= 1");
  auto meta = std::make_shared<StructureMetadata>();
  meta->family = "cyclic";
  meta->parameter = n;
  std::vector<Permutation> gens;
  if (n >= 2) gens.push_back(detail::cycle(n, detail::iota_vec(0, n)));
  return PermGroup(n, std::move(gens), std::move(meta), "C" + std::to_string(n));
}

/// Symmetries of the n-gon for n >= 3; order 2n. n <= 2 degenerates to the
/// groups of order 2 and 4 on doubled points.
inline PermGroup dihedral_group(int n) {
  if (n < 1) throw UnsupportedSpec("dihedral: n must be >= 1");
  auto meta = std::make_shared<StructureMetadata>();
  meta->family = "dihedral";
  meta->parameter = n;
  std::string name = "D" + std::to_string(2 * n);
  if (n == 1) return PermGroup(2, {detail::cycle(2, {0, 1})}, std::move(meta), name);
  if (n == 2)
    return PermGroup(4, {detail::cycle(4, {0, 1}), detail::cycle(4, {2, 3})}, std::move(meta),
                     name);
  std::vector<int> rot_img(static_cast<std::size_t>(n));
  std::vector<int> ref_img(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rot_img[static_cast<std::size_t>(i)] = (i + 1) % n;
    ref_img[static_cast<std::size_t>(i)] = (n - i) % n;
  }
  return PermGroup(n, {Permutation(std::move(rot_img)), Permutation(std::move(ref_img))},
                   std::move(meta), name);
}

/// PSL(2,q) on the projective line over F_q (q+1 points; infinity is point q),
/// generated by x -> x+1, x -> k^2 x for a primitive root k, and x -> -1/x.
inline PermGroup psl2_group(int q) {
  if (q < 3 || q > 101 || q % 2 == 0 || !detail::is_prime_u64(static_cast<std::uint64_t>(q)))
    throw UnsupportedSpec("psl2: q must be an odd prime <= 101");
  int degree = q + 1;
  const int inf = q;
  auto mod = [q](long long v) { return static_cast<int>(((v % q) + q) % q); };
  // additive translation
  std::vector<int> t(static_cast<std::size_t>(degree));
  for (int x = 0; x < q; ++x) t[static_cast<std::size_t>(x)] = mod(x + 1);
  t[static_cast<std::size_t>(inf)] = inf;
  // find a primitive root k mod q
  int k = 0;
  for (int cand = 2; cand < q; ++cand) {
    bool primitive = true;
    long long acc = 1;
    for (int e = 1; e < q - 1; ++e) {
      acc = (acc * cand) % q;
      if (acc == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      k = cand;
      break;
    }
  }
  long long k2 = (static_cast<long long>(k) * k) % q;
  std::vector<int> s(static_cast<std::size_t>(degree));
  for (int x = 0; x < q; ++x) s[static_cast<std::size_t>(x)] = mod(k2 * x);
  s[static_cast<std::size_t>(inf)] = inf;
  // x -> -1/x
  auto inv_mod = [q, mod](int x) {
    long long acc = 1, b = x;
    int e = q - 2;
    while (e > 0) {
      if (e & 1) acc = (acc * b) % q;
      b = (b * b) % q;
      e >>= 1;
    }
    return mod(acc);
  };
  std::vector<int> u(static_cast<std::size_t>(degree));
  u[0] = inf;
  u[static_cast<std::size_t>(inf)] = 0;
  for (int x = 1; x < q; ++x) u[static_cast<std::size_t>(x)] = mod(-static_cast<long long>(inv_mod(x)));
  auto meta = std::make_shared<StructureMetadata>();
  meta->family = "psl2";
  meta->parameter = q;
  return PermGroup(degree,
                   {Permutation(std::move(t)), Permutation(std::move(s)), Permutation(std::move(u))},
                   std::move(meta), "PSL(2," + std::to_string(q) + ")");
}

/// A x B acting on the disjoint union of the two domains.
inline PermGroup direct_product(const PermGroup& A, const PermGroup& B) {
  int n = A.degree() + B.degree();
  std::vector<Permutation> gens;
  for (const auto& a : A.generators()) gens.push_back(extend_degree(a, n));
  for (const auto& b : B.generators()) {
    std::vector<int> img(static_cast<std::size_t>(n));
    for (int i = 0; i < A.degree(); ++i) img[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < B.degree(); ++i)
      img[static_cast<std::size_t>(A.degree() + i)] = A.degree() + b[i];
    gens.emplace_back(std::move(img));
  }
  auto meta = std::make_shared<StructureMetadata>();
  meta->kind = StructureMetadata::Kind::direct;
  meta->parts = {A, B};
  meta->blocks = {detail::iota_vec(0, A.degree()), detail::iota_vec(A.degree(), B.degree())};
  meta->sylow_recipe = "direct";
  std::string name = (A.name().empty() ? "A" : A.name()) + "x" + (B.name().empty() ? "B" : B.name());
  return PermGroup(n, std::move(gens), std::move(meta), std::move(name));
}

/// A wr B in its imprimitive action on deg(A) * deg(B) points: one copy of A
/// per block, B permuting the blocks.
inline PermGroup wreath_product(const PermGroup& A, const PermGroup& B) {
  int k = B.degree();
  int da = A.degree();
  int n = da * k;
  std::vector<Permutation> gens;
  for (int copy = 0; copy < k; ++copy)
    for (const auto& a : A.generators()) {
      std::vector<int> img(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = i;
      for (int i = 0; i < da; ++i) img[static_cast<std::size_t>(copy * da + i)] = copy * da + a[i];
      gens.emplace_back(std::move(img));
    }
  for (const auto& b : B.generators()) {
    std::vector<int> img(static_cast<std::size_t>(n));
    for (int copy = 0; copy < k; ++copy)
      for (int i = 0; i < da; ++i)
        img[static_cast<std::size_t>(copy * da + i)] = b[copy] * da + i;
    gens.emplace_back(std::move(img));
  }
  auto meta = std::make_shared<StructureMetadata>();
  meta->kind = StructureMetadata::Kind::wreath;
  meta->parts = {A, B};
  for (int copy = 0; copy < k; ++copy) meta->blocks.push_back(detail::iota_vec(copy * da, da));
  meta->sylow_recipe = "wreath";
  std::string name =
      (A.name().empty() ? "A" : A.name()) + "wr" + (B.name().empty() ? "B" : B.name());
  return PermGroup(n, std::move(gens), std::move(meta), std::move(name));
}

/// Parse a construction expression: name(args) with nesting, e.g.
/// "wreath(alternating(5),cyclic(5))" or "direct(symmetric(4),alternating(5))".
inline PermGroup build_from_expression(std::string_view expr) {
  struct Parser {
    std::string_view s;
    std::size_t i = 0;

    void skip_ws() {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }

    std::string ident() {
      skip_ws();
      std::size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      if (start == i) throw UnsupportedSpec("construction: expected a name at position " +
                                            std::to_string(i));
      return std::string(s.substr(start, i - start));
    }

    void expect(char c) {
      skip_ws();
      if (i >= s.size() || s[i] != c)
        throw UnsupportedSpec(std::string("construction: expected '") + c + "'");
      ++i;
    }

    int integer() {
      skip_ws();
      std::size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (start == i) throw UnsupportedSpec("construction: expected an integer");
      return std::stoi(std::string(s.substr(start, i - start)));
    }

    PermGroup group() {
      std::string name = ident();
      expect('(');
      PermGroup result = PermGroup::trivial(1);
      if (name == "symmetric") {
        result = symmetric_group(integer());
      } else if (name == "alternating") {
        result = alternating_group(integer());
      } else if (name == "cyclic") {
        result = cyclic_group(integer());
      } else if (name == "dihedral") {
        result = dihedral_group(integer());
      } else if (name == "psl2") {
        result = psl2_group(integer());
      } else if (name == "direct" || name == "wreath") {
        PermGroup a = group();
        expect(',');
        PermGroup b = group();
        result = name == "direct" ? direct_product(a, b) : wreath_product(a, b);
      } else if (name == "trivial") {
        result = PermGroup::trivial(integer());
      } else {
        throw UnsupportedSpec("construction: unknown builder '" + name + "'");
      }
      expect(')');
      return result;
    }
  };
  Parser p{expr};
  PermGroup g = p.group();
  p.skip_ws();
  if (p.i != expr.size())
    throw UnsupportedSpec("construction: trailing input after expression");
  return g;
}

} // namespace nslen

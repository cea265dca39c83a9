#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "nslen/chain.hpp"
#include "nslen/errors.hpp"
#include "nslen/factored.hpp"
#include "nslen/perm.hpp"
#include "nslen/rng.hpp"

namespace nslen {

struct StructureMetadata; // defined in constructions.hpp

inline constexpr std::uint64_t kDefaultEnumCap = 1'000'000;

/// A finite permutation group given by generators, with a lazily built and
/// deterministically verified stabilizer chain. Copies share state; a group
/// is immutable once constructed and safe to read concurrently after its
/// chain exists.
class PermGroup {
public:
  PermGroup() : PermGroup(1, {}) {}

  PermGroup(int degree, std::vector<Permutation> generators,
            std::shared_ptr<const StructureMetadata> metadata = nullptr,
            std::string name = {})
      : d_(std::make_shared<Data>()) {
    if (degree <= 0) throw Error("PermGroup: degree must be positive");
    for (const auto& g : generators)
      if (g.degree() != degree)
        throw DegreeMismatch("PermGroup: generator degree mismatch");
    d_->degree = degree;
    d_->gens = std::move(generators);
    d_->meta = std::move(metadata);
    d_->name = std::move(name);
  }

  /// Wrap an already-built chain (used by closure routines to avoid a rebuild).
  PermGroup(int degree, std::vector<Permutation> generators, StabilizerChain chain,
            std::string name = {})
      : PermGroup(degree, std::move(generators), nullptr, std::move(name)) {
    d_->chain = std::make_shared<const StabilizerChain>(std::move(chain));
  }

  static PermGroup trivial(int degree) { return PermGroup(degree, {}); }

  int degree() const { return d_->degree; }
  const std::vector<Permutation>& generators() const { return d_->gens; }
  const std::string& name() const { return d_->name; }
  const std::shared_ptr<const StructureMetadata>& metadata() const { return d_->meta; }

  PermGroup with_name(std::string name) const {
    PermGroup g = *this;
    // names are report labels only; share everything else
    g.d_ = std::make_shared<Data>(*d_);
    g.d_->name = std::move(name);
    return g;
  }

  const StabilizerChain& chain() const {
    std::call_once(d_->chain_once, [this] {
      if (!d_->chain)
        d_->chain = std::make_shared<const StabilizerChain>(d_->degree, d_->gens);
    });
    return *d_->chain;
  }

  FactoredInteger order() const { return chain().order(); }
  std::uint64_t order_u64_saturating() const { return chain().order_u64_saturating(); }
  bool is_trivial() const { return order().is_one(); }

  bool contains(const Permutation& g) const {
    if (g.degree() != d_->degree) throw DegreeMismatch("contains: degree mismatch");
    return chain().contains(g);
  }

  bool is_subgroup_of(const PermGroup& other) const {
    if (degree() != other.degree()) return false;
    for (const auto& g : generators())
      if (!other.contains(g)) return false;
    return true;
  }

  bool same_group_as(const PermGroup& other) const {
    return degree() == other.degree() && order() == other.order() && is_subgroup_of(other);
  }

  bool is_abelian() const {
    const auto& gs = generators();
    for (std::size_t i = 0; i < gs.size(); ++i)
      for (std::size_t j = i + 1; j < gs.size(); ++j)
        if (!(gs[i] * gs[j] == gs[j] * gs[i])) return false;
    return true;
  }

  bool is_normal_in(const PermGroup& ambient) const {
    for (const auto& n : generators())
      for (const auto& g : ambient.generators())
        if (!contains(n.conjugated_by(g))) return false;
    return true;
  }

  Permutation random_element(Rng& rng) const { return chain().random_element(rng); }

  Permutation random_element(std::uint64_t seed) const {
    Rng rng(seed);
    return chain().random_element(rng);
  }

  template <typename Fn>
  void for_each_element(std::uint64_t cap, Fn&& fn) const {
    chain().for_each_element(cap, std::forward<Fn>(fn));
  }

  std::vector<Permutation> elements(std::uint64_t cap = kDefaultEnumCap) const {
    std::vector<Permutation> out;
    out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(cap, order_u64_saturating())));
    for_each_element(cap, [&](const Permutation& p) { out.push_back(p); });
    return out;
  }

  /// The group's orbits on {0..degree-1}, each sorted, ordered by least point.
  std::vector<std::vector<int>> orbit_partition() const {
    std::vector<std::vector<int>> parts;
    std::vector<char> seen(static_cast<std::size_t>(degree()), 0);
    for (int s = 0; s < degree(); ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      std::vector<int> orb{s};
      seen[static_cast<std::size_t>(s)] = 1;
      for (std::size_t head = 0; head < orb.size(); ++head)
        for (const auto& g : generators()) {
          int q = g[orb[head]];
          if (!seen[static_cast<std::size_t>(q)]) {
            seen[static_cast<std::size_t>(q)] = 1;
            orb.push_back(q);
          }
        }
      std::sort(orb.begin(), orb.end());
      parts.push_back(std::move(orb));
    }
    return parts;
  }

private:
  struct Data {
    int degree = 1;
    std::vector<Permutation> gens;
    std::shared_ptr<const StructureMetadata> meta;
    std::string name;
    mutable std::once_flag chain_once;
    mutable std::shared_ptr<const StabilizerChain> chain;

    Data() = default;
    Data(const Data& o)
        : degree(o.degree), gens(o.gens), meta(o.meta), name(o.name), chain(o.chain) {}
  };

  std::shared_ptr<Data> d_;
};

/// Smallest normal subgroup of G containing S: close S under conjugation by
/// G's generators, sifting each conjugate against an incrementally extended
/// chain.
inline PermGroup normal_closure(const PermGroup& G, const std::vector<Permutation>& S,
                                std::string name = {}) {
  for (const auto& s : S)
    if (!G.contains(s))
      throw ElementOutsideGroup("normal_closure: seed element lies outside the group");
  std::vector<Permutation> gens;
  StabilizerChain chain(G.degree(), {});
  for (const auto& s : S)
    if (chain.extend(s)) gens.push_back(s);
  for (std::size_t head = 0; head < gens.size(); ++head) {
    Permutation cur = gens[head]; // gens grows; avoid dangling reference
    for (const auto& g : G.generators()) {
      Permutation c = cur.conjugated_by(g);
      if (chain.extend(c)) gens.push_back(std::move(c));
    }
  }
  return PermGroup(G.degree(), std::move(gens), std::move(chain), std::move(name));
}

/// Subgroup generated by the given elements (inside some ambient degree).
inline PermGroup generated_subgroup(int degree, const std::vector<Permutation>& S,
                                    std::string name = {}) {
  std::vector<Permutation> gens;
  StabilizerChain chain(degree, {});
  for (const auto& s : S)
    if (chain.extend(s)) gens.push_back(s);
  return PermGroup(degree, std::move(gens), std::move(chain), std::move(name));
}

/// [G, G] as the normal closure of the generators' pairwise commutators.
inline PermGroup derived_subgroup(const PermGroup& G) {
  const auto& gs = G.generators();
  std::vector<Permutation> comms;
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j) {
      Permutation c = commutator(gs[i], gs[j]);
      if (!c.is_identity()) comms.push_back(std::move(c));
    }
  return normal_closure(G, comms);
}

struct DerivedSeries {
  std::vector<PermGroup> terms; // G = terms[0] >= terms[1] >= ...
  bool soluble = false;         // true iff the series reaches the trivial group
};

inline DerivedSeries derived_series(const PermGroup& G, int max_len = 64) {
  DerivedSeries out;
  out.terms.push_back(G);
  for (int i = 0; i < max_len; ++i) {
    const PermGroup& cur = out.terms.back();
    if (cur.is_trivial()) break;
    PermGroup next = derived_subgroup(cur);
    bool stable = next.order() == cur.order();
    out.terms.push_back(std::move(next));
    if (stable) break;
  }
  out.soluble = out.terms.back().is_trivial();
  return out;
}

inline bool is_soluble(const PermGroup& G) { return derived_series(G).soluble; }

} // namespace nslen

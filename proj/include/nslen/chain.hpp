#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "nslen/errors.hpp"
#include "nslen/factored.hpp"
#include "nslen/perm.hpp"
#include "nslen/rng.hpp"

namespace nslen {

/// Base and strong generating set for a permutation group, built with the
/// deterministic Schreier-Sims algorithm. Every constructed chain is run
/// through verify(), which re-checks that all Schreier generators sift to
/// identity; membership tests, orders, uniform sampling and enumeration all
/// come from the verified chain.
///
/// Transversals are stored as Schreier trees (generator label + parent per
/// orbit point); coset representatives are rebuilt by walking the tree, which
/// keeps memory linear in the degree even for long chains.
class StabilizerChain {
public:
  struct SiftResult {
    Permutation residue;
    std::size_t stuck_level; // == num_levels() when the residue passed every level
  };

  StabilizerChain(int degree, const std::vector<Permutation>& generators,
                  const std::vector<int>& forced_base = {})
      : degree_(degree) {
    if (degree_ <= 0) throw Error("StabilizerChain: degree must be positive");
    for (int b : forced_base) {
      if (b < 0 || b >= degree_) throw Error("StabilizerChain: forced base point out of range");
      add_level(b);
    }
    for (const auto& g : generators) insert_generator(g);
    run(levels_.empty() ? -1 : static_cast<long long>(levels_.size()) - 1);
    verify();
  }

  int degree() const { return degree_; }
  std::size_t num_levels() const { return levels_.size(); }
  int base_point(std::size_t level) const { return levels_[level].base; }
  const std::vector<Permutation>& strong_generators() const { return gens_; }

  const std::vector<int>& orbit(std::size_t level) const { return levels_[level].orbit; }

  bool in_orbit(std::size_t level, int point) const {
    return levels_[level].in_orbit[static_cast<std::size_t>(point)] != 0;
  }

  FactoredInteger order() const {
    FactoredInteger n;
    for (const auto& lv : levels_)
      n *= FactoredInteger::from_u64(lv.orbit.size());
    return n;
  }

  std::uint64_t order_u64_saturating() const { return order().as_u64_saturating(); }

  /// Order contributed by the first `prefix` levels (used for action images
  /// when the base starts with appended action points).
  FactoredInteger order_of_prefix(std::size_t prefix) const {
    FactoredInteger n;
    for (std::size_t i = 0; i < prefix && i < levels_.size(); ++i)
      n *= FactoredInteger::from_u64(levels_[i].orbit.size());
    return n;
  }

  /// Coset representative u with base(level)^u = point.
  Permutation transversal_rep(std::size_t level, int point) const {
    const Level& lv = levels_[level];
    Permutation u = Permutation::identity(degree_);
    int p = point;
    while (p != lv.base) {
      int gi = lv.tree_gen[static_cast<std::size_t>(p)];
      u = gens_[static_cast<std::size_t>(gi)] * u;
      p = lv.tree_parent[static_cast<std::size_t>(p)];
    }
    return u;
  }

  SiftResult sift(Permutation g, std::size_t from_level = 0) const {
    for (std::size_t j = from_level; j < levels_.size(); ++j) {
      int p = g[levels_[j].base];
      if (p == levels_[j].base) continue;
      if (!in_orbit(j, p)) return {std::move(g), j};
      g = g * transversal_rep(j, p).inverse();
    }
    return {std::move(g), levels_.size()};
  }

  bool contains(const Permutation& g) const {
    if (g.degree() != degree_) throw DegreeMismatch("contains: degree mismatch");
    return sift(g).residue.is_identity();
  }

  /// Factor h as u * residue over the first `prefix` levels and return u
  /// (a group element whose images of the first `prefix` base points agree
  /// with h). Returns false when h's base images cannot be matched.
  bool lift_prefix(const Permutation& h, std::size_t prefix, Permutation& out) const {
    Permutation cur = h;
    Permutation u = Permutation::identity(degree_);
    for (std::size_t j = 0; j < prefix && j < levels_.size(); ++j) {
      int p = cur[levels_[j].base];
      if (p == levels_[j].base) continue;
      if (!in_orbit(j, p)) return false;
      Permutation rep = transversal_rep(j, p);
      cur = cur * rep.inverse();
      u = rep * u;
    }
    // remaining levels of the prefix have trivial action already
    for (std::size_t j = 0; j < prefix && j < levels_.size(); ++j)
      if (u[levels_[j].base] != h[levels_[j].base]) return false;
    out = std::move(u);
    return true;
  }

  /// Uniformly random element: independent uniform transversal choice at
  /// every level, multiplied deepest-first (the unique chain factorization).
  Permutation random_element(Rng& rng) const {
    Permutation acc = Permutation::identity(degree_);
    for (std::size_t j = levels_.size(); j-- > 0;) {
      const Level& lv = levels_[j];
      int p = lv.orbit[static_cast<std::size_t>(bounded(rng, lv.orbit.size()))];
      if (p != lv.base) acc = acc * transversal_rep(j, p);
    }
    return acc;
  }

  /// Depth-first enumeration of all elements, each exactly once.
  template <typename Fn>
  void for_each_element(std::uint64_t cap, Fn&& fn) const {
    if (order_u64_saturating() > cap)
      throw CapExceeded("enumerate: group order exceeds cap " + std::to_string(cap));
    // materialize transversals once; bounded by cap * degree overall
    std::vector<std::vector<Permutation>> reps(levels_.size());
    for (std::size_t j = 0; j < levels_.size(); ++j) {
      reps[j].reserve(levels_[j].orbit.size());
      for (int p : levels_[j].orbit) reps[j].push_back(transversal_rep(j, p));
    }
    Permutation id = Permutation::identity(degree_);
    enumerate_rec(reps, levels_.size(), id, fn);
  }

  /// Deterministic verification of the strong generating property. Throws on
  /// any failure; a passing run certifies order() and contains().
  void verify() const {
    for (const auto& g : gens_) {
      if (g.is_identity()) throw Error("chain verify: identity stored as strong generator");
      bool moves_base = false;
      for (const auto& lv : levels_)
        if (g[lv.base] != lv.base) {
          moves_base = true;
          break;
        }
      if (!moves_base) throw Error("chain verify: strong generator fixes every base point");
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      const Level& lv = levels_[i];
      std::vector<int> gen_ids = level_gen_ids(i);
      for (int p : lv.orbit) {
        Permutation up = transversal_rep(i, p);
        for (int gi : gen_ids) {
          const Permutation& g = gens_[static_cast<std::size_t>(gi)];
          int q = g[p];
          if (!in_orbit(i, q)) throw Error("chain verify: orbit not closed");
          Permutation s = up * g * transversal_rep(i, q).inverse();
          if (!sift(std::move(s), i + 1).residue.is_identity())
            throw Error("chain verify: Schreier generator fails to sift");
        }
      }
    }
    if (!level_gen_ids(levels_.size()).empty())
      throw Error("chain verify: generator fixes the whole base");
  }

  /// Incrementally adjoin a generator and re-close the chain.
  /// Returns false when g was already a member.
  bool extend(const Permutation& g) {
    if (g.degree() != degree_) throw DegreeMismatch("extend: degree mismatch");
    if (contains(g)) return false;
    std::size_t k = fixed_prefix(g);
    insert_generator(g);
    run(static_cast<long long>(std::min(k, levels_.size() - 1)));
    return true;
  }

private:
  struct Level {
    int base = -1;
    std::vector<int> orbit;
    std::vector<int> tree_gen;
    std::vector<int> tree_parent;
    std::vector<char> in_orbit;
  };

  void add_level(int base) {
    Level lv;
    lv.base = base;
    lv.tree_gen.assign(static_cast<std::size_t>(degree_), -1);
    lv.tree_parent.assign(static_cast<std::size_t>(degree_), -1);
    lv.in_orbit.assign(static_cast<std::size_t>(degree_), 0);
    lv.orbit.push_back(base);
    lv.in_orbit[static_cast<std::size_t>(base)] = 1;
    levels_.push_back(std::move(lv));
  }

  // number of leading base points fixed by g
  std::size_t fixed_prefix(const Permutation& g) const {
    std::size_t i = 0;
    while (i < levels_.size() && g[levels_[i].base] == levels_[i].base) ++i;
    return i;
  }

  void insert_generator(const Permutation& g) {
    if (g.degree() != degree_) throw DegreeMismatch("generator degree mismatch");
    if (g.is_identity()) return;
    for (const auto& h : gens_)
      if (h == g) return;
    if (fixed_prefix(g) == levels_.size()) add_level(g.first_moved());
    gens_.push_back(g);
  }

  // strong generators fixing base[0..level-1]
  std::vector<int> level_gen_ids(std::size_t level) const {
    std::vector<int> ids;
    for (std::size_t k = 0; k < gens_.size(); ++k)
      if (fixed_prefix(gens_[k]) >= level) ids.push_back(static_cast<int>(k));
    return ids;
  }

  void recompute_orbit(std::size_t i, const std::vector<int>& gen_ids) {
    Level& lv = levels_[i];
    lv.orbit.clear();
    std::fill(lv.in_orbit.begin(), lv.in_orbit.end(), 0);
    std::fill(lv.tree_gen.begin(), lv.tree_gen.end(), -1);
    std::fill(lv.tree_parent.begin(), lv.tree_parent.end(), -1);
    lv.orbit.push_back(lv.base);
    lv.in_orbit[static_cast<std::size_t>(lv.base)] = 1;
    for (std::size_t head = 0; head < lv.orbit.size(); ++head) {
      int p = lv.orbit[head];
      for (int gi : gen_ids) {
        int q = gens_[static_cast<std::size_t>(gi)][p];
        if (!lv.in_orbit[static_cast<std::size_t>(q)]) {
          lv.in_orbit[static_cast<std::size_t>(q)] = 1;
          lv.tree_gen[static_cast<std::size_t>(q)] = gi;
          lv.tree_parent[static_cast<std::size_t>(q)] = p;
          lv.orbit.push_back(q);
        }
      }
    }
  }

  // Main Schreier-Sims loop: process levels deepest-first; a failed sift
  // adds the residue as a strong generator at its stuck level and jumps back
  // up. On exit every level's Schreier generators sift to identity.
  void run(long long start) {
    long long i = std::min<long long>(start, static_cast<long long>(levels_.size()) - 1);
    while (i >= 0) {
      std::vector<int> gen_ids = level_gen_ids(static_cast<std::size_t>(i));
      recompute_orbit(static_cast<std::size_t>(i), gen_ids);
      Level& lv = levels_[static_cast<std::size_t>(i)];
      bool restarted = false;
      for (std::size_t oi = 0; oi < lv.orbit.size() && !restarted; ++oi) {
        int p = lv.orbit[oi];
        Permutation up = transversal_rep(static_cast<std::size_t>(i), p);
        for (int gi : gen_ids) {
          const Permutation& g = gens_[static_cast<std::size_t>(gi)];
          Permutation s = up * g * transversal_rep(static_cast<std::size_t>(i), g[p]).inverse();
          SiftResult sr = sift(std::move(s), static_cast<std::size_t>(i) + 1);
          if (sr.residue.is_identity()) continue;
          if (sr.stuck_level == levels_.size()) add_level(sr.residue.first_moved());
          gens_.push_back(std::move(sr.residue));
          i = static_cast<long long>(std::min(sr.stuck_level, levels_.size() - 1));
          restarted = true;
          break;
        }
      }
      if (!restarted) --i;
    }
  }

  template <typename Fn>
  void enumerate_rec(const std::vector<std::vector<Permutation>>& reps, std::size_t level,
                     const Permutation& acc, Fn&& fn) const {
    if (level == 0) {
      fn(acc);
      return;
    }
    for (const auto& u : reps[level - 1])
      enumerate_rec(reps, level - 1, acc * u, fn);
  }

  int degree_;
  std::vector<Permutation> gens_;
  std::vector<Level> levels_;
};

} // namespace nslen

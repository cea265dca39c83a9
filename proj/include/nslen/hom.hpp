#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nslen/chain.hpp"
#include "nslen/errors.hpp"
#include "nslen/group.hpp"
#include "nslen/perm.hpp"

namespace nslen {

inline constexpr std::uint64_t kDefaultIndexCap = 100'000;

/// A homomorphism from a permutation group onto a permutation action of
/// degree m, constructed only by induced_action / coset_action so the
/// generator-image map extends to a homomorphism by construction.
///
/// Block actions carry an augmented group on n+m points (one new point per
/// block, based first in the chain): the stabilizer of the appended points is
/// the kernel, the appended prefix gives the image order, and prefix sifting
/// lifts image elements to source coset representatives. Coset actions keep
/// the coset representative table instead.
class GroupHom {
public:
  const PermGroup& source() const { return source_; }
  int target_degree() const { return m_; }
  const std::vector<Permutation>& generator_images() const { return gen_images_; }

  FactoredInteger image_order() const {
    if (aug_) return aug_->chain->order_of_prefix(static_cast<std::size_t>(m_));
    return source_.order() / coset_->kernel.order();
  }

  FactoredInteger kernel_order() const { return source_.order() / image_order(); }

  const PermGroup& image() const {
    if (!image_) {
      std::vector<Permutation> gens;
      for (const auto& g : gen_images_)
        if (!g.is_identity()) gens.push_back(g);
      image_.emplace(m_, std::move(gens));
    }
    return *image_;
  }

  const PermGroup& kernel() const {
    if (!kernel_) {
      if (coset_) {
        kernel_.emplace(coset_->kernel);
      } else {
        std::vector<Permutation> gens;
        for (const auto& g :
             aug_->chain->strong_generators()) {
          bool fixes_appended = true;
          for (int i = source_.degree(); i < source_.degree() + m_; ++i)
            if (g[i] != i) {
              fixes_appended = false;
              break;
            }
          if (fixes_appended && !g.is_identity()) gens.push_back(restrict_to_source(g));
        }
        kernel_.emplace(source_.degree(), std::move(gens));
      }
    }
    return *kernel_;
  }

  /// Image of an arbitrary source element.
  Permutation apply(const Permutation& g) const {
    if (aug_) {
      Permutation ag = aug_->extend(g);
      std::vector<int> img(static_cast<std::size_t>(m_));
      for (int i = 0; i < m_; ++i)
        img[static_cast<std::size_t>(i)] = ag[source_.degree() + i] - source_.degree();
      return Permutation(std::move(img));
    }
    std::vector<int> img(static_cast<std::size_t>(m_));
    for (int k = 0; k < m_; ++k)
      img[static_cast<std::size_t>(k)] = coset_->locate(coset_->reps[static_cast<std::size_t>(k)] * g);
    return Permutation(std::move(img));
  }

  /// Some source element mapping to h; throws when h is not in the image.
  Permutation lift(const Permutation& h) const {
    if (h.degree() != m_) throw DegreeMismatch("lift: target degree mismatch");
    if (coset_) {
      Permutation cand = coset_->reps[static_cast<std::size_t>(h[0])];
      if (!(apply(cand) == h))
        throw ElementOutsideGroup("lift: element is not in the image");
      return cand;
    }
    std::vector<int> img(static_cast<std::size_t>(source_.degree() + m_));
    for (int i = 0; i < source_.degree(); ++i) img[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < m_; ++i)
      img[static_cast<std::size_t>(source_.degree() + i)] = source_.degree() + h[i];
    Permutation target(std::move(img));
    Permutation u;
    if (!aug_->chain->lift_prefix(target, static_cast<std::size_t>(m_), u))
      throw ElementOutsideGroup("lift: element is not in the image");
    return restrict_to_source(u);
  }

  /// Full inverse image of a subgroup of the image.
  PermGroup preimage(const PermGroup& H) const {
    if (!H.is_subgroup_of(image()))
      throw ElementOutsideGroup("preimage: subgroup is not inside the image");
    std::vector<Permutation> gens = kernel().generators();
    for (const auto& h : H.generators()) gens.push_back(lift(h));
    PermGroup P(source_.degree(), std::move(gens));
    if (P.order() != kernel().order() * H.order())
      throw Error("preimage: order consistency check failed");
    return P;
  }

private:
  friend GroupHom induced_action(const PermGroup&, const std::vector<std::vector<int>>&);
  friend GroupHom induced_action(const PermGroup&, const std::vector<PermGroup>&);
  friend GroupHom coset_action(const PermGroup&, const PermGroup&, std::uint64_t);

  struct AugData {
    std::vector<Permutation> gens;
    std::shared_ptr<const StabilizerChain> chain;
    int src_degree = 0;
    int m = 0;
    // extend a source element by its block action, recomputed from the blocks
    std::function<Permutation(const Permutation&)> extend;
  };

  struct CosetData {
    PermGroup kernel; // = N
    std::vector<Permutation> reps;
    // invariant-bucketed coset lookup
    std::vector<int> orbit_of_point;            // N-orbit index per point
    std::vector<int> orbit_reps;                // one point per N-orbit
    std::unordered_map<std::uint64_t, std::vector<int>> buckets;

    std::uint64_t fingerprint(const Permutation& s) const {
      std::uint64_t h = 1469598103934665603ull;
      for (int rp : orbit_reps) {
        h ^= static_cast<std::uint64_t>(orbit_of_point[static_cast<std::size_t>(s[rp])]);
        h *= 1099511628211ull;
      }
      return h;
    }

    int locate(const Permutation& s) const {
      auto it = buckets.find(fingerprint(s));
      if (it != buckets.end())
        for (int k : it->second)
          if (kernel.contains(s * reps[static_cast<std::size_t>(k)].inverse())) return k;
      throw Error("coset action: coset lookup failed");
    }
  };

  Permutation restrict_to_source(const Permutation& g) const {
    std::vector<int> img(static_cast<std::size_t>(source_.degree()));
    for (int i = 0; i < source_.degree(); ++i) img[static_cast<std::size_t>(i)] = g[i];
    return Permutation(std::move(img));
  }

  PermGroup source_;
  int m_ = 0;
  std::vector<Permutation> gen_images_;
  std::shared_ptr<AugData> aug_;
  std::shared_ptr<CosetData> coset_;
  mutable std::optional<PermGroup> image_;
  mutable std::optional<PermGroup> kernel_;
};

namespace detail {

inline GroupHom make_block_hom(const PermGroup& G, std::vector<Permutation> gen_images, int m,
                               std::function<Permutation(const Permutation&)> block_image) {
  GroupHom hom;
  hom.source_ = G;
  hom.m_ = m;
  hom.gen_images_ = std::move(gen_images);
  auto aug = std::make_shared<GroupHom::AugData>();
  aug->src_degree = G.degree();
  aug->m = m;
  int n = G.degree();
  aug->extend = [n, m, block_image](const Permutation& g) {
    Permutation b = block_image(g);
    std::vector<int> img(static_cast<std::size_t>(n + m));
    for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = g[i];
    for (int i = 0; i < m; ++i) img[static_cast<std::size_t>(n + i)] = n + b[i];
    return Permutation(std::move(img));
  };
  std::vector<int> forced;
  forced.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) forced.push_back(n + i);
  for (std::size_t k = 0; k < G.generators().size(); ++k) {
    std::vector<int> img(static_cast<std::size_t>(n + m));
    const Permutation& g = G.generators()[k];
    const Permutation& b = hom.gen_images_[k];
    for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = g[i];
    for (int i = 0; i < m; ++i) img[static_cast<std::size_t>(n + i)] = n + b[i];
    aug->gens.emplace_back(std::move(img));
  }
  aug->chain = std::make_shared<const StabilizerChain>(n + m, aug->gens, forced);
  hom.aug_ = std::move(aug);
  return hom;
}

} // namespace detail

/// Action of G on a G-invariant list of point blocks. Throws NotInvariant
/// when a generator maps a block outside the list.
inline GroupHom induced_action(const PermGroup& G, const std::vector<std::vector<int>>& blocks) {
  if (blocks.empty()) throw Error("induced_action: empty block list");
  int m = static_cast<int>(blocks.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < m; ++i) {
    std::vector<int> b = blocks[static_cast<std::size_t>(i)];
    std::sort(b.begin(), b.end());
    if (b.empty()) throw Error("induced_action: empty block");
    index[std::move(b)] = i;
  }
  auto block_image = [blocks, index, m](const Permutation& g) {
    std::vector<int> img(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      std::vector<int> moved;
      moved.reserve(blocks[static_cast<std::size_t>(i)].size());
      for (int p : blocks[static_cast<std::size_t>(i)]) moved.push_back(g[p]);
      std::sort(moved.begin(), moved.end());
      auto it = index.find(moved);
      if (it == index.end())
        throw NotInvariant("induced_action: a generator moves a block outside the list");
      img[static_cast<std::size_t>(i)] = it->second;
    }
    return Permutation(std::move(img));
  };
  std::vector<Permutation> gen_images;
  gen_images.reserve(G.generators().size());
  for (const auto& g : G.generators()) gen_images.push_back(block_image(g));
  return detail::make_block_hom(G, std::move(gen_images), m, block_image);
}

/// Conjugation action of G on a G-invariant list of subgroups (all of G's
/// degree). Uses disjoint supports for fast lookup when possible and falls
/// back to membership tests otherwise.
inline GroupHom induced_action(const PermGroup& G, const std::vector<PermGroup>& factors) {
  if (factors.empty()) throw Error("induced_action: empty factor list");
  int m = static_cast<int>(factors.size());
  int n = G.degree();
  for (const auto& f : factors) {
    if (f.degree() != n) throw DegreeMismatch("induced_action: factor degree mismatch");
    if (f.is_trivial()) throw Error("induced_action: trivial factor");
  }
  // support map; usable iff supports are pairwise disjoint and nonempty
  std::vector<int> support_of(static_cast<std::size_t>(n), -1);
  std::vector<int> pivot(static_cast<std::size_t>(m), -1);
  bool disjoint = true;
  for (int i = 0; i < m && disjoint; ++i) {
    for (const auto& g : factors[static_cast<std::size_t>(i)].generators())
      for (int p = 0; p < n; ++p)
        if (g[p] != p) {
          if (support_of[static_cast<std::size_t>(p)] != -1 &&
              support_of[static_cast<std::size_t>(p)] != i) {
            disjoint = false;
            break;
          }
          support_of[static_cast<std::size_t>(p)] = i;
          if (pivot[static_cast<std::size_t>(i)] < 0) pivot[static_cast<std::size_t>(i)] = p;
        }
  }
  auto locate_full = [factors, m](const Permutation& g, int i) {
    // find j with factors[i]^g == factors[j] by membership of conjugated generators
    for (int j = 0; j < m; ++j) {
      const PermGroup& cand = factors[static_cast<std::size_t>(j)];
      if (!(factors[static_cast<std::size_t>(i)].order() == cand.order())) continue;
      bool all_in = true;
      for (const auto& s : factors[static_cast<std::size_t>(i)].generators())
        if (!cand.contains(s.conjugated_by(g))) {
          all_in = false;
          break;
        }
      if (all_in) return j;
    }
    throw NotInvariant("induced_action: a generator moves a factor outside the list");
  };
  std::function<Permutation(const Permutation&)> block_image;
  if (disjoint) {
    block_image = [support_of, pivot, m](const Permutation& g) {
      std::vector<int> img(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) {
        int q = support_of[static_cast<std::size_t>(g[pivot[static_cast<std::size_t>(i)]])];
        if (q < 0) throw NotInvariant("induced_action: factor support not preserved");
        img[static_cast<std::size_t>(i)] = q;
      }
      return Permutation(std::move(img));
    };
  } else {
    block_image = [factors, m, locate_full](const Permutation& g) {
      std::vector<int> img(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) img[static_cast<std::size_t>(i)] = locate_full(g, i);
      return Permutation(std::move(img));
    };
  }
  // validate invariance generator by generator with full membership checks
  std::vector<Permutation> gen_images;
  gen_images.reserve(G.generators().size());
  for (const auto& g : G.generators()) {
    std::vector<int> img(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) img[static_cast<std::size_t>(i)] = locate_full(g, i);
    Permutation full(std::move(img));
    if (disjoint && !(block_image(g) == full))
      throw NotInvariant("induced_action: support map disagrees with membership map");
    gen_images.push_back(std::move(full));
  }
  return detail::make_block_hom(G, std::move(gen_images), m, block_image);
}

/// Action of G on the right cosets of a normal subgroup N (the regular action
/// of G/N). Kernel is N; degree is the index.
inline GroupHom coset_action(const PermGroup& G, const PermGroup& N,
                             std::uint64_t index_cap = kDefaultIndexCap) {
  if (N.degree() != G.degree()) throw DegreeMismatch("coset_action: degree mismatch");
  if (!N.is_subgroup_of(G))
    throw ElementOutsideGroup("coset_action: N is not a subgroup of G");
  if (!N.is_normal_in(G)) throw NotNormal("coset_action: N is not normal in G");
  FactoredInteger index = G.order() / N.order();
  if (index.as_u64_saturating() > index_cap)
    throw IndexCapExceeded("coset_action: index " + index.str() + " exceeds cap " +
                           std::to_string(index_cap));
  int m = static_cast<int>(index.as_u64());

  auto data = std::make_shared<GroupHom::CosetData>();
  data->kernel = N;
  auto parts = N.orbit_partition();
  data->orbit_of_point.assign(static_cast<std::size_t>(G.degree()), -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    data->orbit_reps.push_back(parts[i][0]);
    for (int p : parts[i]) data->orbit_of_point[static_cast<std::size_t>(p)] = static_cast<int>(i);
  }
  data->reps.push_back(Permutation::identity(G.degree()));
  data->buckets[data->fingerprint(data->reps[0])].push_back(0);

  auto locate_or_add = [&](const Permutation& s) {
    std::uint64_t fp = data->fingerprint(s);
    auto& bucket = data->buckets[fp];
    for (int k : bucket)
      if (N.contains(s * data->reps[static_cast<std::size_t>(k)].inverse())) return k;
    int k = static_cast<int>(data->reps.size());
    if (k >= m) throw Error("coset_action: enumeration exceeded the index");
    data->reps.push_back(s);
    bucket.push_back(k);
    return k;
  };

  std::size_t ngens = G.generators().size();
  std::vector<std::vector<int>> images(ngens);
  for (auto& v : images) v.assign(static_cast<std::size_t>(m), -1);
  for (std::size_t head = 0; head < data->reps.size(); ++head) {
    Permutation r = data->reps[head]; // reps grows below
    for (std::size_t gi = 0; gi < ngens; ++gi) {
      int t = locate_or_add(r * G.generators()[gi]);
      images[gi][head] = t;
    }
  }
  if (static_cast<int>(data->reps.size()) != m)
    throw Error("coset_action: coset count mismatch");

  GroupHom hom;
  hom.source_ = G;
  hom.m_ = m;
  for (std::size_t gi = 0; gi < ngens; ++gi)
    hom.gen_images_.emplace_back(std::move(images[gi]));
  hom.coset_ = std::move(data);
  return hom;
}

/// Realize G/N as a faithful permutation action: prefer the induced action on
/// N's orbits (tiny degree) and fall back to the coset action.
inline GroupHom quotient_hom(const PermGroup& G, const PermGroup& N,
                             std::uint64_t index_cap = kDefaultIndexCap) {
  if (!N.is_normal_in(G)) throw NotNormal("quotient: N is not normal in G");
  if (N.order() == G.order()) {
    std::vector<int> all(static_cast<std::size_t>(G.degree()));
    std::iota(all.begin(), all.end(), 0);
    return induced_action(G, std::vector<std::vector<int>>{all});
  }
  auto parts = N.orbit_partition();
  if (parts.size() < static_cast<std::size_t>(G.degree())) {
    GroupHom hom = induced_action(G, parts);
    if (hom.kernel_order() == N.order()) return hom;
  } else if (N.is_trivial()) {
    return induced_action(G, parts); // singleton blocks: the identity action
  }
  return coset_action(G, N, index_cap);
}

} // namespace nslen

#pragma once

// Congruence machinery: interval-block partitions, the covers-only
// congruence test and its naive substitution-property oracle, principal
// congruence closure, full enumeration of Con(L), restriction to a
// sublattice, and the smallest extension of a congruence along a fork.

#include <numeric>
#include <set>
#include <vector>

#include "latt/fork.hpp"
#include "latt/lattice.hpp"

namespace latt {

namespace detail {

struct UnionFind {
  std::vector<int> parent, size;

  explicit UnionFind(int n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }

  int find(int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }

  bool unite(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    if (size[ra] < size[rb]) std::swap(ra, rb);
    parent[rb] = ra;
    size[ra] += size[rb];
    return true;
  }
};

}  // namespace detail

/// Partition of {0..n-1} in canonical form: blocks sorted by least member,
/// members sorted ascending. Used both for plain interval partitions and
/// for congruences; congruence-hood is established by the checkers below
/// or guaranteed by the operation that produced the partition.
class Partition {
 public:
  Partition() = default;  // empty; placeholder until assigned

  static Partition singletons(int n) {
    std::vector<int> of(n);
    std::iota(of.begin(), of.end(), 0);
    return Partition(std::move(of));
  }

  static Partition whole(int n) { return Partition(std::vector<int>(n, 0)); }

  static Partition from_blocks(int n, const std::vector<std::vector<ElementId>>& blocks) {
    std::vector<int> of(n, -1);
    int idx = 0;
    for (const auto& b : blocks) {
      for (ElementId x : b) {
        if (x < 0 || x >= n) throw Error(errc::invalid_argument, "block member out of range");
        if (of[x] != -1) throw Error(errc::invalid_argument, "element in two blocks");
        of[x] = idx;
      }
      ++idx;
    }
    for (int x = 0; x < n; ++x)
      if (of[x] == -1) throw Error(errc::invalid_argument, "element missing from all blocks");
    return Partition(std::move(of));
  }

  static Partition from_block_of(std::vector<int> block_of) { return Partition(std::move(block_of)); }

  int size() const { return int(block_of_.size()); }
  int block_count() const { return int(blocks_.size()); }
  int block_index(ElementId x) const { return block_of_[x]; }
  bool same(ElementId a, ElementId b) const { return block_of_[a] == block_of_[b]; }
  const std::vector<std::vector<ElementId>>& blocks() const { return blocks_; }
  const std::vector<int>& block_of() const { return block_of_; }

  bool refines(const Partition& coarser) const {
    for (const auto& b : blocks_)
      for (ElementId x : b)
        if (!coarser.same(b.front(), x)) return false;
    return true;
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.block_of_ == b.block_of_; }

 private:
  explicit Partition(std::vector<int> raw) {
    const int n = int(raw.size());
    // renumber blocks by first occurrence, then rebuild sorted blocks;
    // raw ids may come from a larger carrier (restriction), so size the
    // remap by their range
    int range = 0;
    for (int v : raw) {
      if (v < 0) throw Error(errc::invalid_argument, "negative block id");
      range = std::max(range, v + 1);
    }
    std::vector<int> remap(range, -1);
    block_of_.resize(n);
    int next = 0;
    for (int x = 0; x < n; ++x) {
      int& r = remap[raw[x]];
      if (r == -1) r = next++;
      block_of_[x] = r;
    }
    blocks_.assign(next, {});
    for (int x = 0; x < n; ++x) blocks_[block_of_[x]].push_back(x);
  }

  std::vector<int> block_of_;
  std::vector<std::vector<ElementId>> blocks_;
};

using Congruence = Partition;
using IntervalPartition = Partition;

/// Common refinement: x ~ y iff x ~ y in both arguments.
inline Partition intersect(const Partition& a, const Partition& b) {
  const int n = a.size();
  std::vector<int> of(n);
  std::map<std::pair<int, int>, int> key;
  for (int x = 0; x < n; ++x) {
    auto [it, fresh] = key.emplace(std::make_pair(a.block_index(x), b.block_index(x)), int(key.size()));
    (void)fresh;
    of[x] = it->second;
  }
  return Partition::from_block_of(std::move(of));
}

/// Every block is an interval [min, max] of L.
inline bool blocks_are_intervals(const FiniteLattice& L, const Partition& p) {
  for (const auto& b : p.blocks()) {
    Interval hull = interval_hull(L, b);
    if (!p.same(hull.lo, b.front()) || !p.same(hull.hi, b.front())) return false;
    if (interval_members(L, hull).size() != b.size()) return false;
  }
  return true;
}

/// Covers-only congruence test for interval partitions: for every element
/// x with two distinct upper covers y, z, if x ~ y then z ~ y v z, and
/// dually for lower covers. For interval partitions this decides
/// congruence-hood. Throws if p is not an interval partition.
inline bool is_congruence_by_covers(const FiniteLattice& L, const Partition& p) {
  if (p.size() != L.size()) throw Error(errc::invalid_argument, "partition size mismatch");
  if (!blocks_are_intervals(L, p))
    throw Error(errc::not_interval_partition, "partition blocks are not intervals");
  for (ElementId x = 0; x < L.size(); ++x) {
    const auto& ups = L.upper_covers(x);
    for (ElementId y : ups)
      if (p.same(x, y))
        for (ElementId z : ups)
          if (z != y && !p.same(z, L.join(y, z))) return false;
    const auto& downs = L.lower_covers(x);
    for (ElementId y : downs)
      if (p.same(x, y))
        for (ElementId z : downs)
          if (z != y && !p.same(z, L.meet(y, z))) return false;
  }
  return true;
}

/// Direct substitution-property check over all pairs and all c, plus the
/// interval-blocks condition. Independent of the covers-only test.
inline bool is_congruence_naive(const FiniteLattice& L, const Partition& p) {
  if (p.size() != L.size()) throw Error(errc::invalid_argument, "partition size mismatch");
  if (!blocks_are_intervals(L, p)) return false;
  for (const auto& b : p.blocks())
    for (size_t i = 0; i < b.size(); ++i)
      for (size_t j = i + 1; j < b.size(); ++j)
        for (ElementId c = 0; c < L.size(); ++c) {
          if (!p.same(L.join(b[i], c), L.join(b[j], c))) return false;
          if (!p.same(L.meet(b[i], c), L.meet(b[j], c))) return false;
        }
  return true;
}

/// Least congruence containing all seed pairs: worklist closure joining
/// and meeting every newly identified pair against every element.
inline Congruence congruence_closure(const FiniteLattice& L,
                                     const std::vector<std::pair<ElementId, ElementId>>& seeds) {
  const int n = L.size();
  detail::UnionFind uf(n);
  std::vector<std::pair<ElementId, ElementId>> work;
  auto merge = [&](ElementId a, ElementId b) {
    if (uf.unite(a, b)) work.emplace_back(a, b);
  };
  for (auto [a, b] : seeds) merge(a, b);
  while (!work.empty()) {
    auto [u, v] = work.back();
    work.pop_back();
    for (ElementId c = 0; c < n; ++c) {
      merge(L.join(u, c), L.join(v, c));
      merge(L.meet(u, c), L.meet(v, c));
    }
  }
  std::vector<int> of(n);
  for (int x = 0; x < n; ++x) of[x] = uf.find(x);
  return Partition::from_block_of(std::move(of));
}

inline Congruence principal_congruence(const FiniteLattice& L, ElementId a, ElementId b) {
  return congruence_closure(L, {{a, b}});
}

namespace detail {

inline std::vector<std::pair<ElementId, ElementId>> block_seed_pairs(const Partition& p) {
  std::vector<std::pair<ElementId, ElementId>> seeds;
  for (const auto& b : p.blocks())
    for (size_t k = 1; k < b.size(); ++k) seeds.emplace_back(b[0], b[k]);
  return seeds;
}

}  // namespace detail

/// Join of two congruences in Con(L).
inline Congruence join_congruences(const FiniteLattice& L, const Congruence& a, const Congruence& b) {
  auto seeds = detail::block_seed_pairs(a);
  auto more = detail::block_seed_pairs(b);
  seeds.insert(seeds.end(), more.begin(), more.end());
  return congruence_closure(L, seeds);
}

/// The complete congruence lattice Con(L), computed as the closure of {0}
/// under joining with principal congruences of prime intervals. Sorted
/// from finest to coarsest (block count descending, then by block_of).
inline std::vector<Congruence> all_congruences(const FiniteLattice& L, int max_elements = 64) {
  if (L.size() > max_elements)
    throw Error(errc::size_bound, "lattice exceeds the congruence enumeration bound");

  std::vector<Congruence> gens;
  std::set<std::vector<int>> gen_seen;
  for (auto [a, b] : L.cover_pairs()) {
    Congruence c = principal_congruence(L, a, b);
    if (gen_seen.insert(c.block_of()).second) gens.push_back(std::move(c));
  }

  std::vector<Congruence> out{Partition::singletons(L.size())};
  std::set<std::vector<int>> seen{out.front().block_of()};
  for (size_t h = 0; h < out.size(); ++h) {
    Congruence cur = out[h];  // out may reallocate below
    for (const Congruence& g : gens) {
      Congruence j = join_congruences(L, cur, g);
      if (seen.insert(j.block_of()).second) out.push_back(std::move(j));
    }
  }

  std::sort(out.begin(), out.end(), [](const Congruence& a, const Congruence& b) {
    if (a.block_count() != b.block_count()) return a.block_count() > b.block_count();
    return a.block_of() < b.block_of();
  });
  return out;
}

/// Restriction of a partition of K to a join/meet-closed subset, as a
/// partition of {0..|sub|-1} in the sorted order of sub.
inline Partition restrict_partition(const FiniteLattice& K, const Partition& p,
                                    std::vector<ElementId> sub) {
  std::sort(sub.begin(), sub.end());
  sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
  if (!is_sublattice_carrier(K, sub))
    throw Error(errc::not_a_sublattice, "restriction target is not a sublattice");
  std::vector<int> of(sub.size());
  for (size_t k = 0; k < sub.size(); ++k) of[k] = p.block_index(sub[k]);
  return Partition::from_block_of(std::move(of));
}

/// Restriction of a congruence of L[S] back to L along the identity embedding.
inline Congruence restrict_to_base(const ForkExtension& F, const Partition& p) {
  std::vector<int> of(F.base.size());
  for (int x = 0; x < F.base.size(); ++x) of[x] = p.block_index(F.labels.embed[x]);
  return Partition::from_block_of(std::move(of));
}

/// Least congruence of L[S] containing alpha (a congruence of L) as a
/// relation. This is the brute-force oracle the closed-form extension
/// constructions are checked against.
inline Congruence smallest_extension(const ForkExtension& F, const Congruence& alpha) {
  std::vector<std::pair<ElementId, ElementId>> seeds;
  for (const auto& b : alpha.blocks())
    for (size_t k = 1; k < b.size(); ++k)
      seeds.emplace_back(F.labels.embed[b[0]], F.labels.embed[b[k]]);
  return congruence_closure(F.extended, seeds);
}

}  // namespace latt

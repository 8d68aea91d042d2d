#pragma once

// Finite lattices represented as validated Hasse diagrams with precomputed
// order, join, and meet tables. A FiniteLattice is immutable once built and
// all queries are pure, so instances can be shared freely across threads.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace latt {

/// Dense element index, 0..size()-1.
using ElementId = int;

enum class errc {
  bad_label,
  duplicate_label,
  unknown_label,
  cycle_detected,
  not_reduced,
  not_a_lattice,
  parse_error,
  not_sps,
  not_a_covering_square,
  ambiguous_propagation,
  not_a_fork_element,
  not_interval_partition,
  not_a_sublattice,
  size_bound,
  wrong_case,
  invalid_argument,
  invariant_violation,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

/// Closed interval [lo, hi]: the elements x with lo <= x <= hi.
struct Interval {
  ElementId lo;
  ElementId hi;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Four elements o < al, ar < i forming a square of covers:
/// o is covered by al and ar, both are covered by i, al and ar are
/// incomparable, al ^ ar = o and al v ar = i.
struct CoveringSquare {
  ElementId o;
  ElementId al;
  ElementId ar;
  ElementId i;

  friend bool operator==(const CoveringSquare&, const CoveringSquare&) = default;
};

namespace detail {

class BitRows {
 public:
  BitRows() = default;
  BitRows(int rows, int bits) : bits_(bits), words_((bits + 63) / 64), data_(size_t(rows) * words_, 0) {}

  void set(int r, int b) { data_[size_t(r) * words_ + b / 64] |= uint64_t(1) << (b % 64); }
  bool test(int r, int b) const { return (data_[size_t(r) * words_ + b / 64] >> (b % 64)) & 1; }
  uint64_t* row(int r) { return data_.data() + size_t(r) * words_; }
  const uint64_t* row(int r) const { return data_.data() + size_t(r) * words_; }
  int words() const { return words_; }

  void or_into(int dst, int src) {
    uint64_t* d = row(dst);
    const uint64_t* s = row(src);
    for (int w = 0; w < words_; ++w) d[w] |= s[w];
  }

 private:
  int bits_ = 0;
  int words_ = 0;
  std::vector<uint64_t> data_;
};

}  // namespace detail

class FiniteLattice {
 public:
  /// Builds a lattice from labels and cover pairs (x, y) meaning x is
  /// covered by y. Validates that the cover graph is acyclic, that the
  /// cover list is exactly the transitive reduction of the order it
  /// generates (unless auto_reduce is set, in which case implied and
  /// duplicate pairs are dropped), and that every pair of elements has a
  /// unique least upper bound and greatest lower bound.
  static FiniteLattice from_covers(std::vector<std::string> labels,
                                   const std::vector<std::pair<std::string, std::string>>& covers,
                                   bool auto_reduce = false) {
    FiniteLattice L;
    const int n = int(labels.size());
    if (n == 0) throw Error(errc::invalid_argument, "a lattice needs at least one element");
    L.n_ = n;
    L.labels_ = std::move(labels);
    for (int x = 0; x < n; ++x) {
      const std::string& s = L.labels_[x];
      if (s.empty() || s.find_first_of(" \t\r\n#,") != std::string::npos)
        throw Error(errc::bad_label, "bad label '" + s + "': labels must be nonempty and free of whitespace, '#' and ','");
      if (!L.index_.emplace(s, x).second)
        throw Error(errc::duplicate_label, "duplicate label '" + s + "'");
    }

    std::vector<std::pair<ElementId, ElementId>> pairs;
    pairs.reserve(covers.size());
    for (const auto& [a, b] : covers) pairs.emplace_back(L.id_of(a), L.id_of(b));

    L.finish(pairs, auto_reduce);
    return L;
  }

  int size() const { return n_; }

  const std::string& label(ElementId x) const {
    check_id(x);
    return labels_[x];
  }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<ElementId> find_id(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  ElementId id_of(std::string_view name) const {
    auto id = find_id(name);
    if (!id) throw Error(errc::unknown_label, "unknown element '" + std::string(name) + "'");
    return *id;
  }

  bool leq(ElementId a, ElementId b) const {
    check_id(a);
    check_id(b);
    return up_.test(a, b);
  }
  bool lt(ElementId a, ElementId b) const { return a != b && leq(a, b); }

  /// True iff a is covered by b (a < b with nothing strictly between).
  bool covers(ElementId a, ElementId b) const {
    check_id(a);
    check_id(b);
    return cov_.test(a, b);
  }

  ElementId join(ElementId a, ElementId b) const {
    check_id(a);
    check_id(b);
    return join_[size_t(a) * n_ + b];
  }
  ElementId meet(ElementId a, ElementId b) const {
    check_id(a);
    check_id(b);
    return meet_[size_t(a) * n_ + b];
  }

  ElementId bottom() const { return bottom_; }
  ElementId top() const { return top_; }

  const std::vector<ElementId>& upper_covers(ElementId x) const {
    check_id(x);
    return up_adj_[x];
  }
  const std::vector<ElementId>& lower_covers(ElementId x) const {
    check_id(x);
    return down_adj_[x];
  }

  /// All cover pairs (a, b) with a covered by b, sorted by (a, b).
  const std::vector<std::pair<ElementId, ElementId>>& cover_pairs() const { return cover_pairs_; }

 private:
  FiniteLattice() = default;

  void check_id(ElementId x) const {
    if (x < 0 || x >= n_) throw Error(errc::invalid_argument, "element id out of range");
  }

  void finish(std::vector<std::pair<ElementId, ElementId>> pairs, bool auto_reduce) {
    const int n = n_;
    for (auto [a, b] : pairs)
      if (a == b) throw Error(errc::cycle_detected, "self-cover on '" + labels_[a] + "'");

    // topological order over the cover digraph; rejects cycles
    std::vector<std::vector<ElementId>> succ(n);
    std::vector<int> indeg(n, 0);
    for (auto [a, b] : pairs) {
      succ[a].push_back(b);
      ++indeg[b];
    }
    std::vector<ElementId> topo;
    topo.reserve(n);
    for (int x = 0; x < n; ++x)
      if (indeg[x] == 0) topo.push_back(x);
    for (size_t h = 0; h < topo.size(); ++h)
      for (ElementId b : succ[topo[h]])
        if (--indeg[b] == 0) topo.push_back(b);
    if (int(topo.size()) != n) throw Error(errc::cycle_detected, "cover graph has a cycle");

    // up-sets by reverse topological sweep
    up_ = detail::BitRows(n, n);
    for (int h = n - 1; h >= 0; --h) {
      ElementId x = topo[h];
      up_.set(x, x);
      for (ElementId b : succ[x]) up_.or_into(x, b);
    }
    down_ = detail::BitRows(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (up_.test(a, b)) down_.set(b, a);

    // transitive reduction: a cover pair is redundant iff the interval
    // [a, b] holds a third element
    std::sort(pairs.begin(), pairs.end());
    std::vector<std::pair<ElementId, ElementId>> kept;
    kept.reserve(pairs.size());
    for (size_t k = 0; k < pairs.size(); ++k) {
      auto [a, b] = pairs[k];
      if (k > 0 && pairs[k] == pairs[k - 1]) {
        if (!auto_reduce)
          throw Error(errc::not_reduced,
                      "duplicate cover '" + labels_[a] + "' < '" + labels_[b] + "'");
        continue;
      }
      bool implied = false;
      for (int c = 0; c < n && !implied; ++c)
        implied = c != a && c != b && up_.test(a, c) && up_.test(c, b);
      if (implied) {
        if (!auto_reduce)
          throw Error(errc::not_reduced, "cover list is not transitively reduced: '" + labels_[a] +
                                             "' < '" + labels_[b] + "' is implied");
        continue;
      }
      kept.push_back(pairs[k]);
    }
    cover_pairs_ = std::move(kept);

    cov_ = detail::BitRows(n, n);
    up_adj_.assign(n, {});
    down_adj_.assign(n, {});
    for (auto [a, b] : cover_pairs_) {
      cov_.set(a, b);
      up_adj_[a].push_back(b);
      down_adj_[b].push_back(a);
    }
    for (auto& v : up_adj_) std::sort(v.begin(), v.end());
    for (auto& v : down_adj_) std::sort(v.begin(), v.end());

    // bound tables; every pair must have a unique least upper bound and
    // greatest lower bound
    const int words = up_.words();
    join_.assign(size_t(n) * n, -1);
    meet_.assign(size_t(n) * n, -1);
    std::vector<uint64_t> common(words);
    auto bound = [&](const detail::BitRows& dir, int a, int b) -> int {
      const uint64_t* ra = dir.row(a);
      const uint64_t* rb = dir.row(b);
      for (int w = 0; w < words; ++w) common[w] = ra[w] & rb[w];
      for (int w = 0; w < words; ++w) {
        uint64_t bits = common[w];
        while (bits) {
          int c = w * 64 + std::countr_zero(bits);
          bits &= bits - 1;
          const uint64_t* rc = dir.row(c);
          bool least = true;
          for (int v = 0; v < words && least; ++v) least = (common[v] & ~rc[v]) == 0;
          if (least) return c;
        }
      }
      return -1;
    };
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        int j = bound(up_, a, b);
        if (j < 0)
          throw Error(errc::not_a_lattice, "elements '" + labels_[a] + "' and '" + labels_[b] +
                                               "' have no least upper bound");
        int m = bound(down_, a, b);
        if (m < 0)
          throw Error(errc::not_a_lattice, "elements '" + labels_[a] + "' and '" + labels_[b] +
                                               "' have no greatest lower bound");
        join_[size_t(a) * n + b] = join_[size_t(b) * n + a] = j;
        meet_[size_t(a) * n + b] = meet_[size_t(b) * n + a] = m;
      }

    bottom_ = 0;
    top_ = 0;
    for (int x = 1; x < n; ++x) {
      bottom_ = meet(bottom_, x);
      top_ = join(top_, x);
    }
  }

  int n_ = 0;
  std::vector<std::string> labels_;
  std::map<std::string, ElementId, std::less<>> index_;
  detail::BitRows up_;    // row a = {b : a <= b}
  detail::BitRows down_;  // row a = {b : b <= a}
  detail::BitRows cov_;
  std::vector<ElementId> join_, meet_;
  std::vector<std::vector<ElementId>> up_adj_, down_adj_;
  std::vector<std::pair<ElementId, ElementId>> cover_pairs_;
  ElementId bottom_ = 0, top_ = 0;
};

inline FiniteLattice build_lattice(std::vector<std::string> labels,
                                   const std::vector<std::pair<std::string, std::string>>& covers,
                                   bool auto_reduce = false) {
  return FiniteLattice::from_covers(std::move(labels), covers, auto_reduce);
}

inline bool interval_contains(const FiniteLattice& L, const Interval& iv, ElementId x) {
  return L.leq(iv.lo, x) && L.leq(x, iv.hi);
}

inline std::vector<ElementId> interval_members(const FiniteLattice& L, const Interval& iv) {
  std::vector<ElementId> out;
  for (ElementId x = 0; x < L.size(); ++x)
    if (interval_contains(L, iv, x)) out.push_back(x);
  return out;
}

/// Least interval spanning a nonempty set: [meet of all, join of all].
inline Interval interval_hull(const FiniteLattice& L, const std::vector<ElementId>& members) {
  if (members.empty()) throw Error(errc::invalid_argument, "interval hull of an empty set");
  Interval iv{members.front(), members.front()};
  for (ElementId x : members) {
    iv.lo = L.meet(iv.lo, x);
    iv.hi = L.join(iv.hi, x);
  }
  return iv;
}

/// Same labels and same covers-by-label, regardless of id assignment.
inline bool structurally_equal(const FiniteLattice& a, const FiniteLattice& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::string> la = a.labels(), lb = b.labels();
  std::sort(la.begin(), la.end());
  std::sort(lb.begin(), lb.end());
  if (la != lb) return false;
  auto named = [](const FiniteLattice& L) {
    std::vector<std::pair<std::string, std::string>> out;
    for (auto [x, y] : L.cover_pairs()) out.emplace_back(L.label(x), L.label(y));
    std::sort(out.begin(), out.end());
    return out;
  };
  return named(a) == named(b);
}

inline bool is_covering_square(const FiniteLattice& L, const CoveringSquare& s) {
  if (s.al == s.ar) return false;
  return L.covers(s.o, s.al) && L.covers(s.o, s.ar) && L.covers(s.al, s.i) &&
         L.covers(s.ar, s.i) && L.meet(s.al, s.ar) == s.o && L.join(s.al, s.ar) == s.i;
}

/// All covering squares, one per unordered atom pair, with the
/// lexicographically smaller label on the left; sorted by label 4-tuple.
inline std::vector<CoveringSquare> covering_squares(const FiniteLattice& L) {
  std::vector<CoveringSquare> out;
  for (ElementId o = 0; o < L.size(); ++o) {
    const auto& ups = L.upper_covers(o);
    for (size_t i = 0; i < ups.size(); ++i)
      for (size_t j = i + 1; j < ups.size(); ++j) {
        ElementId u = ups[i], v = ups[j];
        ElementId top = L.join(u, v);
        if (!L.covers(u, top) || !L.covers(v, top)) continue;
        if (L.label(v) < L.label(u)) std::swap(u, v);
        out.push_back({o, u, v, top});
      }
  }
  std::sort(out.begin(), out.end(), [&](const CoveringSquare& a, const CoveringSquare& b) {
    auto key = [&](const CoveringSquare& s) {
      return std::make_tuple(L.label(s.o), L.label(s.al), L.label(s.ar), L.label(s.i));
    };
    return key(a) < key(b);
  });
  return out;
}

/// Semimodularity: a ^ b covered by a implies b covered by a v b.
inline bool is_semimodular(const FiniteLattice& L) {
  for (ElementId a = 0; a < L.size(); ++a)
    for (ElementId b = 0; b < L.size(); ++b)
      if (L.covers(L.meet(a, b), a) && !L.covers(b, L.join(a, b))) return false;
  return true;
}

/// Slimness: the join-irreducible elements (exactly one lower cover)
/// contain no three-element antichain.
inline bool is_slim(const FiniteLattice& L) {
  std::vector<ElementId> ji;
  for (ElementId x = 0; x < L.size(); ++x)
    if (L.lower_covers(x).size() == 1) ji.push_back(x);
  auto inc = [&](ElementId a, ElementId b) { return !L.leq(a, b) && !L.leq(b, a); };
  for (size_t i = 0; i < ji.size(); ++i)
    for (size_t j = i + 1; j < ji.size(); ++j) {
      if (!inc(ji[i], ji[j])) continue;
      for (size_t k = j + 1; k < ji.size(); ++k)
        if (inc(ji[i], ji[k]) && inc(ji[j], ji[k])) return false;
    }
  return true;
}

namespace detail {

// Order dimension <= 2 test. Searches for a transitive orientation of the
// incomparability graph by backtracking with forced-arc propagation; a
// found orientation F is accepted only if leq + F and leq + reverse(F)
// are both strict linear orders, which makes them a realizer pair.
class PlanarityCheck {
 public:
  explicit PlanarityCheck(const FiniteLattice& L) : L_(L), n_(L.size()), eidx_(size_t(n_) * n_, -1) {
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        if (!L_.leq(a, b) && !L_.leq(b, a)) {
          eidx_[size_t(a) * n_ + b] = eidx_[size_t(b) * n_ + a] = int(edges_.size());
          edges_.emplace_back(a, b);
        }
  }

  bool dimension_at_most_two() {
    std::vector<int8_t> state(edges_.size(), 0);
    return solve(state);
  }

 private:
  // orientation of edge k: 0 unknown, +1 first->second, -1 second->first
  int edge(int a, int b) const { return eidx_[size_t(a) * n_ + b]; }

  bool oriented(const std::vector<int8_t>& st, int a, int b) const {
    int k = edge(a, b);
    if (k < 0 || st[k] == 0) return false;
    auto [u, v] = edges_[k];
    return st[k] == ((a == u && b == v) ? +1 : -1);
  }

  // Sets a->b and closes under the two transitivity rules. Returns false
  // on contradiction (an arc forced both ways, or a forced arc between
  // comparable elements).
  bool assign(std::vector<int8_t>& st, int a, int b) {
    std::vector<std::pair<int, int>> work{{a, b}};
    while (!work.empty()) {
      auto [x, y] = work.back();
      work.pop_back();
      int k = edge(x, y);
      if (k < 0) return false;
      auto [u, v] = edges_[k];
      int8_t want = (x == u && y == v) ? +1 : -1;
      if (st[k] == want) continue;
      if (st[k] != 0) return false;
      st[k] = want;
      for (int z = 0; z < n_; ++z) {
        if (oriented(st, y, z) && !oriented(st, x, z)) work.emplace_back(x, z);
        if (oriented(st, z, x) && !oriented(st, z, y)) work.emplace_back(z, y);
      }
    }
    return true;
  }

  bool solve(std::vector<int8_t>& st) {
    int k = -1;
    for (size_t e = 0; e < st.size(); ++e)
      if (st[e] == 0) {
        k = int(e);
        break;
      }
    if (k < 0) return realizer_ok(st);
    auto [a, b] = edges_[k];
    for (int dir = 0; dir < 2; ++dir) {
      std::vector<int8_t> copy = st;
      if (assign(copy, dir == 0 ? a : b, dir == 0 ? b : a) && solve(copy)) return true;
    }
    return false;
  }

  bool realizer_ok(const std::vector<int8_t>& st) const {
    auto linear = [&](bool flip) {
      auto before = [&](int a, int b) {
        if (L_.lt(a, b)) return true;
        if (L_.lt(b, a)) return false;
        return flip ? oriented(st, b, a) : oriented(st, a, b);
      };
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) {
          if (a == b) continue;
          if (!before(a, b)) continue;
          for (int c = 0; c < n_; ++c)
            if (c != a && c != b && before(b, c) && !before(a, c)) return false;
        }
      return true;
    };
    return linear(false) && linear(true);
  }

  const FiniteLattice& L_;
  int n_;
  std::vector<int> eidx_;
  std::vector<std::pair<int, int>> edges_;
};

}  // namespace detail

/// Planarity in the order-diagram sense, decided via order dimension <= 2.
inline bool is_planar(const FiniteLattice& L) {
  return detail::PlanarityCheck(L).dimension_at_most_two();
}

inline bool is_sps(const FiniteLattice& L) {
  return is_semimodular(L) && is_slim(L) && is_planar(L);
}

/// Least subset containing seed that is closed under join and meet.
/// Returned sorted by id.
inline std::vector<ElementId> sublattice_generated(const FiniteLattice& L,
                                                   const std::vector<ElementId>& seed) {
  if (seed.empty()) throw Error(errc::invalid_argument, "empty generating set");
  std::vector<char> in(L.size(), 0);
  std::vector<ElementId> members;
  for (ElementId x : seed)
    if (!in[x]) {
      in[x] = 1;
      members.push_back(x);
    }
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = 0; j <= i; ++j)
      for (ElementId c : {L.join(members[i], members[j]), L.meet(members[i], members[j])})
        if (!in[c]) {
          in[c] = 1;
          members.push_back(c);
        }
  std::sort(members.begin(), members.end());
  return members;
}

inline bool is_sublattice_carrier(const FiniteLattice& L, const std::vector<ElementId>& subset) {
  std::vector<char> in(L.size(), 0);
  for (ElementId x : subset) in[x] = 1;
  for (size_t i = 0; i < subset.size(); ++i)
    for (size_t j = 0; j <= i; ++j)
      if (!in[L.join(subset[i], subset[j])] || !in[L.meet(subset[i], subset[j])]) return false;
  return true;
}

/// Lattice on a join/meet-closed subset, under the induced order. Labels
/// are kept; ids are positions in the sorted subset.
inline FiniteLattice induced_sublattice(const FiniteLattice& L, std::vector<ElementId> subset) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  if (!is_sublattice_carrier(L, subset))
    throw Error(errc::not_a_sublattice, "subset is not closed under join and meet");
  const int m = int(subset.size());
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) labels[i] = L.label(subset[i]);
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j || !L.lt(subset[i], subset[j])) continue;
      bool direct = true;
      for (int k = 0; k < m && direct; ++k)
        direct = k == i || k == j || !(L.lt(subset[i], subset[k]) && L.lt(subset[k], subset[j]));
      if (direct) covers.emplace_back(labels[i], labels[j]);
    }
  return FiniteLattice::from_covers(std::move(labels), covers);
}

/// Brute-force lattice isomorphism, intended for small lattices.
inline bool is_isomorphic(const FiniteLattice& A, const FiniteLattice& B) {
  const int n = A.size();
  if (n != B.size() || A.cover_pairs().size() != B.cover_pairs().size()) return false;
  auto deg = [](const FiniteLattice& L, ElementId x) {
    return std::make_pair(L.upper_covers(x).size(), L.lower_covers(x).size());
  };
  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, int x) -> bool {
    if (x == n) return true;
    for (int y = 0; y < n; ++y) {
      if (used[y] || deg(A, x) != deg(B, y)) continue;
      bool ok = true;
      for (int p = 0; p < x && ok; ++p)
        ok = A.leq(p, x) == B.leq(map[p], y) && A.leq(x, p) == B.leq(y, map[p]) &&
             A.covers(p, x) == B.covers(map[p], y) && A.covers(x, p) == B.covers(y, map[p]);
      if (!ok) continue;
      map[x] = y;
      used[y] = 1;
      if (self(self, x + 1)) return true;
      used[y] = 0;
      map[x] = -1;
    }
    return false;
  };
  return rec(rec, 0);
}

namespace detail {

inline const FiniteLattice& s7_reference() {
  static const FiniteLattice s7 = FiniteLattice::from_covers(
      {"o", "zl", "zr", "al", "ar", "t", "i"},
      {{"o", "zl"},
       {"o", "zr"},
       {"zl", "al"},
       {"zl", "t"},
       {"zr", "ar"},
       {"zr", "t"},
       {"al", "i"},
       {"ar", "i"},
       {"t", "i"}});
  return s7;
}

}  // namespace detail

/// True iff subset is a join/meet-closed carrier inducing a lattice
/// isomorphic to the seven-element fork lattice (bottom, two atoms, an
/// inner element above both atoms, one outer element per atom, and a top
/// covering all three).
inline bool is_s7(const FiniteLattice& L, const std::vector<ElementId>& subset) {
  std::vector<ElementId> ids = subset;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() != 7) return false;
  if (!is_sublattice_carrier(L, ids)) return false;
  return is_isomorphic(induced_sublattice(L, ids), detail::s7_reference());
}

}  // namespace latt

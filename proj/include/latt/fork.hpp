#pragma once

// Fork insertion at a covering square S = {o, al, ar, i} of a slim planar
// semimodular lattice L. The square is replaced by a copy of the
// seven-element fork lattice (new elements t, zl1, zr1), and then new z
// elements propagate down-left and down-right: whenever the current lower
// trajectory step sits on top of a covering square of L, the cover below
// it is subdivided by the next z and chained to the previous one.
//
// Ids of the extended lattice keep L's ids unchanged and append the new
// elements in the order t, zl1..zln, zr1..zrm, so the embedding of L into
// L[S] is the identity on ids.

#include <string>
#include <vector>

#include "latt/lattice.hpp"

namespace latt {

struct ForkLabels {
  ElementId t = -1;
  std::vector<ElementId> z_left, z_right;  // ids in the extended lattice; index k-1 holds z_{.,k}
  std::vector<ElementId> x_left, y_left;   // trajectory elements, ids in the base lattice
  std::vector<ElementId> x_right, y_right;
  std::vector<ElementId> embed;  // base id -> extended id
};

struct ForkExtension {
  FiniteLattice base;
  FiniteLattice extended;
  CoveringSquare square;
  ForkLabels labels;

  bool in_fork(ElementId x) const { return x >= base.size(); }
  int fork_size() const { return extended.size() - base.size(); }
};

namespace detail {

inline std::string fresh_label(const std::vector<std::string>& taken, std::string base) {
  auto used = [&](const std::string& s) {
    return std::find(taken.begin(), taken.end(), s) != taken.end();
  };
  while (used(base)) base += '_';
  return base;
}

// One side of the trajectory: x[0] = atom, y[0] = o, then step k finds the
// unique lower cover c of x[k] other than y[k] with {c ^ y[k], c, y[k], x[k]}
// a covering square of L.
struct Trajectory {
  std::vector<ElementId> x, y;
};

inline Trajectory walk_trajectory(const FiniteLattice& L, ElementId atom, ElementId o) {
  Trajectory t;
  t.x.push_back(atom);
  t.y.push_back(o);
  while (true) {
    ElementId xs = t.x.back(), ys = t.y.back();
    ElementId next_x = -1, next_y = -1;
    int candidates = 0;
    for (ElementId c : L.lower_covers(xs)) {
      if (c == ys) continue;
      ElementId m = L.meet(c, ys);
      if (L.covers(m, c) && L.covers(m, ys)) {
        ++candidates;
        next_x = c;
        next_y = m;
      }
    }
    if (candidates == 0) return t;
    if (candidates > 1)
      throw Error(errc::ambiguous_propagation,
                  "more than one covering square continues the trajectory below '" +
                      L.label(xs) + "'");
    t.x.push_back(next_x);
    t.y.push_back(next_y);
  }
}

}  // namespace detail

/// Inserts a fork into L at S. Requires L to be slim, planar and
/// semimodular and S to be a covering square of L.
inline ForkExtension insert_fork(const FiniteLattice& L, const CoveringSquare& S) {
  if (!is_covering_square(L, S))
    throw Error(errc::not_a_covering_square, "the given elements do not form a covering square");
  if (!is_sps(L))
    throw Error(errc::not_sps, "fork insertion needs a slim planar semimodular lattice");

  detail::Trajectory left = detail::walk_trajectory(L, S.al, S.o);
  detail::Trajectory right = detail::walk_trajectory(L, S.ar, S.o);
  const int n = int(left.x.size());
  const int m = int(right.x.size());
  const int base_n = L.size();

  // labels for the new elements, uniquified against the base
  std::vector<std::string> labels = L.labels();
  std::string t_label = detail::fresh_label(labels, "t");
  labels.push_back(t_label);
  std::vector<std::string> zl_labels(n), zr_labels(m);
  for (int k = 0; k < n; ++k) {
    zl_labels[k] = detail::fresh_label(labels, "zl" + std::to_string(k + 1));
    labels.push_back(zl_labels[k]);
  }
  for (int k = 0; k < m; ++k) {
    zr_labels[k] = detail::fresh_label(labels, "zr" + std::to_string(k + 1));
    labels.push_back(zr_labels[k]);
  }

  ForkLabels fl;
  fl.t = base_n;
  for (int k = 0; k < n; ++k) fl.z_left.push_back(base_n + 1 + k);
  for (int k = 0; k < m; ++k) fl.z_right.push_back(base_n + 1 + n + k);
  fl.x_left = left.x;
  fl.y_left = left.y;
  fl.x_right = right.x;
  fl.y_right = right.y;
  fl.embed.resize(base_n);
  for (int x = 0; x < base_n; ++x) fl.embed[x] = x;

  // cover list: subdivide every (y_k, x_k) with z_k, chain the z's, and
  // hang t over zl1, zr1 and under i
  std::vector<std::pair<ElementId, ElementId>> removed;
  for (int k = 0; k < n; ++k) removed.emplace_back(left.y[k], left.x[k]);
  for (int k = 0; k < m; ++k) removed.emplace_back(right.y[k], right.x[k]);
  std::sort(removed.begin(), removed.end());

  std::vector<std::pair<std::string, std::string>> covers;
  for (auto [a, b] : L.cover_pairs())
    if (!std::binary_search(removed.begin(), removed.end(), std::make_pair(a, b)))
      covers.emplace_back(L.label(a), L.label(b));
  for (int k = 0; k < n; ++k) {
    covers.emplace_back(L.label(left.y[k]), zl_labels[k]);
    covers.emplace_back(zl_labels[k], L.label(left.x[k]));
    if (k > 0) covers.emplace_back(zl_labels[k], zl_labels[k - 1]);
  }
  for (int k = 0; k < m; ++k) {
    covers.emplace_back(L.label(right.y[k]), zr_labels[k]);
    covers.emplace_back(zr_labels[k], L.label(right.x[k]));
    if (k > 0) covers.emplace_back(zr_labels[k], zr_labels[k - 1]);
  }
  covers.emplace_back(zl_labels[0], t_label);
  covers.emplace_back(zr_labels[0], t_label);
  covers.emplace_back(t_label, L.label(S.i));

  ForkExtension F{L, FiniteLattice::from_covers(std::move(labels), covers), S, std::move(fl)};

  // the embedding must preserve joins and meets
  for (ElementId a = 0; a < base_n; ++a)
    for (ElementId b = 0; b < base_n; ++b)
      if (F.extended.join(a, b) != L.join(a, b) || F.extended.meet(a, b) != L.meet(a, b))
        throw Error(errc::invariant_violation, "fork insertion broke the sublattice embedding");

  // each propagation step leaves one new covering square in L and one in L[S]
  auto check_step = [&](const detail::Trajectory& t, const std::vector<ElementId>& z) {
    for (size_t k = 1; k < t.x.size(); ++k) {
      if (!is_covering_square(L, {t.y[k], t.x[k], t.y[k - 1], t.x[k - 1]}))
        throw Error(errc::invariant_violation, "trajectory step is not a covering square in L");
      if (!is_covering_square(F.extended, {t.y[k], z[k], t.y[k - 1], z[k - 1]}))
        throw Error(errc::invariant_violation, "z-chain step is not a covering square in L[S]");
    }
  };
  check_step(left, F.labels.z_left);
  check_step(right, F.labels.z_right);

  return F;
}

/// The unique element of L covering the fork element x: x_{l,k} over
/// z_{l,k}, x_{r,k} over z_{r,k}, and i over t.
inline ElementId cover_in_L_above(const ForkExtension& F, ElementId x) {
  if (x == F.labels.t) return F.square.i;
  for (size_t k = 0; k < F.labels.z_left.size(); ++k)
    if (F.labels.z_left[k] == x) return F.labels.x_left[k];
  for (size_t k = 0; k < F.labels.z_right.size(); ++k)
    if (F.labels.z_right[k] == x) return F.labels.x_right[k];
  throw Error(errc::not_a_fork_element, "element is not one of the inserted fork elements");
}

/// The greatest element of L below the fork element x: y_{l,k} under
/// z_{l,k} (a lower cover), y_{r,k} under z_{r,k}, and o under t (not a
/// cover of t, whose lower covers both lie outside L).
inline ElementId greatest_L_below(const ForkExtension& F, ElementId x) {
  if (x == F.labels.t) return F.square.o;
  for (size_t k = 0; k < F.labels.z_left.size(); ++k)
    if (F.labels.z_left[k] == x) return F.labels.y_left[k];
  for (size_t k = 0; k < F.labels.z_right.size(); ++k)
    if (F.labels.z_right[k] == x) return F.labels.y_right[k];
  throw Error(errc::not_a_fork_element, "element is not one of the inserted fork elements");
}

struct BoundViaBase {
  ElementId value;
  bool in_fork;  // set when the bound itself is a fork element and the
                 // base-route identity does not apply
};

/// join(x, y) for x in L and y a fork element. When the join lands in L it
/// equals join(x, cover_in_L_above(y)) and is computed that way; when it
/// lands in F[S] the true join is returned with in_fork set.
inline BoundViaBase join_via_base(const ForkExtension& F, ElementId x, ElementId y) {
  if (F.in_fork(x) || !F.in_fork(y))
    throw Error(errc::invalid_argument, "join_via_base expects x in L and y in F[S]");
  ElementId direct = F.extended.join(x, y);
  if (F.in_fork(direct)) return {direct, true};
  ElementId via = F.base.join(x, cover_in_L_above(F, y));
  if (via != direct)
    throw Error(errc::invariant_violation, "base-route join identity failed for a join inside L");
  return {direct, false};
}

/// Dual of join_via_base, routed through greatest_L_below.
inline BoundViaBase meet_via_base(const ForkExtension& F, ElementId x, ElementId y) {
  if (F.in_fork(x) || !F.in_fork(y))
    throw Error(errc::invalid_argument, "meet_via_base expects x in L and y in F[S]");
  ElementId direct = F.extended.meet(x, y);
  if (F.in_fork(direct)) return {direct, true};
  ElementId via = F.base.meet(x, greatest_L_below(F, y));
  if (via != direct)
    throw Error(errc::invariant_violation, "base-route meet identity failed for a meet inside L");
  return {direct, false};
}

}  // namespace latt

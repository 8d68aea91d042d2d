#pragma once

// Closed-form extension of a congruence alpha of L to the fork extension
// L[S], split by the restriction of alpha to the square S:
//
//   CollapseAll   o ~ i          each class interval of alpha is closed in L[S]
//   ZeroOnS       all singletons classes stay; t stays single; z-chains are
//                                grouped by the alpha-classes of their x-trajectory
//   CollapseLeft  al ~ i, ar !~ i  every fork element joins the class of its
//   CollapseRight ar ~ i, al !~ i  unique L-cover (z_{s,k} -> class of x_{s,k},
//                                t -> class of i); both sides use this one path
//
// cep_verify runs the dispatcher against the brute-force smallest_extension
// oracle for every alpha in Con(L), plus the uniqueness / minimality counts.

#include <optional>
#include <string>
#include <vector>

#include "latt/congruence.hpp"
#include "latt/fork.hpp"
#include "latt/lattice.hpp"

namespace latt {

enum class ExtensionCase { ZeroOnS, CollapseAll, CollapseLeft, CollapseRight };

inline const char* to_string(ExtensionCase c) {
  switch (c) {
    case ExtensionCase::ZeroOnS: return "ZeroOnS";
    case ExtensionCase::CollapseAll: return "CollapseAll";
    case ExtensionCase::CollapseLeft: return "CollapseLeft";
    case ExtensionCase::CollapseRight: return "CollapseRight";
  }
  return "?";
}

/// Case tag plus, for ZeroOnS, the index interval of each z-chain class:
/// bounds[k] = (lo, hi), 1-based, the least and greatest j with
/// x_{s,j} ~ x_{s,k+1} mod alpha.
struct ExtensionPlan {
  ExtensionCase tag;
  std::vector<std::pair<int, int>> left_bounds, right_bounds;
};

inline ExtensionCase classify_restriction(const ForkExtension& F, const Congruence& alpha) {
  const CoveringSquare& s = F.square;
  if (alpha.same(s.o, s.i)) return ExtensionCase::CollapseAll;
  if (alpha.same(s.al, s.i)) return ExtensionCase::CollapseLeft;
  if (alpha.same(s.ar, s.i)) return ExtensionCase::CollapseRight;
  // restriction to S is a congruence of the square, so the only case left
  // is the all-singletons one
  if (alpha.same(s.o, s.al) || alpha.same(s.o, s.ar) || alpha.same(s.al, s.ar))
    throw Error(errc::invariant_violation, "restriction to the square is not a congruence");
  return ExtensionCase::ZeroOnS;
}

namespace detail {

// alpha-classes along a trajectory chain are contiguous index runs
inline std::vector<std::pair<int, int>> chain_class_bounds(const Congruence& alpha,
                                                           const std::vector<ElementId>& xs) {
  const int n = int(xs.size());
  std::vector<std::pair<int, int>> bounds(n);
  for (int k = 0; k < n; ++k) {
    int lo = k, hi = k;
    while (lo > 0 && alpha.same(xs[lo - 1], xs[k])) --lo;
    while (hi + 1 < n && alpha.same(xs[hi + 1], xs[k])) ++hi;
    for (int j = lo; j <= hi; ++j)
      if (!alpha.same(xs[j], xs[k]))
        throw Error(errc::invariant_violation, "trajectory classes are not contiguous");
    bounds[k] = {lo + 1, hi + 1};
  }
  return bounds;
}

}  // namespace detail

inline ExtensionPlan plan_extension(const ForkExtension& F, const Congruence& alpha) {
  ExtensionPlan plan;
  plan.tag = classify_restriction(F, alpha);
  if (plan.tag == ExtensionCase::ZeroOnS) {
    plan.left_bounds = detail::chain_class_bounds(alpha, F.labels.x_left);
    plan.right_bounds = detail::chain_class_bounds(alpha, F.labels.x_right);
  }
  return plan;
}

/// o ~ i case: the extension's blocks are the L[S]-interval closures
/// [u,v] of the class intervals [u,v] of alpha.
inline Congruence extend_full(const ForkExtension& F, const Congruence& alpha) {
  if (classify_restriction(F, alpha) != ExtensionCase::CollapseAll)
    throw Error(errc::wrong_case, "extend_full needs o ~ i mod alpha");
  const FiniteLattice& K = F.extended;
  std::vector<int> of(K.size(), -1);
  int idx = 0;
  for (const auto& b : alpha.blocks()) {
    Interval hull = interval_hull(F.base, b);
    Interval lifted{F.labels.embed[hull.lo], F.labels.embed[hull.hi]};
    for (ElementId w : interval_members(K, lifted)) {
      if (of[w] != -1)
        throw Error(errc::invariant_violation, "interval closures overlap in extend_full");
      of[w] = idx;
    }
    ++idx;
  }
  for (ElementId w = 0; w < K.size(); ++w)
    if (of[w] == -1)
      throw Error(errc::invariant_violation, "interval closures miss an element in extend_full");
  return Partition::from_block_of(std::move(of));
}

/// Restriction-zero case: classes of alpha stay as they are (their
/// L[S]-interval closures pick up no fork element), t stays a singleton,
/// and each z-chain splits into blocks along the alpha-classes of its
/// x-trajectory.
inline Congruence extend_zero(const ForkExtension& F, const Congruence& alpha) {
  ExtensionPlan plan = plan_extension(F, alpha);
  if (plan.tag != ExtensionCase::ZeroOnS)
    throw Error(errc::wrong_case, "extend_zero needs alpha restricting to the zero of S");
  const FiniteLattice& K = F.extended;
  const int base_n = F.base.size();

  // no class interval may absorb a fork element in this case
  for (const auto& b : alpha.blocks()) {
    Interval hull = interval_hull(F.base, b);
    Interval lifted{F.labels.embed[hull.lo], F.labels.embed[hull.hi]};
    for (ElementId w = base_n; w < K.size(); ++w)
      if (interval_contains(K, lifted, w))
        throw Error(errc::invariant_violation,
                    "a class interval closure caught a fork element in extend_zero");
  }

  std::vector<int> of(K.size(), -1);
  for (ElementId x = 0; x < base_n; ++x) of[F.labels.embed[x]] = alpha.block_index(x);
  int next = alpha.block_count();
  of[F.labels.t] = next++;
  auto chain_blocks = [&](const std::vector<ElementId>& z, const std::vector<std::pair<int, int>>& bounds) {
    for (size_t k = 0; k < z.size(); ++k) {
      if (k > 0 && bounds[k] == bounds[k - 1])
        of[z[k]] = of[z[k - 1]];
      else
        of[z[k]] = next++;
    }
  };
  chain_blocks(F.labels.z_left, plan.left_bounds);
  chain_blocks(F.labels.z_right, plan.right_bounds);
  return Partition::from_block_of(std::move(of));
}

/// One-sided case (al ~ i or ar ~ i): every fork element joins the
/// alpha-class of its unique L-cover, i.e. z_{s,k} goes to the class of
/// x_{s,k} and t to the class of i. Convexity forces t into i's class and
/// z_{r,1} into the class of o = a_r on the collapsed-left side, which is
/// exactly what the cover rule yields; the same single path serves both
/// sides.
inline Congruence extend_onesided(const ForkExtension& F, const Congruence& alpha) {
  ExtensionCase tag = classify_restriction(F, alpha);
  if (tag != ExtensionCase::CollapseLeft && tag != ExtensionCase::CollapseRight)
    throw Error(errc::wrong_case, "extend_onesided needs exactly one of al, ar collapsed with i");
  const FiniteLattice& K = F.extended;
  std::vector<int> of(K.size(), -1);
  for (ElementId x = 0; x < F.base.size(); ++x) of[F.labels.embed[x]] = alpha.block_index(x);
  of[F.labels.t] = alpha.block_index(F.square.i);
  for (size_t k = 0; k < F.labels.z_left.size(); ++k)
    of[F.labels.z_left[k]] = alpha.block_index(F.labels.x_left[k]);
  for (size_t k = 0; k < F.labels.z_right.size(); ++k)
    of[F.labels.z_right[k]] = alpha.block_index(F.labels.x_right[k]);
  return Partition::from_block_of(std::move(of));
}

/// Dispatcher: extends any alpha in Con(L) to a congruence of L[S] that
/// restricts back to alpha.
inline Congruence extend(const ForkExtension& F, const Congruence& alpha) {
  switch (classify_restriction(F, alpha)) {
    case ExtensionCase::CollapseAll: return extend_full(F, alpha);
    case ExtensionCase::ZeroOnS: return extend_zero(F, alpha);
    default: return extend_onesided(F, alpha);
  }
}

/// Number of congruences of L[S] restricting to alpha.
inline int count_extensions(const ForkExtension& F, const Congruence& alpha, int max_elements = 64) {
  int count = 0;
  for (const Congruence& beta : all_congruences(F.extended, max_elements))
    if (restrict_to_base(F, beta) == alpha) ++count;
  return count;
}

struct CepRecord {
  Congruence alpha;
  ExtensionCase tag = ExtensionCase::ZeroOnS;
  std::optional<Congruence> extension;
  bool congruence_ok = false;   // extension passes both congruence checkers
  bool restriction_ok = false;  // restrict(extension) == alpha
  bool oracle_equal = false;    // extension == smallest_extension(alpha)
  bool uniqueness_ok = false;   // count == 1 for the collapse cases, minimality for ZeroOnS
  std::optional<int> extension_count;
  std::string failure;  // set when the construction itself threw

  bool pass() const { return congruence_ok && restriction_ok && oracle_equal && uniqueness_ok; }
};

struct CepReport {
  std::vector<CepRecord> records;
  int counterexamples = 0;
  bool ok = false;
};

/// Verifies the congruence extension property over all of Con(L) for one
/// fork extension. Failures become report entries, not exceptions.
inline CepReport cep_verify(const ForkExtension& F, int max_elements = 64) {
  CepReport report;
  std::vector<Congruence> con_l = all_congruences(F.base, max_elements);

  std::vector<Congruence> con_k;
  std::vector<Congruence> con_k_restrictions;
  bool have_con_k = true;
  try {
    con_k = all_congruences(F.extended, max_elements);
    con_k_restrictions.reserve(con_k.size());
    for (const Congruence& beta : con_k) con_k_restrictions.push_back(restrict_to_base(F, beta));
  } catch (const Error& e) {
    if (e.code() != errc::size_bound) throw;
    have_con_k = false;
  }

  for (const Congruence& alpha : con_l) {
    CepRecord rec;
    rec.alpha = alpha;
    rec.tag = classify_restriction(F, alpha);
    try {
      Congruence ext = extend(F, alpha);
      rec.extension = ext;
      rec.congruence_ok = is_congruence_by_covers(F.extended, ext) && is_congruence_naive(F.extended, ext);
      rec.restriction_ok = restrict_to_base(F, ext) == alpha;
      rec.oracle_equal = ext == smallest_extension(F, alpha);
      if (have_con_k) {
        int count = 0;
        bool minimal = true;
        for (size_t b = 0; b < con_k.size(); ++b)
          if (con_k_restrictions[b] == alpha) {
            ++count;
            if (!ext.refines(con_k[b])) minimal = false;
          }
        rec.extension_count = count;
        rec.uniqueness_ok = rec.tag == ExtensionCase::ZeroOnS ? minimal : count == 1;
      } else {
        rec.uniqueness_ok = true;  // not decidable under the size bound
      }
    } catch (const Error& e) {
      rec.failure = e.what();
    }
    if (!rec.pass()) ++report.counterexamples;
    report.records.push_back(std::move(rec));
  }
  report.ok = report.counterexamples == 0;
  return report;
}

}  // namespace latt

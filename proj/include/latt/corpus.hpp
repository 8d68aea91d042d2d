#pragma once

// Test corpus generation: grids (products of two chains) and lattices
// obtained from grids by seeded sequences of fork insertions.

#include <cstdint>
#include <string>
#include <vector>

#include "latt/fork.hpp"
#include "latt/lattice.hpp"

namespace latt {

/// Fixed 64-bit linear congruential generator, so corpora reproduce
/// bit-for-bit across platforms and implementations:
///   x_{k+1} = 6364136223846793005 * x_k + 1442695040888963407  (mod 2^64)
/// draws use the high bits: pick(n) = (x_{k+1} >> 33) % n.
struct Lcg64 {
  uint64_t state;

  explicit Lcg64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state;
  }

  uint32_t pick(uint32_t bound) { return uint32_t((next() >> 33) % bound); }
};

/// Product of a p-chain and a q-chain. Element (i, j) is labeled by the
/// concatenated coordinates ("11", "21", ...) while both sides fit in one
/// digit, and "i_j" otherwise.
inline FiniteLattice grid(int p, int q) {
  if (p < 1 || q < 1) throw Error(errc::invalid_argument, "grid needs p, q >= 1");
  auto name = [&](int i, int j) {
    if (p <= 10 && q <= 10) return std::to_string(i) + std::to_string(j);
    return std::to_string(i) + "_" + std::to_string(j);
  };
  std::vector<std::string> labels;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) labels.push_back(name(i, j));
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) {
      if (i + 1 < p) covers.emplace_back(name(i, j), name(i + 1, j));
      if (j + 1 < q) covers.emplace_back(name(i, j), name(i, j + 1));
    }
  return FiniteLattice::from_covers(std::move(labels), covers);
}

struct CorpusSpec {
  int p = 3, q = 3;
  int fork_steps = 1;
  uint64_t seed = 1;
  int size_cap = 64;
};

struct CorpusRun {
  std::vector<ForkExtension> steps;
  bool hit_size_cap = false;
};

/// Starting from grid(p, q), repeatedly picks a covering square with the
/// seeded generator and inserts a fork, emitting every intermediate
/// extension. Stops early (reported, not thrown) when the next extension
/// would exceed size_cap.
inline CorpusRun random_sps(const CorpusSpec& spec) {
  if (spec.p < 2 || spec.q < 2)
    throw Error(errc::invalid_argument, "corpus grids need p, q >= 2");
  CorpusRun run;
  Lcg64 rng(spec.seed);
  FiniteLattice L = grid(spec.p, spec.q);
  for (int step = 0; step < spec.fork_steps; ++step) {
    std::vector<CoveringSquare> squares = covering_squares(L);
    if (squares.empty()) break;
    CoveringSquare S = squares[rng.pick(uint32_t(squares.size()))];
    ForkExtension F = insert_fork(L, S);
    if (F.extended.size() > spec.size_cap) {
      run.hit_size_cap = true;
      break;
    }
    L = F.extended;
    run.steps.push_back(std::move(F));
  }
  return run;
}

/// The default verification corpus: every covering square of every grid
/// with 2 <= p, q <= 4, plus three seeded fork steps per grid.
inline std::vector<ForkExtension> default_corpus_instances() {
  std::vector<ForkExtension> out;
  for (int p = 2; p <= 4; ++p)
    for (int q = 2; q <= 4; ++q) {
      FiniteLattice g = grid(p, q);
      for (const CoveringSquare& s : covering_squares(g)) out.push_back(insert_fork(g, s));
      CorpusSpec spec{p, q, 3, uint64_t(1729 + 10 * p + q), 64};
      CorpusRun run = random_sps(spec);
      for (ForkExtension& f : run.steps) out.push_back(std::move(f));
    }
  return out;
}

}  // namespace latt

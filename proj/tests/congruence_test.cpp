#include <catch2/catch_amalgamated.hpp>

#include "latt/congruence.hpp"
#include "latt/corpus.hpp"
#include "latt/fork.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace latt;

namespace {

Partition blocks_by_labels(const FiniteLattice& L, const std::vector<std::vector<std::string>>& blocks) {
  std::vector<std::vector<ElementId>> ids;
  for (const auto& b : blocks) {
    std::vector<ElementId> block;
    for (const auto& s : b) block.push_back(L.id_of(s));
    ids.push_back(std::move(block));
  }
  return Partition::from_blocks(L.size(), ids);
}

}  // namespace

TEST_CASE("covers-only test on the spec'd square and S7 partitions") {
  FiniteLattice b2 = fixtures::b2();
  CHECK(is_congruence_by_covers(b2, Partition::singletons(4)));
  CHECK(is_congruence_by_covers(b2, blocks_by_labels(b2, {{"o", "al"}, {"ar", "i"}})));
  CHECK_FALSE(is_congruence_by_covers(b2, blocks_by_labels(b2, {{"o", "al"}, {"ar"}, {"i"}})));

  FiniteLattice s7 = fixtures::s7();
  CHECK(is_congruence_by_covers(
      s7, blocks_by_labels(s7, {{"o"}, {"zl", "al"}, {"zr", "ar"}, {"t", "i"}})));
}

TEST_CASE("covers-only test rejects non-interval partitions") {
  FiniteLattice c3 = fixtures::chain(3);
  auto gappy = Partition::from_blocks(3, {{0, 2}, {1}});
  CHECK_THROWS_MATCHES(is_congruence_by_covers(c3, gappy), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::not_interval_partition;
                       }));
  CHECK_FALSE(is_congruence_naive(c3, gappy));
}

TEST_CASE("naive checker basics") {
  FiniteLattice n5 = fixtures::n5();
  CHECK(is_congruence_naive(n5, Partition::singletons(5)));
  CHECK(is_congruence_naive(n5, Partition::whole(5)));
  Partition p = blocks_by_labels(n5, {{"0", "a"}, {"b"}, {"c"}, {"1"}});
  CHECK(is_congruence_naive(n5, p) == is_congruence_by_covers(n5, p));
}

TEST_CASE("checkers agree on every interval partition of every lattice up to six elements") {
  // the exhaustive eight-element sweep lives in the acceptance suite
  long checked = 0;
  oracles::enumerate_all_lattices(6, [&](const FiniteLattice& L) {
    oracles::enumerate_interval_partitions(L, [&](const Partition& p) {
      ++checked;
      CHECK(is_congruence_by_covers(L, p) == is_congruence_naive(L, p));
    });
  });
  CHECK(checked > 500);
}

TEST_CASE("principal congruences") {
  FiniteLattice b2 = fixtures::b2();
  CHECK(principal_congruence(b2, 0, 0) == Partition::singletons(4));
  CHECK(principal_congruence(b2, b2.id_of("o"), b2.id_of("al")) ==
        blocks_by_labels(b2, {{"o", "al"}, {"ar", "i"}}));

  FiniteLattice s7 = fixtures::s7();
  CHECK(principal_congruence(s7, s7.id_of("zl"), s7.id_of("al")) ==
        blocks_by_labels(s7, {{"o"}, {"zl", "al"}, {"zr", "ar"}, {"t", "i"}}));

  // minimality: every congruence containing the pair is above the principal
  for (const Congruence& c : all_congruences(s7))
    if (c.same(s7.id_of("zl"), s7.id_of("al")))
      CHECK(principal_congruence(s7, s7.id_of("zl"), s7.id_of("al")).refines(c));
}

TEST_CASE("all_congruences matches the generate-and-filter oracle") {
  for (const FiniteLattice& L :
       {fixtures::chain(3), fixtures::b2(), fixtures::s7(), fixtures::n5(), fixtures::m3()}) {
    auto fast = all_congruences(L);
    auto slow = oracles::brute_force_congruences(L);
    REQUIRE(fast.size() == slow.size());
    for (size_t k = 0; k < fast.size(); ++k) CHECK(fast[k] == slow[k]);
  }
  CHECK(all_congruences(fixtures::chain(3)).size() == 4);
  CHECK(all_congruences(fixtures::b2()).size() == 4);
  CHECK(all_congruences(fixtures::s7()).size() == 5);
}

TEST_CASE("Con(S7) has exactly the five expected members") {
  FiniteLattice s7 = fixtures::s7();
  auto con = all_congruences(s7);
  REQUIRE(con.size() == 5);
  Partition beta = blocks_by_labels(s7, {{"o"}, {"zl", "al"}, {"zr", "ar"}, {"t", "i"}});
  Partition gl = blocks_by_labels(s7, {{"o", "zl", "al"}, {"zr", "ar", "t", "i"}});
  Partition gr = blocks_by_labels(s7, {{"o", "zr", "ar"}, {"zl", "al", "t", "i"}});
  auto contains = [&](const Partition& p) {
    return std::find(con.begin(), con.end(), p) != con.end();
  };
  CHECK(contains(Partition::singletons(7)));
  CHECK(contains(beta));
  CHECK(contains(gl));
  CHECK(contains(gr));
  CHECK(contains(Partition::whole(7)));
}

TEST_CASE("all_congruences is closed under block-relation intersection") {
  for (const FiniteLattice& L : {fixtures::s7(), fixtures::n5(), grid(3, 3)}) {
    auto con = all_congruences(L);
    for (const Congruence& a : con)
      for (const Congruence& b : con) {
        Partition meet = intersect(a, b);
        CHECK(std::find(con.begin(), con.end(), meet) != con.end());
      }
  }
}

TEST_CASE("congruence blocks are intervals") {
  for (const FiniteLattice& L : {fixtures::s7(), fixtures::n5(), fixtures::b3(), grid(4, 3)})
    for (const Congruence& c : all_congruences(L)) CHECK(blocks_are_intervals(L, c));
}

TEST_CASE("all_congruences enforces its size bound") {
  CHECK_THROWS_MATCHES(all_congruences(grid(3, 3), 8), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::size_bound;
                       }));
}

TEST_CASE("restriction of S7 congruences to the square") {
  FiniteLattice s7 = fixtures::s7();
  FiniteLattice b2 = fixtures::b2();
  std::vector<ElementId> square{s7.id_of("o"), s7.id_of("al"), s7.id_of("ar"), s7.id_of("i")};

  Partition beta = blocks_by_labels(s7, {{"o"}, {"zl", "al"}, {"zr", "ar"}, {"t", "i"}});
  Partition gl = blocks_by_labels(s7, {{"o", "zl", "al"}, {"zr", "ar", "t", "i"}});

  // positions in sorted square id order: o, zl < ... ids are construction
  // order o, zl, zr, al, ar, t, i -> sorted square ids are o, al, ar, i
  Partition r0 = restrict_partition(s7, Partition::singletons(7), square);
  CHECK(r0 == Partition::singletons(4));

  Partition rb = restrict_partition(s7, beta, square);
  CHECK(rb == Partition::singletons(4));

  Partition rg = restrict_partition(s7, gl, square);
  // square order is o, zl? no: sorted ids are o(0), al(3), ar(4), i(6);
  // gl collapses {o, al} and {ar, i} there
  CHECK(rg == Partition::from_blocks(4, {{0, 1}, {2, 3}}));

  // {zl, zr} is not closed: zl v zr = t falls outside
  CHECK_THROWS_MATCHES(
      restrict_partition(s7, beta, {s7.id_of("zl"), s7.id_of("zr")}), Error,
      Catch::Matchers::Predicate<Error>([](const Error& e) {
        return e.code() == errc::not_a_sublattice;
      }));
}

TEST_CASE("smallest_extension anchors on the B2 fork") {
  FiniteLattice b2 = fixtures::b2();
  ForkExtension F = insert_fork(b2, covering_squares(b2).front());
  const FiniteLattice& s7 = F.extended;

  CHECK(smallest_extension(F, Partition::singletons(4)) == Partition::singletons(7));
  CHECK(smallest_extension(F, Partition::whole(4)) == Partition::whole(7));

  Congruence alpha = blocks_by_labels(b2, {{"o", "ar"}, {"al", "i"}});
  Congruence gr = blocks_by_labels(
      s7, {{"o", "zr1", "ar"}, {"zl1", "al", "t", "i"}});
  CHECK(smallest_extension(F, alpha) == gr);
}

TEST_CASE("restriction of the smallest extension contains alpha") {
  FiniteLattice g = grid(3, 3);
  for (const CoveringSquare& s : covering_squares(g)) {
    ForkExtension F = insert_fork(g, s);
    for (const Congruence& alpha : all_congruences(g)) {
      Congruence ext = smallest_extension(F, alpha);
      Congruence back = restrict_to_base(F, ext);
      CHECK(alpha.refines(back));
    }
  }
}

#include <catch2/catch_amalgamated.hpp>

#include "latt/corpus.hpp"
#include "latt/fork.hpp"
#include "support/fixtures.hpp"

using namespace latt;

namespace {

CoveringSquare square_by_labels(const FiniteLattice& L, const std::string& o, const std::string& al,
                                const std::string& ar, const std::string& i) {
  return CoveringSquare{L.id_of(o), L.id_of(al), L.id_of(ar), L.id_of(i)};
}

}  // namespace

TEST_CASE("forking the square gives S7") {
  FiniteLattice b2 = fixtures::b2();
  ForkExtension F = insert_fork(b2, covering_squares(b2).front());
  CHECK(F.extended.size() == 7);
  CHECK(F.labels.z_left.size() == 1);
  CHECK(F.labels.z_right.size() == 1);
  CHECK(is_isomorphic(F.extended, fixtures::s7()));
  CHECK(is_sps(F.extended));
}

TEST_CASE("forking the top square of the 3x3 grid") {
  FiniteLattice g = grid(3, 3);
  ForkExtension F = insert_fork(g, square_by_labels(g, "11", "21", "12", "22"));

  CHECK(F.extended.size() == 14);
  REQUIRE(F.labels.z_left.size() == 2);
  REQUIRE(F.labels.z_right.size() == 2);

  auto label_seq = [&](const std::vector<ElementId>& ids) {
    std::vector<std::string> out;
    for (ElementId x : ids) out.push_back(g.label(x));
    return out;
  };
  CHECK(label_seq(F.labels.x_left) == std::vector<std::string>{"21", "20"});
  CHECK(label_seq(F.labels.y_left) == std::vector<std::string>{"11", "10"});
  CHECK(label_seq(F.labels.x_right) == std::vector<std::string>{"12", "02"});
  CHECK(label_seq(F.labels.y_right) == std::vector<std::string>{"11", "01"});

  // new ids appended after the base, in the order t, left chain, right chain
  CHECK(F.labels.t == 9);
  CHECK(F.labels.z_left == std::vector<ElementId>{10, 11});
  CHECK(F.labels.z_right == std::vector<ElementId>{12, 13});
}

TEST_CASE("the embedded base keeps its joins and meets") {
  for (int p = 2; p <= 3; ++p)
    for (int q = 2; q <= 4; ++q) {
      FiniteLattice g = grid(p, q);
      for (const CoveringSquare& s : covering_squares(g)) {
        ForkExtension F = insert_fork(g, s);
        CHECK(F.extended.size() == g.size() + 1 + int(F.labels.z_left.size()) +
                                      int(F.labels.z_right.size()));
        for (ElementId a = 0; a < g.size(); ++a)
          for (ElementId b = 0; b < g.size(); ++b) {
            CHECK(F.extended.join(a, b) == g.join(a, b));
            CHECK(F.extended.meet(a, b) == g.meet(a, b));
          }
        CHECK(is_sps(F.extended));
      }
    }
}

TEST_CASE("fork labeling invariants") {
  FiniteLattice g = grid(3, 3);
  ForkExtension F = insert_fork(g, square_by_labels(g, "11", "21", "12", "22"));
  const FiniteLattice& K = F.extended;
  const ForkLabels& fl = F.labels;

  CHECK(fl.x_left.front() == F.square.al);
  CHECK(fl.y_left.front() == F.square.o);
  CHECK(fl.x_right.front() == F.square.ar);
  CHECK(fl.y_right.front() == F.square.o);

  for (size_t k = 0; k < fl.z_left.size(); ++k) {
    CHECK(K.covers(fl.z_left[k], fl.embed[fl.x_left[k]]));
    CHECK(K.covers(fl.embed[fl.y_left[k]], fl.z_left[k]));
    if (k > 0) CHECK(K.covers(fl.z_left[k], fl.z_left[k - 1]));
  }
  CHECK(K.covers(fl.z_left.front(), fl.t));
  CHECK(K.covers(fl.z_right.front(), fl.t));
  CHECK(K.covers(fl.t, fl.embed[F.square.i]));

  // i now has three lower covers and they generate an S7 sublattice
  auto lows = K.lower_covers(fl.embed[F.square.i]);
  REQUIRE(lows.size() == 3);
  CHECK(is_s7(K, sublattice_generated(K, lows)));
}

TEST_CASE("insert_fork is deterministic") {
  FiniteLattice g = grid(3, 3);
  CoveringSquare s = square_by_labels(g, "11", "21", "12", "22");
  ForkExtension a = insert_fork(g, s);
  ForkExtension b = insert_fork(g, s);
  CHECK(a.extended.labels() == b.extended.labels());
  CHECK(a.extended.cover_pairs() == b.extended.cover_pairs());
  CHECK(a.labels.t == b.labels.t);
  CHECK(a.labels.z_left == b.labels.z_left);
  CHECK(a.labels.z_right == b.labels.z_right);
}

TEST_CASE("repeated forks uniquify the new labels") {
  FiniteLattice b2 = fixtures::b2();
  ForkExtension F1 = insert_fork(b2, covering_squares(b2).front());
  auto squares = covering_squares(F1.extended);
  ForkExtension F2 = insert_fork(F1.extended, squares.front());
  std::vector<std::string> labels = F2.extended.labels();
  std::sort(labels.begin(), labels.end());
  CHECK(std::adjacent_find(labels.begin(), labels.end()) == labels.end());
}

TEST_CASE("insert_fork rejects bad inputs") {
  FiniteLattice m3 = fixtures::m3();
  auto sq = covering_squares(m3);
  REQUIRE_FALSE(sq.empty());
  CHECK_THROWS_MATCHES(insert_fork(m3, sq.front()), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::not_sps;
                       }));

  FiniteLattice b2 = fixtures::b2();
  CHECK_THROWS_MATCHES(insert_fork(b2, square_by_labels(b2, "o", "al", "ar", "ar")), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::not_a_covering_square;
                       }));
}

TEST_CASE("cover_in_L_above and greatest_L_below") {
  FiniteLattice g = grid(3, 3);
  ForkExtension F = insert_fork(g, square_by_labels(g, "11", "21", "12", "22"));

  CHECK(cover_in_L_above(F, F.labels.t) == F.square.i);
  CHECK(greatest_L_below(F, F.labels.t) == F.square.o);
  CHECK(cover_in_L_above(F, F.labels.z_left[1]) == F.labels.x_left[1]);
  CHECK(greatest_L_below(F, F.labels.z_left[1]) == F.labels.y_left[1]);

  CHECK_THROWS_MATCHES(cover_in_L_above(F, F.square.o), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::not_a_fork_element;
                       }));

  // the L-cover is the unique cover lying in L, and dually below
  for (ElementId z = g.size(); z < F.extended.size(); ++z) {
    int in_l_above = 0, in_l_below = 0;
    for (ElementId u : F.extended.upper_covers(z))
      if (!F.in_fork(u)) {
        ++in_l_above;
        CHECK(u == cover_in_L_above(F, z));
      }
    for (ElementId d : F.extended.lower_covers(z))
      if (!F.in_fork(d)) {
        ++in_l_below;
        if (z != F.labels.t) CHECK(d == greatest_L_below(F, z));
      }
    CHECK(in_l_above == 1);
    CHECK(in_l_below == (z == F.labels.t ? 0 : 1));
  }

  // greatest_L_below really is the greatest base element underneath
  for (ElementId z = g.size(); z < F.extended.size(); ++z) {
    ElementId best = -1;
    for (ElementId u = 0; u < g.size(); ++u)
      if (F.extended.leq(u, z) && (best == -1 || F.extended.leq(best, u))) best = u;
    CHECK(best == greatest_L_below(F, z));
  }
}

TEST_CASE("join_via_base and meet_via_base honor the landing proviso") {
  FiniteLattice b2 = fixtures::b2();
  ForkExtension F = insert_fork(b2, covering_squares(b2).front());
  const FiniteLattice& s7 = F.extended;

  // o v t lands in the fork: flag set, true join returned
  BoundViaBase j = join_via_base(F, F.square.o, F.labels.t);
  CHECK(j.in_fork);
  CHECK(j.value == F.labels.t);

  // al ^ t lands in the fork too
  BoundViaBase m = meet_via_base(F, F.square.al, F.labels.t);
  CHECK(m.in_fork);
  CHECK(m.value == F.labels.z_left.front());

  // every pair with the bound inside L satisfies the base-route identity
  for (ElementId x = 0; x < F.base.size(); ++x)
    for (ElementId y = F.base.size(); y < s7.size(); ++y) {
      BoundViaBase jj = join_via_base(F, x, y);
      if (!jj.in_fork) CHECK(jj.value == F.base.join(x, cover_in_L_above(F, y)));
      BoundViaBase mm = meet_via_base(F, x, y);
      if (!mm.in_fork) CHECK(mm.value == F.base.meet(x, greatest_L_below(F, y)));
    }

  // x >= y makes the join x itself, inside L
  BoundViaBase top = join_via_base(F, F.square.i, F.labels.t);
  CHECK_FALSE(top.in_fork);
  CHECK(top.value == F.square.i);
}

TEST_CASE("every propagation step leaves the two promised covering squares") {
  // verified inside insert_fork; recheck one deep instance here
  FiniteLattice g = grid(4, 4);
  ForkExtension F = insert_fork(g, square_by_labels(g, "22", "32", "23", "33"));
  REQUIRE(F.labels.z_left.size() == 3);
  REQUIRE(F.labels.z_right.size() == 3);
  for (size_t k = 1; k < F.labels.z_left.size(); ++k) {
    CHECK(is_covering_square(
        g, {F.labels.y_left[k], F.labels.x_left[k], F.labels.y_left[k - 1], F.labels.x_left[k - 1]}));
    CHECK(is_covering_square(F.extended, {F.labels.y_left[k], F.labels.z_left[k],
                                          F.labels.y_left[k - 1], F.labels.z_left[k - 1]}));
  }
}

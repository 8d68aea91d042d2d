#pragma once

// Small named lattices shared across the test suites.

#include "latt/lattice.hpp"

namespace fixtures {

inline latt::FiniteLattice b2() {
  return latt::build_lattice({"o", "al", "ar", "i"},
                             {{"o", "al"}, {"o", "ar"}, {"al", "i"}, {"ar", "i"}});
}

inline latt::FiniteLattice s7() {
  return latt::build_lattice({"o", "zl", "zr", "al", "ar", "t", "i"},
                             {{"o", "zl"},
                              {"o", "zr"},
                              {"zl", "al"},
                              {"zl", "t"},
                              {"zr", "ar"},
                              {"zr", "t"},
                              {"al", "i"},
                              {"ar", "i"},
                              {"t", "i"}});
}

// pentagon: 0 < a < 1 and 0 < b < c < 1
inline latt::FiniteLattice n5() {
  return latt::build_lattice({"0", "a", "b", "c", "1"},
                             {{"0", "a"}, {"a", "1"}, {"0", "b"}, {"b", "c"}, {"c", "1"}});
}

// diamond: three incomparable atoms
inline latt::FiniteLattice m3() {
  return latt::build_lattice({"o", "a", "b", "c", "i"},
                             {{"o", "a"}, {"o", "b"}, {"o", "c"}, {"a", "i"}, {"b", "i"}, {"c", "i"}});
}

// boolean cube on three atoms
inline latt::FiniteLattice b3() {
  return latt::build_lattice({"0", "a", "b", "c", "ab", "ac", "bc", "abc"},
                             {{"0", "a"},
                              {"0", "b"},
                              {"0", "c"},
                              {"a", "ab"},
                              {"a", "ac"},
                              {"b", "ab"},
                              {"b", "bc"},
                              {"c", "ac"},
                              {"c", "bc"},
                              {"ab", "abc"},
                              {"ac", "abc"},
                              {"bc", "abc"}});
}

inline latt::FiniteLattice chain(int k) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 0; i < k; ++i) labels.push_back("c" + std::to_string(i));
  for (int i = 0; i + 1 < k; ++i) covers.emplace_back(labels[i], labels[i + 1]);
  return latt::build_lattice(labels, covers);
}

}  // namespace fixtures

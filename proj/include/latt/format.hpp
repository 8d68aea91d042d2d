#pragma once

// Line-oriented lattice text format:
//
//   # comment
//   elements: a b c ...
//   cover: x y            (one line per cover pair, x covered by y)
//   fork: t=T zl=A,B zr=C (optional annotation naming fork elements)
//
// Serialization is canonical: one elements line with labels sorted,
// cover lines sorted lexicographically, the fork line (if any) last.

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "latt/lattice.hpp"

namespace latt {

struct ForkAnnotation {
  std::string t;
  std::vector<std::string> zl, zr;

  friend bool operator==(const ForkAnnotation&, const ForkAnnotation&) = default;
};

struct ParsedLattice {
  FiniteLattice lattice;
  std::optional<ForkAnnotation> fork;
};

namespace detail {

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::vector<std::string> split_commas(std::string_view s) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t c = s.find(',', start);
    if (c == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, c - start));
    start = c + 1;
  }
}

inline Error parse_fail(int line, const std::string& msg) {
  return Error(errc::parse_error, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace detail

inline ParsedLattice parse_lattice(std::string_view text) {
  std::vector<std::string> labels;
  std::vector<char> known;  // parallel presence check against a sorted copy
  std::vector<std::string> sorted_labels;
  std::vector<std::pair<std::string, std::string>> covers;
  std::optional<ForkAnnotation> fork;

  auto label_known = [&](const std::string& s) {
    return std::binary_search(sorted_labels.begin(), sorted_labels.end(), s);
  };

  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;

    if (size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = detail::split_ws(line);
    if (tokens.empty()) continue;

    const std::string& head = tokens[0];
    if (head == "elements:") {
      if (tokens.size() < 2) throw detail::parse_fail(lineno, "elements line lists no labels");
      labels.insert(labels.end(), tokens.begin() + 1, tokens.end());
      sorted_labels = labels;
      std::sort(sorted_labels.begin(), sorted_labels.end());
    } else if (head == "cover:") {
      if (tokens.size() != 3) throw detail::parse_fail(lineno, "cover line needs exactly two labels");
      if (labels.empty()) throw detail::parse_fail(lineno, "cover line before any elements line");
      for (int k = 1; k <= 2; ++k)
        if (!label_known(tokens[k]))
          throw detail::parse_fail(lineno, "unknown element '" + tokens[k] + "' in cover line");
      covers.emplace_back(tokens[1], tokens[2]);
    } else if (head == "fork:") {
      ForkAnnotation ann;
      for (size_t k = 1; k < tokens.size(); ++k) {
        size_t eq = tokens[k].find('=');
        if (eq == std::string::npos)
          throw detail::parse_fail(lineno, "fork annotation entries have the form key=value");
        std::string key = tokens[k].substr(0, eq);
        std::string value = tokens[k].substr(eq + 1);
        if (key == "t")
          ann.t = value;
        else if (key == "zl")
          ann.zl = detail::split_commas(value);
        else if (key == "zr")
          ann.zr = detail::split_commas(value);
        else
          throw detail::parse_fail(lineno, "unknown fork annotation key '" + key + "'");
      }
      if (ann.t.empty() || ann.zl.empty() || ann.zr.empty())
        throw detail::parse_fail(lineno, "fork annotation needs t, zl and zr");
      fork = std::move(ann);
    } else {
      throw detail::parse_fail(lineno, "unknown directive '" + head + "'");
    }
  }

  if (labels.empty()) throw Error(errc::parse_error, "no elements line found");
  return ParsedLattice{FiniteLattice::from_covers(std::move(labels), covers), std::move(fork)};
}

inline std::string serialize(const FiniteLattice& L) {
  std::vector<std::string> labels = L.labels();
  std::sort(labels.begin(), labels.end());
  std::vector<std::pair<std::string, std::string>> covers;
  covers.reserve(L.cover_pairs().size());
  for (auto [a, b] : L.cover_pairs()) covers.emplace_back(L.label(a), L.label(b));
  std::sort(covers.begin(), covers.end());

  std::ostringstream out;
  out << "elements:";
  for (const auto& s : labels) out << ' ' << s;
  out << '\n';
  for (const auto& [a, b] : covers) out << "cover: " << a << ' ' << b << '\n';
  return out.str();
}

inline std::string serialize(const FiniteLattice& L, const ForkAnnotation& fork) {
  std::string out = serialize(L);
  out += "fork: t=" + fork.t + " zl=";
  for (size_t k = 0; k < fork.zl.size(); ++k) out += (k ? "," : "") + fork.zl[k];
  out += " zr=";
  for (size_t k = 0; k < fork.zr.size(); ++k) out += (k ? "," : "") + fork.zr[k];
  out += '\n';
  return out;
}

}  // namespace latt

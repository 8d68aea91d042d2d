// Command line front end: validate lattice files, insert forks, list
// congruences, verify the congruence extension property, generate test
// corpora, and export Graphviz diagrams.
//
// Exit status: 0 on success or a fully verified report, 1 when cep finds
// a counterexample, 2 on usage or input errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latt/congruence.hpp"
#include "latt/corpus.hpp"
#include "latt/dot.hpp"
#include "latt/extension.hpp"
#include "latt/fork.hpp"
#include "latt/format.hpp"
#include "latt/lattice.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw latt::Error(latt::errc::invalid_argument, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw latt::Error(latt::errc::invalid_argument, "cannot write '" + path + "'");
  out << text;
}

latt::ParsedLattice load(const std::string& path) { return latt::parse_lattice(read_file(path)); }

latt::CoveringSquare parse_square(const latt::FiniteLattice& L, const std::string& flag) {
  auto parts = latt::detail::split_commas(flag);
  if (parts.size() != 4)
    throw latt::Error(latt::errc::invalid_argument, "--square needs four labels o,al,ar,i");
  latt::CoveringSquare s{L.id_of(parts[0]), L.id_of(parts[1]), L.id_of(parts[2]), L.id_of(parts[3])};
  if (!latt::is_covering_square(L, s))
    throw latt::Error(latt::errc::not_a_covering_square,
                      "'" + flag + "' is not a covering square of the lattice");
  return s;
}

std::string blocks_text(const latt::FiniteLattice& L, const latt::Partition& p) {
  std::vector<std::vector<std::string>> blocks;
  for (const auto& b : p.blocks()) {
    std::vector<std::string> names;
    for (latt::ElementId x : b) names.push_back(L.label(x));
    std::sort(names.begin(), names.end());
    blocks.push_back(std::move(names));
  }
  std::sort(blocks.begin(), blocks.end());
  std::string out;
  for (const auto& b : blocks) {
    out += '{';
    for (size_t k = 0; k < b.size(); ++k) {
      if (k) out += ',';
      out += b[k];
    }
    out += '}';
  }
  return out;
}

json blocks_json(const latt::FiniteLattice& L, const latt::Partition& p) {
  std::vector<std::vector<std::string>> blocks;
  for (const auto& b : p.blocks()) {
    std::vector<std::string> names;
    for (latt::ElementId x : b) names.push_back(L.label(x));
    std::sort(names.begin(), names.end());
    blocks.push_back(std::move(names));
  }
  std::sort(blocks.begin(), blocks.end());
  return json(blocks);
}

int cmd_validate(const std::string& file, bool as_json) {
  latt::FiniteLattice L = load(file).lattice;
  bool semi = latt::is_semimodular(L);
  bool slim = latt::is_slim(L);
  bool planar = latt::is_planar(L);
  bool sps = semi && slim && planar;
  if (as_json) {
    json j{{"ok", true},       {"elements", L.size()}, {"semimodular", semi},
           {"slim", slim},     {"planar", planar},     {"sps", sps}};
    std::cout << j.dump() << "\n";
  } else {
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::cout << "lattice: ok; elements: " << L.size() << "; semimodular: " << yn(semi)
              << "; slim: " << yn(slim) << "; planar: " << yn(planar) << "; SPS: " << yn(sps)
              << "\n";
  }
  return 0;
}

int cmd_fork(const std::string& file, const std::string& square_flag, const std::string& out_path) {
  latt::FiniteLattice L = load(file).lattice;
  latt::CoveringSquare S = parse_square(L, square_flag);
  latt::ForkExtension F = latt::insert_fork(L, S);

  latt::ForkAnnotation ann;
  ann.t = F.extended.label(F.labels.t);
  for (latt::ElementId z : F.labels.z_left) ann.zl.push_back(F.extended.label(z));
  for (latt::ElementId z : F.labels.z_right) ann.zr.push_back(F.extended.label(z));
  write_file(out_path, latt::serialize(F.extended, ann));

  std::cout << "elements: " << L.size() << " -> " << F.extended.size()
            << "; n=" << F.labels.z_left.size() << "; m=" << F.labels.z_right.size();
  std::cout << "; t=" << ann.t << "; zl=";
  for (size_t k = 0; k < ann.zl.size(); ++k) std::cout << (k ? "," : "") << ann.zl[k];
  std::cout << "; zr=";
  for (size_t k = 0; k < ann.zr.size(); ++k) std::cout << (k ? "," : "") << ann.zr[k];
  std::cout << "\n";
  return 0;
}

int cmd_congruences(const std::string& file, bool as_json) {
  latt::FiniteLattice L = load(file).lattice;
  std::vector<latt::Congruence> con = latt::all_congruences(L);
  if (as_json) {
    json j{{"count", con.size()}};
    j["congruences"] = json::array();
    for (const auto& c : con) j["congruences"].push_back(blocks_json(L, c));
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "congruences: " << con.size() << "\n";
    for (const auto& c : con) std::cout << blocks_text(L, c) << "\n";
  }
  return 0;
}

int cmd_cep(const std::string& file, const std::string& square_flag, bool as_json) {
  latt::FiniteLattice L = load(file).lattice;
  latt::CoveringSquare S = parse_square(L, square_flag);
  latt::ForkExtension F = latt::insert_fork(L, S);
  latt::CepReport report = latt::cep_verify(F);

  if (as_json) {
    json j{{"ok", report.ok},
           {"square", {L.label(S.o), L.label(S.al), L.label(S.ar), L.label(S.i)}},
           {"congruences", report.records.size()}};
    j["records"] = json::array();
    for (const auto& rec : report.records) {
      json r{{"alpha_blocks", blocks_json(L, rec.alpha)},
             {"case", latt::to_string(rec.tag)},
             {"oracle_equal", rec.oracle_equal},
             {"restriction_ok", rec.restriction_ok}};
      r["extension_blocks"] = rec.extension ? blocks_json(F.extended, *rec.extension) : json();
      r["extension_count"] = rec.extension_count ? json(*rec.extension_count) : json();
      j["records"].push_back(std::move(r));
    }
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "lattice: " << L.size() << " elements; square: " << L.label(S.o) << ","
              << L.label(S.al) << "," << L.label(S.ar) << "," << L.label(S.i)
              << "; extension: " << F.extended.size() << " elements\n";
    std::cout << "congruences: " << report.records.size() << "\n";
    for (const auto& rec : report.records) {
      std::cout << "alpha=" << blocks_text(L, rec.alpha) << " case=" << latt::to_string(rec.tag);
      if (rec.extension_count) std::cout << " extensions=" << *rec.extension_count;
      if (rec.pass()) {
        std::cout << " ok\n";
      } else {
        std::cout << " FAIL";
        if (!rec.failure.empty()) std::cout << " (" << rec.failure << ")";
        if (!rec.congruence_ok) std::cout << " [not a congruence]";
        if (!rec.restriction_ok) std::cout << " [restriction differs]";
        if (!rec.oracle_equal) std::cout << " [oracle mismatch]";
        if (!rec.uniqueness_ok) std::cout << " [uniqueness/minimality]";
        std::cout << "\n";
      }
    }
    std::cout << "verified: " << report.records.size() << " congruences, "
              << report.counterexamples << " counterexamples\n";
  }
  return report.ok ? 0 : 1;
}

int cmd_corpus(const std::string& grid_flag, int steps, uint64_t seed, int size_cap,
               const std::string& out_dir) {
  auto parts = latt::detail::split_commas(grid_flag);
  if (parts.size() != 2)
    throw latt::Error(latt::errc::invalid_argument, "--grid needs two sizes p,q");
  latt::CorpusSpec spec{std::stoi(parts[0]), std::stoi(parts[1]), steps, seed, size_cap};
  latt::CorpusRun run = latt::random_sps(spec);

  std::filesystem::create_directories(out_dir);
  auto file_name = [](int k) {
    std::string s = std::to_string(k);
    return std::string(3 - std::min<size_t>(3, s.size()), '0') + s + ".lat";
  };
  latt::FiniteLattice base = latt::grid(spec.p, spec.q);
  write_file(out_dir + "/" + file_name(0), latt::serialize(base));

  std::ostringstream manifest;
  manifest << "grid: " << spec.p << " " << spec.q << "\n";
  manifest << "seed: " << spec.seed << "\n";
  manifest << "steps: " << run.steps.size() << "\n";
  manifest << "size_cap: " << spec.size_cap << "\n";
  manifest << "base: " << file_name(0) << " elements: " << base.size() << "\n";
  for (size_t k = 0; k < run.steps.size(); ++k) {
    const latt::ForkExtension& F = run.steps[k];
    const latt::FiniteLattice& L = F.base;
    write_file(out_dir + "/" + file_name(int(k) + 1), latt::serialize(F.extended));
    manifest << "step " << k + 1 << ": square " << L.label(F.square.o) << "," << L.label(F.square.al)
             << "," << L.label(F.square.ar) << "," << L.label(F.square.i) << " -> "
             << file_name(int(k) + 1) << " elements: " << F.extended.size() << "\n";
  }
  if (run.hit_size_cap) manifest << "stopped: size cap reached\n";
  write_file(out_dir + "/manifest.txt", manifest.str());

  std::cout << manifest.str();
  return 0;
}

int cmd_dot(const std::string& file, const std::string& out_path, int congruence_index) {
  latt::ParsedLattice parsed = load(file);
  const latt::FiniteLattice& L = parsed.lattice;
  latt::DotOptions opt;
  if (parsed.fork) {
    opt.filled.push_back(L.id_of(parsed.fork->t));
    for (const auto& s : parsed.fork->zl) opt.filled.push_back(L.id_of(s));
    for (const auto& s : parsed.fork->zr) opt.filled.push_back(L.id_of(s));
  }
  if (congruence_index >= 0) {
    std::vector<latt::Congruence> con = latt::all_congruences(L);
    if (congruence_index >= int(con.size()))
      throw latt::Error(latt::errc::invalid_argument,
                        "--congruence index out of range, lattice has " +
                            std::to_string(con.size()) + " congruences");
    opt.blocks = con[congruence_index];
  }
  std::string text = latt::export_dot(L, opt);
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite lattice toolkit: fork extensions and congruence lattices"};
  app.require_subcommand(1);

  std::string file, square, out, grid_flag;
  bool as_json = false;
  int steps = 1, size_cap = 64, congruence_index = -1;
  uint64_t seed = 1;

  CLI::App* validate = app.add_subcommand("validate", "check a lattice file and report structure");
  validate->add_option("file", file)->required();
  validate->add_flag("--json", as_json);

  CLI::App* fork = app.add_subcommand("fork", "insert a fork at a covering square");
  fork->add_option("file", file)->required();
  fork->add_option("--square", square, "o,al,ar,i by label")->required();
  fork->add_option("--out", out)->required();

  CLI::App* congruences = app.add_subcommand("congruences", "list all congruences");
  congruences->add_option("file", file)->required();
  congruences->add_flag("--json", as_json);

  CLI::App* cep = app.add_subcommand("cep", "verify the congruence extension property at a square");
  cep->add_option("file", file)->required();
  cep->add_option("--square", square, "o,al,ar,i by label")->required();
  cep->add_flag("--json", as_json);

  CLI::App* corpus = app.add_subcommand("corpus", "generate grids plus seeded fork extensions");
  corpus->add_option("--grid", grid_flag, "p,q")->required();
  corpus->add_option("--steps", steps);
  corpus->add_option("--seed", seed);
  corpus->add_option("--size-cap", size_cap);
  corpus->add_option("--out", out)->required();

  CLI::App* dot = app.add_subcommand("dot", "export a Graphviz diagram");
  dot->add_option("file", file)->required();
  dot->add_option("--out", out);
  dot->add_option("--congruence", congruence_index, "color blocks of the k-th congruence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(file, as_json);
    if (fork->parsed()) return cmd_fork(file, square, out);
    if (congruences->parsed()) return cmd_congruences(file, as_json);
    if (cep->parsed()) return cmd_cep(file, square, as_json);
    if (corpus->parsed()) return cmd_corpus(grid_flag, steps, seed, size_cap, out);
    if (dot->parsed()) return cmd_dot(file, out, congruence_index);
  } catch (const latt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

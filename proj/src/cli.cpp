#include "toplat/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <bit>
#include <chrono>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "toplat/error.hpp"
#include "toplat/json_io.hpp"

namespace toplat {
namespace {

struct Globals {
  unsigned threads = 1;
  bool timing = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::pair<int, int> parse_field(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) fail(ErrorKind::InvalidArgument, "--field expects p,k");
  try {
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    fail(ErrorKind::InvalidArgument, "--field expects p,k");
  }
}

std::shared_ptr<const VectorSpace> make_space(const std::string& field, int dim) {
  const auto [p, k] = parse_field(field);
  return std::make_shared<const VectorSpace>(FiniteField::make(p, k), dim);
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidArgument, "not an integer list: " + text);
    }
  }
  return out;
}

// number of opens: 2^classes for partition topologies, subset scan up to 20 points
std::uint64_t open_count(const NbhdTopology& t) {
  const int n = t.ground_size();
  bool symmetric = true;
  for (int x = 0; x < n && symmetric; ++x) {
    for (WideMask rest = t.hull(x); rest != 0; rest &= rest - 1) {
      if (((t.hull(std::countr_zero(rest)) >> x) & 1u) == 0) symmetric = false;
    }
  }
  if (symmetric) {
    std::vector<WideMask> classes;
    for (int x = 0; x < n; ++x) {
      if (std::find(classes.begin(), classes.end(), t.hull(x)) == classes.end()) classes.push_back(t.hull(x));
    }
    if (classes.size() >= 64) fail(ErrorKind::SizeExceeded, "open count overflows");
    return std::uint64_t{1} << classes.size();
  }
  if (n > 20) fail(ErrorKind::SizeExceeded, "open count needs at most 20 points for this topology");
  std::uint64_t count = 0;
  for (WideMask s = 0; s <= wide_full_mask(n); ++s) count += t.is_open(s) ? 1 : 0;
  return count;
}

std::vector<NbhdTopology> read_topology_list(const std::string& text) {
  std::vector<NbhdTopology> out;
  auto take = [&](const Json& j) {
    if (j.is_object() && j.contains("topology")) {
      out.push_back(nbhd_topology_from_json(j["topology"]));
    } else {
      out.push_back(nbhd_topology_from_json(j));
    }
  };
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    for (const auto& j : parse_json(text)) take(j);
    return out;
  }
  if (first != std::string::npos && text[first] == '{') {
    // either one JSON document with a "topologies" list, or JSON lines
    try {
      const Json doc = Json::parse(text);
      if (doc.contains("topologies")) {
        for (const auto& j : doc["topologies"]) take(j);
      } else {
        take(doc);
      }
      return out;
    } catch (const nlohmann::json::parse_error&) {
    }
  }
  std::stringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    take(parse_json(line));
  }
  return out;
}

std::string hasse_dot(const std::vector<NbhdTopology>& elems) {
  constexpr std::size_t kMaxDot = 4096;
  const std::size_t m = elems.size();
  if (m > kMaxDot) fail(ErrorKind::SizeExceeded, "DOT export handles at most 4096 elements");
  for (const auto& e : elems) {
    if (e.ground_size() != elems.front().ground_size()) fail(ErrorKind::GroundMismatch, "topologies on different ground sets");
  }
  const std::size_t words = (m + 63) / 64;
  std::vector<std::uint64_t> above(m * words, 0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a != b && elems[a].is_coarser_than(elems[b]) && !(elems[a] == elems[b])) above[a * words + b / 64] |= std::uint64_t{1} << (b % 64);
    }
  }
  std::ostringstream dot;
  dot << "digraph hasse {\n  rankdir=BT;\n";
  for (std::size_t a = 0; a < m; ++a) dot << "  t" << a << " [label=\"" << open_count(elems[a]) << "\"];\n";
  for (std::size_t a = 0; a < m; ++a) {
    std::vector<std::uint64_t> indirect(words, 0);
    for (std::size_t c = 0; c < m; ++c) {
      if ((above[a * words + c / 64] >> (c % 64)) & 1u) {
        for (std::size_t w = 0; w < words; ++w) indirect[w] |= above[c * words + w];
      }
    }
    for (std::size_t b = 0; b < m; ++b) {
      const bool up = (above[a * words + b / 64] >> (b % 64)) & 1u;
      const bool skip = (indirect[b / 64] >> (b % 64)) & 1u;
      if (up && !skip) dot << "  t" << a << " -> t" << b << ";\n";
    }
  }
  dot << "}\n";
  return dot.str();
}

struct Outcome {
  Json report;
  bool pass = true;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite lattices of topologies and vector topologies: enumeration and verification"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1u, 256u));
  app.add_flag("--timing", g.timing, "add wall time to reports");

  std::function<Outcome()> action;
  bool raw_output = false;

  int n = 0;
  bool allow_seven = false;
  auto* count_top = app.add_subcommand("count-top", "count topologies on n points");
  count_top->add_option("--n", n, "ground size")->required();
  count_top->add_flag("--allow-seven", allow_seven, "permit n = 7");
  count_top->callback([&] {
    action = [&] {
      EnumerationOptions opt{allow_seven, g.threads};
      const auto count = count_topologies(n, opt);  // outside the braced list: GCC 11 leaks on throw there
      return Outcome{Json{{"command", "count-top"}, {"n", n}, {"count", count}}};
    };
  });

  std::string out_path = "-";
  auto* enum_top = app.add_subcommand("enum-top", "list topologies on n points as JSON lines");
  enum_top->add_option("--n", n, "ground size")->required();
  enum_top->add_option("--out", out_path, "output file, - for stdout");
  enum_top->add_flag("--allow-seven", allow_seven, "permit n = 7");
  enum_top->callback([&] {
    action = [&] {
      EnumerationOptions opt{allow_seven, 1};
      std::ofstream file;
      const bool to_stdout = out_path == "-";
      if (!to_stdout) {
        file.open(out_path);
        if (!file) fail(ErrorKind::InvalidArgument, "cannot write " + out_path);
      }
      std::ostream& sink = to_stdout ? out : file;
      std::uint64_t count = 0;
      for_each_topology(
          n,
          [&](const FinTopology& t) {
            sink << to_json(t).dump() << '\n';
            ++count;
          },
          opt);
      raw_output = to_stdout;
      return Outcome{Json{{"command", "enum-top"}, {"n", n}, {"count", count}, {"out", out_path}}};
    };
  });

  auto* type_table = app.add_subcommand("type-table", "realized atom types per class pair");
  type_table->add_option("--n", n, "ground size, 3..9")->required();
  type_table->callback([&] {
    action = [&] {
      const auto c = type_census(n);
      Json j{{"command", "type-table"}};
      j.update(to_json(c));
      const bool pass = c.within_allowed && c.symmetric && (c.n < 4 || c.l_atoms_have_type4_partner) &&
                        c.closed_form_matches_generic && c.closed_form_matches_lattice;
      j["pass"] = pass;
      return Outcome{j, pass};
    };
  });

  auto* aut_sigma = app.add_subcommand("aut-sigma", "automorphisms of the lattice of topologies on n points");
  aut_sigma->add_option("--n", n, "ground size, 2..4")->required();
  aut_sigma->callback([&] {
    action = [&] {
      if (n < 2) fail(ErrorKind::InvalidArgument, "aut-sigma needs n >= 2");
      const auto sigma = sigma_lattice(n);
      const auto auts = enumerate_automorphisms(*sigma.lattice);
      // S_n, doubled by the complement map once n >= 3
      std::uint64_t expected = n >= 3 ? 2 : 1;
      for (int i = 2; i <= n; ++i) expected *= static_cast<std::uint64_t>(i);
      Json j{{"command", "aut-sigma"}, {"n", n}, {"size", sigma.elements.size()}, {"automorphisms", auts.size()}, {"expected", expected}};
      bool pass = auts.size() == expected;
      if (n <= 3) {
        const auto brute = enumerate_automorphisms_brute(*sigma.lattice);
        j["brute_force"] = brute.size();
        pass = pass && brute == auts;
      }
      std::vector<ReconstructionResult> pairs;
      bool induced = true;
      for (const auto& a : auts) {
        const auto r = reconstruct_bijection(sigma, a);
        induced = induced && induced_sigma_table(sigma, r.theta, r.uses_complement) == a;
        if (std::find(pairs.begin(), pairs.end(), r) == pairs.end()) pairs.push_back(r);
      }
      j["reconstructed_distinct"] = pairs.size();
      j["all_induced"] = induced;
      pass = pass && induced && pairs.size() == auts.size();
      j["pass"] = pass;
      return Outcome{j, pass};
    };
  });

  std::string table_path;
  auto* hartmanis = app.add_subcommand("hartmanis", "recover the point bijection from an automorphism table");
  hartmanis->add_option("--table", table_path, "LatticeIsoTable JSON")->required();
  hartmanis->callback([&] {
    action = [&] {
      const auto map = lattice_table_from_json(parse_json(read_file(table_path)));
      int ground = 0;
      for (int k = 1; k <= 5 && ground == 0; ++k) {
        if (count_topologies(k) == map.size()) ground = k;
      }
      if (ground == 0) fail(ErrorKind::InvalidArgument, "table size " + std::to_string(map.size()) + " is not |Σ(n)| for n <= 5");
      const auto sigma = sigma_lattice(ground);
      return Outcome{to_json(reconstruct_bijection(sigma, map))};
    };
  });

  std::string field = "2,1";
  int dim = 2;
  std::string mode = "image";
  auto* vt_census = app.add_subcommand("vt-census", "vector topologies of F^d");
  vt_census->add_option("--field", field, "p,k")->required();
  vt_census->add_option("--dim", dim, "dimension")->required();
  vt_census->add_option("--mode", mode, "census, image or translates")
      ->check(CLI::IsMember({"census", "image", "translates"}));
  vt_census->callback([&] {
    action = [&] {
      const auto space = make_space(field, dim);
      const CensusMode m = mode == "census" ? CensusMode::Census : mode == "image" ? CensusMode::Image : CensusMode::Translates;
      const auto list = enumerate_vector_topologies(*space, m, g.threads);
      const auto image = enumerate_vector_topologies(*space, CensusMode::Image);
      Json tops = Json::array();
      for (const auto& t : list) tops.push_back(to_json(t));
      const bool matches = list == image;
      return Outcome{Json{{"command", "vt-census"},
                          {"space", space_to_json(*space)},
                          {"mode", mode},
                          {"count", list.size()},
                          {"subspaces", enumerate_subspaces(*space).size()},
                          {"matches_image", matches},
                          {"topologies", tops},
                          {"pass", matches}},
                     matches};
    };
  });

  auto* galois = app.add_subcommand("galois-verify", "check the subspace / vector-topology connection");
  galois->add_option("--field", field, "p,k")->required();
  galois->add_option("--dim", dim, "dimension")->required();
  galois->callback([&] {
    action = [&] {
      const auto space = make_space(field, dim);
      const auto r = verify_galois(*space, g.threads);
      Json j{{"command", "galois-verify"}, {"space", space_to_json(*space)}};
      j.update(to_json(r));
      return Outcome{j, r.pass()};
    };
  });

  auto* theorem_b = app.add_subcommand("theorem-b", "τ-preserving bijection census and group structure");
  theorem_b->add_option("--field", field, "p,k")->required();
  theorem_b->add_option("--dim", dim, "dimension")->required();
  theorem_b->callback([&] {
    action = [&] {
      const auto space = make_space(field, dim);
      const auto r = theorem_b_group(*space, g.threads);
      Json j{{"command", "theorem-b"}, {"space", space_to_json(*space)}};
      j.update(to_json(r));
      return Outcome{j, r.pass()};
    };
  });

  std::uint64_t seed = 0;
  int trials = 100;
  auto* theorem_a = app.add_subcommand("theorem-a-e2e", "random round trips through the lattice of topologies on F_2^2");
  theorem_a->add_option("--seed", seed, "random seed")->required();
  theorem_a->add_option("--trials", trials, "number of draws")->check(CLI::Range(0, 1'000'000));
  theorem_a->callback([&] {
    action = [&] {
      const auto r = end_to_end_theorem_a(seed, trials);
      Json j{{"command", "theorem-a-e2e"}, {"space", Json{{"p", 2}, {"k", 1}, {"dim", 2}}}};
      j.update(to_json(r));
      return Outcome{j, r.pass()};
    };
  });

  auto* ftpg = app.add_subcommand("ftpg", "coordinatize a subspace-lattice isomorphism");
  ftpg->add_option("--table", table_path, "SubspaceIsoTable JSON")->required();
  ftpg->callback([&] {
    action = [&] {
      const auto table = subspace_table_from_json(parse_json(read_file(table_path)));
      const auto r = ftpg_reconstruct(table);
      Json j{{"command", "ftpg"}, {"space", space_to_json(*table.source)}};
      j.update(to_json(r));
      j["reproduces"] = true;
      j["pass"] = true;
      return Outcome{j};
    };
  });

  bool skip_hausdorff = false;
  auto* theorem_c = app.add_subcommand("theorem-c", "recover field and dimension from a vector-topology lattice isomorphism");
  theorem_c->add_option("--table", table_path, "τ table JSON")->required();
  theorem_c->add_flag("--skip-hausdorff-check", skip_hausdorff, "do not require Φ(discrete) = discrete");
  theorem_c->callback([&] {
    action = [&] {
      const auto table = tau_table_from_json(parse_json(read_file(table_path)));
      const auto r = theorem_c_pipeline(table, !skip_hausdorff);
      Json j{{"command", "theorem-c"}, {"source", space_to_json(*table.source)}, {"target", space_to_json(*table.target)}};
      j.update(to_json(r));
      return Outcome{j, r.pass()};
    };
  });

  std::string input_path;
  auto* export_dot = app.add_subcommand("export-dot", "Hasse diagram of a topology list in DOT");
  export_dot->add_option("--input", input_path, "JSON lines, JSON list, or a vt-census report")->required();
  export_dot->callback([&] {
    action = [&] {
      out << hasse_dot(read_topology_list(read_file(input_path)));
      raw_output = true;
      return Outcome{};
    };
  });

  std::string kind = "sigma", theta_text, matrix_text, shift_text;
  int psi = 0;
  bool complement = false;
  auto* make_table = app.add_subcommand("make-table", "write the table induced by a bijection or semilinear map");
  make_table->add_option("--kind", kind, "sigma, subspace or tau")->check(CLI::IsMember({"sigma", "subspace", "tau"}));
  make_table->add_option("--n", n, "ground size (sigma)");
  make_table->add_option("--theta", theta_text, "point images, comma separated (sigma)");
  make_table->add_option("--field", field, "p,k (subspace, tau)");
  make_table->add_option("--dim", dim, "dimension (subspace, tau)");
  make_table->add_option("--matrix", matrix_text, "JSON rows, default identity");
  make_table->add_option("--psi", psi, "Frobenius exponent");
  make_table->add_option("--shift", shift_text, "translation vector, comma separated (tau)");
  make_table->add_flag("--complement", complement, "compose with the complement map (sigma, tau)");
  make_table->callback([&] {
    action = [&] {
      if (kind == "sigma") {
        const auto sigma = sigma_lattice(n);
        std::vector<int> image = parse_ints(theta_text);
        if (theta_text.empty()) {
          image.resize(static_cast<std::size_t>(n));
          std::iota(image.begin(), image.end(), 0);
        }
        return Outcome{lattice_table_to_json(induced_sigma_table(sigma, Bijection(image), complement))};
      }
      const auto space = make_space(field, dim);
      const Matrix m = matrix_text.empty() ? Matrix::identity(dim) : matrix_from_json(parse_json(matrix_text));
      const auto lin = make_semilinear(*space, FieldAut{psi}, m);
      if (kind == "subspace") return Outcome{to_json(induced_subspace_iso(space, lin))};
      Vec shift = shift_text.empty() ? Vec(static_cast<std::size_t>(dim), 0) : parse_ints(shift_text);
      return Outcome{to_json(induced_tau_table(space, make_affine(*space, lin, shift), complement))};
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  try {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = action();
    if (!raw_output) {
      if (g.timing) {
        o.report["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      }
      out << o.report.dump(2) << '\n';
    }
    return o.pass ? 0 : 1;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return is_violation(e.kind()) ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace toplat

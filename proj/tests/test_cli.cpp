#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "toplat/cli.hpp"
#include "toplat/error.hpp"
#include "toplat/json_io.hpp"

using namespace toplat;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("toplat_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("json round trips are exact") {
    const auto t = validate_topology(3, std::vector<Mask>{0, 1, 3, 7});
    CHECK(topology_from_json(to_json(t)) == t);
    CHECK(topology_from_json(parse_json(to_json(t).dump())) == t);
    const auto h = NbhdTopology::discrete(16);
    CHECK(to_json(h).contains("hulls"));
    CHECK(nbhd_topology_from_json(to_json(h)) == h);
    const std::vector<std::size_t> map{0, 2, 1, 3};
    CHECK(lattice_table_from_json(lattice_table_to_json(map)) == map);

    const auto v = std::make_shared<const VectorSpace>(FiniteField::make(2, 2), 3);
    Matrix m = Matrix::identity(3);
    m.at(0, 1) = 2;
    const auto lin = make_semilinear(*v, FieldAut{1}, m);
    const auto sub = induced_subspace_iso(v, lin);
    const auto sub_json = to_json(sub).dump();
    CHECK(to_json(subspace_table_from_json(parse_json(sub_json))).dump() == sub_json);
    const auto tau = induced_tau_table(v, make_affine(*v, lin, Vec{1, 0, 3}), true);
    const auto tau_json = to_json(tau).dump();
    CHECK(to_json(tau_table_from_json(parse_json(tau_json))).dump() == tau_json);
    CHECK(matrix_from_json(to_json(m)) == m);
  }

  TEST_CASE("malformed json") {
    auto kind = [](const std::function<void()>& f) {
      try {
        f();
      } catch (const Error& e) {
        return e.kind();
      }
      return ErrorKind::InvalidArgument;
    };
    CHECK(kind([] { parse_json("{\"n\": 3,"); }) == ErrorKind::ParseError);
    CHECK(kind([] { topology_from_json(parse_json("{\"opens\": [0, 7]}")); }) == ErrorKind::ParseError);
    CHECK(kind([] { lattice_table_from_json(parse_json("{\"size\": 3, \"map\": [0, 1]}")); }) == ErrorKind::ParseError);
    CHECK(kind([] { topology_from_json(parse_json("{\"n\": 3, \"opens\": [0, 1, 2, 7]}")); }) == ErrorKind::NotClosedUnderUnion);
  }

  TEST_CASE("count-top") {
    const auto r = run({"count-top", "--n", "4"});
    CHECK(r.code == 0);
    CHECK(parse_json(r.out)["count"] == 355);
    CHECK(run({"count-top", "--n", "9"}).code == 2);
    CHECK(run({"count-top", "--n", "7"}).code == 2);
    CHECK(run({"--threads", "2", "count-top", "--n", "5"}).out == run({"count-top", "--n", "5"}).out);
  }

  TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({"theorem-a-e2e"}).code == 2);
    CHECK(run({"vt-census", "--field", "7,1", "--dim", "2"}).code == 2);
    CHECK(run({"vt-census", "--field", "2", "--dim", "2"}).code == 2);
    CHECK(run({"theorem-b", "--field", "2,1", "--dim", "1"}).code == 2);
    CHECK(run({"hartmanis", "--table", "/nonexistent/table.json"}).code == 2);
    const auto bad = temp_file("bad_table.json", R"({"size": 29, "map": [)" + std::string([] {
                                                   std::string s;
                                                   for (int i = 0; i < 29; ++i) s += (i ? ",0" : "0");
                                                   return s;
                                                 }()) + "]}");
    CHECK(run({"hartmanis", "--table", bad}).code == 2);
  }

  TEST_CASE("enum-top writes JSON lines") {
    const auto r = run({"enum-top", "--n", "3"});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
      topology_from_json(parse_json(line));
      ++count;
    }
    CHECK(count == 29);
  }

  TEST_CASE("table pipeline through files") {
    const auto made = run({"make-table", "--kind", "sigma", "--n", "4", "--theta", "3,0,1,2", "--complement"});
    REQUIRE(made.code == 0);
    const auto path = temp_file("sigma4.json", made.out);
    const auto r = run({"hartmanis", "--table", path});
    CHECK(r.code == 0);
    const auto j = parse_json(r.out);
    CHECK(j["theta"] == Json::array({3, 0, 1, 2}));
    CHECK(j["uses_complement"] == true);

    const auto sub = run({"make-table", "--kind", "subspace", "--field", "2,2", "--dim", "3", "--psi", "1"});
    REQUIRE(sub.code == 0);
    const auto f = run({"ftpg", "--table", temp_file("sub.json", sub.out)});
    CHECK(f.code == 0);
    CHECK(parse_json(f.out)["psi"] == 1);

    const auto tau = run({"make-table", "--kind", "tau", "--field", "2,1", "--dim", "3", "--shift", "1,1,0",
                          "--matrix", "[[1,1,0],[0,1,0],[0,0,1]]"});
    REQUIRE(tau.code == 0);
    const auto c = run({"theorem-c", "--table", temp_file("tau.json", tau.out)});
    CHECK(c.code == 0);
    CHECK(parse_json(c.out)["pass"] == true);

    const auto dot = run({"export-dot", "--input", temp_file("tops.jsonl", run({"enum-top", "--n", "2"}).out)});
    CHECK(dot.code == 0);
    CHECK(dot.out.rfind("digraph", 0) == 0);
  }

  TEST_CASE("reports are deterministic") {
    const std::vector<std::string> a{"theorem-a-e2e", "--seed", "42", "--trials", "30"};
    const auto first = run(a);
    CHECK(first.code == 0);
    CHECK(first.out == run(a).out);
    const std::vector<std::string> g{"galois-verify", "--field", "3,1", "--dim", "2"};
    CHECK(run(g).out == run(g).out);
    CHECK(run({"aut-sigma", "--n", "3"}).code == 0);
    CHECK(run({"type-table", "--n", "4"}).code == 0);
  }

  TEST_CASE("theorem-b on F_3^2") {
    const auto r = run({"theorem-b", "--field", "3,1", "--dim", "2"});
    CHECK(r.code == 0);
    const auto j = parse_json(r.out);
    CHECK(j["census"] == 432);
    CHECK(j["group_order"] == 864);
  }

  TEST_CASE("vt-census modes") {
    const auto r = run({"vt-census", "--field", "2,1", "--dim", "2", "--mode", "census"});
    CHECK(r.code == 0);
    CHECK(parse_json(r.out)["count"] == 5);
    const auto t = run({"vt-census", "--field", "3,1", "--dim", "2", "--mode", "translates"});
    CHECK(parse_json(t.out)["count"] == 6);
    CHECK(run({"vt-census", "--field", "3,1", "--dim", "2", "--mode", "census"}).code == 2);
  }
}

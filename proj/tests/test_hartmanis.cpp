#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "toplat/error.hpp"
#include "toplat/hartmanis.hpp"

using namespace toplat;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

void round_trip_all(int n) {
  const auto s = sigma_lattice(n);
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  do {
    for (bool c : {false, true}) {
      const Bijection theta(p);
      const auto r = reconstruct_bijection(s, induced_sigma_table(s, theta, c));
      CHECK(r.theta == theta);
      CHECK(r.uses_complement == c);
    }
  } while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace

TEST_SUITE("hartmanis") {
  TEST_CASE("examples on Σ(3) and Σ(4)") {
    const auto s4 = sigma_lattice(4);
    const Bijection theta(std::vector<int>{2, 0, 3, 1});
    CHECK(reconstruct_bijection(s4, induced_sigma_table(s4, theta, false)) == ReconstructionResult{theta, false});
    CHECK(reconstruct_bijection(s4, induced_sigma_table(s4, theta, true)) == ReconstructionResult{theta, true});
    const auto s3 = sigma_lattice(3);
    std::vector<std::size_t> id(s3.elements.size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
    CHECK(reconstruct_bijection(s3, id) == ReconstructionResult{Bijection::identity(3), false});
  }

  TEST_CASE("round trip over all bijections and flags, n = 3 and 4") {
    round_trip_all(3);
    round_trip_all(4);
  }

  TEST_CASE("n = 2 uses the atom matching directly") {
    const auto s = sigma_lattice(2);
    const auto sw = Bijection::swap(2, 0, 1);
    // on two points the complement map is the swap pushforward, and the direct pass wins
    CHECK(induced_sigma_table(s, sw, false) == induced_sigma_table(s, Bijection::identity(2), true));
    CHECK(reconstruct_bijection(s, induced_sigma_table(s, sw, false)) == ReconstructionResult{sw, false});
  }

  TEST_CASE("sampled round trips on Σ(5)") {
    const auto s = sigma_lattice(5);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<int> p{0, 1, 2, 3, 4};
      std::shuffle(p.begin(), p.end(), rng);
      const bool c = trial % 2 == 1;
      const Bijection theta(p);
      CHECK(reconstruct_bijection(s, induced_sigma_table(s, theta, c)) == ReconstructionResult{theta, c});
    }
  }

  TEST_CASE("automorphisms of Σ(3) reconstruct to 12 distinct pairs") {
    const auto s = sigma_lattice(3);
    std::set<std::pair<std::vector<int>, bool>> seen;
    for (const auto& a : enumerate_automorphisms_brute(*s.lattice)) {
      const auto r = reconstruct_bijection(s, a);
      seen.emplace(std::vector<int>(r.theta.image().begin(), r.theta.image().end()), r.uses_complement);
    }
    CHECK(seen.size() == 12);
  }

  TEST_CASE("oracle adapter") {
    const auto s = sigma_lattice(4);
    const Bijection theta(std::vector<int>{1, 2, 3, 0});
    const auto table = table_from_oracle(s, [&](const FinTopology& t) { return complement_map(pushforward(theta, t)); });
    CHECK(table == induced_sigma_table(s, theta, true));
    CHECK(reconstruct_bijection(s, table) == ReconstructionResult{theta, true});
  }

  TEST_CASE("rejections") {
    const auto s1 = sigma_lattice(1);
    CHECK(kind_of([&] { reconstruct_bijection(s1, std::vector<std::size_t>{0}); }) == ErrorKind::InvalidArgument);
    const auto s3 = sigma_lattice(3);
    std::vector<std::size_t> bad(s3.elements.size(), 0);
    CHECK(kind_of([&] { reconstruct_bijection(s3, bad); }) == ErrorKind::NotALatticeIso);
    std::vector<std::size_t> short_table{0, 1};
    CHECK(kind_of([&] { reconstruct_bijection(s3, short_table); }) == ErrorKind::NotALatticeIso);
  }
}

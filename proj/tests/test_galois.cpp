#include <doctest.h>

#include <algorithm>
#include <set>

#include "toplat/error.hpp"
#include "toplat/galois.hpp"

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

VectorSpace space(int p, int k, int d) { return VectorSpace(FiniteField::make(p, k), d); }

}  // namespace

TEST_SUITE("galois") {
  TEST_CASE("frak_t and frak_s examples on F_2^2") {
    const auto v = space(2, 1, 2);
    const auto line = Subspace::span(v.field(), 2, std::vector<Vec>{{1, 0}});
    const auto t = frak_t(v, line);
    const auto fin = t.to_fin();
    const auto opens = fin.opens();
    CHECK(std::vector<Mask>(opens.begin(), opens.end()) == std::vector<Mask>{0, 3, 12, 15});
    CHECK(frak_s(v, t) == line);
    CHECK(frak_t(v, Subspace::zero(2)) == t_max(v));
    CHECK(frak_t(v, Subspace::full(v.field(), 2)) == NbhdTopology::indiscrete(4));
    CHECK(frak_s(v, t_max(v)) == Subspace::zero(2));
    CHECK(frak_s(v, FinTopology::indiscrete(4)) == Subspace::full(v.field(), 2));
  }

  TEST_CASE("atoms are not vector topologies") {
    const auto v = space(2, 1, 2);
    const auto a = atom(Mask{1}, 4);  // A({0})
    CHECK_FALSE(is_vector_topology(v, NbhdTopology::from(a)));
    CHECK_FALSE(is_vector_topology_literal(v, a));
    // the hull of 0 is {0}, yet the other hulls are not cosets of it
    CHECK(frak_s(v, a) == Subspace::zero(2));
    CHECK(kind_of([&] { frak_s(v, atom(Mask{0b1101}, 4)); }) == ErrorKind::NotASubspace);
  }

  TEST_CASE("neighbourhood and literal continuity agree on every topology") {
    for (auto [p, k, d] : {std::array{2, 1, 1}, std::array{3, 1, 1}, std::array{2, 1, 2}, std::array{5, 1, 1},
                           std::array{2, 2, 1}}) {
      const auto v = space(p, k, d);
      std::size_t count = 0;
      for_each_topology(v.size(), [&](const FinTopology& t) {
        const bool fast = is_vector_topology(v, NbhdTopology::from(t));
        CHECK(fast == is_vector_topology_literal(v, t));
        count += fast;
      });
      CHECK(count == enumerate_subspaces(v).size());
    }
  }

  TEST_CASE("census modes") {
    const auto f21 = space(2, 1, 1), f22 = space(2, 1, 2), f32 = space(3, 1, 2), f23 = space(2, 1, 3);
    CHECK(enumerate_vector_topologies(f21, CensusMode::Census).size() == 2);
    CHECK(enumerate_vector_topologies(f22, CensusMode::Census).size() == 5);
    CHECK(enumerate_vector_topologies(f22, CensusMode::Census) == enumerate_vector_topologies(f22, CensusMode::Image));
    CHECK(enumerate_vector_topologies(f32, CensusMode::Image).size() == 6);
    for (const auto* v : {&f22, &f32, &f23}) {
      const auto image = enumerate_vector_topologies(*v, CensusMode::Image);
      CHECK(enumerate_vector_topologies(*v, CensusMode::Translates) == image);
      CHECK(enumerate_vector_topologies(*v, CensusMode::Translates, 2) == image);
      CHECK(std::is_sorted(image.begin(), image.end()));
      for (const auto& t : image) CHECK(is_vector_topology(*v, t));
    }
    CHECK(kind_of([&] { enumerate_vector_topologies(f32, CensusMode::Census); }) == ErrorKind::BudgetExceeded);
    CHECK(kind_of([] { enumerate_vector_topologies(space(2, 1, 5), CensusMode::Translates); }) == ErrorKind::BudgetExceeded);
  }

  TEST_CASE("quotient pushforward") {
    const auto v = space(3, 1, 2);
    const auto line = Subspace::span(v.field(), 2, std::vector<Vec>{{0, 1}});
    const auto q = quotient_pushforward(v, line, frak_t(v, line));
    CHECK(q.topology.is_discrete());
    CHECK(quotient_pushforward(v, line, NbhdTopology::indiscrete(9)).topology == NbhdTopology::indiscrete(3));
    const auto other = Subspace::span(v.field(), 2, std::vector<Vec>{{1, 1}});
    CHECK(quotient_pushforward(v, line, frak_t(v, other)).topology == NbhdTopology::indiscrete(3));
    CHECK(q.coset_of[0] == 0);
    CHECK(q.coset_of[3] == 0);
    CHECK(q.coset_of[4] == 1);
  }

  TEST_CASE("connection laws hold on small spaces") {
    for (auto [p, k, d] : {std::array{2, 1, 2}, std::array{3, 1, 2}, std::array{2, 1, 3}, std::array{2, 2, 2}}) {
      const auto r = verify_galois(space(p, k, d));
      CHECK(r.pass());
      CHECK(r.vector_topologies == r.subspaces);
      CHECK(r.meet_is_t_of_sum);
      CHECK(r.join_is_t_of_intersection);
    }
  }
}

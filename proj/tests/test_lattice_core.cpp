#include <doctest.h>

#include <algorithm>
#include <set>

#include "toplat/error.hpp"
#include "toplat/hartmanis.hpp"
#include "toplat/lattice_core.hpp"

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

std::set<Mask> masks_of(const SigmaLattice& s, const std::vector<std::size_t>& idx) {
  std::set<Mask> out;
  for (auto i : idx) out.insert(s.elements[i].opens()[1]);
  return out;
}

}  // namespace

TEST_SUITE("lattice_core") {
  TEST_CASE("building lattices") {
    const auto s2 = sigma_lattice(2);
    CHECK(s2.lattice->size() == 4);
    CHECK(s2.elements[s2.lattice->bottom()] == FinTopology::indiscrete(2));
    CHECK(s2.elements[s2.lattice->top()] == FinTopology::discrete(2));
    const auto s3 = sigma_lattice(3);
    CHECK(s3.lattice->size() == 29);
    CHECK(s3.lattice->atoms().size() == 6);
    CHECK(s3.lattice->is_atomic());

    // 0 < 1 < 2 and 0 < 3: elements 2 and 3 have no common upper bound
    const auto leq = [](std::size_t a, std::size_t b) {
      return a == b || a == 0 || (a == 1 && b == 2);
    };
    CHECK(kind_of([&] { FiniteLattice::build(4, leq); }) == ErrorKind::MeetJoinMissing);
    const auto cyclic = [](std::size_t a, std::size_t b) { return a == b || (a + 1) % 3 == b; };
    CHECK(kind_of([&] { FiniteLattice::build(3, cyclic); }) == ErrorKind::NotAPartialOrder);
  }

  TEST_CASE("meet and join follow the topology operations") {
    const auto s = sigma_lattice(3);
    for (std::size_t a = 0; a < s.elements.size(); ++a) {
      for (std::size_t b = 0; b < s.elements.size(); ++b) {
        CHECK(s.elements[s.lattice->meet(a, b)] == meet(s.elements[a], s.elements[b]));
        CHECK(s.elements[s.lattice->join(a, b)] == join(s.elements[a], s.elements[b]));
      }
    }
  }

  TEST_CASE("type function examples") {
    const auto p = profile_atom(0b0001, 4);
    CHECK(p.klass == AtomClass::N);
    CHECK(type_of(p, profile_atom(0b0010, 4)) == 3);
    const auto q = profile_atom(0b1110, 4);
    CHECK(q.klass == AtomClass::M);
    CHECK(type_of(p, q) == 2);
    CHECK(type_of(profile_atom(0b0011, 4), profile_atom(0b0110, 4)) == 4);
    CHECK(profile_atom(0b0011, 4).klass == AtomClass::L);
    CHECK(kind_of([&] { type_of(p, p); }) == ErrorKind::EqualAtoms);
  }

  TEST_CASE("type census: allowed cells, symmetry, type-4 partners, generic and lattice cross-checks") {
    for (int n = 3; n <= 5; ++n) {
      const auto c = type_census(n);
      CHECK(c.within_allowed);
      CHECK(c.symmetric);
      CHECK(c.l_atoms_have_type4_partner);
      CHECK(c.closed_form_matches_generic);
      CHECK(c.closed_form_matches_lattice);
    }
    const auto c4 = type_census(4);
    const auto cell = [&](AtomClass a, AtomClass b) { return c4.realized[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; };
    CHECK(cell(AtomClass::N, AtomClass::N) == std::vector<int>{3});
    CHECK(cell(AtomClass::N, AtomClass::M) == std::vector<int>{2});
    // two 2-subsets of 4 points are disjoint only when complementary, so type 3 needs n >= 5
    CHECK(cell(AtomClass::L, AtomClass::L) == std::vector<int>{2, 4});
    const auto c5 = type_census(5);
    CHECK(c5.realized[2][2] == std::vector<int>{2, 3, 4});
  }

  TEST_CASE("intrinsic classification recovers singletons and co-singletons") {
    struct Expect {
      int n;
      std::size_t l, clique;
    };
    for (const auto e : {Expect{3, 0, 3}, Expect{4, 6, 4}, Expect{5, 20, 5}}) {
      const auto s = sigma_lattice(e.n);
      const auto atoms = s.lattice->atoms();
      const auto part = classify_atoms_intrinsic(
          atoms, [&](std::size_t a, std::size_t b) { return lattice_type(*s.lattice, a, b); });
      CHECK(part.l_set.size() == e.l);
      CHECK(part.clique_a.size() == e.clique);
      CHECK(part.clique_b.size() == e.clique);
      std::set<Mask> singles, cosingles;
      for (int x = 0; x < e.n; ++x) {
        singles.insert(Mask{1} << x);
        cosingles.insert(full_mask(e.n) & ~(Mask{1} << x));
      }
      const auto a = masks_of(s, part.clique_a), b = masks_of(s, part.clique_b);
      CHECK(((a == singles && b == cosingles) || (a == cosingles && b == singles)));
    }
  }

  TEST_CASE("automorphism counts") {
    CHECK(enumerate_automorphisms(*sigma_lattice(2).lattice).size() == 2);
    const auto s3 = sigma_lattice(3);
    const auto auts = enumerate_automorphisms(*s3.lattice);
    CHECK(auts.size() == 12);
    CHECK(auts == enumerate_automorphisms_brute(*s3.lattice));
    const auto chain = FiniteLattice::build(3, [](std::size_t a, std::size_t b) { return a <= b; });
    CHECK(enumerate_automorphisms(chain).size() == 1);
    CHECK(enumerate_automorphisms_brute(chain).size() == 1);
    CHECK(kind_of([] { enumerate_automorphisms(*sigma_lattice(5).lattice); }) == ErrorKind::SizeExceeded);
  }

  TEST_CASE("every automorphism of Σ(3) preserves types and is a (complemented) pushforward") {
    const auto s = sigma_lattice(3);
    const auto atoms = s.lattice->atoms();
    std::set<std::vector<std::size_t>> induced;
    std::vector<int> p{0, 1, 2};
    do {
      for (bool c : {false, true}) induced.insert(induced_sigma_table(s, Bijection(p), c));
    } while (std::next_permutation(p.begin(), p.end()));
    for (const auto& a : enumerate_automorphisms(*s.lattice)) {
      CHECK(induced.count(a) == 1);
      for (auto x : atoms) {
        for (auto y : atoms) {
          if (x != y) CHECK(lattice_type(*s.lattice, a[x], a[y]) == lattice_type(*s.lattice, x, y));
        }
      }
    }
  }

  TEST_CASE("iso tables are validated") {
    const auto s = sigma_lattice(2);
    CHECK(kind_of([&] { make_iso_table(s.lattice, s.lattice, {0, 1, 1, 3}); }) == ErrorKind::NotALatticeIso);
    CHECK(kind_of([&] { make_iso_table(s.lattice, s.lattice, {1, 0, 2, 3}); }) == ErrorKind::NotALatticeIso);
    CHECK(make_iso_table(s.lattice, s.lattice, {0, 2, 1, 3}).map.size() == 4);
  }
}

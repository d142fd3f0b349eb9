#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "toplat/error.hpp"
#include "toplat/finset_topology.hpp"

using namespace toplat;

namespace {

FinTopology top(int n, std::vector<Mask> opens) { return validate_topology(n, opens); }

// Families of subsets containing ∅ and X and closed under ∪ and ∩, by brute force.
std::set<std::vector<Mask>> brute_force_topologies(int n) {
  const Mask full = full_mask(n);
  const int inner = static_cast<int>(full) - 1;  // proper nonempty subsets 1..full-1
  std::set<std::vector<Mask>> out;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << inner); ++pick) {
    std::vector<Mask> fam{0};
    for (int i = 0; i < inner; ++i) {
      if ((pick >> i) & 1u) fam.push_back(static_cast<Mask>(i + 1));
    }
    fam.push_back(full);
    std::set<Mask> s(fam.begin(), fam.end());
    bool closed = true;
    for (Mask a : fam) {
      for (Mask b : fam) closed = closed && s.count(a | b) && s.count(a & b);
    }
    if (closed) out.insert(fam);
  }
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_SUITE("finset_topology") {
  TEST_CASE("validate_topology examples") {
    const auto indiscrete = top(2, {0, 3});
    CHECK(indiscrete.size() == 2);
    CHECK(indiscrete == FinTopology::indiscrete(2));
    CHECK(top(2, {0, 1, 3}) == atom(1, 2));
    CHECK(kind_of([] { top(2, {0, 1, 2}); }) == ErrorKind::MissingEmptyOrFull);
    CHECK(top(2, {0, 1, 2, 3}) == FinTopology::discrete(2));
    CHECK(kind_of([] { top(3, {0, 1, 2, 7}); }) == ErrorKind::NotClosedUnderUnion);
    CHECK(kind_of([] { top(3, {0, 3, 6, 7}); }) == ErrorKind::NotClosedUnderIntersection);
    CHECK(kind_of([] { top(2, {0, 4, 3}); }) == ErrorKind::MaskOutOfRange);
    // duplicates and unsorted input are canonicalized
    CHECK(top(2, {3, 1, 0, 1}) == atom(1, 2));
  }

  TEST_CASE("meet and join examples") {
    const auto a0 = atom(0b01, 2), a1 = atom(0b10, 2);
    CHECK(meet(a0, a1) == FinTopology::indiscrete(2));
    CHECK(join(a0, a1) == FinTopology::discrete(2));
    CHECK(join(a0, a1).size() == 4);
    const auto j = join(atom(0b011, 3), atom(0b110, 3));
    CHECK(std::vector<Mask>(j.opens().begin(), j.opens().end()) == std::vector<Mask>{0, 0b010, 0b011, 0b110, 0b111});
    for (const auto& t : enumerate_topologies(3)) {
      CHECK(meet(t, t) == t);
      CHECK(meet(FinTopology::discrete(3), t) == t);
      CHECK(join(t, FinTopology::indiscrete(3)) == t);
    }
    CHECK(kind_of([] { meet(FinTopology::discrete(2), FinTopology::discrete(3)); }) == ErrorKind::GroundMismatch);
  }

  TEST_CASE("complement and pushforward examples") {
    CHECK(complement_map(atom(0b001, 3)) == atom(0b110, 3));
    CHECK(complement_map(FinTopology::discrete(4)) == FinTopology::discrete(4));
    const auto sw = Bijection::swap(3, 0, 1);
    CHECK(pushforward(sw, atom(0b001, 3)) == atom(0b010, 3));
    CHECK(pushforward(Bijection::identity(3), atom(0b101, 3)) == atom(0b101, 3));
  }

  TEST_CASE("enumeration counts and order") {
    const std::uint64_t expected[] = {1, 4, 29, 355, 6942};
    for (int n = 1; n <= 5; ++n) CHECK(count_topologies(n) == expected[n - 1]);
    const auto two = enumerate_topologies(2);
    REQUIRE(two.size() == 4);
    CHECK(two[0] == FinTopology::indiscrete(2));
    CHECK(two[1] == atom(0b01, 2));
    CHECK(two[2] == atom(0b10, 2));
    CHECK(two[3] == FinTopology::discrete(2));
    CHECK(kind_of([] { count_topologies(8); }) == ErrorKind::BudgetExceeded);
    CHECK(kind_of([] { count_topologies(7); }) == ErrorKind::BudgetExceeded);
  }

  TEST_CASE("threaded count agrees with the serial count") {
    CHECK(count_topologies(5, {false, 3}) == count_topologies(5, {false, 1}));
  }

  TEST_CASE("enumeration equals brute-force family closure for n <= 4") {
    for (int n = 1; n <= 4; ++n) {
      std::set<std::vector<Mask>> enumerated;
      for (const auto& t : enumerate_topologies(n)) enumerated.emplace(t.opens().begin(), t.opens().end());
      CHECK(enumerated == brute_force_topologies(n));
    }
  }

  TEST_CASE("n = 5: no duplicates and canonical-form idempotence") {
    const auto all = enumerate_topologies(5);
    std::set<std::uint64_t> seen;
    for (const auto& t : all) {
      CHECK(seen.insert(t.family_bits()).second);
      CHECK(validate_topology(5, t.opens()) == t);
    }
  }

  TEST_CASE("atoms") {
    CHECK(atoms_of_sigma(4).size() == 14);
    const auto a = atom(0b0001, 4);
    CHECK(std::vector<Mask>(a.opens().begin(), a.opens().end()) == std::vector<Mask>{0, 1, 15});
    CHECK_FALSE(is_atom(FinTopology::discrete(2)));
    CHECK(is_atom(a));
    CHECK(kind_of([] { atom(0, 3); }) == ErrorKind::ImproperSubset);
    CHECK(kind_of([] { atom(7, 3); }) == ErrorKind::ImproperSubset);
    CHECK(sup_atoms(4, atoms_of_sigma(4)) == FinTopology::discrete(4));
    CHECK(sup_atoms(4, std::vector<FinTopology>{}) == FinTopology::indiscrete(4));
    const std::vector<FinTopology> not_atoms{FinTopology::discrete(3)};
    CHECK(kind_of([&] { sup_atoms(3, not_atoms); }) == ErrorKind::NotAnAtom);
  }

  TEST_CASE("atomicity round trip for n <= 5") {
    for (int n = 1; n <= 5; ++n) {
      for (const auto& t : enumerate_topologies(n)) {
        std::vector<FinTopology> atoms;
        for (Mask d : t.opens()) {
          if (d != 0 && d != t.full()) atoms.push_back(atom(d, n));
        }
        CHECK(sup_atoms(n, atoms) == t);
      }
    }
  }

  TEST_CASE("lattice laws on random triples, n <= 5") {
    std::mt19937_64 rng(7);
    for (int n = 2; n <= 5; ++n) {
      const auto all = enumerate_topologies(n);
      for (int trial = 0; trial < 300; ++trial) {
        const auto& a = all[rng() % all.size()];
        const auto& b = all[rng() % all.size()];
        const auto& c = all[rng() % all.size()];
        CHECK(meet(a, b) == meet(b, a));
        CHECK(join(a, b) == join(b, a));
        CHECK(meet(meet(a, b), c) == meet(a, meet(b, c)));
        CHECK(join(join(a, b), c) == join(a, join(b, c)));
        CHECK(meet(a, join(a, b)) == a);
        CHECK(join(a, meet(a, b)) == a);
      }
    }
  }

  TEST_CASE("pushforward commutes with complement, meet and pullback") {
    std::mt19937_64 rng(11);
    const auto all = enumerate_topologies(4);
    std::vector<int> p{0, 1, 2, 3};
    do {
      const Bijection theta(p);
      for (int trial = 0; trial < 20; ++trial) {
        const auto& a = all[rng() % all.size()];
        const auto& b = all[rng() % all.size()];
        CHECK(complement_map(pushforward(theta, a)) == pushforward(theta, complement_map(a)));
        CHECK(pushforward(theta, meet(a, b)) == meet(pushforward(theta, a), pushforward(theta, b)));
        CHECK(pullback(theta, pushforward(theta, a)) == a);
        CHECK(complement_map(complement_map(a)) == a);
      }
    } while (std::next_permutation(p.begin(), p.end()));
  }

  TEST_CASE("neighbourhood form agrees with the open-family form") {
    for (const auto& t : enumerate_topologies(4)) {
      const auto h = NbhdTopology::from(t);
      CHECK(h.to_fin() == t);
      CHECK(NbhdTopology::from(complement_map(t)) == complement_map(h));
      for (Mask s = 0; s < 16; ++s) CHECK(h.is_open(s) == t.is_open(s));
    }
    const auto all = enumerate_topologies(3);
    for (const auto& a : all) {
      for (const auto& b : all) {
        CHECK(meet(NbhdTopology::from(a), NbhdTopology::from(b)).to_fin() == meet(a, b));
        CHECK(join(NbhdTopology::from(a), NbhdTopology::from(b)).to_fin() == join(a, b));
      }
    }
  }

  TEST_CASE("bijection validation") {
    CHECK(kind_of([] { Bijection(std::vector<int>{0, 0}); }) == ErrorKind::InvalidArgument);
    const Bijection b(std::vector<int>{2, 0, 1});
    CHECK(b.after(b.inverse()) == Bijection::identity(3));
    CHECK(b.apply(0b001) == 0b100);
  }
}

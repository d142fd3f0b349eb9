#include <doctest.h>

#include <random>

#include "toplat/error.hpp"
#include "toplat/rigidity.hpp"

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

}  // namespace

TEST_SUITE("rigidity") {
  TEST_CASE("preserves_tau examples") {
    const VectorSpace f32(FiniteField::make(3, 1), 2);
    CHECK_FALSE(preserves_tau(f32, Bijection::swap(9, 0, 1)));
    CHECK(preserves_tau(f32, Bijection::identity(9)));
    CHECK(preserves_tau(f32, point_permutation(f32, translation(f32, Vec{1, 2}))));
    // x ↦ -x is linear
    CHECK(preserves_tau(f32, point_permutation(f32, make_semilinear(f32, FieldAut{0}, Matrix::from_columns(std::vector<Vec>{{2, 0}, {0, 2}})))));
  }

  TEST_CASE("census on tiny spaces") {
    const VectorSpace f21(FiniteField::make(2, 1), 1), f22(FiniteField::make(2, 1), 2), f31(FiniteField::make(3, 1), 1);
    CHECK(affine_census(f21).preserving.size() == 2);
    const auto c = affine_census(f22);
    CHECK(c.bijections == 24);
    CHECK(c.preserving.size() == 24);
    // on a line every bijection preserves the two vector topologies
    CHECK(affine_census(f31).preserving.size() == 6);
    CHECK(kind_of([] { affine_census(VectorSpace(FiniteField::make(2, 2), 2)); }) == ErrorKind::SizeExceeded);
  }

  TEST_CASE("decomposition examples") {
    const VectorSpace f42(FiniteField::make(2, 2), 2);
    const auto t = translation(f42, Vec{1, 2});
    const auto d = decompose_triple(f42, point_permutation(f42, t), false);
    CHECK(d.psi == FieldAut{0});
    CHECK(d.matrix == Matrix::identity(2));
    CHECK(d.y0 == Vec{1, 2});

    Matrix m(2, 2);
    m.at(0, 0) = 2;
    m.at(1, 1) = 1;
    const auto a = make_affine(f42, make_semilinear(f42, FieldAut{0}, m), Vec{1, 2});
    const auto e = decompose_triple(f42, point_permutation(f42, a), true);
    CHECK(e == TripleDecomposition{FieldAut{0}, m, Vec{1, 2}, true});
  }

  TEST_CASE("decomposition recovers random affine semilinear maps") {
    std::mt19937_64 rng(11);
    for (auto [p, k] : {std::pair{3, 1}, std::pair{2, 2}, std::pair{2, 1}}) {
      const VectorSpace v(FiniteField::make(p, k), p == 2 && k == 1 ? 3 : 2);
      const auto gl = enumerate_gammaL(v);
      for (int trial = 0; trial < 40; ++trial) {
        const auto lin = gl[rng() % gl.size()];
        const Vec y0 = v.vector_at(static_cast<int>(rng() % static_cast<std::uint64_t>(v.size())));
        const auto d = decompose_triple(v, point_permutation(v, make_affine(v, lin, y0)), false);
        CHECK(d.as_map() == make_affine(v, lin, y0));
      }
    }
  }

  TEST_CASE("non-affine bijections are rejected") {
    const VectorSpace f32(FiniteField::make(3, 1), 2);
    CHECK(kind_of([&] { decompose_triple(f32, Bijection::swap(9, 0, 1), false); }) == ErrorKind::NotSemiaffine);
    CHECK(kind_of([&] { decompose_triple(f32, Bijection::swap(9, 4, 8), false); }) == ErrorKind::NotSemiaffine);
  }

  TEST_CASE("group structure on F_2^2") {
    const auto r = theorem_b_group(VectorSpace(FiniteField::make(2, 1), 2));
    CHECK(r.pass());
    CHECK(r.group_order == 48);
    CHECK(r.semidirect_order == 24);
    CHECK(r.census == 24);
    CHECK(kind_of([] { theorem_b_group(VectorSpace(FiniteField::make(3, 1), 1)); }) == ErrorKind::DimensionTooSmall);
    CHECK(kind_of([] { theorem_b_group(VectorSpace(FiniteField::make(2, 2), 3)); }) == ErrorKind::SizeExceeded);
  }

  TEST_CASE("end-to-end draws through the 355-entry table") {
    const auto r = end_to_end_theorem_a(1, 20);
    CHECK(r.pass());
    CHECK(r.runs.size() == 20);
    for (const auto& run : r.runs) {
      CHECK(run.tau_preserved);
      CHECK(run.exact);
    }
    const auto again = end_to_end_theorem_a(1, 20);
    for (std::size_t i = 0; i < r.runs.size(); ++i) CHECK(again.runs[i].planted == r.runs[i].planted);
  }
}

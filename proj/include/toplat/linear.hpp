#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "toplat/finite_field.hpp"
#include "toplat/finset_topology.hpp"

namespace toplat {

using Vec = std::vector<int>;

/// F^dim with its points enumerated as Σ v_i q^i (coordinate 0 least significant).
class VectorSpace {
 public:
  static constexpr int kMaxPoints = 4096;

  /// Throws InvalidArgument for dim < 1 or more than 4096 points.
  VectorSpace(FiniteField field, int dim);

  const FiniteField& field() const { return *field_; }
  int dim() const { return dim_; }
  int size() const { return size_; }
  int q() const { return field_->order(); }

  int index_of(std::span<const int> v) const;
  Vec vector_at(int index) const;
  int add(int a, int b) const { return add_[static_cast<std::size_t>(a * size_ + b)]; }
  int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
  int scale(int alpha, int a) const { return scale_[static_cast<std::size_t>(alpha * size_ + a)]; }
  /// e_i as a point index.
  int basis_index(int i) const;

  bool operator==(const VectorSpace& other) const { return *field_ == *other.field_ && dim_ == other.dim_; }

 private:
  std::shared_ptr<const FiniteField> field_;
  int dim_ = 1;
  int size_ = 1;
  std::vector<int> add_, neg_, scale_;
};

/// Dense matrix over a finite field, row-major.
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<int> entries;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r * c), 0) {}
  static Matrix identity(int d);
  static Matrix from_columns(std::span<const Vec> columns);

  int& at(int r, int c) { return entries[static_cast<std::size_t>(r * cols + c)]; }
  int at(int r, int c) const { return entries[static_cast<std::size_t>(r * cols + c)]; }
  Vec column(int c) const;
  Vec row(int r) const;

  bool operator==(const Matrix&) const = default;
  auto operator<=>(const Matrix&) const = default;
};

Matrix mat_mul(const FiniteField& f, const Matrix& a, const Matrix& b);
Vec mat_vec(const FiniteField& f, const Matrix& a, std::span<const int> v);
/// Reduced row echelon form with zero rows dropped.
Matrix rref(const FiniteField& f, Matrix m);
int rank(const FiniteField& f, const Matrix& m);
/// Throws SingularMatrix.
Matrix inverse(const FiniteField& f, const Matrix& m);
/// Applies the automorphism to every entry.
Matrix mat_aut(const FiniteField& f, FieldAut aut, const Matrix& m);
Vec vec_aut(const FiniteField& f, FieldAut aut, std::span<const int> v);

/// A subspace of F^dim held as its reduced row echelon basis.
class Subspace {
 public:
  static Subspace zero(int dim);
  static Subspace full(const FiniteField& f, int dim);
  /// Throws DimensionMismatch if a vector has the wrong length.
  static Subspace span(const FiniteField& f, int dim, std::span<const Vec> vectors);

  int ambient_dim() const { return ambient_; }
  int dim() const { return basis_.rows; }
  const Matrix& basis() const { return basis_; }
  std::vector<Vec> basis_vectors() const;

  bool contains(const FiniteField& f, std::span<const int> v) const;
  bool is_subset_of(const FiniteField& f, const Subspace& other) const;
  /// Point indices of all elements, ascending.
  std::vector<int> elements(const VectorSpace& space) const;
  /// Element set as a mask; requires at most 64 points.
  WideMask mask(const VectorSpace& space) const;

  bool operator==(const Subspace&) const = default;
  auto operator<=>(const Subspace&) const = default;

 private:
  Subspace(int ambient, Matrix basis) : ambient_(ambient), basis_(std::move(basis)) {}
  int ambient_ = 0;
  Matrix basis_;
};

Subspace sum(const FiniteField& f, const Subspace& a, const Subspace& b);
Subspace intersect(const FiniteField& f, const Subspace& a, const Subspace& b);
/// Orthogonal complement under the standard bilinear form.
Subspace annihilator(const FiniteField& f, const Subspace& s);
/// Every subspace once, ordered by dimension and then by echelon basis.
std::vector<Subspace> enumerate_subspaces(const VectorSpace& space);
/// Number of r-dimensional subspaces of F_q^d.
std::uint64_t gaussian_binomial(int d, int r, int q);

/// x ↦ matrix · ψ(x).
struct SemilinearMap {
  FieldAut psi;
  Matrix matrix;

  bool operator==(const SemilinearMap&) const = default;
  auto operator<=>(const SemilinearMap&) const = default;
};

/// x ↦ matrix · ψ(x) + shift.
struct AffineSemilinearMap {
  SemilinearMap linear;
  Vec shift;

  bool operator==(const AffineSemilinearMap&) const = default;
  auto operator<=>(const AffineSemilinearMap&) const = default;
};

/// Throws SingularMatrix or DimensionMismatch.
SemilinearMap make_semilinear(const VectorSpace& space, FieldAut psi, Matrix matrix);
AffineSemilinearMap make_affine(const VectorSpace& space, SemilinearMap linear, Vec shift);
AffineSemilinearMap translation(const VectorSpace& space, Vec shift);

Vec apply(const VectorSpace& space, const SemilinearMap& m, std::span<const int> x);
Vec apply(const VectorSpace& space, const AffineSemilinearMap& m, std::span<const int> x);
/// (outer ∘ inner)
SemilinearMap compose(const VectorSpace& space, const SemilinearMap& outer, const SemilinearMap& inner);
AffineSemilinearMap compose(const VectorSpace& space, const AffineSemilinearMap& outer,
                            const AffineSemilinearMap& inner);
SemilinearMap invert(const VectorSpace& space, const SemilinearMap& m);
AffineSemilinearMap invert(const VectorSpace& space, const AffineSemilinearMap& m);
Bijection point_permutation(const VectorSpace& space, const SemilinearMap& m);
Bijection point_permutation(const VectorSpace& space, const AffineSemilinearMap& m);
Subspace image(const VectorSpace& space, const SemilinearMap& m, const Subspace& s);

std::uint64_t group_order_gl(const VectorSpace& space);
std::uint64_t group_order_gammaL(const VectorSpace& space);
inline constexpr std::uint64_t kMaxGroupEnumeration = 1'000'000;
/// Invertible matrices in column-lexicographic order of point indices. Throws SizeExceeded above 10^6.
void for_each_gl(const VectorSpace& space, const std::function<void(const Matrix&)>& visit);
std::vector<Matrix> enumerate_gl(const VectorSpace& space);
/// Each (automorphism, matrix) pair once, automorphism-major.
std::vector<SemilinearMap> enumerate_gammaL(const VectorSpace& space);

}  // namespace toplat

#include "toplat/linear.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "toplat/error.hpp"

namespace toplat {

VectorSpace::VectorSpace(FiniteField field, int dim)
    : field_(std::make_shared<const FiniteField>(std::move(field))), dim_(dim) {
  if (dim < 1) fail(ErrorKind::InvalidArgument, "dimension must be at least 1");
  long long size = 1;
  for (int i = 0; i < dim; ++i) {
    size *= field_->order();
    if (size > kMaxPoints) fail(ErrorKind::InvalidArgument, "vector space has more than 4096 points");
  }
  size_ = static_cast<int>(size);
  const auto n = static_cast<std::size_t>(size_);
  add_.resize(n * n);
  neg_.resize(n);
  scale_.resize(static_cast<std::size_t>(q()) * n);
  std::vector<Vec> vecs(n);
  for (int i = 0; i < size_; ++i) vecs[static_cast<std::size_t>(i)] = vector_at(i);
  for (int a = 0; a < size_; ++a) {
    const Vec& va = vecs[static_cast<std::size_t>(a)];
    Vec w(static_cast<std::size_t>(dim_));
    for (int b = 0; b < size_; ++b) {
      const Vec& vb = vecs[static_cast<std::size_t>(b)];
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = field_->add(va[i], vb[i]);
      add_[static_cast<std::size_t>(a * size_ + b)] = index_of(w);
    }
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = field_->neg(va[i]);
    neg_[static_cast<std::size_t>(a)] = index_of(w);
    for (int alpha = 0; alpha < q(); ++alpha) {
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = field_->mul(alpha, va[i]);
      scale_[static_cast<std::size_t>(alpha * size_ + a)] = index_of(w);
    }
  }
}

int VectorSpace::index_of(std::span<const int> v) const {
  if (static_cast<int>(v.size()) != dim_) {
    fail(ErrorKind::DimensionMismatch, "vector of length " + std::to_string(v.size()) + " in dimension " +
                                           std::to_string(dim_));
  }
  int index = 0;
  for (int i = dim_ - 1; i >= 0; --i) {
    const int c = v[static_cast<std::size_t>(i)];
    if (c < 0 || c >= q()) fail(ErrorKind::InvalidArgument, "coordinate " + std::to_string(c) + " is not a field element");
    index = index * q() + c;
  }
  return index;
}

Vec VectorSpace::vector_at(int index) const {
  if (index < 0 || index >= size_) fail(ErrorKind::InvalidArgument, "point index " + std::to_string(index) + " out of range");
  Vec v(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i, index /= q()) v[static_cast<std::size_t>(i)] = index % q();
  return v;
}

int VectorSpace::basis_index(int i) const {
  int index = 1;
  for (int j = 0; j < i; ++j) index *= q();
  return index;
}

Matrix Matrix::identity(int d) {
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(std::span<const Vec> columns) {
  const int c = static_cast<int>(columns.size());
  const int r = c == 0 ? 0 : static_cast<int>(columns[0].size());
  Matrix m(r, c);
  for (int j = 0; j < c; ++j) {
    if (static_cast<int>(columns[static_cast<std::size_t>(j)].size()) != r) {
      fail(ErrorKind::DimensionMismatch, "columns of unequal length");
    }
    for (int i = 0; i < r; ++i) m.at(i, j) = columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  }
  return m;
}

Vec Matrix::column(int c) const {
  Vec v(static_cast<std::size_t>(rows));
  for (int i = 0; i < rows; ++i) v[static_cast<std::size_t>(i)] = at(i, c);
  return v;
}

Vec Matrix::row(int r) const {
  return Vec(entries.begin() + r * cols, entries.begin() + (r + 1) * cols);
}

Matrix mat_mul(const FiniteField& f, const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) fail(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  Matrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < b.cols; ++j) {
      int acc = 0;
      for (int k = 0; k < a.cols; ++k) acc = f.add(acc, f.mul(a.at(i, k), b.at(k, j)));
      out.at(i, j) = acc;
    }
  }
  return out;
}

Vec mat_vec(const FiniteField& f, const Matrix& a, std::span<const int> v) {
  if (static_cast<int>(v.size()) != a.cols) fail(ErrorKind::DimensionMismatch, "matrix-vector shape mismatch");
  Vec out(static_cast<std::size_t>(a.rows), 0);
  for (int i = 0; i < a.rows; ++i) {
    int acc = 0;
    for (int k = 0; k < a.cols; ++k) acc = f.add(acc, f.mul(a.at(i, k), v[static_cast<std::size_t>(k)]));
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

Matrix rref(const FiniteField& f, Matrix m) {
  int pivot_row = 0;
  for (int c = 0; c < m.cols && pivot_row < m.rows; ++c) {
    int sel = -1;
    for (int r = pivot_row; r < m.rows; ++r) {
      if (m.at(r, c) != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(pivot_row, j));
    const int inv = f.inv(m.at(pivot_row, c));
    for (int j = 0; j < m.cols; ++j) m.at(pivot_row, j) = f.mul(inv, m.at(pivot_row, j));
    for (int r = 0; r < m.rows; ++r) {
      if (r == pivot_row || m.at(r, c) == 0) continue;
      const int factor = m.at(r, c);
      for (int j = 0; j < m.cols; ++j) m.at(r, j) = f.sub(m.at(r, j), f.mul(factor, m.at(pivot_row, j)));
    }
    ++pivot_row;
  }
  Matrix out(pivot_row, m.cols);
  std::copy(m.entries.begin(), m.entries.begin() + pivot_row * m.cols, out.entries.begin());
  return out;
}

int rank(const FiniteField& f, const Matrix& m) { return rref(f, m).rows; }

Matrix inverse(const FiniteField& f, const Matrix& m) {
  if (m.rows != m.cols) fail(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  const int d = m.rows;
  Matrix aug(d, 2 * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, d + i) = 1;
  }
  const Matrix red = rref(f, aug);
  bool ok = red.rows == d;
  for (int i = 0; ok && i < d; ++i) ok = red.at(i, i) == 1;
  if (!ok) fail(ErrorKind::SingularMatrix, "matrix is not invertible");
  Matrix out(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) out.at(i, j) = red.at(i, d + j);
  }
  return out;
}

Matrix mat_aut(const FiniteField& f, FieldAut aut, const Matrix& m) {
  Matrix out = m;
  for (auto& e : out.entries) e = f.apply(aut, e);
  return out;
}

Vec vec_aut(const FiniteField& f, FieldAut aut, std::span<const int> v) {
  Vec out(v.begin(), v.end());
  for (auto& e : out) e = f.apply(aut, e);
  return out;
}

Subspace Subspace::zero(int dim) { return Subspace(dim, Matrix(0, dim)); }

Subspace Subspace::full(const FiniteField&, int dim) { return Subspace(dim, Matrix::identity(dim)); }

Subspace Subspace::span(const FiniteField& f, int dim, std::span<const Vec> vectors) {
  Matrix m(static_cast<int>(vectors.size()), dim);
  for (int r = 0; r < m.rows; ++r) {
    const Vec& v = vectors[static_cast<std::size_t>(r)];
    if (static_cast<int>(v.size()) != dim) {
      fail(ErrorKind::DimensionMismatch, "vector of length " + std::to_string(v.size()) + " in dimension " +
                                             std::to_string(dim));
    }
    for (int c = 0; c < dim; ++c) m.at(r, c) = v[static_cast<std::size_t>(c)];
  }
  return Subspace(dim, rref(f, std::move(m)));
}

std::vector<Vec> Subspace::basis_vectors() const {
  std::vector<Vec> out;
  for (int r = 0; r < basis_.rows; ++r) out.push_back(basis_.row(r));
  return out;
}

bool Subspace::contains(const FiniteField& f, std::span<const int> v) const {
  if (static_cast<int>(v.size()) != ambient_) fail(ErrorKind::DimensionMismatch, "vector length mismatch");
  // reduce v against the echelon rows; it lies in the span iff nothing remains
  Vec rest(v.begin(), v.end());
  for (int r = 0; r < basis_.rows; ++r) {
    int pivot = 0;
    while (basis_.at(r, pivot) == 0) ++pivot;
    const int factor = rest[static_cast<std::size_t>(pivot)];
    if (factor == 0) continue;
    for (int c = 0; c < ambient_; ++c) {
      rest[static_cast<std::size_t>(c)] = f.sub(rest[static_cast<std::size_t>(c)], f.mul(factor, basis_.at(r, c)));
    }
  }
  return std::all_of(rest.begin(), rest.end(), [](int c) { return c == 0; });
}

bool Subspace::is_subset_of(const FiniteField& f, const Subspace& other) const {
  for (int r = 0; r < basis_.rows; ++r) {
    if (!other.contains(f, basis_.row(r))) return false;
  }
  return true;
}

std::vector<int> Subspace::elements(const VectorSpace& space) const {
  std::vector<int> out{0};
  for (int r = 0; r < basis_.rows; ++r) {
    const int b = space.index_of(basis_.row(r));
    std::vector<int> next;
    next.reserve(out.size() * static_cast<std::size_t>(space.q()));
    for (int alpha = 0; alpha < space.q(); ++alpha) {
      const int ab = space.scale(alpha, b);
      for (int x : out) next.push_back(space.add(x, ab));
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

WideMask Subspace::mask(const VectorSpace& space) const {
  if (space.size() > kMaxWideGround) fail(ErrorKind::InvalidArgument, "subspace masks need at most 64 points");
  WideMask m = 0;
  for (int x : elements(space)) m |= WideMask{1} << x;
  return m;
}

Subspace sum(const FiniteField& f, const Subspace& a, const Subspace& b) {
  auto vs = a.basis_vectors();
  for (auto& v : b.basis_vectors()) vs.push_back(std::move(v));
  return Subspace::span(f, a.ambient_dim(), vs);
}

Subspace annihilator(const FiniteField& f, const Subspace& s) {
  const int d = s.ambient_dim();
  const Matrix& b = s.basis();
  std::vector<int> pivots;
  for (int r = 0; r < b.rows; ++r) {
    int p = 0;
    while (b.at(r, p) == 0) ++p;
    pivots.push_back(p);
  }
  std::vector<Vec> kernel;
  for (int free = 0; free < d; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    Vec v(static_cast<std::size_t>(d), 0);
    v[static_cast<std::size_t>(free)] = 1;
    for (int r = 0; r < b.rows; ++r) v[static_cast<std::size_t>(pivots[static_cast<std::size_t>(r)])] = f.neg(b.at(r, free));
    kernel.push_back(std::move(v));
  }
  return Subspace::span(f, d, kernel);
}

Subspace intersect(const FiniteField& f, const Subspace& a, const Subspace& b) {
  return annihilator(f, sum(f, annihilator(f, a), annihilator(f, b)));
}

std::vector<Subspace> enumerate_subspaces(const VectorSpace& space) {
  const int d = space.dim();
  const int q = space.q();
  std::vector<Subspace> out;
  for (int r = 0; r <= d; ++r) {
    for (unsigned pivots = 0; pivots < (1u << d); ++pivots) {
      if (std::popcount(pivots) != r) continue;
      std::vector<int> pcols;
      for (int c = 0; c < d; ++c) {
        if (pivots & (1u << c)) pcols.push_back(c);
      }
      // free slots: row i, non-pivot column right of its pivot
      std::vector<std::pair<int, int>> slots;
      for (int i = 0; i < r; ++i) {
        for (int c = pcols[static_cast<std::size_t>(i)] + 1; c < d; ++c) {
          if (!(pivots & (1u << c))) slots.emplace_back(i, c);
        }
      }
      std::vector<int> digits(slots.size(), 0);
      while (true) {
        Matrix m(r, d);
        for (int i = 0; i < r; ++i) m.at(i, pcols[static_cast<std::size_t>(i)]) = 1;
        for (std::size_t s = 0; s < slots.size(); ++s) m.at(slots[s].first, slots[s].second) = digits[s];
        std::vector<Vec> rows;
        for (int i = 0; i < r; ++i) rows.push_back(m.row(i));
        out.push_back(Subspace::span(space.field(), d, rows));
        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == q) digits[pos++] = 0;
        if (pos == digits.size()) break;
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.basis() < b.basis();
  });
  return out;
}

std::uint64_t gaussian_binomial(int d, int r, int q) {
  if (r < 0 || r > d) return 0;
  std::uint64_t num = 1, den = 1;
  for (int i = 0; i < r; ++i) {
    std::uint64_t qd = 1, qi = 1;
    for (int j = 0; j < d - i; ++j) qd *= static_cast<std::uint64_t>(q);
    for (int j = 0; j < i + 1; ++j) qi *= static_cast<std::uint64_t>(q);
    num *= qd - 1;
    den *= qi - 1;
  }
  return num / den;
}

SemilinearMap make_semilinear(const VectorSpace& space, FieldAut psi, Matrix matrix) {
  if (matrix.rows != space.dim() || matrix.cols != space.dim()) {
    fail(ErrorKind::DimensionMismatch, "matrix shape does not match the space");
  }
  if (rank(space.field(), matrix) != space.dim()) fail(ErrorKind::SingularMatrix, "matrix is not invertible");
  psi.exponent = ((psi.exponent % space.field().degree()) + space.field().degree()) % space.field().degree();
  return {psi, std::move(matrix)};
}

AffineSemilinearMap make_affine(const VectorSpace& space, SemilinearMap linear, Vec shift) {
  if (static_cast<int>(shift.size()) != space.dim()) fail(ErrorKind::DimensionMismatch, "shift length mismatch");
  auto lin = make_semilinear(space, linear.psi, std::move(linear.matrix));
  return {std::move(lin), std::move(shift)};
}

AffineSemilinearMap translation(const VectorSpace& space, Vec shift) {
  return make_affine(space, {FieldAut{0}, Matrix::identity(space.dim())}, std::move(shift));
}

Vec apply(const VectorSpace& space, const SemilinearMap& m, std::span<const int> x) {
  return mat_vec(space.field(), m.matrix, vec_aut(space.field(), m.psi, x));
}

Vec apply(const VectorSpace& space, const AffineSemilinearMap& m, std::span<const int> x) {
  Vec y = apply(space, m.linear, x);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = space.field().add(y[i], m.shift[i]);
  return y;
}

SemilinearMap compose(const VectorSpace& space, const SemilinearMap& outer, const SemilinearMap& inner) {
  const auto& f = space.field();
  return {f.compose(outer.psi, inner.psi), mat_mul(f, outer.matrix, mat_aut(f, outer.psi, inner.matrix))};
}

AffineSemilinearMap compose(const VectorSpace& space, const AffineSemilinearMap& outer,
                            const AffineSemilinearMap& inner) {
  return {compose(space, outer.linear, inner.linear), apply(space, outer, inner.shift)};
}

SemilinearMap invert(const VectorSpace& space, const SemilinearMap& m) {
  const auto& f = space.field();
  const FieldAut back = f.inverse(m.psi);
  return {back, mat_aut(f, back, inverse(f, m.matrix))};
}

AffineSemilinearMap invert(const VectorSpace& space, const AffineSemilinearMap& m) {
  SemilinearMap lin = invert(space, m.linear);
  Vec shift = apply(space, lin, m.shift);
  for (auto& c : shift) c = space.field().neg(c);
  return {std::move(lin), std::move(shift)};
}

Bijection point_permutation(const VectorSpace& space, const SemilinearMap& m) {
  return point_permutation(space, AffineSemilinearMap{m, Vec(static_cast<std::size_t>(space.dim()), 0)});
}

Bijection point_permutation(const VectorSpace& space, const AffineSemilinearMap& m) {
  std::vector<int> image(static_cast<std::size_t>(space.size()));
  for (int x = 0; x < space.size(); ++x) image[static_cast<std::size_t>(x)] = space.index_of(apply(space, m, space.vector_at(x)));
  return Bijection(std::move(image));
}

Subspace image(const VectorSpace& space, const SemilinearMap& m, const Subspace& s) {
  std::vector<Vec> vs;
  for (const auto& b : s.basis_vectors()) vs.push_back(apply(space, m, b));
  return Subspace::span(space.field(), space.dim(), vs);
}

std::uint64_t group_order_gl(const VectorSpace& space) {
  std::uint64_t qd = 1;
  for (int i = 0; i < space.dim(); ++i) qd *= static_cast<std::uint64_t>(space.q());
  std::uint64_t order = 1, qi = 1;
  for (int i = 0; i < space.dim(); ++i, qi *= static_cast<std::uint64_t>(space.q())) order *= qd - qi;
  return order;
}

std::uint64_t group_order_gammaL(const VectorSpace& space) {
  return group_order_gl(space) * static_cast<std::uint64_t>(space.field().degree());
}

void for_each_gl(const VectorSpace& space, const std::function<void(const Matrix&)>& visit) {
  if (group_order_gl(space) > kMaxGroupEnumeration) {
    fail(ErrorKind::SizeExceeded, "|GL| = " + std::to_string(group_order_gl(space)) + " exceeds 10^6");
  }
  const int d = space.dim();
  std::vector<Vec> columns;
  // span of the chosen columns as a membership table over point indices
  std::vector<std::vector<char>> spans{std::vector<char>(static_cast<std::size_t>(space.size()), 0)};
  spans.reserve(static_cast<std::size_t>(d) + 1);
  spans[0][0] = 1;
  std::function<void()> rec = [&]() {
    if (static_cast<int>(columns.size()) == d) {
      visit(Matrix::from_columns(columns));
      return;
    }
    const auto& current = spans.back();
    for (int x = 0; x < space.size(); ++x) {
      if (current[static_cast<std::size_t>(x)]) continue;
      std::vector<char> next(current.size(), 0);
      for (int y = 0; y < space.size(); ++y) {
        if (!current[static_cast<std::size_t>(y)]) continue;
        for (int alpha = 0; alpha < space.q(); ++alpha) next[static_cast<std::size_t>(space.add(y, space.scale(alpha, x)))] = 1;
      }
      columns.push_back(space.vector_at(x));
      spans.push_back(std::move(next));
      rec();
      spans.pop_back();
      columns.pop_back();
    }
  };
  rec();
}

std::vector<Matrix> enumerate_gl(const VectorSpace& space) {
  std::vector<Matrix> out;
  for_each_gl(space, [&](const Matrix& m) { out.push_back(m); });
  return out;
}

std::vector<SemilinearMap> enumerate_gammaL(const VectorSpace& space) {
  if (group_order_gammaL(space) > kMaxGroupEnumeration) {
    fail(ErrorKind::SizeExceeded, "|ΓL| = " + std::to_string(group_order_gammaL(space)) + " exceeds 10^6");
  }
  const auto gl = enumerate_gl(space);
  std::vector<SemilinearMap> out;
  for (const auto aut : space.field().automorphisms()) {
    for (const auto& m : gl) out.push_back({aut, m});
  }
  return out;
}

}  // namespace toplat

#include "toplat/lattice_core.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>

#include "toplat/error.hpp"

namespace toplat {
namespace {

std::size_t popcount_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::size_t total = 0;
  for (std::size_t w = 0; w < a.size(); ++w) total += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
  return total;
}

std::string pair_name(std::size_t a, std::size_t b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

// Lexicographic order so both search strategies report identical lists.
void sort_maps(std::vector<std::vector<std::size_t>>& maps) { std::sort(maps.begin(), maps.end()); }

bool is_order_iso(const FiniteLattice& source, const FiniteLattice& target, std::span<const std::size_t> map) {
  const std::size_t n = source.size();
  if (target.size() != n || map.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (std::size_t v : map) {
    if (v >= n || hit[v]) return false;
    hit[v] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (source.leq(i, j) != target.leq(map[i], map[j])) return false;
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------- FiniteLattice

FiniteLattice FiniteLattice::assemble(std::size_t size, const Order& leq) {
  if (size == 0) fail(ErrorKind::InvalidArgument, "a lattice needs at least one element");
  FiniteLattice lattice;
  lattice.up_ = BitMatrix(size);
  lattice.down_ = BitMatrix(size);
  lattice.up_count_.assign(size, 0);
  lattice.down_count_.assign(size, 0);
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) {
      if (leq(a, b)) {
        lattice.up_.set(a, b);
        lattice.down_.set(b, a);
        ++lattice.up_count_[a];
        ++lattice.down_count_[b];
      }
    }
  }
  return lattice;
}

FiniteLattice FiniteLattice::build(std::size_t size, const Order& leq) {
  if (size * size > kMaxValidatedPairs) {
    fail(ErrorKind::SizeExceeded, std::to_string(size) + " elements exceed the validation budget of 10^6 pairs");
  }
  FiniteLattice lattice = assemble(size, leq);
  for (std::size_t a = 0; a < size; ++a) {
    if (!lattice.leq(a, a)) fail(ErrorKind::NotAPartialOrder, "not reflexive at " + std::to_string(a));
    for (std::size_t b = a + 1; b < size; ++b) {
      if (lattice.leq(a, b) && lattice.leq(b, a)) {
        fail(ErrorKind::NotAPartialOrder, "not antisymmetric at " + pair_name(a, b));
      }
    }
  }
  for (std::size_t a = 0; a < size; ++a) {
    const auto row_a = lattice.up_.row(a);
    for (std::size_t b = 0; b < size; ++b) {
      if (!lattice.leq(a, b)) continue;
      const auto row_b = lattice.up_.row(b);
      for (std::size_t w = 0; w < row_a.size(); ++w) {
        if ((row_b[w] & ~row_a[w]) != 0) {
          const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(row_b[w] & ~row_a[w]));
          fail(ErrorKind::NotAPartialOrder,
               "not transitive: " + std::to_string(a) + " <= " + std::to_string(b) + " <= " + std::to_string(c));
        }
      }
    }
  }
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = a; b < size; ++b) {
      if (!lattice.find_meet(a, b)) fail(ErrorKind::MeetJoinMissing, "no meet for " + pair_name(a, b));
      if (!lattice.find_join(a, b)) fail(ErrorKind::MeetJoinMissing, "no join for " + pair_name(a, b));
    }
  }
  lattice.memoize();
  return lattice;
}

FiniteLattice FiniteLattice::trusted(std::size_t size, const Order& leq) {
  FiniteLattice lattice = assemble(size, leq);
  lattice.memoize();
  return lattice;
}

void FiniteLattice::memoize() {
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a) {
    if (down_count_[a] == 1) bottom_ = a;
    if (up_count_[a] == 1) top_ = a;
  }
  atoms_.clear();
  for (std::size_t a = 0; a < n; ++a) {
    if (down_count_[a] == 2) atoms_.push_back(a);
  }
  if (n > kMaxMemoized) return;
  meet_table_.assign(n * n, 0);
  join_table_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      const auto m = static_cast<std::uint32_t>(find_meet(a, b).value_or(0));
      const auto j = static_cast<std::uint32_t>(find_join(a, b).value_or(0));
      meet_table_[a * n + b] = meet_table_[b * n + a] = m;
      join_table_[a * n + b] = join_table_[b * n + a] = j;
    }
  }
}

std::optional<std::size_t> FiniteLattice::find_meet(std::size_t a, std::size_t b) const {
  // the meet is the common lower bound whose own down-set is all of them
  const auto ra = down_.row(a), rb = down_.row(b);
  const std::size_t common = popcount_and(ra, rb);
  for (std::size_t w = 0; w < ra.size(); ++w) {
    for (std::uint64_t bits = ra[w] & rb[w]; bits != 0; bits &= bits - 1) {
      const std::size_t m = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      if (down_count_[m] == common) return m;
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> FiniteLattice::find_join(std::size_t a, std::size_t b) const {
  const auto ra = up_.row(a), rb = up_.row(b);
  const std::size_t common = popcount_and(ra, rb);
  for (std::size_t w = 0; w < ra.size(); ++w) {
    for (std::uint64_t bits = ra[w] & rb[w]; bits != 0; bits &= bits - 1) {
      const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      if (up_count_[j] == common) return j;
    }
  }
  return std::nullopt;
}

std::size_t FiniteLattice::meet(std::size_t a, std::size_t b) const {
  if (!meet_table_.empty()) return meet_table_[a * size() + b];
  auto m = find_meet(a, b);
  if (!m) fail(ErrorKind::MeetJoinMissing, "no meet for " + pair_name(a, b));
  return *m;
}

std::size_t FiniteLattice::join(std::size_t a, std::size_t b) const {
  if (!join_table_.empty()) return join_table_[a * size() + b];
  auto j = find_join(a, b);
  if (!j) fail(ErrorKind::MeetJoinMissing, "no join for " + pair_name(a, b));
  return *j;
}

bool FiniteLattice::is_atomic() const {
  for (std::size_t e = 0; e < size(); ++e) {
    std::size_t acc = bottom_;
    for (std::size_t a : atoms_) {
      if (leq(a, e)) acc = join(acc, a);
    }
    if (acc != e) return false;
  }
  return true;
}

std::vector<std::size_t> FiniteLattice::covers(std::size_t a) const {
  std::vector<std::size_t> out;
  const auto ra = up_.row(a);
  for (std::size_t w = 0; w < ra.size(); ++w) {
    for (std::uint64_t bits = ra[w]; bits != 0; bits &= bits - 1) {
      const std::size_t b = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      if (b != a && popcount_and(ra, down_.row(b)) == 2) out.push_back(b);
    }
  }
  return out;
}

LatticeIsoTable make_iso_table(std::shared_ptr<const FiniteLattice> source,
                               std::shared_ptr<const FiniteLattice> target, std::vector<std::size_t> map) {
  if (!source || !target) fail(ErrorKind::InvalidArgument, "iso table needs both lattices");
  if (!is_order_iso(*source, *target, map)) {
    fail(ErrorKind::NotALatticeIso, "map is not an order-preserving bijection with order-preserving inverse");
  }
  return LatticeIsoTable{std::move(source), std::move(target), std::move(map)};
}

// ---------------------------------------------------------------- Σ(n)

std::size_t SigmaLattice::index_of(const FinTopology& t) const {
  auto it = index.find(t.family_bits());
  if (it == index.end()) fail(ErrorKind::InvalidArgument, "topology is not an element of Σ(" + std::to_string(n) + ")");
  return it->second;
}

SigmaLattice sigma_lattice(int n) {
  if (n < 1 || n > 5) fail(ErrorKind::SizeExceeded, "Σ(n) is materialized for n in 1..5 only");
  SigmaLattice sigma;
  sigma.n = n;
  sigma.elements = enumerate_topologies(n);
  std::vector<std::uint64_t> families;
  families.reserve(sigma.elements.size());
  for (std::size_t i = 0; i < sigma.elements.size(); ++i) {
    families.push_back(sigma.elements[i].family_bits());
    sigma.index.emplace(families.back(), i);
  }
  auto inclusion = [&](std::size_t a, std::size_t b) { return (families[a] & ~families[b]) == 0; };
  const std::size_t size = sigma.elements.size();
  sigma.lattice = std::make_shared<const FiniteLattice>(
      size * size <= FiniteLattice::kMaxValidatedPairs ? FiniteLattice::build(size, inclusion)
                                                       : FiniteLattice::trusted(size, inclusion));
  return sigma;
}

// ---------------------------------------------------------------- atom types

AtomProfile profile_atom(Mask mask, int n) {
  (void)atom(mask, n);  // range and properness checks
  const int size = std::popcount(mask);
  AtomClass klass = AtomClass::L;
  if (size == 1) {
    klass = AtomClass::N;
  } else if (size == n - 1) {
    klass = AtomClass::M;
  }
  return AtomProfile{mask, n, klass};
}

int type_of(const AtomProfile& p, const AtomProfile& q) {
  if (p.n != q.n) fail(ErrorKind::GroundMismatch, "atoms live on different ground sets");
  if (p.n < 3) fail(ErrorKind::InvalidArgument, "the type function needs at least 3 points");
  if (p.mask == q.mask) fail(ErrorKind::EqualAtoms, "type is defined for distinct atoms, got " + mask_to_string(p.mask) + " twice");
  const Mask full = full_mask(p.n);
  std::array<Mask, 4> candidates{p.mask & q.mask, p.mask, q.mask, p.mask | q.mask};
  std::sort(candidates.begin(), candidates.end());
  int count = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (i > 0 && candidates[i] == candidates[i - 1]) continue;
    if (candidates[i] != 0 && candidates[i] != full) ++count;
  }
  return count;
}

int type_of_generic(const AtomProfile& p, const AtomProfile& q) {
  if (p.n != q.n) fail(ErrorKind::GroundMismatch, "atoms live on different ground sets");
  if (p.mask == q.mask) fail(ErrorKind::EqualAtoms, "type is defined for distinct atoms");
  const FinTopology j = join(atom(p.mask, p.n), atom(q.mask, q.n));
  int count = 0;
  for (Mask d = 1; d < full_mask(p.n); ++d) {
    if (atom(d, p.n).is_coarser_than(j)) ++count;
  }
  return count;
}

int lattice_type(const FiniteLattice& lattice, std::size_t a, std::size_t b) {
  const std::size_t j = lattice.join(a, b);
  int count = 0;
  for (std::size_t atom_index : lattice.atoms()) {
    if (lattice.leq(atom_index, j)) ++count;
  }
  return count;
}

std::vector<int> allowed_types(AtomClass p, AtomClass q) {
  if (p == AtomClass::L && q == AtomClass::L) return {2, 3, 4};
  if (p == AtomClass::L || q == AtomClass::L) return {2, 3};
  return p == q ? std::vector<int>{3} : std::vector<int>{2};
}

std::string to_string(AtomClass klass) {
  switch (klass) {
    case AtomClass::N: return "n";
    case AtomClass::M: return "m";
    case AtomClass::L: return "l";
  }
  return "?";
}

TypeCensus type_census(int n) {
  if (n < 3 || n > kMaxGround) fail(ErrorKind::InvalidArgument, "type census needs 3 <= n <= 9");
  TypeCensus c;
  c.n = n;
  c.within_allowed = c.symmetric = c.closed_form_matches_generic = c.closed_form_matches_lattice = true;
  std::vector<AtomProfile> atoms;
  for (Mask d = 1; d < full_mask(n); ++d) atoms.push_back(profile_atom(d, n));
  std::optional<SigmaLattice> sigma;
  if (n <= 4) sigma = sigma_lattice(n);
  std::vector<bool> has_four(atoms.size(), false);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      if (i == j) continue;
      const int t = type_of(atoms[i], atoms[j]);
      if (t != type_of(atoms[j], atoms[i])) c.symmetric = false;
      if (n <= 5 && t != type_of_generic(atoms[i], atoms[j])) c.closed_form_matches_generic = false;
      if (sigma) {
        const auto a = sigma->index_of(atom(atoms[i].mask, n));
        const auto b = sigma->index_of(atom(atoms[j].mask, n));
        if (t != lattice_type(*sigma->lattice, a, b)) c.closed_form_matches_lattice = false;
      }
      auto& cell = c.realized[static_cast<std::size_t>(atoms[i].klass)][static_cast<std::size_t>(atoms[j].klass)];
      if (std::find(cell.begin(), cell.end(), t) == cell.end()) {
        cell.insert(std::upper_bound(cell.begin(), cell.end(), t), t);
      }
      const auto allowed = allowed_types(atoms[i].klass, atoms[j].klass);
      if (std::find(allowed.begin(), allowed.end(), t) == allowed.end()) c.within_allowed = false;
      if (t == 4 && atoms[j].klass == AtomClass::L) has_four[i] = true;
    }
  }
  c.l_atoms_have_type4_partner = true;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].klass == AtomClass::L && !has_four[i]) c.l_atoms_have_type4_partner = false;
  }
  return c;
}

AtomPartition classify_atoms_intrinsic(std::span<const std::size_t> atoms,
                                       const std::function<int(std::size_t, std::size_t)>& type) {
  const std::size_t m = atoms.size();
  std::vector<int> table(m * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) table[i * m + j] = table[j * m + i] = type(atoms[i], atoms[j]);
  }
  AtomPartition out;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < m; ++i) {
    bool has_four = false;
    for (std::size_t j = 0; j < m; ++j) has_four = has_four || (j != i && table[i * m + j] == 4);
    if (has_four) {
      out.l_set.push_back(atoms[i]);
    } else {
      rest.push_back(i);
    }
  }
  if (rest.empty()) fail(ErrorKind::ClassificationFailed, "every atom has a type-4 partner");
  const std::size_t anchor = rest.front();
  std::vector<std::size_t> a_pos{anchor}, b_pos;
  for (std::size_t k = 1; k < rest.size(); ++k) {
    (table[anchor * m + rest[k]] == 3 ? a_pos : b_pos).push_back(rest[k]);
  }
  auto all_pairs = [&](const std::vector<std::size_t>& x, const std::vector<std::size_t>& y, int want) {
    for (std::size_t i : x) {
      for (std::size_t j : y) {
        if (i != j && table[i * m + j] != want) return false;
      }
    }
    return true;
  };
  if (b_pos.empty() || a_pos.size() != b_pos.size() || !all_pairs(a_pos, a_pos, 3) || !all_pairs(b_pos, b_pos, 3) ||
      !all_pairs(a_pos, b_pos, 2)) {
    fail(ErrorKind::ClassificationFailed, "atoms without a type-4 partner do not split into two type-3 cliques");
  }
  for (std::size_t i : a_pos) out.clique_a.push_back(atoms[i]);
  for (std::size_t i : b_pos) out.clique_b.push_back(atoms[i]);
  return out;
}

// ---------------------------------------------------------------- automorphisms

namespace {

class AtomAnchoredSearch {
 public:
  explicit AtomAnchoredSearch(const FiniteLattice& lattice)
      : lattice_(lattice), atoms_(lattice.atoms().begin(), lattice.atoms().end()), m_(atoms_.size()) {
    below_.assign(m_ * m_ * m_, false);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) {
        const std::size_t top = lattice_.join(atoms_[i], atoms_[j]);
        for (std::size_t k = 0; k < m_; ++k) below_[(i * m_ + j) * m_ + k] = lattice_.leq(atoms_[k], top);
      }
    }
    image_.assign(m_, 0);
    used_.assign(m_, false);
  }

  std::vector<std::vector<std::size_t>> run() {
    assign(0);
    return std::move(found_);
  }

 private:
  bool below(std::size_t i, std::size_t j, std::size_t k) const { return below_[(i * m_ + j) * m_ + k]; }

  bool consistent(std::size_t i, std::size_t c) const {
    image_[i] = c;
    for (std::size_t j = 0; j < i; ++j) {
      for (std::size_t k = 0; k <= i; ++k) {
        if (below(i, j, k) != below(c, image_[j], image_[k])) return false;
        if (below(j, k, i) != below(image_[j], image_[k], c)) return false;
      }
    }
    return true;
  }

  void assign(std::size_t i) {
    if (i == m_) {
      extend();
      return;
    }
    for (std::size_t c = 0; c < m_; ++c) {
      if (used_[c] || !consistent(i, c)) continue;
      used_[c] = true;
      assign(i + 1);
      used_[c] = false;
    }
  }

  void extend() {
    const std::size_t n = lattice_.size();
    std::vector<std::size_t> map(n);
    for (std::size_t e = 0; e < n; ++e) {
      std::size_t acc = lattice_.bottom();
      for (std::size_t k = 0; k < m_; ++k) {
        if (lattice_.leq(atoms_[k], e)) acc = lattice_.join(acc, atoms_[image_[k]]);
      }
      map[e] = acc;
    }
    if (is_order_iso(lattice_, lattice_, map)) found_.push_back(std::move(map));
  }

  const FiniteLattice& lattice_;
  std::vector<std::size_t> atoms_;
  std::size_t m_;
  std::vector<bool> below_;
  mutable std::vector<std::size_t> image_;
  std::vector<bool> used_;
  std::vector<std::vector<std::size_t>> found_;
};

class ElementSearch {
 public:
  explicit ElementSearch(const FiniteLattice& lattice) : lattice_(lattice), n_(lattice.size()) {
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return lattice_.down_count(a) < lattice_.down_count(b); });
    image_.assign(n_, 0);
    used_.assign(n_, false);
  }

  std::vector<std::vector<std::size_t>> run() {
    assign(0);
    return std::move(found_);
  }

 private:
  void assign(std::size_t depth) {
    if (depth == n_) {
      found_.push_back(image_);
      return;
    }
    const std::size_t e = order_[depth];
    for (std::size_t c = 0; c < n_; ++c) {
      if (used_[c] || lattice_.down_count(c) != lattice_.down_count(e) || lattice_.up_count(c) != lattice_.up_count(e)) {
        continue;
      }
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const std::size_t f = order_[d];
        ok = lattice_.leq(e, f) == lattice_.leq(c, image_[f]) && lattice_.leq(f, e) == lattice_.leq(image_[f], c);
      }
      if (!ok) continue;
      image_[e] = c;
      used_[c] = true;
      assign(depth + 1);
      used_[c] = false;
    }
  }

  const FiniteLattice& lattice_;
  std::size_t n_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> image_;
  std::vector<bool> used_;
  std::vector<std::vector<std::size_t>> found_;
};

void check_automorphism_budget(const FiniteLattice& lattice) {
  if (lattice.size() > kMaxAutomorphismLattice) {
    fail(ErrorKind::SizeExceeded, "automorphism search is limited to 512 elements, got " + std::to_string(lattice.size()));
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> enumerate_automorphisms(const FiniteLattice& lattice) {
  check_automorphism_budget(lattice);
  auto maps = lattice.is_atomic() ? AtomAnchoredSearch(lattice).run() : ElementSearch(lattice).run();
  sort_maps(maps);
  return maps;
}

std::vector<std::vector<std::size_t>> enumerate_automorphisms_brute(const FiniteLattice& lattice) {
  check_automorphism_budget(lattice);
  auto maps = ElementSearch(lattice).run();
  sort_maps(maps);
  return maps;
}

}  // namespace toplat

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "toplat/finset_topology.hpp"

namespace toplat {

/// Square boolean matrix with word-packed rows.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n_ * words_, 0) {}

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }
  bool test(std::size_t i, std::size_t j) const { return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u; }
  void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }
  std::span<const std::uint64_t> row(std::size_t i) const { return {bits_.data() + i * words_, words_}; }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// A finite lattice on element indices 0..size-1.
class FiniteLattice {
 public:
  static constexpr std::size_t kMaxValidatedPairs = 1'000'000;
  static constexpr std::size_t kMaxMemoized = 2048;

  using Order = std::function<bool(std::size_t, std::size_t)>;

  /// Checks the partial-order axioms and that every pair has a meet and a join.
  /// Throws NotAPartialOrder or MeetJoinMissing naming the offending elements,
  /// SizeExceeded above 10^6 pairs.
  static FiniteLattice build(std::size_t size, const Order& leq);
  /// For orders known to be lattices by construction (inclusion on Σ(n)); no checks.
  static FiniteLattice trusted(std::size_t size, const Order& leq);

  std::size_t size() const { return up_.size(); }
  bool leq(std::size_t a, std::size_t b) const { return up_.test(a, b); }
  std::size_t bottom() const { return bottom_; }
  std::size_t top() const { return top_; }
  std::size_t meet(std::size_t a, std::size_t b) const;
  std::size_t join(std::size_t a, std::size_t b) const;
  std::size_t up_count(std::size_t a) const { return up_count_[a]; }
  std::size_t down_count(std::size_t a) const { return down_count_[a]; }
  /// Elements covering the bottom, ascending.
  std::span<const std::size_t> atoms() const { return atoms_; }
  bool is_atomic() const;
  /// Immediate successors of `a`.
  std::vector<std::size_t> covers(std::size_t a) const;

 private:
  FiniteLattice() = default;
  static FiniteLattice assemble(std::size_t size, const Order& leq);
  std::optional<std::size_t> find_meet(std::size_t a, std::size_t b) const;
  std::optional<std::size_t> find_join(std::size_t a, std::size_t b) const;
  void memoize();

  BitMatrix up_;    // up_[a][b]   <=>  a <= b
  BitMatrix down_;  // down_[a][b] <=>  b <= a
  std::vector<std::size_t> up_count_, down_count_;
  std::size_t bottom_ = 0, top_ = 0;
  std::vector<std::size_t> atoms_;
  std::vector<std::uint32_t> meet_table_, join_table_;
};

/// An order isomorphism between two finite lattices; map[i] is the image of i.
struct LatticeIsoTable {
  std::shared_ptr<const FiniteLattice> source;
  std::shared_ptr<const FiniteLattice> target;
  std::vector<std::size_t> map;
};

/// Throws NotALatticeIso unless map is a bijection preserving and reflecting the order.
LatticeIsoTable make_iso_table(std::shared_ptr<const FiniteLattice> source,
                               std::shared_ptr<const FiniteLattice> target, std::vector<std::size_t> map);

/// Σ(n) materialized: the enumerated topologies, their inclusion lattice and a reverse index.
struct SigmaLattice {
  int n = 0;
  std::vector<FinTopology> elements;
  std::shared_ptr<const FiniteLattice> lattice;
  std::unordered_map<std::uint64_t, std::size_t> index;

  std::size_t index_of(const FinTopology& t) const;
};

/// n in 1..5. Σ(1)..Σ(4) go through full validation; Σ(5) is built trusted.
SigmaLattice sigma_lattice(int n);

enum class AtomClass { N, M, L };

/// Atom A(D) of Σ(n) together with its cardinality class.
struct AtomProfile {
  Mask mask = 0;
  int n = 0;
  AtomClass klass = AtomClass::L;
};

AtomProfile profile_atom(Mask mask, int n);

/// Number of atoms below A(Dp) ∨ A(Dq), from the masks Dp∩Dq, Dp, Dq, Dp∪Dq.
int type_of(const AtomProfile& p, const AtomProfile& q);
/// Same count, by materializing the join and counting its proper opens.
int type_of_generic(const AtomProfile& p, const AtomProfile& q);
/// Type computed from lattice data only: atoms below join(a, b).
int lattice_type(const FiniteLattice& lattice, std::size_t a, std::size_t b);

/// Values the type may take for atoms of the given classes (n >= 3).
std::vector<int> allowed_types(AtomClass p, AtomClass q);

/// Realized type values over all atom pairs on n points, per class pair.
struct TypeCensus {
  int n = 0;
  std::array<std::array<std::vector<int>, 3>, 3> realized;  // [class p][class q], ascending
  bool within_allowed = false;
  bool symmetric = false;
  bool l_atoms_have_type4_partner = false;
  bool closed_form_matches_generic = false;  // only checked when n <= 5
  bool closed_form_matches_lattice = false;  // only checked when n <= 4
};

/// Exhaustive over ordered pairs of distinct atoms; 3 <= n <= 9.
TypeCensus type_census(int n);
std::string to_string(AtomClass klass);

/// Atoms split by type structure alone. `l_set` holds the atoms with a
/// type-4 partner; the remaining atoms form two cliques of mutual type 3
/// joined by type-2 pairs. The cliques are unlabeled.
struct AtomPartition {
  std::vector<std::size_t> l_set;
  std::vector<std::size_t> clique_a;
  std::vector<std::size_t> clique_b;
};

AtomPartition classify_atoms_intrinsic(std::span<const std::size_t> atoms,
                                       const std::function<int(std::size_t, std::size_t)>& type);

inline constexpr std::size_t kMaxAutomorphismLattice = 512;

/// All order automorphisms. Atomic lattices are searched over atom images
/// (pruned by join structure) and extended by suprema; others by plain
/// element backtracking. Throws SizeExceeded above 512 elements.
std::vector<std::vector<std::size_t>> enumerate_automorphisms(const FiniteLattice& lattice);
/// Element-by-element backtracking with order checks only; the oracle for the above.
std::vector<std::vector<std::size_t>> enumerate_automorphisms_brute(const FiniteLattice& lattice);

}  // namespace toplat

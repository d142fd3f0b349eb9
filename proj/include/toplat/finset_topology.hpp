#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace toplat {

/// Subset of a ground set of at most 9 points; bit i is point i.
using Mask = std::uint32_t;
/// Subset of a ground set of at most 64 points.
using WideMask = std::uint64_t;

inline constexpr int kMaxGround = 9;
inline constexpr int kMaxWideGround = 64;
inline constexpr int kMaxEnumerate = 7;

inline constexpr Mask full_mask(int n) { return (Mask{1} << n) - 1; }
inline constexpr WideMask wide_full_mask(int n) {
  return n == 64 ? ~WideMask{0} : (WideMask{1} << n) - 1;
}

/// "{0,2,3}" style rendering, for error messages and DOT labels.
std::string mask_to_string(WideMask mask);

/// Permutation of the points 0..n-1.
class Bijection {
 public:
  /// Throws InvalidArgument unless `image` is a permutation of 0..size-1.
  explicit Bijection(std::vector<int> image);
  static Bijection identity(int n);
  static Bijection swap(int n, int a, int b);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int point) const { return image_[static_cast<std::size_t>(point)]; }
  WideMask apply(WideMask subset) const;
  Bijection inverse() const;
  /// (*this ∘ inner)(x) = (*this)(inner(x)).
  Bijection after(const Bijection& inner) const;
  std::span<const int> image() const { return image_; }

  bool operator==(const Bijection&) const = default;
  auto operator<=>(const Bijection&) const = default;

 private:
  std::vector<int> image_;
};

/// A topology on {0..n-1}, n <= 9, held as its strictly ascending list of open masks.
class FinTopology {
 public:
  static FinTopology indiscrete(int n);
  static FinTopology discrete(int n);
  /// The caller guarantees `opens` is strictly ascending and a valid topology.
  static FinTopology from_canonical(int n, std::vector<Mask> opens);

  int ground_size() const { return n_; }
  Mask full() const { return full_mask(n_); }
  std::span<const Mask> opens() const { return opens_; }
  std::size_t size() const { return opens_.size(); }
  bool is_open(Mask subset) const;
  /// Inclusion of open families: every open of *this is open in `finer`.
  bool is_coarser_than(const FinTopology& finer) const;
  /// Bit A of the result is set iff A is open; requires n <= 6.
  std::uint64_t family_bits() const;

  bool operator==(const FinTopology&) const = default;

 private:
  FinTopology(int n, std::vector<Mask> opens) : n_(n), opens_(std::move(opens)) {}

  int n_ = 0;
  std::vector<Mask> opens_;
};

/// A topology on up to 64 points held as the smallest open set around each
/// point (its specialization preorder). Used where the open family is too
/// large to list.
class NbhdTopology {
 public:
  /// Throws InvalidArgument unless hulls[x] contains x and
  /// y in hulls[x] implies hulls[y] is a subset of hulls[x].
  explicit NbhdTopology(std::vector<WideMask> hulls);
  static NbhdTopology from(const FinTopology& topology);
  static NbhdTopology discrete(int n);
  static NbhdTopology indiscrete(int n);
  /// Topology generated by the given sets as a subbase.
  static NbhdTopology generated_by(int n, std::span<const WideMask> subbase);

  int ground_size() const { return static_cast<int>(hulls_.size()); }
  WideMask hull(int point) const { return hulls_[static_cast<std::size_t>(point)]; }
  std::span<const WideMask> hulls() const { return hulls_; }
  bool is_open(WideMask subset) const;
  bool is_discrete() const;
  bool is_coarser_than(const NbhdTopology& finer) const;
  /// Explicit open family; requires n <= 9.
  FinTopology to_fin() const;

  bool operator==(const NbhdTopology&) const = default;
  auto operator<=>(const NbhdTopology&) const = default;

 private:
  std::vector<WideMask> hulls_;
};

FinTopology validate_topology(int n, std::span<const Mask> family);

FinTopology meet(const FinTopology& a, const FinTopology& b);
/// Pairwise union/intersection closure of both families, run to a fixpoint.
FinTopology join(const FinTopology& a, const FinTopology& b);
FinTopology complement_map(const FinTopology& t);
FinTopology pushforward(const Bijection& theta, const FinTopology& t);
FinTopology pullback(const Bijection& theta, const FinTopology& t);

NbhdTopology meet(const NbhdTopology& a, const NbhdTopology& b);
NbhdTopology join(const NbhdTopology& a, const NbhdTopology& b);
NbhdTopology complement_map(const NbhdTopology& t);
NbhdTopology pushforward(const Bijection& theta, const NbhdTopology& t);

FinTopology atom(Mask subset, int n);
std::vector<FinTopology> atoms_of_sigma(int n);
bool is_atom(const FinTopology& t);
/// Join of a list of atoms on n points; the empty list gives the indiscrete topology.
FinTopology sup_atoms(int n, std::span<const FinTopology> atoms);

struct EnumerationOptions {
  bool allow_seven = false;
  unsigned threads = 1;
};

/// Visits every topology on n points exactly once, in a fixed order that
/// starts at the indiscrete and ends at the discrete topology. Topologies are
/// built point by point as their minimal-neighbourhood maps.
void for_each_topology(int n, const std::function<void(const FinTopology&)>& visit,
                       const EnumerationOptions& options = {});
/// Same traversal, yielding the minimal neighbourhoods only.
void for_each_preorder(int n, const std::function<void(std::span<const Mask>)>& visit,
                       const EnumerationOptions& options = {});
std::vector<FinTopology> enumerate_topologies(int n, const EnumerationOptions& options = {});
std::uint64_t count_topologies(int n, const EnumerationOptions& options = {});

}  // namespace toplat

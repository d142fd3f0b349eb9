#pragma once

#include <memory>
#include <vector>

#include "toplat/finset_topology.hpp"
#include "toplat/linear.hpp"

namespace toplat {

/// A topology on the points of a vector space (at most 64 points).
struct VectorTopology {
  std::shared_ptr<const VectorSpace> space;
  NbhdTopology topology;
};

/// The discrete topology, the largest vector topology over a finite field.
NbhdTopology t_max(const VectorSpace& space);
/// Unions of S-cosets: the hull of x is x + S.
NbhdTopology frak_t(const VectorSpace& space, const Subspace& s);
/// Intersection of the opens around 0. Throws NotASubspace when that set is not a subspace.
Subspace frak_s(const VectorSpace& space, const NbhdTopology& t);
Subspace frak_s(const VectorSpace& space, const FinTopology& t);

/// Continuity of addition and scalar multiplication, checked on minimal neighbourhoods:
/// U(x)+U(y) ⊆ U(x+y) and α·U(x) ⊆ U(α·x).
bool is_vector_topology(const VectorSpace& space, const NbhdTopology& t);
/// The same property checked literally over open sets: for every open W and
/// every x+y ∈ W some opens U ∋ x, V ∋ y have U+V ⊆ W, and likewise for α·x.
/// Requires at most 9 points.
bool is_vector_topology_literal(const VectorSpace& space, const FinTopology& t);

enum class CensusMode {
  /// Filter every topology on the point set (at most 5 points).
  Census,
  /// frak_t of every subspace.
  Image,
  /// Topology generated by the translates of each N ∋ 0, filtered (at most 16 points).
  Translates,
};

/// Sorted by hull vector. Throws BudgetExceeded when the mode does not fit the space.
std::vector<NbhdTopology> enumerate_vector_topologies(const VectorSpace& space, CensusMode mode,
                                                      unsigned threads = 1);

/// Pushforward of t along x ↦ x + S. Cosets are numbered by their least point.
struct QuotientTopology {
  std::vector<int> coset_of;  // point -> coset number
  NbhdTopology topology;
};
QuotientTopology quotient_pushforward(const VectorSpace& space, const Subspace& s, const NbhdTopology& t);

struct GaloisReport {
  std::size_t subspaces = 0;
  std::size_t vector_topologies = 0;
  CensusMode tau_source = CensusMode::Image;
  bool tau_matches_image = false;
  bool s_after_t_is_identity = false;     // frak_s(frak_t(S)) = S
  bool t_below_t_after_s = false;         // T ⊆ frak_t(frak_s(T))
  bool t_after_s_is_identity = false;     // equality in the line above
  bool zero_iff_discrete = false;         // frak_s(T) = {0} ⇔ T discrete
  bool adjunction = false;                // S ⊆ frak_s(T) ⇔ T ⊆ frak_t(S)
  bool antitone = false;
  bool complement_fixes_tau = false;
  bool discrete_is_max = false;
  bool sigma_meet_stays_in_tau = false;
  bool sigma_join_stays_in_tau = false;
  bool meet_is_t_of_sum = false;          // frak_t(S1) ∧ frak_t(S2) = frak_t(S1 + S2)
  bool join_is_t_of_intersection = false; // frak_t(S1) ∨ frak_t(S2) = frak_t(S1 ∩ S2)

  bool pass() const;
};

/// Exhaustive check of the connection on one space. τ comes from the
/// translates census when the space has at most 16 points, else from the image.
GaloisReport verify_galois(const VectorSpace& space, unsigned threads = 1);

}  // namespace toplat

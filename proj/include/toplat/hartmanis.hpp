#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "toplat/finset_topology.hpp"
#include "toplat/lattice_core.hpp"

namespace toplat {

/// The point bijection behind a lattice isomorphism of Σ(n), and whether the
/// complement map has to be applied on top of its pushforward.
struct ReconstructionResult {
  Bijection theta;
  bool uses_complement = false;

  bool operator==(const ReconstructionResult&) const = default;
};

/// Index table of T ↦ C^flag(θ_*(T)) on the enumerated Σ(n).
std::vector<std::size_t> induced_sigma_table(const SigmaLattice& sigma, const Bijection& theta, bool complement);

/// Builds a full index table by querying an isomorphism one topology at a time.
std::vector<std::size_t> table_from_oracle(const SigmaLattice& sigma,
                                           const std::function<FinTopology(const FinTopology&)>& oracle);

/// Recovers (θ, flag) from an automorphism table of the enumerated Σ(n), 2 <= n <= 5.
///
/// Atoms are located and split by the lattice-intrinsic type function into
/// the type-4 atoms and two unlabeled cliques. The clique holding the
/// singleton atoms is first assumed to land on the target singletons, which
/// defines θ through Θ(A({x})) = A({θ(x)}); the guess is then checked on
/// every element. If it fails the same is tried for C∘Θ.
///
/// Throws NotALatticeIso if the table is not an order automorphism,
/// NoConsistentBijection if neither pass verifies, InvalidArgument for n = 1.
ReconstructionResult reconstruct_bijection(const SigmaLattice& sigma, std::span<const std::size_t> table);

}  // namespace toplat

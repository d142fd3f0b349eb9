#pragma once

#include <memory>
#include <vector>

#include "toplat/finset_topology.hpp"
#include "toplat/linear.hpp"

namespace toplat {

/// A lattice isomorphism between the enumerated subspace lattices of two spaces.
struct SubspaceIsoTable {
  std::shared_ptr<const VectorSpace> source, target;
  std::vector<Subspace> source_subspaces, target_subspaces;  // enumerate_subspaces order
  std::vector<std::size_t> map;
  /// offsets[r] is the first index of dimension r; offsets[dim + 1] is the total.
  std::vector<std::size_t> offsets;
};

/// Throws NotALatticeIso unless `map` is a bijection that preserves and reflects
/// inclusion and preserves dimension.
SubspaceIsoTable make_subspace_iso_table(std::shared_ptr<const VectorSpace> source,
                                         std::shared_ptr<const VectorSpace> target, std::vector<std::size_t> map);

/// S ↦ φ(S).
SubspaceIsoTable induced_subspace_iso(std::shared_ptr<const VectorSpace> space, const SemilinearMap& phi);

struct FtpgResult {
  FieldAut psi;
  SemilinearMap map;
};

/// Coordinatizes the table: f_1 is the least nonzero point of the image of ⟨e_1⟩,
/// f_i the point of the image of ⟨e_i⟩ with f_1 + f_i in the image of ⟨e_1 + e_i⟩,
/// and ψ(α) is read from the image of ⟨e_1 + α e_2⟩. Throws DimensionTooSmall below
/// dimension 3 and NotInducible when the resulting map does not reproduce the table.
FtpgResult ftpg_reconstruct(const SubspaceIsoTable& table);

/// A lattice isomorphism between the vector-topology lattices of two spaces,
/// over their image-mode lists (sorted by hulls).
struct TauIsoTable {
  std::shared_ptr<const VectorSpace> source, target;
  std::vector<NbhdTopology> source_tau, target_tau;
  std::vector<std::size_t> map;
};

/// Throws NotALatticeIso unless `map` is an order isomorphism.
TauIsoTable make_tau_iso_table(std::shared_ptr<const VectorSpace> source, std::shared_ptr<const VectorSpace> target,
                               std::vector<std::size_t> map);
/// T ↦ C^complement(θ_*(T)) for the point map of an affine semilinear map.
TauIsoTable induced_tau_table(std::shared_ptr<const VectorSpace> space, const AffineSemilinearMap& map,
                              bool complement);

struct GradeCheck {
  int dim = 0;
  std::size_t subspaces = 0;
  bool preserved = false;
};

struct TheoremCReport {
  int source_dim = 0;
  int target_dim = 0;
  int source_field_order = 0;
  int target_field_order = 0;
  bool hausdorff_preserved = false;
  bool hausdorff_checked = false;
  bool g_after_f_below_identity = false;
  bool f_after_g_below_identity = false;
  std::vector<GradeCheck> grades;
  bool compatible = false;  // Φ(frak_t(S)) = frak_t(F(S))
  FtpgResult reconstruction;
  bool reconstruction_reproduces = false;

  bool pass() const;
};

/// F = frak_s ∘ Φ ∘ frak_t and G = frak_s ∘ Φ⁻¹ ∘ frak_t, checked for G∘F ⊆ id,
/// F∘G ⊆ id and dimension by dimension for grading, then coordinatized.
/// Throws DimensionTooSmall, HausdorffNotPreserved, GradeViolation.
TheoremCReport theorem_c_pipeline(const TauIsoTable& table, bool hausdorff_check = true);

}  // namespace toplat

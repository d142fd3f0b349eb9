#include "toplat/hartmanis.hpp"

#include <algorithm>
#include <bit>
#include <optional>

#include "toplat/error.hpp"

namespace toplat {
namespace {

// The single point of a one-point mask, or nothing.
std::optional<int> lone_point(Mask m) {
  if (std::popcount(m) != 1) return std::nullopt;
  return std::countr_zero(m);
}

// Proper open of an atom topology {∅, D, X}.
Mask atom_mask(const FinTopology& t) { return t.opens()[1]; }

// Reads θ off the images of the singleton atoms; `co` reads them as
// co-singletons instead (the C∘Θ pass).
std::optional<Bijection> bijection_from_atoms(const SigmaLattice& sigma, std::span<const std::size_t> table, bool co) {
  const int n = sigma.n;
  std::vector<int> image(static_cast<std::size_t>(n), -1);
  std::vector<bool> hit(static_cast<std::size_t>(n), false);
  for (int x = 0; x < n; ++x) {
    const FinTopology& target = sigma.elements[table[sigma.index_of(atom(Mask{1} << x, n))]];
    if (!is_atom(target)) return std::nullopt;
    const Mask d = co ? (full_mask(n) & ~atom_mask(target)) : atom_mask(target);
    auto y = lone_point(d);
    if (!y || hit[static_cast<std::size_t>(*y)]) return std::nullopt;
    hit[static_cast<std::size_t>(*y)] = true;
    image[static_cast<std::size_t>(x)] = *y;
  }
  return Bijection(std::move(image));
}

bool verifies(const SigmaLattice& sigma, std::span<const std::size_t> table, const Bijection& theta, bool co) {
  for (std::size_t i = 0; i < sigma.elements.size(); ++i) {
    FinTopology image = pushforward(theta, sigma.elements[i]);
    if (co) image = complement_map(image);
    if (sigma.elements[table[i]] != image) return false;
  }
  return true;
}

std::vector<Mask> masks_of(const SigmaLattice& sigma, std::span<const std::size_t> atoms) {
  std::vector<Mask> out;
  for (std::size_t a : atoms) out.push_back(atom_mask(sigma.elements[a]));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::size_t> induced_sigma_table(const SigmaLattice& sigma, const Bijection& theta, bool complement) {
  return table_from_oracle(sigma, [&](const FinTopology& t) {
    FinTopology image = pushforward(theta, t);
    return complement ? complement_map(image) : image;
  });
}

std::vector<std::size_t> table_from_oracle(const SigmaLattice& sigma,
                                           const std::function<FinTopology(const FinTopology&)>& oracle) {
  std::vector<std::size_t> table;
  table.reserve(sigma.elements.size());
  for (const FinTopology& t : sigma.elements) table.push_back(sigma.index_of(oracle(t)));
  return table;
}

ReconstructionResult reconstruct_bijection(const SigmaLattice& sigma, std::span<const std::size_t> table) {
  const int n = sigma.n;
  if (n < 2) fail(ErrorKind::InvalidArgument, "reconstruction needs at least 2 points");
  (void)make_iso_table(sigma.lattice, sigma.lattice, {table.begin(), table.end()});
  const FiniteLattice& lattice = *sigma.lattice;

  if (n == 2) {
    // two atoms, A({0}) and A({1}); Θ permutes them and that is θ
    auto theta = bijection_from_atoms(sigma, table, false);
    if (theta && verifies(sigma, table, *theta, false)) return {*theta, false};
    fail(ErrorKind::NoConsistentBijection, "atom images of Σ(2) do not define θ");
  }

  auto type = [&](std::size_t a, std::size_t b) { return lattice_type(lattice, a, b); };
  const AtomPartition parts = classify_atoms_intrinsic(lattice.atoms(), type);

  std::vector<Mask> singletons;
  for (int x = 0; x < n; ++x) singletons.push_back(Mask{1} << x);
  const bool a_is_singletons = masks_of(sigma, parts.clique_a) == singletons;
  const auto& source_singletons = a_is_singletons ? parts.clique_a : parts.clique_b;
  if (masks_of(sigma, source_singletons) != singletons) {
    fail(ErrorKind::ClassificationFailed, "neither clique consists of the singleton atoms");
  }

  std::vector<std::size_t> image_of_singletons;
  for (std::size_t a : source_singletons) image_of_singletons.push_back(table[a]);
  const bool lands_on_singletons = masks_of(sigma, image_of_singletons) == singletons;

  if (lands_on_singletons) {
    if (auto theta = bijection_from_atoms(sigma, table, false); theta && verifies(sigma, table, *theta, false)) {
      return {*theta, false};
    }
  }
  if (auto theta = bijection_from_atoms(sigma, table, true); theta && verifies(sigma, table, *theta, true)) {
    return {*theta, true};
  }
  fail(ErrorKind::NoConsistentBijection, "neither Θ nor C∘Θ is induced by a point bijection");
}

}  // namespace toplat

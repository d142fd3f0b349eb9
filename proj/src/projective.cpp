#include "toplat/projective.hpp"

#include <algorithm>
#include <string>

#include "toplat/error.hpp"
#include "toplat/galois.hpp"

namespace toplat {
namespace {

std::size_t find_subspace(const std::vector<Subspace>& list, const Subspace& s) {
  const auto it = std::find(list.begin(), list.end(), s);
  if (it == list.end()) fail(ErrorKind::InvalidArgument, "subspace not in the enumerated lattice");
  return static_cast<std::size_t>(it - list.begin());
}

std::size_t find_topology(const std::vector<NbhdTopology>& list, const NbhdTopology& t) {
  const auto it = std::lower_bound(list.begin(), list.end(), t);
  if (it == list.end() || !(*it == t)) fail(ErrorKind::NotALatticeIso, "topology is not a vector topology of the space");
  return static_cast<std::size_t>(it - list.begin());
}

void check_bijection(std::span<const std::size_t> map, std::size_t size) {
  if (map.size() != size) {
    fail(ErrorKind::NotALatticeIso, "table has " + std::to_string(map.size()) + " entries for " + std::to_string(size) + " elements");
  }
  std::vector<char> hit(size, 0);
  for (std::size_t i = 0; i < size; ++i) {
    if (map[i] >= size || hit[map[i]]) fail(ErrorKind::NotALatticeIso, "table is not a bijection at entry " + std::to_string(i));
    hit[map[i]] = 1;
  }
}

}  // namespace

SubspaceIsoTable make_subspace_iso_table(std::shared_ptr<const VectorSpace> source,
                                         std::shared_ptr<const VectorSpace> target, std::vector<std::size_t> map) {
  SubspaceIsoTable t;
  t.source_subspaces = enumerate_subspaces(*source);
  t.target_subspaces = enumerate_subspaces(*target);
  if (t.source_subspaces.size() != t.target_subspaces.size()) {
    fail(ErrorKind::NotALatticeIso, "subspace lattices differ in size");
  }
  check_bijection(map, t.source_subspaces.size());
  const auto& fs = source->field();
  const auto& ft = target->field();
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (t.source_subspaces[i].dim() != t.target_subspaces[map[i]].dim()) {
      fail(ErrorKind::NotALatticeIso, "entry " + std::to_string(i) + " changes dimension");
    }
    for (std::size_t j = 0; j < map.size(); ++j) {
      const bool below = t.source_subspaces[i].is_subset_of(fs, t.source_subspaces[j]);
      const bool image_below = t.target_subspaces[map[i]].is_subset_of(ft, t.target_subspaces[map[j]]);
      if (below != image_below) {
        fail(ErrorKind::NotALatticeIso, "inclusion between entries " + std::to_string(i) + " and " + std::to_string(j) +
                                            " is not preserved");
      }
    }
  }
  t.offsets.assign(static_cast<std::size_t>(source->dim()) + 2, 0);
  for (const auto& s : t.source_subspaces) ++t.offsets[static_cast<std::size_t>(s.dim()) + 1];
  for (std::size_t r = 1; r < t.offsets.size(); ++r) t.offsets[r] += t.offsets[r - 1];
  t.source = std::move(source);
  t.target = std::move(target);
  t.map = std::move(map);
  return t;
}

SubspaceIsoTable induced_subspace_iso(std::shared_ptr<const VectorSpace> space, const SemilinearMap& phi) {
  const auto subs = enumerate_subspaces(*space);
  std::vector<std::size_t> map;
  for (const auto& s : subs) map.push_back(find_subspace(subs, image(*space, phi, s)));
  return make_subspace_iso_table(space, space, std::move(map));
}

FtpgResult ftpg_reconstruct(const SubspaceIsoTable& table) {
  const VectorSpace& src = *table.source;
  const VectorSpace& dst = *table.target;
  const int d = src.dim();
  if (d < 3) fail(ErrorKind::DimensionTooSmall, "coordinatization needs dimension at least 3, got " + std::to_string(d));
  if (!(src.field() == dst.field()) || dst.dim() != d) {
    fail(ErrorKind::NotInducible, "source and target spaces differ");
  }
  const auto& f = dst.field();
  const auto bad = [](const std::string& what) { fail(ErrorKind::NotInducible, what); };
  auto image_of = [&](const std::vector<Vec>& generators) -> const Subspace& {
    const Subspace s = Subspace::span(src.field(), d, generators);
    return table.target_subspaces[table.map[find_subspace(table.source_subspaces, s)]];
  };
  auto unit = [&](int i) {
    Vec e(static_cast<std::size_t>(d), 0);
    e[static_cast<std::size_t>(i)] = 1;
    return e;
  };
  auto plus = [&](const Vec& a, const Vec& b) {
    Vec c(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) c[k] = f.add(a[k], b[k]);
    return c;
  };
  auto times = [&](int alpha, const Vec& a) {
    Vec c(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) c[k] = f.mul(alpha, a[k]);
    return c;
  };

  std::vector<Vec> fs(static_cast<std::size_t>(d));
  {
    const auto line = image_of({unit(0)}).elements(dst);
    if (line.size() < 2) bad("image of a line is not a line");
    fs[0] = dst.vector_at(line[1]);
  }
  for (int i = 1; i < d; ++i) {
    const Subspace& li = image_of({unit(i)});
    const Subspace& mixed = image_of({plus(unit(0), unit(i))});
    int hits = 0;
    for (int x : li.elements(dst)) {
      if (x == 0) continue;
      const Vec v = dst.vector_at(x);
      if (mixed.contains(f, plus(fs[0], v))) {
        fs[static_cast<std::size_t>(i)] = v;
        ++hits;
      }
    }
    if (hits != 1) bad("no unique representative on basis line " + std::to_string(i));
  }
  std::vector<int> psi(static_cast<std::size_t>(f.order()), -1);
  psi[0] = 0;
  for (int alpha = 1; alpha < f.order(); ++alpha) {
    const Subspace& line = image_of({plus(unit(0), times(alpha, unit(1)))});
    for (int beta = 0; beta < f.order(); ++beta) {
      if (line.contains(f, plus(fs[0], times(beta, fs[1])))) psi[static_cast<std::size_t>(alpha)] = beta;
    }
    if (psi[static_cast<std::size_t>(alpha)] < 0) bad("no scalar for α = " + std::to_string(alpha));
  }
  for (int a = 0; a < f.order(); ++a) {
    for (int b = 0; b < f.order(); ++b) {
      const auto pa = psi[static_cast<std::size_t>(a)], pb = psi[static_cast<std::size_t>(b)];
      if (psi[static_cast<std::size_t>(f.add(a, b))] != f.add(pa, pb) || psi[static_cast<std::size_t>(f.mul(a, b))] != f.mul(pa, pb)) {
        bad("recovered scalar map is not a field isomorphism");
      }
    }
  }
  FieldAut aut{-1};
  for (const auto candidate : f.automorphisms()) {
    bool same = true;
    for (int a = 0; a < f.order() && same; ++a) same = f.apply(candidate, a) == psi[static_cast<std::size_t>(a)];
    if (same) aut = candidate;
  }
  if (aut.exponent < 0) bad("recovered scalar map is not a Frobenius power");

  FtpgResult result{aut, SemilinearMap{aut, Matrix::from_columns(fs)}};
  if (rank(f, result.map.matrix) != d) bad("recovered matrix is singular");
  for (std::size_t i = 0; i < table.source_subspaces.size(); ++i) {
    if (!(image(dst, result.map, table.source_subspaces[i]) == table.target_subspaces[table.map[i]])) {
      bad("recovered map disagrees with the table at entry " + std::to_string(i));
    }
  }
  return result;
}

TauIsoTable make_tau_iso_table(std::shared_ptr<const VectorSpace> source, std::shared_ptr<const VectorSpace> target,
                               std::vector<std::size_t> map) {
  TauIsoTable t;
  t.source_tau = enumerate_vector_topologies(*source, CensusMode::Image);
  t.target_tau = enumerate_vector_topologies(*target, CensusMode::Image);
  if (t.source_tau.size() != t.target_tau.size()) fail(ErrorKind::NotALatticeIso, "vector-topology lattices differ in size");
  check_bijection(map, t.source_tau.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    for (std::size_t j = 0; j < map.size(); ++j) {
      if (t.source_tau[i].is_coarser_than(t.source_tau[j]) != t.target_tau[map[i]].is_coarser_than(t.target_tau[map[j]])) {
        fail(ErrorKind::NotALatticeIso, "order between entries " + std::to_string(i) + " and " + std::to_string(j) +
                                            " is not preserved");
      }
    }
  }
  t.source = std::move(source);
  t.target = std::move(target);
  t.map = std::move(map);
  return t;
}

TauIsoTable induced_tau_table(std::shared_ptr<const VectorSpace> space, const AffineSemilinearMap& map, bool complement) {
  const auto tau = enumerate_vector_topologies(*space, CensusMode::Image);
  const Bijection theta = point_permutation(*space, map);
  std::vector<std::size_t> table;
  for (const auto& t : tau) {
    NbhdTopology image = pushforward(theta, t);
    if (complement) image = complement_map(image);
    table.push_back(find_topology(tau, image));
  }
  return make_tau_iso_table(space, space, std::move(table));
}

bool TheoremCReport::pass() const {
  const bool grades_ok = std::all_of(grades.begin(), grades.end(), [](const GradeCheck& g) { return g.preserved; });
  return source_dim == target_dim && source_field_order == target_field_order &&
         (!hausdorff_checked || hausdorff_preserved) && g_after_f_below_identity && f_after_g_below_identity &&
         grades_ok && compatible && reconstruction_reproduces;
}

TheoremCReport theorem_c_pipeline(const TauIsoTable& table, bool hausdorff_check) {
  const VectorSpace& src = *table.source;
  const VectorSpace& dst = *table.target;
  if (src.dim() < 3) fail(ErrorKind::DimensionTooSmall, "pipeline needs dimension at least 3, got " + std::to_string(src.dim()));
  TheoremCReport r;
  r.source_dim = src.dim();
  r.target_dim = dst.dim();
  r.source_field_order = src.field().order();
  r.target_field_order = dst.field().order();

  std::vector<std::size_t> inverse(table.map.size());
  for (std::size_t i = 0; i < table.map.size(); ++i) inverse[table.map[i]] = i;
  r.hausdorff_checked = hausdorff_check;
  if (hausdorff_check) {
    const std::size_t top = find_topology(table.source_tau, t_max(src));
    r.hausdorff_preserved = table.target_tau[table.map[top]].is_discrete();
    if (!r.hausdorff_preserved) fail(ErrorKind::HausdorffNotPreserved, "Φ does not send the discrete topology to the discrete topology");
  }

  const auto source_subs = enumerate_subspaces(src);
  const auto target_subs = enumerate_subspaces(dst);
  // F = frak_s ∘ Φ ∘ frak_t and G = frak_s ∘ Φ⁻¹ ∘ frak_t, as index maps
  std::vector<std::size_t> f_map, g_map;
  for (const auto& s : source_subs) {
    const auto& image = table.target_tau[table.map[find_topology(table.source_tau, frak_t(src, s))]];
    f_map.push_back(find_subspace(target_subs, frak_s(dst, image)));
  }
  for (const auto& s : target_subs) {
    const auto& image = table.source_tau[inverse[find_topology(table.target_tau, frak_t(dst, s))]];
    g_map.push_back(find_subspace(source_subs, frak_s(src, image)));
  }
  r.g_after_f_below_identity = r.f_after_g_below_identity = true;
  for (std::size_t i = 0; i < source_subs.size(); ++i) {
    if (!source_subs[g_map[f_map[i]]].is_subset_of(src.field(), source_subs[i])) r.g_after_f_below_identity = false;
  }
  for (std::size_t i = 0; i < target_subs.size(); ++i) {
    if (!target_subs[f_map[g_map[i]]].is_subset_of(dst.field(), target_subs[i])) r.f_after_g_below_identity = false;
  }

  // grade by grade, starting from {0}
  for (int d = 0; d <= src.dim(); ++d) {
    GradeCheck g{d, 0, true};
    for (std::size_t i = 0; i < source_subs.size(); ++i) {
      if (source_subs[i].dim() != d) continue;
      ++g.subspaces;
      if (target_subs[f_map[i]].dim() != d) {
        fail(ErrorKind::GradeViolation, "a subspace of dimension " + std::to_string(d) + " maps to dimension " +
                                            std::to_string(target_subs[f_map[i]].dim()));
      }
    }
    r.grades.push_back(g);
  }

  r.compatible = true;
  for (std::size_t i = 0; i < source_subs.size(); ++i) {
    const auto& image = table.target_tau[table.map[find_topology(table.source_tau, frak_t(src, source_subs[i]))]];
    if (!(image == frak_t(dst, target_subs[f_map[i]]))) r.compatible = false;
  }

  const auto sub_table = make_subspace_iso_table(table.source, table.target, f_map);
  r.reconstruction = ftpg_reconstruct(sub_table);
  r.reconstruction_reproduces = true;
  for (std::size_t i = 0; i < source_subs.size(); ++i) {
    if (!(image(dst, r.reconstruction.map, source_subs[i]) == target_subs[f_map[i]])) r.reconstruction_reproduces = false;
  }
  return r;
}

}  // namespace toplat

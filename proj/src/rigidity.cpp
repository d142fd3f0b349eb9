#include "toplat/rigidity.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <thread>

#include "toplat/error.hpp"
#include "toplat/hartmanis.hpp"
#include "toplat/lattice_core.hpp"

namespace toplat {

TauSet tau_set(const VectorSpace& space) {
  TauSet tau;
  tau.sorted = enumerate_vector_topologies(space, CensusMode::Image);
  const int n = space.size();
  std::vector<std::size_t> order(tau.sorted.size());
  std::iota(order.begin(), order.end(), 0);
  // probe the finest non-discrete topology first: it has the smallest hulls and rejects most maps
  auto weight = [&](std::size_t i) {
    const auto& t = tau.sorted[i];
    if (t.is_discrete() || t == NbhdTopology::indiscrete(n)) return 1 << 20;
    return std::popcount(t.hull(0));
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return weight(a) < weight(b); });
  tau.probe_order = std::move(order);
  return tau;
}

bool preserves_tau(const TauSet& tau, const Bijection& theta) {
  for (std::size_t i : tau.probe_order) {
    if (!std::binary_search(tau.sorted.begin(), tau.sorted.end(), pushforward(theta, tau.sorted[i]))) return false;
  }
  return true;
}

bool preserves_tau(const VectorSpace& space, const Bijection& theta) { return preserves_tau(tau_set(space), theta); }

AffineCensus affine_census(const VectorSpace& space, unsigned threads) {
  const int n = space.size();
  if (n > kMaxCensusPoints) {
    fail(ErrorKind::SizeExceeded, "census loops over " + std::to_string(n) + "! bijections; at most 9 points");
  }
  const TauSet tau = tau_set(space);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  std::vector<std::vector<Bijection>> found(static_cast<std::size_t>(n));
  std::vector<std::uint64_t> seen(static_cast<std::size_t>(n), 0);
  // block `first` holds the permutations with image(0) = first, in lexicographic order
  auto work = [&](unsigned w) {
    for (int first = static_cast<int>(w); first < n; first += static_cast<int>(workers)) {
      std::vector<int> rest;
      for (int x = 0; x < n; ++x) {
        if (x != first) rest.push_back(x);
      }
      do {
        std::vector<int> image{first};
        image.insert(image.end(), rest.begin(), rest.end());
        Bijection theta(std::move(image));
        ++seen[static_cast<std::size_t>(first)];
        if (preserves_tau(tau, theta)) found[static_cast<std::size_t>(first)].push_back(std::move(theta));
      } while (std::next_permutation(rest.begin(), rest.end()));
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& th : pool) th.join();
  AffineCensus census;
  for (int first = 0; first < n; ++first) {
    census.bijections += seen[static_cast<std::size_t>(first)];
    for (auto& b : found[static_cast<std::size_t>(first)]) census.preserving.push_back(std::move(b));
  }
  return census;
}

TripleDecomposition decompose_triple(const VectorSpace& space, const Bijection& theta, bool uses_complement) {
  const auto& f = space.field();
  const int n = space.size();
  const int d = space.dim();
  if (theta.size() != n) fail(ErrorKind::GroundMismatch, "bijection and space differ in size");
  auto bad = [](const std::string& what) { fail(ErrorKind::NotSemiaffine, what); };

  const int y0 = theta(0);
  std::vector<int> phi(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) phi[static_cast<std::size_t>(x)] = space.add(theta(x), space.neg(y0));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (phi[static_cast<std::size_t>(space.add(x, y))] != space.add(phi[static_cast<std::size_t>(x)], phi[static_cast<std::size_t>(y)])) {
        bad("phi is not additive at points " + std::to_string(x) + ", " + std::to_string(y));
      }
    }
  }

  std::vector<int> columns(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) columns[static_cast<std::size_t>(i)] = phi[static_cast<std::size_t>(space.basis_index(i))];
  // ψ(α) is the scalar with φ(α e_1) = ψ(α) φ(e_1); every other basis line must agree
  std::vector<int> psi(static_cast<std::size_t>(space.q()), -1);
  for (int i = 0; i < d; ++i) {
    const int fi = columns[static_cast<std::size_t>(i)];
    for (int alpha = 0; alpha < space.q(); ++alpha) {
      const int target = phi[static_cast<std::size_t>(space.scale(alpha, space.basis_index(i)))];
      int beta = -1;
      for (int b = 0; b < space.q(); ++b) {
        if (space.scale(b, fi) == target) beta = b;
      }
      if (beta < 0) bad("image of line " + std::to_string(i) + " is not a line");
      if (i == 0) {
        psi[static_cast<std::size_t>(alpha)] = beta;
      } else if (psi[static_cast<std::size_t>(alpha)] != beta) {
        bad("scalar twist on basis line " + std::to_string(i) + " disagrees with line 0");
      }
    }
  }
  int exponent = -1;
  for (const auto aut : f.automorphisms()) {
    bool same = true;
    for (int alpha = 0; alpha < space.q() && same; ++alpha) same = f.apply(aut, alpha) == psi[static_cast<std::size_t>(alpha)];
    if (same) {
      exponent = aut.exponent;
      break;
    }
  }
  if (exponent < 0) bad("scalar twist is not a field automorphism");

  std::vector<Vec> cols;
  for (int c : columns) cols.push_back(space.vector_at(c));
  TripleDecomposition out{FieldAut{exponent}, Matrix::from_columns(cols), space.vector_at(y0), uses_complement};
  if (rank(f, out.matrix) != d) bad("linear part is singular");
  for (int x = 0; x < n; ++x) {
    for (int alpha = 0; alpha < space.q(); ++alpha) {
      if (phi[static_cast<std::size_t>(space.scale(alpha, x))] != space.scale(psi[static_cast<std::size_t>(alpha)], phi[static_cast<std::size_t>(x)])) {
        bad("phi is not semilinear at point " + std::to_string(x));
      }
    }
  }
  const auto map = out.as_map();
  for (int x = 0; x < n; ++x) {
    if (space.index_of(apply(space, map, space.vector_at(x))) != theta(x)) {
      bad("triple does not reproduce the bijection at point " + std::to_string(x));
    }
  }
  return out;
}

namespace {

struct GroupElement {
  int x = 0;  // translation part, point index
  std::size_t phi = 0;
};

// action of C^eps ∘ θ_* on the atoms, as the image D' of each D (indexed by D - 1)
std::vector<WideMask> atom_action(int n, const Bijection& theta, bool complement) {
  std::vector<WideMask> act;
  for (Mask d = 1; d + 1 < (Mask{1} << n); ++d) {
    FinTopology t = pushforward(theta, atom(d, n));
    if (complement) t = complement_map(t);
    act.push_back(t.opens()[1]);
  }
  return act;
}

}  // namespace

bool TheoremBReport::pass() const {
  return identity_ok && product_matches_composition && associative && inverses && homomorphism &&
         complement_commutes && injective && (!census_run || image_matches_census) && complement_fixes_tau &&
         complement_distinct_on_sigma && group_order == expected_order;
}

TheoremBReport theorem_b_group(const VectorSpace& space, unsigned threads) {
  const int n = space.size();
  if (space.dim() < 2) fail(ErrorKind::DimensionTooSmall, "group structure needs dimension at least 2");
  if (n > kMaxCensusPoints) fail(ErrorKind::SizeExceeded, "group check needs at most 9 points");
  TheoremBReport r;
  r.semidirect_order = static_cast<std::uint64_t>(n) * group_order_gammaL(space);
  if (r.semidirect_order > kMaxGroupPairs) fail(ErrorKind::SizeExceeded, "|X|·|ΓL| exceeds 10^6");
  r.expected_order = 2 * r.semidirect_order;
  auto gammas = enumerate_gammaL(space);
  std::sort(gammas.begin(), gammas.end());

  std::vector<GroupElement> elems;
  std::vector<AffineSemilinearMap> maps;
  std::vector<std::vector<int>> perms;
  for (int x = 0; x < n; ++x) {
    for (std::size_t p = 0; p < gammas.size(); ++p) {
      elems.push_back({x, p});
      maps.push_back({gammas[p], space.vector_at(x)});
      const auto b = point_permutation(space, maps.back());
      perms.emplace_back(b.image().begin(), b.image().end());
    }
  }
  const std::size_t g = elems.size();
  std::vector<std::size_t> order(g);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return perms[a] < perms[b]; });
  auto lookup = [&](const std::vector<int>& perm) -> std::ptrdiff_t {
    auto it = std::lower_bound(order.begin(), order.end(), perm,
                               [&](std::size_t i, const std::vector<int>& p) { return perms[i] < p; });
    return it != order.end() && perms[*it] == perm ? static_cast<std::ptrdiff_t>(*it) : -1;
  };
  auto index_of_gamma = [&](const SemilinearMap& m) {
    return static_cast<std::size_t>(std::lower_bound(gammas.begin(), gammas.end(), m) - gammas.begin());
  };
  // (x1, φ1)·(x2, φ2) = (x1 + φ1(x2), φ1 ∘ φ2)
  auto product = [&](std::size_t a, std::size_t b) {
    const auto& pa = gammas[elems[a].phi];
    const int x = space.add(elems[a].x, space.index_of(apply(space, pa, space.vector_at(elems[b].x))));
    const auto phi = index_of_gamma(compose(space, pa, gammas[elems[b].phi]));
    return static_cast<std::size_t>(x) * gammas.size() + phi;
  };
  auto composed = [&](std::size_t a, std::size_t b) {
    std::vector<int> c(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) c[static_cast<std::size_t>(x)] = perms[a][static_cast<std::size_t>(perms[b][static_cast<std::size_t>(x)])];
    return c;
  };
  std::vector<int> id_perm(static_cast<std::size_t>(n));
  std::iota(id_perm.begin(), id_perm.end(), 0);
  const std::size_t identity = static_cast<std::size_t>(lookup(id_perm));
  r.identity_ok = elems[identity].x == 0 && gammas[elems[identity].phi].psi.exponent == 0 &&
                  gammas[elems[identity].phi].matrix == Matrix::identity(space.dim());
  r.injective = true;
  for (std::size_t i = 1; i < g; ++i) {
    if (perms[order[i - 1]] == perms[order[i]]) r.injective = false;
  }

  // pairs: exhaustive up to 10^6, otherwise a seeded sample of that many
  std::mt19937_64 rng(0x5eedULL);
  r.products_exhaustive = g * g <= kMaxGroupPairs;
  const std::uint64_t pair_budget = r.products_exhaustive ? g * g : kMaxGroupPairs;
  r.product_matches_composition = true;
  for (std::uint64_t k = 0; k < pair_budget; ++k) {
    const std::size_t a = r.products_exhaustive ? k / g : rng() % g;
    const std::size_t b = r.products_exhaustive ? k % g : rng() % g;
    if (perms[product(a, b)] != composed(a, b)) r.product_matches_composition = false;
  }
  r.associative = true;
  const std::uint64_t triples = std::min<std::uint64_t>(g * g * g, 200'000);
  const bool all_triples = g * g * g <= 200'000;
  for (std::uint64_t k = 0; k < triples; ++k) {
    const std::size_t a = all_triples ? k / (g * g) : rng() % g;
    const std::size_t b = all_triples ? (k / g) % g : rng() % g;
    const std::size_t c = all_triples ? k % g : rng() % g;
    if (product(product(a, b), c) != product(a, product(b, c))) r.associative = false;
  }
  r.inverses = true;
  for (std::size_t a = 0; a < g; ++a) {
    const auto inv = invert(space, maps[a]);
    const std::size_t ia = static_cast<std::size_t>(space.index_of(inv.shift)) * gammas.size() + index_of_gamma(inv.linear);
    if (product(a, ia) != identity || product(ia, a) != identity) r.inverses = false;
  }

  // F((x, φ), ε) = C^ε ∘ (φ + x)_*, compared through its action on the atoms of Σ(X)
  std::vector<std::vector<WideMask>> action(2 * g);
  for (std::size_t a = 0; a < g; ++a) {
    const Bijection b(perms[a]);
    action[a] = atom_action(n, b, false);
    action[g + a] = atom_action(n, b, true);
  }
  const std::size_t atoms = action[0].size();
  auto atom_slot = [](WideMask d) { return static_cast<std::size_t>(d - 1); };
  r.homomorphism = true;
  for (std::uint64_t k = 0; k < pair_budget; ++k) {
    const std::size_t a = r.products_exhaustive ? k / g : rng() % g;
    const std::size_t b = r.products_exhaustive ? k % g : rng() % g;
    const std::size_t ab = product(a, b);
    for (unsigned eps = 0; eps < 4 && r.homomorphism; ++eps) {
      const auto& fa = action[(eps & 1u) * g + a];
      const auto& fb = action[(eps >> 1) * g + b];
      const auto& fab = action[(((eps & 1u) ^ (eps >> 1)) * g) + ab];
      for (std::size_t i = 0; i < atoms; ++i) {
        if (fa[atom_slot(fb[i])] != fab[i]) {
          r.homomorphism = false;
          break;
        }
      }
    }
  }
  const TauSet tau = tau_set(space);
  r.complement_commutes = true;
  for (std::size_t a = 0; a < g && r.complement_commutes; ++a) {
    const Bijection b(perms[a]);
    for (const auto& t : tau.sorted) {
      if (!(complement_map(pushforward(b, t)) == pushforward(b, complement_map(t)))) r.complement_commutes = false;
    }
    for (Mask d = 1; d + 1 < (Mask{1} << n); ++d) {
      const auto t = atom(d, n);
      if (!(complement_map(pushforward(b, t)) == pushforward(b, complement_map(t)))) r.complement_commutes = false;
    }
  }
  std::vector<std::vector<WideMask>> distinct(action);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  r.group_order = distinct.size();
  if (r.group_order != 2 * g) r.injective = false;

  r.complement_fixes_tau = std::all_of(tau.sorted.begin(), tau.sorted.end(),
                                       [](const NbhdTopology& t) { return complement_map(t) == t; });
  // C is not θ_* for any θ: no ε = 1 action matches an ε = 0 action
  r.complement_distinct_on_sigma = true;
  {
    std::vector<std::vector<WideMask>> plain(action.begin(), action.begin() + static_cast<std::ptrdiff_t>(g));
    std::sort(plain.begin(), plain.end());
    for (std::size_t a = 0; a < g; ++a) {
      if (std::binary_search(plain.begin(), plain.end(), action[g + a])) r.complement_distinct_on_sigma = false;
    }
  }

  if (n <= kMaxCensusPoints) {
    const auto census = affine_census(space, threads);
    r.census_run = true;
    r.census = census.preserving.size();
    r.census_bijections = census.bijections;
    std::vector<std::vector<int>> sorted_perms;
    for (std::size_t i : order) sorted_perms.push_back(perms[i]);
    std::vector<std::vector<int>> found;
    for (const auto& b : census.preserving) found.emplace_back(b.image().begin(), b.image().end());
    r.image_matches_census = found == sorted_perms;
  }
  return r;
}

TheoremAReport end_to_end_theorem_a(std::uint64_t seed, int trials) {
  if (trials < 0) fail(ErrorKind::InvalidArgument, "trials must be non-negative");
  const VectorSpace space(FiniteField::make(2, 1), 2);
  const SigmaLattice sigma = sigma_lattice(space.size());
  const auto gl = enumerate_gl(space);
  std::vector<std::size_t> tau_indices;
  for (const auto& t : tau_set(space).sorted) tau_indices.push_back(sigma.index_of(t.to_fin()));
  std::sort(tau_indices.begin(), tau_indices.end());

  TheoremAReport report;
  report.seed = seed;
  report.trials = trials;
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    TheoremATrial run;
    run.planted.psi = FieldAut{0};
    run.planted.matrix = gl[rng() % gl.size()];
    run.planted.y0 = space.vector_at(static_cast<int>(rng() % static_cast<std::uint64_t>(space.size())));
    run.planted.uses_complement = (rng() & 1u) != 0;
    const Bijection theta = point_permutation(space, run.planted.as_map());
    const auto table = induced_sigma_table(sigma, theta, run.planted.uses_complement);
    run.tau_preserved = std::all_of(tau_indices.begin(), tau_indices.end(), [&](std::size_t i) {
      return std::binary_search(tau_indices.begin(), tau_indices.end(), table[i]);
    });
    const auto rec = reconstruct_bijection(sigma, table);
    run.recovered = decompose_triple(space, rec.theta, rec.uses_complement);
    run.exact = run.tau_preserved && run.recovered == run.planted;
    if (run.exact) ++report.recovered;
    report.runs.push_back(std::move(run));
  }
  return report;
}

}  // namespace toplat

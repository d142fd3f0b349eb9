#include "toplat/galois.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <set>
#include <string>
#include <thread>

#include "toplat/error.hpp"

namespace toplat {
namespace {

void check_points(const VectorSpace& space) {
  if (space.size() > kMaxWideGround) {
    fail(ErrorKind::InvalidArgument, "topologies need at most 64 points, space has " + std::to_string(space.size()));
  }
}

WideMask translate(const VectorSpace& space, WideMask set, int by) {
  WideMask out = 0;
  for (WideMask rest = set; rest != 0; rest &= rest - 1) out |= WideMask{1} << space.add(std::countr_zero(rest), by);
  return out;
}

}  // namespace

NbhdTopology t_max(const VectorSpace& space) {
  check_points(space);
  return NbhdTopology::discrete(space.size());
}

NbhdTopology frak_t(const VectorSpace& space, const Subspace& s) {
  check_points(space);
  const WideMask zero_coset = s.mask(space);
  std::vector<WideMask> hulls(static_cast<std::size_t>(space.size()));
  for (int x = 0; x < space.size(); ++x) hulls[static_cast<std::size_t>(x)] = translate(space, zero_coset, x);
  return NbhdTopology(std::move(hulls));
}

Subspace frak_s(const VectorSpace& space, const NbhdTopology& t) {
  check_points(space);
  if (t.ground_size() != space.size()) fail(ErrorKind::GroundMismatch, "topology and space differ in size");
  const WideMask h = t.hull(0);
  std::vector<Vec> members;
  for (WideMask rest = h; rest != 0; rest &= rest - 1) {
    const int x = std::countr_zero(rest);
    members.push_back(space.vector_at(x));
    for (WideMask other = h; other != 0; other &= other - 1) {
      if (((h >> space.add(x, std::countr_zero(other))) & 1u) == 0) {
        fail(ErrorKind::NotASubspace, mask_to_string(h) + " is not closed under addition");
      }
    }
    for (int alpha = 0; alpha < space.q(); ++alpha) {
      if (((h >> space.scale(alpha, x)) & 1u) == 0) {
        fail(ErrorKind::NotASubspace, mask_to_string(h) + " is not closed under scalars");
      }
    }
  }
  return Subspace::span(space.field(), space.dim(), members);
}

Subspace frak_s(const VectorSpace& space, const FinTopology& t) { return frak_s(space, NbhdTopology::from(t)); }

bool is_vector_topology(const VectorSpace& space, const NbhdTopology& t) {
  check_points(space);
  if (t.ground_size() != space.size()) fail(ErrorKind::GroundMismatch, "topology and space differ in size");
  const int n = space.size();
  for (int x = 0; x < n; ++x) {
    const WideMask ux = t.hull(x);
    for (int y = 0; y < n; ++y) {
      const WideMask target = t.hull(space.add(x, y));
      for (WideMask rest = ux; rest != 0; rest &= rest - 1) {
        if ((translate(space, t.hull(y), std::countr_zero(rest)) & ~target) != 0) return false;
      }
    }
    for (int alpha = 0; alpha < space.q(); ++alpha) {
      const WideMask target = t.hull(space.scale(alpha, x));
      for (WideMask rest = ux; rest != 0; rest &= rest - 1) {
        if (((target >> space.scale(alpha, std::countr_zero(rest))) & 1u) == 0) return false;
      }
    }
  }
  return true;
}

bool is_vector_topology_literal(const VectorSpace& space, const FinTopology& t) {
  if (t.ground_size() != space.size()) fail(ErrorKind::GroundMismatch, "topology and space differ in size");
  const int n = space.size();
  const auto opens = t.opens();
  auto sumset = [&](Mask u, Mask v) {
    Mask out = 0;
    for (Mask a = u; a != 0; a &= a - 1) {
      for (Mask b = v; b != 0; b &= b - 1) out |= Mask{1} << space.add(std::countr_zero(a), std::countr_zero(b));
    }
    return out;
  };
  auto scaled = [&](int alpha, Mask v) {
    Mask out = 0;
    for (Mask b = v; b != 0; b &= b - 1) out |= Mask{1} << space.scale(alpha, std::countr_zero(b));
    return out;
  };
  for (Mask w : opens) {
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (((w >> space.add(x, y)) & 1u) == 0) continue;
        bool found = false;
        for (std::size_t i = 0; i < opens.size() && !found; ++i) {
          if (((opens[i] >> x) & 1u) == 0) continue;
          for (std::size_t j = 0; j < opens.size() && !found; ++j) {
            if (((opens[j] >> y) & 1u) == 0) continue;
            found = (sumset(opens[i], opens[j]) & ~w) == 0;
          }
        }
        if (!found) return false;
      }
      for (int alpha = 0; alpha < space.q(); ++alpha) {
        if (((w >> space.scale(alpha, x)) & 1u) == 0) continue;
        bool found = false;
        for (std::size_t i = 0; i < opens.size() && !found; ++i) {
          found = ((opens[i] >> x) & 1u) != 0 && (scaled(alpha, opens[i]) & ~w) == 0;
        }
        if (!found) return false;
      }
    }
  }
  return true;
}

std::vector<NbhdTopology> enumerate_vector_topologies(const VectorSpace& space, CensusMode mode, unsigned threads) {
  check_points(space);
  const int n = space.size();
  std::vector<NbhdTopology> out;
  switch (mode) {
    case CensusMode::Census: {
      if (n > 5) fail(ErrorKind::BudgetExceeded, "census mode needs at most 5 points, space has " + std::to_string(n));
      EnumerationOptions options;
      options.threads = threads;
      for_each_topology(
          n,
          [&](const FinTopology& t) {
            if (is_vector_topology_literal(space, t)) out.push_back(NbhdTopology::from(t));
          },
          options);
      break;
    }
    case CensusMode::Image:
      for (const auto& s : enumerate_subspaces(space)) out.push_back(frak_t(space, s));
      break;
    case CensusMode::Translates: {
      if (n > 16) fail(ErrorKind::BudgetExceeded, "translates mode needs at most 16 points, space has " + std::to_string(n));
      // every vector topology has hull(x) = x + hull(0), so it is generated by the translates of hull(0)
      const std::uint64_t total = std::uint64_t{1} << (n - 1);
      const unsigned workers = std::max(1u, std::min<unsigned>(threads, 64));
      std::vector<std::set<NbhdTopology>> found(workers);
      auto work = [&](unsigned w) {
        std::vector<WideMask> subbase(static_cast<std::size_t>(n));
        for (std::uint64_t rest = w; rest < total; rest += workers) {
          const WideMask base = (rest << 1) | 1u;
          for (int x = 0; x < n; ++x) subbase[static_cast<std::size_t>(x)] = translate(space, base, x);
          auto t = NbhdTopology::generated_by(n, subbase);
          if (is_vector_topology(space, t)) found[w].insert(std::move(t));
        }
      };
      std::vector<std::thread> pool;
      for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
      work(0);
      for (auto& th : pool) th.join();
      std::set<NbhdTopology> merged;
      for (auto& f : found) merged.insert(f.begin(), f.end());
      out.assign(merged.begin(), merged.end());
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

QuotientTopology quotient_pushforward(const VectorSpace& space, const Subspace& s, const NbhdTopology& t) {
  check_points(space);
  const int n = space.size();
  QuotientTopology q{std::vector<int>(static_cast<std::size_t>(n), -1), NbhdTopology::indiscrete(1)};
  const WideMask zero_coset = s.mask(space);
  std::vector<WideMask> cosets;
  for (int x = 0; x < n; ++x) {
    if (q.coset_of[static_cast<std::size_t>(x)] >= 0) continue;
    const WideMask c = translate(space, zero_coset, x);
    for (WideMask rest = c; rest != 0; rest &= rest - 1) q.coset_of[static_cast<std::size_t>(std::countr_zero(rest))] = static_cast<int>(cosets.size());
    cosets.push_back(c);
  }
  const int m = static_cast<int>(cosets.size());
  auto preimage = [&](WideMask v) {
    WideMask out = 0;
    for (WideMask rest = v; rest != 0; rest &= rest - 1) out |= cosets[static_cast<std::size_t>(std::countr_zero(rest))];
    return out;
  };
  std::vector<WideMask> hulls(static_cast<std::size_t>(m));
  for (int c = 0; c < m; ++c) {
    // grow {c} until its preimage is open
    WideMask v = WideMask{1} << c, prev = 0;
    while (v != prev) {
      prev = v;
      for (WideMask rest = preimage(prev); rest != 0; rest &= rest - 1) {
        for (WideMask h = t.hull(std::countr_zero(rest)); h != 0; h &= h - 1) {
          v |= WideMask{1} << q.coset_of[static_cast<std::size_t>(std::countr_zero(h))];
        }
      }
    }
    hulls[static_cast<std::size_t>(c)] = v;
  }
  q.topology = NbhdTopology(std::move(hulls));
  return q;
}

bool GaloisReport::pass() const {
  return tau_matches_image && s_after_t_is_identity && t_below_t_after_s && zero_iff_discrete && adjunction &&
         antitone && complement_fixes_tau && discrete_is_max;
}

GaloisReport verify_galois(const VectorSpace& space, unsigned threads) {
  GaloisReport r;
  const auto& f = space.field();
  const auto subspaces = enumerate_subspaces(space);
  const auto image = enumerate_vector_topologies(space, CensusMode::Image);
  r.subspaces = subspaces.size();
  std::vector<NbhdTopology> tau;
  if (space.size() <= 16) {
    r.tau_source = CensusMode::Translates;
    tau = enumerate_vector_topologies(space, CensusMode::Translates, threads);
  } else {
    r.tau_source = CensusMode::Image;
    tau = image;
  }
  r.vector_topologies = tau.size();
  r.tau_matches_image = tau == image;

  std::vector<NbhdTopology> t_of;
  for (const auto& s : subspaces) t_of.push_back(frak_t(space, s));
  r.s_after_t_is_identity = true;
  for (std::size_t i = 0; i < subspaces.size(); ++i) {
    if (!(frak_s(space, t_of[i]) == subspaces[i])) r.s_after_t_is_identity = false;
  }

  std::vector<Subspace> s_of;
  for (const auto& t : tau) s_of.push_back(frak_s(space, t));
  r.t_below_t_after_s = r.t_after_s_is_identity = r.zero_iff_discrete = r.complement_fixes_tau = true;
  const Subspace zero = Subspace::zero(space.dim());
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const auto back = frak_t(space, s_of[i]);
    if (!tau[i].is_coarser_than(back)) r.t_below_t_after_s = false;
    if (!(tau[i] == back)) r.t_after_s_is_identity = false;
    if ((s_of[i] == zero) != tau[i].is_discrete()) r.zero_iff_discrete = false;
    if (!(complement_map(tau[i]) == tau[i])) r.complement_fixes_tau = false;
  }
  const auto top = t_max(space);
  r.discrete_is_max = std::find(tau.begin(), tau.end(), top) != tau.end() &&
                      std::all_of(tau.begin(), tau.end(), [&](const NbhdTopology& t) { return t.is_coarser_than(top); });

  r.adjunction = r.antitone = true;
  for (std::size_t i = 0; i < subspaces.size(); ++i) {
    for (std::size_t j = 0; j < tau.size(); ++j) {
      const bool lhs = subspaces[i].is_subset_of(f, s_of[j]);
      const bool rhs = tau[j].is_coarser_than(t_of[i]);
      if (lhs != rhs) r.adjunction = false;
    }
    for (std::size_t j = 0; j < subspaces.size(); ++j) {
      if (subspaces[i].is_subset_of(f, subspaces[j]) && !t_of[j].is_coarser_than(t_of[i])) r.antitone = false;
    }
  }
  for (std::size_t i = 0; i < tau.size(); ++i) {
    for (std::size_t j = 0; j < tau.size(); ++j) {
      if (tau[i].is_coarser_than(tau[j]) && !s_of[j].is_subset_of(f, s_of[i])) r.antitone = false;
    }
  }

  r.sigma_meet_stays_in_tau = r.sigma_join_stays_in_tau = true;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    for (std::size_t j = i + 1; j < tau.size(); ++j) {
      if (!std::binary_search(tau.begin(), tau.end(), meet(tau[i], tau[j]))) r.sigma_meet_stays_in_tau = false;
      if (!std::binary_search(tau.begin(), tau.end(), join(tau[i], tau[j]))) r.sigma_join_stays_in_tau = false;
    }
  }
  r.meet_is_t_of_sum = r.join_is_t_of_intersection = true;
  for (std::size_t i = 0; i < subspaces.size(); ++i) {
    for (std::size_t j = i + 1; j < subspaces.size(); ++j) {
      if (!(meet(t_of[i], t_of[j]) == frak_t(space, sum(f, subspaces[i], subspaces[j])))) r.meet_is_t_of_sum = false;
      if (!(join(t_of[i], t_of[j]) == frak_t(space, intersect(f, subspaces[i], subspaces[j])))) {
        r.join_is_t_of_intersection = false;
      }
    }
  }
  return r;
}

}  // namespace toplat

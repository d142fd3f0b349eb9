#include "toplat/finset_topology.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <sstream>
#include <thread>

#include "toplat/error.hpp"

namespace toplat {
namespace {

void check_ground(int n) {
  if (n < 1 || n > kMaxGround) {
    fail(ErrorKind::InvalidArgument, "ground size " + std::to_string(n) + " outside 1..9");
  }
}

void check_same_ground(int a, int b) {
  if (a != b) {
    fail(ErrorKind::GroundMismatch,
         "ground sizes " + std::to_string(a) + " and " + std::to_string(b) + " differ");
  }
}

std::vector<Mask> canonical(std::vector<Mask> opens) {
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  return opens;
}

// Opens of the topology whose minimal neighbourhoods are `hulls`.
std::vector<Mask> opens_from_hulls(int n, std::span<const Mask> hulls) {
  std::vector<Mask> opens;
  const Mask full = full_mask(n);
  for (Mask a = 0;; ++a) {
    bool open = true;
    for (Mask rest = a; rest != 0 && open; rest &= rest - 1) {
      const int x = std::countr_zero(rest);
      open = (hulls[static_cast<std::size_t>(x)] & ~a) == 0;
    }
    if (open) opens.push_back(a);
    if (a == full) break;
  }
  return opens;
}

// Depth-first extension of a preorder on points 0..k-1 by the point k.
// A new point k is described by the old points in its hull (a down-closed
// set `down`) and the old points whose hulls gain k (an up-closed set `up`);
// transitivity holds iff `down` lies inside every hull of `up`.
class PreorderWalker {
 public:
  explicit PreorderWalker(int n) : n_(n) { hulls_[0] = 1; }

  template <class Visit>
  void run_from(int k, Visit& visit) {
    if (k == n_) {
      visit(std::span<const Mask>(hulls_.data(), static_cast<std::size_t>(n_)));
      return;
    }
    const Mask old = full_mask(k);
    std::array<Mask, 1 << (kMaxEnumerate - 1)> downs{};
    std::array<Mask, 1 << (kMaxEnumerate - 1)> ups{};
    std::array<Mask, 1 << (kMaxEnumerate - 1)> up_meets{};
    std::size_t n_downs = 0, n_ups = 0;
    for (Mask s = old;; --s) {
      bool down_closed = true, up_closed = true;
      for (int x = 0; x < k && x < kMaxEnumerate; ++x) {
        const bool in = (s >> x) & 1u;
        if (in && (hulls_[x] & ~s) != 0) down_closed = false;
        // x outside s, but some member of s sits in hull(x)
        if (!in && (hulls_[x] & s) != 0) up_closed = false;
      }
      if (down_closed) downs[n_downs++] = s;
      if (up_closed) {
        Mask m = old;
        for (Mask rest = s; rest != 0; rest &= rest - 1) m &= hulls_[std::countr_zero(rest)];
        up_meets[n_ups] = m;
        ups[n_ups++] = s;
      }
      if (s == 0) break;
    }
    const Mask bit = Mask{1} << k;
    for (std::size_t i = 0; i < n_downs; ++i) {
      for (std::size_t j = 0; j < n_ups; ++j) {
        if ((downs[i] & ~up_meets[j]) != 0) continue;
        hulls_[k] = downs[i] | bit;
        for (Mask rest = ups[j]; rest != 0; rest &= rest - 1) hulls_[std::countr_zero(rest)] |= bit;
        run_from(k + 1, visit);
        for (Mask rest = ups[j]; rest != 0; rest &= rest - 1) hulls_[std::countr_zero(rest)] &= ~bit;
      }
    }
  }

  // Same traversal stopping at depth `stop`, collecting the partial hull maps.
  void collect(int k, int stop, std::vector<std::array<Mask, kMaxEnumerate>>& out) {
    const int saved = n_;
    n_ = stop;
    auto record = [&](std::span<const Mask>) { out.push_back(hulls_); };
    run_from(k, record);
    n_ = saved;
  }

  void reset_to(const std::array<Mask, kMaxEnumerate>& hulls) { hulls_ = hulls; }

 private:
  int n_;
  std::array<Mask, kMaxEnumerate> hulls_{};
};

void check_enumeration_budget(int n, const EnumerationOptions& options) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "ground size must be positive");
  if (n > kMaxEnumerate || (n == kMaxEnumerate && !options.allow_seven)) {
    fail(ErrorKind::BudgetExceeded,
         "enumeration of topologies on " + std::to_string(n) +
             " points is outside the budget (n <= 6, or n = 7 with the explicit flag)");
  }
}

}  // namespace

std::string mask_to_string(WideMask mask) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (WideMask rest = mask; rest != 0; rest &= rest - 1) {
    if (!first) out << ',';
    out << std::countr_zero(rest);
    first = false;
  }
  out << '}';
  return out.str();
}

// ---------------------------------------------------------------- Bijection

Bijection::Bijection(std::vector<int> image) : image_(std::move(image)) {
  const int n = static_cast<int>(image_.size());
  if (n < 1 || n > kMaxWideGround) fail(ErrorKind::InvalidArgument, "bijection size outside 1..64");
  std::vector<bool> seen(image_.size(), false);
  for (int v : image_) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
      fail(ErrorKind::InvalidArgument, "image is not a permutation of 0.." + std::to_string(n - 1));
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Bijection Bijection::identity(int n) {
  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 0);
  return Bijection(std::move(image));
}

Bijection Bijection::swap(int n, int a, int b) {
  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 0);
  std::swap(image.at(static_cast<std::size_t>(a)), image.at(static_cast<std::size_t>(b)));
  return Bijection(std::move(image));
}

WideMask Bijection::apply(WideMask subset) const {
  WideMask out = 0;
  for (WideMask rest = subset; rest != 0; rest &= rest - 1) {
    out |= WideMask{1} << image_[static_cast<std::size_t>(std::countr_zero(rest))];
  }
  return out;
}

Bijection Bijection::inverse() const {
  std::vector<int> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[static_cast<std::size_t>(image_[i])] = static_cast<int>(i);
  return Bijection(std::move(inv));
}

Bijection Bijection::after(const Bijection& inner) const {
  check_same_ground(size(), inner.size());
  std::vector<int> out(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) out[i] = (*this)(inner(static_cast<int>(i)));
  return Bijection(std::move(out));
}

// ---------------------------------------------------------------- FinTopology

FinTopology FinTopology::indiscrete(int n) {
  check_ground(n);
  return FinTopology(n, {0, full_mask(n)});
}

FinTopology FinTopology::discrete(int n) {
  check_ground(n);
  std::vector<Mask> opens(std::size_t{1} << n);
  std::iota(opens.begin(), opens.end(), Mask{0});
  return FinTopology(n, std::move(opens));
}

FinTopology FinTopology::from_canonical(int n, std::vector<Mask> opens) {
  return FinTopology(n, std::move(opens));
}

bool FinTopology::is_open(Mask subset) const {
  return std::binary_search(opens_.begin(), opens_.end(), subset);
}

bool FinTopology::is_coarser_than(const FinTopology& finer) const {
  check_same_ground(n_, finer.n_);
  return std::includes(finer.opens_.begin(), finer.opens_.end(), opens_.begin(), opens_.end());
}

std::uint64_t FinTopology::family_bits() const {
  if (n_ > 6) fail(ErrorKind::InvalidArgument, "family bits need a ground set of at most 6 points");
  std::uint64_t bits = 0;
  for (Mask m : opens_) bits |= std::uint64_t{1} << m;
  return bits;
}

FinTopology validate_topology(int n, std::span<const Mask> family) {
  check_ground(n);
  const Mask full = full_mask(n);
  for (Mask m : family) {
    if ((m & ~full) != 0) {
      fail(ErrorKind::MaskOutOfRange, "mask " + std::to_string(m) + " does not fit in " + std::to_string(n) + " bits");
    }
  }
  std::vector<Mask> opens = canonical({family.begin(), family.end()});
  if (opens.empty() || opens.front() != 0) fail(ErrorKind::MissingEmptyOrFull, "empty set is not open");
  if (opens.back() != full) fail(ErrorKind::MissingEmptyOrFull, "full set is not open");

  std::vector<bool> present(std::size_t{1} << n, false);
  for (Mask m : opens) present[m] = true;
  for (std::size_t i = 0; i < opens.size(); ++i) {
    for (std::size_t j = i + 1; j < opens.size(); ++j) {
      const Mask a = opens[i], b = opens[j];
      if (!present[a | b]) {
        fail(ErrorKind::NotClosedUnderUnion,
             "union of " + mask_to_string(a) + " and " + mask_to_string(b) + " is not open");
      }
      if (!present[a & b]) {
        fail(ErrorKind::NotClosedUnderIntersection,
             "intersection of " + mask_to_string(a) + " and " + mask_to_string(b) + " is not open");
      }
    }
  }
  return FinTopology::from_canonical(n, std::move(opens));
}

FinTopology meet(const FinTopology& a, const FinTopology& b) {
  check_same_ground(a.ground_size(), b.ground_size());
  std::vector<Mask> out;
  std::set_intersection(a.opens().begin(), a.opens().end(), b.opens().begin(), b.opens().end(),
                        std::back_inserter(out));
  return FinTopology::from_canonical(a.ground_size(), std::move(out));
}

FinTopology join(const FinTopology& a, const FinTopology& b) {
  check_same_ground(a.ground_size(), b.ground_size());
  const int n = a.ground_size();
  std::vector<bool> present(std::size_t{1} << n, false);
  std::vector<Mask> list;
  auto add = [&](Mask m) {
    if (!present[m]) {
      present[m] = true;
      list.push_back(m);
    }
  };
  for (Mask m : a.opens()) add(m);
  for (Mask m : b.opens()) add(m);
  // every pair (i, j < i) is combined once i is reached
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      add(list[i] | list[j]);
      add(list[i] & list[j]);
    }
  }
  return FinTopology::from_canonical(n, canonical(std::move(list)));
}

FinTopology complement_map(const FinTopology& t) {
  std::vector<Mask> out;
  out.reserve(t.size());
  for (Mask m : t.opens()) out.push_back(t.full() & ~m);
  return FinTopology::from_canonical(t.ground_size(), canonical(std::move(out)));
}

FinTopology pushforward(const Bijection& theta, const FinTopology& t) {
  check_same_ground(theta.size(), t.ground_size());
  std::vector<Mask> out;
  out.reserve(t.size());
  for (Mask m : t.opens()) out.push_back(static_cast<Mask>(theta.apply(m)));
  return FinTopology::from_canonical(t.ground_size(), canonical(std::move(out)));
}

FinTopology pullback(const Bijection& theta, const FinTopology& t) {
  return pushforward(theta.inverse(), t);
}

FinTopology atom(Mask subset, int n) {
  check_ground(n);
  if ((subset & ~full_mask(n)) != 0) fail(ErrorKind::MaskOutOfRange, "atom subset exceeds the ground set");
  if (subset == 0 || subset == full_mask(n)) {
    fail(ErrorKind::ImproperSubset, "atoms need a nonempty proper subset, got " + mask_to_string(subset));
  }
  return FinTopology::from_canonical(n, {0, subset, full_mask(n)});
}

std::vector<FinTopology> atoms_of_sigma(int n) {
  check_ground(n);
  std::vector<FinTopology> out;
  for (Mask d = 1; d < full_mask(n); ++d) out.push_back(atom(d, n));
  return out;
}

bool is_atom(const FinTopology& t) { return t.ground_size() >= 2 && t.size() == 3; }

FinTopology sup_atoms(int n, std::span<const FinTopology> atoms) {
  FinTopology acc = FinTopology::indiscrete(n);
  for (const FinTopology& a : atoms) {
    check_same_ground(n, a.ground_size());
    if (!is_atom(a)) fail(ErrorKind::NotAnAtom, "topology with " + std::to_string(a.size()) + " opens is not an atom");
    acc = join(acc, a);
  }
  return acc;
}

// ---------------------------------------------------------------- NbhdTopology

NbhdTopology::NbhdTopology(std::vector<WideMask> hulls) : hulls_(std::move(hulls)) {
  const int n = static_cast<int>(hulls_.size());
  if (n < 1 || n > kMaxWideGround) fail(ErrorKind::InvalidArgument, "ground size outside 1..64");
  const WideMask full = wide_full_mask(n);
  for (int x = 0; x < n; ++x) {
    const WideMask h = hulls_[static_cast<std::size_t>(x)];
    if ((h & ~full) != 0 || ((h >> x) & 1u) == 0) {
      fail(ErrorKind::InvalidArgument, "hull of point " + std::to_string(x) + " must contain it");
    }
    for (WideMask rest = h; rest != 0; rest &= rest - 1) {
      if ((hulls_[static_cast<std::size_t>(std::countr_zero(rest))] & ~h) != 0) {
        fail(ErrorKind::InvalidArgument, "hulls are not transitive at point " + std::to_string(x));
      }
    }
  }
}

NbhdTopology NbhdTopology::from(const FinTopology& topology) {
  const int n = topology.ground_size();
  std::vector<WideMask> hulls(static_cast<std::size_t>(n), wide_full_mask(n));
  for (Mask m : topology.opens()) {
    for (Mask rest = m; rest != 0; rest &= rest - 1) hulls[static_cast<std::size_t>(std::countr_zero(rest))] &= m;
  }
  return NbhdTopology(std::move(hulls));
}

NbhdTopology NbhdTopology::discrete(int n) {
  std::vector<WideMask> hulls(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) hulls[static_cast<std::size_t>(x)] = WideMask{1} << x;
  return NbhdTopology(std::move(hulls));
}

NbhdTopology NbhdTopology::indiscrete(int n) {
  return NbhdTopology(std::vector<WideMask>(static_cast<std::size_t>(n), wide_full_mask(n)));
}

NbhdTopology NbhdTopology::generated_by(int n, std::span<const WideMask> subbase) {
  std::vector<WideMask> hulls(static_cast<std::size_t>(n), wide_full_mask(n));
  for (WideMask s : subbase) {
    for (WideMask rest = s & wide_full_mask(n); rest != 0; rest &= rest - 1) {
      hulls[static_cast<std::size_t>(std::countr_zero(rest))] &= s;
    }
  }
  return NbhdTopology(std::move(hulls));
}

bool NbhdTopology::is_open(WideMask subset) const {
  for (WideMask rest = subset; rest != 0; rest &= rest - 1) {
    if ((hulls_[static_cast<std::size_t>(std::countr_zero(rest))] & ~subset) != 0) return false;
  }
  return true;
}

bool NbhdTopology::is_discrete() const {
  for (std::size_t x = 0; x < hulls_.size(); ++x) {
    if (hulls_[x] != (WideMask{1} << x)) return false;
  }
  return true;
}

bool NbhdTopology::is_coarser_than(const NbhdTopology& finer) const {
  check_same_ground(ground_size(), finer.ground_size());
  for (std::size_t x = 0; x < hulls_.size(); ++x) {
    if ((finer.hulls_[x] & ~hulls_[x]) != 0) return false;
  }
  return true;
}

FinTopology NbhdTopology::to_fin() const {
  const int n = ground_size();
  check_ground(n);
  std::vector<Mask> narrow(hulls_.begin(), hulls_.end());
  return FinTopology::from_canonical(n, opens_from_hulls(n, narrow));
}

NbhdTopology complement_map(const NbhdTopology& t) {
  // the smallest closed set around x is the set of points whose hull meets x
  const int n = t.ground_size();
  std::vector<WideMask> hulls(static_cast<std::size_t>(n), 0);
  for (int y = 0; y < n; ++y) {
    for (WideMask rest = t.hull(y); rest != 0; rest &= rest - 1) {
      hulls[static_cast<std::size_t>(std::countr_zero(rest))] |= WideMask{1} << y;
    }
  }
  return NbhdTopology(std::move(hulls));
}

NbhdTopology pushforward(const Bijection& theta, const NbhdTopology& t) {
  check_same_ground(theta.size(), t.ground_size());
  std::vector<WideMask> hulls(static_cast<std::size_t>(t.ground_size()));
  for (int x = 0; x < t.ground_size(); ++x) hulls[static_cast<std::size_t>(theta(x))] = theta.apply(t.hull(x));
  return NbhdTopology(std::move(hulls));
}

NbhdTopology meet(const NbhdTopology& a, const NbhdTopology& b) {
  // open in both iff up-closed under both preorders: close each hull under a and b
  check_same_ground(a.ground_size(), b.ground_size());
  const int n = a.ground_size();
  std::vector<WideMask> hulls(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    WideMask h = WideMask{1} << x, prev = 0;
    while (h != prev) {
      prev = h;
      for (WideMask rest = prev; rest != 0; rest &= rest - 1) {
        const int y = std::countr_zero(rest);
        h |= a.hull(y) | b.hull(y);
      }
    }
    hulls[static_cast<std::size_t>(x)] = h;
  }
  return NbhdTopology(std::move(hulls));
}

NbhdTopology join(const NbhdTopology& a, const NbhdTopology& b) {
  check_same_ground(a.ground_size(), b.ground_size());
  std::vector<WideMask> hulls(static_cast<std::size_t>(a.ground_size()));
  for (int x = 0; x < a.ground_size(); ++x) hulls[static_cast<std::size_t>(x)] = a.hull(x) & b.hull(x);
  return NbhdTopology(std::move(hulls));
}

// ---------------------------------------------------------------- enumeration

void for_each_preorder(int n, const std::function<void(std::span<const Mask>)>& visit,
                       const EnumerationOptions& options) {
  check_enumeration_budget(n, options);
  PreorderWalker walker(n);
  walker.run_from(1, visit);
}

void for_each_topology(int n, const std::function<void(const FinTopology&)>& visit,
                       const EnumerationOptions& options) {
  for_each_preorder(
      n, [&](std::span<const Mask> hulls) { visit(FinTopology::from_canonical(n, opens_from_hulls(n, hulls))); },
      options);
}

std::vector<FinTopology> enumerate_topologies(int n, const EnumerationOptions& options) {
  std::vector<FinTopology> out;
  for_each_topology(n, [&](const FinTopology& t) { out.push_back(t); }, options);
  return out;
}

std::uint64_t count_topologies(int n, const EnumerationOptions& options) {
  check_enumeration_budget(n, options);
  const unsigned threads = std::max(1u, options.threads);
  const int split = std::min(n, 4);
  std::vector<std::array<Mask, kMaxEnumerate>> prefixes;
  {
    PreorderWalker walker(n);
    walker.collect(1, split, prefixes);
  }
  std::vector<std::uint64_t> partial(threads, 0);
  auto work = [&](unsigned id) {
    PreorderWalker walker(n);
    std::uint64_t count = 0;
    auto tally = [&](std::span<const Mask>) { ++count; };
    for (std::size_t i = id; i < prefixes.size(); i += threads) {
      walker.reset_to(prefixes[i]);
      walker.run_from(split, tally);
    }
    partial[id] = count;
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(work, id);
  }
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

}  // namespace toplat

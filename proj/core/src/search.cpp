#include "tukey/search.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "tukey/combinatorics.hpp"
#include "tukey/errors.hpp"
#include "tukey/region.hpp"

namespace tukey {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::A: return "A";
    case Strategy::B: return "B";
    case Strategy::C: return "C";
    case Strategy::A2: return "A2";
    case Strategy::ReducedD2: return "ReducedD2";
    case Strategy::ReducedK2: return "ReducedK2";
  }
  return "?";
}

Strategy parse_strategy(std::string_view text) {
  std::string low;
  for (char c : text) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (low == "a") return Strategy::A;
  if (low == "b") return Strategy::B;
  if (low == "c") return Strategy::C;
  if (low == "a2") return Strategy::A2;
  if (low == "reducedd2" || low == "reduced-d2" || low == "d2") return Strategy::ReducedD2;
  if (low == "reducedk2" || low == "reduced-k2" || low == "k2") return Strategy::ReducedK2;
  throw PreconditionError("unknown strategy '" + std::string(text) + "'");
}

bool strategy_is_exact(Strategy s, int dim, int k) {
  switch (s) {
    case Strategy::B:
    case Strategy::C: return true;
    case Strategy::A:
    case Strategy::A2: return dim == 2 || k <= 2;
    case Strategy::ReducedD2: return dim == 2;
    case Strategy::ReducedK2: return k == 2;
  }
  return false;
}

std::vector<HalfspaceKey> SearchResult::keys() const {
  std::vector<HalfspaceKey> out;
  out.reserve(halfspaces.size());
  for (const auto& h : halfspaces) out.push_back(h.key());
  return out;
}

std::vector<Ridge> ridges_of(std::span<const int> tuple) {
  std::vector<Ridge> out;
  out.reserve(tuple.size());
  // erase_at from the back keeps the output lexicographic.
  for (std::size_t i = tuple.size(); i-- > 0;) out.push_back(Ridge{erase_at(tuple, i)});
  return out;
}

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
// Above this many d-tuples the memo switches from a flat table to a hash map.
constexpr std::uint64_t kFlatLimit = std::uint64_t{1} << 25;

// Relevant (tuple, side) pair found through a ridge.
struct Hit {
  std::vector<int> tuple;
  Side side;
};

// Removes duplicates while keeping first occurrences.
std::vector<Ridge> dedupe(std::vector<Ridge> in) {
  std::set<std::vector<int>> seen;
  std::vector<Ridge> out;
  out.reserve(in.size());
  for (auto& r : in)
    if (seen.insert(r.indices).second) out.push_back(std::move(r));
  return out;
}

}  // namespace

struct SearchEngine::Impl {
  Dataset data;
  Predicates pred;
  int n;
  int d;
  std::vector<std::uint32_t> flat;
  std::unordered_map<std::uint64_t, std::uint32_t> sparse;
  bool use_flat;

  Impl(const Dataset& ds, Predicates p)
      : data(ds), pred(p), n(ds.n()), d(ds.dim()) {
    const std::uint64_t total = binomial(n, d);
    use_flat = total <= kFlatLimit;
    if (use_flat) flat.assign(static_cast<std::size_t>(total), kUnset);
  }

  SideCounts compute(std::span<const int> tuple) const {
    std::span<const double> pts[kMaxDim];
    for (int i = 0; i < d; ++i) pts[i] = data.point(tuple[i]);
    PlaneEvaluator ev(std::span<const std::span<const double>>(pts, static_cast<std::size_t>(d)),
                      pred);
    SideCounts c;
    int next = 0;
    for (int i = 0; i < n; ++i) {
      if (next < d && tuple[next] == i) {
        ++next;
        continue;
      }
      if (ev.side(data.point(i)) < 0)
        ++c.neg;
      else
        ++c.pos;
    }
    return c;
  }

  SideCounts counts(std::span<const int> tuple) { return counts(tuple, colex_rank(tuple)); }

  SideCounts counts(std::span<const int> tuple, std::uint64_t rank) {
    std::uint32_t* slot = nullptr;
    if (use_flat) {
      slot = &flat[static_cast<std::size_t>(rank)];
    } else {
      auto [it, fresh] = sparse.try_emplace(rank, kUnset);
      slot = &it->second;
    }
    if (*slot == kUnset) {
      const SideCounts c = compute(tuple);
      *slot = static_cast<std::uint32_t>(c.neg) | (static_cast<std::uint32_t>(c.pos) << 16);
      return c;
    }
    return SideCounts{static_cast<int>(*slot & 0xFFFFu), static_cast<int>(*slot >> 16)};
  }

  // Level-k (tuple, side) pairs whose boundary contains the ridge, in key order.
  std::vector<Hit> hits(const std::vector<int>& ridge, int k) {
    std::vector<Hit> out;
    std::vector<int> tuple(ridge.size() + 1);
    // Colex rank of ridge + {j} = (ranks of ridge entries below j, unshifted)
    // + C(j, pos + 1) + (ranks of entries above j, shifted one slot up).
    std::uint64_t below = 0;
    std::size_t pos = 0;
    for (int j = 0; j < n; ++j) {
      if (pos < ridge.size() && ridge[pos] == j) {
        below += binomial(j, static_cast<int>(pos) + 1);
        ++pos;
        continue;
      }
      std::uint64_t rank = below + binomial(j, static_cast<int>(pos) + 1);
      for (std::size_t q = pos; q < ridge.size(); ++q)
        rank += binomial(ridge[q], static_cast<int>(q) + 2);
      std::copy(ridge.begin(), ridge.begin() + static_cast<std::ptrdiff_t>(pos), tuple.begin());
      tuple[pos] = j;
      std::copy(ridge.begin() + static_cast<std::ptrdiff_t>(pos), ridge.end(),
                tuple.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
      const SideCounts c = counts(tuple, rank);
      // Plus keeps the positive side and cuts the negative points.
      if (c.pos == k - 1) out.push_back({tuple, Side::Minus});
      if (c.neg == k - 1) out.push_back({tuple, Side::Plus});
    }
    std::sort(out.begin(), out.end(), [](const Hit& a, const Hit& b) {
      return std::tie(a.tuple, a.side) < std::tie(b.tuple, b.side);
    });
    return out;
  }

  Halfspace materialise(const Hit& h) const {
    std::span<const double> pts[kMaxDim];
    for (int i = 0; i < d; ++i) pts[i] = data.point(h.tuple[i]);
    PlaneEvaluator ev(std::span<const std::span<const double>>(pts, static_cast<std::size_t>(d)),
                      pred);
    Halfspace out{Hyperplane{h.tuple, ev.normal(), ev.offset()}, h.side, {}};
    const int cut = h.side == Side::Plus ? -1 : 1;
    int next = 0;
    for (int i = 0; i < n; ++i) {
      if (next < d && h.tuple[next] == i) {
        ++next;
        continue;
      }
      if (ev.side(data.point(i)) == cut) out.cutoff.push_back(i);
    }
    return out;
  }

  void check_level(int k) const {
    if (k < 1 || k > n / 2)
      throw PreconditionError("level k must satisfy 1 <= k <= n/2 (got " +
                              std::to_string(k) + ")");
  }

  void check_ridge(const Ridge& r) const {
    if (static_cast<int>(r.indices.size()) != d - 1)
      throw PreconditionError("a ridge needs exactly d-1 point indices");
    for (std::size_t i = 0; i < r.indices.size(); ++i) {
      if (r.indices[i] < 0 || r.indices[i] >= n)
        throw PreconditionError("ridge index out of range");
      if (i > 0 && r.indices[i] <= r.indices[i - 1])
        throw PreconditionError("ridge indices must be strictly increasing");
    }
  }
};

SearchEngine::SearchEngine(const Dataset& data, Predicates pred)
    : impl_(std::make_unique<Impl>(data, pred)) {}
SearchEngine::~SearchEngine() = default;
SearchEngine::SearchEngine(SearchEngine&&) noexcept = default;
SearchEngine& SearchEngine::operator=(SearchEngine&&) noexcept = default;

const Dataset& SearchEngine::data() const noexcept { return impl_->data; }
const Predicates& SearchEngine::predicates() const noexcept { return impl_->pred; }

SideCounts SearchEngine::counts(std::span<const int> tuple) { return impl_->counts(tuple); }

std::vector<Halfspace> SearchEngine::relevant_through_ridge(const Ridge& ridge, int k) {
  impl_->check_ridge(ridge);
  impl_->check_level(k);
  std::vector<Halfspace> out;
  for (const auto& h : impl_->hits(ridge.indices, k)) out.push_back(impl_->materialise(h));
  return out;
}

std::vector<Halfspace> SearchEngine::orbit_of(const Ridge& seed, int k) {
  impl_->check_ridge(seed);
  impl_->check_level(k);
  std::set<std::pair<std::vector<int>, Side>> found;
  std::set<std::vector<int>> visited{seed.indices};
  std::deque<std::vector<int>> frontier{seed.indices};
  std::vector<Halfspace> out;
  while (!frontier.empty()) {
    auto ridge = std::move(frontier.front());
    frontier.pop_front();
    for (auto& h : impl_->hits(ridge, k)) {
      if (!found.emplace(h.tuple, h.side).second) continue;
      for (auto& r : ridges_of(h.tuple))
        if (visited.insert(r.indices).second) frontier.push_back(std::move(r.indices));
      out.push_back(impl_->materialise(h));
    }
  }
  std::sort(out.begin(), out.end(), key_less);
  return out;
}

std::vector<int> SearchEngine::smallest_hull_facet() {
  std::vector<int> facet;
  for_each_combination(impl_->n, impl_->d, [&](std::span<const int> t) {
    const SideCounts c = impl_->counts(t);
    if (c.neg == 0 || c.pos == 0) {
      facet.assign(t.begin(), t.end());
      return false;
    }
    return true;
  });
  if (facet.empty()) throw NumericalFailure("no hull facet found");
  return facet;
}

Ridge SearchEngine::hull_ridge() {
  auto f = smallest_hull_facet();
  f.pop_back();
  return Ridge{std::move(f)};
}

std::vector<Ridge> SearchEngine::init_A(int k) {
  impl_->check_level(k);
  const Ridge seed = hull_ridge();
  std::vector<Ridge> q{seed};
  const auto through = relevant_through_ridge(seed, k);
  for (const auto& h : through)
    for (auto& r : ridges_of(h.plane.indices)) q.push_back(std::move(r));
  for (const auto& h : through) {
    for (int c : h.cutoff) {
      if (seed.indices.empty()) continue;
      for (std::size_t p = 0; p < seed.indices.size(); ++p)
        q.push_back(Ridge{insert_sorted(erase_at(seed.indices, p), c)});
    }
  }
  return dedupe(std::move(q));
}

std::vector<Ridge> SearchEngine::init_B(int k, std::span<const Halfspace> prior) {
  impl_->check_level(k);
  if (k < 2) throw PreconditionError("strategy B needs k >= 2");
  if (prior.empty()) throw EmptyPrior("strategy B needs the halfspaces of level k-1");
  std::vector<const Halfspace*> sorted;
  for (const auto& h : prior) {
    if (h.level() != k - 1)
      throw PreconditionError("prior halfspace " + format_halfspace(h) +
                              " is not of level k-1");
    if (static_cast<int>(h.plane.indices.size()) != impl_->d)
      throw DimensionMismatch("prior halfspace dimension does not match the data");
    sorted.push_back(&h);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const Halfspace* a, const Halfspace* b) { return key_less(*a, *b); });
  std::vector<Ridge> q;
  for (const Halfspace* h : sorted)
    for (auto& r : ridges_of(h->plane.indices)) q.push_back(std::move(r));
  return dedupe(std::move(q));
}

std::vector<Ridge> SearchEngine::init_C() {
  std::vector<Ridge> q;
  q.reserve(static_cast<std::size_t>(binomial(impl_->n, impl_->d - 1)));
  for_each_combination(impl_->n, impl_->d - 1, [&](std::span<const int> t) {
    q.push_back(Ridge{{t.begin(), t.end()}});
    return true;
  });
  return q;
}

std::vector<Ridge> SearchEngine::init_A2(int k) {
  impl_->check_level(k);
  // The hull facets form a single orbit at level 1, reachable from any hull ridge.
  const auto facets = orbit_of(hull_ridge(), 1);
  std::vector<Ridge> q;
  for (const auto& f : facets)
    for (auto& r : ridges_of(f.plane.indices)) q.push_back(std::move(r));
  for (const auto& f : facets) {
    for (const auto& r : ridges_of(f.plane.indices)) {
      std::size_t pos = 0;
      for (int j = 0; j < impl_->n; ++j) {
        if (pos < r.indices.size() && r.indices[pos] == j) {
          ++pos;
          continue;
        }
        auto tuple = insert_sorted(r.indices, j);
        const int w = 1 + impl_->counts(tuple).smaller();
        if (w >= 2 && w <= k)
          for (auto& rr : ridges_of(tuple)) q.push_back(std::move(rr));
      }
    }
  }
  return dedupe(std::move(q));
}

std::vector<Ridge> SearchEngine::init_reduced_d2(int k) {
  if (impl_->d != 2) throw DimensionMismatch("strategy ReducedD2 needs d = 2");
  impl_->check_level(k);
  if (2 * k >= impl_->n)
    throw PreconditionError("strategy ReducedD2 needs k < n/2");
  const Ridge seed = hull_ridge();
  const auto through = relevant_through_ridge(seed, k);
  if (through.empty()) throw NumericalFailure("no level-k halfspace through the hull point");
  const Halfspace& h = through.front();
  std::vector<Ridge> q;
  for (int c : h.cutoff) q.push_back(Ridge{{c}});
  q.push_back(Ridge{{h.plane.indices.front()}});
  return dedupe(std::move(q));
}

std::vector<Ridge> SearchEngine::init_reduced_k2() {
  if (impl_->n < 4) throw PreconditionError("strategy ReducedK2 needs k = 2 <= n/2");
  const auto facet = smallest_hull_facet();
  std::vector<Ridge> q;
  for (std::size_t i = 0; i < facet.size(); ++i) {
    const Ridge r{erase_at(facet, i)};
    bool found = false;
    for (const auto& h : relevant_through_ridge(r, 2)) {
      if (h.cutoff.size() == 1 && h.cutoff.front() == facet[i]) {
        for (auto& rr : ridges_of(h.plane.indices)) q.push_back(std::move(rr));
        found = true;
        break;
      }
    }
    if (!found) throw NumericalFailure("no level-2 halfspace cuts off hull vertex " +
                                       std::to_string(facet[i]));
  }
  return dedupe(std::move(q));
}

std::vector<Ridge> SearchEngine::initial_queue(int k, const InitStrategy& s) {
  switch (s.tag) {
    case Strategy::A: return init_A(k);
    case Strategy::B: return init_B(k, s.prior);
    case Strategy::C: impl_->check_level(k); return init_C();
    case Strategy::A2: return init_A2(k);
    case Strategy::ReducedD2: return init_reduced_d2(k);
    case Strategy::ReducedK2:
      if (k != 2) throw PreconditionError("strategy ReducedK2 needs k = 2");
      return init_reduced_k2();
  }
  throw PreconditionError("unknown strategy");
}

SearchResult SearchEngine::search(int k, const InitStrategy& s) {
  const auto queue = initial_queue(k, s);
  SearchResult res;
  res.level = k;
  res.strategy = s.tag;
  res.exact = strategy_is_exact(s.tag, impl_->d, k);
  res.initial_queue = queue.size();

  std::unordered_set<std::uint64_t> visited;
  std::unordered_set<std::uint64_t> found;  // 2 * tuple rank + (side == Plus)
  std::vector<std::vector<Hit>> orbits;
  for (const auto& start : queue) {
    if (!visited.insert(colex_rank(start.indices)).second) continue;
    std::vector<Hit> members;
    std::deque<std::vector<int>> frontier{start.indices};
    while (!frontier.empty()) {
      auto ridge = std::move(frontier.front());
      frontier.pop_front();
      for (auto& h : impl_->hits(ridge, k)) {
        const std::uint64_t key = 2 * colex_rank(h.tuple) + (h.side == Side::Plus ? 1 : 0);
        if (!found.insert(key).second) continue;
        for (auto& r : ridges_of(h.tuple))
          if (visited.insert(colex_rank(r.indices)).second)
            frontier.push_back(std::move(r.indices));
        members.push_back(std::move(h));
      }
    }
    if (!members.empty()) orbits.push_back(std::move(members));
  }
  res.ridges_visited = visited.size();

  std::vector<std::pair<Halfspace, std::size_t>> all;
  for (std::size_t o = 0; o < orbits.size(); ++o)
    for (const auto& h : orbits[o]) all.emplace_back(impl_->materialise(h), o);
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return key_less(a.first, b.first); });
  res.orbits.assign(orbits.size(), {});
  for (std::size_t i = 0; i < all.size(); ++i) {
    res.orbits[all[i].second].push_back(i);
    res.halfspaces.push_back(std::move(all[i].first));
  }
  std::sort(res.orbits.begin(), res.orbits.end());
  return res;
}

std::vector<SearchResult> SearchEngine::compute_all_regions(int max_level) {
  impl_->check_level(max_level);
  std::vector<SearchResult> out;
  bool empty_seen = false;
  for (int k = 1; k <= max_level; ++k) {
    if (empty_seen) {
      SearchResult skip;
      skip.level = k;
      skip.strategy = Strategy::B;
      skip.exact = true;
      skip.skipped = true;
      out.push_back(std::move(skip));
      continue;
    }
    SearchResult r = k == 1 ? search(1, InitStrategy{Strategy::A, {}})
                            : search(k, InitStrategy{Strategy::B, out.back().halfspaces});
    if (r.halfspaces.empty() ||
        classify_intersection(impl_->data, r.halfspaces, impl_->pred) == RegionStatus::Empty)
      empty_seen = true;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Halfspace> relevant_halfspaces_through_ridge(const Dataset& data,
                                                         const Ridge& ridge, int k,
                                                         const Predicates& pred) {
  return SearchEngine(data, pred).relevant_through_ridge(ridge, k);
}

std::vector<Halfspace> orbit_of(const Dataset& data, int k, const Ridge& seed,
                                const Predicates& pred) {
  return SearchEngine(data, pred).orbit_of(seed, k);
}

SearchResult ridge_search(const Dataset& data, int k, const InitStrategy& strategy,
                          const Predicates& pred) {
  return SearchEngine(data, pred).search(k, strategy);
}

std::vector<SearchResult> compute_all_regions(const Dataset& data, int max_level,
                                              const Predicates& pred) {
  return SearchEngine(data, pred).compute_all_regions(max_level);
}

}  // namespace tukey

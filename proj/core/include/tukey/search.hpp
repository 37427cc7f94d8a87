#pragma once

// Ridge-based breadth-first search for the relevant halfspaces H(k) of a
// dataset, with pluggable queue initialisations.
//
//   A          one hull ridge, every level-k halfspace through it, and the
//              ridges mixing d-2 of its points with one cut-off point
//   B          every ridge of every halfspace of the complete H(k-1)
//   C          every ridge of the dataset
//   A2         ridges of all hull facets plus ridges of every halfspace of
//              level 2..k that shares a ridge with a hull facet
//   ReducedD2  (d = 2) the k-1 points cut off by one H in H(k) plus one of
//              its boundary points
//   ReducedK2  (k = 2) ridges of d level-2 halfspaces, each cutting off a
//              different vertex of one hull facet
//
// C and B always return all of H(k). A is only guaranteed to for d = 2 or
// k <= 2; for larger d and k it can miss whole orbits.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "tukey/geometry.hpp"

namespace tukey {

enum class Strategy { A, B, C, A2, ReducedD2, ReducedK2 };

std::string_view to_string(Strategy s);
/// Case-insensitive; throws PreconditionError on unknown names.
Strategy parse_strategy(std::string_view text);

struct InitStrategy {
  Strategy tag = Strategy::C;
  /// Complete H(k-1); required by B, ignored otherwise.
  std::span<const Halfspace> prior = {};
};

struct SearchResult {
  int level = 0;
  Strategy strategy = Strategy::C;
  std::vector<Halfspace> halfspaces;  // sorted by key()
  /// Orbits as sorted positions into `halfspaces`, ordered by first member.
  std::vector<std::vector<std::size_t>> orbits;
  std::size_t initial_queue = 0;
  std::size_t ridges_visited = 0;
  /// The strategy carries an exactness guarantee for this (d, k).
  bool exact = false;
  /// Set by compute_all_regions for levels above an empty region.
  bool skipped = false;

  std::vector<HalfspaceKey> keys() const;
};

bool strategy_is_exact(Strategy s, int dim, int k);

/// Search state for one dataset. Memoises the side counts of every
/// observational hyperplane it touches, so repeated searches over the same
/// data (several levels, several strategies) share that work. Not
/// thread-safe; use one engine per thread.
class SearchEngine {
 public:
  explicit SearchEngine(const Dataset& data, Predicates pred = {});
  ~SearchEngine();
  SearchEngine(SearchEngine&&) noexcept;
  SearchEngine& operator=(SearchEngine&&) noexcept;

  const Dataset& data() const noexcept;
  const Predicates& predicates() const noexcept;

  /// Side counts of the hyperplane through a sorted d-tuple (memoised).
  SideCounts counts(std::span<const int> tuple);

  /// Every H in H(k) whose boundary contains the ridge, sorted by key.
  std::vector<Halfspace> relevant_through_ridge(const Ridge& ridge, int k);

  /// Breadth-first closure of the neighbouring relation started from the
  /// level-k halfspaces through `seed`. Empty if there are none.
  std::vector<Halfspace> orbit_of(const Ridge& seed, int k);

  /// Lexicographically smallest d-tuple spanning a facet of conv(X).
  std::vector<int> smallest_hull_facet();
  /// Lexicographically smallest ridge of smallest_hull_facet().
  Ridge hull_ridge();

  std::vector<Ridge> init_A(int k);
  std::vector<Ridge> init_B(int k, std::span<const Halfspace> prior);
  std::vector<Ridge> init_C();
  std::vector<Ridge> init_A2(int k);
  std::vector<Ridge> init_reduced_d2(int k);
  std::vector<Ridge> init_reduced_k2();

  std::vector<Ridge> initial_queue(int k, const InitStrategy& strategy);

  SearchResult search(int k, const InitStrategy& strategy);

  /// Levels 1..K: level 1 from the hull ridge, every further level from the
  /// exact previous level (strategy B). Once a level's region is empty the
  /// remaining levels are returned with `skipped` set and no halfspaces.
  std::vector<SearchResult> compute_all_regions(int max_level);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Free-function forms. Each builds a throw-away engine.
std::vector<Halfspace> relevant_halfspaces_through_ridge(const Dataset& data,
                                                         const Ridge& ridge, int k,
                                                         const Predicates& pred = {});
std::vector<Halfspace> orbit_of(const Dataset& data, int k, const Ridge& seed,
                                const Predicates& pred = {});
SearchResult ridge_search(const Dataset& data, int k, const InitStrategy& strategy,
                          const Predicates& pred = {});
std::vector<SearchResult> compute_all_regions(const Dataset& data, int max_level,
                                              const Predicates& pred = {});

/// All (d-1)-subsets of a d-tuple, lexicographic.
std::vector<Ridge> ridges_of(std::span<const int> tuple);

}  // namespace tukey

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treespan/tree.hpp"

namespace treespan {

/// splitmix64: tiny, seedable, identical across platforms, which keeps the
/// randomized suites reproducible from a seed alone.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n); n must be positive.
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

/// Uniformly shaped random tree with n nodes labeled prefix+"0"..; node i's
/// parent is drawn among nodes 0..i-1, then labels are shuffled so label
/// order carries no structural information.
RootedTree random_tree(Rng& rng, int n, const std::string& prefix);

struct SuiteResult {
  std::string name;
  long cases = 0;
  long violations = 0;
  std::string first_failure;
};

/// Runs every randomized law suite (embedding hierarchy, path lifting, LCA
/// preservation, bijective-minor rigidity, intersection laws, pushout laws,
/// LCST/SCST duality). `iterations` scales the instance counts linearly.
std::vector<SuiteResult> run_property_suites(std::uint64_t seed, int iterations);

}  // namespace treespan

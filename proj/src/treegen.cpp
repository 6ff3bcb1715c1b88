#include "treespan/treegen.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

namespace treespan {

namespace {

std::mutex cache_mutex;
std::vector<std::vector<std::string>> shape_cache;  // by node count

void grow_cache(int n) {
  while (static_cast<int>(shape_cache.size()) <= n) {
    int k = static_cast<int>(shape_cache.size());
    if (k == 0) {
      shape_cache.push_back({""});
      continue;
    }
    if (k == 1) {
      shape_cache.push_back({"()"});
      continue;
    }
    // Pool of all smaller shapes; a child list in non-decreasing encoding
    // order picks each multiset exactly once.
    std::vector<std::string> pool;
    for (int s = 1; s < k; ++s)
      pool.insert(pool.end(), shape_cache[s].begin(), shape_cache[s].end());
    std::sort(pool.begin(), pool.end());

    std::vector<std::string> out;
    std::vector<const std::string*> chosen;
    std::function<void(int, std::size_t)> extend = [&](int remaining, std::size_t start) {
      if (remaining == 0) {
        std::string e = "(";
        for (const auto* c : chosen) e += *c;
        e += ")";
        out.push_back(std::move(e));
        return;
      }
      for (std::size_t i = start; i < pool.size(); ++i) {
        int sz = static_cast<int>(pool[i].size() / 2);
        if (sz > remaining) continue;
        chosen.push_back(&pool[i]);
        extend(remaining - sz, i);
        chosen.pop_back();
      }
    };
    extend(k - 1, 0);
    std::sort(out.begin(), out.end());
    shape_cache.push_back(std::move(out));
  }
}

}  // namespace

std::vector<std::string> canonical_shapes(int n) {
  if (n < 0) fail(Errc::BoundExceeded, "negative node count");
  std::lock_guard<std::mutex> lock(cache_mutex);
  grow_cache(n);
  return shape_cache[n];
}

RootedTree tree_from_encoding(const std::string& enc) {
  if (enc.empty()) return RootedTree();
  const int n = static_cast<int>(enc.size() / 2);
  const std::size_t width = std::to_string(n).size();
  auto lab = [&](int idx) {
    std::string s = std::to_string(idx);
    return std::string(width - s.size(), '0') + s;
  };

  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> arcs;
  std::vector<int> stack;
  int counter = 0;
  for (char ch : enc) {
    if (ch == '(') {
      ++counter;
      nodes.push_back(lab(counter));
      if (!stack.empty()) arcs.emplace_back(lab(stack.back()), lab(counter));
      stack.push_back(counter);
    } else if (ch == ')') {
      if (stack.empty()) fail(Errc::SyntaxError, "unbalanced encoding");
      stack.pop_back();
    } else {
      fail(Errc::SyntaxError, "encoding may only contain parentheses");
    }
  }
  if (!stack.empty() || counter != n)
    fail(Errc::SyntaxError, "unbalanced encoding");
  return RootedTree::validate(std::move(nodes), std::move(arcs), lab(1));
}

}  // namespace treespan

#pragma once
// Finite posets: order relation, up/down sets, strict chains.

#include <algorithm>
#include <string>
#include <vector>

#include "shv/field.hpp"

namespace shv {

struct Poset {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> le;  // le[a][b] : a <= b

  int size() const { return int(names.size()); }
  bool leq(int a, int b) const { return le[a][b]; }

  void validate() const {
    int n = size();
    for (int a = 0; a < n; ++a) {
      if (!le[a][a]) throw std::logic_error("Poset: not reflexive");
      for (int b = 0; b < n; ++b) {
        if (a != b && le[a][b] && le[b][a]) throw std::logic_error("Poset: not antisymmetric");
        for (int c = 0; c < n; ++c)
          if (le[a][b] && le[b][c] && !le[a][c]) throw std::logic_error("Poset: not transitive");
      }
    }
  }

  std::vector<int> downSet(int x) const {
    std::vector<int> r;
    for (int a = 0; a < size(); ++a)
      if (le[a][x]) r.push_back(a);
    return r;
  }
  std::vector<int> upSet(int x) const {
    std::vector<int> r;
    for (int a = 0; a < size(); ++a)
      if (le[x][a]) r.push_back(a);
    return r;
  }

  bool isDownSet(const std::vector<int>& xs) const {
    std::vector<bool> in(size(), false);
    for (int x : xs) in[x] = true;
    for (int x : xs)
      for (int a = 0; a < size(); ++a)
        if (le[a][x] && !in[a]) return false;
    return true;
  }
  bool isUpSet(const std::vector<int>& xs) const {
    std::vector<bool> in(size(), false);
    for (int x : xs) in[x] = true;
    for (int x : xs)
      for (int a = 0; a < size(); ++a)
        if (le[x][a] && !in[a]) return false;
    return true;
  }

  std::vector<int> complement(const std::vector<int>& xs) const {
    std::vector<bool> in(size(), false);
    for (int x : xs) in[x] = true;
    std::vector<int> r;
    for (int a = 0; a < size(); ++a)
      if (!in[a]) r.push_back(a);
    return r;
  }

  Poset opposite() const {
    Poset p;
    p.names = names;
    int n = size();
    p.le.assign(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) p.le[a][b] = le[b][a];
    return p;
  }

  // Induced subposet on the given elements (kept in the given order).
  Poset induced(const std::vector<int>& xs) const {
    Poset p;
    int m = int(xs.size());
    p.le.assign(m, std::vector<bool>(m, false));
    for (int i = 0; i < m; ++i) {
      p.names.push_back(names[xs[i]]);
      for (int j = 0; j < m; ++j) p.le[i][j] = le[xs[i]][xs[j]];
    }
    return p;
  }

  std::vector<int> maximal() const {
    std::vector<int> r;
    for (int a = 0; a < size(); ++a) {
      bool mx = true;
      for (int b = 0; b < size(); ++b)
        if (b != a && le[a][b]) mx = false;
      if (mx) r.push_back(a);
    }
    return r;
  }

  // All nonempty strictly increasing chains, in deterministic order:
  // by length, then lexicographically.
  std::vector<std::vector<int>> chains() const {
    std::vector<std::vector<int>> all;
    std::vector<std::vector<int>> frontier;
    for (int a = 0; a < size(); ++a) frontier.push_back({a});
    while (!frontier.empty()) {
      std::sort(frontier.begin(), frontier.end());
      for (auto& c : frontier) all.push_back(c);
      std::vector<std::vector<int>> next;
      for (auto& c : frontier)
        for (int b = 0; b < size(); ++b)
          if (b != c.back() && le[c.back()][b]) {
            auto e = c;
            e.push_back(b);
            next.push_back(e);
          }
      frontier = std::move(next);
    }
    return all;
  }
};

enum class SubposetKind { Open, Closed, Neither };

inline SubposetKind classifySubposet(const Poset& p, const std::vector<int>& xs) {
  bool down = p.isDownSet(xs), up = p.isUpSet(xs);
  if (down) return SubposetKind::Open;
  if (up) return SubposetKind::Closed;
  return SubposetKind::Neither;
}

}  // namespace shv

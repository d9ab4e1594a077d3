#pragma once
// Finite simplicial complexes, product bases, face posets in the
// closure-reversal order (s <= t iff the stratum of t lies in the closure of
// the stratum of s, i.e. t is a face of s), and the staircase triangulation
// of |K| x |K| containing the diagonal.

#include <map>
#include <memory>
#include <set>

#include "shv/poset.hpp"

namespace shv {

struct SimplicialComplex {
  std::vector<std::string> vertexNames;
  std::vector<BigRat> coords;  // optional 1-d coordinates, one per vertex
  std::vector<std::vector<int>> simplices;  // sorted vertex lists

  int vertexCount() const { return int(vertexNames.size()); }
  int size() const { return int(simplices.size()); }
  int dim(int s) const { return int(simplices[s].size()) - 1; }

  int index(const std::vector<int>& verts) const {
    for (int i = 0; i < size(); ++i)
      if (simplices[i] == verts) return i;
    return -1;
  }

  std::string simplexName(int s) const {
    std::string r;
    for (std::size_t i = 0; i < simplices[s].size(); ++i) {
      if (i) r += ".";
      r += vertexNames[simplices[s][i]];
    }
    return r;
  }

  void validate() const {
    if (!coords.empty() && int(coords.size()) != vertexCount())
      throw std::logic_error("SimplicialComplex: coordinate count mismatch");
    std::set<std::vector<int>> seen;
    for (auto& s : simplices) {
      if (s.empty() || !std::is_sorted(s.begin(), s.end()) ||
          std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::logic_error("SimplicialComplex: simplices must be sorted vertex sets");
      for (int v : s)
        if (v < 0 || v >= vertexCount()) throw std::logic_error("SimplicialComplex: bad vertex");
      if (!seen.insert(s).second) throw std::logic_error("SimplicialComplex: duplicate simplex");
    }
    for (auto& s : seen)
      if (s.size() > 1)
        for (std::size_t i = 0; i < s.size(); ++i) {
          std::vector<int> f;
          for (std::size_t j = 0; j < s.size(); ++j)
            if (j != i) f.push_back(s[j]);
          if (!seen.count(f))
            throw std::logic_error("SimplicialComplex: not downward closed");
        }
  }

  // +-1 if tau is a coface of sigma with one extra vertex, else 0.
  int incidence(int sigma, int tau) const {
    const auto &s = simplices[sigma], &t = simplices[tau];
    if (t.size() != s.size() + 1) return 0;
    if (!std::includes(t.begin(), t.end(), s.begin(), s.end())) return 0;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (i >= s.size() || t[i] != s[i]) return i % 2 == 0 ? 1 : -1;
    return 0;
  }
};

// Standard small complexes.
inline SimplicialComplex pointComplex() {
  SimplicialComplex k;
  k.vertexNames = {"p"};
  k.simplices = {{0}};
  return k;
}

inline SimplicialComplex intervalComplex() {
  SimplicialComplex k;
  k.vertexNames = {"v0", "v1"};
  k.simplices = {{0}, {1}, {0, 1}};
  return k;
}

// Simplicial circle with n >= 3 vertices v0..v_{n-1}, edges between cyclic
// neighbours; optional uniform coordinates i/n.
inline SimplicialComplex circleComplex(int n) {
  if (n < 3) throw std::invalid_argument("circleComplex: need at least 3 vertices");
  SimplicialComplex k;
  for (int i = 0; i < n; ++i) {
    k.vertexNames.push_back("v" + std::to_string(i));
    k.coords.push_back(BigRat(i, n));
    k.simplices.push_back({i});
  }
  for (int i = 0; i < n; ++i) {
    std::vector<int> e = {i, (i + 1) % n};
    std::sort(e.begin(), e.end());
    k.simplices.push_back(e);
  }
  return k;
}

// Subdivided interval with n+1 vertices at i/n.
inline SimplicialComplex pathComplex(int n) {
  SimplicialComplex k;
  for (int i = 0; i <= n; ++i) {
    k.vertexNames.push_back("v" + std::to_string(i));
    k.coords.push_back(BigRat(i, n));
    k.simplices.push_back({i});
  }
  for (int i = 0; i < n; ++i) k.simplices.push_back({i, i + 1});
  return k;
}

// A base is a product of simplicial factors; a sheaf lives on its face poset.
// Elements are tuples of simplex indices, enumerated in mixed-radix order
// (last factor fastest).
class Base {
 public:
  static std::shared_ptr<const Base> simplicial(SimplicialComplex k) {
    auto b = std::shared_ptr<Base>(new Base);
    b->factors_.push_back(std::move(k));
    b->build();
    return b;
  }
  static std::shared_ptr<const Base> product(const std::shared_ptr<const Base>& a,
                                             const std::shared_ptr<const Base>& c) {
    auto b = std::shared_ptr<Base>(new Base);
    for (auto& f : a->factors_) b->factors_.push_back(f);
    for (auto& f : c->factors_) b->factors_.push_back(f);
    b->build();
    return b;
  }

  int factorCount() const { return int(factors_.size()); }
  const SimplicialComplex& factor(int i) const { return factors_[i]; }
  int size() const { return int(elems_.size()); }
  const std::vector<int>& tuple(int e) const { return elems_[e]; }
  const Poset& poset() const { return poset_; }
  bool leq(int a, int b) const { return poset_.le[a][b]; }

  int elementIndex(const std::vector<int>& tup) const {
    int e = 0;
    for (int i = 0; i < factorCount(); ++i) e = e * factors_[i].size() + tup[i];
    return e;
  }

  std::string name(int e) const {
    if (factorCount() == 1) return factors_[0].simplexName(elems_[e][0]);
    std::string r = "(";
    for (int i = 0; i < factorCount(); ++i) {
      if (i) r += "|";
      r += factors_[i].simplexName(elems_[e][i]);
    }
    return r + ")";
  }

  int dim(int e) const {
    int d = 0;
    for (int i = 0; i < factorCount(); ++i) d += factors_[i].dim(elems_[e][i]);
    return d;
  }

  // Open star str(e) = {t : t <= e}, a down-set.
  std::vector<int> star(int e) const { return poset_.downSet(e); }

  // Smallest-support element u with str(a) /\ str(b) = str(u), or -1 if the
  // intersection is empty.
  int join(int a, int b) const { return join_[a][b]; }

  bool operator==(const Base& o) const {
    if (factorCount() != o.factorCount()) return false;
    for (int i = 0; i < factorCount(); ++i) {
      if (factors_[i].vertexNames != o.factors_[i].vertexNames) return false;
      if (factors_[i].simplices != o.factors_[i].simplices) return false;
    }
    return true;
  }

 private:
  Base() = default;

  void build() {
    for (auto& f : factors_) f.validate();
    int n = 1;
    for (auto& f : factors_) n *= f.size();
    elems_.resize(n);
    for (int e = 0; e < n; ++e) {
      int x = e;
      std::vector<int> tup(factorCount());
      for (int i = factorCount() - 1; i >= 0; --i) {
        tup[i] = x % factors_[i].size();
        x /= factors_[i].size();
      }
      elems_[e] = tup;
    }
    poset_.names.resize(n);
    poset_.le.assign(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a) {
      poset_.names[a] = name(a);
      for (int b = 0; b < n; ++b) {
        bool ok = true;
        for (int i = 0; i < factorCount() && ok; ++i) {
          const auto& sa = factors_[i].simplices[elems_[a][i]];
          const auto& sb = factors_[i].simplices[elems_[b][i]];
          // a <= b iff each b-component is a face of the a-component
          ok = std::includes(sa.begin(), sa.end(), sb.begin(), sb.end());
        }
        poset_.le[a][b] = ok;
      }
    }
    join_.assign(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        std::vector<int> tup(factorCount());
        bool ok = true;
        for (int i = 0; i < factorCount() && ok; ++i) {
          const auto& sa = factors_[i].simplices[elems_[a][i]];
          const auto& sb = factors_[i].simplices[elems_[b][i]];
          std::vector<int> u;
          std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(u));
          int idx = factors_[i].index(u);
          if (idx < 0)
            ok = false;
          else
            tup[i] = idx;
        }
        if (ok) join_[a][b] = elementIndex(tup);
      }
  }

  std::vector<SimplicialComplex> factors_;
  std::vector<std::vector<int>> elems_;
  Poset poset_;
  std::vector<std::vector<int>> join_;
};

using BasePtr = std::shared_ptr<const Base>;

struct PosetMap {
  enum class Kind { General, OpenInclusion, ClosedInclusion, Refinement, Projection, Diagonal };

  BasePtr source, target;
  std::vector<int> img;  // element-wise assignment
  Kind kind = Kind::General;

  int operator()(int e) const { return img[e]; }

  void validate() const {
    if (int(img.size()) != source->size()) throw std::logic_error("PosetMap: size mismatch");
    for (int a = 0; a < source->size(); ++a)
      for (int b = 0; b < source->size(); ++b)
        if (source->leq(a, b) && !target->leq(img[a], img[b]))
          throw std::logic_error("PosetMap: not order-preserving");
    if (kind == Kind::OpenInclusion || kind == Kind::ClosedInclusion) {
      std::vector<int> image(img.begin(), img.end());
      std::sort(image.begin(), image.end());
      if (std::adjacent_find(image.begin(), image.end()) != image.end())
        throw std::logic_error("PosetMap: inclusion not injective");
      if (kind == Kind::OpenInclusion && !target->poset().isDownSet(image))
        throw std::logic_error("PosetMap: open inclusion image is not a down-set");
      if (kind == Kind::ClosedInclusion && !target->poset().isUpSet(image))
        throw std::logic_error("PosetMap: closed inclusion image is not an up-set");
    }
    if (kind == Kind::Refinement) {
      std::vector<bool> hit(target->size(), false);
      for (int x : img) hit[x] = true;
      for (bool h : hit)
        if (!h) throw std::logic_error("PosetMap: refinement not surjective");
    }
  }
};

// Inclusion of a down-set or up-set as a poset map from the induced base-less
// subposet is handled at the sheaf level; here we only provide projections
// and the identity.
inline PosetMap identityMap(const BasePtr& b) {
  PosetMap m;
  m.source = m.target = b;
  m.img.resize(b->size());
  for (int e = 0; e < b->size(); ++e) m.img[e] = e;
  return m;
}

// Projection of a product base onto a subset of its factors (kept in order).
inline PosetMap factorProjection(const BasePtr& src, const std::vector<int>& keep,
                                 const BasePtr& tgt) {
  PosetMap m;
  m.source = src;
  m.target = tgt;
  m.kind = PosetMap::Kind::Projection;
  for (int e = 0; e < src->size(); ++e) {
    std::vector<int> tup;
    for (int i : keep) tup.push_back(src->tuple(e)[i]);
    m.img.push_back(tgt->elementIndex(tup));
  }
  return m;
}

// Coordinate swap on a two-factor product of equal factors.
inline PosetMap swapMap(const BasePtr& prod) {
  if (prod->factorCount() != 2) throw std::invalid_argument("swapMap: need two factors");
  PosetMap m;
  m.source = m.target = prod;
  for (int e = 0; e < prod->size(); ++e) {
    auto t = prod->tuple(e);
    std::swap(t[0], t[1]);
    m.img.push_back(prod->elementIndex(t));
  }
  return m;
}

// Staircase triangulation of |K| x |K|: the refinement R, the map
// q : R -> K x K sending each simplex to the product cell containing its
// interior, and the diagonal subcomplex.
struct ProductGeometry {
  BasePtr prod;       // K x K
  BasePtr refined;    // R as a one-factor base
  PosetMap q;         // refinement R -> K x K
  PosetMap diagonal;  // K -> R, closed inclusion onto the diagonal
};

inline ProductGeometry staircase(const SimplicialComplex& k) {
  BasePtr kb = Base::simplicial(k);
  BasePtr prod = Base::product(kb, kb);

  SimplicialComplex r;
  int nv = k.vertexCount();
  auto gridId = [&](int a, int b) { return a * nv + b; };
  for (int a = 0; a < nv; ++a)
    for (int b = 0; b < nv; ++b) {
      r.vertexNames.push_back("(" + k.vertexNames[a] + "," + k.vertexNames[b] + ")");
    }
  // Simplices: chains in the componentwise order on pairs whose coordinate
  // projections span simplices of K. Enumerate per product cell so each chain
  // is produced once with its q-image.
  std::vector<std::vector<int>> rSimp;
  std::vector<std::pair<int, int>> rCell;
  for (int si = 0; si < k.size(); ++si)
    for (int ti = 0; ti < k.size(); ++ti) {
      const auto &sv = k.simplices[si], &tv = k.simplices[ti];
      std::vector<std::pair<int, int>> grid;
      for (int a : sv)
        for (int b : tv) grid.push_back({a, b});
      std::sort(grid.begin(), grid.end());
      // chains under componentwise <=
      std::vector<std::vector<int>> stack;
      for (std::size_t i = 0; i < grid.size(); ++i) stack.push_back({int(i)});
      while (!stack.empty()) {
        auto c = stack.back();
        stack.pop_back();
        // check exact projections when accepting
        std::set<int> ps, pt;
        for (int gi : c) {
          ps.insert(grid[gi].first);
          pt.insert(grid[gi].second);
        }
        if (int(ps.size()) == int(sv.size()) && int(pt.size()) == int(tv.size())) {
          std::vector<int> verts;
          for (int gi : c) verts.push_back(gridId(grid[gi].first, grid[gi].second));
          std::sort(verts.begin(), verts.end());
          rSimp.push_back(verts);
          rCell.push_back({si, ti});
        }
        for (std::size_t j = c.back() + 1; j < grid.size(); ++j) {
          auto [a1, b1] = grid[c.back()];
          auto [a2, b2] = grid[j];
          if (a1 <= a2 && b1 <= b2) {
            auto e = c;
            e.push_back(int(j));
            stack.push_back(e);
          }
        }
      }
    }
  // Compact vertex set: drop unused grid vertices, sort simplices.
  std::vector<int> used(nv * nv, -1);
  std::vector<std::pair<std::vector<int>, std::pair<int, int>>> order;
  for (std::size_t i = 0; i < rSimp.size(); ++i) order.push_back({rSimp[i], rCell[i]});
  std::sort(order.begin(), order.end(), [](auto& x, auto& y) {
    if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
    return x.first < y.first;
  });
  SimplicialComplex rc;
  for (int g = 0; g < nv * nv; ++g) {
    bool u = false;
    for (auto& [s, c] : order)
      for (int v : s)
        if (v == g) u = true;
    if (u) {
      used[g] = int(rc.vertexNames.size());
      rc.vertexNames.push_back(r.vertexNames[g]);
    }
  }
  std::vector<std::pair<int, int>> cellOf;
  for (auto& [s, c] : order) {
    std::vector<int> verts;
    for (int v : s) verts.push_back(used[v]);
    std::sort(verts.begin(), verts.end());
    rc.simplices.push_back(verts);
    cellOf.push_back(c);
  }
  rc.validate();

  ProductGeometry g;
  g.prod = prod;
  g.refined = Base::simplicial(rc);
  g.q.source = g.refined;
  g.q.target = prod;
  g.q.kind = PosetMap::Kind::Refinement;
  for (std::size_t i = 0; i < cellOf.size(); ++i)
    g.q.img.push_back(prod->elementIndex({cellOf[i].first, cellOf[i].second}));
  g.q.validate();

  g.diagonal.source = kb;
  g.diagonal.target = g.refined;
  g.diagonal.kind = PosetMap::Kind::Diagonal;
  for (int s = 0; s < k.size(); ++s) {
    std::vector<int> verts;
    for (int v : k.simplices[s]) verts.push_back(used[gridId(v, v)]);
    std::sort(verts.begin(), verts.end());
    int idx = rc.index(verts);
    if (idx < 0) throw std::logic_error("staircase: diagonal simplex missing");
    g.diagonal.img.push_back(idx);
  }
  g.diagonal.validate();
  return g;
}

}  // namespace shv

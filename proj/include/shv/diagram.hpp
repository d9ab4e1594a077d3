#pragma once
// Poset-indexed diagrams of complexes and their homotopy (co)limits.
//
// A PosetDiagram is a covariant strict functor: for p <= q a chain map
// D(p) -> D(q), composites agreeing exactly.
//
// holim: cobar total complex. Column k is the product over strict chains
// p_0 < ... < p_k of D(p_k)^{n-k}; the cobar differential sends x to
//   (delta x)_{p_0<...<p_{k+1}} =
//     sum_{i=0}^{k} (-1)^i x_{..drop p_i..}
//     + (-1)^{k+1} D(p_k <= p_{k+1}) (x_{p_0<...<p_k}),
// and the internal differential carries the sign (-1)^k on column k.
// If the poset has a minimum, holim is quasi-isomorphic to the value there.
//
// hocolim: bar total complex, column k holds D(p_0)^{n+k}, with
//   (del x restricted to drop-i facets), dropping p_0 applies D(p_0 <= p_1).
// If the poset has a maximum, hocolim is quasi-isomorphic to the value there.

#include <map>

#include "shv/complex.hpp"
#include "shv/poset.hpp"

namespace shv {

class PosetDiagram {
 public:
  PosetDiagram(Poset p, std::vector<Complex> vals)
      : poset_(std::move(p)), vals_(std::move(vals)) {
    if (int(vals_.size()) != poset_.size())
      throw std::invalid_argument("PosetDiagram: value count mismatch");
  }

  const Poset& poset() const { return poset_; }
  const Complex& value(int p) const { return vals_[p]; }

  void setMap(int a, int b, const ChainMap& f) {
    if (!poset_.leq(a, b)) throw std::invalid_argument("PosetDiagram: not a relation");
    maps_[{a, b}] = f;
  }
  ChainMap map(int a, int b) const {
    if (a == b) return ChainMap::identity(vals_[a]);
    auto it = maps_.find({a, b});
    if (it == maps_.end()) return ChainMap::zero(vals_[a], vals_[b]);
    return it->second;
  }

  void validate() const {
    int n = poset_.size();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (!poset_.leq(a, b) || a == b) continue;
        map(a, b).validate();
        for (int c = 0; c < n; ++c) {
          if (!poset_.leq(b, c) || b == c || c == a) continue;
          ChainMap comp = map(b, c).compose(map(a, b));
          ChainMap direct = map(a, c);
          for (int d = vals_[a].minDeg(); d <= vals_[a].maxDeg(); ++d)
            if (!(comp.comp(d) == direct.comp(d)))
              throw std::logic_error("PosetDiagram: not functorial through " +
                                     poset_.names[a] + " <= " + poset_.names[b] + " <= " +
                                     poset_.names[c]);
        }
      }
  }

 private:
  Poset poset_;
  std::vector<Complex> vals_;
  std::map<std::pair<int, int>, ChainMap> maps_;
};

// Layout of a chain-indexed total complex: block offsets per total degree.
struct ChainLayout {
  std::vector<std::vector<int>> chains;
  // For total degree n, block c occupies [offset(n,c), offset(n,c)+size) where
  // the internal degree is n -+ k(c).
  std::map<int, std::vector<int>> offsets;  // offsets[n][c], -1 if empty
  std::map<int, int> totalDim;
};

namespace detail {

inline ChainLayout chainLayout(const PosetDiagram& d, bool cobar) {
  ChainLayout lay;
  lay.chains = d.poset().chains();
  int lo = 1 << 30, hi = -(1 << 30);
  for (auto& c : lay.chains) {
    int k = int(c.size()) - 1;
    const Complex& v = d.value(cobar ? c.back() : c.front());
    if (v.isZero()) continue;
    // internal degree m occupies total degree m + k (cobar) or m - k (bar)
    int a = cobar ? v.minDeg() + k : v.minDeg() - k;
    int b = cobar ? v.maxDeg() + k : v.maxDeg() - k;
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  if (hi < lo) return lay;
  for (int n = lo; n <= hi; ++n) {
    std::vector<int> offs(lay.chains.size(), -1);
    int t = 0;
    for (std::size_t ci = 0; ci < lay.chains.size(); ++ci) {
      int k = int(lay.chains[ci].size()) - 1;
      const Complex& v = d.value(cobar ? lay.chains[ci].back() : lay.chains[ci].front());
      int m = cobar ? n - k : n + k;
      if (v.dim(m) > 0) {
        offs[ci] = t;
        t += v.dim(m);
      }
    }
    lay.offsets[n] = offs;
    lay.totalDim[n] = t;
  }
  return lay;
}

inline void pasteBlock(Matrix& m, const Matrix& blk, int r0, int c0, const Scalar& coef) {
  for (int i = 0; i < blk.rows(); ++i)
    for (int j = 0; j < blk.cols(); ++j)
      if (!blk.at(i, j).isZero()) m.at(r0 + i, c0 + j) += blk.at(i, j) * coef;
}

}  // namespace detail

inline Complex holimOf(const PosetDiagram& d, ChainLayout* layoutOut = nullptr) {
  FieldConfig f = d.value(0).field();
  ChainLayout lay = detail::chainLayout(d, true);
  Complex tot(f);
  for (auto& [n, t] : lay.totalDim) tot.setDim(n, t);
  std::map<std::vector<int>, int> chainIdx;
  for (std::size_t ci = 0; ci < lay.chains.size(); ++ci) chainIdx[lay.chains[ci]] = int(ci);
  for (auto& [n, t] : lay.totalDim) {
    if (lay.totalDim.find(n + 1) == lay.totalDim.end() && t == 0) continue;
    Matrix m(f, tot.dim(n + 1), tot.dim(n));
    auto& src = lay.offsets.at(n);
    auto srcIt = lay.offsets.find(n);
    auto tgtIt = lay.offsets.find(n + 1);
    for (std::size_t ci = 0; ci < lay.chains.size(); ++ci) {
      if (src[ci] < 0) continue;
      const auto& c = lay.chains[ci];
      int k = int(c.size()) - 1;
      const Complex& v = d.value(c.back());
      // internal differential with sign (-1)^k, same chain
      if (tgtIt != lay.offsets.end() && tgtIt->second[ci] >= 0)
        detail::pasteBlock(m, v.diff(n - k), tgtIt->second[ci], src[ci],
                           Scalar(f, k % 2 == 0 ? 1 : -1));
      // cobar: this chain is the drop-i facet of longer chains
      if (tgtIt == lay.offsets.end()) continue;
      for (std::size_t cj = 0; cj < lay.chains.size(); ++cj) {
        const auto& e = lay.chains[cj];
        if (int(e.size()) != k + 2 || tgtIt->second[cj] < 0) continue;
        for (int i = 0; i <= k + 1; ++i) {
          std::vector<int> facet;
          for (int j = 0; j <= k + 1; ++j)
            if (j != i) facet.push_back(e[j]);
          if (facet != c) continue;
          Scalar coef(f, i % 2 == 0 ? 1 : -1);
          if (i == k + 1) {
            // value moves from D(e[k]) to D(e[k+1])
            detail::pasteBlock(m, d.map(e[k], e[k + 1]).comp(n - k), tgtIt->second[cj],
                               src[ci], coef);
          } else {
            detail::pasteBlock(m, Matrix::identity(f, v.dim(n - k)), tgtIt->second[cj],
                               src[ci], coef);
          }
        }
      }
    }
    tot.setDiff(n, m);
  }
  if (layoutOut) *layoutOut = lay;
  return tot;
}

inline Complex hocolimOf(const PosetDiagram& d, ChainLayout* layoutOut = nullptr) {
  FieldConfig f = d.value(0).field();
  ChainLayout lay = detail::chainLayout(d, false);
  Complex tot(f);
  for (auto& [n, t] : lay.totalDim) tot.setDim(n, t);
  for (auto& [n, t] : lay.totalDim) {
    Matrix m(f, tot.dim(n + 1), tot.dim(n));
    auto& src = lay.offsets.at(n);
    auto tgtIt = lay.offsets.find(n + 1);
    if (tgtIt == lay.offsets.end()) {
      tot.setDiff(n, m);
      continue;
    }
    for (std::size_t ci = 0; ci < lay.chains.size(); ++ci) {
      if (src[ci] < 0) continue;
      const auto& c = lay.chains[ci];
      int k = int(c.size()) - 1;
      const Complex& v = d.value(c.front());
      if (tgtIt->second[ci] >= 0)
        detail::pasteBlock(m, v.diff(n + k), tgtIt->second[ci], src[ci],
                           Scalar(f, k % 2 == 0 ? 1 : -1));
      // bar: map to the drop-i facets of this chain
      for (int i = 0; i <= k; ++i) {
        if (k == 0) break;
        std::vector<int> facet;
        for (int j = 0; j <= k; ++j)
          if (j != i) facet.push_back(c[j]);
        // locate facet
        int fj = -1;
        for (std::size_t cj = 0; cj < lay.chains.size(); ++cj)
          if (lay.chains[cj] == facet) { fj = int(cj); break; }
        if (fj < 0 || tgtIt->second[fj] < 0) continue;
        Scalar coef(f, i % 2 == 0 ? 1 : -1);
        if (i == 0)
          detail::pasteBlock(m, d.map(c[0], c[1]).comp(n + k), tgtIt->second[fj], src[ci],
                             coef);
        else
          detail::pasteBlock(m, Matrix::identity(f, v.dim(n + k)), tgtIt->second[fj],
                             src[ci], coef);
      }
    }
    tot.setDiff(n, m);
  }
  if (layoutOut) *layoutOut = lay;
  return tot;
}

// The canonical comparison map C -> holim(D) from a strict cone
// (f_p : C -> D(p) with D(p<=q) f_p = f_q): components on singleton chains.
inline ChainMap mapToHolim(const Complex& c, const PosetDiagram& d,
                           const std::vector<ChainMap>& cone) {
  ChainLayout lay;
  Complex h = holimOf(d, &lay);
  ChainMap r(c, h);
  FieldConfig f = c.field();
  for (int n = c.minDeg(); n <= c.maxDeg(); ++n) {
    if (h.dim(n) == 0 || c.dim(n) == 0) continue;
    Matrix m(f, h.dim(n), c.dim(n));
    auto it = lay.offsets.find(n);
    if (it != lay.offsets.end())
      for (std::size_t ci = 0; ci < lay.chains.size(); ++ci) {
        if (lay.chains[ci].size() != 1 || it->second[ci] < 0) continue;
        int p = lay.chains[ci][0];
        detail::pasteBlock(m, cone[p].comp(n), it->second[ci], 0, Scalar(f, 1));
      }
    r.setComp(n, m);
  }
  return r;
}

// Projection holim over P -> holim over an induced subposet (components on
// chains inside the subset). sub maps subposet indices to ambient indices.
inline ChainMap holimProjection(const PosetDiagram& amb, const ChainLayout& ambLay,
                                const Complex& ambH, const PosetDiagram& sub,
                                const ChainLayout& subLay, const Complex& subH,
                                const std::vector<int>& subToAmb) {
  FieldConfig f = ambH.field();
  ChainMap r(ambH, subH);
  for (int n = std::min(ambH.minDeg(), subH.minDeg());
       n <= std::max(ambH.maxDeg(), subH.maxDeg()); ++n) {
    if (subH.dim(n) == 0 || ambH.dim(n) == 0) continue;
    Matrix m(f, subH.dim(n), ambH.dim(n));
    auto sIt = subLay.offsets.find(n);
    auto aIt = ambLay.offsets.find(n);
    if (sIt != subLay.offsets.end() && aIt != ambLay.offsets.end())
      for (std::size_t ci = 0; ci < subLay.chains.size(); ++ci) {
        if (sIt->second[ci] < 0) continue;
        std::vector<int> ambChain;
        for (int x : subLay.chains[ci]) ambChain.push_back(subToAmb[x]);
        for (std::size_t cj = 0; cj < ambLay.chains.size(); ++cj)
          if (ambLay.chains[cj] == ambChain && aIt->second[cj] >= 0) {
            int k = int(ambChain.size()) - 1;
            int dim = sub.value(subLay.chains[ci].back()).dim(n - k);
            detail::pasteBlock(m, Matrix::identity(f, dim), sIt->second[ci],
                               aIt->second[cj], Scalar(f, 1));
          }
      }
    r.setComp(n, m);
  }
  return r;
}

}  // namespace shv

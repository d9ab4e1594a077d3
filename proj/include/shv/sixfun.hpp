#pragma once
// The functor calculus on base posets: star pullback/pushforward, the
// recollement functors for open and closed subsets, compactly supported
// sections, projection pushforward with compact supports, the dualizing
// complex, and the naive and Verdier dualities.

#include "shv/indcx.hpp"

namespace shv {

// Dual of a chain map under Hom(-, k): transpose in matching degrees.
inline ChainMap dualMap(const ChainMap& f) {
  Complex ds = dualComplex(f.target()), dt = dualComplex(f.source());
  ChainMap r(ds, dt);
  for (int n = ds.minDeg(); n <= ds.maxDeg(); ++n)
    r.setComp(n, f.comp(-n).transpose());
  return r;
}

inline Sheaf pullbackStar(const PosetMap& f, const Sheaf& g) {
  if (!(*f.target == *g.base())) throw std::invalid_argument("pullbackStar: base mismatch");
  Sheaf r(f.source, g.field());
  int n = f.source->size();
  for (int a = 0; a < n; ++a) r.setValue(a, g.value(f(a)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && f.source->leq(a, b)) r.setRho(a, b, g.rho(f(a), f(b)));
  return r;
}

inline Sheaf pushStar(const PosetMap& f, const Sheaf& F) {
  if (!(*f.source == *F.base())) throw std::invalid_argument("pushStar: base mismatch");
  int nt = f.target->size();
  Sheaf r(f.target, F.field());
  std::vector<std::vector<int>> pre(nt);
  std::vector<ChainLayout> lays(nt);
  std::vector<Complex> hs(nt);
  std::vector<PosetDiagram> dias;
  dias.reserve(nt);
  for (int b = 0; b < nt; ++b) {
    auto star = f.target->star(b);
    std::set<int> starSet(star.begin(), star.end());
    for (int a = 0; a < f.source->size(); ++a)
      if (starSet.count(f(a))) pre[b].push_back(a);
    dias.push_back(stalkDiagramOp(F, pre[b]));
    hs[b] = holimOf(dias[b], &lays[b]);
    r.setValue(b, hs[b]);
  }
  for (int b2 = 0; b2 < nt; ++b2)
    for (int b = 0; b < nt; ++b) {
      if (b2 == b || !f.target->leq(b2, b)) continue;
      std::vector<int> subToAmb;
      for (int x : pre[b2]) {
        auto it = std::find(pre[b].begin(), pre[b].end(), x);
        subToAmb.push_back(int(it - pre[b].begin()));
      }
      r.setRho(b2, b,
               holimProjection(dias[b], lays[b], hs[b], dias[b2], lays[b2], hs[b2], subToAmb));
    }
  return r;
}

// Zero-extension along an open inclusion; exact stalkwise.
inline Sheaf extendByZero(const PosetMap& j, const Sheaf& F) {
  if (j.kind != PosetMap::Kind::OpenInclusion)
    throw std::invalid_argument("extendByZero: needs an open inclusion");
  if (!(*j.source == *F.base())) throw std::invalid_argument("extendByZero: base mismatch");
  Sheaf r(j.target, F.field());
  std::map<int, int> back;
  for (int a = 0; a < j.source->size(); ++a) back[j(a)] = a;
  for (auto& [x, a] : back) r.setValue(x, F.value(a));
  for (auto& [x, a] : back)
    for (auto& [y, b] : back)
      if (x != y && j.target->leq(x, y)) r.setRho(x, y, F.rho(a, b));
  return r;
}

// j_* j^* F for the open subset U (a down-set), computed on the ambient base:
// stalk at x is the section complex over str(x) meet U.
inline Sheaf openPushPull(const Sheaf& F, const std::vector<int>& u, SheafMap* unitOut = nullptr) {
  const BasePtr& b = F.base();
  if (!b->poset().isDownSet(u)) throw std::invalid_argument("openPushPull: not open");
  std::set<int> uset(u.begin(), u.end());
  int n = b->size();
  std::vector<std::vector<int>> sec(n);
  std::vector<ChainLayout> lays(n);
  std::vector<Complex> hs(n);
  std::vector<PosetDiagram> dias;
  dias.reserve(n);
  Sheaf r(b, F.field());
  for (int x = 0; x < n; ++x) {
    for (int p : b->star(x))
      if (uset.count(p)) sec[x].push_back(p);
    dias.push_back(stalkDiagramOp(F, sec[x]));
    hs[x] = holimOf(dias[x], &lays[x]);
    r.setValue(x, hs[x]);
  }
  for (int x2 = 0; x2 < n; ++x2)
    for (int x = 0; x < n; ++x) {
      if (x2 == x || !b->leq(x2, x)) continue;
      std::vector<int> subToAmb;
      for (int p : sec[x2]) {
        auto it = std::find(sec[x].begin(), sec[x].end(), p);
        subToAmb.push_back(int(it - sec[x].begin()));
      }
      r.setRho(x2, x,
               holimProjection(dias[x], lays[x], hs[x], dias[x2], lays[x2], hs[x2], subToAmb));
    }
  if (unitOut) {
    SheafMap unit(F, r);
    for (int x = 0; x < n; ++x) {
      std::vector<ChainMap> cone;
      for (int p : sec[x]) cone.push_back(F.rho(p, x));
      // mapToHolim wants the cone indexed by the diagram's elements
      unit.setComp(x, mapToHolim(F.value(x), dias[x], cone));
    }
    *unitOut = unit;
  }
  return r;
}

// Stalkwise fiber of a strict sheaf map, with blockwise restrictions.
inline Sheaf fibSheaf(const SheafMap& phi) {
  const Sheaf &F = phi.source(), &G = phi.target();
  const BasePtr& b = F.base();
  Sheaf r(b, F.field());
  int n = b->size();
  for (int x = 0; x < n; ++x) r.setValue(x, fib(phi.comp(x)));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (s == t || !b->leq(s, t)) continue;
      ChainMap m(r.value(t), r.value(s));
      for (int d = r.value(t).minDeg(); d <= r.value(t).maxDeg(); ++d) {
        // fib^d = F^d + G^{d-1}, source block first
        Matrix comp(F.field(), r.value(s).dim(d), r.value(t).dim(d));
        comp.paste(F.rho(s, t).comp(d), 0, 0);
        comp.paste(G.rho(s, t).comp(d - 1), F.value(s).dim(d), F.value(t).dim(d));
        m.setComp(d, comp);
      }
      r.setRho(s, t, m);
    }
  return r;
}

// Stalkwise cone of a strict sheaf map.
inline Sheaf coneSheaf(const SheafMap& phi) {
  const Sheaf &F = phi.source(), &G = phi.target();
  const BasePtr& b = F.base();
  Sheaf r(b, F.field());
  int n = b->size();
  for (int x = 0; x < n; ++x) r.setValue(x, cone(phi.comp(x)));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (s == t || !b->leq(s, t)) continue;
      ChainMap m(r.value(t), r.value(s));
      for (int d = r.value(t).minDeg(); d <= r.value(t).maxDeg(); ++d) {
        // cone^d = F^{d+1} + G^d, source block first
        Matrix comp(F.field(), r.value(s).dim(d), r.value(t).dim(d));
        comp.paste(F.rho(s, t).comp(d + 1), 0, 0);
        comp.paste(G.rho(s, t).comp(d), F.value(s).dim(d + 1), F.value(t).dim(d + 1));
        m.setComp(d, comp);
      }
      r.setRho(s, t, m);
    }
  return r;
}

// i^! F for a closed inclusion: restrict the fiber of F -> j_* j^* F over the
// complementary open subset.
inline Sheaf shriekRestrictClosed(const PosetMap& i, const Sheaf& F) {
  if (i.kind != PosetMap::Kind::ClosedInclusion)
    throw std::invalid_argument("shriekRestrictClosed: needs a closed inclusion");
  if (!(*i.target == *F.base())) throw std::invalid_argument("shriekRestrictClosed: base mismatch");
  std::vector<int> image(i.img.begin(), i.img.end());
  std::sort(image.begin(), image.end());
  std::vector<int> u = F.base()->poset().complement(image);
  SheafMap unit(F, F);
  openPushPull(F, u, &unit);
  Sheaf fibre = fibSheaf(unit);
  Sheaf r(i.source, F.field());
  int n = i.source->size();
  for (int a = 0; a < n; ++a) r.setValue(a, fibre.value(i(a)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && i.source->leq(a, b)) r.setRho(a, b, fibre.rho(i(a), i(b)));
  return r;
}

namespace detail {

// Signed incidence between product cells: nonzero when the tuples differ in a
// single factor by a codimension-one coface; Koszul sign from earlier factors.
inline int productIncidence(const BasePtr& b, int e, int e2) {
  const auto &t = b->tuple(e), &t2 = b->tuple(e2);
  int at = -1;
  for (int i = 0; i < b->factorCount(); ++i)
    if (t[i] != t2[i]) {
      if (at >= 0) return 0;
      at = i;
    }
  if (at < 0) return 0;
  int inc = b->factor(at).incidence(t[at], t2[at]);
  if (inc == 0) return 0;
  int sgn = 0;
  for (int i = 0; i < at; ++i) sgn += b->factor(i).dim(t[i]);
  return sgn % 2 == 0 ? inc : -inc;
}

}  // namespace detail

// Compactly supported sections over a down-set U: the total complex of the
// stalks placed in degree dim(sigma), with coface-incidence differentials.
// Pass the whole poset for gammaC. The optional layout records, per total
// degree, (element, offset) pairs (needed for the summand inclusions).
inline Complex gammaCOpen(const Sheaf& F, const std::vector<int>& u,
                          std::map<int, std::vector<std::pair<int, int>>>* layout = nullptr) {
  const BasePtr& b = F.base();
  if (!b->poset().isDownSet(u)) throw std::invalid_argument("gammaCOpen: not open");
  FieldConfig fl = F.field();
  Complex r(fl);
  int lo = 1 << 30, hi = -(1 << 30);
  for (int e : u) {
    const Complex& v = F.value(e);
    if (v.isZero()) continue;
    lo = std::min(lo, v.minDeg() + b->dim(e));
    hi = std::max(hi, v.maxDeg() + b->dim(e));
  }
  if (hi < lo) return r;
  std::map<int, std::vector<std::pair<int, int>>> lay;
  for (int n = lo; n <= hi; ++n) {
    int off = 0;
    for (int e : u) {
      int dim = F.value(e).dim(n - b->dim(e));
      if (dim > 0) {
        lay[n].push_back({e, off});
        off += dim;
      }
    }
    r.setDim(n, off);
  }
  for (int n = lo; n <= hi; ++n) {
    Matrix m(fl, r.dim(n + 1), r.dim(n));
    auto tgt = lay.find(n + 1);
    if (tgt != lay.end())
      for (auto& [e, off] : lay[n]) {
        int w = b->dim(e);
        for (auto& [e2, off2] : tgt->second) {
          if (e2 == e)
            detail::pasteBlock(m, F.value(e).diff(n - w), off2, off,
                               Scalar(fl, w % 2 == 0 ? 1 : -1));
          int inc = detail::productIncidence(b, e, e2);
          if (inc != 0)
            detail::pasteBlock(m, F.rho(e2, e).comp(n - w), off2, off, Scalar(fl, inc));
        }
      }
    r.setDiff(n, m);
  }
  if (layout) *layout = lay;
  return r;
}

inline Complex gammaC(const Sheaf& F) {
  std::vector<int> all(F.base()->size());
  for (int i = 0; i < F.base()->size(); ++i) all[i] = i;
  return gammaCOpen(F, all);
}

// pi_! along the projection of a product base onto the kept factors, computed
// slice-wise: the stalk at t totalizes the fiber over t in the dropped
// directions.
inline Sheaf pushShriekProj(
    const Sheaf& K, const std::vector<int>& keep, const BasePtr& tgt,
    std::vector<std::map<int, std::vector<std::pair<int, int>>>>* layoutOut = nullptr) {
  const BasePtr& src = K.base();
  PosetMap pi = factorProjection(src, keep, tgt);
  std::vector<int> dropped;
  for (int i = 0; i < src->factorCount(); ++i)
    if (std::find(keep.begin(), keep.end(), i) == keep.end()) dropped.push_back(i);
  FieldConfig fl = K.field();
  auto weight = [&](int e) {
    int w = 0;
    for (int i : dropped) w += src->factor(i).dim(src->tuple(e)[i]);
    return w;
  };
  auto fiberInc = [&](int e, int e2) -> int {
    const auto &t = src->tuple(e), &t2 = src->tuple(e2);
    int at = -1;
    for (int i = 0; i < src->factorCount(); ++i)
      if (t[i] != t2[i]) {
        if (at >= 0) return 0;
        at = i;
      }
    if (at < 0 || std::find(dropped.begin(), dropped.end(), at) == dropped.end()) return 0;
    int inc = src->factor(at).incidence(t[at], t2[at]);
    if (inc == 0) return 0;
    int sgn = 0;
    for (int i : dropped) {
      if (i == at) break;
      sgn += src->factor(i).dim(t[i]);
    }
    return sgn % 2 == 0 ? inc : -inc;
  };
  int nt = tgt->size();
  std::vector<std::vector<int>> fiber(nt);
  for (int e = 0; e < src->size(); ++e) fiber[pi(e)].push_back(e);
  Sheaf r(tgt, fl);
  std::vector<std::map<int, std::vector<std::pair<int, int>>>> lays(nt);
  for (int t = 0; t < nt; ++t) {
    Complex c(fl);
    int lo = 1 << 30, hi = -(1 << 30);
    for (int e : fiber[t]) {
      const Complex& v = K.value(e);
      if (v.isZero()) continue;
      lo = std::min(lo, v.minDeg() + weight(e));
      hi = std::max(hi, v.maxDeg() + weight(e));
    }
    if (hi >= lo) {
      for (int n = lo; n <= hi; ++n) {
        int off = 0;
        for (int e : fiber[t]) {
          int dim = K.value(e).dim(n - weight(e));
          if (dim > 0) {
            lays[t][n].push_back({e, off});
            off += dim;
          }
        }
        c.setDim(n, off);
      }
      for (int n = lo; n <= hi; ++n) {
        Matrix m(fl, c.dim(n + 1), c.dim(n));
        auto tIt = lays[t].find(n + 1);
        if (tIt != lays[t].end())
          for (auto& [e, off] : lays[t][n]) {
            int w = weight(e);
            for (auto& [e2, off2] : tIt->second) {
              if (e2 == e)
                detail::pasteBlock(m, K.value(e).diff(n - w), off2, off,
                                   Scalar(fl, w % 2 == 0 ? 1 : -1));
              int inc = fiberInc(e, e2);
              if (inc != 0)
                detail::pasteBlock(m, K.rho(e2, e).comp(n - w), off2, off, Scalar(fl, inc));
            }
          }
        c.setDiff(n, m);
      }
    }
    r.setValue(t, c);
  }
  // restriction t2 <= t: fibers correspond along shared dropped coordinates
  for (int t2 = 0; t2 < nt; ++t2)
    for (int t = 0; t < nt; ++t) {
      if (t2 == t || !tgt->leq(t2, t)) continue;
      ChainMap cm(r.value(t), r.value(t2));
      for (int n = r.value(t).minDeg(); n <= r.value(t).maxDeg(); ++n) {
        Matrix m(fl, r.value(t2).dim(n), r.value(t).dim(n));
        auto aIt = lays[t].find(n);
        auto bIt = lays[t2].find(n);
        if (aIt != lays[t].end() && bIt != lays[t2].end())
          for (auto& [e, off] : aIt->second) {
            // the matching fiber cell over t2
            std::vector<int> tup = src->tuple(e);
            for (std::size_t ki = 0; ki < keep.size(); ++ki)
              tup[keep[ki]] = tgt->tuple(t2)[ki];
            int e2 = src->elementIndex(tup);
            for (auto& [e3, off2] : bIt->second)
              if (e3 == e2)
                detail::pasteBlock(m, K.rho(e2, e).comp(n - weight(e)), off2, off,
                                   Scalar(fl, 1));
          }
        cm.setComp(n, m);
      }
      r.setRho(t2, t, cm);
    }
  if (layoutOut) *layoutOut = lays;
  return r;
}

// The dualizing complex: stalk at sigma is the linear dual of the compactly
// supported sections of the constant sheaf over str(sigma); restrictions are
// dual to the subcomplex inclusions of smaller stars.
inline Sheaf dualizing(const BasePtr& b, FieldConfig fl) {
  Sheaf c = constantSheaf(b, unitComplex(fl));
  int n = b->size();
  std::vector<Complex> gc(n);
  std::vector<std::map<int, std::vector<std::pair<int, int>>>> lays(n);
  Sheaf r(b, fl);
  for (int s = 0; s < n; ++s) {
    gc[s] = gammaCOpen(c, b->star(s), &lays[s]);
    r.setValue(s, dualComplex(gc[s]));
  }
  for (int s2 = 0; s2 < n; ++s2)
    for (int s = 0; s < n; ++s) {
      if (s2 == s || !b->leq(s2, s)) continue;
      // str(s2) is a subcomplex of str(s): summand inclusion, then dualize
      ChainMap incl(gc[s2], gc[s]);
      for (int d = gc[s2].minDeg(); d <= gc[s2].maxDeg(); ++d) {
        Matrix m(fl, gc[s].dim(d), gc[s2].dim(d));
        auto aIt = lays[s2].find(d);
        auto bIt = lays[s].find(d);
        if (aIt != lays[s2].end() && bIt != lays[s].end())
          for (auto& [e, off] : aIt->second)
            for (auto& [e2, off2] : bIt->second)
              if (e2 == e) m.at(off2, off) = Scalar(fl, 1);
        incl.setComp(d, m);
      }
      r.setRho(s2, s, dualMap(incl));
    }
  return r;
}

inline Sheaf naiveDual(const Sheaf& F) {
  return sheafHom(F, constantSheaf(F.base(), unitComplex(F.field())));
}

inline Sheaf verdierDual(const Sheaf& F) {
  return sheafHom(F, dualizing(F.base(), F.field()));
}

}  // namespace shv

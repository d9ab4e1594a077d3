#pragma once
// Exterior products, kernel convolution and its right adjoint, localization
// along refinements, the identity kernel, standard duality data with triangle
// checks, and Fourier-Mukai reconstruction of a functor's kernel.
//
// A kernel is a sheaf on S x T, source factors first; it acts on sheaves on S
// by F |-> pi_T!(K (x) pi_S* F).

#include "shv/sixfun.hpp"

namespace shv {

// Base spanned by a subset of the factors of a product base.
inline BasePtr subBase(const BasePtr& b, const std::vector<int>& idx) {
  BasePtr r = Base::simplicial(b->factor(idx[0]));
  for (std::size_t i = 1; i < idx.size(); ++i)
    r = Base::product(r, Base::simplicial(b->factor(idx[i])));
  return r;
}

inline Sheaf boxtimes(const Sheaf& f, const Sheaf& g) {
  BasePtr prod = Base::product(f.base(), g.base());
  int nf = f.base()->size(), ng = g.base()->size();
  Sheaf r(prod, f.field());
  auto split = [&](int e) { return std::make_pair(e / ng, e % ng); };
  for (int e = 0; e < prod->size(); ++e) {
    auto [a, b] = split(e);
    r.setValue(e, tensorComplex(f.value(a), g.value(b)));
  }
  for (int e2 = 0; e2 < prod->size(); ++e2)
    for (int e = 0; e < prod->size(); ++e) {
      if (e2 == e || !prod->leq(e2, e)) continue;
      auto [a, b] = split(e);
      auto [a2, b2] = split(e2);
      r.setRho(e2, e, tensorMap(f.rho(a2, a), g.rho(b2, b)));
    }
  (void)nf;
  return r;
}

inline SheafMap pullbackStarMap(const PosetMap& f, const SheafMap& m) {
  Sheaf src = pullbackStar(f, m.source()), tgt = pullbackStar(f, m.target());
  SheafMap r(src, tgt);
  for (int a = 0; a < f.source->size(); ++a) r.setComp(a, m.comp(f(a)));
  return r;
}

inline SheafMap tensorSheafMap(const SheafMap& a, const SheafMap& b) {
  Sheaf src = tensor(a.source(), b.source()), tgt = tensor(a.target(), b.target());
  SheafMap r(src, tgt);
  for (int e = 0; e < src.base()->size(); ++e)
    r.setComp(e, tensorMap(a.comp(e), b.comp(e)));
  return r;
}

inline SheafMap pushShriekProjMap(const SheafMap& m, const std::vector<int>& keep,
                                  const BasePtr& tgt) {
  std::vector<std::map<int, std::vector<std::pair<int, int>>>> laySrc, layTgt;
  Sheaf src = pushShriekProj(m.source(), keep, tgt, &laySrc);
  Sheaf dst = pushShriekProj(m.target(), keep, tgt, &layTgt);
  const BasePtr& big = m.source().base();
  std::vector<int> dropped;
  for (int i = 0; i < big->factorCount(); ++i)
    if (std::find(keep.begin(), keep.end(), i) == keep.end()) dropped.push_back(i);
  auto weight = [&](int e) {
    int w = 0;
    for (int i : dropped) w += big->factor(i).dim(big->tuple(e)[i]);
    return w;
  };
  SheafMap r(src, dst);
  for (int t = 0; t < tgt->size(); ++t) {
    ChainMap cm(src.value(t), dst.value(t));
    for (int n = src.value(t).minDeg(); n <= src.value(t).maxDeg(); ++n) {
      Matrix mat(m.source().field(), dst.value(t).dim(n), src.value(t).dim(n));
      auto sIt = laySrc[t].find(n);
      auto tIt = layTgt[t].find(n);
      if (sIt != laySrc[t].end() && tIt != layTgt[t].end())
        for (auto& [e, off] : sIt->second)
          for (auto& [e2, off2] : tIt->second)
            if (e2 == e)
              detail::pasteBlock(mat, m.comp(e).comp(n - weight(e)), off2, off,
                                 Scalar(m.source().field(), 1));
      cm.setComp(n, mat);
    }
    r.setComp(t, cm);
  }
  return r;
}

// K on S x T acting on F on S. srcFactors = factor count of S.
inline Sheaf convolve(const Sheaf& k, const Sheaf& f) {
  int s = f.base()->factorCount();
  int total = k.base()->factorCount();
  std::vector<int> srcIdx, tgtIdx;
  for (int i = 0; i < s; ++i) srcIdx.push_back(i);
  for (int i = s; i < total; ++i) tgtIdx.push_back(i);
  BasePtr tgt = subBase(k.base(), tgtIdx);
  Sheaf pulled = pullbackStar(factorProjection(k.base(), srcIdx, f.base()), f);
  return pushShriekProj(tensor(k, pulled), tgtIdx, tgt);
}

inline SheafMap convolveMap(const Sheaf& k, const SheafMap& m) {
  int s = m.source().base()->factorCount();
  int total = k.base()->factorCount();
  std::vector<int> srcIdx, tgtIdx;
  for (int i = 0; i < s; ++i) srcIdx.push_back(i);
  for (int i = s; i < total; ++i) tgtIdx.push_back(i);
  BasePtr tgt = subBase(k.base(), tgtIdx);
  PosetMap pi = factorProjection(k.base(), srcIdx, m.source().base());
  SheafMap kid(k, k);
  for (int e = 0; e < k.base()->size(); ++e) kid.setComp(e, ChainMap::identity(k.value(e)));
  return pushShriekProjMap(tensorSheafMap(kid, pullbackStarMap(pi, m)), tgtIdx, tgt);
}

// L on T x U composed with K on S x T: the three-factor convolution formula.
inline Sheaf composeKernels(const Sheaf& l, const Sheaf& k, int sFactors) {
  int st = k.base()->factorCount();
  int tF = st - sFactors;
  int uF = l.base()->factorCount() - tF;
  std::vector<int> sIdx, tIdx, uIdx;
  for (int i = 0; i < sFactors; ++i) sIdx.push_back(i);
  for (int i = sFactors; i < st; ++i) tIdx.push_back(i);
  for (int i = st; i < st + uF; ++i) uIdx.push_back(i);
  BasePtr big = Base::product(k.base(), subBase(l.base(), [&] {
                                std::vector<int> v;
                                for (int i = tF; i < tF + uF; ++i) v.push_back(i);
                                return v;
                              }()));
  std::vector<int> stIdx = sIdx;
  for (int i : tIdx) stIdx.push_back(i);
  std::vector<int> tuIdx = tIdx;
  for (int i : uIdx) tuIdx.push_back(i);
  std::vector<int> suIdx = sIdx;
  for (int i : uIdx) suIdx.push_back(i);
  Sheaf kBig = pullbackStar(factorProjection(big, stIdx, k.base()), k);
  Sheaf lBig = pullbackStar(factorProjection(big, tuIdx, l.base()), l);
  return pushShriekProj(tensor(kBig, lBig), suIdx, subBase(big, suIdx));
}

// Left Kan extension along a refinement: resolve by indicators, relabel each
// 1_r to 1_{q(r)}, reduce, totalize.
inline Sheaf leftKanLocalize(const PosetMap& q, const Sheaf& f) {
  if (q.kind != PosetMap::Kind::Refinement)
    throw std::invalid_argument("leftKanLocalize: needs a refinement map");
  if (!(*q.source == *f.base())) throw std::invalid_argument("leftKanLocalize: base mismatch");
  return totalizeInd(reduceInd(relabelInd(resolveSheaf(f).cx, q)));
}

inline IndCx leftKanLocalizeInd(const PosetMap& q, const Sheaf& f) {
  if (q.kind != PosetMap::Kind::Refinement)
    throw std::invalid_argument("leftKanLocalize: needs a refinement map");
  return reduceInd(relabelInd(resolveSheaf(f).cx, q));
}

// Product of two poset maps on product bases.
inline PosetMap productMap(const PosetMap& a, const PosetMap& b) {
  PosetMap m;
  m.source = Base::product(a.source, b.source);
  m.target = Base::product(a.target, b.target);
  if (a.kind == b.kind) m.kind = a.kind;
  int fa = a.source->factorCount();
  for (int e = 0; e < m.source->size(); ++e) {
    auto tup = m.source->tuple(e);
    std::vector<int> ta(tup.begin(), tup.begin() + fa), tb(tup.begin() + fa, tup.end());
    auto ia = a.source->tuple(a(a.source->elementIndex(ta)));
    auto ib = b.source->tuple(b(b.source->elementIndex(tb)));
    std::vector<int> out = a.target->tuple(a(a.source->elementIndex(ta)));
    for (int x : b.target->tuple(b(b.source->elementIndex(tb)))) out.push_back(x);
    m.img.push_back(m.target->elementIndex(out));
    (void)ia;
    (void)ib;
  }
  return m;
}

struct IdentityKernelData {
  ProductGeometry geom;
  IndCx cx;      // on the product base S x S
  Sheaf sheaf;   // totalization
};

// iota_*(1_Delta): constant on the diagonal of the staircase refinement,
// localized to the product stratification.
inline IdentityKernelData identityKernel(const SimplicialComplex& k, FieldConfig fld) {
  IdentityKernelData r{staircase(k), IndCx{}, Sheaf(Base::simplicial(k), fld)};
  std::vector<int> diag(r.geom.diagonal.img.begin(), r.geom.diagonal.img.end());
  std::sort(diag.begin(), diag.end());
  Sheaf oneDiag = closedConstant(r.geom.refined, fld, diag);
  r.cx = reduceInd(relabelInd(resolveSheaf(oneDiag).cx, r.geom.q));
  r.sheaf = totalizeInd(r.cx);
  return r;
}

// The canonical map 1_s -> 1_u for s <= u.
inline SheafMap indicatorUnitMap(const BasePtr& b, FieldConfig fld, int s, int u) {
  Sheaf a = indicator(b, fld, s), c = indicator(b, fld, u);
  SheafMap m(a, c);
  for (int x : b->star(s)) m.setComp(x, ChainMap::identity(unitComplex(fld)));
  return m;
}

// Right adjoint to convolution: pi12_* sHom(pi23* G, pi13^! H) with
// pi13^! = pi13* tensored with the dualizing twist of the middle factor.
inline Sheaf homKernelRightAdjoint(const Sheaf& g, const Sheaf& h, int n1, int n2, int n3,
                                   int sizeBudget) {
  std::vector<int> i1, i2, i3;
  for (int i = 0; i < n1; ++i) i1.push_back(i);
  for (int i = n1; i < n1 + n2; ++i) i2.push_back(i);
  for (int i = n1 + n2; i < n1 + n2 + n3; ++i) i3.push_back(i);
  std::vector<int> x1FromH;
  for (int i = 0; i < n1; ++i) x1FromH.push_back(i);
  BasePtr x1 = subBase(h.base(), x1FromH);
  BasePtr big = Base::product(x1, g.base());
  if (big->size() > sizeBudget)
    throw std::runtime_error("homKernelRightAdjoint: triple product has " +
                             std::to_string(big->size()) + " strata, over the budget of " +
                             std::to_string(sizeBudget));
  std::vector<int> i23 = i2, i13 = i1, i12 = i1;
  for (int i : i3) i23.push_back(i);
  for (int i : i3) i13.push_back(i);
  for (int i : i2) i12.push_back(i);
  BasePtr x2 = subBase(big, i2);
  Sheaf g23 = pullbackStar(factorProjection(big, i23, g.base()), g);
  Sheaf h13 = pullbackStar(factorProjection(big, i13, h.base()), h);
  Sheaf wTwist = pullbackStar(factorProjection(big, i2, x2), dualizing(x2, g.field()));
  Sheaf inner = sheafHom(g23, tensor(h13, wTwist));
  return pushStar(factorProjection(big, i12, Base::product(x1, x2)), inner);
}

// The standard dual as a complex of indicators: one generator per stalk basis
// vector of F, placed so that Hom(SD F, G) is the compactly supported
// pairing gammaC(F (x) G).
inline IndCx standardDual(const Sheaf& f) {
  const BasePtr& b = f.base();
  FieldConfig fl = f.field();
  IndCx p;
  p.base = b;
  p.fld = fl;
  std::map<std::tuple<int, int, int>, int> idx;  // (sigma, m, x)
  for (int s = 0; s < b->size(); ++s) {
    const Complex& v = f.value(s);
    for (int m = v.minDeg(); m <= v.maxDeg(); ++m)
      for (int x = 0; x < v.dim(m); ++x) {
        idx[{s, m, x}] = p.size();
        p.gens.push_back({s, -m - b->dim(s)});
      }
  }
  for (auto& [key, i] : idx) {
    auto [s, m, x] = key;
    // internal: pair against the differential of F, sign (-1)^{dim}
    Matrix d = f.value(s).diff(m - 1);
    Scalar sgn(fl, b->dim(s) % 2 == 0 ? 1 : -1);
    for (int y = 0; y < d.cols(); ++y)
      if (!d.at(x, y).isZero()) {
        auto key2 = std::make_pair(i, idx.at({s, m - 1, y}));
        if (p.d.count(key2))
          p.d[key2] += d.at(x, y) * sgn;
        else
          p.d[key2] = d.at(x, y) * sgn;
        if (p.d[key2].isZero()) p.d.erase(key2);
      }
  }
  // cofaces: from tau-generators into sigma-generators along rho(tau <= sigma)
  for (int s = 0; s < b->size(); ++s)
    for (int t = 0; t < b->size(); ++t) {
      int inc = detail::productIncidence(b, s, t);
      if (inc == 0) continue;
      for (int m = f.value(s).minDeg(); m <= f.value(s).maxDeg(); ++m) {
        Matrix rho = f.rho(t, s).comp(m);
        for (int x2 = 0; x2 < rho.rows(); ++x2)
          for (int x = 0; x < rho.cols(); ++x)
            if (!rho.at(x2, x).isZero()) {
              auto key2 = std::make_pair(idx.at({t, m, x2}), idx.at({s, m, x}));
              Scalar add = rho.at(x2, x) * Scalar(fl, inc);
              if (p.d.count(key2))
                p.d[key2] += add;
              else
                p.d[key2] = add;
              if (p.d[key2].isZero()) p.d.erase(key2);
            }
      }
    }
  return p;
}

// Duality data on the product stratification of a complex K.
struct DualityData {
  BasePtr base;          // S
  FieldConfig fld;
  IdentityKernelData id; // iota_*(1_Delta)
  Sheaf eta;             // coevaluation kernel, swapped-factor convention
};

inline DualityData dualityData(const SimplicialComplex& k, FieldConfig fld) {
  IdentityKernelData id = identityKernel(k, fld);
  Sheaf eta = pullbackStar(swapMap(id.sheaf.base()), id.sheaf);
  return DualityData{Base::simplicial(k), fld, std::move(id), std::move(eta)};
}

// Counit: compactly supported sections of the diagonal restriction, computed
// through the staircase refinement.
inline Complex epsilonOf(const DualityData& d, const Sheaf& m) {
  Sheaf onRefined = pullbackStar(d.id.geom.q, m);
  Sheaf onDiag = pullbackStar(d.id.geom.diagonal, onRefined);
  return gammaC(onDiag);
}

namespace detail {

// Contract the counit over two adjacent coordinates of a three-factor sheaf:
// restrict to the partial diagonal, then push the repeated factor away.
inline Sheaf contractEpsilon(const Sheaf& a, const BasePtr& s, int keepFactor) {
  // a lives on S x S x S; the contracted pair is the complement of keepFactor
  // and consists of adjacent coordinates (0,1) or (1,2).
  BasePtr ss = Base::product(s, s);
  PosetMap delta;
  delta.source = ss;
  delta.target = a.base();
  for (int e = 0; e < ss->size(); ++e) {
    auto t = ss->tuple(e);
    std::vector<int> out;
    if (keepFactor == 2)
      out = {t[0], t[0], t[1]};  // contract (0,1), keep last coordinate
    else
      out = {t[0], t[1], t[1]};  // contract (1,2), keep first coordinate
    delta.img.push_back(a.base()->elementIndex(out));
  }
  delta.validate();
  Sheaf restricted = pullbackStar(delta, a);
  std::vector<int> keep = {keepFactor == 2 ? 1 : 0};
  return pushShriekProj(restricted, keep, s);
}

}  // namespace detail

// Both triangle identities, verified on every indicator generator.
inline bool checkTriangles(const DualityData& d, std::vector<std::string>* log = nullptr) {
  bool ok = true;
  for (int s = 0; s < d.base->size(); ++s) {
    Sheaf f = indicator(d.base, d.fld, s);
    // (eps (x) id)(F boxtimes eta): contract factors (0,1)
    Sheaf t1 = detail::contractEpsilon(boxtimes(f, d.eta), d.base, 2);
    // (id (x) eps)(eta boxtimes F): contract factors (1,2)
    Sheaf t2 = detail::contractEpsilon(boxtimes(d.eta, f), d.base, 0);
    bool ok1 = equivalentDims(t1, f), ok2 = equivalentDims(t2, f);
    if (log)
      log->push_back(d.base->name(s) + ": right triangle " + (ok1 ? "ok" : "FAIL") +
                     ", left triangle " + (ok2 ? "ok" : "FAIL"));
    ok = ok && ok1 && ok2;
  }
  return ok;
}

// A functor's value table on indicator generators, with the induced maps for
// every relation s <= u.
struct FunctorTable {
  BasePtr src, tgt;
  FieldConfig fld;
  std::vector<Sheaf> val;                       // per generator s
  std::map<std::pair<int, int>, SheafMap> arr;  // (s, u) with s <= u

  const SheafMap& arrow(int s, int u) const {
    auto it = arr.find({s, u});
    if (it == arr.end()) throw std::invalid_argument("FunctorTable: missing arrow");
    return it->second;
  }

  void validate() const {
    int n = src->size();
    for (int s = 0; s < n; ++s)
      for (int u = 0; u < n; ++u) {
        if (s == u || !src->leq(s, u)) continue;
        arrow(s, u).validate();
        for (int w = 0; w < n; ++w) {
          if (w == u || w == s || !src->leq(u, w)) continue;
          for (int t = 0; t < tgt->size(); ++t) {
            ChainMap comp = arrow(u, w).comp(t).compose(arrow(s, u).comp(t));
            ChainMap direct = arrow(s, w).comp(t);
            for (int dg = val[s].value(t).minDeg(); dg <= val[s].value(t).maxDeg(); ++dg)
              if (!(comp.comp(dg) == direct.comp(dg)))
                throw std::invalid_argument("FunctorTable: arrows are not functorial");
          }
        }
      }
  }
};

inline FunctorTable tableOfKernel(const Sheaf& k, const BasePtr& src, const BasePtr& tgt) {
  FunctorTable t;
  t.src = src;
  t.tgt = tgt;
  t.fld = k.field();
  for (int s = 0; s < src->size(); ++s) t.val.push_back(convolve(k, indicator(src, t.fld, s)));
  for (int s = 0; s < src->size(); ++s)
    for (int u = 0; u < src->size(); ++u)
      if (s != u && src->leq(s, u))
        t.arr.insert({{s, u}, convolveMap(k, indicatorUnitMap(src, t.fld, s, u))});
  return t;
}

// Extend the table to complexes of indicators: blocks per generator, table
// arrows as structure maps.
inline Sheaf applyTable(const FunctorTable& t, const IndCx& p) {
  FieldConfig fl = t.fld;
  Sheaf r(t.tgt, fl);
  int nt = t.tgt->size();
  std::vector<std::map<int, std::vector<std::pair<int, int>>>> lays(nt);
  for (int x = 0; x < nt; ++x) {
    Complex c(fl);
    int lo = 1 << 30, hi = -(1 << 30);
    for (int i = 0; i < p.size(); ++i) {
      const Complex& v = t.val[p.label(i)].value(x);
      if (v.isZero()) continue;
      lo = std::min(lo, v.minDeg() + p.deg(i));
      hi = std::max(hi, v.maxDeg() + p.deg(i));
    }
    if (hi >= lo) {
      for (int n = lo; n <= hi; ++n) {
        int off = 0;
        for (int i = 0; i < p.size(); ++i) {
          int dim = t.val[p.label(i)].value(x).dim(n - p.deg(i));
          if (dim > 0) {
            lays[x][n].push_back({i, off});
            off += dim;
          }
        }
        c.setDim(n, off);
      }
      for (int n = lo; n <= hi; ++n) {
        Matrix m(fl, c.dim(n + 1), c.dim(n));
        auto tIt = lays[x].find(n + 1);
        if (tIt != lays[x].end()) {
          for (auto& [i, off] : lays[x][n]) {
            Scalar sgn(fl, p.deg(i) % 2 == 0 ? 1 : -1);
            for (auto& [j, off2] : tIt->second) {
              if (j == i)
                detail::pasteBlock(m, t.val[p.label(i)].value(x).diff(n - p.deg(i)), off2,
                                   off, sgn);
              auto it = p.d.find({i, j});
              if (it == p.d.end()) continue;
              Matrix comp = p.label(i) == p.label(j)
                                ? Matrix::identity(fl, t.val[p.label(i)].value(x).dim(
                                                           n - p.deg(i)))
                                : t.arrow(p.label(i), p.label(j)).comp(x).comp(n - p.deg(i));
              detail::pasteBlock(m, comp, off2, off, it->second);
            }
          }
        }
        c.setDiff(n, m);
      }
    }
    r.setValue(x, c);
  }
  for (int x2 = 0; x2 < nt; ++x2)
    for (int x = 0; x < nt; ++x) {
      if (x2 == x || !t.tgt->leq(x2, x)) continue;
      ChainMap cm(r.value(x), r.value(x2));
      for (int n = r.value(x).minDeg(); n <= r.value(x).maxDeg(); ++n) {
        Matrix m(fl, r.value(x2).dim(n), r.value(x).dim(n));
        auto aIt = lays[x].find(n);
        auto bIt = lays[x2].find(n);
        if (aIt != lays[x].end() && bIt != lays[x2].end())
          for (auto& [i, off] : aIt->second)
            for (auto& [i2, off2] : bIt->second)
              if (i2 == i)
                detail::pasteBlock(m, t.val[p.label(i)].rho(x2, x).comp(n - p.deg(i)), off2,
                                   off, Scalar(fl, 1));
        cm.setComp(n, m);
      }
      r.setRho(x2, x, cm);
    }
  return r;
}

// Fourier-Mukai reconstruction: apply the table through the slices of the
// identity kernel. idCx is the identity kernel of the table's source as a
// complex of indicators on S x S.
inline Sheaf reconstructKernel(const FunctorTable& t, const IndCx& idCx) {
  t.validate();
  const BasePtr& prodSS = idCx.base;
  const BasePtr& s = t.src;
  int ns = s->size();
  // slice the identity kernel over each first coordinate
  std::vector<std::vector<int>> sliceGens(ns);
  std::vector<IndCx> slices(ns);
  for (int a = 0; a < ns; ++a) {
    IndCx sl;
    sl.base = t.src;
    sl.fld = t.fld;
    std::map<int, int> re;
    for (int i = 0; i < idCx.size(); ++i) {
      auto tup = prodSS->tuple(idCx.label(i));
      if (!s->leq(a, tup[0])) continue;
      re[i] = sl.size();
      sliceGens[a].push_back(i);
      sl.gens.push_back({tup[1], idCx.deg(i)});
    }
    for (auto& [ij, c] : idCx.d)
      if (re.count(ij.first) && re.count(ij.second)) sl.d[{re[ij.first], re[ij.second]}] = c;
    slices[a] = std::move(sl);
  }
  std::vector<Sheaf> applied;
  applied.reserve(ns);
  for (int a = 0; a < ns; ++a) applied.push_back(applyTable(t, slices[a]));
  // assemble the kernel on S x T
  BasePtr prodST = Base::product(s, t.tgt);
  int ntt = t.tgt->size();
  Sheaf k(prodST, t.fld);
  auto split = [&](int e) { return std::make_pair(e / ntt, e % ntt); };
  for (int e = 0; e < prodST->size(); ++e) {
    auto [a, x] = split(e);
    k.setValue(e, applied[a].value(x));
  }
  for (int e2 = 0; e2 < prodST->size(); ++e2)
    for (int e = 0; e < prodST->size(); ++e) {
      if (e2 == e || !prodST->leq(e2, e)) continue;
      auto [a, x] = split(e);
      auto [a2, x2] = split(e2);
      if (a == a2) {
        k.setRho(e2, e, applied[a].rho(x2, x));
        continue;
      }
      // slice over a is contained in the slice over a2; route each block of
      // applied[a] into the matching block of applied[a2] and restrict in T
      ChainMap cm(applied[a].value(x), applied[a2].value(x2));
      // rebuild layouts: blocks ordered by slice generator order
      auto layoutAt = [&](int sl, int xx, int n) {
        std::vector<std::pair<int, int>> blks;  // (global gen, offset)
        int off = 0;
        for (std::size_t ii = 0; ii < sliceGens[sl].size(); ++ii) {
          int g = sliceGens[sl][ii];
          int lbl = prodSS->tuple(idCx.label(g))[1];
          int dim = t.val[lbl].value(xx).dim(n - idCx.deg(g));
          if (dim > 0) {
            blks.push_back({g, off});
            off += dim;
          }
        }
        return blks;
      };
      for (int n = applied[a].value(x).minDeg(); n <= applied[a].value(x).maxDeg(); ++n) {
        Matrix m(t.fld, applied[a2].value(x2).dim(n), applied[a].value(x).dim(n));
        auto from = layoutAt(a, x, n);
        auto to = layoutAt(a2, x2, n);
        for (auto& [g, off] : from)
          for (auto& [g2, off2] : to)
            if (g2 == g) {
              int lbl = prodSS->tuple(idCx.label(g))[1];
              detail::pasteBlock(m, t.val[lbl].rho(x2, x).comp(n - idCx.deg(g)), off2, off,
                                 Scalar(t.fld, 1));
            }
        cm.setComp(n, m);
      }
      k.setRho(e2, e, cm);
    }
  return k;
}

// Kernel equivalence, decided by comparing actions on every indicator
// generator together with the naturality data over covering relations.
inline bool kernelsEquivalent(const Sheaf& k1, const Sheaf& k2, const BasePtr& src) {
  FieldConfig fl = k1.field();
  for (int s = 0; s < src->size(); ++s) {
    Sheaf f = indicator(src, fl, s);
    if (!equivalentDims(convolve(k1, f), convolve(k2, f))) return false;
  }
  for (auto& [s, u] : coveringPairs(src->poset())) {
    SheafMap m1 = convolveMap(k1, indicatorUnitMap(src, fl, s, u));
    SheafMap m2 = convolveMap(k2, indicatorUnitMap(src, fl, s, u));
    for (int t = 0; t < m1.source().base()->size(); ++t) {
      ChainMap a = m1.comp(t), b = m2.comp(t);
      int lo = std::min(a.source().minDeg(), b.source().minDeg());
      int hi = std::max(a.source().maxDeg(), b.source().maxDeg());
      for (int d = lo; d <= hi; ++d)
        if (rankOnH(a, d) != rankOnH(b, d)) return false;
    }
  }
  return true;
}

}  // namespace shv

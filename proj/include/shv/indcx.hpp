#pragma once
// Complexes of shifted indicator sheaves with scalar differentials.
//
// A generator (label s, degree d) stands for the indicator 1_s placed so that
// it contributes k to total degree d on str(s). A differential entry c from
// generator i to generator j (deg_j = deg_i + 1) is c times the canonical map
// 1_{label_i} -> 1_{label_j}, which exists iff label_i <= label_j.
//
// These objects are projective termwise; Hom out of them into any sheaf is
// plain bookkeeping, and Gaussian (Morse) reduction of invertible same-label
// entries keeps representatives small.

#include "shv/sheaf.hpp"

namespace shv {

struct IndCx {
  BasePtr base;
  FieldConfig fld;
  std::vector<std::pair<int, int>> gens;  // (label, degree)
  std::map<std::pair<int, int>, Scalar> d;

  int size() const { return int(gens.size()); }
  int label(int i) const { return gens[i].first; }
  int deg(int i) const { return gens[i].second; }

  void validate() const {
    for (auto& [ij, c] : d) {
      auto [i, j] = ij;
      if (deg(j) != deg(i) + 1) throw std::logic_error("IndCx: differential degree");
      if (!base->leq(label(i), label(j)))
        throw std::logic_error("IndCx: illegal differential entry (no canonical map)");
      if (c.isZero()) throw std::logic_error("IndCx: stored zero entry");
    }
    // d.d = 0 as scalar sums
    for (int i = 0; i < size(); ++i)
      for (int k = 0; k < size(); ++k) {
        if (deg(k) != deg(i) + 2) continue;
        Scalar acc(fld, 0);
        for (int j = 0; j < size(); ++j) {
          auto a = d.find({i, j});
          if (a == d.end()) continue;
          auto b = d.find({j, k});
          if (b == d.end()) continue;
          acc += a->second * b->second;
        }
        if (!acc.isZero()) throw std::logic_error("IndCx: d.d != 0");
      }
  }

  IndCx shift(int k) const {
    IndCx r = *this;
    for (auto& [l, dg] : r.gens) dg -= k;
    if (k % 2 != 0)
      for (auto& [ij, c] : r.d) c = -c;
    return r;
  }
};

inline IndCx indicatorCx(const BasePtr& b, FieldConfig f, int s, int degree = 0) {
  IndCx r;
  r.base = b;
  r.fld = f;
  r.gens.push_back({s, degree});
  return r;
}

inline IndCx directSumInd(const IndCx& a, const IndCx& b) {
  IndCx r = a;
  int off = a.size();
  for (auto& g : b.gens) r.gens.push_back(g);
  for (auto& [ij, c] : b.d) r.d[{ij.first + off, ij.second + off}] = c;
  return r;
}

// 1_s-complex tensored with a plain complex: gens multiply.
inline IndCx tensorInd(const IndCx& p, const Complex& e) {
  IndCx r;
  r.base = p.base;
  r.fld = p.fld;
  // gen (i, degree m, index x) -> label(i), deg(i)+m
  struct Key {
    int i, m, x;
  };
  std::vector<Key> keys;
  std::map<std::tuple<int, int, int>, int> idx;
  for (int i = 0; i < p.size(); ++i)
    for (int m = e.minDeg(); m <= e.maxDeg(); ++m)
      for (int x = 0; x < e.dim(m); ++x) {
        idx[{i, m, x}] = int(keys.size());
        keys.push_back({i, m, x});
        r.gens.push_back({p.label(i), p.deg(i) + m});
      }
  for (std::size_t a = 0; a < keys.size(); ++a) {
    auto [i, m, x] = keys[a];
    // d_P (x) id
    for (int j = 0; j < p.size(); ++j) {
      auto it = p.d.find({i, j});
      if (it == p.d.end()) continue;
      r.d[{int(a), idx.at({j, m, x})}] = it->second;
    }
    // (-1)^{deg_P} id (x) d_E
    Matrix de = e.diff(m);
    Scalar sgn(p.fld, p.deg(i) % 2 == 0 ? 1 : -1);
    for (int y = 0; y < e.dim(m + 1); ++y)
      if (!de.at(y, x).isZero()) r.d[{int(a), idx.at({i, m + 1, y})}] = de.at(y, x) * sgn;
  }
  return r;
}

struct IndMap {
  // component entries (srcGen, tgtGen) -> scalar; same degree; needs
  // label_src <= label_tgt.
  std::map<std::pair<int, int>, Scalar> comp;
};

inline IndCx coneInd(const IndCx& a, const IndCx& b, const IndMap& f) {
  IndCx r;
  r.base = a.base;
  r.fld = a.fld;
  for (auto& [l, dg] : a.gens) r.gens.push_back({l, dg - 1});
  int off = int(a.gens.size());
  for (auto& g : b.gens) r.gens.push_back(g);
  for (auto& [ij, c] : a.d) r.d[{ij.first, ij.second}] = -c;
  for (auto& [ij, c] : f.comp)
    if (!c.isZero()) r.d[{ij.first, off + ij.second}] = c;
  for (auto& [ij, c] : b.d) r.d[{off + ij.first, off + ij.second}] = c;
  return r;
}

// Relabel along a refinement (or any order-preserving) map: the left Kan
// extension of representables, 1_r -> 1_{q(r)}.
inline IndCx relabelInd(const IndCx& p, const PosetMap& q) {
  IndCx r;
  r.base = q.target;
  r.fld = p.fld;
  for (auto& [l, dg] : p.gens) r.gens.push_back({q.img[l], dg});
  r.d = p.d;
  return r;
}

// Gaussian reduction, cancelling invertible same-label differential entries.
// Optionally accumulates the inclusion (reduced -> original) needed to
// transport augmentations, and the projection (original -> reduced) needed to
// transport maps into the complex. Sparse maps are keyed (reducedGen,
// originalGen) and (originalGen, reducedGen) respectively, scalars times the
// canonical indicator maps (always legal).
struct ReductionMaps {
  std::map<std::pair<int, int>, Scalar> incl;  // (curGen, origGen)
  std::map<std::pair<int, int>, Scalar> proj;  // (origGen, curGen)
};

inline IndCx reduceInd(const IndCx& p, ReductionMaps* maps = nullptr) {
  int n = p.size();
  std::vector<bool> alive(n, true);
  std::map<std::pair<int, int>, Scalar> d = p.d;
  std::map<std::pair<int, int>, Scalar> incl, proj;
  if (maps)
    for (int i = 0; i < n; ++i) {
      incl[{i, i}] = Scalar(p.fld, 1);
      proj[{i, i}] = Scalar(p.fld, 1);
    }
  auto erase0 = [](std::map<std::pair<int, int>, Scalar>& m, std::pair<int, int> k) {
    auto it = m.find(k);
    if (it != m.end()) m.erase(it);
  };
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto it = d.begin(); it != d.end(); ++it) {
      auto [i, j] = it->first;
      if (!alive[i] || !alive[j] || p.label(i) != p.label(j) || it->second.isZero()) continue;
      Scalar e = it->second, einv = e.inverse();
      // collect rows/cols touching the pair
      std::vector<std::pair<int, Scalar>> intoJ, fromI;
      for (auto& [uv, c] : d) {
        if (!alive[uv.first] || !alive[uv.second] || c.isZero()) continue;
        if (uv.second == j && uv.first != i) intoJ.push_back({uv.first, c});
        if (uv.first == i && uv.second != j) fromI.push_back({uv.second, c});
      }
      for (auto& [u, cu] : intoJ)
        for (auto& [w, cw] : fromI) {
          auto key = std::make_pair(u, w);
          Scalar cur = d.count(key) ? d[key] : Scalar(p.fld, 0);
          cur -= cu * einv * cw;
          if (cur.isZero())
            erase0(d, key);
          else
            d[key] = cur;
        }
      if (maps) {
        // inclusion: for u with d(u -> j) != 0: I(u) -= e^{-1} c_u I(i)
        for (auto& [u, cu] : intoJ) {
          std::vector<std::pair<int, Scalar>> irow;
          for (auto& [kk, c] : incl)
            if (kk.first == i) irow.push_back({kk.second, c});
          for (auto& [o, c] : irow) {
            auto key = std::make_pair(u, o);
            Scalar cur = incl.count(key) ? incl[key] : Scalar(p.fld, 0);
            cur -= einv * cu * c;
            if (cur.isZero())
              erase0(incl, key);
            else
              incl[key] = cur;
          }
        }
        // projection: for w with d(i -> w) != 0: P(orig with comp at j) -= ...
        for (auto& [w, cw] : fromI) {
          std::vector<std::pair<int, Scalar>> jcol;
          for (auto& [kk, c] : proj)
            if (kk.second == j) jcol.push_back({kk.first, c});
          for (auto& [o, c] : jcol) {
            auto key = std::make_pair(o, w);
            Scalar cur = proj.count(key) ? proj[key] : Scalar(p.fld, 0);
            cur -= c * einv * cw;
            if (cur.isZero())
              erase0(proj, key);
            else
              proj[key] = cur;
          }
        }
        for (auto m : {&incl, &proj})
          for (auto iter = m->begin(); iter != m->end();) {
            auto [a, b] = iter->first;
            bool dead = (m == &incl) ? (a == i || a == j) : (b == i || b == j);
            if (dead)
              iter = m->erase(iter);
            else
              ++iter;
          }
      }
      alive[i] = alive[j] = false;
      for (auto iter = d.begin(); iter != d.end();) {
        auto [a, b] = iter->first;
        if (a == i || a == j || b == i || b == j)
          iter = d.erase(iter);
        else
          ++iter;
      }
      progress = true;
      break;
    }
  }
  // compact
  std::vector<int> newIdx(n, -1);
  IndCx r;
  r.base = p.base;
  r.fld = p.fld;
  for (int i = 0; i < n; ++i)
    if (alive[i]) {
      newIdx[i] = r.size();
      r.gens.push_back(p.gens[i]);
    }
  for (auto& [ij, c] : d)
    if (alive[ij.first] && alive[ij.second] && !c.isZero())
      r.d[{newIdx[ij.first], newIdx[ij.second]}] = c;
  if (maps) {
    for (auto& [kk, c] : incl)
      if (alive[kk.first]) maps->incl[{newIdx[kk.first], kk.second}] = c;
    for (auto& [kk, c] : proj)
      if (alive[kk.second]) maps->proj[{kk.first, newIdx[kk.second]}] = c;
  }
  return r;
}

// Totalization into an honest sheaf. At stalk t the alive generators are
// those with t <= label; restrictions are the summand inclusions.
inline Sheaf totalizeInd(const IndCx& p) {
  Sheaf f(p.base, p.fld);
  int n = p.base->size();
  std::vector<std::vector<int>> alive(n);
  for (int t = 0; t < n; ++t)
    for (int i = 0; i < p.size(); ++i)
      if (p.base->leq(t, p.label(i))) alive[t].push_back(i);
  std::vector<std::map<std::pair<int, int>, int>> pos(n);  // (deg, gen) -> index
  for (int t = 0; t < n; ++t) {
    Complex c(p.fld);
    std::map<int, int> dims;
    for (int i : alive[t]) {
      pos[t][{p.deg(i), i}] = dims[p.deg(i)];
      dims[p.deg(i)]++;
    }
    for (auto& [dg, dim] : dims) c.setDim(dg, dim);
    for (auto& [dg, dim] : dims) {
      Matrix m(p.fld, c.dim(dg + 1), dim);
      for (int i : alive[t]) {
        if (p.deg(i) != dg) continue;
        for (int j : alive[t]) {
          auto it = p.d.find({i, j});
          if (it == p.d.end()) continue;
          m.at(pos[t].at({dg + 1, j}), pos[t].at({dg, i})) = it->second;
        }
      }
      c.setDiff(dg, m);
    }
    f.setValue(t, c);
  }
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (s == t || !p.base->leq(s, t)) continue;
      // alive(t) is a subset of alive(s)
      ChainMap r(f.value(t), f.value(s));
      for (int dg = f.value(t).minDeg(); dg <= f.value(t).maxDeg(); ++dg) {
        Matrix m(p.fld, f.value(s).dim(dg), f.value(t).dim(dg));
        for (int i : alive[t])
          if (p.deg(i) == dg) m.at(pos[s].at({dg, i}), pos[t].at({dg, i})) = Scalar(p.fld, 1);
        r.setComp(dg, m);
      }
      f.setRho(s, t, r);
    }
  return f;
}

// Bar resolution of a sheaf: generators 1_{s_0} (x) F(s_k)^m over strict
// chains s_0 < ... < s_k, in homological column k (total degree m - k), with
// the bar differential; quasi-isomorphic to F via the evident augmentation.
struct Resolution {
  IndCx cx;
  // augmentation: for each generator g an element of F(label_g)^{deg_g},
  // stored as a column vector
  std::vector<Matrix> aug;
};

inline Resolution barResolution(const Sheaf& f) {
  const BasePtr& b = f.base();
  FieldConfig fl = f.field();
  IndCx p;
  p.base = b;
  p.fld = fl;
  auto chains = b->poset().chains();
  struct GenKey {
    int chain, m, x;
  };
  std::vector<GenKey> keys;
  std::map<std::tuple<int, int, int>, int> idx;
  for (std::size_t ci = 0; ci < chains.size(); ++ci) {
    int top = chains[ci].back(), k = int(chains[ci].size()) - 1;
    const Complex& v = f.value(top);
    for (int m = v.minDeg(); m <= v.maxDeg(); ++m)
      for (int x = 0; x < v.dim(m); ++x) {
        idx[{int(ci), m, x}] = int(keys.size());
        keys.push_back({int(ci), m, x});
        p.gens.push_back({chains[ci].front(), m - k});
      }
  }
  std::map<std::vector<int>, int> chainIdx;
  for (std::size_t ci = 0; ci < chains.size(); ++ci) chainIdx[chains[ci]] = int(ci);
  auto addEntry = [&](int a, int bidx, const Scalar& c) {
    if (c.isZero()) return;
    auto key = std::make_pair(a, bidx);
    if (p.d.count(key))
      p.d[key] += c;
    else
      p.d[key] = c;
    if (p.d[key].isZero()) p.d.erase(key);
  };
  for (std::size_t a = 0; a < keys.size(); ++a) {
    auto [ci, m, x] = keys[a];
    const auto& c = chains[ci];
    int k = int(c.size()) - 1, top = c.back();
    // internal differential, sign (-1)^k
    Matrix dv = f.value(top).diff(m);
    Scalar sk(fl, k % 2 == 0 ? 1 : -1);
    for (int y = 0; y < dv.rows(); ++y)
      if (!dv.at(y, x).isZero()) addEntry(int(a), idx.at({ci, m + 1, y}), dv.at(y, x) * sk);
    // bar differential
    for (int i = 0; i <= k && k >= 1; ++i) {
      std::vector<int> facet;
      for (int j = 0; j <= k; ++j)
        if (j != i) facet.push_back(c[j]);
      int fc = chainIdx.at(facet);
      Scalar coef(fl, i % 2 == 0 ? 1 : -1);
      if (i == k) {
        // drop the top: restrict the coordinates along rho
        Matrix rho = f.rho(c[k - 1], c[k]).comp(m);
        for (int y = 0; y < rho.rows(); ++y)
          if (!rho.at(y, x).isZero()) addEntry(int(a), idx.at({fc, m, y}), rho.at(y, x) * coef);
      } else {
        addEntry(int(a), idx.at({fc, m, x}), coef);
      }
    }
  }
  Resolution r;
  // augmentation before reduction: singleton chains map to basis vectors
  std::vector<Matrix> aug0(keys.size());
  for (std::size_t a = 0; a < keys.size(); ++a) {
    auto [ci, m, x] = keys[a];
    int s = chains[ci].front();
    Matrix col(fl, f.value(s).dim(m), 1);
    if (chains[ci].size() == 1) col.at(x, 0) = Scalar(fl, 1);
    aug0[a] = col;
  }
  ReductionMaps maps;
  r.cx = reduceInd(p, &maps);
  r.aug.assign(r.cx.size(), Matrix());
  for (int g = 0; g < r.cx.size(); ++g)
    r.aug[g] = Matrix(fl, f.value(r.cx.label(g)).dim(r.cx.deg(g)), 1);
  for (auto& [kk, c] : maps.incl) {
    auto [g, o] = kk;
    if (aug0[o].isZero()) continue;
    // restrict the original element from label(o) down to label(g)
    Matrix v = f.rho(r.cx.label(g), p.label(o)).comp(p.deg(o)) * aug0[o];
    r.aug[g] = r.aug[g] + v.scaled(c);
  }
  return r;
}

inline SheafMap augmentationMap(const Resolution& res, const Sheaf& f) {
  Sheaf tot = totalizeInd(res.cx);
  SheafMap m(tot, f);
  const BasePtr& b = f.base();
  for (int t = 0; t < b->size(); ++t) {
    ChainMap cm(tot.value(t), f.value(t));
    // order of alive generators matches totalizeInd
    std::map<int, int> cnt;
    for (int g = 0; g < res.cx.size(); ++g) {
      if (!b->leq(t, res.cx.label(g))) continue;
      int dg = res.cx.deg(g);
      int col = cnt[dg]++;
      Matrix v = f.rho(t, res.cx.label(g)).comp(dg) * res.aug[g];
      for (int i = 0; i < v.rows(); ++i) {
        Matrix comp = cm.comp(dg);
        comp.at(i, col) = v.at(i, 0);
        cm.setComp(dg, comp);
      }
    }
    m.setComp(t, cm);
  }
  return m;
}

// Hom(P, G) for P a complex of indicators: blocks G(label)^{deg+n}.
struct HomLayout {
  // per total degree: list of (gen, offset)
  std::map<int, std::vector<std::pair<int, int>>> blocks;
  std::map<int, int> dims;
};

inline Complex homIndSheaf(const IndCx& p, const Sheaf& g, HomLayout* lay = nullptr) {
  FieldConfig fl = p.fld;
  Complex r(fl);
  if (p.size() == 0) return r;
  int lo = 1 << 30, hi = -(1 << 30);
  for (int i = 0; i < p.size(); ++i) {
    const Complex& v = g.value(p.label(i));
    if (v.isZero()) continue;
    lo = std::min(lo, v.minDeg() - p.deg(i));
    hi = std::max(hi, v.maxDeg() - p.deg(i));
  }
  if (hi < lo) return r;
  HomLayout layout;
  for (int n = lo; n <= hi; ++n) {
    int off = 0;
    std::vector<std::pair<int, int>> blks;
    for (int i = 0; i < p.size(); ++i) {
      int dim = g.value(p.label(i)).dim(p.deg(i) + n);
      if (dim > 0) {
        blks.push_back({i, off});
        off += dim;
      }
    }
    layout.blocks[n] = blks;
    layout.dims[n] = off;
    r.setDim(n, off);
  }
  for (int n = lo; n <= hi; ++n) {
    Matrix m(fl, r.dim(n + 1), r.dim(n));
    auto& src = layout.blocks[n];
    auto tIt = layout.blocks.find(n + 1);
    if (tIt == layout.blocks.end()) {
      r.setDiff(n, m);
      continue;
    }
    Scalar sgn(fl, n % 2 == 0 ? 1 : -1);
    for (auto& [i, off] : src) {
      // post-composition with d_G
      for (auto& [i2, off2] : tIt->second)
        if (i2 == i)
          detail::pasteBlock(m, g.value(p.label(i)).diff(p.deg(i) + n), off2, off,
                             Scalar(fl, 1));
      // pre-composition with d_P: phi_j pulled back along entries j' -> i? No:
      // (phi . d_P) at gen i sums entries i -> j against phi_j via rho.
    }
    for (auto& [j, offj] : src) {
      for (auto& [i, offi] : tIt->second) {
        auto it = p.d.find({i, j});
        if (it == p.d.end()) continue;
        Matrix rho = g.rho(p.label(i), p.label(j)).comp(p.deg(j) + n);
        detail::pasteBlock(m, rho, offi, offj, -(sgn * it->second));
      }
    }
    r.setDiff(n, m);
  }
  if (lay) *lay = layout;
  return r;
}

inline Complex homIndInd(const IndCx& p, const IndCx& q) { return homIndSheaf(p, totalizeInd(q)); }

inline Resolution resolveSheaf(const Sheaf& f) { return barResolution(f); }

inline Complex derivedHom(const Sheaf& f, const Sheaf& g) {
  if (!(*f.base() == *g.base())) throw std::invalid_argument("derivedHom: base mismatch");
  return homIndSheaf(resolveSheaf(f).cx, g);
}

// Internal Hom computed star-by-star from one global resolution of F:
// restricting a complex of indicators to str(s) replaces 1_l by 1_{l v s}
// (join) or zero.
inline Sheaf sheafHom(const Sheaf& f, const Sheaf& g) {
  if (!(*f.base() == *g.base())) throw std::invalid_argument("sheafHom: base mismatch");
  const BasePtr& b = f.base();
  FieldConfig fl = f.field();
  IndCx p = resolveSheaf(f).cx;
  Sheaf r(b, fl);
  int n = b->size();
  // layouts per stratum
  std::vector<std::map<int, std::vector<std::pair<int, int>>>> blocks(n);
  std::vector<std::map<int, int>> dims(n);
  for (int s = 0; s < n; ++s) {
    int lo = 1 << 30, hi = -(1 << 30);
    for (int i = 0; i < p.size(); ++i) {
      int u = b->join(p.label(i), s);
      if (u < 0 || g.value(u).isZero()) continue;
      lo = std::min(lo, g.value(u).minDeg() - p.deg(i));
      hi = std::max(hi, g.value(u).maxDeg() - p.deg(i));
    }
    Complex c(fl);
    if (hi >= lo) {
      for (int m = lo; m <= hi; ++m) {
        int off = 0;
        std::vector<std::pair<int, int>> blks;
        for (int i = 0; i < p.size(); ++i) {
          int u = b->join(p.label(i), s);
          if (u < 0) continue;
          int dim = g.value(u).dim(p.deg(i) + m);
          if (dim > 0) {
            blks.push_back({i, off});
            off += dim;
          }
        }
        blocks[s][m] = blks;
        dims[s][m] = off;
        c.setDim(m, off);
      }
      for (int m = lo; m <= hi; ++m) {
        Matrix mat(fl, c.dim(m + 1), c.dim(m));
        auto tIt = blocks[s].find(m + 1);
        if (tIt != blocks[s].end()) {
          Scalar sgn(fl, m % 2 == 0 ? 1 : -1);
          for (auto& [i, off] : blocks[s][m]) {
            int u = b->join(p.label(i), s);
            for (auto& [i2, off2] : tIt->second)
              if (i2 == i)
                detail::pasteBlock(mat, g.value(u).diff(p.deg(i) + m), off2, off,
                                   Scalar(fl, 1));
          }
          for (auto& [j, offj] : blocks[s][m])
            for (auto& [i, offi] : tIt->second) {
              auto it = p.d.find({i, j});
              if (it == p.d.end()) continue;
              int ui = b->join(p.label(i), s), uj = b->join(p.label(j), s);
              Matrix rho = g.rho(ui, uj).comp(p.deg(j) + m);
              detail::pasteBlock(mat, rho, offi, offj, -(sgn * it->second));
            }
        }
        c.setDiff(m, mat);
      }
    }
    r.setValue(s, c);
  }
  // restriction maps: for s' <= s, blockwise rho_G from join(l,s) to join(l,s')
  for (int s2 = 0; s2 < n; ++s2)
    for (int s = 0; s < n; ++s) {
      if (s2 == s || !b->leq(s2, s)) continue;
      ChainMap cm(r.value(s), r.value(s2));
      for (int m = r.value(s).minDeg(); m <= r.value(s).maxDeg(); ++m) {
        Matrix mat(fl, r.value(s2).dim(m), r.value(s).dim(m));
        auto itS = blocks[s].find(m);
        auto itS2 = blocks[s2].find(m);
        if (itS != blocks[s].end() && itS2 != blocks[s2].end())
          for (auto& [i, off] : itS->second)
            for (auto& [i2, off2] : itS2->second) {
              if (i2 != i) continue;
              int u = b->join(p.label(i), s), u2 = b->join(p.label(i), s2);
              Matrix rho = g.rho(u2, u).comp(p.deg(i) + m);
              detail::pasteBlock(mat, rho, off2, off, Scalar(fl, 1));
            }
        cm.setComp(m, mat);
      }
      r.setRho(s2, s, cm);
    }
  return r;
}

}  // namespace shv

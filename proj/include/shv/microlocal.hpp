#pragma once
// Combinatorial microstalks and their corepresentatives, singular-support
// tables, constructibility with respect to a coarsening, and the
// Thom-Sebastiani product rule.
//
// A covector at a stratum sigma is modeled by a total sign assignment on the
// vertices of its link; the negative cofaces cut out the combinatorial
// sublevel set N, and the microstalk is fib(F(sigma) -> Gamma(N, F)).
// Assignments whose N is empty act as stalk functors (the zero-covector
// analogues) and are tagged as such in support tables.

#include "shv/kernels.hpp"

namespace shv {

struct SignAssignment {
  int sigma;
  std::map<std::pair<int, int>, int> signs;  // (factor, link vertex) -> +1 / -1
};

// Vertices (factor, v) whose addition to the matching component of sigma is
// still a simplex.
inline std::vector<std::pair<int, int>> linkVertices(const BasePtr& b, int sigma) {
  std::vector<std::pair<int, int>> r;
  const auto& tup = b->tuple(sigma);
  for (int i = 0; i < b->factorCount(); ++i) {
    const SimplicialComplex& k = b->factor(i);
    const auto& verts = k.simplices[tup[i]];
    for (int v = 0; v < k.vertexCount(); ++v) {
      if (std::find(verts.begin(), verts.end(), v) != verts.end()) continue;
      std::vector<int> ext = verts;
      ext.push_back(v);
      std::sort(ext.begin(), ext.end());
      if (k.index(ext) >= 0) r.push_back({i, v});
    }
  }
  return r;
}

inline SignAssignment allPositive(const BasePtr& b, int sigma) {
  SignAssignment xi{sigma, {}};
  for (auto& lv : linkVertices(b, sigma)) xi.signs[lv] = 1;
  return xi;
}

// The open sublevel set: strict cofaces of sigma containing at least one
// negative link vertex. A down-set of the base poset.
inline std::vector<int> negativeCofaces(const BasePtr& b, const SignAssignment& xi) {
  std::vector<int> r;
  const auto& stup = b->tuple(xi.sigma);
  for (int t = 0; t < b->size(); ++t) {
    if (t == xi.sigma || !b->leq(t, xi.sigma)) continue;
    bool neg = false;
    for (int i = 0; i < b->factorCount() && !neg; ++i) {
      const auto& sv = b->factor(i).simplices[stup[i]];
      for (int v : b->factor(i).simplices[b->tuple(t)[i]]) {
        if (std::find(sv.begin(), sv.end(), v) != sv.end()) continue;
        auto it = xi.signs.find({i, v});
        if (it == xi.signs.end())
          throw std::invalid_argument("SignAssignment: missing sign for a link vertex");
        if (it->second < 0) {
          neg = true;
          break;
        }
      }
    }
    if (neg) r.push_back(t);
  }
  return r;
}

inline Complex microstalk(const Sheaf& f, const SignAssignment& xi) {
  const BasePtr& b = f.base();
  std::vector<int> n = negativeCofaces(b, xi);
  if (n.empty()) return f.value(xi.sigma);
  PosetDiagram d = stalkDiagramOp(f, n);
  std::vector<ChainMap> cone;
  for (int p : n) cone.push_back(f.rho(p, xi.sigma));
  return fib(mapToHolim(f.value(xi.sigma), d, cone));
}

// The corepresenting complex of indicators: cone of the canonical map from
// the homotopy colimit of indicators over the sublevel set into 1_sigma.
inline IndCx microstalkCorep(const BasePtr& b, FieldConfig fl, const SignAssignment& xi) {
  std::vector<int> n = negativeCofaces(b, xi);
  if (n.empty()) return indicatorCx(b, fl, xi.sigma);
  Poset sub = b->poset().induced(n);
  auto chains = sub.chains();
  IndCx bar;
  bar.base = b;
  bar.fld = fl;
  std::map<std::vector<int>, int> chainIdx;
  for (std::size_t ci = 0; ci < chains.size(); ++ci) {
    chainIdx[chains[ci]] = int(ci);
    bar.gens.push_back({n[chains[ci].front()], -(int(chains[ci].size()) - 1)});
  }
  for (std::size_t ci = 0; ci < chains.size(); ++ci) {
    const auto& c = chains[ci];
    int k = int(c.size()) - 1;
    for (int i = 0; i <= k && k >= 1; ++i) {
      std::vector<int> facet;
      for (int j = 0; j <= k; ++j)
        if (j != i) facet.push_back(c[j]);
      Scalar coef(fl, i % 2 == 0 ? 1 : -1);
      auto key = std::make_pair(int(ci), chainIdx.at(facet));
      if (bar.d.count(key))
        bar.d[key] += coef;
      else
        bar.d[key] = coef;
      if (bar.d[key].isZero()) bar.d.erase(key);
    }
  }
  IndCx one = indicatorCx(b, fl, xi.sigma);
  IndMap aug;
  for (std::size_t ci = 0; ci < chains.size(); ++ci)
    if (chains[ci].size() == 1) aug.comp[{int(ci), 0}] = Scalar(fl, 1);
  return reduceInd(coneInd(bar, one, aug));
}

// Whether the assignment is cut out by an affine functional vanishing on
// sigma, factor by factor. Only decidable when a factor carries coordinates;
// factors without coordinates accept every assignment. In one dimension the
// functional is linear in the (cyclically unwrapped) coordinate, so the signs
// must be constant on each side of the vertex.
inline bool isRealizable(const BasePtr& b, const SignAssignment& xi) {
  for (int i = 0; i < b->factorCount(); ++i) {
    const SimplicialComplex& k = b->factor(i);
    if (k.coords.empty()) continue;
    const auto& verts = k.simplices[b->tuple(xi.sigma)[i]];
    if (verts.size() != 1) continue;  // top-dimensional component: no signs here
    BigRat x0 = k.coords[verts[0]];
    int side = 0;  // sign required on the positive-displacement side, 0 = free
    for (auto& [key, sg] : xi.signs) {
      if (key.first != i) continue;
      BigRat d = k.coords[key.second] - x0;
      // unwrap cyclic coordinates to the shorter side
      if (d > BigRat(1, 2)) d -= 1;
      if (d < BigRat(-1, 2)) d += 1;
      int want = d > 0 ? sg : -sg;
      if (side == 0)
        side = want;
      else if (side != want)
        return false;
    }
  }
  return true;
}

struct SupportEntry {
  int sigma;
  std::vector<int> signs;  // aligned with linkVertices(b, sigma)
  bool zeroSection;        // sublevel set empty: the assignment acts as a stalk
  std::map<int, int> dims; // microstalk cohomology
};

// Full enumeration over total sign assignments, keeping the realizable ones;
// refuses oversized links.
inline std::vector<SupportEntry> singularSupport(const Sheaf& f, int maxLinkSize = 12,
                                                 bool includeUnrealizable = false) {
  const BasePtr& b = f.base();
  std::vector<SupportEntry> table;
  for (int s = 0; s < b->size(); ++s) {
    auto link = linkVertices(b, s);
    if (int(link.size()) > maxLinkSize)
      throw std::runtime_error("singularSupport: link of " + b->name(s) + " has " +
                               std::to_string(link.size()) +
                               " vertices, over the enumeration budget");
    for (long long mask = 0; mask < (1LL << link.size()); ++mask) {
      SignAssignment xi{s, {}};
      std::vector<int> signs;
      for (std::size_t i = 0; i < link.size(); ++i) {
        int sg = (mask >> i) & 1 ? -1 : 1;
        xi.signs[link[i]] = sg;
        signs.push_back(sg);
      }
      if (!includeUnrealizable && !isRealizable(b, xi)) continue;
      bool zero = negativeCofaces(b, xi).empty();
      auto dims = cohomologyDims(microstalk(f, xi));
      if (!dims.empty()) table.push_back({s, signs, zero, dims});
    }
  }
  return table;
}

// Entries away from the stalk (zero-covector) directions.
inline std::vector<SupportEntry> properSupport(const std::vector<SupportEntry>& t) {
  std::vector<SupportEntry> r;
  for (auto& e : t)
    if (!e.zeroSection) r.push_back(e);
  return r;
}

// Constructibility with respect to a coarsening: every generization map
// between strata merged by q is a quasi-isomorphism.
inline bool isConstructibleWrt(const Sheaf& f, const PosetMap& q) {
  if (q.kind != PosetMap::Kind::Refinement)
    throw std::invalid_argument("isConstructibleWrt: needs a refinement map");
  const BasePtr& b = f.base();
  for (int s = 0; s < b->size(); ++s)
    for (int t = 0; t < b->size(); ++t) {
      if (s == t || !b->leq(s, t) || q(s) != q(t)) continue;
      if (!isQuasiIso(f.rho(s, t))) return false;
    }
  return true;
}

// Concatenated sign assignment on a product base (first factors from xi).
inline SignAssignment productAssignment(const BasePtr& prodBase, const BasePtr& leftBase,
                                        int sigma, const SignAssignment& xi,
                                        const SignAssignment& zeta) {
  SignAssignment r{sigma, {}};
  int off = leftBase->factorCount();
  for (auto& [k, v] : xi.signs) r.signs[k] = v;
  for (auto& [k, v] : zeta.signs) r.signs[{k.first + off, k.second}] = v;
  (void)prodBase;
  return r;
}

// Thom-Sebastiani at one pair of covectors: the microstalk of the exterior
// product is the tensor product of the microstalks.
inline bool thomSebastianiCheck(const Sheaf& f, const SignAssignment& xi, const Sheaf& g,
                                const SignAssignment& zeta) {
  Sheaf box = boxtimes(f, g);
  int sigma = box.base()->elementIndex([&] {
    auto t = f.base()->tuple(xi.sigma);
    for (int x : g.base()->tuple(zeta.sigma)) t.push_back(x);
    return t;
  }());
  SignAssignment prod = productAssignment(box.base(), f.base(), sigma, xi, zeta);
  Complex lhs = tensorComplex(microstalk(f, xi), microstalk(g, zeta));
  Complex rhs = microstalk(box, prod);
  return cohomologyDims(lhs) == cohomologyDims(rhs);
}

}  // namespace shv

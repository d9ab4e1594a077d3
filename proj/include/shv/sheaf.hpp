#pragma once
// Constructible sheaves as strict representations of the face poset:
// a complex per stratum and a restriction chain map F(t) -> F(s) for every
// relation s <= t (str(s) is contained in str(t), so sections restrict).

#include "shv/diagram.hpp"
#include "shv/simplicial.hpp"

namespace shv {

class Sheaf {
 public:
  Sheaf(BasePtr base, FieldConfig f)
      : base_(std::move(base)), fld_(f), val_(base_->size(), Complex(f)) {}

  const BasePtr& base() const { return base_; }
  FieldConfig field() const { return fld_; }

  void setValue(int e, Complex c) { val_[e] = std::move(c); }
  const Complex& value(int e) const { return val_[e]; }

  // restriction for s <= t : F(t) -> F(s)
  void setRho(int s, int t, const ChainMap& f) {
    if (!base_->leq(s, t)) throw std::invalid_argument("Sheaf: rho needs s <= t");
    if (s == t) return;
    rho_[{s, t}] = f;
  }
  ChainMap rho(int s, int t) const {
    if (s == t) return ChainMap::identity(val_[s]);
    auto it = rho_.find({s, t});
    if (it == rho_.end()) return ChainMap::zero(val_[t], val_[s]);
    return it->second;
  }

  void validate() const {
    int n = base_->size();
    for (int s = 0; s < n; ++s) val_[s].validate();
    for (auto& [st, f] : rho_) {
      auto [s, t] = st;
      if (!(f.source() == val_[t]) || !(f.target() == val_[s]))
        throw std::logic_error("Sheaf: rho endpoints mismatch at " + base_->name(s) +
                               " <= " + base_->name(t));
      f.validate();
    }
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) {
        if (!base_->leq(s, t) || s == t) continue;
        for (int u = 0; u < n; ++u) {
          if (!base_->leq(t, u) || t == u) continue;
          ChainMap comp = rho(s, t).compose(rho(t, u));
          ChainMap direct = rho(s, u);
          for (int d = val_[u].minDeg(); d <= val_[u].maxDeg(); ++d)
            if (!(comp.comp(d) == direct.comp(d)))
              throw std::logic_error("Sheaf: restrictions not functorial through " +
                                     base_->name(s) + " <= " + base_->name(t) + " <= " +
                                     base_->name(u));
        }
      }
  }

  bool isZero() const {
    for (auto& v : val_)
      if (!v.isZero()) return false;
    return true;
  }

 private:
  BasePtr base_;
  FieldConfig fld_;
  std::vector<Complex> val_;
  std::map<std::pair<int, int>, ChainMap> rho_;
};

class SheafMap {
 public:
  SheafMap(const Sheaf& src, const Sheaf& tgt) : src_(src), tgt_(tgt) {
    if (!(*src.base() == *tgt.base())) throw std::invalid_argument("SheafMap: base mismatch");
  }

  const Sheaf& source() const { return src_; }
  const Sheaf& target() const { return tgt_; }

  void setComp(int e, const ChainMap& f) { comp_[e] = f; }
  ChainMap comp(int e) const {
    auto it = comp_.find(e);
    if (it == comp_.end()) return ChainMap::zero(src_.value(e), tgt_.value(e));
    return it->second;
  }

  void validate() const {
    int n = src_.base()->size();
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) {
        if (!src_.base()->leq(s, t) || s == t) continue;
        ChainMap a = comp(s).compose(src_.rho(s, t));
        ChainMap b = tgt_.rho(s, t).compose(comp(t));
        for (int d = src_.value(t).minDeg(); d <= src_.value(t).maxDeg(); ++d)
          if (!(a.comp(d) == b.comp(d)))
            throw std::logic_error("SheafMap: does not commute with restriction " +
                                   src_.base()->name(s) + " <= " + src_.base()->name(t));
      }
  }

  bool isQuasiIsoPointwise() const {
    for (int e = 0; e < src_.base()->size(); ++e) {
      ChainMap f = comp(e);
      if (!isQuasiIso(f)) return false;
    }
    return true;
  }

 private:
  Sheaf src_, tgt_;
  std::map<int, ChainMap> comp_;
};

inline Sheaf zeroSheaf(const BasePtr& b, FieldConfig f) { return Sheaf(b, f); }

// Constant sheaf with a fixed stalk complex.
inline Sheaf constantSheaf(const BasePtr& b, const Complex& c) {
  Sheaf r(b, c.field());
  for (int e = 0; e < b->size(); ++e) r.setValue(e, c);
  for (int s = 0; s < b->size(); ++s)
    for (int t = 0; t < b->size(); ++t)
      if (s != t && b->leq(s, t)) r.setRho(s, t, ChainMap::identity(c));
  return r;
}

// Indicator 1_s: k in degree 0 on str(s), identity restrictions.
inline Sheaf indicator(const BasePtr& b, FieldConfig f, int s) {
  Sheaf r(b, f);
  Complex k = unitComplex(f);
  for (int t : b->star(s)) r.setValue(t, k);
  for (int t : b->star(s))
    for (int u : b->star(s))
      if (t != u && b->leq(t, u)) r.setRho(t, u, ChainMap::identity(k));
  return r;
}

// Zero-extension of the constant sheaf from a down-set (open) subset.
inline Sheaf openConstant(const BasePtr& b, FieldConfig f, const std::vector<int>& open) {
  if (!b->poset().isDownSet(open)) throw std::invalid_argument("openConstant: not open");
  Sheaf r(b, f);
  Complex k = unitComplex(f);
  for (int t : open) r.setValue(t, k);
  for (int t : open)
    for (int u : open)
      if (t != u && b->leq(t, u)) r.setRho(t, u, ChainMap::identity(k));
  return r;
}

// Constant sheaf on a closed (up-set) subset, zero outside; restrictions are
// identities inside the subset.
inline Sheaf closedConstant(const BasePtr& b, FieldConfig f, const std::vector<int>& closed) {
  if (!b->poset().isUpSet(closed)) throw std::invalid_argument("closedConstant: not closed");
  Sheaf r(b, f);
  Complex k = unitComplex(f);
  for (int t : closed) r.setValue(t, k);
  for (int t : closed)
    for (int u : closed)
      if (t != u && b->leq(t, u)) r.setRho(t, u, ChainMap::identity(k));
  return r;
}

// Stalkwise tensor product.
inline Sheaf tensor(const Sheaf& a, const Sheaf& b) {
  if (!(*a.base() == *b.base())) throw std::invalid_argument("tensor: base mismatch");
  Sheaf r(a.base(), a.field());
  int n = a.base()->size();
  for (int e = 0; e < n; ++e) r.setValue(e, tensorComplex(a.value(e), b.value(e)));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (s != t && a.base()->leq(s, t)) r.setRho(s, t, tensorMap(a.rho(s, t), b.rho(s, t)));
  return r;
}

// The diagram of stalks over a down-set U, indexed by U^op (restrictions
// become the structure maps).
inline PosetDiagram stalkDiagramOp(const Sheaf& f, const std::vector<int>& u) {
  Poset sub = f.base()->poset().induced(u).opposite();
  std::vector<Complex> vals;
  for (int x : u) vals.push_back(f.value(x));
  PosetDiagram d(sub, vals);
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j)
      if (i != j && sub.leq(int(i), int(j)))
        // i <= j in U^op means u[j] <= u[i] in the base
        d.setMap(int(i), int(j), f.rho(u[j], u[i]));
  return d;
}

// Derived sections over an open (down-set) subset, as a holim.
inline Complex sectionsOpen(const Sheaf& f, const std::vector<int>& u) {
  if (!f.base()->poset().isDownSet(u)) throw std::invalid_argument("sectionsOpen: not open");
  if (u.empty()) return Complex(f.field());
  return holimOf(stalkDiagramOp(f, u));
}

inline Complex globalSections(const Sheaf& f) {
  std::vector<int> all(f.base()->size());
  for (int i = 0; i < f.base()->size(); ++i) all[i] = i;
  return sectionsOpen(f, all);
}

// Cover relations of the base poset (s < t with nothing strictly between).
inline std::vector<std::pair<int, int>> coveringPairs(const Poset& p) {
  std::vector<std::pair<int, int>> r;
  int n = p.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !p.leq(a, b)) continue;
      bool cover = true;
      for (int c = 0; c < n && cover; ++c)
        if (c != a && c != b && p.leq(a, c) && p.leq(c, b)) cover = false;
      if (cover) r.push_back({a, b});
    }
  return r;
}

// Decision procedure for quasi-isomorphism-equivalence of two sheaves on the
// same base without an explicit map: equal stalkwise cohomology dimensions
// and equal ranks of the maps induced on cohomology by every cover relation.
inline bool equivalentDims(const Sheaf& a, const Sheaf& b) {
  if (!(*a.base() == *b.base())) return false;
  int n = a.base()->size();
  std::vector<Cohomology> ha, hb;
  ha.reserve(n);
  hb.reserve(n);
  for (int e = 0; e < n; ++e) {
    ha.emplace_back(a.value(e));
    hb.emplace_back(b.value(e));
    if (ha[e].dims() != hb[e].dims()) return false;
  }
  for (auto& [s, t] : coveringPairs(a.base()->poset())) {
    ChainMap fa = a.rho(s, t), fb = b.rho(s, t);
    int lo = std::min(a.value(t).minDeg(), b.value(t).minDeg());
    int hi = std::max(a.value(t).maxDeg(), b.value(t).maxDeg());
    for (int d = lo; d <= hi; ++d)
      if (inducedOnH(fa, ha[t], ha[s], d).rank() != inducedOnH(fb, hb[t], hb[s], d).rank())
        return false;
  }
  return true;
}

inline std::map<int, int> stalkCohomologyDims(const Sheaf& f, int e) {
  return cohomologyDims(f.value(e));
}

}  // namespace shv

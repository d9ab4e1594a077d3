#pragma once
// Bounded cochain complexes over an exact field, chain maps, cones,
// hom/tensor complexes and cohomology with deterministic bases.
//
// Conventions (fixed artifact-wide, pinned by the oracle tests):
//   - differential degree +1; d^n : C^n -> C^{n+1} stored as a
//     dim(n+1) x dim(n) matrix acting on column vectors;
//   - C[k] places C^{n+k} in degree n (so k > 0 shifts toward negative
//     degrees) with d_{C[k]} = (-1)^k d_C;
//   - Hom(C,D)^n = prod_i Hom(C^i, D^{i+n}), (d f) = d_D f - (-1)^n f d_C;
//   - (C (x) D)^n = sum_i C^i (x) D^{n-i}, d(x(x)y) = dx(x)y + (-1)^i x(x)dy;
//   - cone(f: C->D)^n = C^{n+1} (+) D^n, d(c,x) = (-d c, f c + d x);
//     fib(f) = cone(f)[-1].

#include <map>
#include <stdexcept>
#include <vector>

#include "shv/matrix.hpp"

namespace shv {

class Complex {
 public:
  explicit Complex(FieldConfig f = FieldConfig{}) : fld_(f) {}

  FieldConfig field() const { return fld_; }

  void setDim(int n, int dim) {
    if (dim < 0) throw std::invalid_argument("Complex: negative dimension");
    if (dim == 0)
      dims_.erase(n);
    else
      dims_[n] = dim;
  }
  void setDiff(int n, const Matrix& m) {
    if (m.rows() != dim(n + 1) || m.cols() != dim(n))
      throw std::invalid_argument("Complex: differential shape mismatch");
    if (m.isZero())
      d_.erase(n);
    else
      d_[n] = m;
  }

  int dim(int n) const {
    auto it = dims_.find(n);
    return it == dims_.end() ? 0 : it->second;
  }
  Matrix diff(int n) const {
    auto it = d_.find(n);
    return it == d_.end() ? Matrix(fld_, dim(n + 1), dim(n)) : it->second;
  }

  int minDeg() const { return dims_.empty() ? 0 : dims_.begin()->first; }
  int maxDeg() const { return dims_.empty() ? 0 : dims_.rbegin()->first; }
  bool isZero() const { return dims_.empty(); }
  int totalDim() const {
    int t = 0;
    for (auto& [n, d] : dims_) t += d;
    return t;
  }

  void validate() const {
    for (auto& [n, m] : d_) {
      if (m.rows() != dim(n + 1) || m.cols() != dim(n))
        throw std::logic_error("Complex: differential shape");
      if (!(diff(n + 1) * m).isZero())
        throw std::logic_error("Complex: d.d != 0 between degrees " +
                               std::to_string(n) + "," + std::to_string(n + 1));
    }
  }

  Complex shift(int k) const {
    Complex r(fld_);
    for (auto& [n, dm] : dims_) r.setDim(n - k, dm);
    Scalar sgn(fld_, k % 2 == 0 ? 1 : -1);
    for (auto& [n, m] : d_) r.setDiff(n - k, m.scaled(sgn));
    return r;
  }

  bool operator==(const Complex& o) const {
    if (!(fld_ == o.fld_) || dims_ != o.dims_) return false;
    for (auto& [n, m] : d_)
      if (!(o.diff(n) == m)) return false;
    for (auto& [n, m] : o.d_)
      if (!(diff(n) == m)) return false;
    return true;
  }

  const std::map<int, int>& dims() const { return dims_; }

 private:
  FieldConfig fld_;
  std::map<int, int> dims_;
  std::map<int, Matrix> d_;
};

inline Complex unitComplex(FieldConfig f) {
  Complex c(f);
  c.setDim(0, 1);
  return c;
}

inline Complex directSum(const Complex& a, const Complex& b) {
  Complex r(a.field());
  int lo = std::min(a.minDeg(), b.minDeg()), hi = std::max(a.maxDeg(), b.maxDeg());
  for (int n = lo; n <= hi; ++n) r.setDim(n, a.dim(n) + b.dim(n));
  for (int n = lo; n <= hi; ++n) {
    Matrix m(a.field(), r.dim(n + 1), r.dim(n));
    m.paste(a.diff(n), 0, 0);
    m.paste(b.diff(n), a.dim(n + 1), a.dim(n));
    r.setDiff(n, m);
  }
  return r;
}

class ChainMap {
 public:
  ChainMap() = default;
  ChainMap(Complex src, Complex tgt) : src_(std::move(src)), tgt_(std::move(tgt)) {}

  static ChainMap zero(const Complex& src, const Complex& tgt) { return ChainMap(src, tgt); }
  static ChainMap identity(const Complex& c) {
    ChainMap f(c, c);
    for (auto& [n, d] : c.dims()) f.setComp(n, Matrix::identity(c.field(), d));
    return f;
  }

  const Complex& source() const { return src_; }
  const Complex& target() const { return tgt_; }

  void setComp(int n, const Matrix& m) {
    if (m.rows() != tgt_.dim(n) || m.cols() != src_.dim(n))
      throw std::invalid_argument("ChainMap: component shape mismatch");
    if (m.isZero())
      comp_.erase(n);
    else
      comp_[n] = m;
  }
  Matrix comp(int n) const {
    auto it = comp_.find(n);
    return it == comp_.end() ? Matrix(src_.field(), tgt_.dim(n), src_.dim(n)) : it->second;
  }

  void validate() const {
    src_.validate();
    tgt_.validate();
    int lo = std::min(src_.minDeg(), tgt_.minDeg());
    int hi = std::max(src_.maxDeg(), tgt_.maxDeg());
    for (int n = lo; n <= hi; ++n)
      if (!(comp(n + 1) * src_.diff(n) == tgt_.diff(n) * comp(n)))
        throw std::logic_error("ChainMap: does not commute with d at degree " +
                               std::to_string(n));
  }

  ChainMap compose(const ChainMap& inner) const {
    // *this after inner
    ChainMap r(inner.src_, tgt_);
    int lo = std::min(inner.src_.minDeg(), tgt_.minDeg());
    int hi = std::max(inner.src_.maxDeg(), tgt_.maxDeg());
    for (int n = lo; n <= hi; ++n) r.setComp(n, comp(n) * inner.comp(n));
    return r;
  }

  ChainMap shift(int k) const {
    ChainMap r(src_.shift(k), tgt_.shift(k));
    for (auto& [n, m] : comp_) r.setComp(n - k, m);
    return r;
  }

 private:
  Complex src_, tgt_;
  std::map<int, Matrix> comp_;
};

inline Complex cone(const ChainMap& f) {
  const Complex &c = f.source(), &d = f.target();
  FieldConfig fl = c.field();
  Complex r(fl);
  int lo = std::min(c.minDeg() - 1, d.minDeg()), hi = std::max(c.maxDeg() - 1, d.maxDeg());
  for (int n = lo; n <= hi; ++n) r.setDim(n, c.dim(n + 1) + d.dim(n));
  for (int n = lo; n <= hi; ++n) {
    Matrix m(fl, r.dim(n + 1), r.dim(n));
    m.paste(-c.diff(n + 1), 0, 0);
    m.paste(f.comp(n + 1), c.dim(n + 2), 0);
    m.paste(d.diff(n), c.dim(n + 2), c.dim(n + 1));
    r.setDiff(n, m);
  }
  return r;
}

inline Complex fib(const ChainMap& f) { return cone(f).shift(-1); }

// Inclusion of the target into the cone and projection cone -> C[1].
inline ChainMap coneInclusion(const ChainMap& f) {
  const Complex &c = f.source(), &d = f.target();
  Complex cn = cone(f);
  ChainMap inc(d, cn);
  for (auto& [n, dm] : d.dims()) {
    Matrix m(d.field(), cn.dim(n), dm);
    m.paste(Matrix::identity(d.field(), dm), c.dim(n + 1), 0);
    inc.setComp(n, m);
  }
  return inc;
}

// Hom(C,D): basis of Hom(C^i, D^{i+n}) is the row-major matrix-unit basis,
// blocks ordered by increasing i.
struct HomBlock {
  int i;        // source degree
  int offset;   // start of the block inside Hom^n
  int size;     // dim C^i * dim D^{i+n}
};

inline std::vector<HomBlock> homBlocks(const Complex& c, const Complex& d, int n) {
  std::vector<HomBlock> out;
  int off = 0;
  for (int i = c.minDeg(); i <= c.maxDeg(); ++i) {
    int sz = c.dim(i) * d.dim(i + n);
    if (sz > 0) out.push_back({i, off, sz});
    off += sz;
  }
  return out;
}

inline Complex homComplex(const Complex& c, const Complex& d) {
  FieldConfig fl = c.field();
  Complex r(fl);
  if (c.isZero() || d.isZero()) return r;
  int lo = d.minDeg() - c.maxDeg(), hi = d.maxDeg() - c.minDeg();
  for (int n = lo; n <= hi; ++n) {
    int t = 0;
    for (auto& b : homBlocks(c, d, n)) t += b.size;
    r.setDim(n, t);
  }
  for (int n = lo; n <= hi; ++n) {
    Matrix m(fl, r.dim(n + 1), r.dim(n));
    auto src = homBlocks(c, d, n), tgt = homBlocks(c, d, n + 1);
    Scalar sgn(fl, n % 2 == 0 ? 1 : -1);
    for (auto& sb : src) {
      // post-composition d_D : Hom(C^i, D^{i+n}) -> Hom(C^i, D^{i+n+1})
      for (auto& tb : tgt) {
        if (tb.i == sb.i) {
          Matrix blk = d.diff(sb.i + n).kron(Matrix::identity(fl, c.dim(sb.i)));
          for (int rr = 0; rr < blk.rows(); ++rr)
            for (int cc = 0; cc < blk.cols(); ++cc)
              if (!blk.at(rr, cc).isZero()) m.at(tb.offset + rr, sb.offset + cc) = blk.at(rr, cc);
        }
        // pre-composition with d_C : Hom(C^i, D^{i+n}) -> Hom(C^{i-1}, D^{i-1+n+1})
        if (tb.i == sb.i - 1) {
          Matrix blk = Matrix::identity(fl, d.dim(sb.i + n)).kron(c.diff(sb.i - 1).transpose())
                           .scaled(-sgn);
          for (int rr = 0; rr < blk.rows(); ++rr)
            for (int cc = 0; cc < blk.cols(); ++cc)
              if (!blk.at(rr, cc).isZero()) m.at(tb.offset + rr, sb.offset + cc) = blk.at(rr, cc);
        }
      }
    }
    r.setDiff(n, m);
  }
  return r;
}

inline Complex dualComplex(const Complex& c) { return homComplex(c, unitComplex(c.field())); }

// Tensor product; basis of C^i (x) D^{n-i} is row-major (cIdx * dimD + dIdx),
// blocks ordered by increasing i.
struct TensorBlock {
  int i;
  int offset;
  int size;
};

inline std::vector<TensorBlock> tensorBlocks(const Complex& c, const Complex& d, int n) {
  std::vector<TensorBlock> out;
  int off = 0;
  for (int i = c.minDeg(); i <= c.maxDeg(); ++i) {
    int sz = c.dim(i) * d.dim(n - i);
    if (sz > 0) out.push_back({i, off, sz});
    off += sz;
  }
  return out;
}

inline Complex tensorComplex(const Complex& c, const Complex& d) {
  FieldConfig fl = c.field();
  Complex r(fl);
  if (c.isZero() || d.isZero()) return r;
  int lo = c.minDeg() + d.minDeg(), hi = c.maxDeg() + d.maxDeg();
  for (int n = lo; n <= hi; ++n) {
    int t = 0;
    for (auto& b : tensorBlocks(c, d, n)) t += b.size;
    r.setDim(n, t);
  }
  for (int n = lo; n <= hi; ++n) {
    Matrix m(fl, r.dim(n + 1), r.dim(n));
    auto src = tensorBlocks(c, d, n), tgt = tensorBlocks(c, d, n + 1);
    for (auto& sb : src) {
      Scalar sgn(fl, sb.i % 2 == 0 ? 1 : -1);
      for (auto& tb : tgt) {
        Matrix blk;
        if (tb.i == sb.i + 1)
          blk = c.diff(sb.i).kron(Matrix::identity(fl, d.dim(n - sb.i)));
        else if (tb.i == sb.i)
          blk = Matrix::identity(fl, c.dim(sb.i)).kron(d.diff(n - sb.i)).scaled(sgn);
        else
          continue;
        for (int rr = 0; rr < blk.rows(); ++rr)
          for (int cc = 0; cc < blk.cols(); ++cc)
            if (!blk.at(rr, cc).isZero()) m.at(tb.offset + rr, sb.offset + cc) = blk.at(rr, cc);
      }
    }
    r.setDiff(n, m);
  }
  return r;
}

// Chain map on tensor products, componentwise f (x) g (no Koszul sign needed
// for degree-0 chain maps).
inline ChainMap tensorMap(const ChainMap& f, const ChainMap& g) {
  Complex src = tensorComplex(f.source(), g.source());
  Complex tgt = tensorComplex(f.target(), g.target());
  ChainMap r(src, tgt);
  FieldConfig fl = src.field();
  for (int n = src.minDeg(); n <= src.maxDeg(); ++n) {
    Matrix m(fl, tgt.dim(n), src.dim(n));
    auto sbs = tensorBlocks(f.source(), g.source(), n);
    auto tbs = tensorBlocks(f.target(), g.target(), n);
    for (auto& sb : sbs)
      for (auto& tb : tbs) {
        if (tb.i != sb.i) continue;
        Matrix blk = f.comp(sb.i).kron(g.comp(n - sb.i));
        for (int rr = 0; rr < blk.rows(); ++rr)
          for (int cc = 0; cc < blk.cols(); ++cc)
            if (!blk.at(rr, cc).isZero()) m.at(tb.offset + rr, sb.offset + cc) = blk.at(rr, cc);
      }
    r.setComp(n, m);
  }
  return r;
}

// Cohomology with deterministic bases, supporting induced maps on H.
class Cohomology {
 public:
  explicit Cohomology(const Complex& c) : c_(c) {
    for (int n = c.minDeg(); n <= c.maxDeg(); ++n) {
      Data d;
      d.im = imageCols(c.diff(n - 1));
      Matrix ker = c.diff(n).kernelBasis();
      // Select kernel columns extending the image to a basis of the cycles.
      Matrix comb(c.field(), c.dim(n), d.im.cols() + ker.cols());
      comb.paste(d.im, 0, 0);
      comb.paste(ker, 0, d.im.cols());
      Matrix tmp = comb;
      std::vector<int> piv = tmp.rref();
      std::vector<int> keep;
      for (int p : piv)
        if (p >= d.im.cols()) keep.push_back(p - d.im.cols());
      d.hb = Matrix(c.field(), c.dim(n), int(keep.size()));
      for (std::size_t k = 0; k < keep.size(); ++k)
        for (int i = 0; i < c.dim(n); ++i) d.hb.at(i, int(k)) = ker.at(i, keep[k]);
      if (d.im.cols() + d.hb.cols() > 0 || c.dim(n) > 0) data_[n] = d;
    }
  }

  int dim(int n) const {
    auto it = data_.find(n);
    return it == data_.end() ? 0 : it->second.hb.cols();
  }

  std::map<int, int> dims() const {
    std::map<int, int> r;
    for (auto& [n, d] : data_)
      if (d.hb.cols() > 0) r[n] = d.hb.cols();
    return r;
  }

  int totalDim() const {
    int t = 0;
    for (auto& [n, d] : data_) t += d.hb.cols();
    return t;
  }

  // Coordinates of a cycle (columns of z) in the chosen H-basis.
  Matrix coords(int n, const Matrix& z) const {
    auto it = data_.find(n);
    if (it == data_.end() || it->second.hb.cols() == 0)
      return Matrix(c_.field(), 0, z.cols());
    const Data& d = it->second;
    Matrix comb(c_.field(), c_.dim(n), d.im.cols() + d.hb.cols());
    comb.paste(d.im, 0, 0);
    comb.paste(d.hb, 0, d.im.cols());
    auto sol = comb.solve(z);
    if (!sol) throw std::logic_error("Cohomology: vector is not a cycle");
    return sol->block(d.im.cols(), 0, d.hb.cols(), z.cols());
  }

  Matrix basis(int n) const {
    auto it = data_.find(n);
    return it == data_.end() ? Matrix(c_.field(), c_.dim(n), 0) : it->second.hb;
  }

 private:
  static Matrix imageCols(const Matrix& m) {
    // Deterministic spanning set of the column space: pivot columns of m.
    Matrix tmp = m;
    std::vector<int> piv = tmp.rref();
    Matrix im(m.field(), m.rows(), int(piv.size()));
    for (std::size_t k = 0; k < piv.size(); ++k)
      for (int i = 0; i < m.rows(); ++i) im.at(i, int(k)) = m.at(i, piv[k]);
    return im;
  }

  struct Data {
    Matrix im, hb;
  };
  Complex c_;
  std::map<int, Data> data_;
};

inline std::map<int, int> cohomologyDims(const Complex& c) { return Cohomology(c).dims(); }

inline bool isAcyclic(const Complex& c) { return Cohomology(c).totalDim() == 0; }

inline bool isQuasiIso(const ChainMap& f) { return isAcyclic(cone(f)); }

// Induced map on cohomology in degree n, in the deterministic bases.
inline Matrix inducedOnH(const ChainMap& f, const Cohomology& hs, const Cohomology& ht, int n) {
  Matrix b = hs.basis(n);
  return ht.coords(n, f.comp(n) * b);
}

inline int rankOnH(const ChainMap& f, int n) {
  Cohomology hs(f.source()), ht(f.target());
  return inducedOnH(f, hs, ht, n).rank();
}

}  // namespace shv

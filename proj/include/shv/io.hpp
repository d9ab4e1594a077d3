#pragma once
// Text serialization for workspaces of named complexes, sheaves and stop
// configurations. The format is line oriented UTF-8 with a versioned header,
// exact fractions only, and a deterministic element order, so parse after
// serialize is the identity on bytes. Parse errors carry line and column.

#include <sstream>

#include "shv/wrap1d.hpp"

namespace shv {
namespace io {

inline constexpr int kFormatVersion = 1;

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int ln, int cl, const std::string& what)
      : std::runtime_error("line " + std::to_string(ln) + ", column " + std::to_string(cl) +
                           ": " + what),
        line(ln),
        col(cl) {}
};

// Named objects in insertion order. Sheaves remember the names of their base
// factors so the base is written once per workspace.
struct Workspace {
  std::vector<std::pair<std::string, std::string>> order;  // (kind, name)
  std::map<std::string, SimplicialComplex> complexes;
  std::map<std::string, std::vector<std::string>> sheafFactors;
  std::map<std::string, Sheaf> sheaves;
  std::map<std::string, StopConfig> stops;

  bool has(const std::string& name) const {
    return complexes.count(name) || sheaves.count(name) || stops.count(name);
  }

  BasePtr makeBase(const std::vector<std::string>& factors) const {
    BasePtr b;
    for (auto& f : factors) {
      auto it = complexes.find(f);
      if (it == complexes.end())
        throw std::invalid_argument("workspace: unknown complex '" + f + "'");
      BasePtr one = Base::simplicial(it->second);
      b = b ? Base::product(b, one) : one;
    }
    if (!b) throw std::invalid_argument("workspace: sheaf needs at least one base factor");
    return b;
  }

  void addComplex(const std::string& name, SimplicialComplex k) {
    if (has(name)) throw std::invalid_argument("workspace: duplicate name '" + name + "'");
    complexes.emplace(name, std::move(k));
    order.push_back({"complex", name});
  }
  void addSheaf(const std::string& name, std::vector<std::string> factors, Sheaf f) {
    if (has(name)) throw std::invalid_argument("workspace: duplicate name '" + name + "'");
    sheafFactors.emplace(name, std::move(factors));
    sheaves.emplace(name, std::move(f));
    order.push_back({"sheaf", name});
  }
  void addStops(const std::string& name, StopConfig cfg) {
    if (has(name)) throw std::invalid_argument("workspace: duplicate name '" + name + "'");
    stops.emplace(name, cfg);
    order.push_back({"stops", name});
  }
};

namespace detail {

inline std::string ratStr(const BigRat& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

inline void writeField(std::ostream& os, FieldConfig f) {
  if (f.p == 0)
    os << "field q\n";
  else
    os << "field fp " << f.p << "\n";
}

inline void writeMatrixLine(std::ostream& os, const Matrix& m) {
  os << m.rows() << " " << m.cols();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) os << " " << m.at(i, j).str();
  os << "\n";
}

inline void writeComplexBody(std::ostream& os, const SimplicialComplex& k) {
  for (int v = 0; v < k.vertexCount(); ++v) {
    os << "vertex " << k.vertexNames[v];
    if (!k.coords.empty()) os << " " << ratStr(k.coords[v]);
    os << "\n";
  }
  for (auto& s : k.simplices) {
    os << "simplex";
    for (int v : s) os << " " << v;
    os << "\n";
  }
}

inline void writeSheafBody(std::ostream& os, const Sheaf& f,
                           const std::vector<std::string>& factors) {
  writeField(os, f.field());
  os << "base";
  for (auto& name : factors) os << " " << name;
  os << "\n";
  const BasePtr& b = f.base();
  for (int e = 0; e < b->size(); ++e) {
    const Complex& c = f.value(e);
    if (c.isZero()) continue;
    os << "stalk " << b->name(e) << "\n";
    for (auto& [n, d] : c.dims()) os << "dim " << n << " " << d << "\n";
    for (int n = c.minDeg(); n <= c.maxDeg(); ++n) {
      Matrix m = c.diff(n);
      if (m.isZero()) continue;
      os << "diff " << n << " ";
      writeMatrixLine(os, m);
    }
  }
  for (int s = 0; s < b->size(); ++s)
    for (int t = 0; t < b->size(); ++t) {
      if (s == t || !b->leq(s, t)) continue;
      if (f.value(t).isZero()) continue;
      ChainMap r = f.rho(s, t);
      bool any = false;
      for (int n = f.value(t).minDeg(); n <= f.value(t).maxDeg() && !any; ++n)
        any = !r.comp(n).isZero();
      if (!any) continue;
      os << "rho " << b->name(s) << " " << b->name(t) << "\n";
      for (int n = f.value(t).minDeg(); n <= f.value(t).maxDeg(); ++n) {
        Matrix m = r.comp(n);
        if (m.isZero()) continue;
        os << "comp " << n << " ";
        writeMatrixLine(os, m);
      }
    }
}

inline void writeStopsBody(std::ostream& os, const StopConfig& cfg) {
  os << (cfg.circle ? "circle\n" : "interval\n");
  os << "marks " << cfg.marks << "\n";
  os << "halvings " << cfg.halvings << "\n";
  if (cfg.codirs.empty()) {
    os << "codirs full\n";
  } else {
    os << "codirs";
    for (auto& [plus, minus] : cfg.codirs) {
      std::string t;
      if (plus) t += "+";
      if (minus) t += "-";
      if (t.empty()) t = ".";
      os << " " << t;
    }
    os << "\n";
  }
  writeField(os, cfg.fld);
}

// Line-and-column-aware tokenizer over the whole document.
class Reader {
 public:
  explicit Reader(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines_.push_back(line);
  }

  bool nextLine() {
    while (ln_ < int(lines_.size())) {
      tokens_.clear();
      cols_.clear();
      const std::string& s = lines_[ln_++];
      std::size_t i = 0;
      while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') ++i;
        if (i >= s.size()) break;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ') ++j;
        tokens_.push_back(s.substr(i, j - i));
        cols_.push_back(int(i) + 1);
        i = j;
      }
      tok_ = 0;
      if (!tokens_.empty() && tokens_[0][0] != '#') return true;
    }
    return false;
  }

  int line() const { return ln_; }
  int col() const { return tok_ < tokens_.size() ? cols_[tok_] : endCol(); }
  bool atEnd() const { return tok_ >= tokens_.size(); }
  std::size_t remaining() const { return tokens_.size() - tok_; }

  std::string word(const char* what) {
    if (atEnd()) throw ParseError(ln_, endCol(), std::string("expected ") + what);
    return tokens_[tok_++];
  }

  std::string peek() const { return atEnd() ? "" : tokens_[tok_]; }

  long integer(const char* what) {
    int c = col();
    std::string w = word(what);
    try {
      std::size_t used = 0;
      long v = std::stol(w, &used);
      if (used != w.size()) throw std::invalid_argument(w);
      return v;
    } catch (const std::exception&) {
      throw ParseError(ln_, c, std::string("expected ") + what + ", got '" + w + "'");
    }
  }

  BigRat fraction(const char* what) {
    int c = col();
    std::string w = word(what);
    try {
      auto slash = w.find('/');
      if (slash == std::string::npos) return BigRat(BigInt(w));
      return BigRat(BigInt(w.substr(0, slash)), BigInt(w.substr(slash + 1)));
    } catch (const std::exception&) {
      throw ParseError(ln_, c, std::string("expected ") + what + ", got '" + w + "'");
    }
  }

  void expectEnd() {
    if (!atEnd()) throw ParseError(ln_, col(), "unexpected trailing token '" + peek() + "'");
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(ln_, col(), what); }

 private:
  int endCol() const {
    if (ln_ == 0 || ln_ > int(lines_.size())) return 1;
    return int(lines_[ln_ - 1].size()) + 1;
  }
  std::vector<std::string> lines_;
  std::vector<std::string> tokens_;
  std::vector<int> cols_;
  std::size_t tok_ = 0;
  int ln_ = 0;
};

inline FieldConfig readField(Reader& r) {
  std::string kind = r.word("field kind");
  if (kind == "q") {
    r.expectEnd();
    return rationals();
  }
  if (kind == "fp") {
    int c = r.col();
    long p = r.integer("prime");
    r.expectEnd();
    try {
      return primeField(std::uint32_t(p));
    } catch (const std::invalid_argument& e) {
      throw ParseError(r.line(), c, e.what());
    }
  }
  r.fail("unknown field kind '" + kind + "'");
}

inline Matrix readMatrix(Reader& r, FieldConfig fl) {
  long rows = r.integer("row count"), cols = r.integer("column count");
  if (rows < 0 || cols < 0) r.fail("negative matrix shape");
  Matrix m(fl, int(rows), int(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = Scalar(fl, r.fraction("matrix entry"));
  r.expectEnd();
  return m;
}

}  // namespace detail

inline std::string serialize(const Workspace& ws) {
  std::ostringstream os;
  os << "shv " << kFormatVersion << " workspace\n";
  for (auto& [kind, name] : ws.order) {
    os << "begin " << kind << " " << name << "\n";
    if (kind == "complex")
      detail::writeComplexBody(os, ws.complexes.at(name));
    else if (kind == "sheaf")
      detail::writeSheafBody(os, ws.sheaves.at(name), ws.sheafFactors.at(name));
    else
      detail::writeStopsBody(os, ws.stops.at(name));
    os << "end\n";
  }
  return os.str();
}

namespace detail {

inline SimplicialComplex readComplex(Reader& r) {
  SimplicialComplex k;
  bool sawSimplex = false;
  while (true) {
    if (!r.nextLine()) r.fail("unterminated complex (missing 'end')");
    std::string key = r.word("complex line");
    if (key == "end") {
      r.expectEnd();
      break;
    }
    if (key == "vertex") {
      if (sawSimplex) r.fail("vertex lines must precede simplex lines");
      k.vertexNames.push_back(r.word("vertex name"));
      if (!r.atEnd()) {
        k.coords.push_back(r.fraction("vertex coordinate"));
        if (int(k.coords.size()) != int(k.vertexNames.size()))
          r.fail("either every vertex has a coordinate or none does");
      } else if (!k.coords.empty()) {
        r.fail("either every vertex has a coordinate or none does");
      }
      r.expectEnd();
    } else if (key == "simplex") {
      sawSimplex = true;
      std::vector<int> verts;
      while (!r.atEnd()) {
        int c = r.col();
        long v = r.integer("vertex index");
        if (v < 0 || v >= k.vertexCount())
          throw ParseError(r.line(), c, "vertex index out of range");
        verts.push_back(int(v));
      }
      if (verts.empty()) r.fail("empty simplex");
      k.simplices.push_back(verts);
    } else {
      r.fail("unknown complex line '" + key + "'");
    }
  }
  try {
    k.validate();
  } catch (const std::logic_error& e) {
    throw ParseError(r.line(), 1, e.what());
  }
  return k;
}

inline void readSheaf(Reader& r, Workspace& ws, const std::string& name) {
  if (!r.nextLine()) r.fail("unterminated sheaf");
  if (r.word("field line") != "field") r.fail("sheaf must start with its field");
  FieldConfig fl = readField(r);
  if (!r.nextLine()) r.fail("unterminated sheaf");
  if (r.word("base line") != "base") r.fail("sheaf field must be followed by its base");
  std::vector<std::string> factors;
  while (!r.atEnd()) factors.push_back(r.word("base factor"));
  BasePtr b;
  try {
    b = ws.makeBase(factors);
  } catch (const std::invalid_argument& e) {
    throw ParseError(r.line(), 1, e.what());
  }
  Sheaf f(b, fl);
  std::map<std::string, int> elemByName;
  for (int e = 0; e < b->size(); ++e) elemByName[b->name(e)] = e;
  auto stratum = [&](Reader& rd) {
    int c = rd.col();
    std::string nm = rd.word("stratum name");
    auto it = elemByName.find(nm);
    if (it == elemByName.end()) throw ParseError(rd.line(), c, "unknown stratum '" + nm + "'");
    return it->second;
  };
  int curStalk = -1, rhoS = -1, rhoT = -1;
  Complex cur(fl);
  std::map<std::pair<int, int>, ChainMap> rhos;
  auto flushStalk = [&] {
    if (curStalk >= 0) {
      try {
        cur.validate();
      } catch (const std::logic_error& e) {
        throw ParseError(r.line(), 1, "stalk " + std::to_string(curStalk) + ": " + e.what());
      }
      f.setValue(curStalk, cur);
      curStalk = -1;
    }
  };
  while (true) {
    if (!r.nextLine()) r.fail("unterminated sheaf (missing 'end')");
    std::string key = r.word("sheaf line");
    if (key == "end") {
      r.expectEnd();
      flushStalk();
      break;
    }
    if (key == "stalk") {
      flushStalk();
      rhoS = rhoT = -1;
      int e = stratum(r);
      r.expectEnd();
      curStalk = e;
      cur = Complex(fl);
    } else if (key == "dim") {
      if (curStalk < 0) r.fail("dim line outside a stalk");
      long n = r.integer("degree");
      int c = r.col();
      long d = r.integer("dimension");
      if (d <= 0) throw ParseError(r.line(), c, "dimension must be positive");
      r.expectEnd();
      cur.setDim(int(n), int(d));
    } else if (key == "diff") {
      if (curStalk < 0) r.fail("diff line outside a stalk");
      long n = r.integer("degree");
      int c = r.col();
      Matrix m = readMatrix(r, fl);
      try {
        cur.setDiff(int(n), m);
      } catch (const std::invalid_argument& e) {
        throw ParseError(r.line(), c, e.what());
      }
    } else if (key == "rho") {
      flushStalk();
      int c = r.col();
      int s = stratum(r), t = stratum(r);
      r.expectEnd();
      if (!b->leq(s, t))
        throw ParseError(r.line(), c, "rho needs " + b->name(s) + " <= " + b->name(t));
      rhoS = s;
      rhoT = t;
      rhos.emplace(std::make_pair(rhoS, rhoT), ChainMap(f.value(rhoT), f.value(rhoS)));
    } else if (key == "comp") {
      if (rhoS < 0) r.fail("comp line outside a rho block");
      long n = r.integer("degree");
      int c = r.col();
      Matrix m = readMatrix(r, fl);
      ChainMap& cm = rhos.at({rhoS, rhoT});
      if (m.rows() != f.value(rhoS).dim(int(n)) || m.cols() != f.value(rhoT).dim(int(n)))
        throw ParseError(r.line(), c, "restriction component shape mismatch in degree " +
                                          std::to_string(n));
      cm.setComp(int(n), m);
    } else {
      r.fail("unknown sheaf line '" + key + "'");
    }
  }
  for (auto& [st, cm] : rhos) f.setRho(st.first, st.second, cm);
  try {
    f.validate();
  } catch (const std::logic_error& e) {
    throw ParseError(r.line(), 1, e.what());
  }
  ws.addSheaf(name, factors, std::move(f));
}

inline StopConfig readStops(Reader& r) {
  StopConfig cfg{true, 1, 0, {}, rationals()};
  if (!r.nextLine()) r.fail("unterminated stop configuration");
  std::string shape = r.word("shape");
  if (shape == "circle")
    cfg.circle = true;
  else if (shape == "interval")
    cfg.circle = false;
  else
    r.fail("expected 'circle' or 'interval'");
  r.expectEnd();
  bool sawField = false;
  while (true) {
    if (!r.nextLine()) r.fail("unterminated stop configuration (missing 'end')");
    std::string key = r.word("stop configuration line");
    if (key == "end") {
      r.expectEnd();
      break;
    }
    if (key == "marks") {
      cfg.marks = int(r.integer("mark count"));
      r.expectEnd();
    } else if (key == "halvings") {
      cfg.halvings = int(r.integer("halving count"));
      r.expectEnd();
    } else if (key == "codirs") {
      std::string first = r.word("codirection");
      if (first == "full") {
        r.expectEnd();
        cfg.codirs.clear();
      } else {
        std::vector<std::string> toks = {first};
        while (!r.atEnd()) toks.push_back(r.word("codirection"));
        cfg.codirs.clear();
        for (auto& t : toks) {
          if (t == "+")
            cfg.codirs.push_back({true, false});
          else if (t == "-")
            cfg.codirs.push_back({false, true});
          else if (t == "+-")
            cfg.codirs.push_back({true, true});
          else if (t == ".")
            cfg.codirs.push_back({false, false});
          else
            r.fail("bad codirection token '" + t + "'");
        }
      }
    } else if (key == "field") {
      cfg.fld = readField(r);
      sawField = true;
    } else {
      r.fail("unknown stop configuration line '" + key + "'");
    }
  }
  if (!sawField) r.fail("stop configuration is missing its field");
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(r.line(), 1, e.what());
  }
  return cfg;
}

}  // namespace detail

inline Workspace parse(const std::string& text) {
  detail::Reader r(text);
  if (!r.nextLine()) r.fail("empty document");
  if (r.word("header") != "shv") r.fail("missing 'shv' header");
  long version = r.integer("format version");
  if (version != kFormatVersion)
    r.fail("unsupported format version " + std::to_string(version));
  if (r.word("document kind") != "workspace") r.fail("expected a workspace document");
  r.expectEnd();
  Workspace ws;
  while (r.nextLine()) {
    if (r.word("top-level line") != "begin") r.fail("expected a 'begin' line");
    std::string kind = r.word("object kind");
    std::string name = r.word("object name");
    r.expectEnd();
    if (ws.has(name)) r.fail("duplicate name '" + name + "'");
    if (kind == "complex")
      ws.addComplex(name, detail::readComplex(r));
    else if (kind == "sheaf")
      detail::readSheaf(r, ws, name);
    else if (kind == "stops")
      ws.addStops(name, detail::readStops(r));
    else
      r.fail("unknown object kind '" + kind + "'");
  }
  return ws;
}

}  // namespace io
}  // namespace shv

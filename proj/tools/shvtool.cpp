// Command line driver over the workspace format. All verbs buffer their
// output and print it only on success, so a failed run never leaves a
// partial table behind.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 parse error (input file
// or command line), 3 precondition violation, 4 budget exceeded.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "shv/io.hpp"

using namespace shv;

namespace {

struct CheckRecord {
  std::string name, expected, got;
  bool pass;
};

struct Session {
  io::Workspace ws;
  std::string fixtureText;
  bool haveFixture = false;
  FieldConfig fld = rationals();
  int budget = 4096;
  std::ostringstream out;
  std::vector<CheckRecord> checks;

  void record(const std::string& name, const std::string& expected, const std::string& got) {
    checks.push_back({name, expected, got, expected == got});
  }

  const Sheaf& sheaf(const std::string& name) const {
    auto it = ws.sheaves.find(name);
    if (it == ws.sheaves.end()) throw std::invalid_argument("no sheaf named '" + name + "'");
    return it->second;
  }
  const SimplicialComplex& complex(const std::string& name) const {
    auto it = ws.complexes.find(name);
    if (it == ws.complexes.end()) throw std::invalid_argument("no complex named '" + name + "'");
    return it->second;
  }
  const StopConfig& stopsCfg(const std::string& name) const {
    auto it = ws.stops.find(name);
    if (it == ws.stops.end())
      throw std::invalid_argument("no stop configuration named '" + name + "'");
    return it->second;
  }
};

std::string dimsStr(const std::map<int, int>& t) {
  if (t.empty()) return "-";
  std::string s;
  for (auto& [d, k] : t) {
    if (!s.empty()) s += " ";
    s += std::to_string(d) + ":" + std::to_string(k);
  }
  return s;
}

void printStalkTable(Session& s, const Sheaf& f) {
  const BasePtr& b = f.base();
  for (int e = 0; e < b->size(); ++e) {
    auto dims = stalkCohomologyDims(f, e);
    if (dims.empty()) continue;
    s.out << "stalk " << b->name(e) << " " << dimsStr(dims) << "\n";
  }
}

FieldConfig parseFieldSpec(const std::string& spec) {
  if (spec == "q") return rationals();
  if (spec.rfind("fp:", 0) == 0) return primeField(std::uint32_t(std::stol(spec.substr(3))));
  throw std::invalid_argument("bad field spec '" + spec + "' (want q or fp:<p>)");
}

int stratumIndex(const BasePtr& b, const std::string& name) {
  for (int e = 0; e < b->size(); ++e)
    if (b->name(e) == name) return e;
  throw std::invalid_argument("no stratum named '" + name + "'");
}

// Re-index a sheaf onto the stratification's own base. The poset elements
// must match one for one; validation catches a mismatched order.
Sheaf rebase(const Sheaf& f, const BasePtr& b) {
  if (!(*f.base() == *b))
    throw std::invalid_argument("sheaf does not live on the stop grid (want a " +
                                std::to_string(b->factor(0).vertexCount()) +
                                "-vertex grid complex)");
  Sheaf g(b, f.field());
  for (int e = 0; e < b->size(); ++e)
    if (!f.value(e).isZero()) g.setValue(e, f.value(e));
  for (int s = 0; s < b->size(); ++s)
    for (int t = 0; t < b->size(); ++t) {
      if (s == t || !b->leq(s, t) || f.value(t).isZero()) continue;
      g.setRho(s, t, f.rho(s, t));
    }
  g.validate();
  return g;
}

void requireConvolvable(const Sheaf& k, const Sheaf& f) {
  int s = f.base()->factorCount(), total = k.base()->factorCount();
  if (total <= s) throw std::invalid_argument("kernel needs more base factors than its argument");
  std::vector<int> srcIdx;
  for (int i = 0; i < s; ++i) srcIdx.push_back(i);
  if (!(*subBase(k.base(), srcIdx) == *f.base()))
    throw std::invalid_argument("kernel source factors do not match the argument's base");
  if (!(k.field() == f.field())) throw std::invalid_argument("field mismatch");
}

std::vector<std::string> sheafNamesOn(const io::Workspace& ws, const Sheaf& f) {
  std::vector<std::string> r;
  for (auto& [kind, name] : ws.order)
    if (kind == "sheaf" && *ws.sheaves.at(name).base() == *f.base() &&
        ws.sheaves.at(name).field() == f.field())
      r.push_back(name);
  return r;
}

void runSabloffSweep(Session& s, const std::string& stopsName, const WrapData& w,
                     const std::vector<std::pair<std::string, Sheaf>>& gens) {
  for (auto& [fn, f] : gens)
    for (auto& [gn, g] : gens) {
      SabloffSerreReport r = sabloffSerreCheck(w, f, g);
      s.record("sabloff." + stopsName + "." + fn + "." + gn, dimsStr(r.homTPlus),
               r.equal() ? dimsStr(r.homTPlus) : "tables differ");
      if (!r.equal()) s.out << "sabloff " << fn << " " << gn << ":\n" << r.text();
    }
}

void runVerdierCompare(Session& s, const std::string& stopsName, const WrapData& w,
                       const std::vector<std::pair<std::string, Sheaf>>& gens) {
  for (auto& [fn, f] : gens) {
    VerdierCompareReport r = verdierStandardCompare(w, f);
    s.record("verdier-standard.sd." + stopsName + "." + fn, "equivalent",
             r.sdMatches ? "equivalent" : "different");
    s.record("verdier-standard.vd." + stopsName + "." + fn, "equivalent",
             r.vdMatches ? "equivalent" : "different");
  }
}

std::vector<std::pair<std::string, Sheaf>> namedGenerators(const Stratification& st) {
  std::vector<std::pair<std::string, Sheaf>> r;
  auto gens = stopGenerators(st);
  for (std::size_t i = 0; i < gens.size(); ++i)
    r.push_back({"gen" + std::to_string(i), gens[i]});
  return r;
}

void verifyAll(Session& s) {
  if (!s.haveFixture) throw std::invalid_argument("verify-all needs --fixture");
  s.record("roundtrip", "byte-exact", io::serialize(s.ws) == s.fixtureText ? "byte-exact"
                                                                           : "different");
  for (auto& [kind, name] : s.ws.order) {
    if (kind == "complex") {
      const SimplicialComplex& k = s.ws.complexes.at(name);
      if (k.size() == 0) continue;
      DualityData d = dualityData(k, s.fld);
      s.record("triangles." + name, "identity", checkTriangles(d) ? "identity" : "broken");
    } else if (kind == "sheaf") {
      const Sheaf& f = s.ws.sheaves.at(name);
      Sheaf vd2 = minimizeSheaf(verdierDual(minimizeSheaf(verdierDual(f))));
      s.record("biduality." + name, "equivalent",
               equivalentDims(vd2, f) ? "equivalent" : "different");
      IndCx sd = standardDual(f);
      for (auto& gn : sheafNamesOn(s.ws, f)) {
        const Sheaf& g = s.ws.sheaves.at(gn);
        s.record("pairing." + name + "." + gn, dimsStr(cohomologyDims(homIndSheaf(sd, g))),
                 dimsStr(cohomologyDims(gammaC(tensor(f, g)))));
      }
    } else {
      const StopConfig& cfg = s.ws.stops.at(name);
      if (!cfg.codirs.empty()) {
        s.out << "stops " << name << ": partial stops, wrap checks skipped\n";
        continue;
      }
      WrapData w = wrapData(cfg);
      auto gens = namedGenerators(w.strat);
      runSabloffSweep(s, name, w, gens);
      runVerdierCompare(s, name, w, gens);
    }
  }
}

int finish(Session& s, const std::string& reportPath) {
  bool allPass = true;
  std::ostringstream rep;
  rep << "shv " << io::kFormatVersion << " report\n";
  for (auto& c : s.checks) {
    allPass = allPass && c.pass;
    rep << "check " << c.name << "\texpected " << c.expected << "\tgot " << c.got
        << "\ttolerance exact\t" << (c.pass ? "pass" : "fail") << "\n";
  }
  if (!reportPath.empty()) {
    std::ofstream f(reportPath, std::ios::binary);
    if (!f.good()) throw std::invalid_argument("cannot write report to '" + reportPath + "'");
    f << rep.str();
  }
  std::cout << s.out.str();
  if (!s.checks.empty()) {
    int failed = 0;
    for (auto& c : s.checks)
      if (!c.pass) {
        ++failed;
        std::cout << "FAIL " << c.name << ": expected " << c.expected << ", got " << c.got
                  << "\n";
      }
    std::cout << "checks: " << s.checks.size() - failed << " passed, " << failed << " failed\n";
  }
  return allPass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact constructible sheaf calculator"};
  app.require_subcommand(1);

  std::string fixture, fieldSpec = "q", reportPath;
  int budget = 4096, jobs = 1;
  app.add_option("--fixture", fixture, "workspace file to load");
  app.add_option("--field", fieldSpec, "field for verbs that build objects: q or fp:<p>");
  app.add_option("--budget", budget, "size budget (strata, link vertices or steps)");
  app.add_option("--report", reportPath, "write the machine-readable check report here");
  app.add_option("--jobs", jobs, "worker count (checks run in a fixed order regardless)")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> a;  // positional arguments per verb
  auto verb = [&](const char* name, const char* desc, int nargs) {
    CLI::App* c = app.add_subcommand(name, desc);
    c->fallthrough();
    if (nargs != 0) c->add_option("args", a, "arguments")->expected(nargs);
    return c;
  };
  auto* cCoh = verb("cohomology", "stalkwise cohomology table of a sheaf", 1);
  auto* cSec = verb("sections", "global section cohomology of a sheaf", 1);
  auto* cGc = verb("gammac", "compactly supported cohomology of a sheaf", 1);
  auto* cHom = verb("hom", "graded dimensions of Hom(F, G)", 2);
  auto* cShom = verb("shom", "stalk table of sHom(F, G)", 2);
  auto* cTen = verb("tensor", "stalk table of F (x) G (same base)", 2);
  auto* cBox = verb("boxtimes", "stalk table of F boxtimes G (product base)", 2);
  auto* cConv = verb("convolve", "stalk table of K convolved with F", 2);
  auto* cHk = verb("homkernel", "right adjoint kernel of Hom(G -, H): G H n1 n2 n3", 5);
  auto* cDual = verb("dual", "dual table: {naive|verdier|standard} F", 2);
  auto* cOm = verb("omega", "dualizing complex stalk table of a complex", 1);
  auto* cMu = verb("microstalk", "microstalk dims: F <stratum> <signs like +-+>", 3);
  auto* cSs = verb("ss", "singular support table of a sheaf", 1);
  auto* cRes = verb("resolve", "indicator resolution generators of a sheaf", 1);
  auto* cLoc = verb("localize", "localize a sheaf to a stop subcategory: S F", 2);
  auto* cIdk = verb("idkernel", "identity kernel stalk table of a complex", 1);
  auto* cTri = verb("check-triangles", "duality triangle identities of a complex", 1);
  auto* cFm = verb("fm-reconstruct", "kernel round trip through its functor table", 1);
  auto* cWrap = verb("wrap", "wrap once: {+|-} S F", 3);
  auto* cSab = verb("sabloff", "four-table comparison: S [F G]", -1);
  auto* cVc = verb("verdier-compare", "standard-vs-Verdier duals: S [F]", -1);
  verb("verify-all", "run every bundled check on the fixture", 0);
  cSab->get_option("args")->expected(1, 3);
  cVc->get_option("args")->expected(1, 2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    CLI::App dummy;
    dummy.exit(e);
    return 2;
  }

  Session s;
  try {
    s.fld = parseFieldSpec(fieldSpec);
    s.budget = budget;
    if (!fixture.empty()) {
      std::ifstream in(fixture, std::ios::binary);
      if (!in.good()) throw std::invalid_argument("cannot open fixture '" + fixture + "'");
      std::ostringstream os;
      os << in.rdbuf();
      s.fixtureText = os.str();
      s.ws = io::parse(s.fixtureText);
      s.haveFixture = true;
    }

    CLI::App* sub = app.get_subcommands().front();
    if (sub == cCoh) {
      printStalkTable(s, s.sheaf(a[0]));
    } else if (sub == cSec) {
      s.out << "dims " << dimsStr(cohomologyDims(globalSections(s.sheaf(a[0])))) << "\n";
    } else if (sub == cGc) {
      s.out << "dims " << dimsStr(cohomologyDims(gammaC(s.sheaf(a[0])))) << "\n";
    } else if (sub == cHom) {
      s.out << "dims " << dimsStr(cohomologyDims(derivedHom(s.sheaf(a[0]), s.sheaf(a[1]))))
            << "\n";
    } else if (sub == cShom) {
      printStalkTable(s, sheafHom(s.sheaf(a[0]), s.sheaf(a[1])));
    } else if (sub == cTen) {
      printStalkTable(s, tensor(s.sheaf(a[0]), s.sheaf(a[1])));
    } else if (sub == cBox) {
      printStalkTable(s, boxtimes(s.sheaf(a[0]), s.sheaf(a[1])));
    } else if (sub == cConv) {
      const Sheaf& k = s.sheaf(a[0]);
      const Sheaf& f = s.sheaf(a[1]);
      requireConvolvable(k, f);
      printStalkTable(s, convolve(k, f));
    } else if (sub == cHk) {
      int n1 = std::stoi(a[2]), n2 = std::stoi(a[3]), n3 = std::stoi(a[4]);
      const Sheaf& g = s.sheaf(a[0]);
      const Sheaf& h = s.sheaf(a[1]);
      if (g.base()->factorCount() != n1 + n2 || h.base()->factorCount() != n1 + n3)
        throw std::invalid_argument("factor counts do not split the kernels' bases");
      printStalkTable(s, homKernelRightAdjoint(g, h, n1, n2, n3, s.budget));
    } else if (sub == cDual) {
      const Sheaf& f = s.sheaf(a[1]);
      if (a[0] == "naive")
        printStalkTable(s, minimizeSheaf(naiveDual(f)));
      else if (a[0] == "verdier")
        printStalkTable(s, minimizeSheaf(verdierDual(f)));
      else if (a[0] == "standard")
        printStalkTable(s, totalizeInd(standardDual(f)));
      else
        throw std::invalid_argument("dual kind must be naive, verdier or standard");
    } else if (sub == cOm) {
      printStalkTable(s, dualizing(Base::simplicial(s.complex(a[0])), s.fld));
    } else if (sub == cMu) {
      const Sheaf& f = s.sheaf(a[0]);
      int sigma = stratumIndex(f.base(), a[1]);
      auto link = linkVertices(f.base(), sigma);
      if (a[2].size() != link.size())
        throw std::invalid_argument("need one sign per link vertex (" +
                                    std::to_string(link.size()) + ")");
      SignAssignment xi{sigma, {}};
      for (std::size_t i = 0; i < link.size(); ++i) {
        if (a[2][i] != '+' && a[2][i] != '-')
          throw std::invalid_argument("signs must be + or -");
        xi.signs[link[i]] = a[2][i] == '+' ? 1 : -1;
      }
      for (auto& [fi, v] : link)
        s.out << "link " << fi << ":" << f.base()->factor(fi).vertexNames[v] << "\n";
      s.out << "dims " << dimsStr(cohomologyDims(microstalk(f, xi))) << "\n";
    } else if (sub == cSs) {
      const Sheaf& f = s.sheaf(a[0]);
      for (auto& e : singularSupport(f, s.budget)) {
        s.out << "at " << f.base()->name(e.sigma) << " signs ";
        for (int sg : e.signs) s.out << (sg > 0 ? "+" : "-");
        if (e.signs.empty()) s.out << ".";
        s.out << (e.zeroSection ? " stalk " : " micro ") << dimsStr(e.dims) << "\n";
      }
    } else if (sub == cRes) {
      const Sheaf& f = s.sheaf(a[0]);
      IndCx p = resolveSheaf(f).cx;
      for (int i = 0; i < p.size(); ++i)
        s.out << "gen " << p.deg(i) << " " << f.base()->name(p.label(i)) << "\n";
      s.out << "differential entries " << p.d.size() << "\n";
    } else if (sub == cLoc) {
      Stratification st = stratify(s.stopsCfg(a[0]));
      Sheaf f = rebase(s.sheaf(a[1]), st.base);
      LocalizeResult r = localizeToStops(st, f, s.budget);
      s.out << "steps " << r.steps << "\n";
      printStalkTable(s, r.loc);
    } else if (sub == cIdk) {
      printStalkTable(s, identityKernel(s.complex(a[0]), s.fld).sheaf);
    } else if (sub == cTri) {
      DualityData d = dualityData(s.complex(a[0]), s.fld);
      std::vector<std::string> log;
      bool ok = checkTriangles(d, &log);
      for (auto& line : log) s.out << line << "\n";
      s.record("triangles." + a[0], "identity", ok ? "identity" : "broken");
    } else if (sub == cFm) {
      const Sheaf& k = s.sheaf(a[0]);
      if (k.base()->factorCount() != 2)
        throw std::invalid_argument("fm-reconstruct needs a kernel on a two-factor base");
      BasePtr src = subBase(k.base(), {0}), tgt = subBase(k.base(), {1});
      IdentityKernelData id = identityKernel(k.base()->factor(0), k.field());
      Sheaf back = reconstructKernel(tableOfKernel(k, src, tgt), id.cx);
      s.record("fm." + a[0], "equivalent",
               kernelsEquivalent(k, back, src) ? "equivalent" : "different");
    } else if (sub == cWrap) {
      if (a[0] != "+" && a[0] != "-") throw std::invalid_argument("wrap sign must be + or -");
      WrapData w = wrapData(s.stopsCfg(a[1]));
      Sheaf f = rebase(s.sheaf(a[2]), w.strat.base);
      printStalkTable(s, wrapOnce(w, f, a[0] == "+" ? +1 : -1));
    } else if (sub == cSab) {
      WrapData w = wrapData(s.stopsCfg(a[0]));
      if (a.size() == 2) throw std::invalid_argument("sabloff takes a stops name or S F G");
      if (a.size() == 3) {
        Sheaf f = rebase(s.sheaf(a[1]), w.strat.base);
        Sheaf g = rebase(s.sheaf(a[2]), w.strat.base);
        SabloffSerreReport r = sabloffSerreCheck(w, f, g);
        s.out << r.text();
        s.record("sabloff." + a[0] + "." + a[1] + "." + a[2], dimsStr(r.homTPlus),
                 r.equal() ? dimsStr(r.homTPlus) : "tables differ");
      } else {
        runSabloffSweep(s, a[0], w, namedGenerators(w.strat));
      }
    } else if (sub == cVc) {
      WrapData w = wrapData(s.stopsCfg(a[0]));
      if (a.size() == 2) {
        std::vector<std::pair<std::string, Sheaf>> one = {
            {a[1], rebase(s.sheaf(a[1]), w.strat.base)}};
        runVerdierCompare(s, a[0], w, one);
      } else {
        runVerdierCompare(s, a[0], w, namedGenerators(w.strat));
      }
    } else {
      verifyAll(s);
    }
    return finish(s, reportPath);
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 3;
  } catch (const std::logic_error& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 3;
  } catch (const std::runtime_error& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 4;
  }
}

#include <catch2/catch_amalgamated.hpp>
#include <fstream>
#include <sstream>

#include "shv/io.hpp"

using namespace shv;

static FieldConfig fq = rationals();

static std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

TEST_CASE("empty workspace and empty complex round-trip") {
  io::Workspace ws;
  std::string text = io::serialize(ws);
  CHECK(text == "shv 1 workspace\n");
  CHECK(io::serialize(io::parse(text)) == text);

  io::Workspace ws2;
  ws2.addComplex("empty", SimplicialComplex{});
  std::string t2 = io::serialize(ws2);
  io::Workspace back = io::parse(t2);
  CHECK(back.complexes.at("empty").size() == 0);
  CHECK(io::serialize(back) == t2);
}

TEST_CASE("interval constant sheaf golden fixture round-trips byte-exact") {
  std::string text = slurp(std::string(FIXTURES_DIR) + "/interval_constant.shv");
  io::Workspace ws = io::parse(text);
  CHECK(io::serialize(ws) == text);
  const Sheaf& f = ws.sheaves.at("const");
  f.validate();
  CHECK(equivalentDims(f, constantSheaf(f.base(), unitComplex(fq))));
  CHECK(cohomologyDims(globalSections(f)) == std::map<int, int>{{0, 1}});
}

TEST_CASE("workspace round trip covers products, fields and stops") {
  io::Workspace ws;
  ws.addComplex("I", intervalComplex());
  ws.addComplex("C3", circleComplex(3));
  IdentityKernelData id = identityKernel(intervalComplex(), fq);
  ws.addSheaf("idk", {"I", "I"}, id.sheaf);
  FieldConfig f5 = primeField(5);
  ws.addSheaf("five", {"C3"}, constantSheaf(Base::simplicial(circleComplex(3)), unitComplex(f5)));
  ws.addStops("full1", StopConfig{true, 1, 0, {}, fq});
  ws.addStops("half", StopConfig{true, 2, 1, {{true, false}, {true, true}}, f5});
  ws.addStops("iv", StopConfig{false, 1, 0, {}, fq});

  std::string text = io::serialize(ws);
  io::Workspace back = io::parse(text);
  CHECK(io::serialize(back) == text);
  CHECK(back.sheaves.at("idk").base()->factorCount() == 2);
  CHECK(back.sheaves.at("five").field() == f5);
  CHECK(back.stops.at("half").codirs ==
        std::vector<std::pair<bool, bool>>{{true, false}, {true, true}});
  CHECK_FALSE(back.stops.at("iv").circle);
  // kernels address strata with the product naming
  CHECK(text.find("stalk (v0|v0)") != std::string::npos);
  // convolving the reparsed identity kernel still fixes generators
  BasePtr i = back.makeBase({"I"});
  Sheaf one = indicator(i, fq, 0);
  CHECK(equivalentDims(convolve(back.sheaves.at("idk"), one), one));
}

TEST_CASE("parse errors carry line and column") {
  try {
    io::parse("shv 1 workspace\nbegin complex K\nvertex v0\nsimplex x\nend\n");
    FAIL("expected a parse error");
  } catch (const io::ParseError& e) {
    CHECK(e.line == 4);
    CHECK(e.col == 9);
    CHECK(std::string(e.what()).find("vertex index") != std::string::npos);
  }
  CHECK_THROWS_AS(io::parse("shv 2 workspace\n"), io::ParseError);
  CHECK_THROWS_AS(io::parse(""), io::ParseError);
  CHECK_THROWS_AS(io::parse("shv 1 workspace\nbegin sheaf F\nfield q\nbase nowhere\nend\n"),
                  io::ParseError);
}

TEST_CASE("a corrupted differential is rejected with the degree pair named") {
  std::string text =
      "shv 1 workspace\n"
      "begin complex P\n"
      "vertex p\n"
      "simplex 0\n"
      "end\n"
      "begin sheaf F\n"
      "field q\n"
      "base P\n"
      "stalk p\n"
      "dim 0 1\n"
      "dim 1 1\n"
      "dim 2 1\n"
      "diff 0 1 1 1\n"
      "diff 1 1 1 1\n"
      "end\n";
  try {
    io::parse(text);
    FAIL("expected the d.d != 0 rejection");
  } catch (const io::ParseError& e) {
    std::string what = e.what();
    CHECK(what.find("d.d != 0") != std::string::npos);
    CHECK(what.find("0,1") != std::string::npos);
  }
}

TEST_CASE("a non-functorial restriction is rejected") {
  std::string text =
      "shv 1 workspace\n"
      "begin complex I\n"
      "vertex v0\n"
      "vertex v1\n"
      "simplex 0\n"
      "simplex 1\n"
      "simplex 0 1\n"
      "end\n"
      "begin sheaf F\n"
      "field q\n"
      "base I\n"
      "stalk v0\n"
      "dim 0 1\n"
      "stalk v1\n"
      "dim 0 1\n"
      "stalk v0.v1\n"
      "dim 0 2\n"
      "rho v0.v1 v0\n"
      "comp 0 2 1 1 0\n"
      "rho v0.v1 v1\n"
      "comp 0 2 1 1 0\n"
      "end\n";
  // fine so far: both edges restrict; now corrupt one rho so the sheaf check
  // in the degreewise shape still passes but validation data goes bad
  CHECK_NOTHROW(io::parse(text));
  std::string bad = text;
  auto at = bad.find("comp 0 2 1 1 0");
  bad.replace(at, 14, "comp 0 2 1 1 x");
  CHECK_THROWS_AS(io::parse(bad), io::ParseError);
}

TEST_CASE("duplicate names are rejected") {
  std::string text =
      "shv 1 workspace\n"
      "begin complex K\nvertex p\nsimplex 0\nend\n"
      "begin complex K\nvertex p\nsimplex 0\nend\n";
  CHECK_THROWS_AS(io::parse(text), io::ParseError);
}

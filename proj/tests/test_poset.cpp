#include <catch2/catch_amalgamated.hpp>

#include "shv/simplicial.hpp"

using namespace shv;

TEST_CASE("face poset of a point") {
  BasePtr b = Base::simplicial(pointComplex());
  CHECK(b->size() == 1);
  CHECK(b->leq(0, 0));
}

TEST_CASE("face poset of the interval") {
  BasePtr b = Base::simplicial(intervalComplex());
  REQUIRE(b->size() == 3);
  int v0 = 0, v1 = 1, e = 2;
  CHECK(b->factor(0).dim(e) == 1);
  // edge minimal, vertices maximal
  CHECK(b->leq(e, v0));
  CHECK(b->leq(e, v1));
  CHECK_FALSE(b->leq(v0, e));
  CHECK_FALSE(b->leq(v0, v1));
  CHECK(b->star(e) == std::vector<int>{e});
  std::vector<int> sv0 = b->star(v0);
  CHECK(std::find(sv0.begin(), sv0.end(), e) != sv0.end());
  b->poset().validate();
}

TEST_CASE("face poset of the hollow triangle") {
  BasePtr b = Base::simplicial(circleComplex(3));
  REQUIRE(b->size() == 6);
  // each vertex sits above exactly 2 incident edges
  for (int v = 0; v < 3; ++v) {
    int below = 0;
    for (int e = 3; e < 6; ++e)
      if (b->leq(e, v)) ++below;
    CHECK(below == 2);
  }
}

TEST_CASE("str inclusion iff leq") {
  BasePtr b = Base::simplicial(circleComplex(4));
  for (int s = 0; s < b->size(); ++s)
    for (int t = 0; t < b->size(); ++t) {
      auto ss = b->star(s), st = b->star(t);
      bool incl = std::includes(st.begin(), st.end(), ss.begin(), ss.end());
      CHECK(incl == b->leq(s, t));
    }
}

TEST_CASE("product posets") {
  BasePtr p = Base::simplicial(pointComplex());
  CHECK(Base::product(p, p)->size() == 1);
  BasePtr i = Base::simplicial(intervalComplex());
  BasePtr ii = Base::product(i, i);
  CHECK(ii->size() == 9);
  // componentwise order
  int ee = ii->elementIndex({2, 2}), v0v0 = ii->elementIndex({0, 0});
  CHECK(ii->leq(ee, v0v0));
  CHECK_FALSE(ii->leq(v0v0, ee));
  CHECK(ii->name(ee) == "(v0.v1|v0.v1)");
  ii->poset().validate();
}

TEST_CASE("subposet classification") {
  BasePtr b = Base::simplicial(intervalComplex());
  int v0 = 0, e = 2;
  CHECK(classifySubposet(b->poset(), b->star(v0)) == SubposetKind::Open);
  // closure strata of a vertex: the vertex alone (an up-set)
  CHECK(classifySubposet(b->poset(), {v0}) == SubposetKind::Closed);
  BasePtr c = Base::simplicial(circleComplex(3));
  // one edge and a non-incident vertex
  std::vector<int> mixed = {2, 3};  // vertex v2 and edge v0.v1
  CHECK_FALSE(c->leq(3, 2));
  CHECK(classifySubposet(c->poset(), mixed) == SubposetKind::Neither);
  // complement of a down-set is an up-set
  auto open = c->star(0);
  CHECK(c->poset().isUpSet(c->poset().complement(open)));
}

TEST_CASE("staircase of the interval") {
  ProductGeometry g = staircase(intervalComplex());
  CHECK(g.refined->size() == 11);
  // both 2-simplices map to the open product cell (edge,edge)
  int ee = g.prod->elementIndex({2, 2});
  int twoCount = 0;
  for (int s = 0; s < g.refined->size(); ++s)
    if (g.refined->factor(0).dim(s) == 2) {
      ++twoCount;
      CHECK(g.q(s) == ee);
    }
  CHECK(twoCount == 2);
  // diagonal: image of the interval, three simplices
  CHECK(int(g.diagonal.img.size()) == 3);
  std::set<int> d(g.diagonal.img.begin(), g.diagonal.img.end());
  CHECK(d.size() == 3);
}

TEST_CASE("staircase top-cell counts over product cells") {
  ProductGeometry g = staircase(circleComplex(3));
  // over each (edge,edge) cell: binomial(2,1) = 2 top simplices
  std::map<int, int> topCount;
  for (int s = 0; s < g.refined->size(); ++s)
    if (g.refined->factor(0).dim(s) == 2) topCount[g.q(s)]++;
  int cells = 0;
  for (auto& [cell, cnt] : topCount) {
    CHECK(cnt == 2);
    ++cells;
  }
  CHECK(cells == 9);
  // q surjective
  std::vector<bool> hit(g.prod->size(), false);
  for (int s = 0; s < g.refined->size(); ++s) hit[g.q(s)] = true;
  for (bool h : hit) CHECK(h);
}

TEST_CASE("poset map kinds validate") {
  BasePtr i = Base::simplicial(intervalComplex());
  BasePtr ii = Base::product(i, i);
  PosetMap pr = factorProjection(ii, {1}, i);
  pr.validate();
  PosetMap sw = swapMap(ii);
  sw.validate();
  for (int e = 0; e < ii->size(); ++e) CHECK(sw(sw(e)) == e);
  identityMap(i).validate();
}

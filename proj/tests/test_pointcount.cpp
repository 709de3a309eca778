#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "graphchern/pointcount.hpp"
#include "corpus.hpp"
#include "testutil.hpp"

using namespace graphchern;
using namespace testutil;

TEST_CASE("primality helper") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(is_prime(7919));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(-3));
  CHECK_FALSE(is_prime(4));
  CHECK_FALSE(is_prime(7917));  // 3 * 7 * 13 * 29
  CHECK(is_prime(2147483647));  // 2^31 - 1
}

TEST_CASE("pinned counts for small graphs") {
  auto r = count_affine(banana(2), 5);
  CHECK(r.p == 5);
  CHECK(r.n == 2);
  CHECK(r.zeros == 5);        // t1 + t2 = 0 has one solution per t1
  CHECK(r.complement == 20);
  CHECK(r.method == "shortcut");

  auto tri2 = count_affine(triangle(), 2);
  CHECK(tri2.zeros == 4);
  CHECK(tri2.complement == 4);

  auto tri3 = count_affine(triangle(), 3);
  CHECK(tri3.zeros == 9);
  CHECK(tri3.complement == 18);

  auto tri5 = count_affine(triangle(), 5);
  CHECK(tri5.zeros == 25);    // a linear form vanishes on a hyperplane: p^{n-1}
  CHECK(tri5.complement == 100);

  auto t1d = count_affine(tri_one_doubled(), 3);
  CHECK(t1d.zeros == 27);
  CHECK(t1d.complement == 54);

  auto g4 = count_affine(k4(), 3);
  CHECK(g4.zeros == 261);
  CHECK(g4.complement == 468);
}

TEST_CASE("forests short-circuit: the polynomial is 1 and never vanishes") {
  auto r = count_affine(path(2), 7);
  CHECK(r.zeros == 0);
  CHECK(r.complement == 49);
  CHECK(r.method == "forest");

  Multigraph lone;
  lone.add_vertex("a");
  auto r0 = count_affine(lone, 5);
  CHECK(r0.n == 0);
  CHECK(r0.zeros == 0);
  CHECK(r0.complement == 1);  // p^0
}

TEST_CASE("graphs with only loops and bridges fall back to full enumeration") {
  Multigraph lb;
  lb.add_edge("l", "a", "a");
  lb.add_edge("b", "a", "c");
  auto r = count_affine(lb, 5);
  CHECK(r.method == "full");
  CHECK(r.zeros == 5);  // psi = t_l vanishes on a hyperplane
  CHECK(r.complement == 20);
}

TEST_CASE("shortcut and full enumeration agree") {
  for (const auto& g : {triangle(), banana(3), tri_one_doubled(), tri_two_doubled(), k4()}) {
    for (long p : {2L, 3L, 5L}) {
      CountOptions full;
      full.force_full_enumeration = true;
      auto a = count_affine(g, p);
      auto b = count_affine(g, p, full);
      CHECK(a.zeros == b.zeros);
      CHECK(a.complement == b.complement);
      CHECK(b.method == "full");
    }
  }
}

TEST_CASE("the count does not depend on the pivot edge") {
  auto g4 = k4();
  for (const auto& e : g4.edges()) {
    CountOptions opt;
    opt.pivot_edge = e.id;
    auto r = count_affine(g4, 3, opt);
    CHECK(r.zeros == 261);
    CHECK(r.method == "shortcut");
  }
}

TEST_CASE("thread count does not change the result") {
  auto reference = count_affine(k4(), 5);
  for (unsigned threads : {1u, 3u}) {
    CountOptions opt;
    opt.threads = threads;
    opt.bypass_cache = true;
    auto r = count_affine(k4(), 5, opt);
    CHECK(r.zeros == reference.zeros);
    CHECK(r.complement == reference.complement);
  }
}

TEST_CASE("repeated queries are served consistently through the cache") {
  auto a = count_affine(tri_two_doubled(), 5);
  auto b = count_affine(tri_two_doubled(), 5);
  CHECK(a.zeros == b.zeros);
  CHECK(a.method == b.method);
  // isomorphic relabelings share the cached count
  Multigraph iso;
  iso.add_edge("x1", "p", "q");
  iso.add_edge("x2", "p", "q");
  iso.add_edge("x3", "q", "r");
  iso.add_edge("x4", "q", "r");
  iso.add_edge("x5", "r", "p");
  CHECK(count_affine(iso, 5).zeros == a.zeros);
  CountOptions bypass;
  bypass.bypass_cache = true;
  CHECK(count_affine(tri_two_doubled(), 5, bypass).zeros == a.zeros);
}

TEST_CASE("invalid moduli and oversized spaces are rejected") {
  CHECK_THROWS_AS((void)count_affine(triangle(), 6), domain_error);
  CHECK_THROWS_AS((void)count_affine(triangle(), 1), domain_error);
  CHECK_THROWS_AS((void)count_affine(triangle(), 2147483647L + 2L), domain_error);
  long big = 1L << 31;  // moduli must fit below 2^31 even when prime
  while (!is_prime(big)) ++big;
  CHECK_THROWS_AS((void)count_affine(triangle(), big), guard_error);

  CountOptions tiny;
  tiny.max_points = 8;
  CHECK_THROWS_AS((void)count_affine(triangle(), 3, tiny), guard_error);  // 3^2 = 9 > 8
  tiny.max_points = 9;
  CHECK_NOTHROW((void)count_affine(triangle(), 3, tiny));
  // full enumeration needs p^n, not just p^{n-1}
  tiny.force_full_enumeration = true;
  CHECK_THROWS_AS((void)count_affine(triangle(), 3, tiny), guard_error);

  CountOptions badpivot;
  badpivot.pivot_edge = "b";
  Multigraph lb;
  lb.add_edge("e1", "a", "c");
  lb.add_edge("e2", "a", "c");
  lb.add_edge("b", "c", "d");
  CHECK_THROWS_WITH_AS((void)count_affine(lb, 3, badpivot), doctest::Contains("pivot edge"),
                       domain_error);
  CountOptions nopivot;
  nopivot.pivot_edge = "zz";
  CHECK_THROWS_AS((void)count_affine(lb, 3, nopivot), lookup_error);
}

TEST_CASE("doubling identity for counts over several primes") {
  // triangle at one edge, p = 3: 54 = 1*18 + 2*9 + 3*6
  auto s = verify_doubling_star_detail(triangle(), "e1", 3);
  CHECK(s.holds);
  CHECK(s.whole.complement == 18);
  CHECK(s.deleted.complement == 9);
  CHECK(s.contracted.complement == 6);
  CHECK(s.doubled.complement == 54);

  auto g4 = k4();
  for (const auto& e : g4.edges())
    for (long p : {2L, 3L, 5L, 7L}) CHECK(verify_doubling_star(g4, e.id, p));

  for (long p : {2L, 3L, 5L}) CHECK(verify_doubling_star(tri_two_doubled(), "e5", p));
}

TEST_CASE("doubling identity rejects loops and bridges") {
  Multigraph lb;
  lb.add_edge("l", "a", "a");
  lb.add_edge("e1", "a", "c");
  lb.add_edge("e2", "a", "c");
  lb.add_edge("b", "c", "d");
  CHECK_THROWS_AS((void)verify_doubling_star(lb, "l", 3), domain_error);
  CHECK_THROWS_AS((void)verify_doubling_star(lb, "b", 3), domain_error);
  CHECK(verify_doubling_star(lb, "e1", 3));
}

TEST_CASE("triple recursion across consecutive multiplicities") {
  for (long p : {2L, 3L, 5L}) {
    for (long m : {1L, 2L}) {
      auto t = verify_triple_recursion_detail(banana(3), "e1", p, m);
      CHECK(t.holds);
      CHECK(t.m == m);
      REQUIRE(t.counts.size() == 4);
      // counts really are the four consecutive multiplicities
      for (int k = 0; k < 4; ++k)
        CHECK(t.counts[k].n == 3 + (m - 1) + k);
    }
  }
  for (long p : {2L, 3L}) CHECK(verify_triple_recursion(tri_one_doubled(), "e3", p, 1));
}

TEST_CASE("triple recursion rejects bad inputs") {
  CHECK_THROWS_WITH_AS((void)verify_triple_recursion(banana(3), "e1", 3, 0),
                       doctest::Contains("multiplicity"), domain_error);
  // triangle edges are not regular: deletion leaves a forest
  CHECK_THROWS_WITH_AS((void)verify_triple_recursion(triangle(), "e1", 3, 1),
                       doctest::Contains("regular"), domain_error);
  CHECK_THROWS_AS((void)verify_triple_recursion(banana(3), "e1", 4, 1), domain_error);
}

TEST_CASE("doubling identity sweep over the small connected corpus") {
  for (const auto& g : connected_corpus(4)) {
    for (const auto& e : g.edges()) {
      auto cls = g.classify_edge(e.id);
      if (cls == EdgeClass::Loop || cls == EdgeClass::Bridge) continue;
      CHECK(verify_doubling_star(g, e.id, 3));
    }
  }
}

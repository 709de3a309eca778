#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "graphchern/graphpoly.hpp"
#include "corpus.hpp"
#include "testutil.hpp"

using namespace graphchern;
using namespace testutil;

TEST_CASE("pinned polynomials for the standard small graphs") {
  CHECK(psi_enumerate(triangle()) == MultiPoly::parse("e1 + e2 + e3"));
  CHECK(psi_enumerate(banana(2)) == MultiPoly::parse("e1 + e2"));
  CHECK(psi_enumerate(banana(3)) == MultiPoly::parse("e1*e2 + e1*e3 + e2*e3"));

  auto k4psi = psi_enumerate(k4());
  CHECK(k4psi.term_count() == 16);
  CHECK(*k4psi.homogeneous_degree() == 3);
  CHECK(k4psi.has_integer_coefficients());

  auto t2d = psi_enumerate(tri_two_doubled());
  CHECK(t2d.term_count() == 8);
  CHECK(*t2d.homogeneous_degree() == 3);

  CHECK(psi_enumerate(tri_one_doubled()) ==
        MultiPoly::parse("e1*e2 + e1*e3 + e1*e4 + e2*e3 + e2*e4"));
}

TEST_CASE("degenerate shapes") {
  // forests have exactly one maximal spanning forest and empty complement
  CHECK(psi_enumerate(path(4)) == MultiPoly::constant(1));
  Multigraph lone;
  lone.add_vertex("a");
  CHECK(psi_enumerate(lone) == MultiPoly::constant(1));
  Multigraph empty;
  CHECK(psi_enumerate(empty) == MultiPoly::constant(1));

  // a loop contributes a bare factor t_e
  Multigraph loop;
  loop.add_edge("l", "a", "a");
  CHECK(psi_enumerate(loop) == MultiPoly::variable("l"));

  // disconnected graphs multiply
  Multigraph two;
  two.add_edge("e1", "a", "b");
  two.add_edge("e2", "a", "b");
  two.add_edge("f1", "x", "y");
  two.add_edge("f2", "x", "y");
  CHECK(psi_enumerate(two) == MultiPoly::parse("e1*f1 + e1*f2 + e2*f1 + e2*f2"));
}

TEST_CASE("variables follow edge insertion order and use edge ids") {
  auto p = psi_enumerate(triangle());
  CHECK(p.vars() == std::vector<std::string>{"e1", "e2", "e3"});
  CHECK(p.to_string() == "e1 + e2 + e3");
}

TEST_CASE("the three methods agree on every connected multigraph with <= 4 edges") {
  PsiCache cache;
  for (const auto& g : connected_corpus(4)) {
    auto a = psi_enumerate(g);
    auto b = psi_matrix_tree(g);
    auto c = psi_recursion(g, &cache);
    CHECK(a == b);
    CHECK(a == c);
  }
}

TEST_CASE("recursion agrees on the named examples") {
  PsiCache cache;
  for (const auto& g : {triangle(), k4(), tri_two_doubled(), k4_doubled(), wheel4()}) {
    CHECK(psi_recursion(g, &cache) == psi_enumerate(g));
    CHECK(psi_matrix_tree(g) == psi_enumerate(g));
  }
}

TEST_CASE("degree equals the first Betti number; polynomial is multilinear") {
  for (const auto& g : {triangle(), banana(4), k4(), k4_doubled(), tri_all_doubled(), wheel4()}) {
    auto p = psi_enumerate(g);
    REQUIRE(p.homogeneous_degree().has_value());
    CHECK(*p.homogeneous_degree() == g.betti1());
    for (const auto& [m, c] : p.terms()) {
      CHECK(c == 1);  // all coefficients are 1
      for (const auto& [var, exp] : m.powers) CHECK(exp == 1);
    }
  }
}

TEST_CASE("partial derivative equals the deletion polynomial") {
  // d/dt_e Psi_G = Psi_{G \ e} for non-bridge e (degree drops by one)
  auto g = k4();
  auto p = psi_enumerate(g);
  for (const auto& e : g.edges())
    CHECK(p.derivative(e.id) == psi_enumerate(g.delete_edge(e.id)));
}

TEST_CASE("deletion-contraction identity holds for regular and forest-deletion edges") {
  CHECK(check_delcon_identity(triangle(), "e2"));
  auto g4 = k4();
  for (const auto& e : g4.edges()) CHECK(check_delcon_identity(g4, e.id));
  CHECK(check_delcon_identity(tri_two_doubled(), "e5"));

  // loops and bridges are rejected, naming the one-term rule that applies
  Multigraph lb;
  lb.add_edge("l", "a", "a");
  lb.add_edge("b", "a", "c");
  CHECK_THROWS_WITH_AS(check_delcon_identity(lb, "l"),
                       doctest::Contains("loop"), domain_error);
  CHECK_THROWS_WITH_AS(check_delcon_identity(lb, "b"),
                       doctest::Contains("bridge"), domain_error);
}

TEST_CASE("spanning forest counts") {
  CHECK(spanning_forest_count(triangle()) == 3);
  CHECK(spanning_forest_count(k4()) == 16);
  CHECK(spanning_forest_count(path(5)) == 1);
  CHECK(spanning_forest_count(banana(4)) == 4);
  Multigraph two;
  two.add_edge("e1", "a", "b");
  two.add_edge("e2", "a", "b");
  two.add_edge("f1", "x", "y");
  two.add_edge("f2", "x", "y");
  CHECK(spanning_forest_count(two) == 4);
}

TEST_CASE("edge-count guards") {
  CHECK_THROWS_AS((void)psi_enumerate(banana(21)), guard_error);
  CHECK_THROWS_AS((void)psi_matrix_tree(banana(17)), guard_error);
  CHECK_NOTHROW((void)psi_matrix_tree(banana(16)));
}

TEST_CASE("cache is shared across isomorphic graphs") {
  PsiCache cache;
  CHECK(cache.size() == 0);
  (void)psi_recursion(triangle(), &cache);
  auto filled = cache.size();
  CHECK(filled > 0);

  Multigraph iso;  // relabeled triangle
  iso.add_edge("x", "p", "q");
  iso.add_edge("y", "q", "r");
  iso.add_edge("z", "r", "p");
  CHECK(psi_recursion(iso, &cache) == MultiPoly::parse("x + y + z"));
  // the isomorph was answered from the memo table
  CHECK(cache.size() == filled);

  CHECK(cache.find(triangle().canonical_key()).has_value());
  CHECK_FALSE(cache.find("no such key").has_value());
}

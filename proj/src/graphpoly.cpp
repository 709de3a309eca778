#include "graphchern/graphpoly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

namespace graphchern {

namespace {

constexpr std::size_t kEnumerateEdgeBound = 20;
constexpr std::size_t kMatrixTreeEdgeBound = 16;

std::vector<std::string> edge_var_order(const Multigraph& g) {
  std::vector<std::string> order;
  order.reserve(g.edge_count());
  for (const auto& e : g.edges()) order.push_back(e.id);
  return order;
}

// visits every maximal spanning forest as a sorted list of edge indices
template <typename Fn>
void for_each_spanning_forest(const Multigraph& g, Fn&& fn) {
  const auto& edges = g.edges();
  const std::size_t m = edges.size();
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> eu(m), ev(m);
  {
    std::map<std::string, std::size_t> ix;
    for (std::size_t i = 0; i < n; ++i) ix[g.vertices()[i]] = i;
    for (std::size_t i = 0; i < m; ++i) {
      eu[i] = ix[edges[i].u];
      ev[i] = ix[edges[i].v];
    }
  }
  const std::size_t rank = n - g.component_count();
  if (rank == 0) {
    fn(std::vector<std::size_t>{});
    return;
  }

  // DFS over "take edge i or not", keeping the partial subset acyclic
  std::vector<std::size_t> chosen;
  std::vector<std::size_t> parent(n);
  std::function<std::size_t(std::vector<std::size_t>&, std::size_t)> find =
      [&](std::vector<std::size_t>& par, std::size_t x) {
        while (par[x] != x) x = par[x] = par[par[x]];
        return x;
      };
  std::function<void(std::size_t, std::vector<std::size_t>)> walk =
      [&](std::size_t next, std::vector<std::size_t> par) {
        if (chosen.size() == rank) {
          fn(chosen);
          return;
        }
        if (m - next < rank - chosen.size()) return;  // not enough edges left
        // skip edge `next`
        walk(next + 1, par);
        // take edge `next` if it stays acyclic
        std::size_t a = find(par, eu[next]), b = find(par, ev[next]);
        if (a != b) {
          auto par2 = par;
          par2[a] = b;
          chosen.push_back(next);
          walk(next + 1, std::move(par2));
          chosen.pop_back();
        }
      };
  std::iota(parent.begin(), parent.end(), 0);
  walk(0, parent);
}

}  // namespace

std::optional<MultiPoly> PsiCache::find(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = map_.find(key);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void PsiCache::store(const std::string& key, const MultiPoly& positional_psi) {
  std::lock_guard<std::mutex> lock(mu_);
  map_.emplace(key, positional_psi);  // idempotent: first insert wins
}

std::size_t PsiCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return map_.size();
}

PsiCache& PsiCache::global() {
  static PsiCache cache;
  return cache;
}

MultiPoly psi_enumerate(const Multigraph& g) {
  if (g.edge_count() > kEnumerateEdgeBound)
    throw guard_error("psi_enumerate refused: " + std::to_string(g.edge_count()) +
                      " edges exceeds the bound of " + std::to_string(kEnumerateEdgeBound));
  const std::size_t m = g.edge_count();
  MultiPoly::TermMap terms;
  for_each_spanning_forest(g, [&](const std::vector<std::size_t>& forest) {
    Monomial mono;
    std::size_t fi = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (fi < forest.size() && forest[fi] == i) {
        ++fi;
        continue;
      }
      mono.powers.push_back({static_cast<std::uint32_t>(i), 1});
    }
    terms.emplace(std::move(mono), mpq_class(1));
  });
  return MultiPoly(edge_var_order(g), std::move(terms));
}

unsigned long long spanning_forest_count(const Multigraph& g) {
  if (g.edge_count() > kEnumerateEdgeBound)
    throw guard_error("spanning_forest_count refused: too many edges");
  unsigned long long count = 0;
  for_each_spanning_forest(g, [&](const std::vector<std::size_t>&) { ++count; });
  return count;
}

MultiPoly psi_recursion(const Multigraph& g, PsiCache* cache) {
  if (g.edge_count() == 0) return MultiPoly::constant(1);
  CanonicalForm canon = g.canonical();
  auto order = edge_var_order(g);
  std::vector<std::string> positional(canon.edge_order.size());
  for (std::size_t i = 0; i < positional.size(); ++i) positional[i] = std::to_string(i);

  if (cache) {
    if (auto hit = cache->find(canon.key)) {
      std::map<std::string, std::string> back;
      for (std::size_t i = 0; i < canon.edge_order.size(); ++i)
        back[positional[i]] = canon.edge_order[i];
      return hit->renamed(back).with_vars(order);
    }
  }

  const Edge& e = g.edges().front();
  MultiPoly result;
  switch (g.classify_edge(e.id)) {
    case EdgeClass::Loop:
      result = MultiPoly::variable(e.id) * psi_recursion(g.delete_edge(e.id), cache);
      break;
    case EdgeClass::Bridge:
      result = psi_recursion(g.contract_edge(e.id), cache);
      break;
    default:
      result = MultiPoly::variable(e.id) * psi_recursion(g.delete_edge(e.id), cache) +
               psi_recursion(g.contract_edge(e.id), cache);
      break;
  }
  result = result.with_vars(order);
  if (cache) {
    std::map<std::string, std::string> fwd;
    for (std::size_t i = 0; i < canon.edge_order.size(); ++i)
      fwd[canon.edge_order[i]] = positional[i];
    cache->store(canon.key, result.renamed(fwd).with_vars(positional));
  }
  return result;
}

namespace {

// exact polynomial division: q with num == q * den, else throws.
// Both operands are rebased onto one variable order so monomial indices agree.
MultiPoly divide_exact(const MultiPoly& num, const MultiPoly& den) {
  if (den.is_zero()) throw domain_error("division by the zero polynomial");
  std::vector<std::string> shared = num.vars();
  for (const auto& v : den.vars())
    if (std::find(shared.begin(), shared.end(), v) == shared.end()) shared.push_back(v);
  MultiPoly rem = num.with_vars(shared);
  MultiPoly d = den.with_vars(shared);
  MultiPoly quot = MultiPoly::zero_over(shared);
  auto dlead = d.terms().rbegin();
  while (!rem.is_zero()) {
    auto rlead = rem.terms().rbegin();
    if (!mono_divides(dlead->first, rlead->first))
      throw domain_error("polynomial division is not exact");
    Monomial qm = mono_div(rlead->first, dlead->first);
    mpq_class qc = rlead->second / dlead->second;
    MultiPoly::TermMap single;
    single.emplace(qm, qc);
    MultiPoly qterm(shared, std::move(single));
    quot = quot + qterm;
    rem = rem - qterm * d;
  }
  return quot;
}

// Bareiss fraction-free determinant of a square MultiPoly matrix; all
// divisions are exact by construction.
MultiPoly bareiss_det(std::vector<std::vector<MultiPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly::constant(1);
  MultiPoly prev = MultiPoly::constant(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return MultiPoly();  // singular
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = divide_exact(num, prev);
      }
      m[i][k] = MultiPoly();
    }
    prev = m[k][k];
  }
  MultiPoly det = m[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

}  // namespace

MultiPoly psi_matrix_tree(const Multigraph& g) {
  if (g.edge_count() > kMatrixTreeEdgeBound)
    throw guard_error("psi_matrix_tree refused: " + std::to_string(g.edge_count()) +
                      " edges exceeds the bound of " + std::to_string(kMatrixTreeEdgeBound));
  const std::size_t n = g.vertex_count();
  std::map<std::string, std::size_t> vix;
  for (std::size_t i = 0; i < n; ++i) vix[g.vertices()[i]] = i;

  // connected components via repeated scans
  std::vector<long> comp(n, -1);
  long ncomp = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = ncomp;
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& e : g.edges()) {
        std::size_t a = vix[e.u], b = vix[e.v];
        if (comp[a] == ncomp && comp[b] < 0) comp[b] = ncomp, grew = true;
        if (comp[b] == ncomp && comp[a] < 0) comp[a] = ncomp, grew = true;
      }
    }
    ++ncomp;
  }

  MultiPoly psi = MultiPoly::constant(1);
  for (long c = 0; c < ncomp; ++c) {
    std::vector<std::size_t> verts;
    for (std::size_t v = 0; v < n; ++v)
      if (comp[v] == c) verts.push_back(v);
    std::vector<std::size_t> local(n, 0);
    for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = i;

    std::vector<const Edge*> comp_edges, tree_candidates;
    for (const auto& e : g.edges()) {
      if (comp[vix[e.u]] != c) continue;
      comp_edges.push_back(&e);
      if (e.u != e.v) tree_candidates.push_back(&e);
    }

    // weighted Laplacian over the component, first vertex row/col dropped
    const std::size_t cv = verts.size();
    std::vector<std::vector<MultiPoly>> lap(
        cv, std::vector<MultiPoly>(cv, MultiPoly()));
    for (const Edge* e : tree_candidates) {
      MultiPoly w = MultiPoly::variable(e->id);
      std::size_t a = local[vix[e->u]], b = local[vix[e->v]];
      lap[a][a] = lap[a][a] + w;
      lap[b][b] = lap[b][b] + w;
      lap[a][b] = lap[a][b] - w;
      lap[b][a] = lap[b][a] - w;
    }
    std::vector<std::vector<MultiPoly>> reduced;
    for (std::size_t i = 1; i < cv; ++i) {
      reduced.push_back({});
      for (std::size_t j = 1; j < cv; ++j) reduced.back().push_back(lap[i][j]);
    }
    MultiPoly tree_poly = bareiss_det(std::move(reduced));

    // complement each spanning-tree monomial within the component's edges
    MultiPoly::TermMap terms;
    MultiPoly comp_psi;
    {
      // map: variable index in tree_poly -> edge id
      const auto& tvars = tree_poly.vars();
      for (const auto& [mono, coeff] : tree_poly.terms()) {
        std::vector<std::string> used;
        for (auto [v, e] : mono.powers) {
          if (e != 1) throw domain_error("matrix-tree monomial is not multilinear");
          used.push_back(tvars[v]);
        }
        Monomial complement;  // indices into comp_edges order
        for (std::size_t i = 0; i < comp_edges.size(); ++i) {
          const std::string& id = comp_edges[i]->id;
          if (std::find(used.begin(), used.end(), id) == used.end())
            complement.powers.push_back({static_cast<std::uint32_t>(i), 1});
        }
        auto [it, fresh] = terms.emplace(std::move(complement), coeff);
        if (!fresh) it->second += coeff;
      }
      std::vector<std::string> comp_order;
      for (const Edge* e : comp_edges) comp_order.push_back(e->id);
      comp_psi = MultiPoly(comp_order, std::move(terms));
    }
    psi = psi * comp_psi;
  }
  return psi.with_vars(edge_var_order(g));
}

bool check_delcon_identity(const Multigraph& g, const std::string& edge_id, PsiCache* cache) {
  switch (g.classify_edge(edge_id)) {
    case EdgeClass::Loop:
      throw domain_error("edge " + edge_id +
                         " is a loop; the identity there is Psi_G = t_e * Psi_{G\\e}");
    case EdgeClass::Bridge:
      throw domain_error("edge " + edge_id +
                         " is a bridge; the identity there is Psi_G = Psi_{G/e}");
    default:
      break;
  }
  MultiPoly whole = psi_recursion(g, cache);
  MultiPoly del = psi_recursion(g.delete_edge(edge_id), cache);
  MultiPoly con = psi_recursion(g.contract_edge(edge_id), cache);
  return whole == MultiPoly::variable(edge_id) * del + con;
}

}  // namespace graphchern

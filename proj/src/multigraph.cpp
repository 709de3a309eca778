#include "graphchern/multigraph.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace graphchern {

namespace {

// union-find over vertex indices, small and throwaway
struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = parent[find(b)]; }
  std::size_t roots() {
    std::size_t c = 0;
    for (std::size_t i = 0; i < parent.size(); ++i)
      if (find(i) == i) ++c;
    return c;
  }
};

constexpr std::size_t kVertexBound = 12;
constexpr std::uint64_t kPermutationBound = 10'000'000;

}  // namespace

std::string to_string(EdgeClass c) {
  switch (c) {
    case EdgeClass::Loop: return "Loop";
    case EdgeClass::Bridge: return "Bridge";
    case EdgeClass::NonRegularForestDeletion: return "NonRegularForestDeletion";
    case EdgeClass::Regular: return "Regular";
  }
  return "?";
}

void Multigraph::add_vertex(const std::string& name) {
  if (name.empty()) throw domain_error("vertex name must be non-empty");
  if (!has_vertex(name)) vertices_.push_back(name);
}

void Multigraph::add_edge(const std::string& id, const std::string& u, const std::string& v) {
  if (id.empty()) throw domain_error("edge id must be non-empty");
  if (has_edge(id)) throw domain_error("duplicate edge id: " + id);
  add_vertex(u);
  add_vertex(v);
  edges_.push_back(Edge{id, u, v});
}

bool Multigraph::has_vertex(const std::string& name) const {
  return std::find(vertices_.begin(), vertices_.end(), name) != vertices_.end();
}

bool Multigraph::has_edge(const std::string& id) const {
  for (const auto& e : edges_)
    if (e.id == id) return true;
  return false;
}

const Edge& Multigraph::edge(const std::string& id) const {
  for (const auto& e : edges_)
    if (e.id == id) return e;
  throw lookup_error("no edge named " + id);
}

std::size_t Multigraph::vertex_index(const std::string& name) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == name) return i;
  throw lookup_error("no vertex named " + name);
}

std::size_t Multigraph::component_count_skipping(std::size_t skip_edge) const {
  Dsu dsu(vertices_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i == skip_edge) continue;
    dsu.unite(vertex_index(edges_[i].u), vertex_index(edges_[i].v));
  }
  return dsu.roots();
}

std::size_t Multigraph::component_count() const {
  return component_count_skipping(edges_.size());
}

long Multigraph::betti1() const {
  if (vertices_.empty()) return 0;
  return static_cast<long>(edges_.size()) - static_cast<long>(vertices_.size()) +
         static_cast<long>(component_count());
}

bool Multigraph::is_bridge(const std::string& id) const {
  const Edge& e = edge(id);
  if (e.u == e.v) return false;
  std::size_t idx = 0;
  while (edges_[idx].id != id) ++idx;
  return component_count_skipping(idx) > component_count();
}

EdgeClass Multigraph::classify_edge(const std::string& id) const {
  const Edge& e = edge(id);
  if (e.u == e.v) return EdgeClass::Loop;
  if (is_bridge(id)) return EdgeClass::Bridge;
  if (delete_edge(id).is_forest()) return EdgeClass::NonRegularForestDeletion;
  return EdgeClass::Regular;
}

bool Multigraph::has_parallel(const std::string& id) const {
  const Edge& e = edge(id);
  if (e.u == e.v) throw domain_error("has_parallel is undefined for loops: " + id);
  for (const auto& f : edges_) {
    if (f.id == id) continue;
    if ((f.u == e.u && f.v == e.v) || (f.u == e.v && f.v == e.u)) return true;
  }
  return false;
}

bool Multigraph::disjoinable() const {
  // Biconnected blocks via DFS over non-loop edges; every loop is its own
  // cycle block. A non-loop block has a cycle iff #edges >= #vertices.
  const std::size_t n = vertices_.size();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);  // (neighbor, edge idx)
  std::size_t loop_blocks = 0;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    std::size_t a = vertex_index(edges_[i].u), b = vertex_index(edges_[i].v);
    if (a == b) {
      ++loop_blocks;
      continue;
    }
    adj[a].push_back({b, i});
    adj[b].push_back({a, i});
  }

  std::size_t cycle_blocks = loop_blocks;
  std::vector<long> disc(n, -1), low(n, 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack;  // edges as vertex pairs
  long timer = 0;

  std::function<void(std::size_t, long)> dfs = [&](std::size_t u, long parent_edge) {
    disc[u] = low[u] = timer++;
    for (auto [w, ei] : adj[u]) {
      if (static_cast<long>(ei) == parent_edge) continue;
      if (disc[w] == -1) {
        stack.push_back({u, w});
        dfs(w, static_cast<long>(ei));
        low[u] = std::min(low[u], low[w]);
        if (low[w] >= disc[u]) {
          // pop one block, measure it
          std::map<std::size_t, bool> verts;
          std::size_t block_edges = 0;
          while (!stack.empty()) {
            auto pr = stack.back();
            stack.pop_back();
            ++block_edges;
            verts[pr.first] = verts[pr.second] = true;
            if (pr.first == u && pr.second == w) break;
          }
          if (block_edges >= verts.size()) ++cycle_blocks;
        }
      } else if (disc[w] < disc[u]) {
        stack.push_back({u, w});
        low[u] = std::min(low[u], disc[w]);
      }
    }
  };

  for (std::size_t v = 0; v < n; ++v)
    if (disc[v] == -1) dfs(v, -1);
  return cycle_blocks >= 2;
}

Multigraph Multigraph::delete_edge(const std::string& id) const {
  edge(id);  // existence check
  Multigraph g;
  g.vertices_ = vertices_;
  for (const auto& e : edges_)
    if (e.id != id) g.edges_.push_back(e);
  return g;
}

Multigraph Multigraph::contract_edge(const std::string& id) const {
  const Edge& e = edge(id);
  if (e.u == e.v) return delete_edge(id);  // loop contraction = deletion
  std::size_t iu = vertex_index(e.u), iv = vertex_index(e.v);
  const std::string& keep = iu < iv ? e.u : e.v;
  const std::string& gone = iu < iv ? e.v : e.u;
  Multigraph g;
  for (const auto& name : vertices_)
    if (name != gone) g.vertices_.push_back(name);
  for (const auto& f : edges_) {
    if (f.id == id) continue;
    Edge h = f;
    if (h.u == gone) h.u = keep;
    if (h.v == gone) h.v = keep;
    g.edges_.push_back(h);
  }
  return g;
}

Multigraph Multigraph::multiply_edge(const std::string& id, std::size_t m) const {
  const Edge& e = edge(id);
  if (m == 0) throw domain_error("multiply_edge requires multiplicity >= 1");
  Multigraph g;
  g.vertices_ = vertices_;
  auto taken = [&](const std::string& cand) {
    for (const auto& f : edges_)
      if (f.id == cand) return true;
    for (const auto& f : g.edges_)
      if (f.id == cand) return true;
    return false;
  };
  for (const auto& f : edges_) {
    if (f.id != id) {
      g.edges_.push_back(f);
      continue;
    }
    g.edges_.push_back(f);  // first copy keeps the original id
    for (std::size_t k = 2; k <= m; ++k) {
      std::string derived = id + "#" + std::to_string(k);
      while (taken(derived)) derived += "'";
      g.edges_.push_back(Edge{derived, e.u, e.v});
    }
  }
  return g;
}

bool Multigraph::operator==(const Multigraph& other) const {
  if (vertices_ != other.vertices_ || edges_.size() != other.edges_.size()) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge &a = edges_[i], &b = other.edges_[i];
    if (a.id != b.id || a.u != b.u || a.v != b.v) return false;
  }
  return true;
}

CanonicalForm Multigraph::canonical() const {
  const std::size_t n = vertices_.size();
  if (n > kVertexBound)
    throw guard_error("canonical form refused: " + std::to_string(n) +
                      " vertices exceeds the bound of " + std::to_string(kVertexBound));

  // --- iterated color refinement ---
  std::vector<std::size_t> loops(n, 0);
  std::vector<std::vector<std::size_t>> nbr(n);  // neighbor vertex index per non-loop edge end
  for (const auto& e : edges_) {
    std::size_t a = vertex_index(e.u), b = vertex_index(e.v);
    if (a == b) {
      ++loops[a];
    } else {
      nbr[a].push_back(b);
      nbr[b].push_back(a);
    }
  }
  std::vector<std::size_t> color(n, 0);
  {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> rank;
    for (std::size_t v = 0; v < n; ++v) rank[{loops[v], nbr[v].size()}] = 0;
    std::size_t next = 0;
    for (auto& kv : rank) kv.second = next++;
    for (std::size_t v = 0; v < n; ++v) color[v] = rank[{loops[v], nbr[v].size()}];
  }
  for (std::size_t round = 0; round < n; ++round) {
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> rank;
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<std::size_t> around;
      around.reserve(nbr[v].size());
      for (std::size_t w : nbr[v]) around.push_back(color[w]);
      std::sort(around.begin(), around.end());
      sig[v] = {color[v], std::move(around)};
      rank[sig[v]] = 0;
    }
    std::size_t next = 0;
    for (auto& kv : rank) kv.second = next++;
    bool changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t c = rank[sig[v]];
      if (c != color[v]) changed = true;
      color[v] = c;
    }
    if (!changed) break;
  }

  // --- group vertices by color, permute inside classes only ---
  std::map<std::size_t, std::vector<std::size_t>> classes_by_color;
  for (std::size_t v = 0; v < n; ++v) classes_by_color[color[v]].push_back(v);
  std::vector<std::vector<std::size_t>> classes;
  std::uint64_t candidates = 1;
  for (auto& kv : classes_by_color) {
    classes.push_back(kv.second);
    bool any_edge = false;
    for (std::size_t v : kv.second)
      if (!nbr[v].empty() || loops[v] > 0) any_edge = true;
    if (!any_edge) continue;  // order of edgeless vertices is irrelevant
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= kv.second.size(); ++i) {
      f *= i;
      if (f > kPermutationBound) break;
    }
    if (candidates > kPermutationBound / std::max<std::uint64_t>(f, 1))
      throw guard_error("canonical form refused: symmetry class permutations exceed guard");
    candidates *= f;
  }
  if (candidates > kPermutationBound)
    throw guard_error("canonical form refused: symmetry class permutations exceed guard");

  std::vector<std::vector<std::size_t>> perm = classes;  // mutated by odometer
  std::vector<bool> permute_class(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    bool any_edge = false;
    for (std::size_t v : classes[c])
      if (!nbr[v].empty() || loops[v] > 0) any_edge = true;
    permute_class[c] = any_edge;
  }

  std::vector<std::pair<std::size_t, std::size_t>> best_pairs;
  std::vector<std::size_t> best_index(n);
  bool have_best = false;

  std::vector<std::size_t> canon_index(n);
  std::vector<std::pair<std::size_t, std::size_t>> pairs(edges_.size());
  // odometer over within-class permutations; next_permutation leaves a
  // wrapped class sorted, which is exactly its reset state
  auto advance = [&]() {
    for (std::size_t c = classes.size(); c-- > 0;) {
      if (!permute_class[c]) continue;
      if (std::next_permutation(perm[c].begin(), perm[c].end())) return true;
    }
    return false;
  };
  while (true) {
    std::size_t next_ix = 0;
    for (const auto& cls : perm)
      for (std::size_t v : cls) canon_index[v] = next_ix++;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      std::size_t a = canon_index[vertex_index(edges_[i].u)];
      std::size_t b = canon_index[vertex_index(edges_[i].v)];
      pairs[i] = {std::min(a, b), std::max(a, b)};
    }
    std::sort(pairs.begin(), pairs.end());
    if (!have_best || pairs < best_pairs) {
      best_pairs = pairs;
      best_index = canon_index;
      have_best = true;
    }
    if (!advance()) break;
  }

  CanonicalForm out;
  std::ostringstream key;
  key << n << "|" << edges_.size() << "|";
  for (std::size_t i = 0; i < best_pairs.size(); ++i) {
    if (i) key << ";";
    key << best_pairs[i].first << "-" << best_pairs[i].second;
  }
  out.key = key.str();

  std::vector<std::size_t> order(edges_.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> under_best(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    std::size_t a = best_index[vertex_index(edges_[i].u)];
    std::size_t b = best_index[vertex_index(edges_[i].v)];
    under_best[i] = {std::min(a, b), std::max(a, b)};
  }
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (under_best[x] != under_best[y]) return under_best[x] < under_best[y];
    return x < y;
  });
  for (std::size_t i : order) out.edge_order.push_back(edges_[i].id);
  return out;
}

std::string key_to_hex(const std::string& key) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(key.size() * 2);
  for (unsigned char c : key) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

std::string to_json_string(const Multigraph& g, bool pretty) {
  nlohmann::ordered_json j;
  j["vertices"] = g.vertices();
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges())
    j["edges"].push_back({{"id", e.id}, {"ends", {e.u, e.v}}});
  return pretty ? j.dump(2) : j.dump();
}

Multigraph graph_from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw parse_error(std::string("bad graph JSON: ") + ex.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw parse_error("graph JSON needs \"vertices\" and \"edges\"");
  Multigraph g;
  try {
    for (const auto& v : j["vertices"]) g.add_vertex(v.get<std::string>());
    for (const auto& e : j["edges"]) {
      const auto& ends = e.at("ends");
      if (!ends.is_array() || ends.size() != 2)
        throw parse_error("edge \"ends\" must be a pair");
      g.add_edge(e.at("id").get<std::string>(), ends[0].get<std::string>(),
                 ends[1].get<std::string>());
    }
  } catch (const nlohmann::json::exception& ex) {
    throw parse_error(std::string("bad graph JSON: ") + ex.what());
  }
  return g;
}

std::string to_text(const Multigraph& g) {
  auto printable = [](const std::string& s) {
    return !s.empty() && s[0] != '#' &&
           s.find_first_of(" \t\r\n") == std::string::npos;
  };
  std::ostringstream out;
  for (const auto& e : g.edges()) {
    if (!printable(e.u) || !printable(e.v) || !printable(e.id))
      throw domain_error("name not representable in text format; use JSON");
    out << e.u << " " << e.v << " " << e.id << "\n";
  }
  for (const auto& v : g.vertices()) {
    bool touched = false;
    for (const auto& e : g.edges())
      if (e.u == v || e.v == v) touched = true;
    if (!touched) {
      if (!printable(v)) throw domain_error("name not representable in text format; use JSON");
      out << v << "\n";
    }
  }
  return out.str();
}

Multigraph graph_from_text(const std::string& text) {
  struct Line {
    std::vector<std::string> tokens;
    std::size_t number;
  };
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::istringstream ls(raw);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks.size() > 3)
      throw parse_error("line " + std::to_string(lineno) + ": expected 'u v [id]' or a lone vertex");
    lines.push_back({toks, lineno});
  }
  Multigraph g;
  std::vector<std::size_t> pending;  // indices of id-less edges, in order
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& ln = lines[i];
    if (ln.tokens.size() == 1) {
      g.add_vertex(ln.tokens[0]);
    } else if (ln.tokens.size() == 3) {
      try {
        g.add_edge(ln.tokens[2], ln.tokens[0], ln.tokens[1]);
      } catch (const domain_error& ex) {
        throw parse_error("line " + std::to_string(ln.number) + ": " + ex.what());
      }
    } else {
      pending.push_back(i);
    }
  }
  std::size_t counter = 1;
  for (std::size_t i : pending) {
    std::string id;
    do {
      id = "e" + std::to_string(counter++);
    } while (g.has_edge(id));
    g.add_edge(id, lines[i].tokens[0], lines[i].tokens[1]);
  }
  if (g.vertex_count() == 0 && g.edge_count() == 0)
    throw parse_error("empty graph description");
  // re-read in declaration order so auto ids do not scramble edge order
  // (auto-id edges were appended last; rebuild preserving line order)
  Multigraph ordered;
  std::size_t auto_ix = 0;
  std::vector<std::string> auto_ids;
  for (const auto& e : g.edges())
    auto_ids.push_back(e.id);
  // auto ids live at the tail of g.edges() in pending order
  std::size_t tail_start = g.edge_count() - pending.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& ln = lines[i];
    if (ln.tokens.size() == 1) {
      ordered.add_vertex(ln.tokens[0]);
    } else if (ln.tokens.size() == 3) {
      ordered.add_edge(ln.tokens[2], ln.tokens[0], ln.tokens[1]);
    } else {
      ordered.add_edge(auto_ids[tail_start + auto_ix], ln.tokens[0], ln.tokens[1]);
      ++auto_ix;
    }
  }
  return ordered;
}

Multigraph graph_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open graph file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return graph_from_json_string(text);
    break;
  }
  return graph_from_text(text);
}

}  // namespace graphchern

#include "polydyn/dyngraph.hpp"

#include <deque>
#include <functional>
#include <numeric>
#include <set>

#include "json.hpp"
#include "polydyn/escape.hpp"
#include "polydyn/symmetry.hpp"

namespace polydyn {

namespace {

VertexKey canonical(Rational u, int s, int k) {
  s = ((s % k) + k) % k;
  if (u.is_zero()) return {u, 0};
  if (k % 2 == 0 && u.sign() < 0) return {-u, (s + k / 2) % k};
  return {u, s};
}

int mod_pow_mul(int s, int mu, int k) { return static_cast<int>((static_cast<long>(s) * mu) % k); }

}  // namespace

std::string MarkedGraph::value_str(int id) const {
  const auto& v = vertices[id].key;
  if (v.s == 0) return (center + v.u).str();
  if (2 * v.s == k) return (center - v.u).str();
  std::string r = "zeta" + std::to_string(k) + "^" + std::to_string(v.s) + "*(" + v.u.str() + ")";
  return center.is_zero() ? r : center.str() + "+" + r;
}

MarkedGraph build_graph(const QPoly& p, int depth, std::size_t max_bits) {
  if (p.is_zero() || p.deg() < 2) throw DomainError("graph needs degree >= 2");
  if (depth < 1) throw DomainError("depth must be at least 1");
  const int d = p.deg();
  std::vector<Rational> crit;
  QPoly dp = p.derivative();
  for (const auto& r : rational_roots(dp))
    for (int j = root_multiplicity(dp, r); j > 0; --j) crit.push_back(r);
  if (static_cast<int>(crit.size()) != d - 1)
    throw DomainError("critical points are not all rational; graph construction needs rational critical points");

  MarkedGraph g;
  g.degree = d;
  g.depth = depth;
  g.center = -p.coeff(d - 1) / (Rational(d) * p.leading());
  auto sym = symmetry_group(p);
  g.k = sym.monomial ? 1 : static_cast<int>(*sym.sigma_order);
  g.rho = sym.monomial ? d : sym.rho_exponent;
  const int k = g.k;
  const Rational c = g.center;
  ExactEscape esc(p);

  std::map<VertexKey, int> index;
  std::deque<int> todo;
  auto add = [&](const VertexKey& key, int step) {
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(g.vertices.size());
    Vertex v;
    v.id = id;
    v.key = key;
    v.step = step;
    Rational z = c + key.u;
    v.ray = esc.fires(z);
    g.vertices.push_back(v);
    index.emplace(key, id);
    todo.push_back(id);
    return id;
  };
  // the vertex set is closed under the rotation action
  auto add_all = [&](const VertexKey& key, int step) {
    int id = add(key, step);
    for (int s = 1; s < k; ++s) add(canonical(key.u, key.s + s, k), step);
    return id;
  };
  for (const auto& x : crit) add_all(canonical(x - c, 0, k), 0);
  std::map<int, int> flow;
  while (!todo.empty()) {
    int id = todo.front();
    todo.pop_front();
    Vertex v = g.vertices[id];
    Rational image = p(c + v.key.u) - c;
    VertexKey next = canonical(image, mod_pow_mul(v.key.s, g.rho, k), k);
    auto it = index.find(next);
    if (it != index.end()) {
      flow[id] = it->second;
      continue;
    }
    bool too_big = image.bits() > max_bits;
    if (v.step >= depth || too_big) {
      if (v.ray) g.vertices[id].placeholder = true;
      else {
        g.vertices[id].unresolved = true;
        g.complete = false;
      }
      flow[id] = id;
      continue;
    }
    flow[id] = add_all(next, v.step + 1);
  }
  // a rotated placeholder g.w follows rho(g).w, keeping the flow equivariant
  for (auto& v : g.vertices) {
    if (!v.placeholder || v.key.s == 0) continue;
    auto base = index.find(canonical(v.key.u, 0, k));
    if (base == index.end() || !g.vertices[base->second].placeholder) continue;
    flow[v.id] = index.at(canonical(v.key.u, mod_pow_mul(v.key.s, g.rho, k), k));
  }

  // renumber by sorted key: points first, then rays
  std::vector<int> order(g.vertices.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& va = g.vertices[a];
    const auto& vb = g.vertices[b];
    if (va.ray != vb.ray) return !va.ray;
    return va.key < vb.key;
  });
  std::vector<int> newid(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) newid[order[i]] = static_cast<int>(i);
  std::vector<Vertex> verts(order.size());
  g.flow.assign(order.size(), 0);
  for (std::size_t old = 0; old < order.size(); ++old) {
    Vertex v = g.vertices[old];
    v.id = newid[old];
    verts[v.id] = v;
    g.flow[v.id] = newid[flow.at(static_cast<int>(old))];
  }
  g.vertices = std::move(verts);
  index.clear();
  for (const auto& v : g.vertices) index.emplace(v.key, v.id);

  for (auto& v : g.vertices) {
    Rational z = c + v.key.u;
    v.dpi = root_multiplicity(p - QPoly::constant(p(z)), z);
  }
  for (const auto& x : crit) g.marking.push_back(index.at(canonical(x - c, 0, k)));
  g.action.assign(g.vertices.size(), -1);
  for (const auto& v : g.vertices) {
    auto it = index.find(canonical(v.key.u, v.key.s + 1, k));
    g.action[v.id] = it == index.end() ? -1 : it->second;
  }
  // height on components ending in a placeholder: H = depth - distance to it
  for (const auto& v : g.vertices) {
    int cur = v.id, dist = 0;
    std::set<int> seen;
    while (!g.vertices[cur].placeholder && seen.insert(cur).second) {
      cur = g.flow[cur];
      ++dist;
    }
    if (g.vertices[cur].placeholder) g.height[v.id] = g.vertices[cur].step - dist;
  }
  return g;
}

std::string to_string(Violation v) {
  switch (v) {
    case Violation::FlowUndefined: return "FlowUndefined";
    case Violation::CountIdentityViolated: return "CountIdentityViolated";
    case Violation::MarkedMultiplicityMismatch: return "MarkedMultiplicityMismatch";
    case Violation::NotMinimal: return "NotMinimal";
    case Violation::ActionNotPermutation: return "ActionNotPermutation";
    case Violation::ActionOrderMismatch: return "ActionOrderMismatch";
    case Violation::ActionFixedPoints: return "ActionFixedPoints";
    case Violation::FlowNotEquivariant: return "FlowNotEquivariant";
    case Violation::HeightInconsistent: return "HeightInconsistent";
    case Violation::SymmetryOrderTooLarge: return "SymmetryOrderTooLarge";
    case Violation::LocalDegreeInvalid: return "LocalDegreeInvalid";
  }
  return "?";
}

std::vector<Violation> validate_axioms(const MarkedGraph& g) {
  std::vector<Violation> out;
  const int n = static_cast<int>(g.vertices.size());
  auto add = [&](Violation v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  if (static_cast<int>(g.flow.size()) != n) add(Violation::FlowUndefined);
  for (int t : g.flow)
    if (t < 0 || t >= n) add(Violation::FlowUndefined);
  if (g.k > g.degree || g.k < 1) add(Violation::SymmetryOrderTooLarge);
  long total = 0;
  for (const auto& v : g.vertices) {
    if (v.dpi < 1) add(Violation::LocalDegreeInvalid);
    total += v.dpi - 1;
  }
  if (total != g.degree - 1) add(Violation::CountIdentityViolated);
  std::vector<int> marks(n, 0);
  for (int m : g.marking) {
    if (m < 0 || m >= n) add(Violation::MarkedMultiplicityMismatch);
    else ++marks[m];
  }
  for (const auto& v : g.vertices)
    if (v.dpi != 1 + marks[v.id]) add(Violation::MarkedMultiplicityMismatch);
  if (!out.empty() && std::find(out.begin(), out.end(), Violation::FlowUndefined) != out.end()) return out;

  // action: permutation of order dividing k, only the center fixed when k > 1
  bool perm = static_cast<int>(g.action.size()) == n;
  std::vector<int> hit(n, 0);
  if (perm)
    for (int t : g.action) {
      if (t < 0 || t >= n) perm = false;
      else ++hit[t];
    }
  for (int h : hit)
    if (h != 1) perm = false;
  if (!perm) {
    add(Violation::ActionNotPermutation);
  } else {
    for (int v = 0; v < n; ++v) {
      int cur = v;
      for (int i = 0; i < g.k; ++i) cur = g.action[cur];
      if (cur != v) add(Violation::ActionOrderMismatch);
    }
    if (g.k > 1) {
      int fixed = 0;
      for (int v = 0; v < n; ++v)
        if (g.action[v] == v) ++fixed;
      if (fixed > 1) add(Violation::ActionFixedPoints);
    }
    // pi(zeta v) = zeta^rho pi(v)
    int r = g.k > 0 ? ((g.rho % g.k) + g.k) % g.k : 0;
    for (int v = 0; v < n; ++v) {
      if (g.vertices[v].placeholder || g.vertices[v].unresolved) continue;
      if (g.vertices[g.action[v]].placeholder || g.vertices[g.action[v]].unresolved) continue;
      int lhs = g.flow[g.action[v]], rhs = g.flow[v];
      for (int i = 0; i < r; ++i) rhs = g.action[rhs];
      if (lhs != rhs) add(Violation::FlowNotEquivariant);
    }
  }
  // minimality: every vertex is g . pi^n(mu(i))
  std::vector<char> reach(n, 0);
  for (int m : g.marking) {
    std::set<int> seen;
    for (int cur = m; seen.insert(cur).second; cur = g.flow[cur]) {
      int r = cur;
      for (int i = 0; i < std::max(g.k, 1); ++i) {
        reach[r] = 1;
        if (!perm) break;
        r = g.action[r];
      }
    }
  }
  for (int v = 0; v < n; ++v)
    if (!reach[v]) add(Violation::NotMinimal);
  for (const auto& [v, h] : g.height) {
    if (g.vertices[v].placeholder) continue;
    auto it = g.height.find(g.flow[v]);
    if (it == g.height.end() || it->second != h + 1) add(Violation::HeightInconsistent);
  }
  return out;
}

namespace {

std::vector<int> component_ids(const MarkedGraph& g) {
  const int n = static_cast<int>(g.vertices.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int v = 0; v < n; ++v) parent[find(v)] = find(g.flow[v]);
  std::vector<int> comp(n);
  for (int v = 0; v < n; ++v) comp[v] = find(v);
  return comp;
}

}  // namespace

int infinite_components(const MarkedGraph& g) {
  auto comp = component_ids(g);
  std::set<int> inf;
  for (const auto& v : g.vertices)
    if (v.ray) inf.insert(comp[v.id]);
  return static_cast<int>(inf.size());
}

bool is_special(const MarkedGraph& g) {
  if (!g.complete) throw DomainError("graph is incomplete: some critical orbit is unresolved at this depth");
  auto comp = component_ids(g);
  std::set<int> inf;
  for (const auto& v : g.vertices)
    if (v.ray) inf.insert(comp[v.id]);
  if (inf.empty()) return false;
  // every infinite component must be a rotation of the first one
  int first = -1;
  for (const auto& v : g.vertices)
    if (v.ray) {
      first = v.id;
      break;
    }
  std::set<int> orbit;
  int cur = first;
  for (int i = 0; i < g.k; ++i) {
    orbit.insert(comp[cur]);
    cur = g.action[cur];
  }
  for (int c : inf)
    if (!orbit.count(c)) return false;
  return true;
}

bool graphs_equal(const MarkedGraph& a, const MarkedGraph& b) {
  if (a.degree != b.degree) return false;
  if (a.depth != b.depth) throw DomainError("graphs truncated at different depths");
  if (a.k != b.k) return false;
  if (a.k > 1 && ((a.rho - b.rho) % a.k) != 0) return false;
  if (a.marking.size() != b.marking.size()) return false;
  auto relations = [](const MarkedGraph& g, int i, int j, int sig) {
    std::vector<int> fi, fj;
    for (int cur = g.marking[i], n = 0; n <= g.depth; ++n, cur = g.flow[cur]) fi.push_back(cur);
    for (int cur = g.marking[j], n = 0; n <= g.depth; ++n, cur = g.flow[cur]) {
      int r = cur;
      for (int t = 0; t < sig; ++t) r = g.action[r];
      fj.push_back(r);
    }
    std::set<std::pair<int, int>> rel;
    for (int n = 0; n <= g.depth; ++n)
      for (int m = 0; m <= g.depth; ++m)
        if (fi[n] == fj[m]) rel.emplace(n, m);
    return rel;
  };
  const int nm = static_cast<int>(a.marking.size());
  for (int i = 0; i < nm; ++i)
    for (int j = 0; j < nm; ++j)
      for (int s = 0; s < a.k; ++s)
        if (relations(a, i, j, s) != relations(b, i, j, s)) return false;
  return true;
}

std::optional<std::pair<int, int>> marked_orbit_shape(const MarkedGraph& g, int i) {
  std::map<int, int> seen;
  int cur = g.marking.at(i);
  for (int n = 0;; ++n) {
    const auto& v = g.vertices[cur];
    if (v.ray || v.unresolved) return std::nullopt;
    auto it = seen.find(cur);
    if (it != seen.end()) return std::make_pair(it->second, n - it->second);
    seen.emplace(cur, n);
    cur = g.flow[cur];
  }
}

std::string to_json(const MarkedGraph& g) {
  nlohmann::ordered_json j;
  j["degree"] = g.degree;
  j["k"] = g.k;
  j["rho"] = g.rho;
  j["center"] = g.center.str();
  auto verts = nlohmann::ordered_json::array();
  for (const auto& v : g.vertices) {
    nlohmann::ordered_json o;
    o["id"] = v.id;
    o["dpi"] = v.dpi;
    o["kind"] = v.ray ? "ray" : "point";
    if (!v.ray) o["value"] = g.value_str(v.id);
    if (v.placeholder) o["placeholder"] = true;
    if (v.unresolved) o["unresolved"] = true;
    verts.push_back(o);
  }
  j["vertices"] = verts;
  nlohmann::ordered_json flow = nlohmann::ordered_json::object(), mark = nlohmann::ordered_json::object(),
                         act = nlohmann::ordered_json::object(), h = nlohmann::ordered_json::object();
  for (std::size_t v = 0; v < g.flow.size(); ++v) flow[std::to_string(v)] = g.flow[v];
  for (std::size_t i = 0; i < g.marking.size(); ++i) mark[std::to_string(i)] = g.marking[i];
  for (std::size_t v = 0; v < g.action.size(); ++v) act[std::to_string(v)] = g.action[v];
  for (const auto& [v, hv] : g.height) h[std::to_string(v)] = hv;
  j["flow"] = flow;
  j["marking"] = mark;
  j["action"] = act;
  j["height"] = h;
  j["depth"] = g.depth;
  j["complete"] = g.complete;
  return j.dump(2);
}

}  // namespace polydyn

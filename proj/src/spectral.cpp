#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "cellkit/based_rings.hpp"

namespace cellkit {

namespace {

using IPoly = std::vector<long long>;  // ascending coefficients

void itrim(IPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

IPoly imul(const IPoly& a, const IPoly& b) {
  if (a.empty() || b.empty()) return {};
  IPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// Exact division; throws when the division is not exact.
IPoly idiv_exact(IPoly num, const IPoly& den) {
  itrim(num);
  IPoly d = den;
  itrim(d);
  if (d.empty()) throw DomainError("polynomial division by zero");
  if (num.empty()) return {};
  if (num.size() < d.size())
    throw DomainError("polynomial division is not exact");
  IPoly q(num.size() - d.size() + 1, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    long long lead = num[i + d.size() - 1];
    if (lead % d.back() != 0)
      throw DomainError("polynomial division is not exact");
    long long c = lead / d.back();
    q[i] = c;
    for (std::size_t j = 0; j < d.size(); ++j) num[i + j] -= c * d[j];
  }
  for (long long v : num)
    if (v != 0) throw DomainError("polynomial division is not exact");
  return q;
}

bool idivides(const IPoly& den, const IPoly& num) {
  try {
    idiv_exact(num, den);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

// Cyclotomic polynomial by the exact-division recurrence.
IPoly cyclotomic(int m, std::map<int, IPoly>& memo) {
  auto it = memo.find(m);
  if (it != memo.end()) return it->second;
  IPoly num(static_cast<std::size_t>(m) + 1, 0);
  num[0] = -1;
  num[static_cast<std::size_t>(m)] = 1;  // z^m - 1
  for (int d = 1; d < m; ++d)
    if (m % d == 0) num = idiv_exact(num, cyclotomic(d, memo));
  memo.emplace(m, num);
  return num;
}

// ---- exact linear algebra over the integers ------------------------------

// Leading principal minors via fraction-free elimination; returns false as
// soon as a minor fails to be strictly positive.
bool positive_definite(const std::vector<__int128>& m0, int n) {
  std::vector<__int128> a = m0;
  __int128 prev = 1;
  for (int k = 0; k < n; ++k) {
    __int128 pivot = a[k * n + k];
    if (pivot <= 0) return false;  // pivot equals the k-th leading minor
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        a[i * n + j] =
            (a[i * n + j] * pivot - a[i * n + k] * a[k * n + j]) / prev;
      }
    prev = pivot;
  }
  return true;
}

__int128 int_det(std::vector<__int128> a, int n) {
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    if (a[k * n + k] == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i * n + k] != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[swap_row * n + j]);
      sign = -sign;
    }
    __int128 pivot = a[k * n + k];
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a[i * n + j] = (a[i * n + j] * pivot - a[i * n + k] * a[k * n + j]) / prev;
    prev = pivot;
  }
  return sign > 0 ? a[(n - 1) * n + (n - 1)] : -a[(n - 1) * n + (n - 1)];
}

// Characteristic polynomial of a symmetric 0/1 matrix via sums of
// principal minors; exact, for small n.
IPoly char_poly_minors(const Graph& g) {
  int n = g.vertices;
  if (n > 16) throw DomainError("dense characteristic polynomial capped at 16");
  IPoly p(static_cast<std::size_t>(n) + 1, 0);
  p[static_cast<std::size_t>(n)] = 1;
  std::vector<int> subset;
  // coefficient of x^{n-k} is (-1)^k * sum over k-subsets of principal minors
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    subset.clear();
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1u) subset.push_back(i);
    int k = static_cast<int>(subset.size());
    std::vector<__int128> sub(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        sub[i * k + j] = g.adj[subset[i] * n + subset[j]];
    __int128 det = int_det(std::move(sub), k);
    long long d = static_cast<long long>(det);
    p[static_cast<std::size_t>(n - k)] += (k % 2 == 0 ? d : -d);
  }
  return p;
}

// Characteristic polynomial of a tree by the standard two-polynomial DP.
IPoly char_poly_tree(const Graph& g) {
  int n = g.vertices;
  std::vector<int> parent(n, -1), order;
  std::vector<bool> seen(n, false);
  order.reserve(n);
  order.push_back(0);
  seen[0] = true;
  for (std::size_t q = 0; q < order.size(); ++q) {
    int v = order[q];
    for (int w = 0; w < n; ++w)
      if (g.edge(v, w) && !seen[w]) {
        seen[w] = true;
        parent[w] = v;
        order.push_back(w);
      }
  }
  if (static_cast<int>(order.size()) != n)
    throw DomainError("tree characteristic polynomial needs a connected graph");

  std::vector<IPoly> f(n), h(n);  // subtree char poly; subtree minus root
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    IPoly fv{0, 1};  // x
    IPoly hv{1};
    std::vector<int> children;
    for (int w = 0; w < n; ++w)
      if (parent[w] == v) children.push_back(w);
    for (int c : children) fv = imul(fv, f[c]);
    for (int c : children) hv = imul(hv, f[c]);
    for (int c : children) {
      IPoly term = h[c];
      for (int c2 : children)
        if (c2 != c) term = imul(term, f[c2]);
      // subtract x^0 * term (edge v-c used by a matching)
      if (fv.size() < term.size()) fv.resize(term.size(), 0);
      for (std::size_t i = 0; i < term.size(); ++i) fv[i] -= term[i];
    }
    f[v] = std::move(fv);
    h[v] = std::move(hv);
  }
  return f[0];
}

bool is_acyclic_connected(const Graph& g) {
  int edges = 0;
  for (int i = 0; i < g.vertices; ++i)
    for (int j = i + 1; j < g.vertices; ++j)
      if (g.edge(i, j)) ++edges;
  return edges == g.vertices - 1;
}

double graph_spectral_radius(const Graph& g) {
  int n = g.vertices;
  // deterministic power iteration with +I shift
  std::vector<long double> v(n, 1.0L), w(n);
  long double lambda = 0.0L;
  for (int it = 0; it < 20000; ++it) {
    for (int i = 0; i < n; ++i) {
      long double acc = v[i];
      for (int j = 0; j < n; ++j)
        if (g.adj[i * n + j]) acc += v[j];
      w[i] = acc;
    }
    long double dot_vw = 0.0L, dot_vv = 0.0L, norm = 0.0L;
    for (int i = 0; i < n; ++i) {
      dot_vw += v[i] * w[i];
      dot_vv += v[i] * v[i];
      norm = std::max(norm, std::fabs(w[i]));
    }
    long double next = dot_vw / dot_vv - 1.0L;
    bool settled =
        it > 64 && std::fabs(next - lambda) < 1e-16L * std::max<long double>(1.0L, next);
    lambda = next;
    for (int i = 0; i < n; ++i) v[i] = w[i] / norm;
    if (settled) break;
  }
  return static_cast<double>(lambda);
}

// AHU canonical string of a tree, rooting at the centroid of the longest
// path (one or two centers; the lexicographically smaller encoding wins).
std::string ahu_encode(const Graph& g, int root, int forbidden) {
  std::vector<std::string> parts;
  for (int w = 0; w < g.vertices; ++w)
    if (w != forbidden && g.edge(root, w)) parts.push_back(ahu_encode(g, w, root));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  out += ")";
  return out;
}

std::vector<int> tree_centers(const Graph& g) {
  int n = g.vertices;
  if (n == 1) return {0};
  std::vector<int> degree(n, 0), layer;
  std::vector<bool> removed(n, false);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.edge(i, j)) ++degree[i];
  std::vector<int> leaves;
  for (int i = 0; i < n; ++i)
    if (degree[i] <= 1) leaves.push_back(i);
  int remaining = n;
  while (remaining > 2) {
    std::vector<int> next;
    for (int v : leaves) {
      removed[v] = true;
      --remaining;
      for (int w = 0; w < n; ++w)
        if (g.edge(v, w) && !removed[w] && --degree[w] == 1)
          next.push_back(w);
    }
    leaves = std::move(next);
  }
  return leaves;
}

std::string tree_canonical(const Graph& g) {
  std::vector<int> centers = tree_centers(g);
  std::string best;
  for (int c : centers) {
    std::string enc = ahu_encode(g, c, -1);
    if (best.empty() || enc < best) best = enc;
  }
  return best;
}

// Path / single-branch-vertex recognition for naming.
std::string classify_name(const Graph& g) {
  int n = g.vertices;
  int branch = -1, branch_count = 0;
  std::vector<int> degree(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.edge(i, j)) ++degree[i];
  for (int i = 0; i < n; ++i)
    if (degree[i] >= 3) {
      branch = i;
      ++branch_count;
    }
  if (branch_count == 0) return "A" + std::to_string(n);
  if (branch_count > 1 || degree[branch] != 3) return "";
  std::vector<int> legs;
  for (int w = 0; w < n; ++w) {
    if (!g.edge(branch, w)) continue;
    int len = 1, prev = branch, cur = w;
    for (;;) {
      int next = -1;
      for (int u = 0; u < n; ++u)
        if (u != prev && g.edge(cur, u)) next = u;
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    legs.push_back(len);
  }
  std::sort(legs.begin(), legs.end());
  if (legs.size() != 3) return "";
  if (legs[0] == 1 && legs[1] == 1) return "D" + std::to_string(legs[2] + 3);
  if (legs[0] == 1 && legs[1] == 2 && legs[2] >= 2 && legs[2] <= 4)
    return "E" + std::to_string(legs[2] + 4);
  return "";
}

std::vector<std::uint8_t> two_coloring(const Graph& g) {
  std::vector<std::uint8_t> color(g.vertices, 2);
  std::vector<int> queue{0};
  color[0] = 0;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    int v = queue[q];
    for (int w = 0; w < g.vertices; ++w)
      if (g.edge(v, w) && color[w] == 2) {
        color[w] = static_cast<std::uint8_t>(1 - color[v]);
        queue.push_back(w);
      }
  }
  return color;
}

}  // namespace

Graph path_graph(int vertices) {
  Graph g;
  g.vertices = vertices;
  g.adj.assign(static_cast<std::size_t>(vertices) * vertices, 0);
  for (int i = 0; i + 1 < vertices; ++i) {
    g.adj[i * vertices + i + 1] = 1;
    g.adj[(i + 1) * vertices + i] = 1;
  }
  g.name = classify_name(g);
  g.bipartition = two_coloring(g);
  return g;
}

Graph tripod_graph(int a, int b, int c) {
  int n = a + b + c + 1;
  Graph g;
  g.vertices = n;
  g.adj.assign(static_cast<std::size_t>(n) * n, 0);
  auto connect = [&g, n](int i, int j) {
    g.adj[i * n + j] = 1;
    g.adj[j * n + i] = 1;
  };
  int next = 1;
  for (int len : {a, b, c}) {
    int prev = 0;
    for (int i = 0; i < len; ++i) {
      connect(prev, next);
      prev = next++;
    }
  }
  g.name = classify_name(g);
  g.bipartition = two_coloring(g);
  return g;
}

std::string Graph::graph6() const {
  std::string out;
  out.push_back(static_cast<char>(vertices + 63));
  int bit = 0;
  char cur = 0;
  for (int j = 1; j < vertices; ++j)
    for (int i = 0; i < j; ++i) {
      cur = static_cast<char>(cur << 1 | (edge(i, j) ? 1 : 0));
      if (++bit == 6) {
        out.push_back(static_cast<char>(cur + 63));
        bit = 0;
        cur = 0;
      }
    }
  if (bit) out.push_back(static_cast<char>((cur << (6 - bit)) + 63));
  return out;
}

std::vector<long long> cos_minimal_polynomial(int n) {
  if (n < 2) throw DomainError("cos minimal polynomial needs n >= 2");
  std::map<int, IPoly> memo;
  IPoly phi = cyclotomic(2 * n, memo);
  // Phi_{2n}(z) = z^{deg/2} * Psi(z + 1/z): peel the palindrome.
  int k = static_cast<int>(phi.size() - 1) / 2;
  // p_j(x) with z^j + z^{-j} = p_j(z + 1/z)
  std::vector<IPoly> p(static_cast<std::size_t>(k) + 1);
  p[0] = {2};
  if (k >= 1) p[1] = {0, 1};
  for (int j = 2; j <= k; ++j) {
    p[j] = imul(p[j - 1], {0, 1});
    for (std::size_t i = 0; i < p[j - 2].size(); ++i)
      p[j][i] -= p[j - 2][i];
    itrim(p[j]);
  }
  IPoly psi;
  IPoly rem = phi;  // coefficients of z^0 .. z^{2k}
  for (int j = k; j >= 1; --j) {
    long long c = rem[static_cast<std::size_t>(k + j)];
    if (c == 0) continue;
    if (psi.size() < p[j].size()) psi.resize(p[j].size(), 0);
    for (std::size_t i = 0; i < p[j].size(); ++i) psi[i] += c * p[j][i];
    rem[static_cast<std::size_t>(k + j)] -= c;
    rem[static_cast<std::size_t>(k - j)] -= c;
  }
  long long mid = rem[static_cast<std::size_t>(k)];
  if (psi.empty()) psi.resize(1, 0);
  psi[0] += mid;
  itrim(psi);

  // sanity: monic of degree phi(2n)/2 and numerically vanishing at 2cos(pi/n)
  if (psi.empty() || psi.back() != 1)
    throw DomainError("internal error: minimal polynomial not monic");
  long double x = 2.0L * std::cos(static_cast<long double>(M_PI) / n), val = 0.0L, pw = 1.0L;
  for (long long c : psi) {
    val += c * pw;
    pw *= x;
  }
  if (std::fabs(val) > 1e-6L)
    throw DomainError("internal error: minimal polynomial sanity check");
  return psi;
}

std::vector<long long> adjacency_char_poly(const Graph& g) {
  if (is_acyclic_connected(g)) return char_poly_tree(g);
  return char_poly_minors(g);
}

std::vector<Graph> spectral_radius_below_two_census(int max_vertices) {
  if (max_vertices < 1 || max_vertices > 40)
    throw DomainError("census supports 1..40 vertices");
  std::vector<Graph> all;
  std::vector<Graph> level;
  {
    Graph k1;
    k1.vertices = 1;
    k1.adj = {0};
    k1.name = "A1";
    k1.bipartition = {0};
    all.push_back(k1);
    level.push_back(k1);
  }

  auto passes = [](const Graph& g) {
    int n = g.vertices;
    std::vector<__int128> m(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[i * n + j] = (i == j ? 2 : 0) - g.adj[i * n + j];
    return positive_definite(m, n);
  };

  for (int size = 2; size <= max_vertices; ++size) {
    std::map<std::string, Graph> next;
    for (const Graph& g : level) {
      int k = g.vertices;
      // Attach a new vertex to a subset of g; grow subsets one vertex at a
      // time, pruning by monotonicity of the spectral radius under adding
      // edges (a failing attachment set cannot become feasible by attaching
      // to more vertices).
      std::vector<std::vector<int>> frontier;
      for (int v = 0; v < k; ++v) frontier.push_back({v});
      while (!frontier.empty()) {
        std::vector<std::vector<int>> grown;
        for (const auto& attach : frontier) {
          Graph h;
          h.vertices = k + 1;
          h.adj.assign(static_cast<std::size_t>(k + 1) * (k + 1), 0);
          for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) h.adj[i * (k + 1) + j] = g.adj[i * k + j];
          for (int v : attach) {
            h.adj[v * (k + 1) + k] = 1;
            h.adj[k * (k + 1) + v] = 1;
          }
          if (!passes(h)) continue;
          h.name = classify_name(h);
          h.bipartition = two_coloring(h);
          next.emplace(tree_canonical(h), h);
          for (int v = attach.back() + 1; v < k; ++v) {
            auto bigger = attach;
            bigger.push_back(v);
            grown.push_back(std::move(bigger));
          }
        }
        frontier = std::move(grown);
      }
    }
    level.clear();
    for (auto& [key, g] : next) {
      level.push_back(g);
      all.push_back(std::move(g));
    }
  }
  std::sort(all.begin(), all.end(), [](const Graph& a, const Graph& b) {
    if (a.vertices != b.vertices) return a.vertices < b.vertices;
    return a.adj < b.adj;
  });
  return all;
}

std::vector<ClassifiedGraph> classify_spectral_graphs(int n, int max_vertices) {
  if (n < 3) throw DomainError("spectral classification needs n >= 3");
  if (max_vertices < n)
    throw DomainError("max_vertices must be at least n");
  IPoly psi = cos_minimal_polynomial(n);
  double target = 2.0 * std::cos(M_PI / n);

  std::vector<ClassifiedGraph> out;
  for (const Graph& g : spectral_radius_below_two_census(max_vertices)) {
    IPoly cp = adjacency_char_poly(g);
    if (!idivides(psi, cp)) continue;
    double rho = graph_spectral_radius(g);
    if (rho > target + 1e-9) continue;
    // divisibility forces 2cos(pi/n) to be an eigenvalue, so rho >= target;
    // together with the bound above the radius is certified equal.
    ClassifiedGraph cg;
    cg.graph = g;
    cg.certificate.min_poly = psi;
    cg.certificate.char_poly = cp;
    cg.certificate.spectral_radius = rho;
    out.push_back(std::move(cg));
  }
  return out;
}

}  // namespace cellkit

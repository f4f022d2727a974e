#include "cellkit/cells.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace cellkit {

namespace {

// Iterative Tarjan; components come out in reverse topological order of the
// condensation (every edge target is in an equal-or-earlier component).
std::vector<std::uint32_t> strongly_connected_components(
    const std::vector<std::vector<Elt>>& adj, std::uint32_t& count) {
  std::uint32_t n = static_cast<std::uint32_t>(adj.size());
  std::vector<std::uint32_t> comp(n, UINT32_MAX), low(n), num(n, UINT32_MAX);
  std::vector<std::uint32_t> stack, call_node, call_edge;
  std::vector<bool> on_stack(n, false);
  std::uint32_t timer = 0;
  count = 0;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (num[root] != UINT32_MAX) continue;
    call_node.push_back(root);
    call_edge.push_back(0);
    num[root] = low[root] = timer++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call_node.empty()) {
      std::uint32_t v = call_node.back();
      std::uint32_t& ei = call_edge.back();
      if (ei < adj[v].size()) {
        std::uint32_t w = adj[v][ei++];
        if (num[w] == UINT32_MAX) {
          num[w] = low[w] = timer++;
          stack.push_back(w);
          on_stack[w] = true;
          call_node.push_back(w);
          call_edge.push_back(0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], num[w]);
        }
      } else {
        if (low[v] == num[v]) {
          for (;;) {
            std::uint32_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = count;
            if (w == v) break;
          }
          ++count;
        }
        call_node.pop_back();
        call_edge.pop_back();
        if (!call_node.empty())
          low[call_node.back()] = std::min(low[call_node.back()], low[v]);
      }
    }
  }
  return comp;
}

// Condensation reachability: row i gets bit j iff component j is reachable
// from component i (i.e. j >= i in the cell order).
std::vector<std::vector<std::uint64_t>> condensation_reach(
    const std::vector<std::vector<Elt>>& adj,
    const std::vector<std::uint32_t>& comp, std::uint32_t count) {
  std::size_t words = (count + 63) / 64;
  std::vector<std::vector<std::uint64_t>> reach(
      count, std::vector<std::uint64_t>(words, 0));
  for (std::uint32_t c = 0; c < count; ++c) reach[c][c >> 6] |= 1ull << (c & 63);
  // Tarjan completion order is reverse topological: cross edges always point
  // to smaller component ids, so one pass in increasing id order suffices.
  std::vector<std::vector<std::uint32_t>> cedges(count);
  for (std::uint32_t v = 0; v < adj.size(); ++v)
    for (Elt w : adj[v])
      if (comp[v] != comp[w]) cedges[comp[v]].push_back(comp[w]);
  for (std::uint32_t c = 0; c < count; ++c) {
    auto& e = cedges[c];
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    for (std::uint32_t d : e) {
      assert(d < c);
      for (std::size_t w = 0; w < words; ++w) reach[c][w] |= reach[d][w];
    }
  }
  return reach;
}

bool reach_bit(const std::vector<std::vector<std::uint64_t>>& reach,
               std::uint32_t i, std::uint32_t j) {
  return (reach[i][j >> 6] >> (j & 63)) & 1ull;
}

// Renumber components with `order` (new id -> old id), remapping the
// reachability matrix accordingly.
void renumber(std::vector<std::uint32_t>& comp,
              std::vector<std::vector<std::uint64_t>>& reach,
              const std::vector<std::uint32_t>& order) {
  std::uint32_t count = static_cast<std::uint32_t>(order.size());
  std::vector<std::uint32_t> old_to_new(count);
  for (std::uint32_t i = 0; i < count; ++i) old_to_new[order[i]] = i;
  for (auto& c : comp) c = old_to_new[c];
  std::size_t words = (count + 63) / 64;
  std::vector<std::vector<std::uint64_t>> out(
      count, std::vector<std::uint64_t>(words, 0));
  for (std::uint32_t i = 0; i < count; ++i)
    for (std::uint32_t j = 0; j < count; ++j)
      if (reach_bit(reach, order[i], order[j]))
        out[i][j >> 6] |= 1ull << (j & 63);
  reach = std::move(out);
}

std::vector<std::vector<Elt>> collect_members(
    const std::vector<std::uint32_t>& comp, std::uint32_t count) {
  std::vector<std::vector<Elt>> cells(count);
  for (Elt x = 0; x < comp.size(); ++x) cells[comp[x]].push_back(x);
  return cells;
}

std::vector<std::uint32_t> order_by_min_element(
    const std::vector<std::vector<Elt>>& cells) {
  std::vector<std::uint32_t> order(cells.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return cells[a].front() < cells[b].front();
  });
  return order;
}

}  // namespace

bool CellDecomposition::two_leq(std::uint32_t i, std::uint32_t j) const {
  return reach_bit(two_reach, i, j);
}
bool CellDecomposition::left_leq(std::uint32_t i, std::uint32_t j) const {
  return reach_bit(left_reach, i, j);
}
bool CellDecomposition::right_leq(std::uint32_t i, std::uint32_t j) const {
  return reach_bit(right_reach, i, j);
}

std::vector<std::uint32_t> CellDecomposition::two_sided_successors(
    std::uint32_t j) const {
  std::vector<std::uint32_t> succ;
  std::uint32_t count = static_cast<std::uint32_t>(two_cells.size());
  for (std::uint32_t k = 0; k < count; ++k) {
    if (k == j || !two_leq(j, k)) continue;
    bool covering = true;
    for (std::uint32_t m = 0; m < count && covering; ++m)
      if (m != j && m != k && two_leq(j, m) && two_leq(m, k)) covering = false;
    if (covering) succ.push_back(k);
  }
  return succ;
}

std::vector<std::uint32_t> CellDecomposition::left_cells_in(
    std::uint32_t j) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t l = 0; l < left_cells.size(); ++l)
    if (two_id[left_cells[l].front()] == j) out.push_back(l);
  return out;
}

std::vector<std::uint32_t> CellDecomposition::right_cells_in(
    std::uint32_t j) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t r = 0; r < right_cells.size(); ++r)
    if (two_id[right_cells[r].front()] == j) out.push_back(r);
  return out;
}

std::vector<Elt> CellDecomposition::box(std::uint32_t left,
                                        std::uint32_t right) const {
  std::vector<Elt> out;
  for (Elt x : left_cells[left])
    if (right_id[x] == right) out.push_back(x);
  return out;
}

std::vector<std::uint64_t> CellDecomposition::downset_mask(
    std::uint32_t j) const {
  std::vector<std::uint64_t> mask((sys->size() + 63) / 64, 0);
  for (Elt x = 0; x < sys->size(); ++x)
    if (two_leq(two_id[x], j)) mask[x >> 6] |= 1ull << (x & 63);
  return mask;
}

CellDecomposition compute_cells(const CoxeterSystem& sys, const KLTable& table,
                                int threads, bool reverse_edge_order) {
  const std::uint32_t n = sys.size();
  CellDecomposition dec;
  dec.sys = &sys;
  dec.table = &table;

  // Edges w -> v whenever C_v appears in C_s C_w (left) or C_w C_s (right).
  std::vector<std::vector<Elt>> ladj(n), radj(n), uadj(n);
  for (Elt w = 0; w < n; ++w) {
    for (int si = 0; si < sys.rank(); ++si) {
      int s = reverse_edge_order ? sys.rank() - 1 - si : si;
      Gen g = static_cast<Gen>(s);
      if (!sys.is_descent(w, g, Side::Left)) {
        ladj[w].push_back(sys.left_mul(g, w));
        for (const MuEntry& me : table.mu_row(w))
          if (sys.is_descent(me.x, g, Side::Left)) ladj[w].push_back(me.x);
      }
      if (!sys.is_descent(w, g, Side::Right)) {
        radj[w].push_back(sys.right_mul(w, g));
        for (const MuEntry& me : table.mu_row(w))
          if (sys.is_descent(me.x, g, Side::Right)) radj[w].push_back(me.x);
      }
    }
    if (!reverse_edge_order) {
      auto dedup = [](std::vector<Elt>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
      };
      dedup(ladj[w]);
      dedup(radj[w]);
    }
    uadj[w].reserve(ladj[w].size() + radj[w].size());
    uadj[w].insert(uadj[w].end(), ladj[w].begin(), ladj[w].end());
    uadj[w].insert(uadj[w].end(), radj[w].begin(), radj[w].end());
  }

  std::uint32_t lcount = 0, rcount = 0, tcount = 0;
  dec.left_id = strongly_connected_components(ladj, lcount);
  dec.right_id = strongly_connected_components(radj, rcount);
  dec.two_id = strongly_connected_components(uadj, tcount);
  dec.left_reach = condensation_reach(ladj, dec.left_id, lcount);
  dec.right_reach = condensation_reach(radj, dec.right_id, rcount);
  dec.two_reach = condensation_reach(uadj, dec.two_id, tcount);

  dec.left_cells = collect_members(dec.left_id, lcount);
  dec.right_cells = collect_members(dec.right_id, rcount);
  dec.two_cells = collect_members(dec.two_id, tcount);

  // a-values per two-sided cell (restricted scan over the cell itself,
  // truncating supports to the cell's two-sided downset).
  std::vector<int> a_raw(tcount, 0);
  for (std::uint32_t j = 0; j < tcount; ++j) {
    std::vector<std::uint64_t> mask((n + 63) / 64, 0);
    for (Elt x = 0; x < n; ++x)
      if (reach_bit(dec.two_reach, dec.two_id[x], j))
        mask[x >> 6] |= 1ull << (x & 63);
    std::vector<int> per =
        cell_a_values(table, dec.two_cells[j], mask, threads);
    int a = per.front();
    for (int v : per)
      if (v != a)
        throw DomainError("internal error: a-function not constant on a "
                          "two-sided cell of " + sys.spec().str());
    if (a < 0)
      throw DomainError("internal error: undefined a-value on a cell");
    a_raw[j] = a;
  }

  // Deterministic ids: two-sided by (a, least element), one-sided by least
  // element.
  std::vector<std::uint32_t> torder(tcount);
  std::iota(torder.begin(), torder.end(), 0);
  std::sort(torder.begin(), torder.end(),
            [&](std::uint32_t x, std::uint32_t y) {
              if (a_raw[x] != a_raw[y]) return a_raw[x] < a_raw[y];
              return dec.two_cells[x].front() < dec.two_cells[y].front();
            });
  renumber(dec.two_id, dec.two_reach, torder);
  dec.two_cells = collect_members(dec.two_id, tcount);
  dec.a_values.resize(tcount);
  for (std::uint32_t i = 0; i < tcount; ++i) dec.a_values[i] = a_raw[torder[i]];

  renumber(dec.left_id, dec.left_reach, order_by_min_element(dec.left_cells));
  dec.left_cells = collect_members(dec.left_id, lcount);
  renumber(dec.right_id, dec.right_reach,
           order_by_min_element(dec.right_cells));
  dec.right_cells = collect_members(dec.right_id, rcount);

  return dec;
}

std::vector<Elt> h_cell(const CellDecomposition& dec, std::uint32_t left_cell) {
  const CoxeterSystem& sys = *dec.sys;
  std::vector<Elt> out;
  for (Elt x : dec.left_cells[left_cell])
    if (dec.left_id[sys.inverse(x)] == left_cell) out.push_back(x);
  assert(!out.empty());
  return out;
}

bool is_regular(const CellDecomposition& dec, std::uint32_t two_cell) {
  auto lefts = dec.left_cells_in(two_cell);
  for (std::size_t i = 0; i < lefts.size(); ++i)
    for (std::size_t j = i + 1; j < lefts.size(); ++j)
      if (dec.left_leq(lefts[i], lefts[j]) || dec.left_leq(lefts[j], lefts[i]))
        return false;
  auto rights = dec.right_cells_in(two_cell);
  for (std::size_t i = 0; i < rights.size(); ++i)
    for (std::size_t j = i + 1; j < rights.size(); ++j)
      if (dec.right_leq(rights[i], rights[j]) ||
          dec.right_leq(rights[j], rights[i]))
        return false;
  return true;
}

bool is_strongly_regular(const CellDecomposition& dec, std::uint32_t two_cell) {
  if (!is_regular(dec, two_cell)) return false;
  for (std::uint32_t l : dec.left_cells_in(two_cell))
    for (std::uint32_t r : dec.right_cells_in(two_cell))
      if (dec.box(l, r).size() != 1) return false;
  return true;
}

CellPredicateReport nice_report(const CellDecomposition& dec,
                                std::uint32_t two_cell) {
  const CoxeterSystem& sys = *dec.sys;
  CellPredicateReport rep;
  rep.two_cell = two_cell;
  rep.regular = is_regular(dec, two_cell);
  rep.strongly_regular = is_strongly_regular(dec, two_cell);

  auto lefts = dec.left_cells_in(two_cell);
  auto rights = dec.right_cells_in(two_cell);

  rep.box_bound_ok = true;
  rep.box_mixed_ok = true;
  for (std::uint32_t l : lefts) {
    bool saw1 = false, saw2 = false;
    for (std::uint32_t r : rights) {
      std::size_t sz = dec.box(l, r).size();
      if (sz > 2 && rep.box_bound_ok) {
        rep.box_bound_ok = false;
        rep.oversized_box = {l, r, sz};
      }
      if (sz == 1) saw1 = true;
      if (sz == 2) saw2 = true;
    }
    if (!(saw1 && saw2) && rep.box_mixed_ok) {
      rep.box_mixed_ok = false;
      rep.unmixed_left_cell = l;
    }
  }

  rep.parabolic_ok = false;
  for (std::uint32_t mask = 0; mask < (1u << sys.rank()); ++mask) {
    Elt w = sys.longest_element(mask);
    if (dec.two_id[w] == two_cell) {
      rep.parabolic_ok = true;
      rep.parabolic_witness = {mask, w};
      break;
    }
  }

  rep.nice = rep.box_bound_ok && rep.box_mixed_ok && rep.parabolic_ok;
  return rep;
}

}  // namespace cellkit

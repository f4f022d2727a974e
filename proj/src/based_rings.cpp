#include "cellkit/based_rings.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <set>

namespace cellkit {

namespace {

bool reach_bit(const std::vector<std::vector<std::uint64_t>>& reach,
               std::uint32_t i, std::uint32_t j) {
  return (reach[i][j >> 6] >> (j & 63)) & 1ull;
}

// Components + reachability of a small digraph by repeated squaring of the
// reachability bitsets (basis sizes stay tiny).
struct SmallPreorder {
  std::vector<std::uint32_t> comp;
  std::vector<std::vector<std::uint32_t>> cells;
  std::vector<std::vector<std::uint64_t>> reach;  // on components
};

SmallPreorder close_preorder(const std::vector<std::vector<std::uint32_t>>& adj) {
  std::size_t n = adj.size();
  std::size_t words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> r(n,
                                            std::vector<std::uint64_t>(words));
  for (std::size_t i = 0; i < n; ++i) {
    r[i][i >> 6] |= 1ull << (i & 63);
    for (std::uint32_t j : adj[i]) r[i][j >> 6] |= 1ull << (j & 63);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if ((r[i][j >> 6] >> (j & 63)) & 1ull)
          for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t add = r[j][w] & ~r[i][w];
            if (add) {
              r[i][w] |= add;
              changed = true;
            }
          }
  }

  SmallPreorder out;
  out.comp.assign(n, UINT32_MAX);
  std::uint32_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (out.comp[i] != UINT32_MAX) continue;
    for (std::size_t j = i; j < n; ++j)
      if (((r[i][j >> 6] >> (j & 63)) & 1ull) &&
          ((r[j][i >> 6] >> (i & 63)) & 1ull) && out.comp[j] == UINT32_MAX)
        out.comp[j] = count;
    ++count;
  }
  out.cells.resize(count);
  for (std::size_t i = 0; i < n; ++i)
    out.cells[out.comp[i]].push_back(static_cast<std::uint32_t>(i));
  std::size_t cwords = (count + 63) / 64;
  out.reach.assign(count, std::vector<std::uint64_t>(cwords, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((r[i][j >> 6] >> (j & 63)) & 1ull)
        out.reach[out.comp[i]][out.comp[j] >> 6] |= 1ull
                                                    << (out.comp[j] & 63);
  return out;
}

}  // namespace

BasedRing BasedRing::with_unit(std::vector<std::string> labels) {
  BasedRing r;
  r.labels = std::move(labels);
  std::size_t b = r.labels.size();
  r.tensor.assign(b * b * b, 0);
  for (std::size_t j = 0; j < b; ++j) {
    r.n(0, j, j) = 1;
    r.n(j, 0, j) = 1;
  }
  r.n(0, 0, 0) = 1;
  return r;
}

void BasedRing::validate() const {
  std::size_t b = basis_size();
  if (labels.empty() || tensor.size() != b * b * b)
    throw DomainError("based ring: malformed tensor");
  for (std::int64_t v : tensor)
    if (v < 0) throw DomainError("based ring: negative structure constant");
  for (std::size_t j = 0; j < b; ++j)
    for (std::size_t k = 0; k < b; ++k) {
      if (n(0, j, k) != (j == k ? 1 : 0))
        throw DomainError("based ring: unit fails on the left");
      if (n(j, 0, k) != (j == k ? 1 : 0))
        throw DomainError("based ring: unit fails on the right");
    }
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j)
      for (std::size_t k = 0; k < b; ++k)
        for (std::size_t l = 0; l < b; ++l) {
          std::int64_t lhs = 0, rhs = 0;
          for (std::size_t m = 0; m < b; ++m) {
            lhs += n(i, j, m) * n(m, k, l);
            rhs += n(j, k, m) * n(i, m, l);
          }
          if (lhs != rhs)
            throw DomainError("based ring: associativity fails at (" +
                              labels[i] + "," + labels[j] + "," + labels[k] +
                              ")");
        }
}

bool BasisCells::two_leq(std::uint32_t i, std::uint32_t j) const {
  return reach_bit(two_reach, i, j);
}

std::optional<std::uint32_t> BasisCells::top_cell() const {
  std::optional<std::uint32_t> top;
  for (std::uint32_t c = 0; c < two_cells.size(); ++c) {
    bool maximal = true;
    for (std::uint32_t d = 0; d < two_cells.size(); ++d)
      if (d != c && two_leq(c, d)) maximal = false;
    if (maximal) {
      if (top) return std::nullopt;
      top = c;
    }
  }
  return top;
}

BasisCells basis_cells(const BasedRing& ring) {
  std::size_t b = ring.basis_size();
  std::vector<std::vector<std::uint32_t>> ladj(b), radj(b), uadj(b);
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t s = 0; s < b; ++s)
      for (std::size_t j = 0; j < b; ++j) {
        if (ring.n(s, i, j) > 0) {  // a_j appears in a_s a_i: i <=_L j
          ladj[i].push_back(static_cast<std::uint32_t>(j));
          uadj[i].push_back(static_cast<std::uint32_t>(j));
        }
        if (ring.n(i, s, j) > 0) {  // a_j appears in a_i a_s: i <=_R j
          radj[i].push_back(static_cast<std::uint32_t>(j));
          uadj[i].push_back(static_cast<std::uint32_t>(j));
        }
      }

  BasisCells out;
  SmallPreorder l = close_preorder(ladj);
  SmallPreorder r = close_preorder(radj);
  SmallPreorder t = close_preorder(uadj);
  out.left_id = std::move(l.comp);
  out.left_cells = std::move(l.cells);
  out.left_reach = std::move(l.reach);
  out.right_id = std::move(r.comp);
  out.right_cells = std::move(r.cells);
  out.right_reach = std::move(r.reach);
  out.two_id = std::move(t.comp);
  out.two_cells = std::move(t.cells);
  out.two_reach = std::move(t.reach);
  return out;
}

BasedRing cell_quotient_ring(const CoxeterSystem& sys, const KLTable& table,
                             const CellDecomposition& dec,
                             std::uint32_t left_cell) {
  std::vector<Elt> h = h_cell(dec, left_cell);
  std::uint32_t j = dec.two_id[h.front()];
  if (!is_regular(dec, j))
    throw DomainError("cell quotient ring needs a regular two-sided cell");

  std::vector<std::string> labels{"e"};
  for (Elt x : h) labels.push_back(sys.label(x));
  BasedRing ring = BasedRing::with_unit(std::move(labels));

  std::vector<std::int32_t> pos(sys.size(), -1);
  for (std::size_t i = 0; i < h.size(); ++i)
    pos[h[i]] = static_cast<std::int32_t>(i) + 1;

  std::vector<std::uint64_t> mask = dec.downset_mask(j);
  ProductOptions opts;
  opts.support_mask = &mask;
  for (std::size_t a = 0; a < h.size(); ++a)
    for (std::size_t b = 0; b < h.size(); ++b) {
      CExpansion e = cbasis_product(table, h[a], h[b], opts);
      for (const auto& [z, coeff] : e) {
        if (dec.two_id[z] != j) continue;  // lower-cell terms drop out
        if (pos[z] < 0)
          throw DomainError("H-cell is not closed under the quotient "
                            "product: " + sys.label(h[a]) + " * " +
                            sys.label(h[b]) + " hits " + sys.label(z));
        long long c = coeff.eval_one();
        if (c < 0)
          throw DomainError("negative specialized structure constant");
        ring.n(a + 1, b + 1, static_cast<std::size_t>(pos[z])) = c;
      }
    }
  ring.validate();
  return ring;
}

namespace {

// Largest eigenvalue of a nonnegative matrix by power iteration on A + I
// (the shift removes period oscillation), deterministic all-ones start.
double nonneg_spectral_radius(const std::vector<std::int64_t>& m, int r) {
  if (r == 0) return 0.0;
  std::vector<long double> v(r, 1.0L), w(r);
  long double lambda = 0.0L;
  for (int it = 0; it < 20000; ++it) {
    for (int i = 0; i < r; ++i) {
      long double acc = v[i];  // + I
      for (int j = 0; j < r; ++j)
        acc += static_cast<long double>(m[i * r + j]) * v[j];
      w[i] = acc;
    }
    long double norm = 0.0L;
    for (int i = 0; i < r; ++i) norm = std::max(norm, std::fabs(w[i]));
    if (norm == 0.0L) return -1.0;  // nilpotent shift cannot happen: A+I >= I
    long double next = 0.0L;
    long double dot_vw = 0.0L, dot_vv = 0.0L;
    for (int i = 0; i < r; ++i) {
      dot_vw += v[i] * w[i];
      dot_vv += v[i] * v[i];
      w[i] /= norm;
    }
    next = dot_vw / dot_vv;
    bool settled = it > 64 && std::fabs(next - (lambda + 1.0L)) <
                                  1e-15L * std::max<long double>(1.0L, next);
    lambda = next - 1.0L;
    v = w;
    if (settled) break;
  }
  return static_cast<double>(lambda);
}

}  // namespace

double special_value(const BasedRing& ring) {
  std::size_t b = ring.basis_size();
  std::vector<std::int64_t> reg(b * b, 0);
  // column j of the regular action of sum_i b_i
  for (std::size_t j = 0; j < b; ++j)
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t k = 0; k < b; ++k)
        reg[k * b + j] += ring.n(i, j, k);
  return nonneg_spectral_radius(reg, static_cast<int>(b));
}

double module_sum_spectral_radius(const BasedModule& mod) {
  int r = mod.rank;
  std::vector<std::int64_t> sum(static_cast<std::size_t>(r) * r, 0);
  for (const auto& m : mod.action)
    for (int i = 0; i < r * r; ++i) sum[i] += m[i];
  return nonneg_spectral_radius(sum, r);
}

bool is_special(const BasedRing& ring, const BasedModule& mod,
                double rel_tol) {
  double rv = special_value(ring);
  double mv = module_sum_spectral_radius(mod);
  return std::fabs(rv - mv) <= rel_tol * std::max(1.0, std::fabs(rv));
}

namespace {

using Mat = std::vector<std::int64_t>;

Mat mat_mul(const Mat& a, const Mat& b, int r) {
  Mat c(static_cast<std::size_t>(r) * r, 0);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      std::int64_t aik = a[i * r + k];
      if (!aik) continue;
      for (int j = 0; j < r; ++j) c[i * r + j] += aik * b[k * r + j];
    }
  return c;
}

class ModuleSearch {
 public:
  ModuleSearch(const BasedRing& ring, int rank, std::int64_t bound)
      : ring_(ring),
        b_(ring.basis_size()),
        r_(rank),
        bound_(bound),
        assigned_(ring.basis_size()),
        has_(ring.basis_size(), false) {
    BasisCells cells = basis_cells(ring);
    auto top = cells.top_cell();
    if (!top)
      throw DomainError(
          "module enumeration needs a unique maximal basis cell (apex)");
    for (std::uint32_t i : cells.two_cells[*top]) top_members_.push_back(i);

    assigned_[0].assign(static_cast<std::size_t>(r_) * r_, 0);
    for (int i = 0; i < r_; ++i) assigned_[0][i * r_ + i] = 1;
    has_[0] = true;
  }

  void run(std::vector<Mat>& out_tuples, bool& hit_bound) {
    dfs(out_tuples, hit_bound);
  }

 private:
  // Verifies relation (i, j) if all of its operands are assigned.
  // Returns false on a definite violation.
  bool relation_ok(std::size_t i, std::size_t j) const {
    for (std::size_t k = 0; k < b_; ++k)
      if (ring_.n(i, j, k) != 0 && !has_[k]) return true;  // not decidable yet
    if (!has_[i] || !has_[j]) return true;
    Mat lhs = mat_mul(assigned_[i], assigned_[j], r_);
    Mat rhs(static_cast<std::size_t>(r_) * r_, 0);
    for (std::size_t k = 0; k < b_; ++k) {
      std::int64_t c = ring_.n(i, j, k);
      if (!c) continue;
      for (int t = 0; t < r_ * r_; ++t) rhs[t] += c * assigned_[k][t];
    }
    return lhs == rhs;
  }

  bool check_all_decidable() const {
    for (std::size_t i = 0; i < b_; ++i)
      for (std::size_t j = 0; j < b_; ++j)
        if (!relation_ok(i, j)) return false;
    return true;
  }

  // Attempts to solve a relation with exactly one unassigned target.
  // Returns (k, matrix) when relation (i, j) determines element k.
  bool propagate_one(std::size_t& out_k, Mat& out_m) const {
    for (std::size_t i = 0; i < b_; ++i) {
      if (!has_[i]) continue;
      for (std::size_t j = 0; j < b_; ++j) {
        if (!has_[j]) continue;
        std::size_t unk = b_;
        std::int64_t coeff = 0;
        bool multiple = false;
        for (std::size_t k = 0; k < b_; ++k) {
          if (ring_.n(i, j, k) == 0 || has_[k]) continue;
          if (unk != b_) {
            multiple = true;
            break;
          }
          unk = k;
          coeff = ring_.n(i, j, k);
        }
        if (multiple || unk == b_) continue;
        Mat m = mat_mul(assigned_[i], assigned_[j], r_);
        for (std::size_t k = 0; k < b_; ++k) {
          std::int64_t c = ring_.n(i, j, k);
          if (!c || k == unk) continue;
          for (int t = 0; t < r_ * r_; ++t) m[t] -= c * assigned_[k][t];
        }
        bool feasible = true;
        for (int t = 0; t < r_ * r_ && feasible; ++t) {
          if (m[t] < 0 || m[t] % coeff != 0) feasible = false;
        }
        if (!feasible) return false;  // signalled via out_k == b_
        for (int t = 0; t < r_ * r_; ++t) m[t] /= coeff;
        out_k = unk;
        out_m = std::move(m);
        return true;
      }
    }
    out_k = b_;
    return true;
  }

  bool entries_in_bound(const Mat& m) const {
    for (std::int64_t v : m)
      if (v < 0 || v > bound_) return false;
    return true;
  }

  void finish(std::vector<Mat>& out, bool& hit_bound) {
    // transitivity: the sum of all action matrices is entrywise positive
    Mat sum(static_cast<std::size_t>(r_) * r_, 0);
    for (std::size_t i = 0; i < b_; ++i)
      for (int t = 0; t < r_ * r_; ++t) sum[t] += assigned_[i][t];
    for (std::int64_t v : sum)
      if (v <= 0) return;
    // apex: every top-cell element acts by a nonzero matrix
    for (std::uint32_t i : top_members_) {
      bool nonzero = false;
      for (std::int64_t v : assigned_[i])
        if (v) nonzero = true;
      if (!nonzero) return;
    }
    Mat tuple;
    for (std::size_t i = 1; i < b_; ++i)
      tuple.insert(tuple.end(), assigned_[i].begin(), assigned_[i].end());
    for (std::size_t i = 1; i < b_; ++i)
      for (std::int64_t v : assigned_[i])
        if (v == bound_) hit_bound = true;
    out.push_back(std::move(tuple));
  }

  void dfs(std::vector<Mat>& out, bool& hit_bound) {
    std::size_t unk;
    Mat solved;
    if (!propagate_one(unk, solved)) return;  // infeasible propagation
    if (unk != b_) {
      if (!entries_in_bound(solved)) {
        // A determined matrix fell outside the search box: the result set
        // at this bound is not known to be complete.
        hit_bound = true;
        return;
      }
      assigned_[unk] = std::move(solved);
      has_[unk] = true;
      if (check_relations_with(unk)) dfs(out, hit_bound);
      has_[unk] = false;
      return;
    }
    std::size_t next = b_;
    for (std::size_t i = 1; i < b_; ++i)
      if (!has_[i]) {
        next = i;
        break;
      }
    if (next == b_) {
      if (check_all_decidable()) finish(out, hit_bound);
      return;
    }
    // Raw enumeration of the next action matrix.
    Mat m(static_cast<std::size_t>(r_) * r_, 0);
    for (;;) {
      assigned_[next] = m;
      has_[next] = true;
      if (check_relations_with(next)) dfs(out, hit_bound);
      has_[next] = false;
      // odometer
      int t = 0;
      for (; t < r_ * r_; ++t) {
        if (m[t] < bound_) {
          ++m[t];
          break;
        }
        m[t] = 0;
      }
      if (t == r_ * r_) break;
    }
  }

  // Checks every relation that involves `t` and is now fully decidable.
  bool check_relations_with(std::size_t t) {
    if (relations_involving_.empty()) {
      relations_involving_.resize(b_);
      for (std::size_t i = 0; i < b_; ++i)
        for (std::size_t j = 0; j < b_; ++j) {
          std::set<std::size_t> touched{i, j};
          for (std::size_t k = 0; k < b_; ++k)
            if (ring_.n(i, j, k) != 0) touched.insert(k);
          for (std::size_t k : touched)
            relations_involving_[k].emplace_back(i, j);
        }
    }
    for (auto [i, j] : relations_involving_[t])
      if (!relation_ok(i, j)) return false;
    return true;
  }

  const BasedRing& ring_;
  std::size_t b_;
  int r_;
  std::int64_t bound_;
  std::vector<Mat> assigned_;
  std::vector<bool> has_;
  std::vector<std::uint32_t> top_members_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>>
      relations_involving_;
};

// Lexicographically least tuple under simultaneous permutation.
Mat canonical_tuple(const Mat& tuple, int r, std::size_t nmats) {
  std::vector<int> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  Mat best = tuple;
  std::vector<int> p = perm;
  Mat cand(tuple.size());
  while (std::next_permutation(p.begin(), p.end())) {
    for (std::size_t m = 0; m < nmats; ++m)
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          cand[m * r * r + i * r + j] =
              tuple[m * r * r + static_cast<std::size_t>(p[i]) * r + p[j]];
    if (cand < best) best = cand;
  }
  return best;
}

}  // namespace

ModuleSearchResult enumerate_transitive_modules(
    const BasedRing& ring, int max_rank,
    std::optional<std::int64_t> entry_bound) {
  ring.validate();
  if (max_rank < 1 || max_rank > 10)
    throw DomainError("module enumeration supports ranks 1..10");
  if (ring.basis_size() > 25)
    throw DomainError("module enumeration supports basis sizes up to 25");

  ModuleSearchResult result;
  result.entry_bound =
      entry_bound.value_or(static_cast<std::int64_t>(
          std::ceil(special_value(ring))) + 1);
  if (result.entry_bound < 1)
    throw DomainError("entry bound must be at least 1");

  bool hit_bound = false;
  for (int r = 1; r <= max_rank; ++r) {
    std::vector<Mat> raw;
    ModuleSearch search(ring, r, result.entry_bound);
    search.run(raw, hit_bound);
    std::set<Mat> canon;
    std::size_t nmats = ring.basis_size() - 1;
    for (const Mat& t : raw) canon.insert(canonical_tuple(t, r, nmats));
    for (const Mat& t : canon) {
      BasedModule mod;
      mod.rank = r;
      mod.action.resize(ring.basis_size());
      mod.action[0].assign(static_cast<std::size_t>(r) * r, 0);
      for (int i = 0; i < r; ++i) mod.action[0][i * r + i] = 1;
      for (std::size_t m = 0; m < nmats; ++m)
        mod.action[m + 1] =
            Mat(t.begin() + static_cast<std::ptrdiff_t>(m) * r * r,
                t.begin() + static_cast<std::ptrdiff_t>(m + 1) * r * r);
      result.modules.push_back(std::move(mod));
    }
  }
  if (hit_bound) {
    result.complete = false;
    result.warnings.push_back(
        "an accepted module has an entry at the search bound " +
        std::to_string(result.entry_bound) +
        "; larger modules may exist beyond the searched box");
  }
  return result;
}

namespace {

// Dihedral small-quotient basis bookkeeping: index 0 is the unit, then the
// elements of I2(n) other than e and w0 in ShortLex order: (first, len) ->
// 2*(len-1) + first + 1.
struct DihedralBasis {
  int n;
  explicit DihedralBasis(int order) : n(order) {}
  std::size_t size() const { return 2 * static_cast<std::size_t>(n) - 1; }
  std::size_t index(int first, int len) const {
    return 2 * static_cast<std::size_t>(len - 1) + first + 1;
  }
  std::string label(std::size_t idx) const {
    if (idx == 0) return "e";
    int first = static_cast<int>((idx - 1) & 1);
    int len = static_cast<int>((idx - 1) / 2) + 1;
    std::string out;
    for (int i = 0; i < len; ++i)
      out.push_back(static_cast<char>('1' + ((first + i) & 1)));
    return out;
  }
};

BasedRing dihedral_ring_formulas(int n) {
  DihedralBasis basis(n);
  std::size_t b = basis.size();

  // Left multiplication by a generator on the quotient basis, from the
  // closed multiplication table of the quotient.
  auto mult_gen = [&](int g, const std::vector<std::int64_t>& in) {
    std::vector<std::int64_t> out(b, 0);
    for (std::size_t idx = 1; idx < b; ++idx) {
      std::int64_t c = in[idx];
      if (!c) continue;
      int first = static_cast<int>((idx - 1) & 1);
      int len = static_cast<int>((idx - 1) / 2) + 1;
      if (first == g) {
        out[idx] += 2 * c;  // theta_w + theta_w when sw < w
      } else if (len == 1) {
        out[basis.index(g, 2)] += c;  // theta_s theta_t = theta_st
      } else if (len == n - 1) {
        out[basis.index(g, n - 2)] += c;  // theta_s theta_{s w0} = theta_{tsw0}
      } else {
        out[basis.index(g, len + 1)] += c;            // theta_{sw}
        out[basis.index(1 - first, len - 1)] += c;    // theta_{tw}
      }
    }
    if (in[0])
      out[basis.index(g, 1)] += in[0];  // theta_s theta_e = theta_s
    return out;
  };

  // Action matrices of every basis element by induction on the word.
  std::vector<std::vector<std::int64_t>> action(b);
  {
    std::vector<std::int64_t> unit(b, 0);
    action[0].assign(b * b, 0);
    for (std::size_t i = 0; i < b; ++i) action[0][i * b + i] = 1;
    for (std::size_t idx = 1; idx < b; ++idx) {
      int first = static_cast<int>((idx - 1) & 1);
      int len = static_cast<int>((idx - 1) / 2) + 1;
      action[idx].assign(b * b, 0);
      for (std::size_t col = 0; col < b; ++col) {
        std::vector<std::int64_t> e(b, 0);
        e[col] = 1;
        std::vector<std::int64_t> res;
        if (len == 1) {
          res = mult_gen(first, e);
        } else {
          // theta_x = theta_g theta_{x'} - theta_{x''}, x = g x'
          std::size_t xp = basis.index(1 - first, len - 1);
          std::vector<std::int64_t> tmp(b, 0);
          for (std::size_t k = 0; k < b; ++k) tmp[k] = action[xp][k * b + col];
          res = mult_gen(first, tmp);
          if (len >= 3) {
            std::size_t xpp = basis.index(first, len - 2);
            for (std::size_t k = 0; k < b; ++k)
              res[k] -= action[xpp][k * b + col];
          }
        }
        for (std::size_t k = 0; k < b; ++k) action[idx][k * b + col] = res[k];
      }
    }
  }

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < b; ++i) labels.push_back(basis.label(i));
  BasedRing ring = BasedRing::with_unit(std::move(labels));
  for (std::size_t i = 1; i < b; ++i)
    for (std::size_t j = 1; j < b; ++j)
      for (std::size_t k = 0; k < b; ++k) {
        std::int64_t c = action[i][k * b + j];
        if (c < 0)
          throw DomainError("dihedral quotient: negative constant");
        ring.n(i, j, k) = c;
      }
  ring.validate();
  return ring;
}

BasedRing dihedral_ring_hecke(int n) {
  CoxeterSystem sys("I2(" + std::to_string(n) + ")");
  KLTable table = KLTable::build(sys);
  DihedralBasis basis(n);
  std::size_t b = basis.size();

  std::vector<Elt> elt_of(b, 0);
  std::vector<std::int32_t> idx_of(sys.size(), -1);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < b; ++i) {
    labels.push_back(basis.label(i));
    elt_of[i] = sys.element_from_label(labels.back());
    idx_of[elt_of[i]] = static_cast<std::int32_t>(i);
  }
  BasedRing ring = BasedRing::with_unit(std::move(labels));

  for (std::size_t i = 1; i < b; ++i)
    for (std::size_t j = 1; j < b; ++j) {
      CExpansion e = cbasis_product(table, elt_of[i], elt_of[j]);
      for (const auto& [z, h] : e) {
        if (z == sys.w0()) continue;  // quotient truncation
        std::int32_t k = idx_of[z];
        if (k < 0) throw DomainError("dihedral quotient: unexpected support");
        ring.n(i, j, static_cast<std::size_t>(k)) = h.eval_one();
      }
    }
  ring.validate();
  return ring;
}

}  // namespace

BasedRing dihedral_small_quotient_ring(int n, DihedralRoute route) {
  if (n < 3) throw DomainError("dihedral order must be at least 3");
  return route == DihedralRoute::Formulas ? dihedral_ring_formulas(n)
                                          : dihedral_ring_hecke(n);
}

BasedRing dihedral_small_quotient_ring(int n) {
  return dihedral_small_quotient_ring(
      n, n % 2 == 1 ? DihedralRoute::Formulas : DihedralRoute::HeckeOracle);
}

}  // namespace cellkit

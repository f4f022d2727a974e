#include "cellkit/hecke.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <thread>
#include <unordered_map>

namespace cellkit {

namespace {

constexpr std::uint64_t kMaxKLOrder = 20000;

inline bool mask_has(const std::vector<std::uint64_t>* mask, Elt x) {
  if (!mask) return true;
  return ((*mask)[x >> 6] >> (x & 63)) & 1ull;
}

template <class F>
void for_each_leq(const CoxeterSystem& sys, Elt y, F&& f) {
  const std::uint64_t* row = sys.bruhat_row(y);
  std::size_t words = sys.bruhat_words_per_row();
  std::uint32_t ordinal = 0;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t bits = row[w];
    while (bits) {
      int b = __builtin_ctzll(bits);
      bits &= bits - 1;
      f(static_cast<Elt>((w << 6) + static_cast<std::size_t>(b)), ordinal++);
    }
  }
}

class PolyPool {
 public:
  PolyPool() {
    ids_.reserve(1024);
    intern(Poly());      // id 0
    intern(Poly(1));     // id 1
  }
  std::uint32_t intern(const Poly& p) {
    auto it = ids_.find(p);
    if (it != ids_.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(pool_.size());
    pool_.push_back(p);
    ids_.emplace(p, id);
    return id;
  }
  const Poly& poly(std::uint32_t id) const { return pool_[id]; }
  std::vector<Poly> take() { return std::move(pool_); }

 private:
  std::vector<Poly> pool_;
  std::unordered_map<Poly, std::uint32_t, PolyHash> ids_;
};

}  // namespace

KLTable KLTable::build(const CoxeterSystem& sys) {
  if (sys.size() > kMaxKLOrder)
    throw DomainError(
        "KL table for " + sys.spec().str() + " needs " +
        std::to_string(sys.size()) + " rows; the implementation is capped at " +
        std::to_string(kMaxKLOrder) +
        " (roughly " + std::to_string(sys.size() / 1000 * sys.size() / 2000) +
        " MB of pair storage would be required)");

  KLTable t(sys);
  const std::uint32_t n = sys.size();
  t.rows_.resize(n);
  t.mu_.resize(n);

  PolyPool pool;
  std::vector<Poly> cur(n);                 // scratch row, indexed by x
  std::vector<std::uint32_t> dense(n, 0);   // poly ids of row sy, by x

  t.rows_[0] = {1u};  // P_{e,e} = 1
  std::vector<Elt> dense_touched;

  for (Elt y = 1; y < n; ++y) {
    Gen s = static_cast<Gen>(__builtin_ctz(sys.descent_mask(y, Side::Left)));
    Elt sy = sys.left_mul(s, y);

    // Dense view of row sy.
    dense_touched.clear();
    for_each_leq(sys, sy, [&](Elt x, std::uint32_t ord) {
      dense[x] = t.rows_[sy][ord];
      dense_touched.push_back(x);
    });

    // P_{x,y} = P_{sx,sy} + q P_{x,sy} for x <= y with sx < x.
    std::vector<Elt> phase1;
    std::vector<Elt> phase3;
    for_each_leq(sys, y, [&](Elt x, std::uint32_t) {
      Elt sx = sys.left_mul(s, x);
      if (sys.length(sx) < sys.length(x)) {
        Poly p = pool.poly(dense[sx]);
        p.add_scaled(pool.poly(dense[x]), 1, 1);
        cur[x] = std::move(p);
        phase1.push_back(x);
      } else {
        phase3.push_back(x);
      }
    });

    // Corrections: -mu(z,sy) q^{(l(y)-l(z))/2} P_{x,z} over sz < z.
    for (const MuEntry& me : t.mu_[sy]) {
      Elt z = me.x;
      if (!sys.is_descent(z, s, Side::Left)) continue;
      int k = (sys.length(y) - sys.length(z)) / 2;
      for_each_leq(sys, z, [&](Elt x, std::uint32_t ord) {
        Elt sx = sys.left_mul(s, x);
        if (sys.length(sx) < sys.length(x))
          cur[x].add_scaled(pool.poly(t.rows_[z][ord]), -me.mu, k);
      });
    }

    // P_{x,y} = P_{sx,y} when sx > x.
    for (Elt x : phase3) cur[x] = cur[sys.left_mul(s, x)];

    // Collect the row, extract mu, check the degree bound.
    std::vector<std::uint32_t>& row = t.rows_[y];
    for_each_leq(sys, y, [&](Elt x, std::uint32_t) {
      const Poly& p = cur[x];
      if (x != y) {
        int bound = (sys.length(y) - sys.length(x) - 1) / 2;
        if (p.degree() > bound)
          throw DomainError("internal error: degree bound violated at (" +
                            sys.label(x) + ", " + sys.label(y) + ")");
        if ((sys.length(y) - sys.length(x)) % 2 == 1) {
          long long m = p.coeff(bound);
          if (m < 0)
            throw DomainError("internal error: negative mu at (" +
                              sys.label(x) + ", " + sys.label(y) + ")");
          if (m > 0) t.mu_[y].push_back({x, m});
        }
      } else if (!p.is_one() && y != 0) {
        throw DomainError("internal error: P_{y,y} != 1 at " + sys.label(y));
      }
      row.push_back(pool.intern(p));
    });

    for (Elt x : phase1) cur[x] = Poly();
    for (Elt x : phase3) cur[x] = Poly();
    for (Elt x : dense_touched) dense[x] = 0;
  }

  t.pool_ = pool.take();
  return t;
}

KLTable KLTable::from_rows(const CoxeterSystem& sys,
                           std::vector<std::vector<std::uint32_t>> rows,
                           std::vector<Poly> pool) {
  KLTable t(sys);
  t.pool_ = std::move(pool);
  t.rows_ = std::move(rows);
  if (t.rows_.size() != sys.size())
    throw DomainError("cache row count does not match the group order");
  for (Elt y = 0; y < sys.size(); ++y) {
    std::size_t expect = 0;
    for_each_leq(sys, y, [&](Elt, std::uint32_t) { ++expect; });
    if (t.rows_[y].size() != expect)
      throw DomainError("cache row " + std::to_string(y) +
                        " has the wrong length");
    for (std::uint32_t id : t.rows_[y])
      if (id >= t.pool_.size())
        throw DomainError("cache references a missing polynomial");
  }
  t.mu_.assign(sys.size(), {});
  t.fill_mu_from_rows();
  return t;
}

void KLTable::fill_mu_from_rows() {
  const CoxeterSystem& sys = *sys_;
  for (Elt y = 0; y < sys.size(); ++y) {
    for_each_leq(sys, y, [&](Elt x, std::uint32_t ord) {
      if (x == y) return;
      if ((sys.length(y) - sys.length(x)) % 2 == 0) return;
      const Poly& p = pool_[rows_[y][ord]];
      int bound = (sys.length(y) - sys.length(x) - 1) / 2;
      long long m = p.coeff(bound);
      if (m > 0) mu_[y].push_back({x, m});
    });
  }
}

Poly KLTable::kl_poly(Elt x, Elt y) const {
  if (x == y) return Poly(1);
  if (!sys_->bruhat_leq(x, y)) return Poly();
  const std::uint64_t* row = sys_->bruhat_row(y);
  std::uint32_t ord = 0;
  for (Elt w = 0; w < (x >> 6); ++w)
    ord += static_cast<std::uint32_t>(__builtin_popcountll(row[w]));
  ord += static_cast<std::uint32_t>(
      __builtin_popcountll(row[x >> 6] & ((1ull << (x & 63)) - 1)));
  return pool_[rows_[y][ord]];
}

std::int64_t KLTable::mu(Elt x, Elt y) const {
  const auto& row = mu_[y];
  auto it = std::lower_bound(
      row.begin(), row.end(), x,
      [](const MuEntry& e, Elt v) { return e.x < v; });
  if (it != row.end() && it->x == x) return it->mu;
  return 0;
}

namespace {

// expansion as a sorted flat vector, the workhorse representation
using FlatExp = std::vector<std::pair<Elt, Laurent>>;

void flat_add_scaled(FlatExp& acc, const FlatExp& other, long long c) {
  if (c == 0 || other.empty()) return;
  FlatExp merged;
  merged.reserve(acc.size() + other.size());
  std::size_t i = 0, j = 0;
  while (i < acc.size() || j < other.size()) {
    if (j == other.size() ||
        (i < acc.size() && acc[i].first < other[j].first)) {
      merged.push_back(std::move(acc[i++]));
    } else if (i == acc.size() || other[j].first < acc[i].first) {
      Laurent l;
      l.add_scaled(other[j].second, c);
      merged.emplace_back(other[j].first, std::move(l));
      ++j;
    } else {
      Laurent l = std::move(acc[i].second);
      l.add_scaled(other[j].second, c);
      if (!l.is_zero()) merged.emplace_back(acc[i].first, std::move(l));
      ++i;
      ++j;
    }
  }
  acc = std::move(merged);
}

class Expander {
 public:
  Expander(const KLTable& table, Elt y, const ProductOptions& opts)
      : t_(table), sys_(table.system()), y_(y), opts_(opts) {}

  const FlatExp& expand(Elt u) {
    auto it = memo_.find(u);
    if (it != memo_.end()) return it->second;
    FlatExp e;
    if (u == 0) {
      if (mask_has(opts_.support_mask, y_))
        e.emplace_back(y_, Laurent(1));
    } else {
      Gen s = opts_.chooser ? opts_.chooser(sys_, u)
                            : static_cast<Gen>(__builtin_ctz(
                                  sys_.descent_mask(u, Side::Left)));
      if (!sys_.is_descent(u, s, Side::Left))
        throw DomainError("product chooser returned a non-descent");
      Elt u2 = sys_.left_mul(s, u);
      const FlatExp& base = expand(u2);
      e = apply_left_gen(s, base);
      for (const MuEntry& me : t_.mu_row(u2)) {
        if (!sys_.is_descent(me.x, s, Side::Left)) continue;
        // Copy: expand() may invalidate references into the memo.
        FlatExp sub = expand(me.x);
        flat_add_scaled(e, sub, -me.mu);
      }
    }
    return memo_.emplace(u, std::move(e)).first->second;
  }

 private:
  FlatExp apply_left_gen(Gen s, const FlatExp& in) {
    std::map<Elt, Laurent> acc;
    Laurent vpv = Laurent::v_plus_vinv();
    for (const auto& [w, h] : in) {
      if (sys_.is_descent(w, s, Side::Left)) {
        acc[w].add_scaled(h * vpv, 1);
      } else {
        Elt sw = sys_.left_mul(s, w);
        if (mask_has(opts_.support_mask, sw)) acc[sw].add_scaled(h, 1);
        for (const MuEntry& me : t_.mu_row(w)) {
          if (!sys_.is_descent(me.x, s, Side::Left)) continue;
          if (mask_has(opts_.support_mask, me.x))
            acc[me.x].add_scaled(h, me.mu);
        }
      }
    }
    FlatExp out;
    out.reserve(acc.size());
    for (auto& [w, h] : acc)
      if (!h.is_zero()) out.emplace_back(w, std::move(h));
    return out;
  }

  const KLTable& t_;
  const CoxeterSystem& sys_;
  Elt y_;
  const ProductOptions& opts_;
  std::unordered_map<Elt, FlatExp> memo_;
};

CExpansion to_map(const FlatExp& e) {
  CExpansion out;
  for (const auto& [w, h] : e) out.emplace(w, h);
  return out;
}

}  // namespace

CExpansion cbasis_product_generator(const KLTable& table, Gen s, Elt w) {
  const CoxeterSystem& sys = table.system();
  CExpansion out;
  if (sys.is_descent(w, s, Side::Left)) {
    out.emplace(w, Laurent::v_plus_vinv());
    return out;
  }
  out.emplace(sys.left_mul(s, w), Laurent(1));
  for (const MuEntry& me : table.mu_row(w))
    if (sys.is_descent(me.x, s, Side::Left))
      out.emplace(me.x, Laurent(me.mu));
  return out;
}

CExpansion cbasis_product_generator_right(const KLTable& table, Elt w, Gen s) {
  const CoxeterSystem& sys = table.system();
  CExpansion out;
  if (sys.is_descent(w, s, Side::Right)) {
    out.emplace(w, Laurent::v_plus_vinv());
    return out;
  }
  out.emplace(sys.right_mul(w, s), Laurent(1));
  for (const MuEntry& me : table.mu_row(w))
    if (sys.is_descent(me.x, s, Side::Right))
      out.emplace(me.x, Laurent(me.mu));
  return out;
}

CExpansion cbasis_product(const KLTable& table, Elt x, Elt y) {
  ProductOptions opts;
  return cbasis_product(table, x, y, opts);
}

CExpansion cbasis_product(const KLTable& table, Elt x, Elt y,
                          const ProductOptions& opts) {
  Expander exp(table, y, opts);
  return to_map(exp.expand(x));
}

std::vector<int> cell_a_values(const KLTable& table,
                               std::span<const Elt> members,
                               const std::vector<std::uint64_t>& downset_mask,
                               int threads) {
  const CoxeterSystem& sys = table.system();
  std::vector<std::int32_t> pos(sys.size(), -1);
  for (std::size_t i = 0; i < members.size(); ++i)
    pos[members[i]] = static_cast<std::int32_t>(i);

  int nthreads = std::max(1, std::min<int>(threads,
                                           static_cast<int>(members.size())));
  std::vector<std::vector<int>> partial(
      nthreads, std::vector<int>(members.size(), Laurent::kNegInfinity));
  std::atomic<std::size_t> next{0};

  auto worker = [&](int tid) {
    ProductOptions opts;
    opts.support_mask = &downset_mask;
    for (;;) {
      std::size_t j = next.fetch_add(1);
      if (j >= members.size()) break;
      Elt y = members[j];
      Expander exp(table, y, opts);
      for (Elt x : members) {
        const FlatExp& e = exp.expand(x);
        for (const auto& [z, h] : e) {
          std::int32_t p = pos[z];
          if (p >= 0) partial[tid][p] = std::max(partial[tid][p], h.max_exp());
        }
      }
    }
  };

  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int tid = 0; tid < nthreads; ++tid) pool.emplace_back(worker, tid);
    for (auto& th : pool) th.join();
  }

  std::vector<int> amax(members.size(), Laurent::kNegInfinity);
  for (const auto& p : partial)
    for (std::size_t i = 0; i < amax.size(); ++i)
      amax[i] = std::max(amax[i], p[i]);
  return amax;
}

int a_value_full_scan(const KLTable& table, Elt z) {
  const CoxeterSystem& sys = table.system();
  if (sys.size() > 400)
    throw DomainError("full a-function scan is restricted to |W| <= 400");
  int amax = Laurent::kNegInfinity;
  ProductOptions opts;
  for (Elt y = 0; y < sys.size(); ++y) {
    Expander exp(table, y, opts);
    for (Elt x = 0; x < sys.size(); ++x) {
      const FlatExp& e = exp.expand(x);
      auto it = std::lower_bound(
          e.begin(), e.end(), z,
          [](const std::pair<Elt, Laurent>& p, Elt v) { return p.first < v; });
      if (it != e.end() && it->first == z)
        amax = std::max(amax, it->second.max_exp());
    }
  }
  return amax;
}

Poly kl_polynomial_single(const CoxeterSystem& sys, Elt x, Elt y) {
  std::unordered_map<std::uint64_t, Poly> memo;
  std::function<Poly(Elt, Elt)> rec = [&](Elt a, Elt b) -> Poly {
    if (a == b) return Poly(1);
    if (!sys.bruhat_leq(a, b)) return Poly();
    std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    Gen s = static_cast<Gen>(__builtin_ctz(sys.descent_mask(b, Side::Left)));
    Elt sb = sys.left_mul(s, b);
    Elt sa = sys.left_mul(s, a);
    Poly result;
    if (sys.length(sa) < sys.length(a)) {
      result = rec(sa, sb);
      result.add_scaled(rec(a, sb), 1, 1);
      for (Elt z = 0; z < sys.size(); ++z) {
        if (z == sb || !sys.bruhat_leq(a, z) || !sys.bruhat_leq(z, sb))
          continue;
        if (!sys.is_descent(z, s, Side::Left)) continue;
        if ((sys.length(sb) - sys.length(z)) % 2 == 0) continue;
        Poly pzb = rec(z, sb);
        int bound = (sys.length(sb) - sys.length(z) - 1) / 2;
        long long m = pzb.coeff(bound);
        if (m == 0) continue;
        result.add_scaled(rec(a, z), -m, (sys.length(b) - sys.length(z)) / 2);
      }
    } else {
      result = rec(sa, b);
    }
    memo.emplace(key, result);
    return result;
  };
  return rec(x, y);
}

}  // namespace cellkit

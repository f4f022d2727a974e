#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cellkit/coxeter.hpp"
#include "cellkit/poly.hpp"

namespace cellkit {

// Normalization identifier for cached tables.  P_{x,y} lives in Z[q] with
// P_{y,y} = 1 and deg P_{x,y} <= (l(y)-l(x)-1)/2; structure constants live
// in Z[v, v^{-1}] with C_s C_s = (v + v^{-1}) C_s.  The longest element of
// the whole group then satisfies a(w0) = l(w0), which is the empirical pin
// for this choice of conventions.
inline constexpr const char* kKLConventionVersion = "kl-q.v1";

struct MuEntry {
  Elt x;
  std::int64_t mu;
};

// All Kazhdan-Lusztig polynomials and mu-coefficients of a finite system.
class KLTable {
 public:
  static KLTable build(const CoxeterSystem& sys);

  const CoxeterSystem& system() const { return *sys_; }
  const std::string& convention_version() const { return convention_; }

  // P_{x,y}; the zero polynomial when x is not Bruhat-below y.
  Poly kl_poly(Elt x, Elt y) const;
  // mu(x,y) for x < y (top coefficient of P_{x,y} at the degree bound).
  std::int64_t mu(Elt x, Elt y) const;
  const std::vector<MuEntry>& mu_row(Elt y) const { return mu_[y]; }

  std::size_t pool_size() const { return pool_.size(); }
  const Poly& pool_poly(std::uint32_t id) const { return pool_[id]; }
  const std::vector<std::uint32_t>& row_ids(Elt y) const { return rows_[y]; }

  // Rebuilds a table from raw rows (cache loading); validates invariants.
  static KLTable from_rows(const CoxeterSystem& sys,
                           std::vector<std::vector<std::uint32_t>> rows,
                           std::vector<Poly> pool);

 private:
  explicit KLTable(const CoxeterSystem& sys) : sys_(&sys) {}
  void fill_mu_from_rows();

  const CoxeterSystem* sys_ = nullptr;
  std::string convention_ = kKLConventionVersion;
  std::vector<Poly> pool_;
  std::vector<std::vector<std::uint32_t>> rows_;  // poly ids, x ascending
  std::vector<std::vector<MuEntry>> mu_;
};

// Expansion of a product in the canonical basis: element -> coefficient.
using CExpansion = std::map<Elt, Laurent>;

struct ProductOptions {
  // Picks the generator to strip from x at each step; defaults to the least
  // left descent (the first letter of the canonical word).  Any left
  // descent yields the same product, which tests exercise directly.
  std::function<Gen(const CoxeterSystem&, Elt)> chooser;
  // When set, coefficients are only tracked for elements whose bit is set.
  // Exact for every retained element provided the mask is a downset for the
  // two-sided order (dropped terms can never multiply back down into it).
  const std::vector<std::uint64_t>* support_mask = nullptr;
};

// C_s * C_w.
CExpansion cbasis_product_generator(const KLTable& table, Gen s, Elt w);
// C_w * C_s.
CExpansion cbasis_product_generator_right(const KLTable& table, Elt w, Gen s);
// C_x * C_y = sum_z h_{x,y,z} C_z.
CExpansion cbasis_product(const KLTable& table, Elt x, Elt y);
CExpansion cbasis_product(const KLTable& table, Elt x, Elt y,
                          const ProductOptions& opts);

// For every z in `members` (a two-sided cell), the maximum v-exponent of
// h_{x,y,z} over x, y in `members`.  `downset_mask` must contain exactly
// the elements of two-sided cells <= the cell of `members`.
std::vector<int> cell_a_values(const KLTable& table,
                               std::span<const Elt> members,
                               const std::vector<std::uint64_t>& downset_mask,
                               int threads = 1);

// Lusztig's a-function straight from its definition: the maximum v-exponent
// of h_{x,y,z} over all x, y in the group.  Quadratic in |W|; guarded to
// small groups and used to validate the restricted scan above.
int a_value_full_scan(const KLTable& table, Elt z);

// Single P_{x,y} by the top-down recursion with its own memo; an
// independent path from the row-by-row table builder.
Poly kl_polynomial_single(const CoxeterSystem& sys, Elt x, Elt y);

}  // namespace cellkit

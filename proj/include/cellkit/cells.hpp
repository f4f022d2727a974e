#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cellkit/hecke.hpp"

namespace cellkit {

// Left/right/two-sided cells of a finite Coxeter system, the partial order
// on two-sided cells, and the a-value of every two-sided cell.
//
// Cell ids are deterministic: two-sided cells are numbered by
// (a-value, least element index); left and right cells by least element
// index.  Every member list is sorted by element index.
struct CellDecomposition {
  const CoxeterSystem* sys = nullptr;
  const KLTable* table = nullptr;

  std::vector<std::uint32_t> left_id, right_id, two_id;  // per element
  std::vector<std::vector<Elt>> left_cells, right_cells, two_cells;
  std::vector<int> a_values;  // per two-sided cell

  // leq(i, j) == true iff cell i is below cell j in the respective order.
  bool two_leq(std::uint32_t i, std::uint32_t j) const;
  bool left_leq(std::uint32_t i, std::uint32_t j) const;
  bool right_leq(std::uint32_t i, std::uint32_t j) const;

  // Immediate successors of a two-sided cell (covering relation).
  std::vector<std::uint32_t> two_sided_successors(std::uint32_t j) const;

  // Left and right cells whose members lie in two-sided cell j, ascending.
  std::vector<std::uint32_t> left_cells_in(std::uint32_t j) const;
  std::vector<std::uint32_t> right_cells_in(std::uint32_t j) const;

  std::vector<Elt> box(std::uint32_t left, std::uint32_t right) const;

  // Bitmask (one bit per element) of the union of two-sided cells <= j.
  std::vector<std::uint64_t> downset_mask(std::uint32_t j) const;

  // reachability rows, bit k of row i set iff cell k >= cell i
  std::vector<std::vector<std::uint64_t>> two_reach, left_reach, right_reach;
};

// `reverse_edge_order` feeds the component search its edges in the opposite
// enumeration order; the resulting partition must not change (tests use it).
CellDecomposition compute_cells(const CoxeterSystem& sys, const KLTable& table,
                                int threads = 1,
                                bool reverse_edge_order = false);

// H = L intersect L^{-1}: the members of left cell L whose inverses also
// lie in L.  Nonempty and closed under inversion.
std::vector<Elt> h_cell(const CellDecomposition& dec, std::uint32_t left_cell);

bool is_regular(const CellDecomposition& dec, std::uint32_t two_cell);
bool is_strongly_regular(const CellDecomposition& dec, std::uint32_t two_cell);

// The three clauses of the "nice" predicate, with witnesses.
struct CellPredicateReport {
  std::uint32_t two_cell = 0;
  bool regular = false;
  bool strongly_regular = false;
  bool nice = false;

  bool box_bound_ok = false;     // every |L cap R| <= 2
  bool box_mixed_ok = false;     // every L meets boxes of size 1 and 2
  bool parabolic_ok = false;     // contains a parabolic longest element

  // witness for a failed bound clause: (left, right, size)
  std::optional<std::tuple<std::uint32_t, std::uint32_t, std::size_t>>
      oversized_box;
  // witness for a failed mixed clause: the offending left cell
  std::optional<std::uint32_t> unmixed_left_cell;
  // witness for the parabolic clause: (generator subset mask, element)
  std::optional<std::pair<std::uint32_t, Elt>> parabolic_witness;
};

CellPredicateReport nice_report(const CellDecomposition& dec,
                                std::uint32_t two_cell);
inline bool is_nice(const CellDecomposition& dec, std::uint32_t two_cell) {
  return nice_report(dec, two_cell).nice;
}

enum class ReportFormat : std::uint8_t { Markdown, Json, Csv };
ReportFormat parse_report_format(std::string_view name);

// Appendix-style tables: one grid per two-sided cell, rows are right cells,
// columns are left cells, parabolic longest elements flagged.
std::string cell_report(const CellDecomposition& dec, ReportFormat format);
// cell_report plus the regular/strongly regular/nice verdicts per cell.
std::string predicate_report(const CellDecomposition& dec,
                             ReportFormat format);

}  // namespace cellkit

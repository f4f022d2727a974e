// Shared checker: compares a computed cell decomposition against a golden
// grid file (per two-sided cell: a-value, boxes, and flagged elements).
#pragma once

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cellkit/cells.hpp"

namespace golden {

struct GoldenCell {
  int a = 0;
  std::vector<std::vector<std::vector<std::string>>> grid;  // [row][col][lab]
  std::vector<std::string> bold;
};

struct GoldenFile {
  std::string spec;
  std::vector<GoldenCell> cells;
};

inline GoldenFile load_golden(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open golden file " + path);
  nlohmann::json doc;
  in >> doc;
  GoldenFile out;
  out.spec = doc["spec"].get<std::string>();
  for (const auto& c : doc["cells"]) {
    GoldenCell cell;
    cell.a = c["a"].get<int>();
    for (const auto& row : c["grid"]) {
      std::vector<std::vector<std::string>> r;
      for (const auto& box : row)
        r.push_back(box.get<std::vector<std::string>>());
      cell.grid.push_back(std::move(r));
    }
    cell.bold = c["bold"].get<std::vector<std::string>>();
    out.cells.push_back(std::move(cell));
  }
  return out;
}

// Returns an empty string on success, else a diagnostic.
inline std::string compare_cells(const cellkit::CoxeterSystem& sys,
                                 const cellkit::CellDecomposition& dec,
                                 const GoldenFile& golden) {
  using cellkit::Elt;
  std::ostringstream err;
  if (golden.cells.size() != dec.two_cells.size()) {
    err << "expected " << golden.cells.size() << " two-sided cells, computed "
        << dec.two_cells.size();
    return err.str();
  }

  for (const GoldenCell& gc : golden.cells) {
    // Elements named in the golden grid.
    std::set<Elt> members;
    std::set<std::set<Elt>> boxes;
    std::set<std::set<Elt>> columns, rows;
    std::size_t ncols = gc.grid.front().size();
    std::vector<std::set<Elt>> col_sets(ncols);
    for (const auto& row : gc.grid) {
      std::set<Elt> row_set;
      for (std::size_t c = 0; c < row.size(); ++c) {
        std::set<Elt> box;
        for (const std::string& lab : row[c]) {
          Elt x = sys.element_from_label(lab);
          if (static_cast<std::size_t>(sys.length(x)) != lab.size() &&
              lab != "e") {
            err << "golden label " << lab << " is not reduced";
            return err.str();
          }
          if (!members.insert(x).second) {
            err << "golden label " << lab << " repeats an element";
            return err.str();
          }
          box.insert(x);
          row_set.insert(x);
          col_sets[c].insert(x);
        }
        if (!box.empty()) boxes.insert(box);
      }
      rows.insert(row_set);
    }
    for (auto& c : col_sets) columns.insert(c);

    // Locate the computed cell holding these members.
    std::uint32_t j = dec.two_id[*members.begin()];
    std::set<Elt> computed(dec.two_cells[j].begin(), dec.two_cells[j].end());
    if (computed != members) {
      err << "two-sided cell through " << sys.label(*members.begin())
          << " has " << computed.size() << " elements, golden says "
          << members.size();
      return err.str();
    }
    if (dec.a_values[j] != gc.a) {
      err << "a-value of the cell through " << sys.label(*members.begin())
          << " is " << dec.a_values[j] << ", golden says " << gc.a;
      return err.str();
    }

    // Left cells = golden columns, right cells = golden rows, boxes match.
    std::set<std::set<Elt>> comp_cols, comp_rows, comp_boxes;
    for (std::uint32_t l : dec.left_cells_in(j))
      comp_cols.insert(std::set<Elt>(dec.left_cells[l].begin(),
                                     dec.left_cells[l].end()));
    for (std::uint32_t r : dec.right_cells_in(j))
      comp_rows.insert(std::set<Elt>(dec.right_cells[r].begin(),
                                     dec.right_cells[r].end()));
    for (std::uint32_t l : dec.left_cells_in(j))
      for (std::uint32_t r : dec.right_cells_in(j)) {
        auto box = dec.box(l, r);
        if (!box.empty()) comp_boxes.insert(std::set<Elt>(box.begin(), box.end()));
      }
    if (comp_cols != columns) {
      err << "left cells of the a=" << gc.a << " cell disagree";
      return err.str();
    }
    if (comp_rows != rows) {
      err << "right cells of the a=" << gc.a << " cell disagree";
      return err.str();
    }
    if (comp_boxes != boxes) {
      err << "boxes of the a=" << gc.a << " cell disagree";
      return err.str();
    }

    // Flagged elements = parabolic longest elements.
    std::set<Elt> gold_bold;
    for (const std::string& lab : gc.bold)
      gold_bold.insert(sys.element_from_label(lab));
    std::set<Elt> comp_bold;
    for (Elt x : dec.two_cells[j])
      if (sys.longest_element(sys.descent_mask(x, cellkit::Side::Right)) == x)
        comp_bold.insert(x);
    if (gold_bold != comp_bold) {
      err << "flagged elements of the a=" << gc.a << " cell disagree";
      return err.str();
    }
  }

  // The golden cells exhaust the group.
  std::size_t total = 0;
  for (const GoldenCell& gc : golden.cells)
    for (const auto& row : gc.grid)
      for (const auto& box : row) total += box.size();
  if (total != sys.size()) {
    err << "golden grids cover " << total << " of " << sys.size()
        << " elements";
    return err.str();
  }
  return {};
}

}  // namespace golden

#include <json.hpp>
#include <sstream>

#include "cellkit/cells.hpp"

namespace cellkit {

namespace {

using ordered_json = nlohmann::ordered_json;

// Parabolic-longest flags are recomputed from the group, never stored.
bool is_parabolic_longest(const CoxeterSystem& sys, Elt w) {
  return sys.longest_element(sys.descent_mask(w, Side::Right)) == w;
}

std::string box_markdown(const CellDecomposition& dec,
                         const std::vector<Elt>& members) {
  const CoxeterSystem& sys = *dec.sys;
  std::string out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ", ";
    if (is_parabolic_longest(sys, members[i]))
      out += "**" + sys.label(members[i]) + "**";
    else
      out += sys.label(members[i]);
  }
  return out;
}

std::string markdown_report(const CellDecomposition& dec, bool predicates) {
  const CoxeterSystem& sys = *dec.sys;
  std::ostringstream out;
  out << "# Cells of " << sys.spec().str() << "\n";
  for (std::uint32_t j = 0; j < dec.two_cells.size(); ++j) {
    out << "\n## a = " << dec.a_values[j] << " (cell " << j << ", "
        << dec.two_cells[j].size() << " elements)\n\n";
    auto lefts = dec.left_cells_in(j);
    auto rights = dec.right_cells_in(j);
    out << "|  |";
    for (std::uint32_t l : lefts) out << " L" << l << " |";
    out << "\n|" << std::string(3, '-') << "|";
    for (std::size_t i = 0; i < lefts.size(); ++i) out << "----|";
    out << "\n";
    for (std::uint32_t r : rights) {
      out << "| R" << r << " |";
      for (std::uint32_t l : lefts)
        out << ' ' << box_markdown(dec, dec.box(l, r)) << " |";
      out << "\n";
    }
    auto succ = dec.two_sided_successors(j);
    if (!succ.empty()) {
      out << "\nfollowed by:";
      for (std::uint32_t k : succ) out << " cell " << k;
      out << "\n";
    }
    if (predicates) {
      CellPredicateReport rep = nice_report(dec, j);
      out << "\nregular: " << (rep.regular ? "yes" : "no")
          << ", strongly regular: " << (rep.strongly_regular ? "yes" : "no")
          << ", nice: " << (rep.nice ? "yes" : "no") << "\n";
      if (!rep.nice) {
        if (!rep.box_bound_ok) {
          auto [l, r, sz] = *rep.oversized_box;
          out << "- box L" << l << " x R" << r << " has " << sz
              << " elements\n";
        }
        if (!rep.box_mixed_ok)
          out << "- left cell L" << *rep.unmixed_left_cell
              << " misses a box of size 1 or 2\n";
        if (!rep.parabolic_ok)
          out << "- no parabolic longest element\n";
      } else if (rep.parabolic_witness) {
        out << "- parabolic longest element: "
            << sys.label(rep.parabolic_witness->second) << "\n";
      }
    }
  }
  return out.str();
}

ordered_json json_report_body(const CellDecomposition& dec, bool predicates) {
  const CoxeterSystem& sys = *dec.sys;
  ordered_json doc;
  doc["spec"] = sys.spec().str();
  doc["convention_version"] = dec.table->convention_version();
  doc["cells"] = ordered_json::array();
  for (std::uint32_t j = 0; j < dec.two_cells.size(); ++j) {
    ordered_json cell;
    cell["a"] = dec.a_values[j];
    auto lefts = dec.left_cells_in(j);
    auto rights = dec.right_cells_in(j);
    auto labels_of = [&](const std::vector<Elt>& v) {
      ordered_json arr = ordered_json::array();
      for (Elt x : v) arr.push_back(sys.label(x));
      return arr;
    };
    ordered_json lc = ordered_json::array();
    for (std::uint32_t l : lefts) lc.push_back(labels_of(dec.left_cells[l]));
    cell["left_cells"] = std::move(lc);
    ordered_json rc = ordered_json::array();
    for (std::uint32_t r : rights) rc.push_back(labels_of(dec.right_cells[r]));
    cell["right_cells"] = std::move(rc);
    ordered_json grid = ordered_json::array();
    for (std::uint32_t r : rights) {
      ordered_json row = ordered_json::array();
      for (std::uint32_t l : lefts) row.push_back(labels_of(dec.box(l, r)));
      grid.push_back(std::move(row));
    }
    cell["grid"] = std::move(grid);
    ordered_json para = ordered_json::array();
    for (Elt x : dec.two_cells[j])
      if (is_parabolic_longest(sys, x)) para.push_back(sys.label(x));
    cell["parabolic_longest"] = std::move(para);
    cell["order_successors"] = dec.two_sided_successors(j);
    if (predicates) {
      CellPredicateReport rep = nice_report(dec, j);
      cell["regular"] = rep.regular;
      cell["strongly_regular"] = rep.strongly_regular;
      cell["nice"] = rep.nice;
    }
    doc["cells"].push_back(std::move(cell));
  }
  return doc;
}

std::string csv_report(const CellDecomposition& dec) {
  const CoxeterSystem& sys = *dec.sys;
  std::ostringstream out;
  out << "label,length,left_cell,right_cell,two_sided_cell,a\n";
  for (Elt x = 0; x < sys.size(); ++x)
    out << sys.label(x) << ',' << sys.length(x) << ',' << dec.left_id[x] << ','
        << dec.right_id[x] << ',' << dec.two_id[x] << ','
        << dec.a_values[dec.two_id[x]] << "\n";
  return out.str();
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  throw DomainError("unsupported format \"" + std::string(name) +
                    "\" (expected markdown, json or csv)");
}

std::string cell_report(const CellDecomposition& dec, ReportFormat format) {
  switch (format) {
    case ReportFormat::Markdown:
      return markdown_report(dec, false);
    case ReportFormat::Json:
      return json_report_body(dec, false).dump(2) + "\n";
    case ReportFormat::Csv:
      return csv_report(dec);
  }
  throw DomainError("unsupported format");
}

std::string predicate_report(const CellDecomposition& dec,
                             ReportFormat format) {
  switch (format) {
    case ReportFormat::Markdown:
      return markdown_report(dec, true);
    case ReportFormat::Json:
      return json_report_body(dec, true).dump(2) + "\n";
    case ReportFormat::Csv:
      return csv_report(dec);
  }
  throw DomainError("unsupported format");
}

}  // namespace cellkit

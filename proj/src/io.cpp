#include "palcolor/io.hpp"

namespace palcolor {

ColoringResult to_coloring_result(const GreedyResult& g) {
  ColoringResult r;
  r.color = g.color;
  r.colored_in.assign(g.color.size(), 0);
  for (std::size_t v = 0; v < g.color.size(); ++v)
    if (g.color[v] != kUncolored) r.colored_in[v] = 1;
  r.colors_used = g.colors_used;
  r.palette_total = g.colors_used;
  r.peak_edge_entries = g.stored_adjacency_entries;
  r.peak_tracked_entries = g.stored_adjacency_entries + 2 * g.color.size();
  r.runtime_s = g.runtime_s;
  return r;
}

Json coloring_json(const ColoringResult& r, std::string_view algorithm) {
  Json colors = Json::array();
  for (color_t c : r.color) colors.push_back(c == kUncolored ? Json(nullptr) : Json(c));
  return Json{{"format_version", kFormatVersion},
              {"algorithm", algorithm},
              {"n", r.color.size()},
              {"status", to_string(r.status)},
              {"colors_used", r.colors_used},
              {"peak_conflict_edges", r.peak_conflict_edges},
              {"colors", std::move(colors)}};
}

Json iteration_json(const IterationRecord& it) {
  return Json{{"iteration", it.iteration},
              {"active", it.active},
              {"palette_size", it.palette_size},
              {"palette_base", it.palette_base},
              {"list_size", it.list_size},
              {"conflict_vertices", it.conflict_vertices},
              {"conflict_edges", it.conflict_edges},
              {"colored_unconflicted", it.colored_unconflicted},
              {"colored_in_conflict", it.colored_in_conflict},
              {"uncolored", it.uncolored},
              {"stalled", it.stalled},
              {"tracked_entries", it.tracked_entries}};
}

Json stats_json(const ColoringResult& r, const StatsContext& ctx) {
  Json iterations = Json::array();
  for (const auto& it : r.iterations) iterations.push_back(iteration_json(it));
  const double n = static_cast<double>(r.color.size());
  Json totals{{"colors_used", r.colors_used},
              {"palette_total", r.palette_total},
              {"color_pct", n > 0 ? 100.0 * static_cast<double>(r.colors_used) / n : 0.0},
              {"edges", ctx.edges},
              {"edges_estimated", ctx.edges_estimated},
              {"peak_conflict_edges", r.peak_conflict_edges},
              {"ec_max_pct", ctx.edges > 0 ? 100.0 * static_cast<double>(r.peak_conflict_edges) / ctx.edges : 0.0},
              {"peak_edge_entries", r.peak_edge_entries},
              {"peak_tracked_entries", r.peak_tracked_entries}};
  if (ctx.timing) totals["wall_time_s"] = r.runtime_s;
  return Json{{"format_version", kFormatVersion},
              {"algorithm", ctx.algorithm},
              {"status", to_string(r.status)},
              {"diagnostics", r.diagnostics},
              {"params",
               {{"palette_pct", ctx.params.palette_pct},
                {"alpha", ctx.params.alpha},
                {"seed", ctx.params.seed},
                {"max_iterations", ctx.params.max_iterations},
                {"conflict_strategy", ctx.strategy}}},
              {"iterations", std::move(iterations)},
              {"totals", std::move(totals)}};
}

Json report_json(const ValidationReport& rep) {
  Json violations = Json::array();
  for (auto [u, v] : rep.violations) violations.push_back(Json::array({u, v}));
  Json iterations = Json::array();
  for (const auto& it : rep.iterations) iterations.push_back(iteration_json(it));
  return Json{{"format_version", kFormatVersion},
              {"proper", rep.proper},
              {"mode", rep.sampled ? "sampled" : "exhaustive"},
              {"pairs_checked", rep.pairs_checked},
              {"seed", rep.seed},
              {"violation_count", rep.violation_count},
              {"uncolored", rep.uncolored},
              {"violations", std::move(violations)},
              {"n", rep.n},
              {"colors_used", rep.colors_used},
              {"color_pct", rep.color_pct},
              {"edges", rep.edges},
              {"edges_estimated", rep.edges_estimated},
              {"peak_conflict_edges", rep.peak_conflict_edges},
              {"ec_max_pct", rep.ec_max_pct},
              {"iterations", std::move(iterations)}};
}

std::vector<color_t> read_coloring_json(std::istream& in) {
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, std::string("coloring JSON: ") + e.what());
  }
  if (!doc.contains("colors") || !doc["colors"].is_array()) {
    throw Error(Errc::parse_error, "coloring JSON has no \"colors\" array");
  }
  std::vector<color_t> colors;
  colors.reserve(doc["colors"].size());
  for (const auto& c : doc["colors"]) colors.push_back(c.is_null() ? kUncolored : c.get<color_t>());
  return colors;
}

}  // namespace palcolor

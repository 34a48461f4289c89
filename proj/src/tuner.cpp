#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <tuple>

#include "palcolor/tuner.hpp"

namespace palcolor {

namespace detail {

double parse_double(std::string_view token) {
  token = trim(token);
  double v = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end || token.empty()) {
    throw Error(Errc::bad_params, "not a number: '" + std::string(token) + "'");
  }
  return v;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace detail

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> out;
  for (auto item : detail::split(text, ',')) {
    item = detail::trim(item);
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(detail::parse_double(item));
      continue;
    }
    auto rest = item.substr(dots + 2);
    double step = 0.5;
    if (const auto colon = rest.find(':'); colon != std::string_view::npos) {
      step = detail::parse_double(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    const double lo = detail::parse_double(item.substr(0, dots));
    const double hi = detail::parse_double(rest);
    if (!(step > 0) || hi < lo) throw Error(Errc::bad_params, "bad range '" + std::string(item) + "'");
    for (std::size_t k = 0;; ++k) {
      const double v = lo + static_cast<double>(k) * step;
      if (v > hi + 1e-9 * std::max(1.0, std::abs(hi))) break;
      out.push_back(v);
    }
  }
  if (out.empty()) throw Error(Errc::bad_params, "empty grid '" + std::string(text) + "'");
  return out;
}

SweepResult sweep(const EdgeOracleView& view, std::span<const double> grid_p, std::span<const double> grid_a,
                         std::span<const std::uint64_t> seeds, const SweepOptions& opts) {
  if (grid_p.empty() || grid_a.empty() || seeds.empty()) throw Error(Errc::bad_params, "empty sweep grid");
  const double m = opts.edges >= 0 ? opts.edges : degree_stats(view).edges;

  struct Cell {
    double p, a;
    std::uint64_t seed;
    std::optional<SweepRecord> record;
    std::string error;
  };
  std::vector<Cell> cells;
  for (double p : grid_p)
    for (double a : grid_a)
      for (auto s : seeds) cells.push_back({p, a, s, std::nullopt, {}});

  RunOptions run_opts = opts.run;
  run_opts.build.threads = 1;
  parallel_for_blocks(cells.size(), opts.threads, [&](std::size_t k) {
    auto& cell = cells[k];
    PaletteParams params{cell.p, cell.a, cell.seed, opts.max_iterations};
    try {
      const auto res = run(view, params, run_opts);
      if (!res.complete()) {
        cell.error = std::string(to_string(Errc::iteration_limit_exceeded)) + ": " + res.diagnostics;
        return;
      }
      cell.record = SweepRecord{opts.instance,
                                view.size(),
                                m,
                                cell.p,
                                cell.a,
                                static_cast<double>(res.colors_used),
                                static_cast<double>(res.peak_conflict_edges),
                                res.runtime_s,
                                cell.seed};
    } catch (const Error& e) {
      cell.error = e.what();
    }
  });

  SweepResult out;
  for (auto& cell : cells) {
    if (cell.record)
      out.records.push_back(std::move(*cell.record));
    else
      out.failures.push_back({cell.p, cell.a, cell.seed, cell.error});
  }
  return out;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records, bool header) {
  if (header) out << kSweepCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.instance << ',' << r.n << ',' << detail::format_double(r.m) << ',' << detail::format_double(r.palette_pct)
        << ',' << detail::format_double(r.alpha) << ',' << detail::format_double(r.colors) << ','
        << detail::format_double(r.ec_max) << ',' << detail::format_double(r.runtime_s) << ',' << r.seed << '\n';
  }
}

std::vector<SweepRecord> read_sweep_csv(std::istream& in) {
  std::vector<SweepRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#' || body == kSweepCsvHeader) continue;
    const auto f = detail::split(body, ',');
    if (f.size() != 9) throw Error(Errc::parse_error, "sweep CSV line " + std::to_string(lineno) + ": expected 9 fields");
    try {
      SweepRecord r;
      r.instance = std::string(f[0]);
      r.n = detail::parse_index(detail::trim(f[1]), lineno);
      r.m = detail::parse_double(f[2]);
      r.palette_pct = detail::parse_double(f[3]);
      r.alpha = detail::parse_double(f[4]);
      r.colors = detail::parse_double(f[5]);
      r.ec_max = detail::parse_double(f[6]);
      r.runtime_s = detail::parse_double(f[7]);
      r.seed = detail::parse_index(detail::trim(f[8]), lineno);
      records.push_back(std::move(r));
    } catch (const Error& e) {
      throw Error(Errc::parse_error, "sweep CSV line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return records;
}

std::vector<CellScore> cell_scores(std::span<const SweepRecord> records) {
  std::map<std::pair<double, double>, std::tuple<double, double, std::size_t>> acc;
  for (const auto& r : records) {
    const double c = r.n ? r.colors / static_cast<double>(r.n) : 0.0;
    const double e = r.m > 0 ? r.ec_max / r.m : 0.0;
    auto& [cs, es, k] = acc[{r.palette_pct, r.alpha}];
    cs += c;
    es += e;
    ++k;
  }
  std::vector<CellScore> out;
  for (const auto& [key, v] : acc) {
    const auto& [cs, es, k] = v;
    out.push_back({key.first, key.second, cs / static_cast<double>(k), es / static_cast<double>(k)});
  }
  return out;
}

std::pair<double, double> select_optimal(std::span<const SweepRecord> records, double beta) {
  if (records.empty()) throw Error(Errc::empty_records, "no sweep records to select from");
  if (!(beta >= 0.0 && beta <= 1.0)) throw Error(Errc::bad_params, "beta must be in [0, 1]");
  const auto scores = cell_scores(records);
  const CellScore* best = nullptr;
  double best_obj = std::numeric_limits<double>::infinity();
  for (const auto& s : scores) {
    const double obj = beta * s.colors_norm + (1.0 - beta) * s.ec_norm;
    const bool better = !best || obj < best_obj ||
                        (obj == best_obj && std::tie(s.ec_norm, s.palette_pct, s.alpha) <
                                                std::tie(best->ec_norm, best->palette_pct, best->alpha));
    if (better) {
      best = &s;
      best_obj = obj;
    }
  }
  return {best->palette_pct, best->alpha};
}

std::vector<TrainingPoint> training_points(std::span<const SweepRecord> records, std::span<const double> betas) {
  std::map<std::string, std::vector<SweepRecord>> by_instance;
  for (const auto& r : records) by_instance[r.instance].push_back(r);
  std::vector<TrainingPoint> points;
  for (const auto& [name, recs] : by_instance) {
    for (double beta : betas) {
      const auto [p, a] = select_optimal(recs, beta);
      points.push_back({beta, static_cast<double>(recs.front().n), recs.front().m, p, a});
    }
  }
  return points;
}

KnnPredictor KnnPredictor::train(std::vector<TrainingPoint> points, std::size_t k, std::vector<double> grid_p,
                                 std::vector<double> grid_a) {
  if (points.empty()) throw Error(Errc::empty_records, "no training points");
  KnnPredictor model;
  model.k_ = std::max<std::size_t>(1, k);
  model.points_ = std::move(points);
  if (grid_p.empty())
    for (const auto& p : model.points_) grid_p.push_back(p.palette_pct);
  if (grid_a.empty())
    for (const auto& p : model.points_) grid_a.push_back(p.alpha);
  model.grid_p_ = sorted_unique(std::move(grid_p));
  model.grid_a_ = sorted_unique(std::move(grid_a));

  for (std::size_t d = 0; d < 3; ++d) {
    double sum = 0;
    for (const auto& p : model.points_) sum += raw_feature(p.beta, p.n, p.m)[d];
    const double mean = sum / static_cast<double>(model.points_.size());
    double var = 0;
    for (const auto& p : model.points_) {
      const double x = raw_feature(p.beta, p.n, p.m)[d] - mean;
      var += x * x;
    }
    const double sd = std::sqrt(var / static_cast<double>(model.points_.size()));
    model.mean_[d] = mean;
    model.scale_[d] = sd > 1e-12 ? sd : 1.0;
  }
  return model;
}

std::pair<double, double> KnnPredictor::predict_raw(double beta, double n, double m) const {
  if (!trained()) throw Error(Errc::untrained_model, "predictor has no training data");
  const auto q = standardized(beta, n, m);
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto x = standardized(points_[i].beta, points_[i].n, points_[i].m);
    double d2 = 0;
    for (std::size_t d = 0; d < 3; ++d) d2 += (x[d] - q[d]) * (x[d] - q[d]);
    dist.emplace_back(std::sqrt(d2), i);
  }
  std::sort(dist.begin(), dist.end());
  const std::size_t k = std::min(k_, dist.size());

  double wp = 0, wa = 0, wsum = 0;
  if (dist.front().first < 1e-12) {
    for (std::size_t j = 0; j < dist.size() && dist[j].first < 1e-12; ++j) {
      wp += points_[dist[j].second].palette_pct;
      wa += points_[dist[j].second].alpha;
      wsum += 1.0;
    }
  } else {
    for (std::size_t j = 0; j < k; ++j) {
      const double w = 1.0 / dist[j].first;
      wp += w * points_[dist[j].second].palette_pct;
      wa += w * points_[dist[j].second].alpha;
      wsum += w;
    }
  }
  return {wp / wsum, wa / wsum};
}

std::pair<double, double> KnnPredictor::predict(double beta, double n, double m) const {
  const auto [p, a] = predict_raw(beta, n, m);
  return {snap(grid_p_, p), snap(grid_a_, a)};
}

void KnnPredictor::save(std::ostream& out) const {
  out << "# palcolor knn predictor v1\n";
  out << "knn " << k_ << '\n';
  auto list = [&](std::string_view name, const std::vector<double>& xs) {
    out << name << ' ';
    for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << detail::format_double(xs[i]);
    out << '\n';
  };
  list("grid_p", grid_p_);
  list("grid_a", grid_a_);
  for (const auto& p : points_) {
    out << "point " << detail::format_double(p.beta) << ' ' << detail::format_double(p.n) << ' '
        << detail::format_double(p.m) << ' ' << detail::format_double(p.palette_pct) << ' '
        << detail::format_double(p.alpha) << '\n';
  }
}

KnnPredictor KnnPredictor::load(std::istream& in) {
  std::size_t k = kDefaultK;
  std::vector<double> gp, ga;
  std::vector<TrainingPoint> pts;
  std::string line;
  while (std::getline(in, line)) {
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto tok = detail::split_ws(body);
    if (tok[0] == "knn" && tok.size() == 2) {
      k = static_cast<std::size_t>(detail::parse_double(tok[1]));
    } else if ((tok[0] == "grid_p" || tok[0] == "grid_a") && tok.size() == 2) {
      (tok[0] == "grid_p" ? gp : ga) = parse_grid(tok[1]);
    } else if (tok[0] == "point" && tok.size() == 6) {
      pts.push_back({detail::parse_double(tok[1]), detail::parse_double(tok[2]), detail::parse_double(tok[3]),
                     detail::parse_double(tok[4]), detail::parse_double(tok[5])});
    } else {
      throw Error(Errc::parse_error, "bad model line: " + std::string(body));
    }
  }
  return train(std::move(pts), k, std::move(gp), std::move(ga));
}

}  // namespace palcolor

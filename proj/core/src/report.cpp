// SPDX-License-Identifier: Apache-2.0

#include "stormlens/report.hpp"

#include <cstdio>
#include <fstream>

#include "stormlens/csv.hpp"
#include "stormlens/errors.hpp"
#include "stormlens/svg.hpp"

namespace stormlens::report {

namespace {

std::ofstream open(const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write report file: " + path.string());
  return out;
}

}  // namespace

std::string fmt(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v, int precision) {
  return v ? fmt(*v, precision) : std::string("\xE2\x80\x94");  // em-dash
}

void write_breakdown_csv(const std::filesystem::path& path, const analytics::BreakdownTable& table) {
  auto out = open(path);
  out << "key,tag,count,share\n";
  for (const auto& row : table.rows)
    out << csv::escape(row.key) << ',' << csv::escape(row.tag) << ',' << row.count << ','
        << fmt(row.share) << '\n';
}

void write_breakdown_chart(const std::filesystem::path& path, const std::string& title,
                           const analytics::BreakdownTable& table) {
  if (table.kind == "daily_volume") {
    std::vector<std::string> days;
    svg::Series inside{"during disaster", {}, "#c0392b"};
    svg::Series outside{"before/after", {}, "#2e6da4"};
    for (const auto& row : table.rows) {
      days.push_back(row.key);
      const auto v = static_cast<double>(row.count);
      inside.values.push_back(row.tag == "inside" ? v : 0.0);
      outside.values.push_back(row.tag == "outside" ? v : 0.0);
    }
    svg::write_line_chart(path, title, days, {inside, outside});
    return;
  }
  if (table.kind == "attitude_by_need") {
    std::vector<std::string> needs;
    svg::Series pos{"positive", {}, "#2e8b57"};
    svg::Series neg{"negative", {}, "#c0392b"};
    for (const auto& row : table.rows) {
      if (row.tag == "positive") {
        needs.push_back(row.key);
        pos.values.push_back(static_cast<double>(row.count));
      } else {
        neg.values.push_back(static_cast<double>(row.count));
      }
    }
    svg::write_bar_chart(path, title, needs, {pos, neg});
    return;
  }
  std::vector<std::string> keys;
  svg::Series counts{"count", {}, "#4878a8"};
  for (const auto& row : table.rows) {
    keys.push_back(row.key);
    counts.values.push_back(static_cast<double>(row.count));
  }
  svg::write_bar_chart(path, title, keys, {counts});
}

void write_metrics_csv(const std::filesystem::path& path,
                       std::span<const std::pair<std::string, eval::MetricsReport>> rows) {
  auto out = open(path);
  out << "context,samples,tp,tn,fp,fn,accuracy,"
         "precision_pos,recall_pos,f1_pos,precision_neg,recall_neg,f1_neg\n";
  for (const auto& [context, m] : rows) {
    // class 1 = negative sentiment is the detection target; class 0 columns
    // are the "positive sentiment" analogues
    out << csv::escape(context) << ',' << m.cm.total() << ',' << m.cm.tp << ',' << m.cm.tn << ','
        << m.cm.fp << ',' << m.cm.fn << ',' << fmt(m.accuracy) << ',' << fmt_opt(m.precision0)
        << ',' << fmt_opt(m.recall0) << ',' << fmt_opt(m.f1_0) << ',' << fmt_opt(m.precision1)
        << ',' << fmt_opt(m.recall1) << ',' << fmt_opt(m.f1_1) << '\n';
  }
}

void write_roc_csv(const std::filesystem::path& path, const eval::RocCurve& roc) {
  auto out = open(path);
  out << "fpr,tpr\n";
  for (const auto& [fpr, tpr] : roc.points) out << fmt(fpr, 9) << ',' << fmt(tpr, 9) << '\n';
}

void write_benchmark_csv(const std::filesystem::path& path,
                         std::span<const eval::BenchmarkRecord> records) {
  auto out = open(path);
  out << "family,disaster_id,fit_seconds,predict_seconds,total_seconds,accuracy\n";
  for (const auto& rec : records)
    out << models::family_name(rec.family) << ',' << csv::escape(rec.disaster_id) << ','
        << fmt(rec.fit_seconds) << ',' << fmt(rec.predict_seconds) << ','
        << fmt(rec.fit_seconds + rec.predict_seconds) << ',' << fmt(rec.accuracy) << '\n';
}

void write_grid_csv(const std::filesystem::path& path, const eval::GridResult& grid) {
  auto out = open(path);
  out << "cell,params,fold,accuracy,precision_neg,recall_neg,f1_neg,mean_accuracy,winner\n";
  for (std::size_t c = 0; c < grid.cells.size(); ++c) {
    const auto& cell = grid.cells[c];
    const std::string params = cell.point.describe();
    const bool winner = c == grid.best_index;
    for (std::size_t f = 0; f < cell.cv.folds.size(); ++f) {
      const auto& m = cell.cv.folds[f];
      out << c << ',' << csv::escape(params) << ',' << f << ',' << fmt(m.accuracy) << ','
          << fmt_opt(m.precision1) << ',' << fmt_opt(m.recall1) << ',' << fmt_opt(m.f1_1) << ','
          << fmt(cell.cv.mean_accuracy) << ',' << (winner ? "1" : "0") << '\n';
    }
  }
}

}  // namespace stormlens::report

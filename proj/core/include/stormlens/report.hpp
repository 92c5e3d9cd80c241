// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stormlens/analytics.hpp"
#include "stormlens/evaluate.hpp"

namespace stormlens::report {

/// Fixed-precision rendering; every report file is byte-stable for equal
/// inputs. Undefined metric cells render as an em-dash, never 0.
std::string fmt(double v, int precision = 6);
std::string fmt_opt(const std::optional<double>& v, int precision = 6);

void write_breakdown_csv(const std::filesystem::path& path, const analytics::BreakdownTable& table);
void write_breakdown_chart(const std::filesystem::path& path, const std::string& title,
                           const analytics::BreakdownTable& table);

void write_metrics_csv(const std::filesystem::path& path,
                       std::span<const std::pair<std::string, eval::MetricsReport>> rows);

void write_roc_csv(const std::filesystem::path& path, const eval::RocCurve& roc);

void write_benchmark_csv(const std::filesystem::path& path,
                         std::span<const eval::BenchmarkRecord> records);

void write_grid_csv(const std::filesystem::path& path, const eval::GridResult& grid);

}  // namespace stormlens::report

// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace stormlens::svg {

struct Series {
  std::string label;
  std::vector<double> values;
  std::string color = "#4878a8";
};

/// Minimal static charts for report bundles; CSV stays the contract, these
/// are a convenience rendering.
void write_bar_chart(const std::filesystem::path& path, const std::string& title,
                     const std::vector<std::string>& categories, const std::vector<Series>& series);

void write_line_chart(const std::filesystem::path& path, const std::string& title,
                      const std::vector<std::string>& x_labels, const std::vector<Series>& series);

}  // namespace stormlens::svg

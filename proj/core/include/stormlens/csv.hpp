// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace stormlens::csv {

/// RFC 4180 reader. Handles quoted fields, doubled quotes, embedded commas
/// and newlines; tolerates CRLF input. All output rows are raw field lists;
/// header handling is up to the caller.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Reads the next record. Returns false at end of input.
  bool next(std::vector<std::string>& fields);

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::vector<std::vector<std::string>> read_file(const std::filesystem::path& path);

/// Quotes a field only when needed (comma, quote, CR or LF present).
std::string escape(std::string_view field);

/// Always-quoted variant (used for free-text columns).
std::string escape_always(std::string_view field);

/// Writes one record with LF line ending.
void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace stormlens::csv

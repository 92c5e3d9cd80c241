// SPDX-License-Identifier: Apache-2.0

#include "stormlens/csv.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "stormlens/errors.hpp"

namespace stormlens::csv {

bool Reader::next(std::vector<std::string>& fields) {
  fields.clear();
  int c = in_.get();
  if (c == std::istream::traits_type::eof()) return false;
  ++line_;

  std::string field;
  bool in_quotes = false;
  bool any = false;
  while (true) {
    if (c == std::istream::traits_type::eof()) {
      if (in_quotes) throw DataError("csv: unterminated quoted field at line " + std::to_string(line_));
      break;
    }
    const char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        const int peek = in_.peek();
        if (peek == '"') {
          field.push_back('"');
          in_.get();
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line_;
        field.push_back(ch);
      }
    } else if (ch == '"' && field.empty() && !any) {
      in_quotes = true;
      any = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      any = false;
    } else if (ch == '\n') {
      break;
    } else if (ch == '\r') {
      // swallow the LF of a CRLF pair; a bare CR also terminates the record
      if (in_.peek() == '\n') in_.get();
      break;
    } else {
      field.push_back(ch);
      any = true;
    }
    c = in_.get();
  }
  fields.push_back(std::move(field));
  return true;
}

std::vector<std::vector<std::string>> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  Reader reader(in);
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> fields;
  while (reader.next(fields)) rows.push_back(fields);
  return rows;
}

namespace {

std::string quote(std::string_view field) {
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  return quote(field);
}

std::string escape_always(std::string_view field) { return quote(field); }

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.put(',');
    out << escape(fields[i]);
  }
  out.put('\n');
}

}  // namespace stormlens::csv

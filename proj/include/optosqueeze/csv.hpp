// Copyright 2026 The optosqueeze Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef OPTOSQUEEZE_CSV_HPP
#define OPTOSQUEEZE_CSV_HPP

#include <string>
#include <utility>
#include <vector>

namespace optosqueeze {

// Fixed-format number rendering shared by every CSV writer: %.10g, with
// nan / inf / -inf spelled out.
std::string format_number(double v);

// CSV document: "# key = value" header block, one column line, rows.
class CsvTable {
 public:
  void add_header(const std::string& key, const std::string& value);
  void set_columns(std::vector<std::string> columns);
  void add_row(const std::vector<double>& values);
  void add_row(const std::vector<std::string>& cells);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return rows_.size(); }
  std::string render() const;

 private:
  std::vector<std::pair<std::string, std::string>> header_;
  std::vector<std::string> columns_;
  std::vector<std::string> rows_;
};

// Writes to a sibling temporary file and renames it into place, so a failed
// run never leaves a partial file behind.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace optosqueeze

#endif  // OPTOSQUEEZE_CSV_HPP

// Copyright (c) 2026 The g2pkit Authors
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

#ifndef G2P_JSONL_HPP_
#define G2P_JSONL_HPP_

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include <nlohmann/json.hpp>

#include "g2p/errors.hpp"

namespace g2p {

// Calls `fn(lineno, record)` for every non-empty line. Parse errors carry
// file and line.
inline void read_jsonl(
    const std::filesystem::path& path,
    const std::function<void(int, const nlohmann::json&)>& fn) {
  std::ifstream in(path);
  if (!in) throw FileError(path.string(), "cannot open file");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    }
    if (blank) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(path.string() + ":" + std::to_string(lineno),
                        e.what());
    }
    fn(lineno, record);
  }
}

// Writes through a temp file and renames on commit, so readers never see a
// partial file and aborted runs leave nothing behind.
class AtomicFile {
 public:
  explicit AtomicFile(std::filesystem::path path) : path_(std::move(path)) {
    if (path_.has_parent_path()) {
      std::filesystem::create_directories(path_.parent_path());
    }
    temp_ = path_;
    temp_ += ".tmp";
    out_.open(temp_, std::ios::binary | std::ios::trunc);
    if (!out_) throw FileError(temp_.string(), "cannot open for writing");
  }

  ~AtomicFile() {
    if (!committed_) {
      out_.close();
      std::error_code ec;
      std::filesystem::remove(temp_, ec);
    }
  }

  std::ostream& stream() { return out_; }

  void commit() {
    out_.flush();
    if (!out_) throw FileError(temp_.string(), "write failed");
    out_.close();
    std::filesystem::rename(temp_, path_);
    committed_ = true;
  }

 private:
  std::filesystem::path path_;
  std::filesystem::path temp_;
  std::ofstream out_;
  bool committed_ = false;
};

}  // namespace g2p

#endif  // G2P_JSONL_HPP_

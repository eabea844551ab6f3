// Copyright 2026 The evote Authors.
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

#include "evote/share_log.h"

#include <errno.h>
#include <fcntl.h>
#include <unistd.h>

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "evote/error.h"

namespace evote {

namespace {

constexpr std::string_view kMagic = "EVOTE-SHARELOG";
constexpr std::string_view kVersion = "v1";

[[noreturn]] void Corrupt(size_t index, const std::string& what) {
  throw Error(ErrorCode::kCorruptLog,
              "share log record " + std::to_string(index) + ": " + what);
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (start <= line.size()) {
    size_t end = line.find(' ', start);
    if (end == std::string_view::npos) end = line.size();
    fields.push_back(line.substr(start, end - start));
    start = end + 1;
  }
  return fields;
}

template <typename T>
bool ParseDecimal(std::string_view field, T& out) {
  if (field.empty() || (field.size() > 1 && field[0] == '0')) return false;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

[[noreturn]] void IoFailure(const std::string& what,
                            const std::filesystem::path& path) {
  throw Error(ErrorCode::kIoError,
              what + " " + path.string() + ": " + std::strerror(errno));
}

}  // namespace

bool IsValidElectionId(std::string_view id) {
  if (id.empty() || id.size() > 64) return false;
  for (char ch : id) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                    (ch >= '0' && ch <= '9') || ch == '.' || ch == '_' ||
                    ch == '-';
    if (!ok) return false;
  }
  return true;
}

std::string FormatHeader(const ShareLogHeader& header) {
  std::ostringstream out;
  out << kMagic << ' ' << kVersion << ' ' << header.election_id << ' '
      << header.center_id << ' ' << header.prime;
  return out.str();
}

std::string FormatRecord(const ShareLogRecord& record) {
  std::string line = std::to_string(record.ballot_seq) + ' ' +
                     std::to_string(record.x) + ' ' + std::to_string(record.y);
  if (record.kind == ShareLogRecord::Kind::kRetract) line += " R";
  return line;
}

ParsedShareLog ParseShareLog(std::string_view text) {
  ParsedShareLog parsed;
  size_t pos = 0;
  size_t index = 0;
  bool have_header = false;
  while (pos < text.size()) {
    const size_t newline = text.find('\n', pos);
    if (newline == std::string_view::npos) break;  // torn tail
    const std::string_view line = text.substr(pos, newline - pos);
    const auto fields = SplitFields(line);
    if (!have_header) {
      if (fields.size() != 5 || fields[0] != kMagic || fields[1] != kVersion) {
        Corrupt(index, "bad header");
      }
      if (!IsValidElectionId(fields[2])) Corrupt(index, "bad election id");
      parsed.header.election_id = std::string(fields[2]);
      if (!ParseDecimal(fields[3], parsed.header.center_id) ||
          !ParseDecimal(fields[4], parsed.header.prime)) {
        Corrupt(index, "bad header field");
      }
      have_header = true;
    } else {
      ShareLogRecord record;
      if (fields.size() == 4 && fields[3] == "R") {
        record.kind = ShareLogRecord::Kind::kRetract;
      } else if (fields.size() != 3) {
        Corrupt(index, "expected 3 fields");
      }
      if (!ParseDecimal(fields[0], record.ballot_seq) ||
          !ParseDecimal(fields[1], record.x) ||
          !ParseDecimal(fields[2], record.y)) {
        Corrupt(index, "non-decimal field");
      }
      parsed.records.push_back(record);
    }
    ++index;
    pos = newline + 1;
    parsed.valid_length = pos;
  }
  if (!have_header) {
    throw Error(ErrorCode::kCorruptLog, "share log record 0: missing header");
  }
  return parsed;
}

void MemoryShareLog::Append(std::string_view line) {
  contents_.append(line);
  contents_.push_back('\n');
}

FileShareLog::FileShareLog(std::filesystem::path path) : path_(std::move(path)) {
  fd_ = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0600);
  if (fd_ < 0) IoFailure("cannot open", path_);
}

FileShareLog::~FileShareLog() {
  if (fd_ >= 0) ::close(fd_);
}

std::string FileShareLog::ReadAll() const {
  std::ifstream in(path_, std::ios::binary);
  if (!in) IoFailure("cannot read", path_);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void FileShareLog::Append(std::string_view line) {
  std::string data(line);
  data.push_back('\n');
  size_t written = 0;
  while (written < data.size()) {
    ssize_t n = ::write(fd_, data.data() + written, data.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      IoFailure("cannot append to", path_);
    }
    written += static_cast<size_t>(n);
  }
  if (::fdatasync(fd_) != 0) IoFailure("cannot sync", path_);
}

void FileShareLog::TruncateTo(size_t length) {
  if (::ftruncate(fd_, static_cast<off_t>(length)) != 0) {
    IoFailure("cannot truncate", path_);
  }
  if (::fdatasync(fd_) != 0) IoFailure("cannot sync", path_);
}

}  // namespace evote

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

// Durable storage for a collection center's share log.
//
// Text format, one record per line, fields separated by a single space:
//
//   EVOTE-SHARELOG v1 <election_id> <center_id> <prime>
//   <ballot_seq> <x> <y>
//   <ballot_seq> <x> <y> R
//
// The second form retracts an abandoned ballot. A final line without a
// trailing newline is a torn write that was never acknowledged.

#ifndef EVOTE_SHARE_LOG_H_
#define EVOTE_SHARE_LOG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace evote {

struct ShareLogHeader {
  std::string election_id;
  uint32_t center_id = 0;
  uint64_t prime = 0;

  friend bool operator==(const ShareLogHeader&,
                         const ShareLogHeader&) = default;
};

struct ShareLogRecord {
  enum class Kind { kShare, kRetract };

  uint64_t ballot_seq = 0;
  uint32_t x = 0;
  uint64_t y = 0;
  Kind kind = Kind::kShare;

  friend bool operator==(const ShareLogRecord&,
                         const ShareLogRecord&) = default;
};

// Election ids are 1-64 characters from [A-Za-z0-9._-].
bool IsValidElectionId(std::string_view id);

std::string FormatHeader(const ShareLogHeader& header);
std::string FormatRecord(const ShareLogRecord& record);

struct ParsedShareLog {
  ShareLogHeader header;
  std::vector<ShareLogRecord> records;
  // Bytes covered by complete lines; anything past this is a torn tail.
  size_t valid_length = 0;
};

// Syntax-level parse. Throws CorruptLog naming the offending record index
// (0 is the header).
ParsedShareLog ParseShareLog(std::string_view text);

class ShareLogStorage {
 public:
  virtual ~ShareLogStorage() = default;

  virtual std::string ReadAll() const = 0;
  // `line` excludes the newline. Durable once this returns.
  virtual void Append(std::string_view line) = 0;
  virtual void TruncateTo(size_t length) = 0;
};

class MemoryShareLog final : public ShareLogStorage {
 public:
  MemoryShareLog() = default;
  explicit MemoryShareLog(std::string contents)
      : contents_(std::move(contents)) {}

  std::string ReadAll() const override { return contents_; }
  void Append(std::string_view line) override;
  void TruncateTo(size_t length) override { contents_.resize(length); }

 private:
  std::string contents_;
};

// Appends are written with O_APPEND and fdatasync'd before returning.
class FileShareLog final : public ShareLogStorage {
 public:
  explicit FileShareLog(std::filesystem::path path);
  ~FileShareLog() override;

  FileShareLog(const FileShareLog&) = delete;
  FileShareLog& operator=(const FileShareLog&) = delete;

  std::string ReadAll() const override;
  void Append(std::string_view line) override;
  void TruncateTo(size_t length) override;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  int fd_ = -1;
};

}  // namespace evote

#endif  // EVOTE_SHARE_LOG_H_

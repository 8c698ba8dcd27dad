#pragma once

#include "newman/verifier.hpp"

#include <filesystem>
#include <fstream>
#include <utility>
#include <vector>

namespace newman {

// Line-oriented, append-only claim log:
//
//   # newman-claims v1
//   max_n 10000
//   primes 2 3 5 7 11 13 17
//   n 5 case-analysis
//   n 12 proven-mod 2
//   pass 2 done 11
//
// A final line without a newline is treated as torn and ignored.

struct CheckpointHeader {
  std::size_t max_n = 0;
  std::vector<std::uint32_t> primes;
  friend bool operator==(const CheckpointHeader&, const CheckpointHeader&) = default;
};

struct CheckpointContents {
  CheckpointHeader header;
  std::vector<std::pair<std::size_t, ClaimStatus>> claims;
  std::vector<std::pair<std::uint32_t, std::size_t>> passes;  // prime, proved-up-to
};

/// Throws IoError if unreadable and CheckpointMismatch if the content is malformed.
CheckpointContents read_checkpoint(const std::filesystem::path& path);

class CheckpointWriter {
 public:
  /// Creates (truncating) a checkpoint with the given header. Throws IoError.
  static CheckpointWriter create(const std::filesystem::path& path, const CheckpointHeader& header);
  /// Opens an existing checkpoint for appending. Throws IoError.
  static CheckpointWriter append(const std::filesystem::path& path);

  void claim(std::size_t n, const ClaimStatus& status);
  void pass_done(std::uint32_t prime, std::size_t proved_up_to);
  void flush();

 private:
  CheckpointWriter(std::ofstream out, std::filesystem::path path) : out_(std::move(out)), path_(std::move(path)) {}
  std::ofstream out_;
  std::filesystem::path path_;
};

}  // namespace newman

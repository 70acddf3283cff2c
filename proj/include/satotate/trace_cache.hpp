#pragma once

#include <filesystem>
#include <map>
#include <vector>

#include "satotate/lpoly.hpp"

namespace satotate {

// $SATOTATE_CACHE_DIR, else ~/.cache/satotate.
std::filesystem::path default_cache_directory();
std::filesystem::path default_cache_path(int m);

// Line-oriented store of trace records for one family:
//   #satotate-cache v1 m=<m>
//   m q a1 [a2 ...]
class TraceCache {
 public:
  TraceCache(std::filesystem::path path, int m) : path_(std::move(path)), m_(m) {}

  // Missing file gives an empty cache. Malformed content throws CacheCorruption.
  static TraceCache load(const std::filesystem::path& path, int m);
  // Sorted rewrite through a temporary file and rename.
  void save() const;

  const TraceRecord* find(u64 q) const;
  // Keeps whichever of the stored and the new record carries more coefficients.
  void insert(const TraceRecord& record);
  std::vector<TraceRecord> records() const;
  std::size_t size() const { return records_.size(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  int m_;
  std::map<u64, TraceRecord> records_;
};

}  // namespace satotate

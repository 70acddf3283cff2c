#include "satotate/trace_cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "satotate/errors.hpp"

namespace satotate {

namespace fs = std::filesystem;

fs::path default_cache_directory() {
  if (const char* dir = std::getenv("SATOTATE_CACHE_DIR"); dir && *dir) return fs::path(dir);
  if (const char* home = std::getenv("HOME"); home && *home) {
    return fs::path(home) / ".cache" / "satotate";
  }
  return fs::path(".satotate-cache");
}

fs::path default_cache_path(int m) {
  return default_cache_directory() / ("m" + std::to_string(m) + ".txt");
}

namespace {

std::string header_for(int m) { return "#satotate-cache v1 m=" + std::to_string(m); }

bool parse_int(const std::string& tok, i64& out) {
  if (tok.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stoll(tok, &pos);
  } catch (...) {
    return false;
  }
  return pos == tok.size();
}

}  // namespace

TraceCache TraceCache::load(const fs::path& path, int m) {
  TraceCache cache(path, m);
  std::ifstream in(path, std::ios::binary);
  if (!in) return cache;
  const std::string name = path.string();
  std::string line;
  std::size_t offset = 0;
  bool first = true;
  while (std::getline(in, line)) {
    const std::size_t line_offset = offset;
    offset += line.size() + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first) {
      first = false;
      if (line != header_for(m)) throw CacheCorruption(name, line_offset, "bad header");
      continue;
    }
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::vector<i64> values;
    std::string tok;
    while (fields >> tok) {
      i64 v;
      if (!parse_int(tok, v)) throw CacheCorruption(name, line_offset, "not an integer: " + tok);
      values.push_back(v);
    }
    if (values.size() < 3) throw CacheCorruption(name, line_offset, "expected m q a1 [a2 ...]");
    if (values[0] != m) throw CacheCorruption(name, line_offset, "record for another family");
    if (values[1] < 3) throw CacheCorruption(name, line_offset, "bad prime");
    TraceRecord r{static_cast<u64>(values[1]), values[2],
                  std::vector<i64>(values.begin() + 3, values.end())};
    if (cache.records_.count(r.q)) throw CacheCorruption(name, line_offset, "duplicate prime");
    cache.records_.emplace(r.q, std::move(r));
  }
  return cache;
}

void TraceCache::save() const {
  if (path_.has_parent_path()) fs::create_directories(path_.parent_path());
  fs::path tmp = path_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InternalError("cannot write cache file " + tmp.string());
    out << header_for(m_) << "\n";
    for (const auto& [q, r] : records_) {
      out << m_ << " " << r.q << " " << r.a;
      for (i64 d : r.deep) out << " " << d;
      out << "\n";
    }
    if (!out) throw InternalError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path_);
}

const TraceRecord* TraceCache::find(u64 q) const {
  auto it = records_.find(q);
  return it == records_.end() ? nullptr : &it->second;
}

void TraceCache::insert(const TraceRecord& record) {
  auto it = records_.find(record.q);
  if (it == records_.end()) {
    records_.emplace(record.q, record);
  } else if (record.deep.size() > it->second.deep.size()) {
    it->second = record;
  }
}

std::vector<TraceRecord> TraceCache::records() const {
  std::vector<TraceRecord> out;
  out.reserve(records_.size());
  for (const auto& [q, r] : records_) out.push_back(r);
  return out;
}

}  // namespace satotate

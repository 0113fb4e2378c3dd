#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "tica/sim_types.hpp"

namespace tica {

constexpr std::uint64_t kDefaultPageSize = 4096;

// One block I/O, page-granular. Multi-page requests are decomposed into
// per-page cache operations by the engine; the trace keeps the extent.
struct Request {
  std::uint64_t arrival_us = 0;  // microseconds since trace start, non-decreasing
  Page lba = 0;                  // page index
  std::uint32_t pages = 1;
  Op op = Op::Read;

  bool operator==(const Request&) const = default;
};

struct WorkloadStats {
  std::uint64_t total_requests = 0;
  std::uint64_t read_requests = 0;
  std::uint64_t write_requests = 0;
  std::uint64_t total_bytes = 0;  // page-granular: pages touched x page size
  std::uint64_t working_set_pages = 0;
  std::uint64_t read_working_set_pages = 0;
};

enum class Locality { Uniform, Zipf };

struct SyntheticSpec {
  std::uint64_t request_count = 0;
  double read_fraction = 0.5;
  std::uint64_t working_set_pages = 0;
  Locality locality = Locality::Uniform;
  double zipf_s = 1.0;  // used when locality == Zipf
  std::uint64_t page_size_bytes = kDefaultPageSize;
  std::uint64_t rng_seed = 1;

  void validate() const {
    if (request_count < 1) throw ConfigError("synthetic: request_count must be >= 1");
    if (read_fraction < 0.0 || read_fraction > 1.0)
      throw ConfigError("synthetic: read_fraction must be in [0,1]");
    if (working_set_pages < 1) throw ConfigError("synthetic: working_set_pages must be >= 1");
    if (locality == Locality::Zipf && zipf_s <= 0)
      throw ConfigError("synthetic: zipf exponent must be > 0");
    if (page_size_bytes < 1) throw ConfigError("synthetic: page_size_bytes must be >= 1");
  }
};

enum class TraceFormat { MsrCsv, NativeJsonLines };

namespace detail {

inline std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ||
                        s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

inline bool parse_u64(std::string_view s, std::uint64_t& out) {
  s = strip(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  return true;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace detail

// Parser for the 7-field research-trace CSV format:
//   Timestamp,Hostname,DiskNumber,Type,Offset,Size,ResponseTime
// Timestamps are 100ns ticks and are rebased to 0-based microseconds at the
// first record. Offset/Size are bytes; requests are page-aligned on output.
// The ResponseTime field is ignored (latency is simulated).
class MsrParser {
 public:
  explicit MsrParser(std::uint64_t page_size_bytes = kDefaultPageSize)
      : page_size_(page_size_bytes) {}

  Request parse_line(std::string_view line, std::uint64_t line_number) {
    auto fields = detail::split(detail::strip(line), ',');
    if (fields.size() != 7)
      throw TraceError("expected 7 comma-separated fields, got " +
                           std::to_string(fields.size()),
                       line_number);
    std::uint64_t ticks = 0, offset = 0, size = 0;
    if (!detail::parse_u64(fields[0], ticks))
      throw TraceError("non-numeric timestamp", line_number);
    Op op;
    auto type = detail::strip(fields[3]);
    if (detail::iequals(type, "Read"))
      op = Op::Read;
    else if (detail::iequals(type, "Write"))
      op = Op::Write;
    else
      throw TraceError("unknown op token '" + std::string(type) + "'", line_number);
    if (!detail::parse_u64(fields[4], offset))
      throw TraceError("non-numeric offset", line_number);
    if (!detail::parse_u64(fields[5], size))
      throw TraceError("non-numeric size", line_number);
    if (size == 0) throw TraceError("zero-size request", line_number);

    if (!first_ticks_) first_ticks_ = ticks;
    std::uint64_t rel_ticks = ticks >= *first_ticks_ ? ticks - *first_ticks_ : 0;
    Request r;
    r.arrival_us = rel_ticks / 10;  // 100ns ticks -> us
    if (r.arrival_us < last_arrival_us_) r.arrival_us = last_arrival_us_;
    last_arrival_us_ = r.arrival_us;
    r.lba = offset / page_size_;
    r.pages = static_cast<std::uint32_t>((offset % page_size_ + size + page_size_ - 1) /
                                         page_size_);
    r.op = op;
    return r;
  }

 private:
  std::uint64_t page_size_;
  std::optional<std::uint64_t> first_ticks_;
  std::uint64_t last_arrival_us_ = 0;
};

// Native golden-file format: one JSON object per line with keys
// arrival_us, lba, pages, op ("R"/"W").
inline std::string to_jsonl(const Request& r) {
  std::string out = "{\"arrival_us\":" + std::to_string(r.arrival_us) +
                    ",\"lba\":" + std::to_string(r.lba) +
                    ",\"pages\":" + std::to_string(r.pages) + ",\"op\":\"" +
                    (r.op == Op::Read ? "R" : "W") + "\"}";
  return out;
}

Request parse_jsonl_line(std::string_view line, std::uint64_t line_number);

struct LoadReport {
  std::vector<Request> requests;
  std::uint64_t lines_read = 0;
  std::uint64_t skipped = 0;          // malformed lines skipped
  bool header_skipped = false;        // tolerated non-record first line
};

// Reads a whole trace file. Malformed lines are skipped and counted; if the
// malformed fraction exceeds max_error_fraction the load aborts. A leading
// header line is tolerated in the CSV format. Desk-scale traces are held in
// memory; arrival times are normalized to start at 0.
inline LoadReport load_trace(const std::string& path, TraceFormat format,
                             std::uint64_t page_size_bytes = kDefaultPageSize,
                             double max_error_fraction = 0.01) {
  std::ifstream in(path);
  if (!in) throw TraceError("cannot open trace file: " + path, 0);
  LoadReport rep;
  MsrParser msr(page_size_bytes);
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = detail::strip(line);
    if (sv.empty()) continue;
    ++rep.lines_read;
    try {
      rep.requests.push_back(format == TraceFormat::MsrCsv
                                 ? msr.parse_line(sv, lineno)
                                 : parse_jsonl_line(sv, lineno));
    } catch (const TraceError&) {
      if (format == TraceFormat::MsrCsv && lineno == 1 && !rep.header_skipped) {
        rep.header_skipped = true;
        --rep.lines_read;
        continue;
      }
      ++rep.skipped;
    }
  }
  if (in.bad()) throw TraceError("I/O error reading " + path, lineno);
  if (rep.lines_read > 0 &&
      static_cast<double>(rep.skipped) / rep.lines_read > max_error_fraction)
    throw TraceError("malformed line fraction " + std::to_string(rep.skipped) + "/" +
                         std::to_string(rep.lines_read) + " exceeds limit",
                     lineno);
  return rep;
}

inline void write_jsonl(const std::vector<Request>& trace, std::ostream& out) {
  for (const auto& r : trace) out << to_jsonl(r) << '\n';
}

inline void write_jsonl_file(const std::vector<Request>& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw TraceError("cannot open output file: " + path, 0);
  write_jsonl(trace, out);
}

// Deterministic synthetic workload. The same spec yields a byte-identical
// trace on any platform: raw mt19937_64 output is mapped to [0,1) directly
// instead of going through implementation-defined distributions.
class SyntheticGenerator {
 public:
  explicit SyntheticGenerator(const SyntheticSpec& spec) : spec_(spec), rng_(spec.rng_seed) {
    spec_.validate();
    if (spec_.locality == Locality::Zipf) {
      cdf_.resize(spec_.working_set_pages);
      double total = 0;
      for (std::uint64_t rank = 1; rank <= spec_.working_set_pages; ++rank) {
        total += std::pow(static_cast<double>(rank), -spec_.zipf_s);
        cdf_[rank - 1] = total;
      }
    }
  }

  std::vector<Request> generate() {
    std::vector<Request> out;
    out.reserve(spec_.request_count);
    for (std::uint64_t i = 0; i < spec_.request_count; ++i) {
      Request r;
      r.arrival_us = i;
      r.op = next_unit() < spec_.read_fraction ? Op::Read : Op::Write;
      r.lba = draw_page();
      r.pages = 1;
      out.push_back(r);
    }
    return out;
  }

 private:
  double next_unit() {
    // 53-bit mantissa, uniform in [0,1)
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }

  Page draw_page() {
    double u = next_unit();
    if (spec_.locality == Locality::Uniform) {
      auto p = static_cast<Page>(u * static_cast<double>(spec_.working_set_pages));
      return p >= spec_.working_set_pages ? spec_.working_set_pages - 1 : p;
    }
    double target = u * cdf_.back();
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), target);
    return static_cast<Page>(it - cdf_.begin());
  }

  SyntheticSpec spec_;
  std::mt19937_64 rng_;
  std::vector<double> cdf_;
};

inline std::vector<Request> gen_synthetic(const SyntheticSpec& spec) {
  return SyntheticGenerator(spec).generate();
}

template <typename Iterable>
WorkloadStats trace_stats(const Iterable& trace,
                          std::uint64_t page_size_bytes = kDefaultPageSize) {
  WorkloadStats s;
  std::unordered_set<Page> touched;
  std::unordered_set<Page> read_touched;
  for (const Request& r : trace) {
    ++s.total_requests;
    if (r.op == Op::Read)
      ++s.read_requests;
    else
      ++s.write_requests;
    s.total_bytes += static_cast<std::uint64_t>(r.pages) * page_size_bytes;
    for (std::uint32_t k = 0; k < r.pages; ++k) {
      touched.insert(r.lba + k);
      if (r.op == Op::Read) read_touched.insert(r.lba + k);
    }
  }
  s.working_set_pages = touched.size();
  s.read_working_set_pages = read_touched.size();
  return s;
}

// -- jsonl parsing -----------------------------------------------------------
// The line format is fixed and flat, so a tolerant hand-rolled scan is enough
// and keeps trace loading dependency-free.

namespace detail {

inline bool find_json_u64(std::string_view line, std::string_view key, std::uint64_t& out) {
  std::string needle = "\"" + std::string(key) + "\"";
  auto pos = line.find(needle);
  if (pos == std::string_view::npos) return false;
  pos = line.find(':', pos + needle.size());
  if (pos == std::string_view::npos) return false;
  ++pos;
  while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  std::size_t end = pos;
  while (end < line.size() && std::isdigit(static_cast<unsigned char>(line[end]))) ++end;
  if (end == pos) return false;
  return parse_u64(line.substr(pos, end - pos), out);
}

inline bool find_json_op(std::string_view line, Op& out) {
  auto pos = line.find("\"op\"");
  if (pos == std::string_view::npos) return false;
  pos = line.find(':', pos + 4);
  if (pos == std::string_view::npos) return false;
  pos = line.find('"', pos);
  if (pos == std::string_view::npos || pos + 1 >= line.size()) return false;
  char c = line[pos + 1];
  if (c == 'R')
    out = Op::Read;
  else if (c == 'W')
    out = Op::Write;
  else
    return false;
  return true;
}

}  // namespace detail

inline Request parse_jsonl_line(std::string_view line, std::uint64_t line_number) {
  Request r;
  std::uint64_t pages = 0;
  if (!detail::find_json_u64(line, "arrival_us", r.arrival_us))
    throw TraceError("missing arrival_us", line_number);
  if (!detail::find_json_u64(line, "lba", r.lba))
    throw TraceError("missing lba", line_number);
  if (!detail::find_json_u64(line, "pages", pages) || pages < 1)
    throw TraceError("missing or invalid pages", line_number);
  if (!detail::find_json_op(line, r.op)) throw TraceError("missing op", line_number);
  r.pages = static_cast<std::uint32_t>(pages);
  return r;
}

}  // namespace tica

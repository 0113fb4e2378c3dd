#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tica {

using Page = std::uint64_t;
// Simulation clock in microseconds. Latencies may be fractional.
using SimTime = double;

enum class Op { Read, Write };

enum class Level { Dram, RoSsd, WoSsd, Miss };

enum class ServedBy { DramHit, RoSsdHit, WoSsdHit, HddMiss, WriteBuffered };

enum class EvictDest {
  GhostQueue,  // id recorded in EQ, data dropped
  WoSsd,       // copied to WO-SSD (WED)
  Hdd,         // written back to HDD before discard
  Dropped,     // discarded, surviving copy elsewhere
};

struct Eviction {
  Page page;
  EvictDest dest;
};

struct PageOpResult {
  SimTime latency_us = 0;
  ServedBy served_by = ServedBy::HddMiss;
  std::vector<Eviction> evictions;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TraceError : std::runtime_error {
  TraceError(const std::string& msg, std::uint64_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_number(line) {}
  std::uint64_t line_number;
};

struct AccountingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline const char* to_string(ServedBy s) {
  switch (s) {
    case ServedBy::DramHit: return "dram_hit";
    case ServedBy::RoSsdHit: return "ro_ssd_hit";
    case ServedBy::WoSsdHit: return "wo_ssd_hit";
    case ServedBy::HddMiss: return "hdd_miss";
    case ServedBy::WriteBuffered: return "write_buffered";
  }
  return "?";
}

inline const char* to_string(EvictDest d) {
  switch (d) {
    case EvictDest::GhostQueue: return "eq";
    case EvictDest::WoSsd: return "wo_ssd";
    case EvictDest::Hdd: return "hdd";
    case EvictDest::Dropped: return "dropped";
  }
  return "?";
}

}  // namespace tica

#pragma once

// Record serialization (CSV, JSON lines) and the scan checkpoint file.

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pfc/scan.hpp"

namespace pfc {

enum class Format { Csv, Jsonl };

// "csv" or "jsonl"; throws ConfigError otherwise.
Format parse_format(const std::string& name);

inline constexpr const char* kCsvHeader = "r,t,y,h,p,rho";

// One line without the trailing newline; rho printed with 6 decimals.
std::string format_record(const Sextuple& s, Format fmt);

class RecordSink {
public:
    RecordSink(std::ostream& out, Format fmt) : out_(out), fmt_(fmt) {}

    void header();
    void write(const Sextuple& s);
    void flush() { out_.flush(); }

private:
    std::ostream& out_;
    Format fmt_;
};

// Parses a CSV file written by RecordSink (header included). Throws std::runtime_error on bad rows.
std::vector<Sextuple> read_csv(std::istream& in);

struct Checkpoint {
    int version = 1;
    std::string config_digest;
    u64 next_r = 0;
    u64 emitted_count = 0;
};

// Writes to path + ".tmp" and renames over path.
void save_checkpoint(const std::string& path, const Checkpoint& cp);

// Absent if the file does not exist; throws std::runtime_error if it is unreadable.
std::optional<Checkpoint> load_checkpoint(const std::string& path);

} // namespace pfc

#pragma once

// Scan driver: blocks are computed in parallel waves and handed back to the
// calling thread, which owns the sink and the checkpoint file and flushes
// blocks strictly in range order.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "pfc/output.hpp"
#include "pfc/scan.hpp"

namespace pfc {

struct DriveOptions {
    ScanOptions scan;
    Format format = Format::Csv;
    std::string out_path;        ///< empty: write to the stream passed to drive_scan
    std::string checkpoint_path; ///< empty: no checkpointing; otherwise out_path is required
    // Stop after flushing this many blocks, leaving the checkpoint behind (simulates an interrupt).
    std::optional<std::uint64_t> stop_after_blocks;
};

// Emits the records of scan_range(cfg) and returns how many were written in total
// (including those restored from a checkpoint). A checkpoint with a different
// config digest is rejected with ConfigError.
std::uint64_t drive_scan(const ScanConfig& cfg, const DriveOptions& opts, std::ostream& default_out);

} // namespace pfc

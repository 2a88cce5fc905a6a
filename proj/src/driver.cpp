#include "pfc/driver.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <vector>

#include "pfc/errors.hpp"
#include "pfc/omp.hpp"

namespace pfc {

namespace {

// Cuts the file back to the header plus `records` lines.
void truncate_records(const std::string& path, Format fmt, u64 records) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("checkpoint exists but output file " + path + " is missing");
    u64 keep_lines = records + (fmt == Format::Csv ? 1 : 0);
    u64 offset = 0;
    std::string line;
    while (keep_lines > 0 && std::getline(in, line)) {
        if (in.eof()) break; // partial final line
        offset += line.size() + 1;
        --keep_lines;
    }
    if (keep_lines > 0) throw ConfigError("output file " + path + " is shorter than the checkpoint claims");
    in.close();
    std::filesystem::resize_file(path, offset);
}

} // namespace

std::uint64_t drive_scan(const ScanConfig& cfg, const DriveOptions& opts, std::ostream& default_out) {
    cfg.validate();
    if (!opts.checkpoint_path.empty() && opts.out_path.empty())
        throw ConfigError("--checkpoint requires --out");
    if (opts.scan.on_warning)
        for (const auto& w : config_warnings(cfg)) opts.scan.on_warning(w);

    const std::string digest = cfg.digest();
    Checkpoint cp{1, digest, cfg.min_r, 0};
    bool resumed = false;
    if (!opts.checkpoint_path.empty()) {
        if (auto saved = load_checkpoint(opts.checkpoint_path)) {
            if (saved->config_digest != digest)
                throw ConfigError("checkpoint was written for " + saved->config_digest + ", not " + digest);
            if (saved->next_r < cfg.min_r || saved->next_r > cfg.max_r + 1)
                throw ConfigError("checkpoint next_r outside the scan range");
            cp = *saved;
            resumed = true;
            truncate_records(opts.out_path, opts.format, cp.emitted_count);
        }
    }

    std::ofstream file;
    if (!opts.out_path.empty()) {
        file.open(opts.out_path, resumed ? std::ios::app : std::ios::trunc);
        if (!file) throw ConfigError("cannot open --out " + opts.out_path);
    }
    std::ostream& out = opts.out_path.empty() ? default_out : file;
    RecordSink sink(out, opts.format);
    if (!resumed) {
        sink.header();
        sink.flush();
        if (!opts.checkpoint_path.empty()) save_checkpoint(opts.checkpoint_path, cp);
    }
    if (cp.next_r > cfg.max_r) return cp.emitted_count;

    const BlockScanner scanner(cfg, opts.scan.method);
    const auto blocks = split_blocks(cp.next_r, cfg.max_r, opts.scan.block_width);
    const int nthreads = opts.scan.threads == 0 ? omp_get_max_threads() : static_cast<int>(opts.scan.threads);
    const std::size_t wave = static_cast<std::size_t>(std::max(1, nthreads)) * 4;

    u64 flushed_blocks = 0;
    for (std::size_t first = 0; first < blocks.size(); first += wave) {
        const std::size_t last = std::min(blocks.size(), first + wave);
        std::vector<std::vector<Sextuple>> results(last - first);
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
        for (std::size_t i = first; i < last; ++i) results[i - first] = scanner.scan_block(blocks[i].first, blocks[i].second);

        for (std::size_t i = first; i < last; ++i) {
            for (const auto& s : results[i - first]) sink.write(s);
            sink.flush();
            if (!out) throw std::runtime_error("write to output failed");
            cp.emitted_count += results[i - first].size();
            cp.next_r = blocks[i].second + 1;
            if (!opts.checkpoint_path.empty()) save_checkpoint(opts.checkpoint_path, cp);
            if (opts.stop_after_blocks && ++flushed_blocks >= *opts.stop_after_blocks) return cp.emitted_count;
        }
    }
    return cp.emitted_count;
}

} // namespace pfc

#include "pfc/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pfc/errors.hpp"

namespace pfc {

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "jsonl") return Format::Jsonl;
    throw ConfigError("--format must be csv or jsonl, got '" + name + "'");
}

std::string format_record(const Sextuple& s, Format fmt) {
    char rho[32];
    std::snprintf(rho, sizeof rho, "%.6f", s.rho);
    std::ostringstream os;
    if (fmt == Format::Csv) {
        os << s.r << ',' << s.t << ',' << s.y << ',' << s.h << ',' << s.p << ',' << rho;
    } else {
        os << "{\"r\":" << s.r << ",\"t\":" << s.t << ",\"y\":" << s.y << ",\"h\":" << s.h << ",\"p\":" << s.p
           << ",\"rho\":" << rho << '}';
    }
    return os.str();
}

void RecordSink::header() {
    if (fmt_ == Format::Csv) out_ << kCsvHeader << '\n';
}

void RecordSink::write(const Sextuple& s) { out_ << format_record(s, fmt_) << '\n'; }

std::vector<Sextuple> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("missing CSV header");
    std::vector<Sextuple> out;
    while (std::getline(in, line)) {
        Sextuple s;
        char tail = 0;
        if (std::sscanf(line.c_str(), "%lu,%ld,%lu,%lu,%lu,%lf%c", &s.r, &s.t, &s.y, &s.h, &s.p, &s.rho, &tail) != 6)
            throw std::runtime_error("bad CSV row: " + line);
        out.push_back(s);
    }
    return out;
}

void save_checkpoint(const std::string& path, const Checkpoint& cp) {
    const nlohmann::json j = {{"version", cp.version},
                              {"config_digest", cp.config_digest},
                              {"next_r", cp.next_r},
                              {"emitted_count", cp.emitted_count}};
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::trunc);
        f << j.dump() << '\n';
        f.flush();
        if (!f) throw std::runtime_error("cannot write checkpoint " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::optional<Checkpoint> load_checkpoint(const std::string& path) {
    std::ifstream f(path);
    if (!f) return std::nullopt;
    try {
        const nlohmann::json j = nlohmann::json::parse(f);
        Checkpoint cp;
        cp.version = j.at("version").get<int>();
        cp.config_digest = j.at("config_digest").get<std::string>();
        cp.next_r = j.at("next_r").get<u64>();
        cp.emitted_count = j.at("emitted_count").get<u64>();
        if (cp.version != 1) throw std::runtime_error("unsupported checkpoint version");
        return cp;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("unreadable checkpoint " + path + ": " + e.what());
    }
}

} // namespace pfc

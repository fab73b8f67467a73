#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "laclab/classify.hpp"
#include "laclab/errors.hpp"
#include "laclab/sequence.hpp"
#include "laclab/simulate.hpp"

namespace laclab {

// CSV dialect is fixed: comma separator, '.' decimal point, LF line endings,
// mandatory header row. Doubles print via to_chars (shortest round-trip), so
// emitted files are byte-stable and re-ingesting loses nothing.

inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string sequence_to_csv(const SequenceSource& s) {
    std::string out = "k,value\n";
    for (std::int64_t k = 1; k <= s.prefix_len(); ++k)
        out += std::to_string(k) + "," + format_double(s(k)) + "\n";
    return out;
}

inline std::string block_means_to_csv(const BlockMeanSeries& series) {
    std::string out = "r,h,t\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        out += std::to_string(series.block_index[i]) + "," +
               std::to_string(series.block_length[i]) + "," + format_double(series.values[i]) +
               "\n";
    return out;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        auto comma = line.find(',', pos);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return fields;
}

}  // namespace detail

/// Parses `k,value` CSV text; rows must cover k = 1..N in order.
inline SequenceSource sequence_from_csv(const std::string& text, const std::string& label) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw DataError("sequence CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "k,value")
        throw DataError("sequence CSV: expected header 'k,value', got '" + line + "'");
    std::vector<double> values;
    std::int64_t expect = 1;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != 2)
            throw DataError("sequence CSV line " + std::to_string(line_no) +
                            ": expected 2 fields");
        try {
            if (std::stoll(fields[0]) != expect)
                throw DataError("sequence CSV line " + std::to_string(line_no) +
                                ": indices must run 1..N without gaps");
            values.push_back(std::stod(fields[1]));
        } catch (const DataError&) {
            throw;
        } catch (const std::exception&) {
            throw DataError("sequence CSV line " + std::to_string(line_no) + ": bad number");
        }
        ++expect;
    }
    if (values.empty()) throw DataError("sequence CSV: no data rows");
    return SequenceSource::from_values(label, std::move(values));
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << content;
}

inline SequenceSource load_sequence_csv(const std::string& path) {
    auto stem = path;
    if (auto slash = stem.find_last_of('/'); slash != std::string::npos)
        stem = stem.substr(slash + 1);
    if (auto dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);
    return sequence_from_csv(read_file(path), stem);
}

}  // namespace laclab

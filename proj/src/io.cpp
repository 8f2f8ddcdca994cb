#include "e2rc/io.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace e2rc {

std::vector<std::vector<std::uint8_t>> read_bit_frames(std::istream& in) {
    std::vector<std::vector<std::uint8_t>> frames;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::uint8_t> frame;
        frame.reserve(line.size());
        for (char c : line) {
            if (c != '0' && c != '1')
                throw std::invalid_argument("bit frames may contain only 0 and 1");
            frame.push_back(static_cast<std::uint8_t>(c - '0'));
        }
        frames.push_back(std::move(frame));
    }
    return frames;
}

void write_bit_frames(std::ostream& out, const std::vector<std::vector<std::uint8_t>>& frames) {
    for (const auto& frame : frames) {
        for (std::uint8_t b : frame) out.put(b ? '1' : '0');
        out.put('\n');
    }
}

std::vector<std::vector<double>> read_llr_frames(std::istream& in) {
    std::vector<std::vector<double>> frames;
    std::vector<double> current;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            if (!current.empty()) frames.push_back(std::move(current));
            current.clear();
            continue;
        }
        std::size_t used = 0;
        double value = std::stod(line, &used);
        while (used < line.size() && std::isspace(static_cast<unsigned char>(line[used])))
            ++used;
        if (used != line.size())
            throw std::invalid_argument("llr line holds more than one value: " + line);
        current.push_back(value);
    }
    if (!current.empty()) frames.push_back(std::move(current));
    return frames;
}

void write_llr_frames(std::ostream& out, const std::vector<std::vector<double>>& frames) {
    std::ostringstream buf;
    buf.precision(17);
    for (std::size_t f = 0; f < frames.size(); ++f) {
        if (f > 0) buf << '\n';
        for (double v : frames[f]) buf << v << '\n';
    }
    out << buf.str();
}

std::vector<std::size_t> read_index_list(std::istream& in) {
    std::vector<std::size_t> indices;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t used = 0;
        long long value = std::stoll(line, &used);
        if (used != line.size() || value < 0)
            throw std::invalid_argument("index lines hold one nonnegative integer: " + line);
        indices.push_back(static_cast<std::size_t>(value));
    }
    return indices;
}

void write_index_list(std::ostream& out, const std::vector<std::size_t>& indices) {
    for (std::size_t v : indices) out << v << '\n';
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace e2rc

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace e2rc {

// Bit frames: one frame per line, one ASCII 0/1 character per bit.
std::vector<std::vector<std::uint8_t>> read_bit_frames(std::istream& in);
void write_bit_frames(std::ostream& out, const std::vector<std::vector<std::uint8_t>>& frames);

// LLR frames: one real per line, frames separated by a blank line.
std::vector<std::vector<double>> read_llr_frames(std::istream& in);
void write_llr_frames(std::ostream& out, const std::vector<std::vector<double>>& frames);

// Index lists: one 0-based index per line.
std::vector<std::size_t> read_index_list(std::istream& in);
void write_index_list(std::ostream& out, const std::vector<std::size_t>& indices);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace e2rc

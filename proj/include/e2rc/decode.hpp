#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "e2rc/bit_matrix.hpp"

namespace e2rc {

// A fully-known check with odd parity, or two checks forcing different
// values onto one erased bit. Signals corrupted input, not decoder failure.
struct DecodeContradiction : std::runtime_error {
    std::size_t check;
    DecodeContradiction(std::size_t row, const std::string& what)
        : std::runtime_error(what), check(row) {}
};

struct PeelResult {
    std::vector<std::uint8_t> bits;  // meaningful where known
    std::vector<char> known;
    // 0 for bits known at entry, round number for recovered bits,
    // SIZE_MAX for bits the peeler never reached.
    std::vector<std::size_t> recovered_step;
    std::size_t iterations = 0;  // rounds that recovered at least one bit
    bool complete = false;
};

// Synchronous erasure peeling: each round resolves every bit that is the
// unique unknown of some check, all at once. Stops at a fixed point.
PeelResult peel_erasures(const BitMatrix& h, const std::vector<std::uint8_t>& bits,
                         const std::vector<char>& known);

struct LlrFrame {
    std::vector<double> llr;  // log P(0)/P(1); exactly 0 at punctured positions
    std::vector<char> punctured;
};

// llr = 2y/sigma^2 under the 0 -> +1, 1 -> -1 map; punctured entries get 0.
LlrFrame llr_from_awgn(const std::vector<double>& received, double noise_variance,
                       const std::vector<char>& punctured);

struct DecodeResult {
    std::vector<std::uint8_t> hard_bits;
    std::size_t iterations_used = 0;
    bool converged = false;  // zero syndrome reached
};

// Flooding sum-product: tanh-rule check messages via prefix/suffix products
// (zero LLRs need no special casing), LLR-sum variable messages, hard
// decision and syndrome check after every iteration, early exit on success.
// Messages are clamped to +-30.
DecodeResult bp_decode(const BitMatrix& h, const LlrFrame& frame, std::size_t max_iters);

}  // namespace e2rc

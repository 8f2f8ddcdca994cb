#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "e2rc/bit_matrix.hpp"
#include "e2rc/profile.hpp"

namespace e2rc {

// s = H1 m^T over GF(2); h1 is the systematic block on its own.
std::vector<std::uint8_t> syndrome_target(const BitMatrix& h1, const std::vector<std::uint8_t>& m);

// Solves H2 p^T = s^T for lower-triangular H2 with unit diagonal, row by
// row. Linear in the nonzeros.
std::vector<std::uint8_t> encode_back_substitution(const BitMatrix& h2,
                                                   const std::vector<std::uint8_t>& s);

// Tap pattern of the shift-register encoder at row time t. g has gamma(1)
// entries; g[i] can be nonzero only at i = gamma(1) - gamma(k).
struct WindowCoefficients {
    std::vector<std::uint8_t> g;
    std::size_t t = 0;
};

WindowCoefficients window_coefficients(const E2rcProfile& profile, std::size_t t);

// Shift-register realization of back-substitution with exactly gamma(1)
// memory cells and the time-varying taps above. Full regime only.
std::vector<std::uint8_t> encode_sliding_window(const E2rcProfile& profile,
                                                const std::vector<std::uint8_t>& s);

struct ErasureEncodeResult {
    std::vector<std::uint8_t> parity;
    std::size_t iterations = 0;
};

// Encodes by erasure decoding over the full code graph: systematic bits
// known, parities erased, peel to completion. Throws if any parity stays
// unresolved (possible only for matrices without the recovery structure).
ErasureEncodeResult encode_by_erasure(const BitMatrix& h, const E2rcProfile& profile,
                                      const std::vector<std::uint8_t>& m);

struct SingularMatrixError : std::runtime_error {
    // XOR of these rows of the offending matrix is the zero vector.
    std::vector<std::size_t> dependent_rows;
    SingularMatrixError(std::vector<std::size_t> rows, const std::string& what)
        : std::runtime_error(what), dependent_rows(std::move(rows)) {}
};

// Offline solve schedule for an arbitrary invertible square parity part.
// Columns [loose, size) form a staircase (column loose + t has top row t)
// and are filled by forward substitution; the leading `loose` columns are
// solved through a precomputed dense inverse of the residual system. A
// fully triangular matrix has loose == 0 and degenerates to plain
// back-substitution.
struct EncodePlan {
    BitMatrix h2;
    std::size_t staircase = 0;
    std::size_t loose = 0;
    std::vector<std::vector<std::uint64_t>> inverse;  // loose rows of loose bits
};

EncodePlan build_encode_plan(const BitMatrix& h2);

// Online phase: two substitution passes plus a loose x loose mat-vec.
std::vector<std::uint8_t> encode_with_plan(const EncodePlan& plan,
                                           const std::vector<std::uint8_t>& s);

}  // namespace e2rc

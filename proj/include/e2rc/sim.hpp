#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "e2rc/bit_matrix.hpp"
#include "e2rc/profile.hpp"

namespace e2rc {

struct SimConfig {
    std::vector<double> rates;  // transmitted-rate ladder, mother rate first
    std::vector<double> ebn0_grid_db;
    std::size_t min_frame_errors = 100;
    std::size_t max_frames = 10'000'000;
    std::uint64_t seed = 1;
    std::size_t max_iters = 80;
    unsigned threads = 0;  // 0 picks the hardware concurrency
};

struct SimRecord {
    double rate = 0.0;  // realized transmitted rate K/(N-p)
    double ebn0_db = 0.0;
    std::size_t frames = 0;
    std::size_t bit_errors = 0;    // message bits only
    std::size_t frame_errors = 0;  // frames with any message bit wrong
    double ber = 0.0;
    double fer = 0.0;
    double mean_iterations = 0.0;
};

// Eb/N0 is referenced to the transmitted rate, so punctured codes are
// compared at equal energy per information bit.
double noise_variance(double ebn0_db, double rate);

// BPSK (0 -> +1, 1 -> -1) plus white Gaussian noise, returned for the
// unpunctured positions only, in codeword order.
std::vector<double> awgn_transmit(const std::vector<std::uint8_t>& codeword,
                                  const std::vector<char>& punctured, double variance,
                                  std::mt19937_64& rng);

// One record per (rate, ebn0) grid point. Every frame draws its generator
// from (seed, grid point, frame index), and the stop rule is evaluated at
// fixed chunk boundaries, so the output does not depend on the thread count.
std::vector<SimRecord> run_ber_sweep(const BitMatrix& h, const E2rcProfile& profile,
                                     const SimConfig& cfg);

std::string format_csv(const std::vector<SimRecord>& records);

}  // namespace e2rc

#pragma once

#include <cstddef>
#include <vector>

#include "e2rc/bit_matrix.hpp"
#include "e2rc/profile.hpp"

namespace e2rc {

// Nested puncturing order: dropping a prefix of `order` realizes every rate
// between mother_rate and max_rate, and higher-rate sets contain lower-rate
// ones by construction.
struct PunctureSchedule {
    std::vector<std::size_t> order;  // codeword column indices, preferred first
    double mother_rate = 0.0;
    double max_rate = 0.0;
};

// Recovery depth per variable node under error-free peeling: 0 means the
// node was never punctured, k means it resolves in round k, SIZE_MAX means
// it never resolves.
struct SrClassification {
    std::vector<std::size_t> level;
};

// Symbols to drop when moving a length-n mother code of rate mother_rate up
// to target_rate; half-integers round up.
std::size_t puncture_count(std::size_t n, double mother_rate, double target_rate);

double mother_rate(const E2rcProfile& profile);

// Highest rate reachable by puncturing degree-2 parity columns only.
double max_rate(const E2rcProfile& profile);

PunctureSchedule puncture_schedule(const E2rcProfile& profile);

SrClassification classify_sr(const BitMatrix& h, const std::vector<std::size_t>& punctured);

// First puncture_count entries of the schedule; rejects targets beyond the
// schedule's max_rate.
std::vector<std::size_t> apply_puncturing(const PunctureSchedule& schedule, double target_rate,
                                          std::size_t n);

}  // namespace e2rc

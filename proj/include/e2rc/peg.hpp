#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "e2rc/bit_matrix.hpp"
#include "e2rc/degree_distribution.hpp"
#include "e2rc/profile.hpp"

namespace e2rc {

// What progressive edge growth should add to a parity part: degrees for the
// new systematic columns and for any empty high-degree parity columns, plus
// optional per-row degree targets steering check selection toward a desired
// check distribution. Construction is deterministic for identical targets.
struct ConstructionTarget {
    std::vector<std::size_t> message_degrees;     // one per systematic column
    std::vector<std::size_t> fill_degrees;        // one per empty parity column
    std::vector<std::size_t> row_degree_targets;  // empty: flatten row degrees
    std::size_t girth_floor = 6;                  // 6 forbids length-4 cycles
    std::uint64_t seed = 0;

    void validate(std::size_t parity_count) const;
};

struct PegInfeasibleError : std::runtime_error {
    std::size_t column;
    PegInfeasibleError(std::size_t col, const std::string& what)
        : std::runtime_error(what), column(col) {}
};

// Splits a variable-side distribution into integer per-column degrees for
// `message_count + fill_count` columns. Degree-1 and degree-2 mass is owned
// by the fixed parity structure and excluded here; the remaining classes are
// apportioned by largest remainder (ties favor the larger degree) against
// `edge_budget` when it is positive, else proportionally by column count.
// The result is ascending.
std::vector<std::size_t> assign_column_degrees(const DegreeDistribution& dist,
                                               std::size_t message_count,
                                               std::size_t fill_count,
                                               std::size_t edge_budget);

// Derives a full target from a distribution: column degrees via
// assign_column_degrees (the smallest degrees go to the fill columns), row
// degree targets from the check side matched heaviest-to-heaviest against
// the fixed parity rows.
ConstructionTarget make_construction_target(const DegreeDistribution& dist,
                                            const E2rcProfile& profile, const BitMatrix& h2,
                                            std::uint64_t seed);

// Progressive edge growth around a fixed parity part. Returns the full
// parity-check matrix [systematic | parity]; the nonempty parity columns are
// copied through untouched. Each new edge connects to a check whose distance
// from the column in the current graph keeps every created cycle at length
// girth_floor or more (unreachable checks preferred implicitly); among those
// the check with the largest remaining degree deficit wins, then the lowest
// current degree, then the lowest index. Throws PegInfeasibleError when a
// column cannot be placed without a length-4 cycle.
BitMatrix peg_build(const BitMatrix& h2, const ConstructionTarget& target);

struct FourCycle {
    std::size_t col_a, col_b;  // columns sharing two rows
    std::size_t row_a, row_b;
};

// Every unordered column pair sharing at least two rows, with the first two
// shared rows as witness.
std::vector<FourCycle> audit_4cycles(const BitMatrix& h);

}  // namespace e2rc

#pragma once

#include <cstddef>
#include <map>
#include <string>

namespace e2rc {

// Edge-perspective degree distribution pair: coefficient at degree i is the
// fraction of edges incident to degree-i nodes on that side. Each side sums
// to one; parsing normalizes away publication rounding before validation.
struct DegreeDistribution {
    std::map<std::size_t, double> variable;  // degree -> edge fraction
    std::map<std::size_t, double> check;

    // Throws std::invalid_argument when a coefficient falls outside [0, 1],
    // a degree is zero, or a nonempty side does not sum to 1 within 1e-9.
    void validate() const;

    // 1 / sum(coeff_i / i): the average node degree implied by one side.
    static double mean_degree(const std::map<std::size_t, double>& side);
};

// Text format: a "variable" section then an optional "check" section, each a
// list of "degree fraction" lines. '#' starts a comment. Sides are rescaled
// to sum exactly to one (inputs rounded to a few decimals stay usable).
DegreeDistribution parse_distribution(const std::string& text);
std::string format_distribution(const DegreeDistribution& dist);

}  // namespace e2rc

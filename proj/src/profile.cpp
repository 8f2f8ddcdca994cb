#include "e2rc/profile.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace e2rc {

E2rcProfile compute_profile(std::size_t parity_count, std::size_t degree2_count,
                            std::size_t message_count) {
    if (parity_count < 2) throw std::invalid_argument("parity count must be at least 2");
    if (degree2_count < 1 || degree2_count > parity_count - 1)
        throw std::invalid_argument("degree-2 column count must lie in [1, parity_count - 1]");

    E2rcProfile p;
    p.parity_count = parity_count;
    p.message_count = message_count;
    p.degree2_count = degree2_count;
    p.regime = degree2_count == parity_count - 1 ? Regime::full : Regime::low_rate;
    p.block_start.push_back(0);

    // Each block claims half of the still-uncovered parity rows, rounded
    // down; the remainder after the last block is a single row in the full
    // regime (one degree-1 column) and the high-degree fill otherwise.
    std::size_t covered = 0;
    if (p.regime == Regime::full) {
        std::size_t depth = static_cast<std::size_t>(std::bit_width(parity_count - 1));
        for (std::size_t k = 1; k <= depth; ++k) {
            std::size_t block = (parity_count - covered) / 2;
            p.block_cols.push_back(block);
            covered += block;
            p.block_start.push_back(covered);
        }
        p.depth = depth;
        if (covered != parity_count - 1)
            throw std::logic_error("block sizes failed to cover all but one parity");
        std::size_t tail = 1;  // the degree-1 column
        for (std::size_t k = 1; k <= depth; ++k)
            tail += p.block_cols[k - 1] + p.block_start[k] - covered;
        p.last_row_degree = tail;
    } else {
        for (;;) {
            std::size_t half = (parity_count - covered) / 2;
            if (covered + half >= degree2_count) {
                p.block_cols.push_back(degree2_count - covered);
                p.deep_row_span = half;
                covered = degree2_count;
                p.block_start.push_back(covered);
                break;
            }
            p.block_cols.push_back(half);
            covered += half;
            p.block_start.push_back(covered);
        }
        p.depth = p.block_cols.size();
    }
    return p;
}

std::vector<std::size_t> sr_column(const E2rcProfile& profile, std::size_t k, std::size_t j) {
    if (profile.regime == Regime::full && k == profile.depth + 1) {
        if (j != 0) throw std::invalid_argument("the degree-1 block has a single column");
        return {profile.parity_count - 1};
    }
    if (k < 1 || k > profile.depth) throw std::invalid_argument("no such recovery block");
    if (j >= profile.block_cols[k - 1]) throw std::invalid_argument("column index outside block");

    std::size_t first = j + profile.block_start[k - 1];
    std::size_t offset = (profile.regime == Regime::low_rate && k == profile.depth)
                             ? profile.deep_row_span
                             : profile.block_cols[k - 1];
    std::size_t second = first + offset;
    if (second >= profile.parity_count) throw std::logic_error("block row overflow");
    return {first, second};
}

BitMatrix build_parity_part(const E2rcProfile& profile) {
    const std::size_t m = profile.parity_count;
    BitMatrix h2(m, m);
    const std::size_t fill = profile.high_degree_parity_count();
    for (std::size_t k = 1; k <= profile.depth; ++k) {
        for (std::size_t j = 0; j < profile.block_cols[k - 1]; ++j) {
            std::size_t c = fill + profile.block_start[k - 1] + j;
            for (std::size_t r : sr_column(profile, k, j)) h2.add_entry(r, c);
        }
    }
    if (profile.regime == Regime::full) h2.add_entry(m - 1, m - 1);
    return h2;
}

namespace {

// Block index of a degree-2 region column (1-based); depth + 1 names the
// degree-1 column in the full regime.
std::size_t block_of(const E2rcProfile& p, std::size_t region_col) {
    if (p.regime == Regime::full && region_col == p.parity_count - 1) return p.depth + 1;
    auto it = std::upper_bound(p.block_start.begin(), p.block_start.end(), region_col);
    return static_cast<std::size_t>(it - p.block_start.begin());
}

}  // namespace

VerifyReport verify_parity_part(const BitMatrix& h2, const E2rcProfile& profile) {
    VerifyReport report;
    const std::size_t m = profile.parity_count;
    const std::size_t fill = profile.high_degree_parity_count();

    auto& dims = report.items.emplace_back(VerifyReport::Item{"dimensions", true, ""});
    if (h2.rows() != m || h2.cols() != m) {
        dims.pass = false;
        dims.detail = "expected a square parity part of side " + std::to_string(m);
        return report;  // nothing else is meaningful
    }

    std::vector<std::size_t> degree2_cols;
    for (std::size_t c = fill; c < fill + profile.degree2_count; ++c) degree2_cols.push_back(c);

    {
        auto& item = report.items.emplace_back(VerifyReport::Item{"column_shape", true, ""});
        for (std::size_t c : degree2_cols) {
            if (h2.col(c).size() != 2) {
                item.pass = false;
                item.detail = "column " + std::to_string(c) + " is not degree 2";
                break;
            }
        }
        if (item.pass && profile.regime == Regime::full && h2.col(m - 1).size() != 1) {
            item.pass = false;
            item.detail = "final column is not degree 1";
        }
        if (item.pass && profile.regime == Regime::low_rate) {
            for (std::size_t c = 0; c < fill; ++c) {
                std::size_t d = h2.col(c).size();
                if (d != 0 && d < 3) {
                    item.pass = false;
                    item.detail = "fill column " + std::to_string(c) + " has degree " +
                                  std::to_string(d) + " (want 0 or >= 3)";
                    break;
                }
            }
        }
    }

    if (profile.regime == Regime::full) {
        auto& item = report.items.emplace_back(VerifyReport::Item{"triangular", true, ""});
        for (std::size_t c = 0; c < m; ++c) {
            if (h2.col(c).empty() || h2.col(c).front() != c) {
                item.pass = false;
                item.detail = "column " + std::to_string(c) + " lacks a unit diagonal entry";
                break;
            }
        }
    }

    {
        auto& item = report.items.emplace_back(VerifyReport::Item{"degree2_acyclic", true, ""});
        CycleSearch search = cycle_free_within_columns(h2, degree2_cols);
        if (!search.cycle_free) {
            item.pass = false;
            std::ostringstream detail;
            detail << "cycle through columns";
            for (std::size_t c : search.witness_cols) detail << ' ' << c;
            item.detail = detail.str();
        }
    }

    if (profile.regime == Regime::full) {
        // Every block-k column needs a check row of degree exactly k that
        // touches one column of each shallower block and nothing else; those
        // are the rows that release it on recovery round k.
        auto& item = report.items.emplace_back(VerifyReport::Item{"recovery_witnesses", true, ""});
        std::vector<std::size_t> per_block(profile.depth + 2, 0);
        for (std::size_t k = 1; item.pass && k <= profile.depth; ++k) {
            for (std::size_t j = 0; item.pass && j < profile.block_cols[k - 1]; ++j) {
                std::size_t c = profile.block_start[k - 1] + j;
                bool found = false;
                for (std::size_t r : h2.col(c)) {
                    const auto& row = h2.row(r);
                    if (row.size() != k) continue;
                    std::fill(per_block.begin(), per_block.end(), 0);
                    for (std::size_t rc : row) ++per_block[block_of(profile, rc)];
                    bool good = per_block[k] == 1 && h2.at(r, c);
                    for (std::size_t b = 1; good && b < k; ++b) good = per_block[b] == 1;
                    if (good) { found = true; break; }
                }
                if (!found) {
                    item.pass = false;
                    item.detail = "column " + std::to_string(c) + " (block " + std::to_string(k) +
                                  ") has no release row";
                }
            }
        }
    }

    if (profile.regime == Regime::full) {
        auto& item = report.items.emplace_back(VerifyReport::Item{"row_degrees", true, ""});
        std::vector<std::size_t> expected(std::max(profile.depth + 2, profile.last_row_degree + 1), 0);
        for (std::size_t k = 1; k <= profile.depth; ++k) expected[k] += profile.block_cols[k - 1];
        expected[profile.last_row_degree] += 1;
        DegreeHistograms hist = degree_histograms(h2);
        hist.row.resize(std::max(hist.row.size(), expected.size()), 0);
        expected.resize(hist.row.size(), 0);
        for (std::size_t d = 0; d < expected.size(); ++d) {
            if (hist.row[d] != expected[d]) {
                item.pass = false;
                item.detail = "degree-" + std::to_string(d) + " rows: have " +
                              std::to_string(hist.row[d]) + ", want " + std::to_string(expected[d]);
                break;
            }
        }

        auto& last = report.items.emplace_back(VerifyReport::Item{"last_row_degree", true, ""});
        if (h2.row(m - 1).size() != profile.last_row_degree) {
            last.pass = false;
            last.detail = "last row has degree " + std::to_string(h2.row(m - 1).size()) +
                          ", want " + std::to_string(profile.last_row_degree);
        }
    }

    return report;
}

std::string format_profile(const E2rcProfile& profile) {
    std::ostringstream out;
    out << "M " << profile.parity_count << '\n';
    out << "K " << profile.message_count << '\n';
    out << "nv2 " << profile.degree2_count << '\n';
    out << "regime " << (profile.regime == Regime::full ? "full" : "low_rate") << '\n';
    out << "d " << profile.depth << '\n';
    out << "gamma";
    for (std::size_t g : profile.block_cols) out << ' ' << g;
    out << '\n';
    if (profile.regime == Regime::full)
        out << "zeta " << profile.last_row_degree << '\n';
    else
        out << "delta_span " << profile.deep_row_span << '\n';
    return out.str();
}

E2rcProfile parse_profile(const std::string& text) {
    std::size_t m = 0, k = 0, nv2 = 0;
    bool have_m = false, have_k = false, have_nv2 = false;
    std::istringstream in(text);
    std::string line;
    std::vector<std::size_t> gamma;
    std::string regime;
    std::size_t zeta = 0, span = 0, depth = 0;
    bool have_zeta = false, have_span = false, have_depth = false;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string key;
        if (!(fields >> key) || key[0] == '#') continue;
        if (key == "M") { fields >> m; have_m = true; }
        else if (key == "K") { fields >> k; have_k = true; }
        else if (key == "nv2") { fields >> nv2; have_nv2 = true; }
        else if (key == "regime") fields >> regime;
        else if (key == "d") { fields >> depth; have_depth = true; }
        else if (key == "gamma") { std::size_t g; while (fields >> g) gamma.push_back(g); }
        else if (key == "zeta") { fields >> zeta; have_zeta = true; }
        else if (key == "delta_span") { fields >> span; have_span = true; }
        else throw std::runtime_error("profile parse error: unknown key '" + key + "'");
    }
    if (!have_m || !have_k || !have_nv2)
        throw std::runtime_error("profile parse error: M, K and nv2 are required");

    E2rcProfile profile = compute_profile(m, nv2, k);
    // The remaining keys are derived; re-derive and insist they agree so a
    // hand-edited file cannot drift out of sync silently.
    if (!regime.empty() &&
        regime != (profile.regime == Regime::full ? "full" : "low_rate"))
        throw std::runtime_error("profile parse error: regime does not match M and nv2");
    if (have_depth && depth != profile.depth)
        throw std::runtime_error("profile parse error: d does not match M and nv2");
    if (!gamma.empty() && gamma != profile.block_cols)
        throw std::runtime_error("profile parse error: gamma does not match M and nv2");
    if (have_zeta && zeta != profile.last_row_degree)
        throw std::runtime_error("profile parse error: zeta does not match M and nv2");
    if (have_span && span != profile.deep_row_span)
        throw std::runtime_error("profile parse error: delta_span does not match M and nv2");
    return profile;
}

}  // namespace e2rc

#include "e2rc/peg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <unordered_map>

namespace e2rc {

void ConstructionTarget::validate(std::size_t parity_count) const {
    for (std::size_t d : message_degrees)
        if (d < 3) throw std::invalid_argument("systematic column degree below 3");
    for (std::size_t d : fill_degrees)
        if (d < 3) throw std::invalid_argument("fill column degree below 3");
    if (!row_degree_targets.empty() && row_degree_targets.size() != parity_count)
        throw std::invalid_argument("row degree targets must cover every row");
    if (girth_floor < 4 || girth_floor % 2 != 0)
        throw std::invalid_argument("girth floor must be an even number >= 4");
}

namespace {

// Largest-remainder apportionment of `total` units across weighted classes;
// ties favor the class with the larger key.
std::vector<std::pair<std::size_t, std::size_t>> apportion(
    const std::vector<std::pair<std::size_t, double>>& ideal, std::size_t total) {
    std::vector<std::pair<std::size_t, std::size_t>> counts;
    std::vector<std::pair<double, std::size_t>> remainders;  // (fraction, position)
    std::size_t assigned = 0;
    for (const auto& [key, value] : ideal) {
        auto base = static_cast<std::size_t>(std::floor(value));
        counts.push_back({key, base});
        remainders.push_back({value - std::floor(value), counts.size() - 1});
        assigned += base;
    }
    if (assigned > total) throw std::invalid_argument("degree mass exceeds the column budget");
    std::sort(remainders.begin(), remainders.end(),
              [&](const auto& a, const auto& b) {
                  if (a.first != b.first) return a.first > b.first;
                  return counts[a.second].first > counts[b.second].first;
              });
    std::size_t leftover = total - assigned;
    for (std::size_t i = 0; leftover > 0; i = (i + 1) % remainders.size(), --leftover)
        ++counts[remainders[i].second].second;
    return counts;
}

}  // namespace

std::vector<std::size_t> assign_column_degrees(const DegreeDistribution& dist,
                                               std::size_t message_count,
                                               std::size_t fill_count,
                                               std::size_t edge_budget) {
    const std::size_t columns = message_count + fill_count;
    if (columns == 0) return {};

    std::vector<std::pair<std::size_t, double>> high;  // (degree, edge fraction)
    double high_mass = 0.0, high_inv = 0.0;
    for (const auto& [degree, fraction] : dist.variable) {
        if (degree < 3 || fraction <= 0.0) continue;
        high.push_back({degree, fraction});
        high_mass += fraction;
        high_inv += fraction / static_cast<double>(degree);
    }
    if (high.empty())
        throw std::invalid_argument("distribution has no mass on degrees >= 3");

    std::vector<std::pair<std::size_t, double>> ideal;
    for (const auto& [degree, fraction] : high) {
        double columns_ideal =
            edge_budget > 0
                ? static_cast<double>(edge_budget) * (fraction / high_mass) / static_cast<double>(degree)
                : static_cast<double>(columns) * (fraction / static_cast<double>(degree)) / high_inv;
        ideal.push_back({degree, columns_ideal});
    }
    auto counts = apportion(ideal, columns);

    std::vector<std::size_t> degrees;
    degrees.reserve(columns);
    for (const auto& [degree, count] : counts)
        degrees.insert(degrees.end(), count, degree);
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

ConstructionTarget make_construction_target(const DegreeDistribution& dist,
                                            const E2rcProfile& profile, const BitMatrix& h2,
                                            std::uint64_t seed) {
    dist.validate();
    const std::size_t n = profile.codeword_length();
    const std::size_t fill = profile.high_degree_parity_count();
    // total edge count implied by the node count and the variable side
    const auto edges = static_cast<std::size_t>(std::llround(
        static_cast<double>(n) * DegreeDistribution::mean_degree(dist.variable)));

    double implied_deg2 = 0.0, implied_deg1 = 0.0;
    if (auto it = dist.variable.find(2); it != dist.variable.end())
        implied_deg2 = it->second * static_cast<double>(edges) / 2.0;
    if (auto it = dist.variable.find(1); it != dist.variable.end())
        implied_deg1 = it->second * static_cast<double>(edges);
    if (std::llround(implied_deg2) >
        static_cast<long long>(profile.degree2_count) + 1 ||
        std::llround(implied_deg2) + 1 < static_cast<long long>(profile.degree2_count))
        throw std::invalid_argument("degree-2 mass inconsistent with the parity structure");
    if (profile.regime == Regime::low_rate && std::llround(implied_deg1) > 0)
        throw std::invalid_argument("degree-1 mass requires the full-regime degree-1 column");

    std::size_t fixed_edges = 2 * profile.degree2_count +
                              (profile.regime == Regime::full ? 1 : 0);
    if (edges <= fixed_edges)
        throw std::invalid_argument("edge budget does not cover the parity structure");
    std::size_t budget = edges - fixed_edges;

    ConstructionTarget target;
    target.seed = seed;
    auto degrees = assign_column_degrees(dist, profile.message_count, fill, budget);
    target.fill_degrees.assign(degrees.begin(), degrees.begin() + fill);
    target.message_degrees.assign(degrees.begin() + fill, degrees.end());

    if (!dist.check.empty()) {
        // Node counts per check degree, then heaviest targets onto the rows
        // the parity part already loads most.
        double inv = 0.0;
        for (const auto& [degree, fraction] : dist.check) inv += fraction / static_cast<double>(degree);
        std::vector<std::pair<std::size_t, double>> ideal;
        for (const auto& [degree, fraction] : dist.check)
            ideal.push_back({degree, static_cast<double>(profile.parity_count) *
                                         (fraction / static_cast<double>(degree)) / inv});
        auto counts = apportion(ideal, profile.parity_count);
        std::vector<std::size_t> targets;
        for (const auto& [degree, count] : counts)
            targets.insert(targets.end(), count, degree);
        std::sort(targets.begin(), targets.end(), std::greater<>());

        std::vector<std::size_t> rows(profile.parity_count);
        for (std::size_t r = 0; r < rows.size(); ++r) rows[r] = r;
        std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
            return h2.row(a).size() > h2.row(b).size();
        });
        target.row_degree_targets.assign(profile.parity_count, 0);
        for (std::size_t i = 0; i < rows.size(); ++i)
            target.row_degree_targets[rows[i]] =
                std::max(targets[i], h2.row(rows[i]).size());
    }
    return target;
}

namespace {

class PegState {
public:
    PegState(const BitMatrix& h, std::size_t parity_count)
        : h_(h), check_dist_(parity_count), var_seen_(h.cols()) {}

    // Breadth-first distances from `column` to every check in the current
    // graph; checks sit at odd distances. SIZE_MAX marks unreachable.
    void measure(std::size_t column) {
        std::fill(check_dist_.begin(), check_dist_.end(), SIZE_MAX);
        std::fill(var_seen_.begin(), var_seen_.end(), 0);
        var_seen_[column] = 1;
        frontier_.assign(1, column);
        std::size_t dist = 1;
        while (!frontier_.empty()) {
            next_checks_.clear();
            for (std::size_t v : frontier_)
                for (std::size_t r : h_.col(v))
                    if (check_dist_[r] == SIZE_MAX) {
                        check_dist_[r] = dist;
                        next_checks_.push_back(r);
                    }
            frontier_.clear();
            for (std::size_t r : next_checks_)
                for (std::size_t c : h_.row(r))
                    if (!var_seen_[c]) {
                        var_seen_[c] = 1;
                        frontier_.push_back(c);
                    }
            dist += 2;
        }
    }

    std::size_t distance(std::size_t check) const { return check_dist_[check]; }

private:
    const BitMatrix& h_;
    std::vector<std::size_t> check_dist_;
    std::vector<char> var_seen_;
    std::vector<std::size_t> frontier_, next_checks_;
};

// Eliminating the degree-2 staircase folds every row into one of the l
// residual equations; [L|T] is invertible over GF(2) exactly when the fill
// columns' images under that fold are linearly independent. The fold maps a
// row to a single residual index (or to nothing), so images are cheap l-bit
// vectors and the last edge of each fill column can be filtered on rank.
class FillRankTracker {
public:
    FillRankTracker(const BitMatrix& h2, std::size_t fill_count)
        : words_((fill_count + 63) / 64), basis_(fill_count), image_(words_, 0) {
        const std::size_t m = h2.rows();
        const std::size_t chain_count = m - fill_count;
        drain_.assign(m, SIZE_MAX);
        for (std::size_t r = m; r-- > 0;) {
            if (r >= chain_count) {
                drain_[r] = r - chain_count;
                continue;
            }
            const auto& col = h2.col(fill_count + r);
            if (col.empty() || col.front() != r || col.size() > 2)
                throw std::invalid_argument("degree-2 parity staircase is malformed");
            if (col.size() == 2) drain_[r] = drain_[col.back()];
        }
    }

    bool keeps_rank(std::size_t row) const {
        auto v = image_;
        toggle(v, drain_[row]);
        return !reduces_to_zero(v);
    }

    void place(std::size_t row) { toggle(image_, drain_[row]); }

    void commit_column() {
        auto v = std::move(image_);
        image_.assign(words_, 0);
        while (true) {
            std::size_t p = top_bit(v);
            if (p == SIZE_MAX) throw std::logic_error("fill column image collapsed");
            if (basis_[p].empty()) {
                basis_[p] = std::move(v);
                return;
            }
            for (std::size_t w = 0; w < words_; ++w) v[w] ^= basis_[p][w];
        }
    }

private:
    static void toggle(std::vector<std::uint64_t>& v, std::size_t bit) {
        if (bit != SIZE_MAX) v[bit / 64] ^= std::uint64_t{1} << (bit % 64);
    }

    static std::size_t top_bit(const std::vector<std::uint64_t>& v) {
        for (std::size_t w = v.size(); w-- > 0;)
            if (v[w]) return w * 64 + 63 - std::countl_zero(v[w]);
        return SIZE_MAX;
    }

    bool reduces_to_zero(std::vector<std::uint64_t>& v) const {
        while (true) {
            std::size_t p = top_bit(v);
            if (p == SIZE_MAX) return true;
            if (basis_[p].empty()) return false;
            for (std::size_t w = 0; w < words_; ++w) v[w] ^= basis_[p][w];
        }
    }

    std::size_t words_;
    std::vector<std::size_t> drain_;                 // row -> residual index
    std::vector<std::vector<std::uint64_t>> basis_;  // echelon, keyed by top bit
    std::vector<std::uint64_t> image_;               // current column, partial
};

}  // namespace

BitMatrix peg_build(const BitMatrix& h2, const ConstructionTarget& target) {
    if (h2.rows() != h2.cols()) throw std::invalid_argument("parity part must be square");
    const std::size_t m = h2.rows();
    const std::size_t k = target.message_degrees.size();
    target.validate(m);

    BitMatrix h(m, k + m);
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t r : h2.col(c)) h.add_entry(r, k + c);

    // New columns: all systematic ones plus the parity columns that are still
    // empty, which must line up with the declared fill degrees. Fill columns
    // precede equally heavy systematic ones: the sparser graph leaves them
    // room to satisfy the rank filter below.
    std::vector<std::pair<std::size_t, std::size_t>> order;  // (degree, column)
    std::size_t fill_seen = 0;
    for (std::size_t c = 0; c < m; ++c) {
        if (!h2.col(c).empty()) continue;
        if (fill_seen >= target.fill_degrees.size())
            throw std::invalid_argument("parity part has more empty columns than fill degrees");
        order.push_back({target.fill_degrees[fill_seen++], k + c});
    }
    if (fill_seen != target.fill_degrees.size())
        throw std::invalid_argument("fill degrees do not match the empty parity columns");
    for (std::size_t j = 0; j < k; ++j) order.push_back({target.message_degrees[j], j});
    // Heaviest columns go first, while distance constraints are loose and
    // row deficits plentiful; ties keep column order.
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });

    // Fill columns must complete the degree-2 staircase to a nonsingular
    // parity part; otherwise some syndromes become unencodable.
    std::optional<FillRankTracker> ranker;
    if (fill_seen > 0) ranker.emplace(h2, fill_seen);

    std::vector<std::size_t> row_degree(m, 0);
    for (std::size_t r = 0; r < m; ++r) row_degree[r] = h.row(r).size();

    const bool quota = !target.row_degree_targets.empty();
    // Cycles created through the new edge have length distance + 1; distances
    // below this threshold are never allowed (length-4 cycles only when the
    // caller explicitly lowers the floor to 4).
    const std::size_t min_dist = std::max<std::size_t>(target.girth_floor, 4) - 1;
    const std::size_t hard_dist = std::min<std::size_t>(min_dist, 5);

    PegState state(h, m);
    for (const auto& [degree, column] : order) {
        const bool guarded = ranker && column >= k;
        for (std::size_t edge = 0; edge < degree; ++edge) {
            const bool rank_edge = guarded && edge + 1 == degree;
            state.measure(column);
            std::size_t best = SIZE_MAX;
            long long best_deficit = 0;
            auto better = [&](std::size_t r) {
                if (best == SIZE_MAX) return true;
                if (quota) {
                    long long deficit = static_cast<long long>(target.row_degree_targets[r]) -
                                        static_cast<long long>(row_degree[r]);
                    if (deficit != best_deficit) return deficit > best_deficit;
                }
                if (row_degree[r] != row_degree[best]) return row_degree[r] < row_degree[best];
                return r < best;
            };
            for (std::size_t threshold : {min_dist, hard_dist}) {
                for (std::size_t r = 0; r < m; ++r)
                    if (state.distance(r) >= threshold &&
                        (!rank_edge || ranker->keeps_rank(r)) && better(r)) {
                        best = r;
                        if (quota)
                            best_deficit = static_cast<long long>(target.row_degree_targets[r]) -
                                           static_cast<long long>(row_degree[r]);
                    }
                if (best != SIZE_MAX) break;
            }
            if (best == SIZE_MAX)
                throw PegInfeasibleError(
                    column, "column " + std::to_string(column) +
                                (rank_edge ? " cannot close out an invertible parity part"
                                           : " cannot take an edge without a short cycle"));
            h.add_entry(best, column);
            ++row_degree[best];
            if (guarded) ranker->place(best);
        }
        if (guarded) ranker->commit_column();
    }
    return h;
}

std::vector<FourCycle> audit_4cycles(const BitMatrix& h) {
    std::vector<FourCycle> found;
    std::unordered_map<std::uint64_t, std::size_t> first_row;
    for (std::size_t r = 0; r < h.rows(); ++r) {
        const auto& cols = h.row(r);
        for (std::size_t i = 0; i < cols.size(); ++i)
            for (std::size_t j = i + 1; j < cols.size(); ++j) {
                std::uint64_t key = static_cast<std::uint64_t>(cols[i]) * h.cols() + cols[j];
                auto [it, fresh] = first_row.try_emplace(key, r);
                if (!fresh && it->second != SIZE_MAX) {
                    found.push_back({cols[i], cols[j], it->second, r});
                    it->second = SIZE_MAX;  // report each pair once
                }
            }
    }
    return found;
}

}  // namespace e2rc

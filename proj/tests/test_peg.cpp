#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "e2rc/peg.hpp"
#include "support.hpp"

using namespace e2rc;

namespace {

// Published pair for the length-1200 rate-1/2 code. The variable side sums
// to 0.99999; the parser renormalizes.
const char* kHalfRateDist =
    "variable\n"
    "1 0.00025\n"
    "2 0.30199\n"
    "3 0.27073\n"
    "7 0.42702\n"
    "check\n"
    "6 0.40685\n"
    "7 0.55054\n"
    "8 0.01815\n"
    "9 0.01361\n"
    "10 0.00504\n"
    "11 0.00278\n"
    "12 0.00303\n";

// Published pair for the length-2000 rate-0.4 code; flat check side.
const char* kLowRateDist =
    "variable\n"
    "2 0.29472\n"
    "3 0.25667\n"
    "10 0.44861\n"
    "check\n"
    "6 1.0\n";

std::map<std::size_t, std::size_t> degree_counts(const std::vector<std::size_t>& degrees) {
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t d : degrees) ++counts[d];
    return counts;
}

std::map<std::size_t, std::size_t> row_degree_counts(const BitMatrix& h) {
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t r = 0; r < h.rows(); ++r) ++counts[h.row(r).size()];
    return counts;
}

// Edge fraction per degree on one side of the graph.
std::map<std::size_t, double> edge_fractions(const std::map<std::size_t, std::size_t>& counts) {
    double edges = 0.0;
    for (const auto& [degree, n] : counts) edges += static_cast<double>(degree * n);
    std::map<std::size_t, double> frac;
    for (const auto& [degree, n] : counts)
        frac[degree] = static_cast<double>(degree * n) / edges;
    return frac;
}

}  // namespace

TEST_CASE("single-degree distribution forces uniform column degrees") {
    DegreeDistribution dist;
    dist.variable = {{3, 1.0}};
    CHECK(assign_column_degrees(dist, 4, 0, 0) == std::vector<std::size_t>{3, 3, 3, 3});
    CHECK(assign_column_degrees(dist, 4, 0, 12) == std::vector<std::size_t>{3, 3, 3, 3});
    CHECK(assign_column_degrees(dist, 0, 0, 0).empty());
}

TEST_CASE("column degrees for the rate-1/2 code match the edge-budget solution") {
    auto dist = parse_distribution(kHalfRateDist);
    // 600 columns spending 2768 edges on degrees {3, 7}: the unique integer
    // solution of n3 + n7 = 600, 3 n3 + 7 n7 = 2768.
    const std::size_t budget = 2768, columns = 600;
    const std::size_t n7 = (budget - 3 * columns) / 4;
    const std::size_t n3 = columns - n7;
    REQUIRE(3 * n3 + 7 * n7 == budget);

    auto degrees = assign_column_degrees(dist, columns, 0, budget);
    REQUIRE(degrees.size() == columns);
    CHECK(std::is_sorted(degrees.begin(), degrees.end()));
    auto counts = degree_counts(degrees);
    CHECK(counts[3] == n3);
    CHECK(counts[7] == n7);

    // Realized edge fractions, counting the fixed structural columns of the
    // length-1200 code (599 degree-2, one degree-1), stay within 1/K of the
    // published coefficients.
    const double edges = 1.0 + 2.0 * 599 + 3.0 * n3 + 7.0 * n7;
    CHECK(std::abs(1.0 / edges - 0.00025) < 1.0 / 600);
    CHECK(std::abs(2.0 * 599 / edges - 0.30199) < 1.0 / 600);
    CHECK(std::abs(3.0 * n3 / edges - 0.27073) < 1.0 / 600);
    CHECK(std::abs(7.0 * n7 / edges - 0.42702) < 1.0 / 600);
}

TEST_CASE("column degrees for the rate-0.4 code cover fill plus systematic") {
    auto dist = parse_distribution(kLowRateDist);
    const std::size_t budget = 5078, columns = 800 + 139;
    const std::size_t n10 = (budget - 3 * columns) / 7;
    const std::size_t n3 = columns - n10;
    REQUIRE(3 * n3 + 10 * n10 == budget);

    auto degrees = assign_column_degrees(dist, 800, 139, budget);
    REQUIRE(degrees.size() == columns);
    auto counts = degree_counts(degrees);
    CHECK(counts[3] == n3);
    CHECK(counts[10] == n10);
}

TEST_CASE("distributions without mass above degree 2 are rejected") {
    DegreeDistribution dist;
    dist.variable = {{1, 0.25}, {2, 0.75}};
    CHECK_THROWS_AS(assign_column_degrees(dist, 4, 0, 0), std::invalid_argument);
}

TEST_CASE("construction target for the rate-1/2 code") {
    auto dist = parse_distribution(kHalfRateDist);
    auto profile = compute_profile(600, 599, 600);
    auto h2 = build_parity_part(profile);
    auto target = make_construction_target(dist, profile, h2, 7);

    CHECK(target.seed == 7);
    CHECK(target.fill_degrees.empty());
    auto counts = degree_counts(target.message_degrees);
    CHECK(counts[3] == 358);
    CHECK(counts[7] == 242);

    // Row quotas reproduce the published check histogram: 269 rows of degree
    // 6, 312 of 7, then 9, 6, 2, 1, 1 across degrees 8 to 12. They spend the
    // full edge budget and never sit below what the parity part already has.
    REQUIRE(target.row_degree_targets.size() == 600);
    auto quota_counts = degree_counts(target.row_degree_targets);
    CHECK(quota_counts == std::map<std::size_t, std::size_t>{
                              {6, 269}, {7, 312}, {8, 9}, {9, 6}, {10, 2}, {11, 1}, {12, 1}});
    std::size_t total = 0;
    for (std::size_t t : target.row_degree_targets) total += t;
    CHECK(total == 3967);
    std::size_t heaviest = 0;
    for (std::size_t r = 0; r < 600; ++r) {
        CHECK(target.row_degree_targets[r] >= h2.row(r).size());
        if (h2.row(r).size() > h2.row(heaviest).size()) heaviest = r;
    }
    CHECK(h2.row(heaviest).size() == 10);
    CHECK(target.row_degree_targets[heaviest] == 12);
}

TEST_CASE("construction target for the rate-0.4 code") {
    auto dist = parse_distribution(kLowRateDist);
    auto profile = compute_profile(1200, 1061, 800);
    auto h2 = build_parity_part(profile);
    auto target = make_construction_target(dist, profile, h2, 1);

    REQUIRE(target.fill_degrees.size() == 139);
    for (std::size_t d : target.fill_degrees) CHECK(d == 3);
    auto counts = degree_counts(target.message_degrees);
    CHECK(counts[3] == 616 - 139);
    CHECK(counts[10] == 323);

    REQUIRE(target.row_degree_targets.size() == 1200);
    for (std::size_t t : target.row_degree_targets) CHECK(t == 6);
}

TEST_CASE("construction target rejects inconsistent degree-2 mass") {
    DegreeDistribution dist;
    dist.variable = {{2, 1.0}};
    auto profile = compute_profile(8, 7, 4);
    auto h2 = build_parity_part(profile);
    CHECK_THROWS_AS(make_construction_target(dist, profile, h2, 0), std::invalid_argument);
}

TEST_CASE("construction target rejects degree-1 mass without a degree-1 column") {
    DegreeDistribution dist;
    // Degree-1 mass worth one node on the rate-0.4 frame.
    dist.variable = {{1, 0.0002}, {2, 0.29457}, {3, 0.25662}, {10, 0.44866}};
    auto profile = compute_profile(1200, 1061, 800);
    auto h2 = build_parity_part(profile);
    CHECK_THROWS_AS(make_construction_target(dist, profile, h2, 0), std::invalid_argument);
}

TEST_CASE("target validation") {
    ConstructionTarget target;
    target.message_degrees = {3, 2};
    CHECK_THROWS_AS(target.validate(4), std::invalid_argument);
    target.message_degrees = {3, 3};
    target.girth_floor = 5;
    CHECK_THROWS_AS(target.validate(4), std::invalid_argument);
    target.girth_floor = 6;
    target.row_degree_targets = {4, 4};
    CHECK_THROWS_AS(target.validate(4), std::invalid_argument);
    target.row_degree_targets = {4, 4, 4, 4};
    CHECK_NOTHROW(target.validate(4));
}

TEST_CASE("growth around the 7-column parity fixture lands on the traced graph") {
    auto h2 = oracle::parity7();
    ConstructionTarget target;
    target.message_degrees = {3, 3, 3};
    target.seed = 1;

    auto h = peg_build(h2, target);
    REQUIRE(h.rows() == 7);
    REQUIRE(h.cols() == 10);

    // Hand-executed selection: each edge goes to the lowest-degree check at
    // distance 5 or more (or unreachable), lowest index on ties.
    CHECK(h.col(0) == std::vector<std::size_t>{0, 1, 2});
    CHECK(h.col(1) == std::vector<std::size_t>{0, 4, 5});
    CHECK(h.col(2) == std::vector<std::size_t>{1, 3, 6});
    for (std::size_t c = 0; c < 7; ++c) CHECK(h.col(3 + c) == h2.col(c));

    std::vector<std::size_t> degrees;
    for (std::size_t c = 0; c < h.cols(); ++c) degrees.push_back(h.col(c).size());
    CHECK(degrees == std::vector<std::size_t>{3, 3, 3, 2, 2, 2, 2, 2, 2, 1});

    CHECK(audit_4cycles(h).empty());
    CHECK(oracle::brute_four_cycles(h).empty());

    auto again = peg_build(h2, target);
    CHECK(oracle::to_dense(again) == oracle::to_dense(h));
}

TEST_CASE("empty target leaves the parity part as the whole matrix") {
    auto h2 = oracle::parity8();
    ConstructionTarget target;
    auto h = peg_build(h2, target);
    CHECK(oracle::to_dense(h) == oracle::to_dense(h2));
}

TEST_CASE("non-square parity part is rejected") {
    BitMatrix h2(3, 4);
    ConstructionTarget target;
    CHECK_THROWS_AS(peg_build(h2, target), std::invalid_argument);
}

TEST_CASE("fill degrees must match the empty parity columns") {
    auto full = oracle::parity8();
    ConstructionTarget target;
    target.fill_degrees = {3};
    CHECK_THROWS_AS(peg_build(full, target), std::invalid_argument);

    auto profile = compute_profile(1200, 1061, 800);
    auto sparse = build_parity_part(profile);
    ConstructionTarget empty;
    CHECK_THROWS_AS(peg_build(sparse, empty), std::invalid_argument);
}

TEST_CASE("infeasible placement names the offending column") {
    // Three checks, already fully meshed by the parity part: a third edge on
    // a new degree-3 column cannot avoid a length-4 cycle.
    auto profile = compute_profile(3, 2, 2);
    auto h2 = build_parity_part(profile);
    ConstructionTarget target;
    target.message_degrees = {3, 3};
    try {
        peg_build(h2, target);
        FAIL("expected infeasibility");
    } catch (const PegInfeasibleError& e) {
        CHECK(e.column == 0);
    }
}

TEST_CASE("rate-1/2 code build: girth, quotas, and realized distributions") {
    auto dist = parse_distribution(kHalfRateDist);
    auto profile = compute_profile(600, 599, 600);
    auto h2 = build_parity_part(profile);
    auto target = make_construction_target(dist, profile, h2, 17);
    auto h = peg_build(h2, target);

    REQUIRE(h.rows() == 600);
    REQUIRE(h.cols() == 1200);
    CHECK(audit_4cycles(h).empty());
    for (std::size_t c = 0; c < 600; ++c) CHECK(h.col(600 + c) == h2.col(c));

    std::map<std::size_t, std::size_t> col_counts;
    std::size_t edges = 0;
    for (std::size_t c = 0; c < h.cols(); ++c) {
        ++col_counts[h.col(c).size()];
        edges += h.col(c).size();
    }
    CHECK(edges == 3967);
    CHECK(col_counts == std::map<std::size_t, std::size_t>{{1, 1}, {2, 599}, {3, 358}, {7, 242}});

    // Realized variable fractions within 1/K of the published coefficients.
    auto var_frac = edge_fractions(col_counts);
    CHECK(std::abs(var_frac[1] - 0.00025) < 1.0 / 600);
    CHECK(std::abs(var_frac[2] - 0.30199) < 1.0 / 600);
    CHECK(std::abs(var_frac[3] - 0.27073) < 1.0 / 600);
    CHECK(std::abs(var_frac[7] - 0.42702) < 1.0 / 600);

    // Check side within two points per degree of the published polynomial.
    auto check_frac = edge_fractions(row_degree_counts(h));
    const std::map<std::size_t, double> published = {{6, 0.40685},  {7, 0.55054}, {8, 0.01815},
                                                     {9, 0.01361},  {10, 0.00504}, {11, 0.00278},
                                                     {12, 0.00303}};
    for (const auto& [degree, fraction] : published)
        CHECK(std::abs(check_frac[degree] - fraction) < 0.02);
    for (const auto& [degree, fraction] : check_frac)
        if (!published.count(degree)) CHECK(fraction < 0.02);
}

TEST_CASE("rate-0.4 code build fills the high-degree parity columns") {
    auto dist = parse_distribution(kLowRateDist);
    auto profile = compute_profile(1200, 1061, 800);
    auto h2 = build_parity_part(profile);
    auto target = make_construction_target(dist, profile, h2, 3);
    auto h = peg_build(h2, target);

    REQUIRE(h.rows() == 1200);
    REQUIRE(h.cols() == 2000);
    CHECK(audit_4cycles(h).empty());

    // Previously empty fill columns now carry degree 3; the degree-2 chain
    // is untouched.
    for (std::size_t c = 0; c < 139; ++c) CHECK(h.col(800 + c).size() == 3);
    for (std::size_t c = 139; c < 1200; ++c) CHECK(h.col(800 + c) == h2.col(c));

    std::map<std::size_t, std::size_t> col_counts;
    std::size_t edges = 0;
    for (std::size_t c = 0; c < h.cols(); ++c) {
        ++col_counts[h.col(c).size()];
        edges += h.col(c).size();
    }
    CHECK(edges == 7200);
    CHECK(col_counts == std::map<std::size_t, std::size_t>{{2, 1061}, {3, 616}, {10, 323}});

    auto var_frac = edge_fractions(col_counts);
    CHECK(std::abs(var_frac[2] - 0.29472) < 1.0 / 800);
    CHECK(std::abs(var_frac[3] - 0.25667) < 1.0 / 800);
    CHECK(std::abs(var_frac[10] - 0.44861) < 1.0 / 800);

    // Flat published check side: nearly every row ends at degree 6.
    auto check_frac = edge_fractions(row_degree_counts(h));
    CHECK(check_frac[6] > 0.98);
}

TEST_CASE("4-cycle audit agrees with the brute-force pair scan") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        auto m = oracle::random_matrix(rng, 10, 20, 0.15);
        auto audited = audit_4cycles(m);
        std::set<std::pair<std::size_t, std::size_t>> audited_pairs;
        for (const auto& w : audited) {
            CHECK(m.at(w.row_a, w.col_a));
            CHECK(m.at(w.row_a, w.col_b));
            CHECK(m.at(w.row_b, w.col_a));
            CHECK(m.at(w.row_b, w.col_b));
            CHECK(w.row_a != w.row_b);
            audited_pairs.insert({w.col_a, w.col_b});
        }
        CHECK(audited_pairs.size() == audited.size());
        auto brute = oracle::brute_four_cycles(m);
        std::set<std::pair<std::size_t, std::size_t>> brute_pairs(brute.begin(), brute.end());
        CHECK(audited_pairs == brute_pairs);
    }
}

TEST_CASE("planted 4-cycle is reported with its shared rows") {
    BitMatrix m(9, 5);
    m.add_entry(2, 1);
    m.add_entry(7, 1);
    m.add_entry(2, 3);
    m.add_entry(7, 3);
    m.add_entry(4, 0);
    auto found = audit_4cycles(m);
    REQUIRE(found.size() == 1);
    CHECK(found[0].col_a == 1);
    CHECK(found[0].col_b == 3);
    CHECK(found[0].row_a == 2);
    CHECK(found[0].row_b == 7);
}

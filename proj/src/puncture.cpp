#include "e2rc/puncture.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace e2rc {

std::size_t puncture_count(std::size_t n, double mother_rate, double target_rate) {
    if (!(mother_rate > 0.0) || !(target_rate <= 1.0) || !(mother_rate <= target_rate))
        throw std::invalid_argument("rates must satisfy 0 < mother <= target <= 1");
    double exact = static_cast<double>(n) * (1.0 - mother_rate / target_rate);
    return static_cast<std::size_t>(std::floor(exact + 0.5));
}

double mother_rate(const E2rcProfile& profile) {
    return static_cast<double>(profile.message_count) /
           static_cast<double>(profile.codeword_length());
}

double max_rate(const E2rcProfile& profile) {
    return static_cast<double>(profile.message_count) /
           static_cast<double>(profile.codeword_length() - profile.degree2_count);
}

PunctureSchedule puncture_schedule(const E2rcProfile& profile) {
    PunctureSchedule schedule;
    schedule.mother_rate = mother_rate(profile);
    schedule.max_rate = max_rate(profile);
    // Degree-2 parity columns sit contiguously after the message part (and,
    // in the low-rate layout, after the higher-degree parity columns); their
    // left-to-right order is already shallowest-recovery-first.
    const std::size_t first =
        profile.message_count + profile.high_degree_parity_count();
    schedule.order.resize(profile.degree2_count);
    std::iota(schedule.order.begin(), schedule.order.end(), first);
    return schedule;
}

SrClassification classify_sr(const BitMatrix& h, const std::vector<std::size_t>& punctured) {
    SrClassification out;
    out.level.assign(h.cols(), 0);
    std::vector<char> pending(h.cols(), 0);
    for (std::size_t v : punctured) {
        if (v >= h.cols()) throw std::invalid_argument("punctured column out of range");
        pending[v] = 1;
    }

    // Per-check count of still-unresolved neighbors; a count of one makes
    // that neighbor recoverable in the next round.
    std::vector<std::size_t> unresolved(h.rows(), 0);
    for (std::size_t r = 0; r < h.rows(); ++r)
        for (std::size_t v : h.row(r)) unresolved[r] += pending[v];

    std::vector<std::size_t> joiners;
    for (std::size_t round = 1;; ++round) {
        joiners.clear();
        for (std::size_t r = 0; r < h.rows(); ++r) {
            if (unresolved[r] != 1) continue;
            for (std::size_t v : h.row(r))
                if (pending[v]) {
                    joiners.push_back(v);
                    break;
                }
        }
        std::sort(joiners.begin(), joiners.end());
        joiners.erase(std::unique(joiners.begin(), joiners.end()), joiners.end());
        if (joiners.empty()) break;
        for (std::size_t v : joiners) {
            out.level[v] = round;
            pending[v] = 0;
            for (std::size_t r : h.col(v)) --unresolved[r];
        }
    }
    for (std::size_t v = 0; v < h.cols(); ++v)
        if (pending[v]) out.level[v] = SIZE_MAX;
    return out;
}

std::vector<std::size_t> apply_puncturing(const PunctureSchedule& schedule, double target_rate,
                                          std::size_t n) {
    if (target_rate > schedule.max_rate)
        throw std::invalid_argument("target rate exceeds the maximum puncturing rate");
    std::size_t p = puncture_count(n, schedule.mother_rate, target_rate);
    if (p > schedule.order.size())
        throw std::logic_error("puncture count overruns the schedule");
    return {schedule.order.begin(), schedule.order.begin() + p};
}

}  // namespace e2rc

#include "e2rc/decode.hpp"

#include <algorithm>
#include <cmath>

namespace e2rc {

namespace {

constexpr double kLlrClamp = 30.0;

double clamp_llr(double v) { return std::clamp(v, -kLlrClamp, kLlrClamp); }

}  // namespace

PeelResult peel_erasures(const BitMatrix& h, const std::vector<std::uint8_t>& bits,
                         const std::vector<char>& known) {
    if (bits.size() != h.cols() || known.size() != h.cols())
        throw std::invalid_argument("assignment length does not match the matrix");

    PeelResult result;
    result.bits = bits;
    result.known = known;
    result.recovered_step.assign(h.cols(), SIZE_MAX);
    for (std::size_t c = 0; c < h.cols(); ++c)
        if (known[c]) result.recovered_step[c] = 0;

    for (std::size_t round = 1;; ++round) {
        // (column, value, resolving check) for this round, applied together.
        std::vector<std::size_t> hit_col, hit_row;
        std::vector<std::uint8_t> hit_val;
        for (std::size_t r = 0; r < h.rows(); ++r) {
            std::size_t unknown = SIZE_MAX, count = 0;
            std::uint8_t parity = 0;
            for (std::size_t c : h.row(r)) {
                if (result.known[c]) {
                    parity ^= result.bits[c];
                } else {
                    unknown = c;
                    ++count;
                }
            }
            if (count == 0) {
                if (parity)
                    throw DecodeContradiction(r, "check " + std::to_string(r) +
                                                     " has odd parity over known bits");
                continue;
            }
            if (count > 1) continue;
            hit_col.push_back(unknown);
            hit_row.push_back(r);
            hit_val.push_back(parity);
        }
        bool progress = false;
        for (std::size_t i = 0; i < hit_col.size(); ++i) {
            std::size_t c = hit_col[i];
            if (result.known[c]) {
                // resolved by an earlier check this same round
                if (result.bits[c] != hit_val[i])
                    throw DecodeContradiction(
                        hit_row[i], "check " + std::to_string(hit_row[i]) +
                                        " disagrees on bit " + std::to_string(c));
                continue;
            }
            result.bits[c] = hit_val[i];
            result.known[c] = 1;
            result.recovered_step[c] = round;
            progress = true;
        }
        if (!progress) {
            result.iterations = round - 1;
            break;
        }
    }
    result.complete =
        std::all_of(result.known.begin(), result.known.end(), [](char k) { return k != 0; });
    return result;
}

LlrFrame llr_from_awgn(const std::vector<double>& received, double noise_variance,
                       const std::vector<char>& punctured) {
    if (!(noise_variance > 0.0)) throw std::invalid_argument("noise variance must be positive");
    if (punctured.size() != received.size())
        throw std::invalid_argument("puncture mask length does not match the frame");
    LlrFrame frame;
    frame.punctured = punctured;
    frame.llr.resize(received.size());
    for (std::size_t i = 0; i < received.size(); ++i)
        frame.llr[i] = punctured[i] ? 0.0 : 2.0 * received[i] / noise_variance;
    return frame;
}

DecodeResult bp_decode(const BitMatrix& h, const LlrFrame& frame, std::size_t max_iters) {
    const std::size_t n = h.cols();
    if (frame.llr.size() != n) throw std::invalid_argument("frame length does not match the code");
    if (max_iters == 0) throw std::invalid_argument("need at least one iteration");

    // Edge storage in row-major order.
    std::vector<std::size_t> row_begin(h.rows() + 1, 0);
    for (std::size_t r = 0; r < h.rows(); ++r) row_begin[r + 1] = row_begin[r] + h.row(r).size();
    const std::size_t edges = row_begin[h.rows()];
    std::vector<std::size_t> edge_col(edges);
    std::vector<std::vector<std::size_t>> col_edges(n);
    for (std::size_t r = 0; r < h.rows(); ++r) {
        std::size_t e = row_begin[r];
        for (std::size_t c : h.row(r)) {
            edge_col[e] = c;
            col_edges[c].push_back(e);
            ++e;
        }
    }

    std::vector<double> v2c(edges), c2v(edges, 0.0);
    for (std::size_t e = 0; e < edges; ++e) v2c[e] = clamp_llr(frame.llr[edge_col[e]]);

    DecodeResult result;
    result.hard_bits.assign(n, 0);
    std::vector<double> tanh_buf, prefix;
    for (std::size_t iter = 1; iter <= max_iters; ++iter) {
        for (std::size_t r = 0; r < h.rows(); ++r) {
            const std::size_t begin = row_begin[r], end = row_begin[r + 1];
            const std::size_t deg = end - begin;
            if (deg == 0) continue;
            tanh_buf.resize(deg);
            prefix.resize(deg + 1);
            prefix[0] = 1.0;
            for (std::size_t i = 0; i < deg; ++i) {
                tanh_buf[i] = std::tanh(0.5 * v2c[begin + i]);
                prefix[i + 1] = prefix[i] * tanh_buf[i];
            }
            double suffix = 1.0;
            for (std::size_t i = deg; i-- > 0;) {
                const double prod = prefix[i] * suffix;
                c2v[begin + i] = clamp_llr(2.0 * std::atanh(prod));
                suffix *= tanh_buf[i];
            }
        }
        std::size_t wrong_checks = 0;
        for (std::size_t c = 0; c < n; ++c) {
            double total = frame.llr[c];
            for (std::size_t e : col_edges[c]) total += c2v[e];
            result.hard_bits[c] = total < 0.0 ? 1 : 0;
            for (std::size_t e : col_edges[c]) v2c[e] = clamp_llr(total - c2v[e]);
        }
        auto syndrome = mod2_syndrome(h, result.hard_bits);
        for (std::uint8_t s : syndrome) wrong_checks += s;
        result.iterations_used = iter;
        if (wrong_checks == 0) {
            result.converged = true;
            break;
        }
    }
    return result;
}

}  // namespace e2rc

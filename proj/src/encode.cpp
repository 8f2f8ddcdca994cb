#include "e2rc/encode.hpp"

#include <algorithm>
#include <bit>

#include "e2rc/decode.hpp"

namespace e2rc {

std::vector<std::uint8_t> syndrome_target(const BitMatrix& h1, const std::vector<std::uint8_t>& m) {
    if (m.size() != h1.cols()) throw std::invalid_argument("message length does not match H1");
    std::vector<std::uint8_t> s(h1.rows(), 0);
    for (std::size_t c = 0; c < m.size(); ++c)
        if (m[c])
            for (std::size_t r : h1.col(c)) s[r] ^= 1;
    return s;
}

std::vector<std::uint8_t> encode_back_substitution(const BitMatrix& h2,
                                                   const std::vector<std::uint8_t>& s) {
    if (h2.rows() != h2.cols()) throw std::invalid_argument("parity part must be square");
    if (s.size() != h2.rows()) throw std::invalid_argument("syndrome length does not match");
    for (std::size_t c = 0; c < h2.cols(); ++c)
        if (h2.col(c).empty() || h2.col(c).front() != c)
            throw std::invalid_argument("matrix is not lower triangular with a unit diagonal");

    std::vector<std::uint8_t> p(s.size(), 0);
    for (std::size_t i = 0; i < h2.rows(); ++i) {
        std::uint8_t acc = s[i];
        for (std::size_t j : h2.row(i))
            if (j != i) acc ^= p[j];
        p[i] = acc;
    }
    return p;
}

WindowCoefficients window_coefficients(const E2rcProfile& profile, std::size_t t) {
    if (profile.regime != Regime::full)
        throw std::invalid_argument("window coefficients exist only in the full regime");
    if (t >= profile.parity_count) throw std::invalid_argument("row time out of range");

    const std::size_t w = profile.window_size();
    const std::size_t s_d = profile.block_start[profile.depth];
    std::vector<int> acc(w, 0);
    for (std::size_t k = 1; k <= profile.depth; ++k) {
        const std::size_t gamma_k = profile.block_cols[k - 1];
        const std::size_t s_k = profile.block_start[k];
        int term = t >= s_k ? 1 : 0;
        if (gamma_k + s_k == s_d && t >= s_d) term -= 1;
        acc[w - gamma_k] += term;
    }
    WindowCoefficients coeffs;
    coeffs.t = t;
    coeffs.g.resize(w);
    for (std::size_t i = 0; i < w; ++i) {
        if (acc[i] < 0 || acc[i] > 1) throw std::logic_error("tap windows overlap");
        coeffs.g[i] = static_cast<std::uint8_t>(acc[i]);
    }
    return coeffs;
}

std::vector<std::uint8_t> encode_sliding_window(const E2rcProfile& profile,
                                                const std::vector<std::uint8_t>& s) {
    if (profile.regime != Regime::full)
        throw std::invalid_argument("sliding window encoding needs the full regime");
    if (s.size() != profile.parity_count) throw std::invalid_argument("syndrome length does not match");

    const std::size_t w = profile.window_size();
    std::vector<std::uint8_t> window(w, 0);  // the only encoder state
    std::vector<std::uint8_t> p(s.size());
    for (std::size_t t = 0; t < s.size(); ++t) {
        auto coeffs = window_coefficients(profile, t);
        std::uint8_t out = s[t];
        for (std::size_t i = 0; i < w; ++i)
            if (coeffs.g[i]) {
                // tap i reads the output delayed by w - i cells
                out ^= window[(t + i) % w];
            }
        p[t] = out;
        window[t % w] = out;
    }
    return p;
}

ErasureEncodeResult encode_by_erasure(const BitMatrix& h, const E2rcProfile& profile,
                                      const std::vector<std::uint8_t>& m) {
    if (h.rows() != profile.parity_count || h.cols() != profile.codeword_length())
        throw std::invalid_argument("matrix shape does not match the profile");
    if (m.size() != profile.message_count) throw std::invalid_argument("message length mismatch");

    std::vector<std::uint8_t> bits(h.cols(), 0);
    std::vector<char> known(h.cols(), 0);
    std::copy(m.begin(), m.end(), bits.begin());
    std::fill(known.begin(), known.begin() + m.size(), 1);

    auto peeled = peel_erasures(h, bits, known);
    if (!peeled.complete)
        throw std::runtime_error("parity recovery stalled: matrix lacks the recovery structure");
    ErasureEncodeResult result;
    result.iterations = peeled.iterations;
    result.parity.assign(peeled.bits.begin() + m.size(), peeled.bits.end());
    return result;
}

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

void flip_bit(std::vector<std::uint64_t>& v, std::size_t i) {
    v[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits);
}

bool test_bit(const std::vector<std::uint64_t>& v, std::size_t i) {
    return (v[i / kWordBits] >> (i % kWordBits)) & 1;
}

void xor_into(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src) {
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
}

}  // namespace

EncodePlan build_encode_plan(const BitMatrix& h2) {
    if (h2.rows() != h2.cols() || h2.rows() == 0)
        throw std::invalid_argument("parity part must be square and nonempty");
    const std::size_t m = h2.rows();

    EncodePlan plan;
    plan.h2 = h2;

    // Longest constant-offset staircase suffix: columns whose top row trails
    // the column index by the same amount, anchored so the suffix column
    // loose + t has top row exactly t.
    std::size_t run_value = SIZE_MAX, run_start = m;
    for (std::size_t c = m; c-- > 0;) {
        if (h2.col(c).empty()) break;
        const std::size_t offset = c - h2.col(c).front();
        if (run_value == SIZE_MAX) run_value = offset;
        if (offset != run_value) break;
        run_start = c;
    }
    if (run_value != SIZE_MAX && run_start <= run_value) {
        plan.loose = run_value;
        plan.staircase = m - run_value;
    } else {
        plan.loose = m;
        plan.staircase = 0;
    }
    if (plan.loose == 0) return plan;  // pure back-substitution

    const std::size_t l = plan.loose;
    const std::size_t lw = words_for(l), mw = words_for(m);

    // Dependence of each staircase parity on the loose bits, folded forward;
    // then the residual rows, which become the dense system A p_loose = r.
    std::vector<std::vector<std::uint64_t>> dep(m);
    auto fold_row = [&](std::size_t row, std::vector<std::uint64_t>& acc, std::size_t skip_col) {
        for (std::size_t c : h2.row(row)) {
            if (c == skip_col) continue;
            if (c < l)
                flip_bit(acc, c);
            else
                xor_into(acc, dep[c]);
        }
    };
    for (std::size_t t = 0; t < plan.staircase; ++t) {
        auto& acc = dep[l + t];
        acc.assign(lw, 0);
        fold_row(t, acc, l + t);
    }
    std::vector<std::vector<std::uint64_t>> a(l), prov(l);
    for (std::size_t i = 0; i < l; ++i) {
        a[i].assign(lw, 0);
        fold_row(plan.staircase + i, a[i], SIZE_MAX);
        prov[i].assign(mw, 0);
        flip_bit(prov[i], plan.staircase + i);
    }
    // Row provenance: which original rows were folded into each equation.
    // Recomputed symbolically so a singular system names a concrete
    // dependent row set.
    std::vector<std::vector<std::uint64_t>> row_prov(m);
    for (std::size_t t = 0; t < plan.staircase; ++t) {
        auto& acc = row_prov[l + t];
        acc.assign(mw, 0);
        flip_bit(acc, t);
        for (std::size_t c : h2.row(t))
            if (c >= l && c != l + t) xor_into(acc, row_prov[c]);
    }
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t c : h2.row(plan.staircase + i))
            if (c >= l) xor_into(prov[i], row_prov[c]);

    // Gauss-Jordan with an augmented identity; forward pass first so a rank
    // deficit surfaces as an all-zero row whose provenance is the witness.
    plan.inverse.assign(l, std::vector<std::uint64_t>(lw, 0));
    for (std::size_t i = 0; i < l; ++i) flip_bit(plan.inverse[i], i);

    std::size_t rank = 0;
    for (std::size_t j = 0; j < l && rank < l; ++j) {
        std::size_t pivot = SIZE_MAX;
        for (std::size_t i = rank; i < l; ++i)
            if (test_bit(a[i], j)) {
                pivot = i;
                break;
            }
        if (pivot == SIZE_MAX) continue;
        std::swap(a[rank], a[pivot]);
        std::swap(plan.inverse[rank], plan.inverse[pivot]);
        std::swap(prov[rank], prov[pivot]);
        for (std::size_t i = rank + 1; i < l; ++i)
            if (test_bit(a[i], j)) {
                xor_into(a[i], a[rank]);
                xor_into(plan.inverse[i], plan.inverse[rank]);
                xor_into(prov[i], prov[rank]);
            }
        ++rank;
    }
    if (rank < l) {
        std::vector<std::size_t> witness;
        for (std::size_t r = 0; r < m; ++r)
            if (test_bit(prov[rank], r)) witness.push_back(r);
        std::string what = "parity part is singular: " + std::to_string(witness.size()) +
                           " rows cancel to zero";
        throw SingularMatrixError(std::move(witness), what);
    }
    // Backward pass: clear everything above each pivot. Pivot columns are in
    // row order because every column found a pivot.
    for (std::size_t j = l; j-- > 0;)
        for (std::size_t i = 0; i < j; ++i)
            if (test_bit(a[i], j)) {
                xor_into(a[i], a[j]);
                xor_into(plan.inverse[i], plan.inverse[j]);
            }
    return plan;
}

std::vector<std::uint8_t> encode_with_plan(const EncodePlan& plan,
                                           const std::vector<std::uint8_t>& s) {
    const BitMatrix& h2 = plan.h2;
    const std::size_t m = h2.rows(), l = plan.loose;
    if (s.size() != m) throw std::invalid_argument("syndrome length does not match");

    std::vector<std::uint8_t> p(m, 0);
    auto substitute = [&](std::vector<std::uint8_t>* residual) {
        for (std::size_t t = 0; t < plan.staircase; ++t) {
            std::uint8_t acc = s[t];
            for (std::size_t c : h2.row(t))
                if (c != l + t) acc ^= p[c];
            p[l + t] = acc;
        }
        for (std::size_t i = 0; i < l; ++i) {
            std::uint8_t acc = s[plan.staircase + i];
            for (std::size_t c : h2.row(plan.staircase + i)) acc ^= p[c];
            if (residual) (*residual)[i] = acc;
        }
    };

    if (l == 0) {
        substitute(nullptr);
        return p;
    }

    std::vector<std::uint8_t> res(l);
    substitute(&res);

    std::vector<std::uint64_t> packed(words_for(l), 0);
    for (std::size_t i = 0; i < l; ++i)
        if (res[i]) flip_bit(packed, i);
    for (std::size_t i = 0; i < l; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < packed.size(); ++w) acc ^= plan.inverse[i][w] & packed[w];
        p[i] = static_cast<std::uint8_t>(std::popcount(acc) & 1);
    }

    substitute(&res);
    for (std::size_t i = 0; i < l; ++i)
        if (res[i]) throw std::logic_error("plan failed to zero the residual system");
    return p;
}

}  // namespace e2rc

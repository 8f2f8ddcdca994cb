#include "e2rc/sim.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "e2rc/decode.hpp"
#include "e2rc/encode.hpp"
#include "e2rc/puncture.hpp"

namespace e2rc {

double noise_variance(double ebn0_db, double rate) {
    if (!(rate > 0.0) || !(rate <= 1.0))
        throw std::invalid_argument("rate must lie in (0, 1]");
    return 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0));
}

std::vector<double> awgn_transmit(const std::vector<std::uint8_t>& codeword,
                                  const std::vector<char>& punctured, double variance,
                                  std::mt19937_64& rng) {
    if (punctured.size() != codeword.size())
        throw std::invalid_argument("puncture mask length mismatch");
    if (!(variance > 0.0)) throw std::invalid_argument("noise variance must be positive");
    std::normal_distribution<double> noise(0.0, std::sqrt(variance));
    std::vector<double> out;
    out.reserve(codeword.size());
    for (std::size_t v = 0; v < codeword.size(); ++v)
        if (!punctured[v]) out.push_back((codeword[v] ? -1.0 : 1.0) + noise(rng));
    return out;
}

namespace {

struct Tally {
    std::size_t frames = 0;
    std::size_t bit_errors = 0;
    std::size_t frame_errors = 0;
    std::size_t iterations = 0;

    void merge(const Tally& other) {
        frames += other.frames;
        bit_errors += other.bit_errors;
        frame_errors += other.frame_errors;
        iterations += other.iterations;
    }
};

std::mt19937_64 frame_rng(std::uint64_t seed, std::size_t grid_index,
                          std::size_t frame_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(grid_index),
                      static_cast<std::uint32_t>(frame_index),
                      static_cast<std::uint32_t>(frame_index >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

std::vector<SimRecord> run_ber_sweep(const BitMatrix& h, const E2rcProfile& profile,
                                     const SimConfig& cfg) {
    const std::size_t k = profile.message_count;
    const std::size_t n = profile.codeword_length();
    if (h.rows() != profile.parity_count || h.cols() != n)
        throw std::invalid_argument("matrix shape disagrees with the profile");
    if (cfg.min_frame_errors == 0 || cfg.max_frames == 0)
        throw std::invalid_argument("stop rule must be positive");

    const auto h1 = submatrix_columns(h, 0, k);
    const auto h2 = submatrix_columns(h, k, n);
    const auto plan = build_encode_plan(h2);
    const auto schedule = puncture_schedule(profile);

    unsigned workers = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    constexpr std::size_t kChunk = 256;

    std::vector<SimRecord> records;
    for (std::size_t ri = 0; ri < cfg.rates.size(); ++ri) {
        auto punctured_cols = apply_puncturing(schedule, cfg.rates[ri], n);
        std::vector<char> mask(n, 0);
        for (std::size_t v : punctured_cols) mask[v] = 1;
        const double realized =
            static_cast<double>(k) / static_cast<double>(n - punctured_cols.size());

        for (std::size_t ei = 0; ei < cfg.ebn0_grid_db.size(); ++ei) {
            const double ebn0 = cfg.ebn0_grid_db[ei];
            const double variance = noise_variance(ebn0, realized);
            const std::size_t grid_index = ri * cfg.ebn0_grid_db.size() + ei;

            auto run_frame = [&](std::size_t frame_index, Tally& tally) {
                auto rng = frame_rng(cfg.seed, grid_index, frame_index);
                std::vector<std::uint8_t> msg(k);
                for (auto& b : msg) b = static_cast<std::uint8_t>(rng() & 1);
                auto codeword = msg;
                auto parity = encode_with_plan(plan, syndrome_target(h1, msg));
                codeword.insert(codeword.end(), parity.begin(), parity.end());

                auto transmitted = awgn_transmit(codeword, mask, variance, rng);
                std::vector<double> received(n, 0.0);
                for (std::size_t v = 0, t = 0; v < n; ++v)
                    if (!mask[v]) received[v] = transmitted[t++];

                auto decoded =
                    bp_decode(h, llr_from_awgn(received, variance, mask), cfg.max_iters);
                std::size_t wrong = 0;
                for (std::size_t v = 0; v < k; ++v)
                    if (decoded.hard_bits[v] != msg[v]) ++wrong;

                ++tally.frames;
                tally.bit_errors += wrong;
                tally.frame_errors += wrong > 0;
                tally.iterations += decoded.iterations_used;
            };

            Tally total;
            while (total.frame_errors < cfg.min_frame_errors &&
                   total.frames < cfg.max_frames) {
                const std::size_t chunk = std::min(kChunk, cfg.max_frames - total.frames);
                const std::size_t base = total.frames;
                std::vector<Tally> parts(workers);
                std::vector<std::thread> pool;
                for (unsigned w = 0; w < workers; ++w)
                    pool.emplace_back([&, w] {
                        for (std::size_t f = w; f < chunk; f += workers)
                            run_frame(base + f, parts[w]);
                    });
                for (auto& t : pool) t.join();
                for (const auto& part : parts) total.merge(part);
            }

            SimRecord rec;
            rec.rate = realized;
            rec.ebn0_db = ebn0;
            rec.frames = total.frames;
            rec.bit_errors = total.bit_errors;
            rec.frame_errors = total.frame_errors;
            rec.ber = static_cast<double>(total.bit_errors) /
                      (static_cast<double>(total.frames) * static_cast<double>(k));
            rec.fer = static_cast<double>(total.frame_errors) /
                      static_cast<double>(total.frames);
            rec.mean_iterations = static_cast<double>(total.iterations) /
                                  static_cast<double>(total.frames);
            records.push_back(rec);
        }
    }
    return records;
}

std::string format_csv(const std::vector<SimRecord>& records) {
    std::string out =
        "# ebn0_db is referenced to the realized transmitted rate K/(N-p); "
        "sigma^2 = 1/(2*rate*10^(ebn0_db/10))\n"
        "rate,ebn0_db,frames,bit_errors,frame_errors,ber,fer,mean_iterations\n";
    char line[192];
    for (const auto& r : records) {
        std::snprintf(line, sizeof line, "%.6f,%.3f,%zu,%zu,%zu,%.6e,%.6e,%.3f\n", r.rate,
                      r.ebn0_db, r.frames, r.bit_errors, r.frame_errors, r.ber, r.fer,
                      r.mean_iterations);
        out += line;
    }
    return out;
}

}  // namespace e2rc

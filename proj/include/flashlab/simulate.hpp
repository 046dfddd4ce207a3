// Monte-Carlo rewriting simulator: drives a code with an i.i.d. per-bit flip
// distribution, records the number of successful rewrites between
// consecutive erase operations and accumulates histogram and averages.
//
// Erase semantics: the flip that triggers an erase is absorbed - both the
// block and the tracked information vector reset to all-zero and that step
// counts as an erase step, not a rewrite. The reported erase probability is
// erases per rewriting (see erase_probability_sim), whose inverse equals the
// mean rewrite interval.
//
// RNG: std::mt19937_64 seeded with the run seed, sampled through BitSampler.
// Fixed for golden tests.

#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include "flashlab/codec.hpp"
#include "flashlab/core.hpp"
#include "flashlab/distribution.hpp"
#include "flashlab/ilifc.hpp"
#include "flashlab/layered.hpp"

namespace flashlab {

struct RunConfig {
    CodeParams params;
    CodecKind code;
    FlipDistribution dist;
    std::uint64_t stop; // target erase count
    std::uint64_t seed;
};

struct RunStats {
    std::vector<std::uint32_t> intervals;             // rewrites per erase interval
    std::map<std::uint32_t, std::uint64_t> histogram; // interval length -> frequency
    double average = 0.0;                             // mean of intervals
    double erase_rate = 0.0;                          // erases / total steps
    std::uint64_t total_steps = 0;
    std::uint64_t total_writes = 0;
};

template <FlashCode C>
RunStats run(const C& code, const FlipDistribution& dist, std::uint64_t stop, std::uint64_t seed) {
    if (stop < 1) throw std::invalid_argument("run: stop must be >= 1");
    if (dist.size() != code.params().k) throw std::invalid_argument("run: distribution length != k");

    const CodeParams& p = code.params();
    std::mt19937_64 rng(seed);
    const BitSampler sampler(dist);

    RunStats stats;
    stats.intervals.reserve(stop);
    BlockState block = zero_block(p);
    InfoVector info = zero_info(p);
    std::uint32_t current = 0;

    while (stats.intervals.size() < stop) {
        const int bit = sampler.sample(rng);
        ++stats.total_steps;
        EncodeOutcome outcome = code.encode_flip(block, bit);
        if (outcome.written()) {
            block = std::move(*outcome.next);
            info[static_cast<std::size_t>(bit - 1)] ^= 1;
            ++current;
            ++stats.total_writes;
        } else {
            stats.intervals.push_back(current);
            ++stats.histogram[current];
            current = 0;
            block.assign(block.size(), 0);
            info.assign(info.size(), 0);
        }
    }

    double sum = 0.0;
    for (std::uint32_t iv : stats.intervals) sum += iv;
    stats.average = sum / static_cast<double>(stats.intervals.size());
    stats.erase_rate = static_cast<double>(stats.intervals.size()) / static_cast<double>(stats.total_steps);
    return stats;
}

inline RunStats run(const RunConfig& cfg) {
    if (cfg.code == CodecKind::Ilifc) return run(IlifcCode(cfg.params), cfg.dist, cfg.stop, cfg.seed);
    return run(LayeredCode(cfg.params), cfg.dist, cfg.stop, cfg.seed);
}

inline double average_rewritings(const RunStats& stats) {
    if (stats.intervals.empty()) throw std::invalid_argument("average_rewritings: no intervals");
    return stats.average;
}

// Erases per rewriting; the inverse is the mean number of rewritings
// between consecutive erase operations.
inline double erase_probability_sim(const RunStats& stats) {
    if (stats.intervals.empty()) throw std::invalid_argument("erase_probability_sim: no intervals");
    return static_cast<double>(stats.intervals.size()) / static_cast<double>(stats.total_writes);
}

// Header `rewrites,frequency`, rows sorted ascending by interval length.
inline void write_histogram_csv(std::ostream& out, const RunStats& stats) {
    out << "rewrites,frequency\n";
    for (const auto& [rewrites, freq] : stats.histogram) out << rewrites << ',' << freq << '\n';
}

} // namespace flashlab

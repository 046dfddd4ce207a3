// Per-bit flip distribution of the rewriting model and its sampler.

#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace flashlab {

// Probability that bit i (1-based) flips at a given step; entries >= 0,
// sum 1 within 1e-12.
struct FlipDistribution {
    std::vector<double> p;

    explicit FlipDistribution(std::vector<double> probs) : p(std::move(probs)) {
        double sum = 0.0;
        for (double x : p) {
            if (x < 0.0) throw std::invalid_argument("FlipDistribution: negative probability");
            sum += x;
        }
        if (p.empty() || sum < 1.0 - 1e-12 || sum > 1.0 + 1e-12)
            throw std::invalid_argument("FlipDistribution: probabilities must sum to 1");
    }

    static FlipDistribution uniform(int k) {
        return FlipDistribution(std::vector<double>(static_cast<std::size_t>(k), 1.0 / k));
    }

    int size() const { return static_cast<int>(p.size()); }
};

// Cumulative-sum inversion over the nonzero entries; the prefix sums are
// strictly increasing, so zero-probability bits can never be drawn.
class BitSampler {
  public:
    explicit BitSampler(const FlipDistribution& dist) {
        double acc = 0.0;
        for (int i = 0; i < dist.size(); ++i) {
            if (dist.p[static_cast<std::size_t>(i)] > 0.0) {
                acc += dist.p[static_cast<std::size_t>(i)];
                cut_.push_back(acc);
                bit_.push_back(i + 1);
            }
        }
        cut_.back() = 1.0;
    }

    // Uniform double built from the top 53 bits of the generator output, so
    // results do not depend on the standard library's distribution
    // implementation.
    int sample(std::mt19937_64& rng) const {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        std::size_t lo = 0, hi = cut_.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (u < cut_[mid])
                hi = mid;
            else
                lo = mid + 1;
        }
        return bit_[lo];
    }

  private:
    std::vector<double> cut_;
    std::vector<int> bit_;
};

} // namespace flashlab

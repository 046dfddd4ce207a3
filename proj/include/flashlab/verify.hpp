// Independent brute-force oracles: exhaustive decode-consistency over short
// flip sequences, single sub-block trajectory enumeration for the index
// maps, and adversarial worst-case search over the reachable state graph.
// These deliberately avoid the decode/encode shortcuts they are checking.

#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "flashlab/codec.hpp"
#include "flashlab/core.hpp"
#include "flashlab/ilifc.hpp"
#include "flashlab/layered.hpp"
#include "flashlab/markov.hpp"

namespace flashlab {

// A sub-block that can still absorb writes (empty or active).
inline bool is_live(SubBlockView x, int q) { return !is_full(x, q); }

struct ConsistencyResult {
    bool pass = true;
    std::vector<int> counterexample; // flip sequence up to and including the failing step
    std::string detail;
};

// Walks every flip sequence of length <= depth from the all-zero state,
// tracking the true information vector beside the code; on erase both
// reset. Fails on the first state whose decode disagrees.
template <FlashCode C>
ConsistencyResult exhaustive_consistency(const C& code, int depth) {
    const CodeParams& p = code.params();
    struct Frame {
        BlockState block;
        InfoVector info;
        std::vector<int> flips;
    };
    std::deque<Frame> queue;
    queue.push_back({zero_block(p), zero_info(p), {}});
    while (!queue.empty()) {
        Frame frame = std::move(queue.front());
        queue.pop_front();
        if (static_cast<int>(frame.flips.size()) >= depth) continue;
        for (int bit = 1; bit <= p.k; ++bit) {
            Frame next = frame;
            next.flips.push_back(bit);
            EncodeOutcome outcome = code.encode_flip(next.block, bit);
            if (outcome.written()) {
                next.block = std::move(*outcome.next);
                next.info[static_cast<std::size_t>(bit - 1)] ^= 1;
            } else {
                next.block.assign(next.block.size(), 0);
                next.info.assign(next.info.size(), 0);
            }
            if (code.decode(next.block) != next.info) {
                ConsistencyResult fail;
                fail.pass = false;
                fail.counterexample = next.flips;
                fail.detail = "decode mismatch at block state " + format_block(next.block);
                return fail;
            }
            queue.push_back(std::move(next));
        }
    }
    return {};
}

struct DecodabilityResult {
    bool pass = true;
    std::string detail;
};

namespace detail {

inline DecodabilityResult decodability_fail(std::string msg) { return {false, std::move(msg)}; }

// Argmax position and whether it is unique.
inline std::pair<int, bool> argmax_unique(SubBlockView x) {
    const int k = static_cast<int>(x.size());
    int best = 0, best_diff = static_cast<int>(x[0]) - static_cast<int>(x[k - 1]), count = 1;
    for (int j = 1; j < k; ++j) {
        const int d = static_cast<int>(x[j]) - static_cast<int>(x[j - 1]);
        if (d > best_diff) {
            best = j;
            best_diff = d;
            count = 1;
        } else if (d == best_diff) {
            ++count;
        }
    }
    return {best + 1, count == 1};
}

} // namespace detail

// Enumerates the full single sub-block write trajectory of every index and
// checks that the index map answers that index, uniquely, at every state
// that still carries one, and that trajectories of distinct indices never
// share such a state.
inline DecodabilityResult subblock_decodability(CodecKind kind, int k, int q) {
    const CodeParams params(k, k, q); // single sub-block
    std::unordered_map<BlockState, int, detail::BlockHash> owner;

    for (int bit = 1; bit <= k; ++bit) {
        std::vector<BlockState> trajectory;
        if (kind == CodecKind::Ilifc) {
            std::vector<Level> x = ilifc_write_new(bit, zero_block(params));
            while (true) {
                trajectory.push_back(x);
                if (is_full(x, q)) break;
                x = ilifc_write_step(x, bit, q);
            }
        } else {
            // Each clear layer restarts the index; one layer's worth of
            // writes already exercises every non-clear state of this index
            // at that layer, so walk all layers bottom to top.
            std::vector<Level> x(static_cast<std::size_t>(k), 0);
            for (int layer = 0; layer <= q - 2; ++layer) {
                x = layered_write_new(bit, x, q);
                while (!clear_layer(x)) {
                    trajectory.push_back(x);
                    x = layered_write_step(x);
                }
            }
        }

        for (const BlockState& x : trajectory) {
            const bool carries_index = kind == CodecKind::Ilifc ? is_active(x, q) : !clear_layer(x).has_value();
            if (!carries_index) continue;
            const int read = kind == CodecKind::Ilifc ? index_ilifc(x) : index_layered(x);
            if (read != bit)
                return detail::decodability_fail("index map returned " + std::to_string(read) + " for " + format_block(x) +
                                                 " written under index " + std::to_string(bit));
            if (const auto [pos, unique] = detail::argmax_unique(x); !unique)
                return detail::decodability_fail("ambiguous index argmax at " + format_block(x));
            if (auto [it, inserted] = owner.try_emplace(x, bit); !inserted && it->second != bit)
                return detail::decodability_fail("state " + format_block(x) + " reachable under indices " +
                                                 std::to_string(it->second) + " and " + std::to_string(bit));
        }
    }
    return {};
}

struct WorstCaseResult {
    CodecKind code;
    CodeParams params;
    std::uint32_t min_writes = 0;
    std::vector<int> witness; // flip sequence; the last flip triggers the erase
};

struct ReplayResult {
    std::uint32_t writes = 0; // successful rewrites before the first erase
    bool erased = false;
    BlockState final_state;
};

// Applies the flip sequence until the first erase or the end of the
// sequence.
template <FlashCode C>
ReplayResult replay_flips(const C& code, const std::vector<int>& flips) {
    ReplayResult result;
    result.final_state = zero_block(code.params());
    for (int bit : flips) {
        EncodeOutcome outcome = code.encode_flip(result.final_state, bit);
        if (outcome.erase()) {
            result.erased = true;
            return result;
        }
        result.final_state = std::move(*outcome.next);
        ++result.writes;
    }
    return result;
}

// The adversary fully controls the flips, so the minimum number of
// successful rewrites before a forced erase is a shortest path (every write
// costs 1) from the all-zero state to any state with an erase move.
template <FlashCode C>
WorstCaseResult worst_case(const C& code, CodecKind kind, std::size_t cap = kDefaultTransitionCap) {
    const CodeParams& p = code.params();
    std::unordered_map<BlockState, std::uint32_t, detail::BlockHash> index;
    std::vector<BlockState> states{zero_block(p)};
    std::vector<std::pair<std::uint32_t, int>> parent{{0, 0}}; // (predecessor state, bit)
    std::vector<std::uint32_t> depth{0};
    index.emplace(states.front(), 0);
    std::deque<std::uint32_t> frontier{0};
    std::size_t expansions = 0;

    while (!frontier.empty()) {
        const std::uint32_t si = frontier.front();
        frontier.pop_front();
        for (int bit = 1; bit <= p.k; ++bit) {
            if (++expansions > cap) throw ChainCapExceeded(cap);
            EncodeOutcome outcome = code.encode_flip(states[si], bit);
            if (outcome.erase()) {
                WorstCaseResult result{kind, p, depth[si], {}};
                std::vector<int> path{bit};
                for (std::uint32_t s = si; s != 0; s = parent[s].first) path.push_back(parent[s].second);
                result.witness.assign(path.rbegin(), path.rend());
                return result;
            }
            auto [it, inserted] = index.try_emplace(std::move(*outcome.next), static_cast<std::uint32_t>(states.size()));
            if (inserted) {
                states.push_back(it->first);
                parent.emplace_back(si, bit);
                depth.push_back(depth[si] + 1);
                frontier.push_back(it->second);
            }
        }
    }
    throw std::logic_error("worst_case: no erasable state found"); // unreachable: weights cannot grow forever
}

inline WorstCaseResult worst_case(CodecKind kind, const CodeParams& params, std::size_t cap = kDefaultTransitionCap) {
    if (kind == CodecKind::Ilifc) return worst_case(IlifcCode(params), kind, cap);
    return worst_case(LayeredCode(params), kind, cap);
}

// For m == k the worst case event is explicit: park one write of every bit
// but the first into sub-blocks 1..k-1 (pinning them non-clear at the bottom
// layer), then hammer bit 1 - the last sub-block is now always the lowest
// allocation target, so it climbs alone to full after k(q-1) writes. The
// final flip of bit 1 then finds no index, no empty and no usable clear
// sub-block and must erase, after exactly k(q-1)+k-1 rewrites. The bit order
// matters: leading with bit 1 would let the layered allocator spread the
// writes across every sub-block.
inline std::vector<int> worst_case_witness_mk(const CodeParams& params) {
    if (params.m != params.k) throw std::invalid_argument("worst_case_witness_mk: requires m == k");
    std::vector<int> flips;
    flips.reserve(static_cast<std::size_t>(params.k) * params.q);
    for (int bit = 2; bit <= params.k; ++bit) flips.push_back(bit);
    flips.insert(flips.end(), static_cast<std::size_t>(params.k) * (params.q - 1), 1);
    flips.push_back(1);
    return flips;
}

} // namespace flashlab

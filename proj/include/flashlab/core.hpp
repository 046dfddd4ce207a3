// Block geometry, sub-block state predicates and the index maps shared by
// both rewriting codes. Cells hold q-ary levels that only ever increase
// between erases; a block of n cells is split into m = floor(n/k) sub-blocks
// of k cells each, and every sub-block encodes one bit of the length-k
// information vector together with that bit's index.
//
// Convention: bit and cell indices are 1-based in public interfaces (bit i
// lives at InfoVector[i-1]); all cyclic position arithmetic is done on
// 0-based offsets internally.

#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flashlab {

using Level = std::uint8_t;
using BlockState = std::vector<Level>;        // n cell levels
using InfoVector = std::vector<std::uint8_t>; // k bits, each 0 or 1
using SubBlockView = std::span<const Level>;  // window of k cells

struct CodeParams {
    int n; // cells per erase block
    int k; // information bits (= sub-block size), even
    int q; // cell levels
    int m; // sub-blocks, floor(n/k)

    CodeParams(int n_, int k_, int q_) : n(n_), k(k_), q(q_), m(k_ > 0 ? n_ / k_ : 0) {
        if (n < 1) throw std::invalid_argument("CodeParams: n must be positive");
        if (k < 2 || k % 2 != 0) throw std::invalid_argument("CodeParams: k must be a positive even integer");
        if (q < 2 || q > 256) throw std::invalid_argument("CodeParams: q must be in [2, 256]");
        if (m < 1) throw std::invalid_argument("CodeParams: need at least one sub-block (n >= k)");
    }

    friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

inline BlockState zero_block(const CodeParams& p) { return BlockState(static_cast<std::size_t>(p.n), 0); }
inline InfoVector zero_info(const CodeParams& p) { return InfoVector(static_cast<std::size_t>(p.k), 0); }

// j-th sub-block, 0-based; cells beyond m*k are never part of any sub-block.
inline SubBlockView sub_block(const BlockState& s, const CodeParams& p, int j) {
    return SubBlockView(s).subspan(static_cast<std::size_t>(j) * p.k, static_cast<std::size_t>(p.k));
}

inline int weight(SubBlockView x) {
    return std::accumulate(x.begin(), x.end(), 0, [](int a, Level c) { return a + c; });
}

inline int parity(SubBlockView x) { return weight(x) % 2; }

inline bool is_empty(SubBlockView x) {
    return std::all_of(x.begin(), x.end(), [](Level c) { return c == 0; });
}

inline bool is_full(SubBlockView x, int q) {
    return std::all_of(x.begin(), x.end(), [q](Level c) { return c == q - 1; });
}

// Neither full nor empty.
inline bool is_active(SubBlockView x, int q) { return !is_empty(x) && !is_full(x, q); }

// Common level of all cells, if the sub-block sits entirely in one layer.
inline std::optional<int> clear_layer(SubBlockView x) {
    const Level l = x.front();
    for (Level c : x)
        if (c != l) return std::nullopt;
    return static_cast<int>(l);
}

// One classification serving both views: Empty/Full are the layer-0 and
// layer-(q-1) clear states, Clear covers the intermediate uniform layers,
// Active everything else. A Clear sub-block counts as active in the
// original code's view and as clear in the layered view.
struct SubBlockStatus {
    enum class Kind : std::uint8_t { Empty, Full, Active, Clear };

    Kind kind;
    int layer; // common level when kind != Active, else -1

    bool active_ilifc() const { return kind == Kind::Active || kind == Kind::Clear; }
    bool clear_layered() const { return kind != Kind::Active; }
};

inline SubBlockStatus status(SubBlockView x, int q) {
    if (auto l = clear_layer(x)) {
        if (*l == 0) return {SubBlockStatus::Kind::Empty, 0};
        if (*l == q - 1) return {SubBlockStatus::Kind::Full, q - 1};
        return {SubBlockStatus::Kind::Clear, *l};
    }
    return {SubBlockStatus::Kind::Active, -1};
}

// Largest cyclic-predecessor difference c_i - c_{i-1} (1-based, wrapping),
// smallest position on ties. Shared by both index maps.
inline int index_argmax(SubBlockView x) {
    const int k = static_cast<int>(x.size());
    int best = 0, best_diff = static_cast<int>(x[0]) - static_cast<int>(x[k - 1]);
    for (int j = 1; j < k; ++j) {
        const int d = static_cast<int>(x[j]) - static_cast<int>(x[j - 1]);
        if (d > best_diff) {
            best = j;
            best_diff = d;
        }
    }
    return best + 1;
}

// Index map of the original code: 0 for the all-zero sub-block.
inline int index_ilifc(SubBlockView x) { return is_empty(x) ? 0 : index_argmax(x); }

// Layered index map: 0 for any clear sub-block (uniform layer).
inline int index_layered(SubBlockView x) { return clear_layer(x) ? 0 : index_argmax(x); }

// Componentwise >=; the only allowed inter-erase transitions move to a
// higher state.
inline bool is_higher(const BlockState& a, const BlockState& b) {
    if (a.size() != b.size()) throw std::invalid_argument("is_higher: dimension mismatch");
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] < b[j]) return false;
    return true;
}

// Comma-separated level list, e.g. "2,1,1,0".
inline std::string format_block(const BlockState& s) {
    std::string out;
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (j) out.push_back(',');
        out += std::to_string(static_cast<int>(s[j]));
    }
    return out;
}

inline BlockState parse_block(std::string_view text) {
    BlockState s;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find(',', pos), text.size());
        int value = -1;
        const auto res = std::from_chars(text.data() + pos, text.data() + end, value);
        if (res.ec != std::errc{} || res.ptr != text.data() + end || value < 0 || value > 255)
            throw std::invalid_argument("parse_block: bad level list '" + std::string(text) + "'");
        s.push_back(static_cast<Level>(value));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return s;
}

} // namespace flashlab

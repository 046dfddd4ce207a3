// First stage of the index-less indexed flash code. A sub-block adopts an
// index with its first write and keeps it until the block is erased; the
// stored bit is the sub-block's weight parity.

#pragma once

#include <cassert>

#include "flashlab/codec.hpp"
#include "flashlab/core.hpp"

namespace flashlab {

// First write into an empty sub-block: cell `bit` goes to level 1, which
// makes the index map read `bit` with parity 1.
inline std::vector<Level> ilifc_write_new(int bit, SubBlockView x) {
    assert(is_empty(x));
    std::vector<Level> y(x.begin(), x.end());
    y[static_cast<std::size_t>(bit - 1)] = 1;
    return y;
}

// One write into a non-full sub-block holding index `bit`. Positions are
// counted from the index cell: p = 0..k-1 maps to cell (bit-1+p) mod k.
// Writes raise positions 0..k-2 level by level (position p of pass l moves
// from l to l+1) while position k-1 stays at 0; once the first k-1 positions
// are saturated, position k-1 climbs alone. The index cell therefore always
// leads its cyclic predecessor and the index map keeps returning `bit` in
// every intermediate state.
inline std::vector<Level> ilifc_write_step(SubBlockView x, int bit, int q) {
    const int k = static_cast<int>(x.size());
    assert(!is_full(x, q));
    const int w = weight(x);
    const int i0 = bit - 1;
    int pos;
    if (w < (q - 1) * (k - 1)) {
        pos = (i0 + w % (k - 1)) % k;
    } else {
        pos = (i0 + k - 1) % k;
    }
    std::vector<Level> y(x.begin(), x.end());
    assert(y[pos] < q - 1);
    ++y[static_cast<std::size_t>(pos)];
    return y;
}

class IlifcCode {
  public:
    explicit IlifcCode(CodeParams p) : params_(p) {}

    const CodeParams& params() const { return params_; }

    // Scan of the sub-blocks in order: active ones report their index and
    // parity, full and empty ones carry no bit. No reachability validation.
    InfoVector decode(const BlockState& s) const {
        InfoVector v = zero_info(params_);
        for (int j = 0; j < params_.m; ++j) {
            const SubBlockView x = sub_block(s, params_, j);
            if (is_active(x, params_.q)) v[static_cast<std::size_t>(index_ilifc(x) - 1)] = static_cast<std::uint8_t>(parity(x));
        }
        return v;
    }

    // First-fit scan for an active sub-block already holding `bit`, then
    // first-fit for an empty sub-block to adopt it; erase when neither
    // exists.
    EncodeOutcome encode_flip(const BlockState& s, int bit) const {
        if (bit < 1 || bit > params_.k) throw std::out_of_range("encode_flip: bit index out of range");
        for (int j = 0; j < params_.m; ++j) {
            const SubBlockView x = sub_block(s, params_, j);
            if (is_active(x, params_.q) && index_ilifc(x) == bit)
                return EncodeOutcome::make_written(replace_sub_block(s, j, ilifc_write_step(x, bit, params_.q)));
        }
        for (int j = 0; j < params_.m; ++j) {
            const SubBlockView x = sub_block(s, params_, j);
            if (is_empty(x)) return EncodeOutcome::make_written(replace_sub_block(s, j, ilifc_write_new(bit, x)));
        }
        return EncodeOutcome::make_erase();
    }

  private:
    BlockState replace_sub_block(const BlockState& s, int j, const std::vector<Level>& levels) const {
        BlockState next = s;
        std::copy(levels.begin(), levels.end(), next.begin() + static_cast<std::ptrdiff_t>(j) * params_.k);
        return next;
    }

    CodeParams params_;
};

} // namespace flashlab

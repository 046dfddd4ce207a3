// Layered variant: cells advance layer by layer, and a sub-block whose cells
// all sit in one layer is "clear" - it carries no index, stores bit value 0
// (k is even, so its parity is 0), and can adopt any index with its next
// write. New indices go to the lowest clear layer first, which keeps cell
// levels balanced under nonuniform flip traffic.

#pragma once

#include <cassert>

#include "flashlab/codec.hpp"
#include "flashlab/core.hpp"

namespace flashlab {

// Write an index into a clear sub-block (layer <= q-2): cell `bit` moves up
// one layer, parity becomes 1.
inline std::vector<Level> layered_write_new(int bit, SubBlockView x, int q) {
    assert(clear_layer(x) && *clear_layer(x) <= q - 2);
    (void)q;
    std::vector<Level> y(x.begin(), x.end());
    ++y[static_cast<std::size_t>(bit - 1)];
    return y;
}

// One write into a non-clear sub-block. The cells one layer up form a cyclic
// run starting at the index cell; the write extends that run by one:
// with i = index and w = weight, the cell at 0-based position (i-1+w) mod k
// moves up. When the run closes the sub-block becomes clear at the next
// layer and forgets its index.
inline std::vector<Level> layered_write_step(SubBlockView x) {
    assert(!clear_layer(x));
    const int k = static_cast<int>(x.size());
    const int i0 = index_layered(x) - 1;
    const int pos = (i0 + weight(x)) % k;
    std::vector<Level> y(x.begin(), x.end());
    ++y[static_cast<std::size_t>(pos)];
    return y;
}

class LayeredCode {
  public:
    explicit LayeredCode(CodeParams p) : params_(p) {}

    const CodeParams& params() const { return params_; }

    // Same scan as the original decoder with clear substituted for
    // empty/full skipping: clear sub-blocks contribute 0, which is exactly
    // their parity.
    InfoVector decode(const BlockState& s) const {
        InfoVector v = zero_info(params_);
        for (int j = 0; j < params_.m; ++j) {
            const SubBlockView x = sub_block(s, params_, j);
            if (!clear_layer(x)) v[static_cast<std::size_t>(index_layered(x) - 1)] = static_cast<std::uint8_t>(parity(x));
        }
        return v;
    }

    // First-fit scan for a non-clear sub-block holding `bit`; otherwise
    // allocate in the lowest clear layer (layers q-1 cannot accept a write,
    // so the scan stops at q-2); erase when nothing can take the flip.
    EncodeOutcome encode_flip(const BlockState& s, int bit) const {
        if (bit < 1 || bit > params_.k) throw std::out_of_range("encode_flip: bit index out of range");
        for (int j = 0; j < params_.m; ++j) {
            const SubBlockView x = sub_block(s, params_, j);
            if (!clear_layer(x) && index_layered(x) == bit)
                return EncodeOutcome::make_written(replace_sub_block(s, j, layered_write_step(x)));
        }
        for (int l = 0; l <= params_.q - 2; ++l) {
            for (int j = 0; j < params_.m; ++j) {
                const SubBlockView x = sub_block(s, params_, j);
                if (clear_layer(x) == l)
                    return EncodeOutcome::make_written(replace_sub_block(s, j, layered_write_new(bit, x, params_.q)));
            }
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

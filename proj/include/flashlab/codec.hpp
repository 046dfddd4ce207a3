// Common surface shared by both rewriting codes: the outcome of one rewrite
// attempt and the FlashCode concept consumed by the simulator, the chain
// analyzer and the verifier.

#pragma once

#include <concepts>
#include <optional>
#include <stdexcept>
#include <utility>

#include "flashlab/core.hpp"

namespace flashlab {

// One rewrite attempt either programs exactly one cell (total weight +1,
// strictly higher block state) or signals that the block must be erased.
struct EncodeOutcome {
    std::optional<BlockState> next;

    bool written() const { return next.has_value(); }
    bool erase() const { return !next.has_value(); }

    const BlockState& state() const {
        if (!next) throw std::logic_error("EncodeOutcome: no state on erase");
        return *next;
    }

    static EncodeOutcome make_written(BlockState s) { return {std::move(s)}; }
    static EncodeOutcome make_erase() { return {std::nullopt}; }
};

enum class CodecKind { Ilifc, Layered };

inline const char* codec_name(CodecKind kind) { return kind == CodecKind::Ilifc ? "ilifc" : "layered"; }

template <typename C>
concept FlashCode = requires(const C& code, const BlockState& s, int bit) {
    { code.params() } -> std::convertible_to<CodeParams>;
    { code.decode(s) } -> std::same_as<InfoVector>;
    { code.encode_flip(s, bit) } -> std::same_as<EncodeOutcome>;
};

} // namespace flashlab

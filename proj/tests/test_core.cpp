#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "flashlab/core.hpp"

using namespace flashlab;

namespace {
std::vector<Level> sb(std::initializer_list<int> levels) {
    std::vector<Level> out;
    for (int l : levels) out.push_back(static_cast<Level>(l));
    return out;
}
} // namespace

TEST_CASE("geometry validation", "[core]") {
    const CodeParams p(16, 4, 8);
    CHECK(p.m == 4);
    CHECK(CodeParams(5, 2, 2).m == 2); // one trailing cell
    CHECK_THROWS_AS(CodeParams(4, 3, 2), std::invalid_argument);   // odd k
    CHECK_THROWS_AS(CodeParams(4, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(CodeParams(4, 2, 1), std::invalid_argument);   // q too small
    CHECK_THROWS_AS(CodeParams(2, 4, 2), std::invalid_argument);   // no sub-block fits
}

TEST_CASE("weight and parity", "[core]") {
    CHECK(weight(sb({2, 1, 1, 0})) == 4);
    CHECK(weight(sb({0, 0, 0, 0})) == 0);
    CHECK(weight(sb({1, 2})) == 3);
    CHECK(parity(sb({2, 1, 1, 0})) == 0);
    CHECK(parity(sb({1, 0, 0, 0})) == 1);
    CHECK(parity(sb({2, 2, 2, 2})) == 0); // full sub-block, k even
}

TEST_CASE("status classification", "[core]") {
    const auto empty = status(sb({0, 0, 0, 0}), 3);
    CHECK(empty.kind == SubBlockStatus::Kind::Empty);
    CHECK(empty.layer == 0);
    CHECK(empty.clear_layered());
    CHECK_FALSE(empty.active_ilifc());

    const auto full = status(sb({2, 2, 2, 2}), 3);
    CHECK(full.kind == SubBlockStatus::Kind::Full);
    CHECK(full.layer == 2);

    const auto active = status(sb({1, 1, 2, 1}), 3);
    CHECK(active.kind == SubBlockStatus::Kind::Active);
    CHECK(active.active_ilifc());
    CHECK_FALSE(active.clear_layered());

    const auto mid = status(sb({1, 1, 1, 1}), 3);
    CHECK(mid.kind == SubBlockStatus::Kind::Clear);
    CHECK(mid.layer == 1);
    CHECK(mid.active_ilifc()); // mid-layer clear states are active in the original view
    CHECK(mid.clear_layered());
}

TEST_CASE("status partitions every pattern", "[core]") {
    // Exactly one of empty/full/active holds; clear layers decode to 0.
    const int k = 2, q = 4;
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            const auto x = sb({a, b});
            const int classes = (is_empty(x) ? 1 : 0) + (is_full(x, q) ? 1 : 0) + (is_active(x, q) ? 1 : 0);
            CHECK(classes == 1);
            if (auto layer = clear_layer(x)) CHECK(parity(x) == 0); // k even
            CHECK(parity(x) == weight(x) % 2);
        }
    }
}

TEST_CASE("index map of the original code", "[core]") {
    CHECK(index_ilifc(sb({0, 0, 0, 0})) == 0);
    CHECK(index_ilifc(sb({1, 0, 0, 0})) == 1);
    CHECK(index_ilifc(sb({0, 1, 1, 0})) == 2);
    CHECK(index_ilifc(sb({2, 2, 1, 0})) == 1);
}

TEST_CASE("layered index map", "[core]") {
    CHECK(index_layered(sb({1, 1, 1, 1})) == 0);
    CHECK(index_layered(sb({1, 2, 2, 1})) == 2);
    CHECK(index_layered(sb({0, 0, 1, 0})) == 3);
    CHECK(index_layered(sb({0, 0, 0, 0})) == 0); // empty is clear at layer 0
}

TEST_CASE("higher-state order", "[core]") {
    CHECK(is_higher({1, 1, 0, 0}, {1, 0, 0, 0}));
    CHECK(is_higher({1, 0}, {1, 0})); // reflexive
    CHECK_FALSE(is_higher({1, 0}, {0, 1}));
    CHECK_FALSE(is_higher({0, 1}, {1, 0}));
    CHECK_THROWS_AS(is_higher({1, 0}, {1, 0, 0}), std::invalid_argument);
}

TEST_CASE("block serialization", "[core]") {
    CHECK(format_block({2, 1, 1, 0}) == "2,1,1,0");
    CHECK(parse_block("2,1,1,0") == BlockState{2, 1, 1, 0});
    CHECK(parse_block("0") == BlockState{0});
    CHECK_THROWS_AS(parse_block("1,,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_block("1,x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_block("1,300"), std::invalid_argument);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        BlockState s(1 + rng() % 20);
        for (Level& c : s) c = static_cast<Level>(rng() % 8);
        CHECK(parse_block(format_block(s)) == s);
    }
}

TEST_CASE("sub-block views", "[core]") {
    const CodeParams p(5, 2, 3);
    const BlockState s{1, 2, 0, 1, 0};
    CHECK(weight(sub_block(s, p, 0)) == 3);
    CHECK(weight(sub_block(s, p, 1)) == 1);
    CHECK(index_ilifc(sub_block(s, p, 1)) == 2);
}

#include <catch2/catch_amalgamated.hpp>

#include <fgred/gadget.hpp>
#include <fgred/rng.hpp>

using namespace fgred;

TEST_CASE("frozen layouts for tiny shapes") {
    auto s = build_gadget(1, 1);
    CHECK(s.M == 1);
    CHECK(s.Gamma == 3);
    CHECK(s.tensor_len == 2);
    CHECK(s.linv_len == 1);
    CHECK(s.linu_len == 2);
    CHECK(s.pad_len == 3);
    CHECK(s.dim == 8);

    auto s2 = build_gadget(1, 2);
    CHECK(s2.M == 4);
    CHECK(s2.Gamma == 36);
    CHECK(s2.dim == 116);

    auto s3 = build_gadget(2, 1);
    CHECK(s3.M == 2);
    CHECK(s3.Gamma == 10);
    CHECK(s3.dim == 30);

    // Regions tile the dimension in order.
    for (const auto& sp : {s, s2, s3}) {
        CHECK(sp.tensor_off == 0);
        CHECK(sp.linv_off == sp.tensor_len);
        CHECK(sp.linu_off == sp.linv_off + sp.linv_len);
        CHECK(sp.pad_off == sp.linu_off + sp.linu_len);
        CHECK(sp.dim == sp.pad_off + sp.pad_len);
    }

    CHECK_THROWS_AS(build_gadget(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_gadget(1, 0), std::invalid_argument);
}

TEST_CASE("inner product identity holds exhaustively on small shapes") {
    for (auto [T, q] : {std::pair<std::int64_t, std::int64_t>{1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 3}}) {
        auto rep = verify_gadget_exhaustive(build_gadget(T, q));
        INFO("T=" << T << " q=" << q);
        CHECK(rep.ok);
        // (q+1)^(2T) vector pairs times (M+1) targets.
        std::uint64_t expect = 1;
        for (std::int64_t i = 0; i < 2 * T; ++i) expect *= std::uint64_t(q + 1);
        expect *= std::uint64_t(T * q * q + 1);
        CHECK(rep.combos_checked == expect);
    }
}

TEST_CASE("the constant term is the same for every target") {
    // When <a,b> = sigma the inner product must equal Gamma, independently of
    // which sigma was encoded.
    auto s = build_gadget(2, 3);
    for (std::int64_t x = 0; x <= 3; ++x) {
        for (std::int64_t y = 0; y <= 3; ++y) {
            std::vector<std::int64_t> a{x, y}, b{y, x};
            std::int64_t sigma = 2 * x * y;
            REQUIRE(sigma <= s.M);
            CHECK(encoded_inner_product(s, a, b, sigma) == s.Gamma);
        }
    }
}

TEST_CASE("structured product equals the materialized product at larger shapes") {
    Rng rng(21);
    auto s = build_gadget(3, 3);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<std::int64_t> a(3), b(3);
        for (auto& x : a) x = std::int64_t(rng.below(4));
        for (auto& x : b) x = std::int64_t(rng.below(4));
        std::int64_t sigma = std::int64_t(rng.below(std::uint64_t(s.M + 1)));
        BitVec g = encode_g(s, a, sigma);
        BitVec h = encode_h(s, b, sigma);
        std::int64_t v = 0;
        for (int i = 0; i < 3; ++i) v += a[i] * b[i];
        std::int64_t expect = s.Gamma - (v - sigma) * (v - sigma);
        CHECK(std::int64_t(inner_product(g, h)) == expect);
        CHECK(encoded_inner_product(s, a, b, sigma) == expect);
    }
}

TEST_CASE("one-sided encodings depend only on their own vector") {
    auto s = build_gadget(2, 2);
    std::vector<std::int64_t> a{1, 2}, b1{0, 1}, b2{2, 2};
    // g(a, sigma) is the same bit string no matter what b it will be paired
    // with; pairing it against different h's yields the right values.
    BitVec g = encode_g(s, a, 3);
    std::int64_t v1 = a[0] * b1[0] + a[1] * b1[1];
    std::int64_t v2 = a[0] * b2[0] + a[1] * b2[1];
    CHECK(std::int64_t(inner_product(g, encode_h(s, b1, 3))) == s.Gamma - (v1 - 3) * (v1 - 3));
    CHECK(std::int64_t(inner_product(g, encode_h(s, b2, 3))) == s.Gamma - (v2 - 3) * (v2 - 3));
}

TEST_CASE("argument validation") {
    auto s = build_gadget(2, 2);
    CHECK_THROWS_AS(encode_g(s, {1}, 0), std::invalid_argument);            // wrong length
    CHECK_THROWS_AS(encode_g(s, {1, 3}, 0), std::invalid_argument);         // entry > q
    CHECK_THROWS_AS(encode_g(s, {1, -1}, 0), std::invalid_argument);        // negative entry
    CHECK_THROWS_AS(encode_h(s, {1, 1}, -1), std::invalid_argument);        // sigma < 0
    CHECK_THROWS_AS(encode_h(s, {1, 1}, s.M + 1), std::invalid_argument);   // sigma > M
    CHECK_THROWS_AS(encoded_inner_product(s, {1, 1}, {1}, 0), std::invalid_argument);
}

TEST_CASE("corrupted pad length: both evaluation paths stay in lockstep") {
    // Shrinking the pad below what the identity needs must break the
    // closed-form match, but the materialized and structured products still
    // agree because they share the clamp.
    auto s = build_gadget(1, 2);
    s.pad_len = 10; // honest value is 36
    s.dim = s.pad_off + s.pad_len;
    bool formula_broken = false;
    for (std::int64_t av = 0; av <= 2; ++av)
        for (std::int64_t bv = 0; bv <= 2; ++bv)
            for (std::int64_t sigma = 0; sigma <= s.M; ++sigma) {
                std::vector<std::int64_t> a{av}, b{bv};
                std::int64_t got = std::int64_t(inner_product(encode_g(s, a, sigma), encode_h(s, b, sigma)));
                CHECK(got == encoded_inner_product(s, a, b, sigma));
                if (got != s.Gamma - (av * bv - sigma) * (av * bv - sigma)) formula_broken = true;
            }
    CHECK(formula_broken);
}

TEST_CASE("materialization is refused beyond the cap, structured path still works") {
    auto s = build_gadget(2, 239);
    REQUIRE(s.dim > detail::kMaterializeCapBits);
    CHECK_THROWS_AS(encode_g(s, {1, 1}, 0), std::length_error);
    std::vector<std::int64_t> a{5, 7}, b{3, 11};
    std::int64_t v = 5 * 3 + 7 * 11;
    CHECK(encoded_inner_product(s, a, b, 100) == s.Gamma - (v - 100) * (v - 100));
}

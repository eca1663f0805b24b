#include <catch2/catch_amalgamated.hpp>

#include <fgred/params.hpp>

using namespace fgred;

TEST_CASE("matrix power base is the smallest self-power cover") {
    CHECK(matrix_power_base(2) == 2);
    CHECK(matrix_power_base(4) == 2);   // 2^2 = 4
    CHECK(matrix_power_base(5) == 3);   // 2^2 < 5 <= 27
    CHECK(matrix_power_base(27) == 3);
    CHECK(matrix_power_base(28) == 4);
    CHECK(matrix_power_base(256) == 4); // 4^4 = 256
    CHECK(matrix_power_base(257) == 5);
    CHECK(matrix_power_base(3125) == 5);
}

TEST_CASE("plan for d=8, T=4") {
    auto p = plan_protocol(8, 4);
    CHECK(p.original_d == 8);
    CHECK(p.d == 8);
    CHECK(p.T == 4);
    CHECK(p.t == 2);
    CHECK(p.msg_len == 2);
    REQUIRE(p.primes.size() == 20);
    REQUIRE(p.code_lens.size() == 20);
    for (auto n : p.code_lens) CHECK(n == 20);
    // Primes start at 5: they must satisfy p >= t and p*p >= n = 20.
    CHECK(p.primes.front() == 5);
    for (std::size_t i = 0; i < p.primes.size(); ++i) {
        CHECK(p.primes[i] >= p.t);
        CHECK(p.primes[i] * p.primes[i] >= std::int64_t(p.code_lens[i]));
        if (i) CHECK(p.primes[i] > p.primes[i - 1]);
    }
    CHECK(p.q == p.primes.back());
    CHECK(p.R_space_size == 20u * 4u * 20u);
    // Exact bit accounting: msg_len entries bounded by T, then per prime
    // 4 * n entries bounded by T * q^2.
    std::uint64_t expect = 2 * std::uint64_t(ProtocolParams::entry_width(4));
    for (auto n : p.code_lens) expect += 4ull * n * std::uint64_t(ProtocolParams::entry_width(4 * p.q * p.q));
    CHECK(p.L_bits == expect);
}

TEST_CASE("plan for d=4, T=4 uses the shortest code") {
    auto p = plan_protocol(4, 4);
    CHECK(p.msg_len == 1);
    for (auto n : p.code_lens) CHECK(n == 10);
    // p*p >= 10 forces p >= 5 even though t = 2 would allow smaller.
    CHECK(p.primes.front() == 5);
}

TEST_CASE("dimension pads up to a multiple of T") {
    auto p = plan_protocol(7, 4);
    CHECK(p.original_d == 7);
    CHECK(p.d == 8);
    CHECK(p.msg_len == 2);
    auto p2 = plan_protocol(1, 2);
    CHECK(p2.d == 2);
    CHECK(p2.msg_len == 1);
}

TEST_CASE("planner rejects degenerate shapes") {
    CHECK_THROWS_AS(plan_protocol(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(plan_protocol(8, 1), std::invalid_argument);
    CHECK_THROWS_AS(plan_protocol(8, 0), std::invalid_argument);
}

TEST_CASE("weight denominator is the randomness space size for uniform codes") {
    for (auto [d, T] : {std::pair<std::int64_t, std::int64_t>{4, 2}, {8, 4}, {16, 2}, {64, 4}}) {
        auto p = plan_protocol(d, T);
        auto W = common_weight_denominator(p);
        CHECK(W == p.R_space_size);
        // W times each point weight 1 / (4 * L * n) is a positive integer.
        for (auto len : p.code_lens) {
            std::uint64_t block = 4ull * p.code_lens.size() * len;
            CHECK(W % block == 0);
        }
    }
}

TEST_CASE("reduction plan resolves the row-length fixed point") {
    // c/eps = 1 and 2 settle at T = 2 (ceil(1 * 1) = 1 -> clamped to 2,
    // ceil(2 * 1) = 2).
    CHECK(plan_reduction(1.0, 1.0, 1 << 20).T_planned == 2);
    CHECK(plan_reduction(1.0, 2.0, 1 << 20).T_planned == 2);
    // c/eps = 4: T = ceil(4 * lg^2 T) climbs 2 -> 4 -> 16 -> 64 -> 144 ->
    // ... and settles; the settled value satisfies its own equation.
    auto p4 = plan_reduction(1.0, 4.0, 1 << 20);
    CHECK(p4.T_planned >= 4);
    {
        double lg = std::log2(double(p4.T_planned));
        CHECK(std::int64_t(std::ceil(4.0 * lg * lg)) == p4.T_planned);
    }
    auto p8 = plan_reduction(1.0, 8.0, 1 << 20);
    CHECK(p8.T_planned > p4.T_planned);

    CHECK_THROWS_AS(plan_reduction(0.0, 1.0, 1 << 20), std::invalid_argument);
    CHECK_THROWS_AS(plan_reduction(1.0, 0.0, 1 << 20), std::invalid_argument);
    CHECK_THROWS_AS(plan_reduction(1.0, 1.0, 3), std::invalid_argument);
}

TEST_CASE("reduction plan wires dimension, gadget, and tolerance together") {
    auto plan = plan_reduction(1.0, 1.0, 1 << 20);
    CHECK(plan.params.original_d == 20); // ceil(1 * lg 2^20)
    CHECK(plan.W == plan.params.R_space_size);
    CHECK(plan.gadget.T == plan.T_planned);
    CHECK(plan.gadget.q == plan.params.q);
    CHECK(plan.d_prime == (unsigned __int128)plan.W * plan.gadget.dim);
    // delta = W / (100 * d_prime) as a reduced fraction.
    unsigned __int128 lhs = plan.delta_num * 100 * plan.d_prime;
    unsigned __int128 rhs = plan.delta_den * plan.params.R_space_size;
    CHECK(lhs == rhs);
    {
        unsigned __int128 a = plan.delta_num, b = plan.delta_den;
        while (b) { auto t = a % b; a = b; b = t; }
        CHECK(a == 1);
    }
    CHECK(plan.lg2_N_required == 2.0 * double(plan.params.L_bits));
    CHECK(plan.delta_string().find('/') != std::string::npos);
}

TEST_CASE("string form of 128-bit values") {
    CHECK(to_string_u128(0) == "0");
    CHECK(to_string_u128(1) == "1");
    CHECK(to_string_u128(UINT64_MAX) == "18446744073709551615");
    unsigned __int128 big = (unsigned __int128)UINT64_MAX * UINT64_MAX;
    CHECK(to_string_u128(big) == "340282366920938463426481119284349108225");
}

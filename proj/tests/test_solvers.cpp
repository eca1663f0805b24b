#include <catch2/catch_amalgamated.hpp>

#include <fgred/instances.hpp>
#include <fgred/solvers.hpp>

using namespace fgred;

namespace {

BitVec bits(const std::string& s) { return BitVec::from_string(s); }

} // namespace

TEST_CASE("witness search answers the decision question") {
    std::vector<BitVec> A{bits("1100"), bits("1111"), bits("0001")};
    std::vector<BitVec> B{bits("0011"), bits("1000")};
    auto w = solve_ip(A, B, 2);
    REQUIRE(w.found);
    CHECK(w.a_index == 1); // <1111, 0011> = 2 is the first hit in scan order
    CHECK(w.b_index == 0);
    CHECK(inner_product(A[w.a_index], B[w.b_index]) == 2);

    auto none = solve_ip(A, B, 4);
    CHECK_FALSE(none.found);
    CHECK(none.comparisons == 6);
}

TEST_CASE("max and min agree with an independent rescan") {
    Rng rng(42);
    std::vector<BitVec> A, B;
    for (int i = 0; i < 7; ++i) A.push_back(random_bits(rng, 12));
    for (int i = 0; i < 5; ++i) B.push_back(random_bits(rng, 12));

    auto mx = solve_maxip(A, B);
    auto mn = solve_minip(A, B);
    std::uint64_t best_hi = 0, best_lo = UINT64_MAX;
    for (const auto& a : A)
        for (const auto& b : B) {
            best_hi = std::max(best_hi, inner_product(a, b));
            best_lo = std::min(best_lo, inner_product(a, b));
        }
    CHECK(std::uint64_t(mx.exact) == best_hi);
    CHECK(std::uint64_t(mn.exact) == best_lo);
    CHECK(mx.comparisons == 35);
    CHECK(inner_product(A[mx.a_index], B[mx.b_index]) == best_hi);
    CHECK(inner_product(A[mn.a_index], B[mn.b_index]) == best_lo);
}

TEST_CASE("ties go to the lowest indices in scan order") {
    std::vector<BitVec> A{bits("1010"), bits("1010")};
    std::vector<BitVec> B{bits("1010"), bits("1010")};
    auto mx = solve_maxip(A, B);
    CHECK(mx.a_index == 0);
    CHECK(mx.b_index == 0);
    auto cp = solve_cp_hamming(A, B);
    CHECK(cp.a_index == 0);
    CHECK(cp.b_index == 0);
}

TEST_CASE("edit distance on known cases") {
    CHECK(edit_distance("", "") == 0);
    CHECK(edit_distance("", "0110") == 4);
    CHECK(edit_distance("0110", "") == 4);
    CHECK(edit_distance("0110", "0110") == 0);
    CHECK(edit_distance("0011", "0101") == 2);
    CHECK(edit_distance("0011", "1010") == 2);
    CHECK(edit_distance("0", "1") == 1);
    CHECK(edit_distance("01", "10") == 2);
    CHECK(edit_distance("000", "111") == 3);
    CHECK(edit_distance("10101", "0101") == 1);  // one deletion
    CHECK(edit_distance("110", "011") == 2);     // shift is cheaper than 3 substitutions
}

TEST_CASE("edit distance invariants on random strings") {
    Rng rng(77);
    auto rand_str = [&](std::size_t len) {
        std::string s(len, '0');
        for (auto& c : s) c = rng.coin() ? '1' : '0';
        return s;
    };
    for (int trial = 0; trial < 50; ++trial) {
        auto x = rand_str(rng.below(10));
        auto y = rand_str(rng.below(10));
        auto z = rand_str(rng.below(10));
        std::int64_t dxy = edit_distance(x, y);
        CHECK(dxy == edit_distance(y, x));
        CHECK(edit_distance(x, x) == 0);
        std::int64_t len_gap = std::int64_t(x.size()) - std::int64_t(y.size());
        CHECK(dxy >= (len_gap < 0 ? -len_gap : len_gap));
        CHECK(dxy <= std::int64_t(std::max(x.size(), y.size())));
        CHECK(dxy <= edit_distance(x, z) + edit_distance(z, y));
    }
}

TEST_CASE("closest pair under Hamming and l_p") {
    std::vector<BitVec> A{bits("110011"), bits("000000")};
    std::vector<BitVec> B{bits("110111"), bits("111111")};
    auto cp = solve_cp_hamming(A, B);
    CHECK(cp.exact == 1);
    CHECK(cp.a_index == 0);
    CHECK(cp.b_index == 0);

    auto l2 = solve_cp_lp(A, B, 2.0);
    CHECK(l2.exact == 1);
    CHECK(l2.value == 1.0);
    auto l3 = solve_cp_lp(A, B, 3.0);
    CHECK(l3.exact == 1);

    std::vector<BitVec> A2{bits("1100"), bits("0011")};
    std::vector<BitVec> B2{bits("1111"), bits("0000")};
    auto l2b = solve_cp_lp(A2, B2, 2.0);
    CHECK(l2b.exact == 2);
    CHECK(l2b.value == Catch::Approx(std::sqrt(2.0)));

    CHECK_THROWS_AS(solve_cp_lp(A, B, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_cp_hamming({}, B), std::invalid_argument);
}

TEST_CASE("closest pair under edit distance") {
    std::vector<std::string> A{"0011", "1111"};
    std::vector<std::string> B{"0101", "0000"};
    auto r = solve_cp_edit(A, B);
    CHECK(r.exact == 2); // ED("0011","0101") = 2 and ED("1111","0101") = 2; first wins
    CHECK(r.a_index == 0);
    CHECK(r.b_index == 0);
}

TEST_CASE("perturbed oracle underreports by exactly the allowed slack") {
    CHECK(perturbed_maxip_oracle(100, 0.0, 1000) == 100);
    CHECK(perturbed_maxip_oracle(100, 0.01, 1000) == 90);
    CHECK(perturbed_maxip_oracle(100, 0.0099, 1000) == 91); // floor(9.9) = 9
    CHECK(perturbed_maxip_oracle(5, 1.0, 1000) == 0);       // clamped at zero
}

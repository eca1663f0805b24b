#include <catch2/catch_amalgamated.hpp>

#include <fgred/gf.hpp>

#include <set>

using namespace fgred;

TEST_CASE("prime enumeration with lower bound and square floor") {
    auto ps = primes_from(2, 5);
    CHECK(ps == std::vector<std::int64_t>{2, 3, 5, 7, 11});

    // min_square filter: first prime with p*p >= 20 is 5.
    auto qs = primes_from(2, 4, 20);
    CHECK(qs == std::vector<std::int64_t>{5, 7, 11, 13});

    // Lower bound dominates when it is already large enough.
    auto rs = primes_from(7, 3, 20);
    CHECK(rs == std::vector<std::int64_t>{7, 11, 13});
}

TEST_CASE("prime field inverses, exhaustively for small p") {
    for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
        PrimeField f(p);
        for (std::int64_t x = 1; x < p; ++x) {
            auto inv = f.inv(x);
            CHECK(f.mul(x, inv) == 1);
        }
        // Fermat: x^p == x for all residues.
        for (std::int64_t x = 0; x < p; ++x) CHECK(f.pow(x, p) == x);
    }
}

namespace {

// Membership oracle independent of find_irreducible_quadratic: a monic
// quadratic over GF(p) is irreducible iff it has no root in GF(p).
bool has_root(std::int64_t p, std::int64_t q1, std::int64_t q0) {
    PrimeField f(p);
    for (std::int64_t x = 0; x < p; ++x) {
        if (f.add(f.add(f.mul(x, x), f.mul(q1, x)), q0) == 0) return true;
    }
    return false;
}

} // namespace

TEST_CASE("chosen quadratic modulus is irreducible and lexicographically first") {
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 79, 101}) {
        auto [q1, q0] = find_irreducible_quadratic(p);
        CHECK_FALSE(has_root(p, q1, q0));
        // Nothing smaller in (q1, q0) order is irreducible.
        for (std::int64_t a = 0; a <= q1; ++a) {
            std::int64_t b_end = (a == q1) ? q0 : p;
            for (std::int64_t b = 0; b < b_end; ++b) {
                CHECK(has_root(p, a, b));
            }
        }
    }
    // Frozen small cases: X^2+X+1 over GF(2), X^2+1 over GF(3).
    CHECK(find_irreducible_quadratic(2) == std::pair<std::int64_t, std::int64_t>{1, 1});
    CHECK(find_irreducible_quadratic(3) == std::pair<std::int64_t, std::int64_t>{0, 1});
}

TEST_CASE("quadratic extension field axioms, exhaustively for GF(4) and GF(9)") {
    for (std::int64_t p : {2, 3}) {
        QuadExtField F(p);
        const std::int64_t n = F.order();
        CHECK(n == p * p);

        // element(i) enumerates all field elements exactly once.
        std::set<std::pair<std::int64_t, std::int64_t>> seen;
        for (std::int64_t i = 0; i < n; ++i) {
            auto e = F.element(i);
            seen.insert({e.c0, e.c1});
        }
        CHECK(std::int64_t(seen.size()) == n);

        for (std::int64_t i = 0; i < n; ++i) {
            auto x = F.element(i);
            CHECK(F.add(x, F.neg(x)) == F.zero());
            CHECK(F.mul(x, F.one()) == x);
            if (!(x == F.zero())) {
                CHECK(F.mul(x, F.inv(x)) == F.one());
            }
            for (std::int64_t j = 0; j < n; ++j) {
                auto y = F.element(j);
                CHECK(F.mul(x, y) == F.mul(y, x));
                // Distributivity on the full multiplication table.
                for (std::int64_t k = 0; k < n; k += 3) {
                    auto z = F.element(k);
                    CHECK(F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z)));
                }
            }
        }
    }
}

TEST_CASE("Frobenius fixes exactly the field: x^(p^2) = x") {
    for (std::int64_t p : {2, 3, 5, 7}) {
        QuadExtField F(p);
        for (std::int64_t i = 0; i < F.order(); ++i) {
            auto x = F.element(i);
            CHECK(F.pow(x, F.order()) == x);
        }
        // And the base field is fixed already by x^p.
        for (std::int64_t c = 0; c < p; ++c) {
            auto x = F.from_base(c);
            CHECK(F.pow(x, p) == x);
        }
    }
}

TEST_CASE("inverses in a larger extension field") {
    QuadExtField F(79);
    for (std::int64_t i = 1; i < 500; ++i) {
        auto x = F.element(i * 7 % F.order());
        if (x == F.zero()) continue;
        CHECK(F.mul(x, F.inv(x)) == F.one());
    }
}

TEST_CASE("multiplicative order divides p^2 - 1") {
    QuadExtField F(5);
    for (std::int64_t i = 1; i < F.order(); ++i) {
        auto x = F.element(i);
        CHECK(F.pow(x, F.order() - 1) == F.one());
    }
}

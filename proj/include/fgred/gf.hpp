#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgred {

inline bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t f = 2; f * f <= p; ++f)
        if (p % f == 0) return false;
    return true;
}

// First `count` primes p with p >= lo and p*p >= min_square.
inline std::vector<std::int64_t> primes_from(std::int64_t lo, std::size_t count,
                                             std::int64_t min_square = 0) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = lo < 2 ? 2 : lo; out.size() < count; ++p)
        if (is_prime(p) && p * p >= min_square) out.push_back(p);
    return out;
}

// Residue arithmetic mod a prime p. Elements are canonical representatives
// in [0, p); inputs are reduced on entry.
class PrimeField {
public:
    explicit PrimeField(std::int64_t p) : p_(p) {
        if (!is_prime(p)) throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
    }

    std::int64_t order() const { return p_; }
    std::int64_t reduce(std::int64_t x) const { std::int64_t r = x % p_; return r < 0 ? r + p_ : r; }
    std::int64_t add(std::int64_t a, std::int64_t b) const { return reduce(a + b); }
    std::int64_t sub(std::int64_t a, std::int64_t b) const { return reduce(a - b); }
    std::int64_t neg(std::int64_t a) const { return reduce(-a); }
    std::int64_t mul(std::int64_t a, std::int64_t b) const { return reduce(reduce(a) * reduce(b)); }

    std::int64_t inv(std::int64_t a) const {
        a = reduce(a);
        if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
        // Extended Euclid on (a, p).
        std::int64_t r0 = a, r1 = p_, s0 = 1, s1 = 0;
        while (r1 != 0) {
            std::int64_t q = r0 / r1;
            std::int64_t r2 = r0 - q * r1; r0 = r1; r1 = r2;
            std::int64_t s2 = s0 - q * s1; s0 = s1; s1 = s2;
        }
        return reduce(s0);
    }

    std::int64_t pow(std::int64_t a, std::uint64_t e) const {
        std::int64_t base = reduce(a), acc = 1;
        while (e) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

private:
    std::int64_t p_;
};

// Element of GF(p^2) written c0 + c1*X.
struct Ext2 {
    std::int64_t c0 = 0, c1 = 0;
    bool operator==(const Ext2&) const = default;
};

// Deterministic modulus choice: the monic irreducible X^2 + q1*X + q0 with the
// smallest (q1, q0) pair in lexicographic order. For p=2 this is X^2+X+1,
// for p=3 it is X^2+1.
inline std::pair<std::int64_t, std::int64_t> find_irreducible_quadratic(std::int64_t p) {
    PrimeField f(p);
    for (std::int64_t q1 = 0; q1 < p; ++q1)
        for (std::int64_t q0 = 0; q0 < p; ++q0) {
            bool has_root = false;
            for (std::int64_t x = 0; x < p && !has_root; ++x)
                if (f.add(f.mul(x, x), f.add(f.mul(q1, x), q0)) == 0) has_root = true;
            if (!has_root) return {q1, q0};
        }
    throw std::logic_error("find_irreducible_quadratic: no candidate found"); // unreachable for prime p
}

// GF(p^2) = GF(p)[X] / (X^2 + q1*X + q0). All operations are exact on
// machine words; p stays far below 2^31 in every supported plan.
class QuadExtField {
public:
    explicit QuadExtField(std::int64_t p) : base_(p) {
        auto [q1, q0] = find_irreducible_quadratic(p);
        q1_ = q1;
        q0_ = q0;
    }

    const PrimeField& base() const { return base_; }
    std::int64_t p() const { return base_.order(); }
    std::int64_t order() const { return p() * p(); }
    std::int64_t mod_q1() const { return q1_; }
    std::int64_t mod_q0() const { return q0_; }

    Ext2 zero() const { return {0, 0}; }
    Ext2 one() const { return {1, 0}; }
    Ext2 from_base(std::int64_t c0) const { return {base_.reduce(c0), 0}; }
    Ext2 make(std::int64_t c0, std::int64_t c1) const { return {base_.reduce(c0), base_.reduce(c1)}; }

    // Element with index i under the (c1, c0) lexicographic enumeration of
    // all p^2 field elements; used as the canonical evaluation-point order.
    Ext2 element(std::int64_t i) const { return {i % p(), i / p()}; }

    Ext2 add(Ext2 a, Ext2 b) const { return {base_.add(a.c0, b.c0), base_.add(a.c1, b.c1)}; }
    Ext2 sub(Ext2 a, Ext2 b) const { return {base_.sub(a.c0, b.c0), base_.sub(a.c1, b.c1)}; }
    Ext2 neg(Ext2 a) const { return {base_.neg(a.c0), base_.neg(a.c1)}; }

    Ext2 mul(Ext2 a, Ext2 b) const {
        // (a0 + a1 X)(b0 + b1 X), then X^2 -> -q1 X - q0.
        std::int64_t t0 = base_.mul(a.c0, b.c0);
        std::int64_t t1 = base_.add(base_.mul(a.c0, b.c1), base_.mul(a.c1, b.c0));
        std::int64_t t2 = base_.mul(a.c1, b.c1);
        return {base_.sub(t0, base_.mul(t2, q0_)), base_.sub(t1, base_.mul(t2, q1_))};
    }

    Ext2 inv(Ext2 a) const {
        if (a.c0 == 0 && a.c1 == 0) throw std::domain_error("QuadExtField: inverse of zero");
        // Multiply by the conjugate (image under X -> -q1 - X); the product
        // is the norm c0^2 - c0*c1*q1 + c1^2*q0, a nonzero base-field scalar.
        Ext2 conj = {base_.sub(a.c0, base_.mul(a.c1, q1_)), base_.neg(a.c1)};
        std::int64_t norm = base_.add(base_.sub(base_.mul(a.c0, a.c0), base_.mul(base_.mul(a.c0, a.c1), q1_)),
                                      base_.mul(base_.mul(a.c1, a.c1), q0_));
        std::int64_t ninv = base_.inv(norm);
        return {base_.mul(conj.c0, ninv), base_.mul(conj.c1, ninv)};
    }

    Ext2 pow(Ext2 a, std::uint64_t e) const {
        Ext2 acc = one(), base = a;
        while (e) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

private:
    PrimeField base_;
    std::int64_t q1_, q0_;
};

} // namespace fgred

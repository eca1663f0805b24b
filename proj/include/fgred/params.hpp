#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "gadget.hpp"
#include "gf.hpp"

namespace fgred {

inline std::string to_string_u128(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    return {s.rbegin(), s.rend()};
}

// Everything the verifier-side machinery needs to know about one protocol
// instantiation: the matrix shape, the prime family, and the code lengths.
//
// Width conventions for serialized messages live here so that the planner's
// message-length accounting and the actual serializer cannot drift apart.
struct ProtocolParams {
    std::int64_t original_d = 0;  // caller's dimension before padding
    std::int64_t d = 0;           // padded to a multiple of T
    std::int64_t T = 0;           // row length of the matrix view
    std::int64_t t = 0;           // smallest t >= 2 with t^t >= T
    std::size_t msg_len = 0;      // d / T
    std::vector<std::int64_t> primes;    // strictly increasing
    std::vector<std::size_t> code_lens;  // n_ell, parallel to primes
    std::int64_t q = 0;                  // max prime
    std::uint64_t R_space_size = 0;      // sum over ell of 4 * n_ell
    std::uint64_t L_bits = 0;            // exact serialized message length

    std::int64_t m0_entry_bound() const { return T; }
    std::int64_t part_entry_bound() const { return T * q * q; }
    static int entry_width(std::int64_t bound) { return int(std::bit_width(std::uint64_t(bound))); }
};

// Smallest t >= 2 with t^t >= T.
inline std::int64_t matrix_power_base(std::int64_t T) {
    for (std::int64_t t = 2;; ++t) {
        unsigned __int128 pw = 1;
        bool big = false;
        for (std::int64_t i = 0; i < t && !big; ++i) {
            pw *= (unsigned __int128)t;
            if (pw >= (unsigned __int128)T) big = true;
        }
        if (big || pw >= (unsigned __int128)T) return t;
    }
}

// Derives the full parameter set for dimension d and row length T.
//
// d is zero-padded up to a multiple of T (inner products are unchanged).
// Code length is uniform, n = 10 * msg_len, giving rate exactly 0.1 and
// product-code relative distance (8k+2)/(10k) >= 0.8. The prime family is
// the first 10*t primes p with p >= t that can host the code over GF(p^2),
// i.e. p^2 >= n; smaller primes are skipped because n evaluation points
// need n distinct field elements. The soundness counting only needs each
// prime to be >= t, so skipping forward is harmless.
inline ProtocolParams plan_protocol(std::int64_t d, std::int64_t T) {
    if (d < 1) throw std::invalid_argument("plan_protocol: d must be >= 1");
    if (T < 2) throw std::invalid_argument("plan_protocol: T must be >= 2");
    ProtocolParams p;
    p.original_d = d;
    p.T = T;
    p.d = (d + T - 1) / T * T;
    p.t = matrix_power_base(T);
    p.msg_len = std::size_t(p.d / T);

    std::size_t n = 10 * p.msg_len;
    p.primes = primes_from(p.t, std::size_t(10 * p.t), std::int64_t(n));
    p.code_lens.assign(p.primes.size(), n);
    p.q = p.primes.back();

    p.R_space_size = 0;
    for (auto len : p.code_lens) p.R_space_size += 4 * std::uint64_t(len);

    if ((unsigned __int128)p.part_entry_bound() > (unsigned __int128)INT64_MAX)
        throw std::overflow_error("plan_protocol: entry bound exceeds 64-bit range");
    unsigned __int128 bits = (unsigned __int128)p.msg_len * ProtocolParams::entry_width(p.m0_entry_bound());
    for (auto len : p.code_lens)
        bits += (unsigned __int128)4 * len * ProtocolParams::entry_width(p.part_entry_bound());
    if (bits > UINT64_MAX) throw std::overflow_error("plan_protocol: message length exceeds 64-bit range");
    p.L_bits = std::uint64_t(bits);
    return p;
}

// Plan for the full decision pipeline at a given approximation budget.
//
// T resolves the fixed point T = ceil((c / epsilon) * (log2 T)^2), the
// shape the communication bound forces once d = c * log2(N) and the
// message carries (d / T) * polylog(T) bits. The iteration is monotone
// from T = 2, so it either reaches a fixed point or overflows the cap.
//
// The subquadratic win only materializes once N is large enough that
// L_bits <= (epsilon / 2) * log2 N; that threshold is astronomically far
// from anything this workbench can enumerate, so the plan reports it as
// lg2_N_required instead of failing.
struct ParameterPlan {
    double epsilon = 0;
    double c = 0;
    std::uint64_t N = 0;
    std::int64_t T_planned = 0;
    ProtocolParams params;
    GadgetSpec gadget;
    std::uint64_t W = 0;                  // common weight denominator (block count)
    unsigned __int128 d_prime = 0;        // W * gadget.dim
    unsigned __int128 delta_num = 0;      // delta = 0.01 * R_space_size / d_prime,
    unsigned __int128 delta_den = 1;      // stored as an exact reduced fraction
    double lg2_N_required = 0;

    std::string delta_string() const { return to_string_u128(delta_num) + "/" + to_string_u128(delta_den); }
    double delta_double() const { return double(delta_num) / double(delta_den); }
};

// Least W such that W * (1 / (4 * L * n_ell)) is an integer for every ell;
// with uniform code lengths this is exactly R_space_size.
inline std::uint64_t common_weight_denominator(const ProtocolParams& p) {
    unsigned __int128 w = 1;
    for (auto len : p.code_lens) {
        unsigned __int128 block = (unsigned __int128)4 * p.code_lens.size() * len;
        unsigned __int128 a = w, b = block;
        while (b) { auto t = a % b; a = b; b = t; }
        w = w / a * block;
        if (w > UINT64_MAX) throw std::overflow_error("common_weight_denominator: overflow");
    }
    return std::uint64_t(w);
}

inline ParameterPlan plan_reduction(double epsilon, double c, std::uint64_t N) {
    if (!(epsilon > 0)) throw std::invalid_argument("plan_reduction: epsilon must be positive");
    if (!(c > 0)) throw std::invalid_argument("plan_reduction: c must be positive");
    if (N < 4) throw std::invalid_argument("plan_reduction: N must be >= 4");

    ParameterPlan plan;
    plan.epsilon = epsilon;
    plan.c = c;
    plan.N = N;

    const double lgN = std::log2(double(N));
    std::int64_t d = std::int64_t(std::ceil(c * lgN));
    if (d < 1) d = 1;

    std::int64_t T = 2;
    bool settled = false;
    for (int round = 0; round < 1000; ++round) {
        double lg = std::log2(double(T));
        double next = std::ceil((c / epsilon) * lg * lg);
        std::int64_t Tn = next < 2 ? 2 : std::int64_t(next);
        if (Tn > (std::int64_t(1) << 40))
            throw std::runtime_error("plan_reduction: T iteration exceeded 2^40 (epsilon too small for c)");
        if (Tn == T) { settled = true; break; }
        T = Tn;
    }
    if (!settled) throw std::runtime_error("plan_reduction: T iteration did not settle within 1000 rounds");

    plan.T_planned = T;
    plan.params = plan_protocol(d, T);
    plan.gadget = build_gadget(T, plan.params.q);
    plan.W = common_weight_denominator(plan.params);
    plan.d_prime = (unsigned __int128)plan.W * plan.gadget.dim;

    // delta = 0.01 * R_space_size / d_prime = R_space_size / (100 * d_prime)
    unsigned __int128 num = plan.params.R_space_size;
    unsigned __int128 den = 100 * plan.d_prime;
    unsigned __int128 a = num, b = den;
    while (b) { auto t2 = a % b; a = b; b = t2; }
    plan.delta_num = num / a;
    plan.delta_den = den / a;

    plan.lg2_N_required = 2.0 * double(plan.params.L_bits) / epsilon;
    return plan;
}

} // namespace fgred

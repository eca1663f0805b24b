#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bitvec.hpp"

namespace fgred {

// Exhaustive reference solvers. Every result is re-verified against a fresh
// distance/product evaluation at the reported witness before returning, and
// ties go to the lowest (a-index, b-index) in scan order.

struct SolveResult {
    std::int64_t exact = 0;    // integer optimum (Hamming / edit / inner product)
    double value = 0;          // display value; differs from `exact` only for l_p
    std::size_t a_index = 0, b_index = 0;
    std::uint64_t comparisons = 0;
};

struct IPWitness {
    bool found = false;
    std::size_t a_index = 0, b_index = 0;
    std::uint64_t comparisons = 0;
};

// Does any pair satisfy <a, b> = sigma?  First witness in scan order.
inline IPWitness solve_ip(const std::vector<BitVec>& A, const std::vector<BitVec>& B, std::int64_t sigma) {
    IPWitness w;
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j) {
            ++w.comparisons;
            if (std::int64_t(inner_product(A[i], B[j])) == sigma) {
                w.found = true;
                w.a_index = i;
                w.b_index = j;
                if (std::int64_t(inner_product(A[w.a_index], B[w.b_index])) != sigma)
                    throw std::logic_error("solve_ip: witness failed re-verification");
                return w;
            }
        }
    return w;
}

namespace detail {

template <typename Value, typename Eval, typename Better>
SolveResult scan_pairs(std::size_t na, std::size_t nb, Eval eval, Better better) {
    if (na == 0 || nb == 0) throw std::invalid_argument("solver: empty instance");
    SolveResult r;
    bool first = true;
    Value best{};
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            ++r.comparisons;
            Value v = eval(i, j);
            if (first || better(v, best)) {
                first = false;
                best = v;
                r.a_index = i;
                r.b_index = j;
            }
        }
    if (eval(r.a_index, r.b_index) != best) throw std::logic_error("solver: witness failed re-verification");
    r.exact = std::int64_t(best);
    r.value = double(best);
    return r;
}

} // namespace detail

inline SolveResult solve_maxip(const std::vector<BitVec>& A, const std::vector<BitVec>& B) {
    return detail::scan_pairs<std::uint64_t>(
        A.size(), B.size(), [&](std::size_t i, std::size_t j) { return inner_product(A[i], B[j]); },
        [](std::uint64_t v, std::uint64_t best) { return v > best; });
}

inline SolveResult solve_minip(const std::vector<BitVec>& A, const std::vector<BitVec>& B) {
    return detail::scan_pairs<std::uint64_t>(
        A.size(), B.size(), [&](std::size_t i, std::size_t j) { return inner_product(A[i], B[j]); },
        [](std::uint64_t v, std::uint64_t best) { return v < best; });
}

// Classic two-row dynamic program; exact unit-cost edit distance.
inline std::int64_t edit_distance(const std::string& x, const std::string& y) {
    const std::size_t m = y.size();
    std::vector<std::int64_t> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = std::int64_t(j);
    for (std::size_t i = 1; i <= x.size(); ++i) {
        cur[0] = std::int64_t(i);
        for (std::size_t j = 1; j <= m; ++j) {
            std::int64_t sub = prev[j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1);
            std::int64_t del = prev[j] + 1;
            std::int64_t ins = cur[j - 1] + 1;
            cur[j] = std::min(sub, std::min(del, ins));
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

inline SolveResult solve_cp_hamming(const std::vector<BitVec>& A, const std::vector<BitVec>& B) {
    return detail::scan_pairs<std::uint64_t>(
        A.size(), B.size(), [&](std::size_t i, std::size_t j) { return hamming_distance(A[i], B[j]); },
        [](std::uint64_t v, std::uint64_t best) { return v < best; });
}

// l_p on binary vectors: distance = (Hamming)^(1/p), so minimizing the
// Hamming count stays exact; only the reported value takes the root.
inline SolveResult solve_cp_lp(const std::vector<BitVec>& A, const std::vector<BitVec>& B, double p) {
    if (!(p > 0)) throw std::invalid_argument("solve_cp_lp: p must be positive");
    SolveResult r = solve_cp_hamming(A, B);
    r.value = std::pow(double(r.exact), 1.0 / p);
    return r;
}

inline SolveResult solve_cp_edit(const std::vector<std::string>& A, const std::vector<std::string>& B) {
    return detail::scan_pairs<std::int64_t>(
        A.size(), B.size(), [&](std::size_t i, std::size_t j) { return edit_distance(A[i], B[j]); },
        [](std::int64_t v, std::int64_t best) { return v < best; });
}

// Exact Max-IP value only (no witness), for use as a decision oracle.
inline std::int64_t apx_maxip_oracle(const std::vector<BitVec>& A, const std::vector<BitVec>& B) {
    return solve_maxip(A, B).exact;
}

// Adversarially perturbed oracle: still within the additive contract
// |answer - M| <= delta * d, but always as low as the contract allows.
// Negative control for threshold logic around the decision reduction.
inline std::int64_t perturbed_maxip_oracle(std::int64_t exact_max, double delta, std::uint64_t d) {
    std::int64_t slack = std::int64_t(std::floor(delta * double(d)));
    return std::max<std::int64_t>(exact_max - slack, 0);
}

} // namespace fgred

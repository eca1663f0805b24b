#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bitvec.hpp"

namespace fgred {

// Binary encoding pair g, h: {0..q}^T x {0..T*q^2} -> {0,1}^dim with
//
//     <g(a, sigma), h(b, sigma)> = Gamma - (<a,b> - sigma)^2
//
// for every a, b, sigma, where Gamma depends only on (T, q). g reads only
// (a, sigma) and h reads only (b, sigma).
//
// Everything is assembled from one atom: a Q x Q product grid. For side
// values x, y in [0, Q], the g-side writes bit (r, c) = [r < x] and the
// h-side writes [c < y]; the bits overlap in exactly x*y positions.
//
// With v := <a,b>, u := M - v (realized as <(a, q-a), (q-b, q..q)>), and
// sigma-dependent coefficients c_v := max(2*sigma - M, 0) and
// c_u := max(M - 2*sigma, 0), the regions below add up to
//   v*u + c_v*v + c_u*u + pad = Gamma - (v - sigma)^2,
// with Gamma = 2*M^2 + M and M = T*q^2.
//
// Layout (bit offsets, fixed at build time):
//   [tensor]    2*T^2 grids of q^2 x q^2, cells (i,j) in [T] x [2T]; side
//               values a_i * alpha_j and b_i * beta_j realize v*u.
//   [linear-v]  M copy slots, each T grids of q x q; the first c_v slots
//               repeat the plain (a_i, b_i) grids, the rest stay zero.
//   [linear-u]  M copy slots, each 2T grids of q x q, first c_u active.
//   [pad]       2*M^2 + M shared positions; both sides set the same prefix
//               of Gamma - sigma^2 - c_u*M ones.
struct GadgetSpec {
    std::int64_t T = 0;
    std::int64_t q = 0;
    std::int64_t M = 0;      // T * q^2, the largest admissible target
    std::int64_t Gamma = 0;  // 2*M^2 + M
    std::uint64_t tensor_off = 0, tensor_len = 0;
    std::uint64_t linv_off = 0, linv_len = 0;
    std::uint64_t linu_off = 0, linu_len = 0;
    std::uint64_t pad_off = 0, pad_len = 0;
    std::uint64_t dim = 0;
};

inline GadgetSpec build_gadget(std::int64_t T, std::int64_t q) {
    if (T < 1 || q < 1) throw std::invalid_argument("build_gadget: need T >= 1 and q >= 1");
    unsigned __int128 q2 = (unsigned __int128)q * q;
    unsigned __int128 M = (unsigned __int128)T * q2;
    unsigned __int128 tensor = 2 * (unsigned __int128)T * T * q2 * q2;
    unsigned __int128 linv = M * (unsigned __int128)T * q2;
    unsigned __int128 linu = M * 2 * (unsigned __int128)T * q2;
    unsigned __int128 pad = 2 * M * M + M;
    unsigned __int128 dim = tensor + linv + linu + pad;
    if (dim > UINT64_MAX || 2 * M * M + M > INT64_MAX)
        throw std::overflow_error("build_gadget: dimension exceeds 64-bit range");
    GadgetSpec s;
    s.T = T;
    s.q = q;
    s.M = std::int64_t(M);
    s.Gamma = std::int64_t(2 * M * M + M);
    s.tensor_off = 0;
    s.tensor_len = std::uint64_t(tensor);
    s.linv_off = s.tensor_len;
    s.linv_len = std::uint64_t(linv);
    s.linu_off = s.linv_off + s.linv_len;
    s.linu_len = std::uint64_t(linu);
    s.pad_off = s.linu_off + s.linu_len;
    s.pad_len = std::uint64_t(pad);
    s.dim = s.pad_off + s.pad_len;
    return s;
}

namespace detail {

constexpr std::uint64_t kMaterializeCapBits = std::uint64_t{1} << 30;

inline void check_gadget_args(const GadgetSpec& s, const std::vector<std::int64_t>& vals, std::int64_t sigma) {
    if (std::int64_t(vals.size()) != s.T) throw std::invalid_argument("gadget: vector length must equal T");
    for (auto v : vals)
        if (v < 0 || v > s.q) throw std::invalid_argument("gadget: entries must lie in [0, q]");
    if (sigma < 0 || sigma > s.M) throw std::invalid_argument("gadget: sigma must lie in [0, M]");
}

// Sigma-dependent pieces shared by both encoders.
struct SigmaCoeffs {
    std::int64_t c_v, c_u, pad_ones;
};

inline SigmaCoeffs sigma_coeffs(const GadgetSpec& s, std::int64_t sigma) {
    SigmaCoeffs c;
    c.c_v = std::max<std::int64_t>(2 * sigma - s.M, 0);
    c.c_u = std::max<std::int64_t>(s.M - 2 * sigma, 0);
    std::int64_t p = s.Gamma - (sigma * sigma + c.c_u * s.M);
    c.pad_ones = std::min<std::int64_t>(p, std::int64_t(s.pad_len));
    return c;
}

// side = 0 writes row patterns [r < x]; side = 1 writes column patterns.
inline void write_grid(BitVec& out, std::uint64_t off, std::int64_t Q, std::int64_t x, int side) {
    if (side == 0) {
        for (std::int64_t r = 0; r < x; ++r)
            for (std::int64_t c = 0; c < Q; ++c) out.set(off + std::uint64_t(r * Q + c), true);
    } else {
        for (std::int64_t r = 0; r < Q; ++r)
            for (std::int64_t c = 0; c < x; ++c) out.set(off + std::uint64_t(r * Q + c), true);
    }
}

inline BitVec encode_side(const GadgetSpec& s, const std::vector<std::int64_t>& vals, std::int64_t sigma, int side) {
    check_gadget_args(s, vals, sigma);
    if (s.dim > kMaterializeCapBits)
        throw std::length_error("gadget: dimension " + std::to_string(s.dim) +
                                " exceeds the materialization cap; use the structured inner product");
    const std::int64_t T = s.T, q = s.q, q2 = q * q;
    // Side values entering the u-term: alpha = (a, q-a) on the g side,
    // beta = (q-b, q) on the h side.
    std::vector<std::int64_t> uv(std::size_t(2 * T));
    for (std::int64_t i = 0; i < T; ++i) {
        uv[std::size_t(i)] = side == 0 ? vals[std::size_t(i)] : q - vals[std::size_t(i)];
        uv[std::size_t(T + i)] = side == 0 ? q - vals[std::size_t(i)] : q;
    }
    SigmaCoeffs sc = sigma_coeffs(s, sigma);

    BitVec out(s.dim);
    for (std::int64_t i = 0; i < T; ++i)
        for (std::int64_t j = 0; j < 2 * T; ++j) {
            std::uint64_t cell = std::uint64_t(i * 2 * T + j);
            std::uint64_t off = s.tensor_off + cell * std::uint64_t(q2 * q2);
            write_grid(out, off, q2, vals[std::size_t(i)] * uv[std::size_t(j)], side);
        }
    for (std::int64_t slot = 0; slot < sc.c_v; ++slot)
        for (std::int64_t i = 0; i < T; ++i) {
            std::uint64_t off = s.linv_off + std::uint64_t(slot) * std::uint64_t(T * q2) + std::uint64_t(i * q2);
            write_grid(out, off, q, vals[std::size_t(i)], side);
        }
    for (std::int64_t slot = 0; slot < sc.c_u; ++slot)
        for (std::int64_t j = 0; j < 2 * T; ++j) {
            std::uint64_t off = s.linu_off + std::uint64_t(slot) * std::uint64_t(2 * T * q2) + std::uint64_t(j * q2);
            write_grid(out, off, q, uv[std::size_t(j)], side);
        }
    for (std::int64_t b = 0; b < sc.pad_ones; ++b) out.set(s.pad_off + std::uint64_t(b), true);
    return out;
}

} // namespace detail

inline BitVec encode_g(const GadgetSpec& s, const std::vector<std::int64_t>& a, std::int64_t sigma) {
    return detail::encode_side(s, a, sigma, 0);
}

inline BitVec encode_h(const GadgetSpec& s, const std::vector<std::int64_t>& b, std::int64_t sigma) {
    return detail::encode_side(s, b, sigma, 1);
}

// Exact <g(a,sigma), h(b,sigma)> computed region by region instead of bit by
// bit: each grid holds exactly x*y overlapping ones and identical copy slots
// add up by multiplicity. Agrees with the materialized inner product for
// every spec, including deliberately corrupted ones (the pad clamp is shared).
inline std::int64_t encoded_inner_product(const GadgetSpec& s, const std::vector<std::int64_t>& a,
                                          const std::vector<std::int64_t>& b, std::int64_t sigma) {
    detail::check_gadget_args(s, a, sigma);
    detail::check_gadget_args(s, b, sigma);
    const std::int64_t T = s.T, q = s.q;
    std::vector<std::int64_t> alpha(std::size_t(2 * T)), beta(std::size_t(2 * T));
    for (std::int64_t i = 0; i < T; ++i) {
        alpha[std::size_t(i)] = a[std::size_t(i)];
        alpha[std::size_t(T + i)] = q - a[std::size_t(i)];
        beta[std::size_t(i)] = q - b[std::size_t(i)];
        beta[std::size_t(T + i)] = q;
    }
    __int128 total = 0;
    for (std::int64_t i = 0; i < T; ++i)
        for (std::int64_t j = 0; j < 2 * T; ++j)
            total += (__int128)(a[std::size_t(i)] * alpha[std::size_t(j)]) * (b[std::size_t(i)] * beta[std::size_t(j)]);
    std::int64_t v = 0, u = 0;
    for (std::int64_t i = 0; i < T; ++i) v += a[std::size_t(i)] * b[std::size_t(i)];
    for (std::int64_t j = 0; j < 2 * T; ++j) u += alpha[std::size_t(j)] * beta[std::size_t(j)];
    detail::SigmaCoeffs sc = detail::sigma_coeffs(s, sigma);
    total += (__int128)sc.c_v * v + (__int128)sc.c_u * u + sc.pad_ones;
    if (total > INT64_MAX) throw std::overflow_error("encoded_inner_product: overflow");
    return std::int64_t(total);
}

struct GadgetVerifyReport {
    bool ok = true;
    std::uint64_t combos_checked = 0;
    // First counterexample, if any.
    std::vector<std::int64_t> a, b;
    std::int64_t sigma = 0;
    std::int64_t got = 0, expected = 0;
};

// Exhaustive sweep over all (a, b, sigma): materializes both encodings,
// takes the bit-level inner product, and compares against
// Gamma - (<a,b> - sigma)^2 as well as the region-computed value.
inline GadgetVerifyReport verify_gadget_exhaustive(const GadgetSpec& s) {
    GadgetVerifyReport rep;
    std::vector<std::int64_t> a(std::size_t(s.T), 0), b(std::size_t(s.T), 0);
    auto advance = [&](std::vector<std::int64_t>& v) {
        for (auto& x : v) {
            if (++x <= s.q) return true;
            x = 0;
        }
        return false;
    };
    do {
        do {
            std::int64_t v = 0;
            for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * b[i];
            for (std::int64_t sigma = 0; sigma <= s.M; ++sigma) {
                BitVec g = encode_g(s, a, sigma);
                BitVec h = encode_h(s, b, sigma);
                std::int64_t got = std::int64_t(inner_product(g, h));
                std::int64_t expected = s.Gamma - (v - sigma) * (v - sigma);
                ++rep.combos_checked;
                if (got != expected || got != encoded_inner_product(s, a, b, sigma)) {
                    rep.ok = false;
                    rep.a = a;
                    rep.b = b;
                    rep.sigma = sigma;
                    rep.got = got;
                    rep.expected = expected;
                    return rep;
                }
            }
        } while (advance(b));
    } while (advance(a));
    return rep;
}

} // namespace fgred

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bitvec.hpp"
#include "codes.hpp"
#include "gf.hpp"
#include "params.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace fgred {

// One-round proof that <a, b> = sigma for binary a, b of dimension d.
//
// Both vectors are read as (d/T) x T matrices, row-major and zero-padded.
// For each prime p in the plan, every matrix column is encoded with the
// systematic code over GF(p^2); entries c0 + c1*X split into coefficient
// matrices indexed by alpha (and beta on the b side).
//
// The prover's message carries integer column sums, computed without any
// modular reduction:
//   m0(i)            = sum_j a(i,j) * b(i,j)                  (entries <= T)
//   m_{l,α,β}(i)     = sum_j a^(l,α)(i,j) * b^(l,β)(i,j)      (<= T*q^2)
//
// The verifier accepts only messages that pass, in order:
//   (2a) sum_i m0(i) = sigma
//   (2b) on the first d/T rows: m_{l,0,0} = m0 and the other three parts
//        vanish (these rows are systematic, so honest values are forced)
//   (2c) per prime, m_{l,0,0} + (m_{l,0,1}+m_{l,1,0})*X + m_{l,1,1}*X^2,
//        reduced mod the field modulus, is a product-code codeword
// and then samples a uniform (l*, i*, α*, β*), comparing the claimed
// sigma' = m_{l*,α*,β*}(i*) with the true row product. The sample space is
// enumerated exhaustively here, so all probabilities are exact rationals.

struct MerlinMessage {
    std::vector<std::int64_t> m0;
    // parts[l][2*alpha + beta] has length n_l
    std::vector<std::array<std::vector<std::int64_t>, 4>> parts;
};

struct RandomnessPoint {
    std::size_t ell = 0;  // prime index, 0-based
    std::size_t i = 0;    // codeword row, 0-based
    int alpha = 0, beta = 0;
};

struct TripletOutput {
    std::vector<std::int64_t> a_prime, b_prime;
    std::int64_t sigma_prime = 0;
};

// Per-prime encodings of one input vector: mats[l] is the n_l x T matrix of
// field elements, row-major.
struct EncodedInput {
    std::vector<std::vector<Ext2>> mats;
};

enum class CheckId { None, Malformed, SumMismatch, PrefixMismatch, NotCodeword };

struct CheckResult {
    bool accepted = true;
    CheckId failed = CheckId::None;
    std::size_t ell = 0, i = 0;  // location of the first failure, 0-based
    std::string detail;
};

// Parameters plus the per-prime fields and codes they induce. Building the
// interpolation matrices once here keeps repeated runs cheap.
class ProtocolContext {
public:
    explicit ProtocolContext(ProtocolParams params) : params_(std::move(params)) {
        if (params_.primes.size() != params_.code_lens.size())
            throw std::invalid_argument("ProtocolContext: primes/code_lens size mismatch");
        fields_.reserve(params_.primes.size());
        codes_.reserve(params_.primes.size());
        for (std::size_t l = 0; l < params_.primes.size(); ++l) {
            fields_.emplace_back(params_.primes[l]);
            codes_.emplace_back(fields_.back(), params_.msg_len, params_.code_lens[l]);
        }
        weight_den_ = common_weight_denominator(params_);
    }

    const ProtocolParams& params() const { return params_; }
    std::size_t prime_count() const { return params_.primes.size(); }
    const QuadExtField& field(std::size_t l) const { return fields_[l]; }
    const MultCodePair& code(std::size_t l) const { return codes_[l]; }

    // Common denominator of the point weights 1 / (4 * L * n_l).
    std::uint64_t weight_denominator() const { return weight_den_; }
    std::uint64_t point_multiplier(std::size_t ell) const {
        return weight_den_ / (4 * prime_count() * params_.code_lens[ell]);
    }

    bool bit(const BitVec& v, std::size_t idx) const { return idx < v.size() && v.get(idx); }

    void check_input_size(const BitVec& v) const {
        if (std::int64_t(v.size()) != params_.original_d && std::int64_t(v.size()) != params_.d)
            throw std::invalid_argument("protocol: input dimension " + std::to_string(v.size()) +
                                        " matches neither d=" + std::to_string(params_.original_d) +
                                        " nor padded d=" + std::to_string(params_.d));
    }

private:
    ProtocolParams params_;
    std::vector<QuadExtField> fields_;
    std::vector<MultCodePair> codes_;
    std::uint64_t weight_den_ = 0;
};

inline EncodedInput encode_input(const ProtocolContext& ctx, const BitVec& v) {
    ctx.check_input_size(v);
    const auto& p = ctx.params();
    const std::size_t k = p.msg_len, T = std::size_t(p.T);
    EncodedInput enc;
    enc.mats.resize(ctx.prime_count());
    for (std::size_t l = 0; l < ctx.prime_count(); ++l) {
        const auto& code = ctx.code(l);
        const auto& f = ctx.field(l);
        std::size_t n = code.codeword_length();
        enc.mats[l].assign(n * T, f.zero());
        std::vector<Ext2> col(k);
        for (std::size_t j = 0; j < T; ++j) {
            for (std::size_t i = 0; i < k; ++i) col[i] = f.from_base(ctx.bit(v, i * T + j) ? 1 : 0);
            std::vector<Ext2> cw = code.encode(col);
            for (std::size_t i = 0; i < n; ++i) enc.mats[l][i * T + j] = cw[i];
        }
    }
    return enc;
}

inline std::int64_t coefficient(const Ext2& e, int alpha) { return alpha == 0 ? e.c0 : e.c1; }

inline MerlinMessage honest_merlin(const ProtocolContext& ctx, const EncodedInput& a, const EncodedInput& b,
                                   const BitVec& raw_a, const BitVec& raw_b) {
    const auto& p = ctx.params();
    const std::size_t k = p.msg_len, T = std::size_t(p.T);
    MerlinMessage msg;
    msg.m0.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < T; ++j)
            if (ctx.bit(raw_a, i * T + j) && ctx.bit(raw_b, i * T + j)) ++msg.m0[i];
    msg.parts.resize(ctx.prime_count());
    for (std::size_t l = 0; l < ctx.prime_count(); ++l) {
        std::size_t n = ctx.code(l).codeword_length();
        for (int ab = 0; ab < 4; ++ab) msg.parts[l][std::size_t(ab)].assign(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < T; ++j) {
                const Ext2& ea = a.mats[l][i * T + j];
                const Ext2& eb = b.mats[l][i * T + j];
                for (int al = 0; al < 2; ++al)
                    for (int be = 0; be < 2; ++be)
                        msg.parts[l][std::size_t(2 * al + be)][i] += coefficient(ea, al) * coefficient(eb, be);
            }
    }
    return msg;
}

inline MerlinMessage honest_merlin(const ProtocolContext& ctx, const BitVec& a, const BitVec& b) {
    return honest_merlin(ctx, encode_input(ctx, a), encode_input(ctx, b), a, b);
}

// Reduces the four integer part entries of row i to the claimed field value
// m0(i) + (m01+m10)(i)*X + m11(i)*X^2 mod the modulus of field l.
inline Ext2 assemble_entry(const QuadExtField& f, std::int64_t m00, std::int64_t m01, std::int64_t m10,
                           std::int64_t m11) {
    Ext2 x = f.make(0, 1);
    Ext2 acc = f.from_base(m00);
    acc = f.add(acc, f.mul(x, f.from_base(m01 + m10)));
    acc = f.add(acc, f.mul(f.mul(x, x), f.from_base(m11)));
    return acc;
}

inline std::vector<Ext2> assemble_block(const ProtocolContext& ctx, std::size_t ell, const MerlinMessage& msg) {
    const auto& f = ctx.field(ell);
    std::size_t n = ctx.code(ell).codeword_length();
    std::vector<Ext2> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = assemble_entry(f, msg.parts[ell][0][i], msg.parts[ell][1][i], msg.parts[ell][2][i],
                                msg.parts[ell][3][i]);
    return out;
}

// Verifier acceptance of the message shape and checks (2a)-(2c). Malformed
// adversarial input is a rejection, never an exception.
inline CheckResult alice_check(const ProtocolContext& ctx, const MerlinMessage& msg, std::int64_t sigma) {
    const auto& p = ctx.params();
    CheckResult r;
    auto fail = [&](CheckId id, std::size_t ell, std::size_t i, std::string detail) {
        r.accepted = false;
        r.failed = id;
        r.ell = ell;
        r.i = i;
        r.detail = std::move(detail);
        return r;
    };

    if (msg.m0.size() != p.msg_len || msg.parts.size() != ctx.prime_count())
        return fail(CheckId::Malformed, 0, 0, "message shape mismatch");
    for (auto v : msg.m0)
        if (v < 0 || v > p.m0_entry_bound()) return fail(CheckId::Malformed, 0, 0, "m0 entry out of bounds");
    for (std::size_t l = 0; l < ctx.prime_count(); ++l)
        for (int ab = 0; ab < 4; ++ab) {
            const auto& part = msg.parts[l][std::size_t(ab)];
            if (part.size() != p.code_lens[l]) return fail(CheckId::Malformed, l, 0, "part length mismatch");
            for (auto v : part)
                if (v < 0 || v > p.part_entry_bound())
                    return fail(CheckId::Malformed, l, 0, "part entry out of bounds");
        }

    std::int64_t total = 0;
    for (auto v : msg.m0) total += v;
    if (total != sigma)
        return fail(CheckId::SumMismatch, 0, 0,
                    "sum of m0 is " + std::to_string(total) + ", claimed sigma " + std::to_string(sigma));

    for (std::size_t l = 0; l < ctx.prime_count(); ++l)
        for (std::size_t i = 0; i < p.msg_len; ++i) {
            if (msg.parts[l][0][i] != msg.m0[i])
                return fail(CheckId::PrefixMismatch, l, i, "m_{l,0,0} disagrees with m0 on a systematic row");
            if (msg.parts[l][1][i] != 0 || msg.parts[l][2][i] != 0 || msg.parts[l][3][i] != 0)
                return fail(CheckId::PrefixMismatch, l, i, "cross terms nonzero on a systematic row");
        }

    for (std::size_t l = 0; l < ctx.prime_count(); ++l)
        if (!ctx.code(l).is_product_codeword(assemble_block(ctx, l, msg)))
            return fail(CheckId::NotCodeword, l, 0, "assembled block is not a product codeword");

    return r;
}

// Canonical enumeration order of the sample space: primes ascending, then
// rows, then (alpha, beta) lexicographic.
inline std::vector<RandomnessPoint> enumerate_randomness(const ProtocolContext& ctx) {
    std::vector<RandomnessPoint> pts;
    pts.reserve(ctx.params().R_space_size);
    for (std::size_t l = 0; l < ctx.prime_count(); ++l)
        for (std::size_t i = 0; i < ctx.params().code_lens[l]; ++i)
            for (int al = 0; al < 2; ++al)
                for (int be = 0; be < 2; ++be) pts.push_back({l, i, al, be});
    return pts;
}

// The three party-local projections at one sampled point. Alice touches only
// her own encoding, Bob only his, Merlin only the message.
inline std::vector<std::int64_t> alice_output_row(const ProtocolContext& ctx, const EncodedInput& a,
                                                  const RandomnessPoint& pt) {
    const std::size_t T = std::size_t(ctx.params().T);
    std::vector<std::int64_t> row(T);
    for (std::size_t j = 0; j < T; ++j) row[j] = coefficient(a.mats[pt.ell][pt.i * T + j], pt.alpha);
    return row;
}

inline std::vector<std::int64_t> bob_output_row(const ProtocolContext& ctx, const EncodedInput& b,
                                                const RandomnessPoint& pt) {
    const std::size_t T = std::size_t(ctx.params().T);
    std::vector<std::int64_t> row(T);
    for (std::size_t j = 0; j < T; ++j) row[j] = coefficient(b.mats[pt.ell][pt.i * T + j], pt.beta);
    return row;
}

inline std::int64_t merlin_sigma_prime(const MerlinMessage& msg, const RandomnessPoint& pt) {
    return msg.parts[pt.ell][std::size_t(2 * pt.alpha + pt.beta)][pt.i];
}

inline TripletOutput run_point(const ProtocolContext& ctx, const EncodedInput& a, const EncodedInput& b,
                               const MerlinMessage& msg, const RandomnessPoint& pt) {
    return {alice_output_row(ctx, a, pt), bob_output_row(ctx, b, pt), merlin_sigma_prime(msg, pt)};
}

inline std::int64_t int_inner_product(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Exact acceptance probability of one message: zero if the checks reject,
// otherwise the total weight of sample points whose claimed sigma' equals
// the true row product.
inline Rational acceptance_probability(const ProtocolContext& ctx, const EncodedInput& a, const EncodedInput& b,
                                       std::int64_t sigma, const MerlinMessage& msg) {
    if (!alice_check(ctx, msg, sigma).accepted) return Rational(0, 1);
    std::uint64_t matched = 0;
    for (const auto& pt : enumerate_randomness(ctx)) {
        TripletOutput out = run_point(ctx, a, b, msg, pt);
        if (int_inner_product(out.a_prime, out.b_prime) == out.sigma_prime) matched += ctx.point_multiplier(pt.ell);
    }
    return Rational(std::int64_t(matched), std::int64_t(ctx.weight_denominator()));
}

inline Rational acceptance_probability(const ProtocolContext& ctx, const BitVec& a, const BitVec& b,
                                       std::int64_t sigma, const MerlinMessage& msg) {
    return acceptance_probability(ctx, encode_input(ctx, a), encode_input(ctx, b), sigma, msg);
}

// Debug dump: one line per sample point, fields
//   ell i alpha beta sigma' <a',b'> match
// with ell and i printed 1-based.
inline void dump_transcript(std::ostream& os, const ProtocolContext& ctx, const EncodedInput& a,
                            const EncodedInput& b, const MerlinMessage& msg) {
    for (const auto& pt : enumerate_randomness(ctx)) {
        TripletOutput out = run_point(ctx, a, b, msg, pt);
        std::int64_t ip = int_inner_product(out.a_prime, out.b_prime);
        os << (pt.ell + 1) << ' ' << (pt.i + 1) << ' ' << pt.alpha << ' ' << pt.beta << ' ' << out.sigma_prime
           << ' ' << ip << ' ' << (ip == out.sigma_prime ? 1 : 0) << '\n';
    }
}

// ---- Adversarial message strategies ------------------------------------

enum class MerlinStrategy { HonestWrongSigma, RandomValidCodeword, CorruptEntryRepaired, CorruptBlockRepaired };

inline const char* strategy_name(MerlinStrategy s) {
    switch (s) {
        case MerlinStrategy::HonestWrongSigma: return "honest-wrong-sigma";
        case MerlinStrategy::RandomValidCodeword: return "random-valid-codeword";
        case MerlinStrategy::CorruptEntryRepaired: return "corrupt-entry-repaired";
        case MerlinStrategy::CorruptBlockRepaired: return "corrupt-block-repaired";
    }
    return "unknown";
}

inline MerlinStrategy strategy_from_name(const std::string& name) {
    for (MerlinStrategy s : {MerlinStrategy::HonestWrongSigma, MerlinStrategy::RandomValidCodeword,
                             MerlinStrategy::CorruptEntryRepaired, MerlinStrategy::CorruptBlockRepaired})
        if (name == strategy_name(s)) return s;
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

namespace detail {

// Start from the honest m0 and nudge entries within [0, T] until they sum
// to the claimed sigma.
inline std::vector<std::int64_t> retargeted_m0(const ProtocolContext& ctx, const std::vector<std::int64_t>& honest,
                                               std::int64_t sigma, Rng& rng) {
    const auto& p = ctx.params();
    if (sigma < 0 || sigma > std::int64_t(p.msg_len) * p.T)
        throw std::invalid_argument("retargeted_m0: sigma out of range");
    std::vector<std::int64_t> m0 = honest;
    std::int64_t total = 0;
    for (auto v : m0) total += v;
    while (total != sigma) {
        std::size_t idx = std::size_t(rng.below(m0.size()));
        if (total < sigma && m0[idx] < p.T) { ++m0[idx]; ++total; }
        else if (total > sigma && m0[idx] > 0) { --m0[idx]; --total; }
    }
    return m0;
}

// Builds a full check-passing message from a retargeted m0 and, per prime,
// the free interpolation values at rows [k, 2k-1). Rows below k are forced
// by check (2b); rows from 2k-1 on are determined by codeword membership
// and get the minimal decomposition (c0, c1, 0, 0).
inline MerlinMessage message_from_free_values(const ProtocolContext& ctx, const std::vector<std::int64_t>& m0,
                                              const std::vector<std::vector<Ext2>>& free_values) {
    const auto& p = ctx.params();
    const std::size_t k = p.msg_len;
    MerlinMessage msg;
    msg.m0 = m0;
    msg.parts.resize(ctx.prime_count());
    for (std::size_t l = 0; l < ctx.prime_count(); ++l) {
        const auto& f = ctx.field(l);
        const auto& code = ctx.code(l);
        std::size_t n = code.codeword_length();
        std::vector<Ext2> prefix(2 * k - 1);
        for (std::size_t i = 0; i < k; ++i) prefix[i] = f.from_base(m0[i]);
        for (std::size_t i = 0; i + 1 < k; ++i) prefix[k + i] = free_values[l][i];
        std::vector<Ext2> w = code.encode_star_prefix(prefix);
        for (int ab = 0; ab < 4; ++ab) msg.parts[l][std::size_t(ab)].assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (i < k) {
                msg.parts[l][0][i] = m0[i];
            } else {
                msg.parts[l][0][i] = w[i].c0;
                msg.parts[l][1][i] = w[i].c1;
            }
        }
    }
    return msg;
}

} // namespace detail

// Generates `count` check-passing messages for the (non-)witness pair
// (a, b) against claimed sigma. Strategies that have no freedom at these
// parameters (entry/block repairs need msg_len >= 2) return an empty list.
// Every returned message passes alice_check by construction; this is
// re-verified before returning.
inline std::vector<MerlinMessage> adversarial_merlin_samples(const ProtocolContext& ctx, const BitVec& a,
                                                             const BitVec& b, std::int64_t sigma,
                                                             MerlinStrategy strategy, std::size_t count,
                                                             std::uint64_t seed) {
    const auto& p = ctx.params();
    const std::size_t k = p.msg_len;
    Rng rng(seed);
    EncodedInput ea = encode_input(ctx, a), eb = encode_input(ctx, b);
    MerlinMessage honest = honest_merlin(ctx, ea, eb, a, b);

    bool needs_freedom =
        strategy == MerlinStrategy::CorruptEntryRepaired || strategy == MerlinStrategy::CorruptBlockRepaired;
    if (needs_freedom && k < 2) return {};

    // Honest free values: the assembled honest block evaluated at the free rows.
    std::vector<std::vector<Ext2>> honest_free(ctx.prime_count());
    for (std::size_t l = 0; l < ctx.prime_count(); ++l) {
        std::vector<Ext2> blk = assemble_block(ctx, l, honest);
        honest_free[l].assign(blk.begin() + std::ptrdiff_t(k), blk.begin() + std::ptrdiff_t(2 * k - 1));
    }

    std::vector<MerlinMessage> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        std::vector<std::int64_t> m0 = detail::retargeted_m0(ctx, honest.m0, sigma, rng);
        std::vector<std::vector<Ext2>> free_values = honest_free;
        switch (strategy) {
            case MerlinStrategy::HonestWrongSigma:
                break;
            case MerlinStrategy::RandomValidCodeword:
                for (std::size_t l = 0; l < ctx.prime_count(); ++l)
                    for (auto& v : free_values[l])
                        v = ctx.field(l).element(std::int64_t(rng.below(std::uint64_t(ctx.field(l).order()))));
                break;
            case MerlinStrategy::CorruptEntryRepaired: {
                std::size_t l = std::size_t(rng.below(ctx.prime_count()));
                std::size_t j = std::size_t(rng.below(k - 1));
                const auto& f = ctx.field(l);
                Ext2 bump = f.element(1 + std::int64_t(rng.below(std::uint64_t(f.order() - 1))));
                free_values[l][j] = f.add(free_values[l][j], bump);
                break;
            }
            case MerlinStrategy::CorruptBlockRepaired: {
                std::size_t l = std::size_t(rng.below(ctx.prime_count()));
                const auto& f = ctx.field(l);
                for (auto& v : free_values[l]) v = f.element(std::int64_t(rng.below(std::uint64_t(f.order()))));
                break;
            }
        }
        MerlinMessage msg = detail::message_from_free_values(ctx, m0, free_values);
        if (!alice_check(ctx, msg, sigma).accepted)
            throw std::logic_error("adversarial_merlin_samples: generated message failed the checks");
        out.push_back(std::move(msg));
    }
    return out;
}

// ---- Serialization -------------------------------------------------------

namespace detail {

class BitWriter {
public:
    void put(std::uint64_t value, int width) {
        for (int b = width - 1; b >= 0; --b) {
            if ((nbits_ & 7) == 0) bytes_.push_back(0);
            if ((value >> b) & 1) bytes_.back() |= std::uint8_t(0x80u >> (nbits_ & 7));
            ++nbits_;
        }
    }
    std::uint64_t bit_count() const { return nbits_; }
    std::vector<std::uint8_t> take() { return std::move(bytes_); }

private:
    std::vector<std::uint8_t> bytes_;
    std::uint64_t nbits_ = 0;
};

class BitReader {
public:
    BitReader(const std::vector<std::uint8_t>& bytes, std::uint64_t nbits) : bytes_(bytes), nbits_(nbits) {}
    std::uint64_t get(int width) {
        std::uint64_t v = 0;
        for (int b = 0; b < width; ++b) {
            if (pos_ >= nbits_) throw std::invalid_argument("deserialize: message truncated");
            std::uint64_t bit = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1;
            v = (v << 1) | bit;
            ++pos_;
        }
        return v;
    }
    std::uint64_t consumed() const { return pos_; }

private:
    const std::vector<std::uint8_t>& bytes_;
    std::uint64_t nbits_;
    std::uint64_t pos_ = 0;
};

} // namespace detail

// Fixed-width big-endian packing: m0 first, then parts in (l, alpha, beta)
// lexicographic order. Widths come from the entry bounds recorded in the
// parameters, so the planner's L_bits equals the emitted length exactly.
inline std::vector<std::uint8_t> serialize_message(const ProtocolParams& p, const MerlinMessage& msg) {
    detail::BitWriter w;
    int w0 = ProtocolParams::entry_width(p.m0_entry_bound());
    int w1 = ProtocolParams::entry_width(p.part_entry_bound());
    for (auto v : msg.m0) w.put(std::uint64_t(v), w0);
    for (const auto& blocks : msg.parts)
        for (const auto& part : blocks)
            for (auto v : part) w.put(std::uint64_t(v), w1);
    if (w.bit_count() != p.L_bits) throw std::logic_error("serialize_message: length bookkeeping mismatch");
    return w.take();
}

inline MerlinMessage deserialize_message(const ProtocolParams& p, const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() != (p.L_bits + 7) / 8)
        throw std::invalid_argument("deserialize_message: expected " + std::to_string((p.L_bits + 7) / 8) +
                                    " bytes, got " + std::to_string(bytes.size()));
    detail::BitReader r(bytes, std::uint64_t(bytes.size()) * 8);
    int w0 = ProtocolParams::entry_width(p.m0_entry_bound());
    int w1 = ProtocolParams::entry_width(p.part_entry_bound());
    MerlinMessage msg;
    msg.m0.resize(p.msg_len);
    for (auto& v : msg.m0) {
        v = std::int64_t(r.get(w0));
        if (v > p.m0_entry_bound()) throw std::invalid_argument("deserialize_message: m0 entry out of bounds");
    }
    msg.parts.resize(p.primes.size());
    for (std::size_t l = 0; l < p.primes.size(); ++l)
        for (int ab = 0; ab < 4; ++ab) {
            auto& part = msg.parts[l][std::size_t(ab)];
            part.resize(p.code_lens[l]);
            for (auto& v : part) {
                v = std::int64_t(r.get(w1));
                if (v > p.part_entry_bound())
                    throw std::invalid_argument("deserialize_message: part entry out of bounds");
            }
        }
    if (r.consumed() != p.L_bits) throw std::logic_error("deserialize_message: length bookkeeping mismatch");
    return msg;
}

// ---- Single-prime square-matrix baseline ---------------------------------

// The classic one-prime variant for set disjointness: view a, b as
// sqrt(d) x sqrt(d) matrices, encode columns with a systematic
// Reed-Solomon code over GF(p) for the smallest prime p > 4*sqrt(d), and
// have the prover send the mod-p column sums of the entrywise product.
// The verifier insists the sum vector is a low-degree codeword whose first
// sqrt(d) entries vanish, then checks one random row. Disjoint inputs with
// an honest prover are accepted with probability 1; on intersecting inputs
// every check-passing message is caught on at least half the rows.
//
// For dishonest mode the returned value is the maximum exact acceptance
// probability over `count` seeded check-passing messages.
inline Rational aw09_disjointness_baseline(const BitVec& a, const BitVec& b, bool honest,
                                           std::size_t count = 50, std::uint64_t seed = 1) {
    if (a.size() != b.size()) throw std::invalid_argument("aw09: dimension mismatch");
    std::int64_t d = std::int64_t(a.size());
    std::int64_t s = std::int64_t(std::sqrt(double(d)));
    while (s * s > d) --s;
    while ((s + 1) * (s + 1) <= d) ++s;
    if (s * s != d || d == 0) throw std::invalid_argument("aw09: d must be a positive perfect square");
    std::int64_t p = 4 * s + 1;
    while (!is_prime(p)) ++p;
    PrimeField f(p);

    // Lagrange fit through points 0..m-1, evaluated at all p points.
    auto extend = [&](const std::vector<std::int64_t>& vals) {
        std::size_t m = vals.size();
        std::vector<std::int64_t> out(std::size_t(p), 0);
        for (std::size_t j = 0; j < m; ++j) {
            // basis polynomial L_j as coefficients
            std::vector<std::int64_t> coeff{1};
            std::int64_t denom = 1;
            for (std::size_t t = 0; t < m; ++t) {
                if (t == j) continue;
                std::vector<std::int64_t> next(coeff.size() + 1, 0);
                for (std::size_t i = 0; i < coeff.size(); ++i) {
                    next[i] = f.add(next[i], f.mul(coeff[i], f.neg(std::int64_t(t))));
                    next[i + 1] = f.add(next[i + 1], coeff[i]);
                }
                coeff = std::move(next);
                denom = f.mul(denom, f.sub(std::int64_t(j), std::int64_t(t)));
            }
            std::int64_t scale = f.mul(vals[j], f.inv(denom));
            for (std::int64_t x = 0; x < p; ++x) {
                std::int64_t acc = 0;
                for (std::size_t i = coeff.size(); i > 0; --i) acc = f.add(f.mul(acc, x), coeff[i - 1]);
                out[std::size_t(x)] = f.add(out[std::size_t(x)], f.mul(scale, acc));
            }
        }
        return out;
    };

    // Column encodings: ahat[i][j] = A_j(i) where A_j fits column j.
    const std::size_t pz = std::size_t(p);
    std::vector<std::vector<std::int64_t>> ahat(pz), bhat(pz);
    for (std::int64_t i = 0; i < p; ++i) {
        ahat[std::size_t(i)].assign(std::size_t(s), 0);
        bhat[std::size_t(i)].assign(std::size_t(s), 0);
    }
    for (std::int64_t j = 0; j < s; ++j) {
        std::vector<std::int64_t> cola(std::size_t(s), 0), colb(std::size_t(s), 0);
        for (std::int64_t i = 0; i < s; ++i) {
            cola[std::size_t(i)] = a.get(std::size_t(i * s + j)) ? 1 : 0;
            colb[std::size_t(i)] = b.get(std::size_t(i * s + j)) ? 1 : 0;
        }
        auto ca = extend(cola), cb = extend(colb);
        for (std::int64_t i = 0; i < p; ++i) {
            ahat[std::size_t(i)][std::size_t(j)] = ca[std::size_t(i)];
            bhat[std::size_t(i)][std::size_t(j)] = cb[std::size_t(i)];
        }
    }

    // True row products; the honest message is exactly this vector.
    std::vector<std::int64_t> truth(std::size_t(p), 0);
    for (std::int64_t i = 0; i < p; ++i) {
        std::int64_t acc = 0;
        for (std::int64_t j = 0; j < s; ++j)
            acc = f.add(acc, f.mul(ahat[std::size_t(i)][std::size_t(j)], bhat[std::size_t(i)][std::size_t(j)]));
        truth[std::size_t(i)] = acc;
    }

    auto accept_prob = [&](const std::vector<std::int64_t>& m) {
        // Checks: low degree (by construction of our candidates), zero prefix.
        for (std::int64_t i = 0; i < s; ++i)
            if (m[std::size_t(i)] != 0) return Rational(0, 1);
        std::int64_t hits = 0;
        for (std::int64_t i = 0; i < p; ++i)
            if (m[std::size_t(i)] == truth[std::size_t(i)]) ++hits;
        return Rational(hits, p);
    };

    if (honest) return accept_prob(truth);

    Rng rng(seed);
    Rational best(0, 1);
    for (std::size_t it = 0; it < count; ++it) {
        std::vector<std::int64_t> vals(std::size_t(2 * s - 1), 0);
        for (std::int64_t j = s; j < 2 * s - 1; ++j) vals[std::size_t(j)] = std::int64_t(rng.below(std::uint64_t(p)));
        Rational r = accept_prob(extend(vals));
        if (r > best) best = r;
    }
    return best;
}

} // namespace fgred

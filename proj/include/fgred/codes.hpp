#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gf.hpp"

namespace fgred {

// A pair (C, C*) of evaluation codes over GF(p^2):
//   C  = evaluations of polynomials of degree <= k-1 at n fixed points,
//   C* = evaluations of polynomials of degree <= 2k-2 at the same points.
// Entrywise products of C-codewords lie in C*, and C* still has large
// distance: any two distinct C*-codewords agree on at most 2k-2 points.
//
// Evaluation points are the first n field elements in (c1, c0) lexicographic
// order. Encoding interpolates the message through the first k points, so
// every codeword starts with its own message (systematic form).
class MultCodePair {
public:
    MultCodePair(QuadExtField field, std::size_t k, std::size_t n)
        : field_(std::move(field)), k_(k), n_(n) {
        if (k < 1) throw std::invalid_argument("MultCodePair: k must be >= 1");
        if (std::int64_t(n) > field_.order())
            throw std::invalid_argument("MultCodePair: n=" + std::to_string(n) + " exceeds field order " +
                                        std::to_string(field_.order()));
        if (n < 2 * k - 1)
            throw std::invalid_argument("MultCodePair: n must be >= 2k-1 to pin down products");
        // Contract carried by the pair: rate k/n >= 0.1 and relative distance
        // of C*, (n - (2k-2))/n, >= 0.1.
        if (10 * k < n)
            throw std::invalid_argument("MultCodePair: rate below 0.1 (n > 10k)");
        if (10 * (n - (2 * k - 2)) < n)
            throw std::invalid_argument("MultCodePair: product-code relative distance below 0.1");

        points_.reserve(n);
        for (std::size_t i = 0; i < n; ++i) points_.push_back(field_.element(std::int64_t(i)));
        gen_ = interpolation_matrix(k_);
        gen_star_ = interpolation_matrix(2 * k_ - 1);
    }

    const QuadExtField& field() const { return field_; }
    std::size_t message_length() const { return k_; }
    std::size_t codeword_length() const { return n_; }
    std::size_t base_degree() const { return k_ - 1; }
    std::size_t product_degree() const { return 2 * k_ - 2; }
    const std::vector<Ext2>& eval_points() const { return points_; }

    // msg has length k; the result has length n and starts with msg.
    std::vector<Ext2> encode(const std::vector<Ext2>& msg) const {
        if (msg.size() != k_) throw std::invalid_argument("encode: message length mismatch");
        return apply(gen_, msg);
    }

    bool is_codeword(const std::vector<Ext2>& w) const { return matches(gen_, k_, w); }

    // Membership in C*: fit degree <= 2k-2 through the first 2k-1 entries,
    // then confirm the remaining evaluations.
    bool is_product_codeword(const std::vector<Ext2>& w) const { return matches(gen_star_, 2 * k_ - 1, w); }

    // The unique C* codeword taking the given values on the first 2k-1
    // points. Used to complete partially pinned-down product codewords.
    std::vector<Ext2> encode_star_prefix(const std::vector<Ext2>& prefix) const {
        if (prefix.size() != 2 * k_ - 1) throw std::invalid_argument("encode_star_prefix: prefix length mismatch");
        return apply(gen_star_, prefix);
    }

private:
    // Rows i in [0,n), columns j in [0,m): value L_j(x_i) where L_j is the
    // Lagrange basis polynomial through the first m points.
    std::vector<std::vector<Ext2>> interpolation_matrix(std::size_t m) const {
        std::vector<std::vector<Ext2>> mat(n_, std::vector<Ext2>(m, field_.zero()));
        for (std::size_t j = 0; j < m; ++j) {
            // Coefficients of L_j via incremental products, then denominator.
            std::vector<Ext2> coeff{field_.one()}; // product of (Z - x_t), t != j
            Ext2 denom = field_.one();
            for (std::size_t t = 0; t < m; ++t) {
                if (t == j) continue;
                coeff = poly_mul_linear(coeff, field_.neg(points_[t]));
                denom = field_.mul(denom, field_.sub(points_[j], points_[t]));
            }
            Ext2 dinv = field_.inv(denom);
            for (auto& c : coeff) c = field_.mul(c, dinv);
            for (std::size_t i = 0; i < n_; ++i) mat[i][j] = poly_eval(coeff, points_[i]);
        }
        return mat;
    }

    // coeff(Z) * (Z + shift)
    std::vector<Ext2> poly_mul_linear(const std::vector<Ext2>& coeff, Ext2 shift) const {
        std::vector<Ext2> out(coeff.size() + 1, field_.zero());
        for (std::size_t i = 0; i < coeff.size(); ++i) {
            out[i] = field_.add(out[i], field_.mul(coeff[i], shift));
            out[i + 1] = field_.add(out[i + 1], coeff[i]);
        }
        return out;
    }

    Ext2 poly_eval(const std::vector<Ext2>& coeff, Ext2 x) const {
        Ext2 acc = field_.zero();
        for (std::size_t i = coeff.size(); i > 0; --i) acc = field_.add(field_.mul(acc, x), coeff[i - 1]);
        return acc;
    }

    std::vector<Ext2> apply(const std::vector<std::vector<Ext2>>& mat, const std::vector<Ext2>& v) const {
        std::vector<Ext2> out(n_, field_.zero());
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < v.size(); ++j)
                out[i] = field_.add(out[i], field_.mul(mat[i][j], v[j]));
        return out;
    }

    bool matches(const std::vector<std::vector<Ext2>>& mat, std::size_t m, const std::vector<Ext2>& w) const {
        if (w.size() != n_) return false;
        std::vector<Ext2> prefix(w.begin(), w.begin() + std::ptrdiff_t(m));
        return apply(mat, prefix) == w;
    }

    QuadExtField field_;
    std::size_t k_, n_;
    std::vector<Ext2> points_;
    std::vector<std::vector<Ext2>> gen_;       // n x k, systematic for C
    std::vector<std::vector<Ext2>> gen_star_;  // n x (2k-1), systematic for C*
};

} // namespace fgred

#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bitvec.hpp"
#include "rng.hpp"

namespace fgred {

// Two-sided problem instances. A and B always have the same cardinality N
// and dimension; "solve" semantics depend on the kind.

struct IPInstance {
    std::vector<BitVec> A, B;
    std::int64_t sigma = 0;
    std::string prov;
};

struct MaxIPInstance {
    std::vector<BitVec> A, B;
    std::string prov;
};

struct MinIPInstance {
    std::vector<BitVec> A, B;
    std::string prov;
};

enum class Metric { Hamming, Lp, Edit };

struct CPInstance {
    Metric metric = Metric::Hamming;
    double p = 2.0;  // only meaningful for Metric::Lp
    std::vector<BitVec> A, B;             // Hamming / Lp
    std::vector<std::string> SA, SB;      // Edit
    std::string prov;
};

// ---- Text format ----------------------------------------------------------
//
// Line 1:  FGRED v1 <kind> N=<n> d=<d> [sigma=<s>] [metric=<m>] [prov=<id>]
// Body  :  2N lines, the A vectors then the B vectors; one {0,1}^d string
//          per line, quoted for edit-metric instances.
// Kinds :  ip, maxip, minip, cp (cp carries metric=hamming | l<p> | edit).
// The writer is canonical: re-reading and re-writing reproduces the bytes.

namespace detail {

struct Header {
    std::string kind;
    std::size_t N = 0;
    unsigned long long d = 0;
    bool has_sigma = false;
    std::int64_t sigma = 0;
    std::string metric;
    std::string prov;
};

inline std::string format_p(double p) {
    std::ostringstream os;
    os << p;
    return os.str();
}

inline Header parse_header(const std::string& line) {
    std::istringstream is(line);
    std::string magic, version;
    Header h;
    if (!(is >> magic >> version >> h.kind) || magic != "FGRED" || version != "v1")
        throw std::invalid_argument("instance file: bad header '" + line + "'");
    std::string tok;
    while (is >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("instance file: bad header token '" + tok + "'");
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "N") h.N = std::stoull(val);
        else if (key == "d") h.d = std::stoull(val);
        else if (key == "sigma") { h.has_sigma = true; h.sigma = std::stoll(val); }
        else if (key == "metric") h.metric = val;
        else if (key == "prov") h.prov = val;
        else throw std::invalid_argument("instance file: unknown header key '" + key + "'");
    }
    if (h.N == 0) throw std::invalid_argument("instance file: missing or zero N");
    return h;
}

inline void write_header(std::ostream& os, const std::string& kind, std::size_t N, unsigned long long d,
                         const std::string& extra, const std::string& prov) {
    os << "FGRED v1 " << kind << " N=" << N << " d=" << d;
    if (!extra.empty()) os << ' ' << extra;
    if (!prov.empty()) os << " prov=" << prov;
    os << '\n';
}

inline BitVec read_bit_line(std::istream& is, unsigned long long d) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("instance file: missing vector line");
    if (line.size() != d) throw std::invalid_argument("instance file: vector length mismatch");
    return BitVec::from_string(line);
}

inline std::string read_quoted_line(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("instance file: missing string line");
    if (line.size() < 2 || line.front() != '"' || line.back() != '"')
        throw std::invalid_argument("instance file: expected quoted string");
    return line.substr(1, line.size() - 2);
}

inline std::string peek_kind(std::istream& is) {
    std::string line;
    std::getline(is, line);
    Header h = parse_header(line);
    is.seekg(0);
    return h.kind;
}

} // namespace detail

inline void write_instance(std::ostream& os, const IPInstance& inst) {
    unsigned long long d = inst.A.empty() ? 0 : inst.A[0].size();
    detail::write_header(os, "ip", inst.A.size(), d, "sigma=" + std::to_string(inst.sigma), inst.prov);
    for (const auto& v : inst.A) os << v.to_string() << '\n';
    for (const auto& v : inst.B) os << v.to_string() << '\n';
}

inline void write_instance(std::ostream& os, const MaxIPInstance& inst) {
    unsigned long long d = inst.A.empty() ? 0 : inst.A[0].size();
    detail::write_header(os, "maxip", inst.A.size(), d, "", inst.prov);
    for (const auto& v : inst.A) os << v.to_string() << '\n';
    for (const auto& v : inst.B) os << v.to_string() << '\n';
}

inline void write_instance(std::ostream& os, const MinIPInstance& inst) {
    unsigned long long d = inst.A.empty() ? 0 : inst.A[0].size();
    detail::write_header(os, "minip", inst.A.size(), d, "", inst.prov);
    for (const auto& v : inst.A) os << v.to_string() << '\n';
    for (const auto& v : inst.B) os << v.to_string() << '\n';
}

inline void write_instance(std::ostream& os, const CPInstance& inst) {
    if (inst.metric == Metric::Edit) {
        unsigned long long d = inst.SA.empty() ? 0 : inst.SA[0].size();
        detail::write_header(os, "cp", inst.SA.size(), d, "metric=edit", inst.prov);
        for (const auto& s : inst.SA) os << '"' << s << '"' << '\n';
        for (const auto& s : inst.SB) os << '"' << s << '"' << '\n';
        return;
    }
    unsigned long long d = inst.A.empty() ? 0 : inst.A[0].size();
    std::string metric = inst.metric == Metric::Hamming ? "metric=hamming" : "metric=l" + detail::format_p(inst.p);
    detail::write_header(os, "cp", inst.A.size(), d, metric, inst.prov);
    for (const auto& v : inst.A) os << v.to_string() << '\n';
    for (const auto& v : inst.B) os << v.to_string() << '\n';
}

inline IPInstance read_ip_instance(std::istream& is) {
    std::string line;
    std::getline(is, line);
    detail::Header h = detail::parse_header(line);
    if (h.kind != "ip") throw std::invalid_argument("expected an ip instance, found kind '" + h.kind + "'");
    if (!h.has_sigma) throw std::invalid_argument("ip instance: missing sigma");
    IPInstance inst;
    inst.sigma = h.sigma;
    inst.prov = h.prov;
    for (std::size_t i = 0; i < h.N; ++i) inst.A.push_back(detail::read_bit_line(is, h.d));
    for (std::size_t i = 0; i < h.N; ++i) inst.B.push_back(detail::read_bit_line(is, h.d));
    return inst;
}

inline MaxIPInstance read_maxip_instance(std::istream& is) {
    std::string line;
    std::getline(is, line);
    detail::Header h = detail::parse_header(line);
    if (h.kind != "maxip") throw std::invalid_argument("expected a maxip instance, found kind '" + h.kind + "'");
    MaxIPInstance inst;
    inst.prov = h.prov;
    for (std::size_t i = 0; i < h.N; ++i) inst.A.push_back(detail::read_bit_line(is, h.d));
    for (std::size_t i = 0; i < h.N; ++i) inst.B.push_back(detail::read_bit_line(is, h.d));
    return inst;
}

inline MinIPInstance read_minip_instance(std::istream& is) {
    std::string line;
    std::getline(is, line);
    detail::Header h = detail::parse_header(line);
    if (h.kind != "minip") throw std::invalid_argument("expected a minip instance, found kind '" + h.kind + "'");
    MinIPInstance inst;
    inst.prov = h.prov;
    for (std::size_t i = 0; i < h.N; ++i) inst.A.push_back(detail::read_bit_line(is, h.d));
    for (std::size_t i = 0; i < h.N; ++i) inst.B.push_back(detail::read_bit_line(is, h.d));
    return inst;
}

inline CPInstance read_cp_instance(std::istream& is) {
    std::string line;
    std::getline(is, line);
    detail::Header h = detail::parse_header(line);
    if (h.kind != "cp") throw std::invalid_argument("expected a cp instance, found kind '" + h.kind + "'");
    CPInstance inst;
    inst.prov = h.prov;
    if (h.metric == "edit") {
        inst.metric = Metric::Edit;
        for (std::size_t i = 0; i < h.N; ++i) inst.SA.push_back(detail::read_quoted_line(is));
        for (std::size_t i = 0; i < h.N; ++i) inst.SB.push_back(detail::read_quoted_line(is));
        return inst;
    }
    if (h.metric == "hamming") inst.metric = Metric::Hamming;
    else if (!h.metric.empty() && h.metric[0] == 'l') {
        inst.metric = Metric::Lp;
        inst.p = std::stod(h.metric.substr(1));
        if (!(inst.p > 0)) throw std::invalid_argument("cp instance: nonpositive p");
    } else throw std::invalid_argument("cp instance: unknown metric '" + h.metric + "'");
    for (std::size_t i = 0; i < h.N; ++i) inst.A.push_back(detail::read_bit_line(is, h.d));
    for (std::size_t i = 0; i < h.N; ++i) inst.B.push_back(detail::read_bit_line(is, h.d));
    return inst;
}

// ---- Generators ------------------------------------------------------------

inline BitVec random_bits(Rng& rng, std::size_t d) {
    BitVec v(d);
    for (std::size_t i = 0; i < d; ++i) v.set(i, rng.coin());
    return v;
}

// N random vectors per side with one planted pair of inner product exactly
// sigma: a gets at least sigma ones, b overlaps a in exactly sigma positions
// and otherwise lives on a's zero set.
inline IPInstance gen_planted_ip(std::size_t N, std::size_t d, std::int64_t sigma, std::uint64_t seed) {
    if (sigma < 0 || std::uint64_t(sigma) > d) throw std::invalid_argument("gen_planted_ip: sigma out of range");
    if (N == 0 || d == 0) throw std::invalid_argument("gen_planted_ip: empty instance");
    Rng rng(seed);
    IPInstance inst;
    inst.sigma = sigma;
    for (std::size_t i = 0; i < N; ++i) inst.A.push_back(random_bits(rng, d));
    for (std::size_t i = 0; i < N; ++i) inst.B.push_back(random_bits(rng, d));

    BitVec a = random_bits(rng, d);
    while (std::int64_t(a.count_ones()) < sigma) a.set(std::size_t(rng.below(d)), true);
    std::vector<std::size_t> ones, zeros;
    for (std::size_t i = 0; i < d; ++i) (a.get(i) ? ones : zeros).push_back(i);
    BitVec b(d);
    rng.shuffle(ones);
    for (std::size_t i = 0; i < std::size_t(sigma); ++i) b.set(ones[i], true);
    for (auto z : zeros) b.set(z, rng.coin());

    inst.A[std::size_t(rng.below(N))] = a;
    inst.B[std::size_t(rng.below(N))] = b;
    inst.prov = "gen-ip-planted-seed" + std::to_string(seed);
    return inst;
}

// Rejection sampling until no pair hits sigma.
inline IPInstance gen_unplanted_ip(std::size_t N, std::size_t d, std::int64_t sigma, std::uint64_t seed) {
    if (N == 0 || d == 0) throw std::invalid_argument("gen_unplanted_ip: empty instance");
    Rng rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        IPInstance inst;
        inst.sigma = sigma;
        for (std::size_t i = 0; i < N; ++i) inst.A.push_back(random_bits(rng, d));
        for (std::size_t i = 0; i < N; ++i) inst.B.push_back(random_bits(rng, d));
        bool hit = false;
        for (const auto& a : inst.A)
            for (const auto& b : inst.B)
                if (std::int64_t(inner_product(a, b)) == sigma) { hit = true; break; }
        if (!hit) {
            inst.prov = "gen-ip-unplanted-seed" + std::to_string(seed);
            return inst;
        }
    }
    throw std::runtime_error("gen_unplanted_ip: no sigma-free instance found in 1000 attempts");
}

inline MaxIPInstance gen_random_maxip(std::size_t N, std::size_t d, std::uint64_t seed) {
    if (N == 0 || d == 0) throw std::invalid_argument("gen_random_maxip: empty instance");
    Rng rng(seed);
    MaxIPInstance inst;
    for (std::size_t i = 0; i < N; ++i) inst.A.push_back(random_bits(rng, d));
    for (std::size_t i = 0; i < N; ++i) inst.B.push_back(random_bits(rng, d));
    inst.prov = "gen-maxip-seed" + std::to_string(seed);
    return inst;
}

} // namespace fgred

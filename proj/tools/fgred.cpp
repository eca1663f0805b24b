// Command-line harness: instance generation, protocol runs with exact
// rational probability reports, reduction pipelines, brute-force solvers,
// gadget verification, and planner sweeps.
//
// Every command is deterministic given --seed: no wall clock, no
// environment, no locale dependence in any output byte.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include <fgred/instances.hpp>
#include <fgred/params.hpp>
#include <fgred/protocol.hpp>
#include <fgred/reduce.hpp>
#include <fgred/solvers.hpp>

using namespace fgred;

namespace {

// All commands write to --out or stdout through one sink.
struct Sink {
    std::unique_ptr<std::ofstream> file;
    std::ostream* os = &std::cout;
    void open(const std::string& path) {
        if (path.empty()) return;
        file = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file) throw std::runtime_error("cannot open output file '" + path + "'");
        os = file.get();
    }
    std::ostream& out() { return *os; }
};

std::string read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string plan_line(const ProtocolParams& p) {
    std::ostringstream os;
    os << "plan d=" << p.original_d << " padded=" << p.d << " T=" << p.T << " t=" << p.t << " k=" << p.msg_len
       << " primes=" << p.primes.size() << " q=" << p.q << " R=" << p.R_space_size << " L_bits=" << p.L_bits;
    return os.str();
}

int cmd_gen(const std::string& kind, std::size_t N, std::size_t d, std::int64_t sigma, std::uint64_t seed,
            Sink& sink) {
    if (kind == "ip-planted") {
        write_instance(sink.out(), gen_planted_ip(N, d, sigma, seed));
    } else if (kind == "ip-unplanted") {
        write_instance(sink.out(), gen_unplanted_ip(N, d, sigma, seed));
    } else if (kind == "maxip") {
        write_instance(sink.out(), gen_random_maxip(N, d, seed));
    } else {
        throw CLI::ValidationError("--kind", "expected ip-planted | ip-unplanted | maxip");
    }
    return 0;
}

int cmd_protocol_run(const std::string& in_path, std::int64_t T, const std::string& strategy, std::size_t count,
                     std::uint64_t seed, const std::string& transcript_path, Sink& sink) {
    std::istringstream in(read_all(in_path));
    IPInstance inst = read_ip_instance(in);
    const std::size_t d = inst.A.empty() ? 0 : inst.A[0].size();
    ProtocolParams params = plan_protocol(std::int64_t(d), T);
    ProtocolContext ctx(params);
    auto& os = sink.out();
    os << plan_line(params) << '\n';
    os << "sigma " << inst.sigma << '\n';

    std::vector<EncodedInput> encA, encB;
    for (const auto& v : inst.A) encA.push_back(encode_input(ctx, v));
    for (const auto& v : inst.B) encB.push_back(encode_input(ctx, v));

    int rc = 0;
    for (std::size_t i = 0; i < inst.A.size(); ++i)
        for (std::size_t j = 0; j < inst.B.size(); ++j) {
            MerlinMessage honest = honest_merlin(ctx, encA[i], encB[j], inst.A[i], inst.B[j]);
            Rational p = acceptance_probability(ctx, encA[i], encB[j], inst.sigma, honest);
            std::int64_t true_ip = std::int64_t(inner_product(inst.A[i], inst.B[j]));
            bool witness = true_ip == inst.sigma;
            os << "honest pair=" << i << ',' << j << " ip=" << true_ip << " p=" << p.to_string() << '\n';
            if (witness && !(p == Rational(1, 1))) rc = 1;  // completeness must be exact
            if (!witness && !(p <= Rational(49, 50))) rc = 2;
        }

    if (!strategy.empty()) {
        MerlinStrategy st = strategy_from_name(strategy);
        os << "adversarial strategy=" << strategy << " count=" << count << " seed=" << seed << '\n';
        for (std::size_t i = 0; i < inst.A.size(); ++i)
            for (std::size_t j = 0; j < inst.B.size(); ++j) {
                std::int64_t true_ip = std::int64_t(inner_product(inst.A[i], inst.B[j]));
                if (true_ip == inst.sigma) continue;  // soundness concerns non-witness pairs
                auto msgs = adversarial_merlin_samples(ctx, inst.A[i], inst.B[j], inst.sigma, st, count,
                                                       seed + i * inst.B.size() + j);
                for (std::size_t m = 0; m < msgs.size(); ++m) {
                    Rational p = acceptance_probability(ctx, encA[i], encB[j], inst.sigma, msgs[m]);
                    os << "adv pair=" << i << ',' << j << " msg=" << m << " p=" << p.to_string() << '\n';
                    if (!(p <= Rational(49, 50))) rc = 2;
                }
            }
    }

    if (!transcript_path.empty()) {
        std::ofstream tf(transcript_path, std::ios::binary);
        if (!tf) throw std::runtime_error("cannot open transcript file '" + transcript_path + "'");
        MerlinMessage honest = honest_merlin(ctx, encA[0], encB[0], inst.A[0], inst.B[0]);
        dump_transcript(tf, ctx, encA[0], encB[0], honest);
    }
    return rc;
}

// The message backing an IP -> Max-IP reduction: the honest proof of a
// witness pair when one exists, otherwise a seeded check-passing message
// claiming the instance sigma.
MerlinMessage reduction_message(const ProtocolContext& ctx, const IPInstance& inst, std::uint64_t seed,
                                std::ostream& os) {
    IPWitness w = solve_ip(inst.A, inst.B, inst.sigma);
    if (w.found) {
        os << "message honest witness=" << w.a_index << ',' << w.b_index << '\n';
        return honest_merlin(ctx, inst.A[w.a_index], inst.B[w.b_index]);
    }
    auto msgs = adversarial_merlin_samples(ctx, inst.A[0], inst.B[0], inst.sigma,
                                           MerlinStrategy::HonestWrongSigma, 1, seed);
    os << "message retargeted seed=" << seed << '\n';
    return msgs.at(0);
}

int cmd_reduce(const std::string& in_path, const std::string& target, std::int64_t T, double lp, bool verify,
               std::uint64_t seed, Sink& sink) {
    std::istringstream in(read_all(in_path));
    std::string kind = detail::peek_kind(in);
    int rc = 0;

    if (target == "maxip") {
        if (kind != "ip") throw std::runtime_error("reduce to maxip expects an ip instance, got '" + kind + "'");
        IPInstance inst = read_ip_instance(in);
        ProtocolParams params = plan_protocol(std::int64_t(inst.A[0].size()), T);
        ProtocolContext ctx(params);
        GadgetSpec spec = build_gadget(params.T, params.q);
        std::ostringstream head;
        MerlinMessage msg = reduction_message(ctx, inst, seed, head);
        EncodedMaxIP enc = ip_to_apx_maxip(ctx, inst, msg, spec);
        if (verify) {
            std::int64_t mx = reduced_maxip_exact_max(enc);
            std::int64_t planted = std::int64_t(enc.W) * spec.Gamma;
            bool witness = solve_ip(inst.A, inst.B, inst.sigma).found;
            bool ok = witness ? (mx == planted) : (100 * mx <= 100 * planted - 2 * std::int64_t(enc.W));
            std::cerr << head.str() << "verify max=" << mx << " W*Gamma=" << planted
                      << " witness=" << (witness ? 1 : 0) << " ok=" << (ok ? 1 : 0) << '\n';
            if (!ok) rc = 1;
        }
        write_encoded_instance(sink.out(), enc);
        return rc;
    }

    if (target == "cp-hamming" || target == "minip") {
        MaxIPInstance inst;
        if (kind == "maxip") {
            inst = read_maxip_instance(in);
        } else if (kind == "maxip-enc") {
            inst = read_encoded_instance(in).materialize();
        } else {
            throw std::runtime_error("reduce to " + target + " expects a maxip instance, got '" + kind + "'");
        }
        const std::int64_t d = std::int64_t(inst.A[0].size());
        if (target == "minip") {
            MinIPInstance out = maxip_minip_flip(inst);
            if (verify) {
                std::int64_t mx = solve_maxip(inst.A, inst.B).exact;
                std::int64_t mn = solve_minip(out.A, out.B).exact;
                bool ok = mn == d - mx;
                std::cerr << "verify min=" << mn << " d-max=" << d - mx << " ok=" << (ok ? 1 : 0) << '\n';
                if (!ok) rc = 1;
            }
            write_instance(sink.out(), out);
            return rc;
        }
        CPInstance out = maxip_to_cp_hamming(inst);
        if (verify) {
            std::int64_t mx = solve_maxip(inst.A, inst.B).exact;
            std::int64_t cp = solve_cp_hamming(out.A, out.B).exact;
            bool ok = cp == 2 * d - 2 * mx;
            for (std::size_t i = 0; ok && i < inst.A.size(); ++i)
                for (std::size_t j = 0; ok && j < inst.B.size(); ++j)
                    ok = std::int64_t(hamming_distance(out.A[i], out.B[j])) ==
                         2 * d - 2 * std::int64_t(inner_product(inst.A[i], inst.B[j]));
            std::cerr << "verify cp=" << cp << " 2d-2max=" << 2 * d - 2 * mx << " ok=" << (ok ? 1 : 0) << '\n';
            if (!ok) rc = 1;
        }
        write_instance(sink.out(), out);
        return rc;
    }

    if (target == "cp-lp" || target == "cp-edit") {
        if (kind != "cp") throw std::runtime_error("reduce to " + target + " expects a cp instance, got '" + kind + "'");
        CPInstance inst = read_cp_instance(in);
        if (target == "cp-lp") {
            CPInstance out = cp_hamming_to_lp(inst, lp);
            if (verify) {
                SolveResult h = solve_cp_hamming(inst.A, inst.B);
                SolveResult l = solve_cp_lp(out.A, out.B, out.p);
                bool ok = h.exact == l.exact;  // same integer minimizer, value is the 1/p root
                std::cerr << "verify hamming=" << h.exact << " lp_base=" << l.exact << " ok=" << (ok ? 1 : 0)
                          << '\n';
                if (!ok) rc = 1;
            }
            write_instance(sink.out(), out);
            return rc;
        }
        CPInstance out = cp_hamming_to_edit(inst);  // DP validation inline for d <= 8
        if (verify) {
            SolveResult h = solve_cp_hamming(inst.A, inst.B);
            SolveResult e = solve_cp_edit(out.SA, out.SB);
            bool ok = e.exact == kEditCostPerBit * h.exact;
            std::cerr << "verify hamming=" << h.exact << " edit=" << e.exact << " c_ed=" << kEditCostPerBit
                      << " ok=" << (ok ? 1 : 0) << '\n';
            if (!ok) rc = 1;
        }
        write_instance(sink.out(), out);
        return rc;
    }

    throw CLI::ValidationError("--target", "expected maxip | cp-hamming | cp-lp | cp-edit | minip");
}

int cmd_solve(const std::string& in_path, double lp, Sink& sink) {
    std::istringstream in(read_all(in_path));
    std::string kind = detail::peek_kind(in);
    auto& os = sink.out();
    if (kind == "ip") {
        IPInstance inst = read_ip_instance(in);
        IPWitness w = solve_ip(inst.A, inst.B, inst.sigma);
        os << "ip sigma=" << inst.sigma << " found=" << (w.found ? 1 : 0);
        if (w.found) os << " pair=" << w.a_index << ',' << w.b_index;
        os << " comparisons=" << w.comparisons << '\n';
        return 0;
    }
    if (kind == "maxip") {
        MaxIPInstance inst = read_maxip_instance(in);
        SolveResult r = solve_maxip(inst.A, inst.B);
        os << "maxip max=" << r.exact << " pair=" << r.a_index << ',' << r.b_index
           << " comparisons=" << r.comparisons << '\n';
        return 0;
    }
    if (kind == "maxip-enc") {
        EncodedMaxIP enc = read_encoded_instance(in);
        std::int64_t best = enc.ip(0, 0);
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < enc.size_a(); ++i)
            for (std::size_t j = 0; j < enc.size_b(); ++j) {
                std::int64_t v = enc.ip(i, j);
                if (v > best) { best = v; bi = i; bj = j; }
            }
        os << "maxip-enc max=" << best << " pair=" << bi << ',' << bj << " W=" << enc.W
           << " Gamma=" << enc.spec.Gamma << '\n';
        return 0;
    }
    if (kind == "minip") {
        MinIPInstance inst = read_minip_instance(in);
        SolveResult r = solve_minip(inst.A, inst.B);
        os << "minip min=" << r.exact << " pair=" << r.a_index << ',' << r.b_index
           << " comparisons=" << r.comparisons << '\n';
        return 0;
    }
    if (kind == "cp") {
        CPInstance inst = read_cp_instance(in);
        if (inst.metric == Metric::Hamming) {
            SolveResult r = solve_cp_hamming(inst.A, inst.B);
            os << "cp metric=hamming min=" << r.exact << " pair=" << r.a_index << ',' << r.b_index
               << " comparisons=" << r.comparisons << '\n';
        } else if (inst.metric == Metric::Lp) {
            double p = lp > 0 ? lp : inst.p;  // lp = 0 means "use the instance's own p"
            SolveResult r = solve_cp_lp(inst.A, inst.B, p);
            std::ostringstream val;
            val.precision(17);
            val << r.value;
            os << "cp metric=l" << detail::format_p(p) << " min_base=" << r.exact << " min=" << val.str()
               << " pair=" << r.a_index << ',' << r.b_index << " comparisons=" << r.comparisons << '\n';
        } else {
            SolveResult r = solve_cp_edit(inst.SA, inst.SB);
            os << "cp metric=edit min=" << r.exact << " pair=" << r.a_index << ',' << r.b_index
               << " comparisons=" << r.comparisons << '\n';
        }
        return 0;
    }
    throw std::runtime_error("solve: unsupported instance kind '" + kind + "'");
}

int cmd_verify_gadget(std::int64_t T, std::int64_t q, std::uint64_t samples, std::uint64_t seed, Sink& sink) {
    GadgetSpec spec = build_gadget(T, q);
    auto& os = sink.out();
    os << "gadget T=" << spec.T << " q=" << spec.q << " M=" << spec.M << " Gamma=" << spec.Gamma
       << " dim=" << spec.dim << " tensor=" << spec.tensor_len << " linear_v=" << spec.linv_len
       << " linear_u=" << spec.linu_len << " pad=" << spec.pad_len << '\n';
    if (samples == 0) {
        GadgetVerifyReport rep = verify_gadget_exhaustive(spec);
        os << "exhaustive combos=" << rep.combos_checked << " ok=" << (rep.ok ? 1 : 0) << '\n';
        if (!rep.ok) {
            os << "counterexample sigma=" << rep.sigma << " got=" << rep.got << " expected=" << rep.expected
               << '\n';
            return 1;
        }
        return 0;
    }
    // Sample mode: structured inner product against the closed form, no
    // materialization, so it works at any (T, q).
    Rng rng(seed);
    const std::size_t Tz = std::size_t(T);
    for (std::uint64_t it = 0; it < samples; ++it) {
        std::vector<std::int64_t> a(Tz), b(Tz);
        for (auto& x : a) x = std::int64_t(rng.below(std::uint64_t(q + 1)));
        for (auto& x : b) x = std::int64_t(rng.below(std::uint64_t(q + 1)));
        std::int64_t sigma = std::int64_t(rng.below(std::uint64_t(spec.M + 1)));
        std::int64_t v = 0;
        for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * b[i];
        std::int64_t got = encoded_inner_product(spec, a, b, sigma);
        std::int64_t expected = spec.Gamma - (v - sigma) * (v - sigma);
        if (got != expected) {
            os << "sample " << it << " MISMATCH got=" << got << " expected=" << expected << '\n';
            return 1;
        }
    }
    os << "samples=" << samples << " ok=1" << '\n';
    return 0;
}

std::vector<double> parse_list(const std::string& csv, const char* flag) {
    std::vector<double> vals;
    std::istringstream is(csv);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        try {
            vals.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw CLI::ValidationError(flag, "bad numeric list entry '" + tok + "'");
        }
    }
    if (vals.empty()) throw CLI::ValidationError(flag, "empty list");
    return vals;
}

int cmd_sweep(const std::string& eps_list, const std::string& c_list, std::uint64_t N, const std::string& format,
              Sink& sink) {
    if (format != "csv") throw CLI::ValidationError("--format", "only csv is supported");
    auto& os = sink.out();
    os << "epsilon,c,T,t,q,R_space_size,L_bits,d_prime,delta,note\n";
    for (double eps : parse_list(eps_list, "--epsilon"))
        for (double c : parse_list(c_list, "--c")) {
            os << eps << ',' << c << ',';
            try {
                ParameterPlan plan = plan_reduction(eps, c, N);
                os << plan.T_planned << ',' << plan.params.t << ',' << plan.params.q << ','
                   << plan.params.R_space_size << ',' << plan.params.L_bits << ','
                   << to_string_u128(plan.d_prime) << ',' << plan.delta_string() << ",\n";
            } catch (const std::exception& e) {
                std::string note = e.what();
                for (auto& ch : note)
                    if (ch == ',' || ch == '\n') ch = ';';
                os << "NA,NA,NA,NA,NA,NA,NA," << note << '\n';
            }
        }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for exact-probability inner-product protocols and closest-pair reductions"};
    app.require_subcommand(1);

    std::string out_path, in_path, kind = "ip-planted", strategy, target, transcript_path;
    std::string eps_list = "1", c_list = "1,2,4,8,16", format = "csv";
    std::size_t N = 8, dim = 16, count = 10;
    std::int64_t sigma = 4, T = 2, gq = 1;
    std::uint64_t seed = 1, bigN = 1u << 20, samples = 0;
    double lp = 2.0;
    bool verify = false;

    auto* gen = app.add_subcommand("gen", "generate an instance file");
    gen->add_option("--kind", kind, "ip-planted | ip-unplanted | maxip");
    gen->add_option("--n", N, "vectors per side");
    gen->add_option("--d", dim, "dimension");
    gen->add_option("--sigma", sigma, "target inner product (ip kinds)");
    gen->add_option("--seed", seed, "rng seed");
    gen->add_option("--out", out_path, "output path (default stdout)");

    auto* prot = app.add_subcommand("protocol-run", "exact acceptance probabilities per pair and message");
    prot->add_option("--in", in_path, "ip instance file")->required();
    prot->add_option("--T", T, "matrix row length");
    prot->add_option("--strategy", strategy, "adversarial message strategy (omit for honest only)");
    prot->add_option("--count", count, "adversarial messages per pair");
    prot->add_option("--seed", seed, "rng seed");
    prot->add_option("--transcript", transcript_path, "dump per-point transcript of pair (0,0) honest run");
    prot->add_option("--out", out_path, "output path (default stdout)");

    auto* red = app.add_subcommand("reduce", "transform an instance toward another problem");
    red->add_option("--in", in_path, "input instance file")->required();
    red->add_option("--target", target, "maxip | cp-hamming | cp-lp | cp-edit | minip")->required();
    red->add_option("--T", T, "matrix row length (maxip target)");
    red->add_option("--p", lp, "l_p exponent (cp-lp target)");
    red->add_option("--seed", seed, "rng seed (message selection)");
    red->add_flag("--verify", verify, "run brute-force gap checks; affects exit code and stderr only");
    red->add_option("--out", out_path, "output path (default stdout)");

    auto* sol = app.add_subcommand("solve", "brute-force solve an instance file");
    sol->add_option("--in", in_path, "instance file")->required();
    sol->add_option("--p", lp, "override l_p exponent");
    sol->add_option("--out", out_path, "output path (default stdout)");

    auto* vg = app.add_subcommand("verify-gadget", "check the encoding identity exhaustively or by sampling");
    vg->add_option("--T", T, "vector length");
    vg->add_option("--q", gq, "entry bound");
    vg->add_option("--samples", samples, "0 = exhaustive (materialized), else structured sample count");
    vg->add_option("--seed", seed, "rng seed (sample mode)");
    vg->add_option("--out", out_path, "output path (default stdout)");

    auto* sw = app.add_subcommand("sweep", "planner sweep as CSV");
    sw->add_option("--epsilon", eps_list, "comma-separated epsilon values");
    sw->add_option("--c", c_list, "comma-separated c values");
    sw->add_option("--N", bigN, "instance count the plan is sized for");
    sw->add_option("--format", format, "output format (csv)");
    sw->add_option("--out", out_path, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        Sink sink;
        sink.open(out_path);
        if (gen->parsed()) return cmd_gen(kind, N, dim, sigma, seed, sink);
        if (prot->parsed()) return cmd_protocol_run(in_path, T, strategy, count, seed, transcript_path, sink);
        if (red->parsed()) return cmd_reduce(in_path, target, T, lp, verify, seed, sink);
        if (sol->parsed()) return cmd_solve(in_path, sol->count("--p") ? lp : 0.0, sink);
        if (vg->parsed()) return cmd_verify_gadget(T, gq, samples, seed, sink);
        if (sw->parsed()) return cmd_sweep(eps_list, c_list, bigN, format, sink);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

// End-to-end tour at desk scale: plant an inner-product witness, prove it
// with exact probability 1, reduce to the structured Max-IP instance whose
// planted value is W * Gamma, then walk the metric chain down to edit
// distance.

#include <iostream>

#include <fgred/instances.hpp>
#include <fgred/protocol.hpp>
#include <fgred/reduce.hpp>
#include <fgred/solvers.hpp>

using namespace fgred;

int main() {
    IPInstance inst = gen_planted_ip(6, 12, 5, 2024);
    std::cout << "instance: N=6 d=12 sigma=5 prov=" << inst.prov << "\n";

    ProtocolParams params = plan_protocol(12, 4);
    ProtocolContext ctx(params);
    std::cout << "protocol: T=" << params.T << " t=" << params.t << " primes=" << params.primes.size()
              << " q=" << params.q << " sample_space=" << params.R_space_size
              << " message_bits=" << params.L_bits << "\n";

    IPWitness w = solve_ip(inst.A, inst.B, inst.sigma);
    std::cout << "witness pair: (" << w.a_index << "," << w.b_index << ")\n";
    MerlinMessage proof = honest_merlin(ctx, inst.A[w.a_index], inst.B[w.b_index]);
    Rational acc = acceptance_probability(ctx, inst.A[w.a_index], inst.B[w.b_index], inst.sigma, proof);
    std::cout << "honest acceptance on the witness pair: " << acc.to_string() << "\n";

    Rational worst(0, 1);
    auto liars = adversarial_merlin_samples(ctx, inst.A[w.a_index], inst.B[w.b_index], inst.sigma + 1,
                                            MerlinStrategy::HonestWrongSigma, 25, 7);
    for (const auto& m : liars) {
        Rational p = acceptance_probability(ctx, inst.A[w.a_index], inst.B[w.b_index], inst.sigma + 1, m);
        if (worst < p) worst = p;
    }
    std::cout << "best lying acceptance for sigma+1 over 25 messages: " << worst.to_string()
              << "  (bound 49/50)\n";

    GadgetSpec spec = build_gadget(params.T, params.q);
    EncodedMaxIP enc = ip_to_apx_maxip(ctx, inst, proof, spec);
    std::cout << "reduced: W=" << enc.W << " Gamma=" << spec.Gamma << " dim=" << to_string_u128(enc.dim())
              << "\n";
    std::cout << "planted reduced value: " << enc.ip(w.a_index, w.b_index)
              << " = W*Gamma: " << std::int64_t(enc.W) * spec.Gamma << "\n";

    MaxIPInstance mi = gen_random_maxip(5, 8, 99);
    std::int64_t mx = solve_maxip(mi.A, mi.B).exact;
    CPInstance cph = maxip_to_cp_hamming(mi);
    std::cout << "metric chain on a random maxip instance (d=8): max=" << mx
              << " hamming_min=" << solve_cp_hamming(cph.A, cph.B).exact << " (2d-2max=" << 2 * 8 - 2 * mx
              << ")\n";

    CPInstance small;
    small.metric = Metric::Hamming;
    Rng rng(5);
    for (int i = 0; i < 4; ++i) small.A.push_back(random_bits(rng, 8));
    for (int i = 0; i < 4; ++i) small.B.push_back(random_bits(rng, 8));
    CPInstance cpe = cp_hamming_to_edit(small);  // d = 8: DP validation runs inline
    std::cout << "edit lift at d=8: hamming_min=" << solve_cp_hamming(small.A, small.B).exact
              << " edit_min=" << solve_cp_edit(cpe.SA, cpe.SB).exact << " (factor " << kEditCostPerBit
              << ", DP-validated)\n";
    return 0;
}

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int rc = -1;
    std::string out, err;
};

const fs::path& scratch() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "fgred-cli-tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs the tool with the given arguments, capturing exit code and streams.
CliResult run(const std::string& args) {
    const char* bin = std::getenv("FGRED_BIN");
    REQUIRE(bin != nullptr);
    static int counter = 0;
    fs::path out = scratch() / ("out" + std::to_string(counter));
    fs::path err = scratch() / ("err" + std::to_string(counter));
    ++counter;
    std::string cmd = std::string("'") + bin + "' " + args + " > '" + out.string() + "' 2> '" + err.string() + "'";
    int status = std::system(cmd.c_str());
    CliResult r;
    r.rc = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path file(const std::string& name) { return scratch() / name; }

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

} // namespace

TEST_CASE("gen emits parseable instances and is seed-deterministic") {
    auto a = run("gen --kind ip-planted --n 4 --d 10 --sigma 3 --seed 5");
    CHECK(a.rc == 0);
    CHECK(a.out.substr(0, 9) == "FGRED v1 ");
    CHECK(a.out.find("ip N=4 d=10 sigma=3") != std::string::npos);
    CHECK(count_lines(a.out) == 9); // header + 2N vectors
    auto b = run("gen --kind ip-planted --n 4 --d 10 --sigma 3 --seed 5");
    CHECK(b.out == a.out);
    auto c = run("gen --kind ip-planted --n 4 --d 10 --sigma 3 --seed 6");
    CHECK(c.out != a.out);

    // --out writes the same bytes to a file instead.
    auto d = run("gen --kind ip-planted --n 4 --d 10 --sigma 3 --seed 5 --out '" + file("g1.ip").string() + "'");
    CHECK(d.rc == 0);
    CHECK(d.out.empty());
    CHECK(slurp(file("g1.ip")) == a.out);
}

TEST_CASE("gen then solve round trip") {
    REQUIRE(run("gen --kind ip-planted --n 4 --d 10 --sigma 3 --seed 7 --out '" + file("p.ip").string() + "'").rc == 0);
    auto s = run("solve --in '" + file("p.ip").string() + "'");
    CHECK(s.rc == 0);
    CHECK(s.out.find("ip sigma=3 found=1 pair=") == 0);

    REQUIRE(run("gen --kind ip-unplanted --n 3 --d 8 --sigma 4 --seed 7 --out '" + file("u.ip").string() + "'").rc == 0);
    auto su = run("solve --in '" + file("u.ip").string() + "'");
    CHECK(su.out.find("found=0") != std::string::npos);

    REQUIRE(run("gen --kind maxip --n 4 --d 8 --seed 9 --out '" + file("m.maxip").string() + "'").rc == 0);
    auto sm = run("solve --in '" + file("m.maxip").string() + "'");
    CHECK(sm.rc == 0);
    CHECK(sm.out.find("maxip max=") == 0);

    auto bad = run("gen --kind nonsense");
    CHECK(bad.rc != 0);
}

TEST_CASE("protocol-run reports exact rationals and a full transcript") {
    REQUIRE(run("gen --kind ip-planted --n 2 --d 6 --sigma 2 --seed 11 --out '" + file("pr.ip").string() + "'").rc == 0);
    auto r = run("protocol-run --in '" + file("pr.ip").string() + "' --T 2 --transcript '" +
                 file("pr.transcript").string() + "'");
    CHECK(r.rc == 0);
    CHECK(r.out.find("plan d=6 padded=6 T=2 t=2 k=3") == 0);
    CHECK(r.out.find("sigma 2\n") != std::string::npos);
    CHECK(r.out.find(" p=1/1") != std::string::npos); // the planted witness pair
    CHECK(count_lines(r.out) == 2 + 4);               // plan, sigma, 2x2 honest pairs

    // Transcript: one line per sample point (R = 20 primes * 4 * 30 rows).
    CHECK(count_lines(slurp(file("pr.transcript"))) == 2400);

    auto adv = run("protocol-run --in '" + file("pr.ip").string() +
                   "' --T 2 --strategy honest-wrong-sigma --count 2 --seed 3");
    CHECK(adv.rc == 0);
    CHECK(adv.out.find("adversarial strategy=honest-wrong-sigma count=2 seed=3") != std::string::npos);
    CHECK(adv.out.find("adv pair=") != std::string::npos);
    auto adv2 = run("protocol-run --in '" + file("pr.ip").string() +
                    "' --T 2 --strategy honest-wrong-sigma --count 2 --seed 3");
    CHECK(adv2.out == adv.out);

    auto badstrat = run("protocol-run --in '" + file("pr.ip").string() + "' --T 2 --strategy clever");
    CHECK(badstrat.rc == 3);
    CHECK(badstrat.err.find("error:") == 0);
}

TEST_CASE("reduce builds the structured instance and verifies the gap") {
    REQUIRE(run("gen --kind ip-planted --n 2 --d 4 --sigma 2 --seed 13 --out '" + file("r.ip").string() + "'").rc == 0);
    auto r = run("reduce --in '" + file("r.ip").string() + "' --target maxip --T 2 --verify --out '" +
                 file("r.enc").string() + "'");
    CHECK(r.rc == 0);
    CHECK(r.err.find("message honest witness=") != std::string::npos);
    CHECK(r.err.find("ok=1") != std::string::npos);
    std::string enc_text = slurp(file("r.enc"));
    CHECK(enc_text.find("FGRED v1 maxip-enc N=2") == 0);
    CHECK(enc_text.find("gadget T=2 q=79") != std::string::npos);

    // --verify must not change the emitted artifact, only stderr/exit code.
    auto r2 = run("reduce --in '" + file("r.ip").string() + "' --target maxip --T 2 --out '" +
                  file("r2.enc").string() + "'");
    CHECK(r2.rc == 0);
    CHECK(slurp(file("r2.enc")) == enc_text);

    auto s = run("solve --in '" + file("r.enc").string() + "'");
    CHECK(s.rc == 0);
    CHECK(s.out.find("maxip-enc max=498581008000 ") == 0); // 1600 * (2*12482^2 + 12482)
    CHECK(s.out.find("W=1600") != std::string::npos);

    // This instance is far beyond the materialization cap, and the tool says
    // so instead of trying.
    auto mat = run("reduce --in '" + file("r.enc").string() + "' --target cp-hamming");
    CHECK(mat.rc == 3);
    CHECK(mat.err.find("materialization cap") != std::string::npos);
}

TEST_CASE("metric reduction chain down to l2 and edit") {
    // d = 2 keeps the lifted cp dimension (6) inside the edit reduction's
    // inline validation cap, so the bit-code law is checked by DP en route.
    REQUIRE(run("gen --kind maxip --n 3 --d 2 --seed 17 --out '" + file("c.maxip").string() + "'").rc == 0);
    auto ham = run("reduce --in '" + file("c.maxip").string() + "' --target cp-hamming --verify --out '" +
                   file("c.cp").string() + "'");
    CHECK(ham.rc == 0);
    CHECK(ham.err.find("ok=1") != std::string::npos);
    CHECK(slurp(file("c.cp")).find("cp N=3 d=6 metric=hamming") != std::string::npos);

    auto flip = run("reduce --in '" + file("c.maxip").string() + "' --target minip --verify --out '" +
                    file("c.minip").string() + "'");
    CHECK(flip.rc == 0);
    CHECK(flip.err.find("ok=1") != std::string::npos);
    auto sflip = run("solve --in '" + file("c.minip").string() + "'");
    CHECK(sflip.out.find("minip min=") == 0);

    auto l2 = run("reduce --in '" + file("c.cp").string() + "' --target cp-lp --p 2 --verify --out '" +
                  file("c.l2").string() + "'");
    CHECK(l2.rc == 0);
    CHECK(l2.err.find("ok=1") != std::string::npos);
    CHECK(slurp(file("c.l2")).find("metric=l2") != std::string::npos);
    auto sl2 = run("solve --in '" + file("c.l2").string() + "'");
    CHECK(sl2.rc == 0);
    CHECK(sl2.out.find("cp metric=l2 min_base=") == 0);

    auto ed = run("reduce --in '" + file("c.cp").string() + "' --target cp-edit --verify --out '" +
                  file("c.edit").string() + "'");
    CHECK(ed.rc == 0);
    CHECK(ed.err.find("c_ed=2 ok=1") != std::string::npos);
    auto sed = run("solve --in '" + file("c.edit").string() + "'");
    CHECK(sed.out.find("cp metric=edit min=") == 0);

    // Solving an lp instance without --p uses the p stored in the file.
    auto l3 = run("reduce --in '" + file("c.cp").string() + "' --target cp-lp --p 3 --out '" +
                  file("c.l3").string() + "'");
    CHECK(l3.rc == 0);
    auto sl3 = run("solve --in '" + file("c.l3").string() + "'");
    CHECK(sl3.out.find("cp metric=l3 min_base=") == 0);
}

TEST_CASE("verify-gadget runs exhaustively for tiny shapes and sampled at scale") {
    auto v1 = run("verify-gadget --T 1 --q 2");
    CHECK(v1.rc == 0);
    CHECK(v1.out.find("gadget T=1 q=2 M=4 Gamma=36 dim=116") == 0);
    CHECK(v1.out.find("exhaustive combos=45 ok=1") != std::string::npos);

    auto v2 = run("verify-gadget --T 2 --q 1");
    CHECK(v2.rc == 0);
    CHECK(v2.out.find("ok=1") != std::string::npos);

    auto v3 = run("verify-gadget --T 2 --q 79 --samples 40 --seed 3");
    CHECK(v3.rc == 0);
    CHECK(v3.out.find("samples=40 ok=1") != std::string::npos);
    auto v3b = run("verify-gadget --T 2 --q 79 --samples 40 --seed 3");
    CHECK(v3b.out == v3.out);
}

TEST_CASE("sweep prints one CSV row per parameter point") {
    auto s = run("sweep --epsilon 1 --c 1,2 --N 1048576");
    CHECK(s.rc == 0);
    std::istringstream is(s.out);
    std::string header, row1, row2;
    REQUIRE(std::getline(is, header));
    CHECK(header == "epsilon,c,T,t,q,R_space_size,L_bits,d_prime,delta,note");
    REQUIRE(std::getline(is, row1));
    REQUIRE(std::getline(is, row2));
    CHECK(row1.substr(0, 4) == "1,1,");
    CHECK(row2.substr(0, 4) == "1,2,");

    // delta shrinks as c grows (rows share epsilon).
    auto delta_of = [](const std::string& row) {
        std::istringstream rs(row);
        std::string tok;
        for (int i = 0; i < 9; ++i) std::getline(rs, tok, ',');
        auto slash = tok.find('/');
        REQUIRE(slash != std::string::npos);
        return std::stod(tok.substr(0, slash)) / std::stod(tok.substr(slash + 1));
    };
    CHECK(delta_of(row1) > delta_of(row2));

    auto again = run("sweep --epsilon 1 --c 1,2 --N 1048576");
    CHECK(again.out == s.out);

    auto bad = run("sweep --format json");
    CHECK(bad.rc != 0);
}

#include "support.hpp"
#include "symdiv/io.hpp"

#include <doctest.h>

#include <numeric>

using namespace symdiv;
using namespace symdiv::testing;

namespace {

// Multiplicities from the continued fraction of p/q: each quotient a
// contributes a copies of the current divisor.
std::vector<int64_t> euclid_weights(int64_t p, int64_t q) {
    std::vector<int64_t> out;
    if (p < q) std::swap(p, q);
    while (q > 0) {
        for (int64_t i = 0; i < p / q; ++i) out.push_back(q);
        int64_t r = p % q;
        p = q;
        q = r;
    }
    return out;
}

ConfigDocument fixture(const std::string& name) {
    return config_from_json(read_json_file(std::string(SYMDIV_FIXTURES) + "/" + name));
}

// Chain D1 (-2), D2 (+2), D3 (-1) with a = (2, -2): a (5,2) cusp class.
DivisorConfig chain_5_2() {
    return with_forced_edges(
        make_config(Ambient::rational_blowup(3), {{"D1", "E1-E2"}, {"D2", "2H-E1-E3"}, {"D3", "E3"}}));
}

}  // namespace

TEST_CASE("weight sequences") {
    CHECK(weight_sequence(5, 2).weights == std::vector<int64_t>{2, 2, 1, 1});
    CHECK(weight_sequence(1, 1).weights == std::vector<int64_t>{1});
    CHECK(weight_sequence(8, 3).weights == std::vector<int64_t>{3, 3, 2, 1, 1});
    CHECK(weight_sequence(3, 8).weights == std::vector<int64_t>{3, 3, 2, 1, 1});
    CHECK(weight_sequence(1, 0).weights.empty());
    CHECK(weight_sequence(0, 1).weights.empty());
    CHECK_THROWS_AS(weight_sequence(6, 4), std::invalid_argument);
    CHECK_THROWS_AS(weight_sequence(-1, 2), std::invalid_argument);
}

TEST_CASE("oracle: weights agree with the continued fraction expansion") {
    for (int64_t p = 1; p <= 80; ++p)
        for (int64_t q = 1; q <= 80; ++q)
            if (std::gcd(p, q) == 1) CHECK(weight_sequence(p, q).weights == euclid_weights(p, q));
}

TEST_CASE("property: weight identities up to 200") {
    for (int64_t p = 1; p <= 200; ++p)
        for (int64_t q = 1; q < p; ++q) {
            if (std::gcd(p, q) != 1) continue;
            const auto w = weight_sequence(p, q).weights;
            int64_t s1 = 0, s2 = 0;
            for (int64_t m : w) {
                s1 += m;
                s2 += m * m;
            }
            REQUIRE(s2 == p * q);
            REQUIRE(s1 == p + q - 1);
        }
}

TEST_CASE("associated sequences") {
    CHECK(associated_sequence({2, 2, -2}) == std::vector<int64_t>{1, 2, 3});
    CHECK(associated_sequence({5}) == std::vector<int64_t>{1});
    CHECK(associated_sequence({2, 2, 2, 2}) == std::vector<int64_t>{1, 2, 3, 4});
}

TEST_CASE("admissible check") {
    Admissible a = admissible_check({2, 2, -2});
    CHECK(a.accepted);
    CHECK(a.p == 8);
    CHECK(a.q == 3);
    Admissible b = admissible_check({0, 1, 0});
    CHECK_FALSE(b.accepted);
    CHECK(b.rejection.find("c_3") != std::string::npos);
    Admissible c = admissible_check({1, 0});
    CHECK(c.accepted);
    CHECK(c.c == std::vector<int64_t>{1, 1});
    CHECK(c.p == 1);
    CHECK(c.q == 1);
    CHECK_FALSE(admissible_check({2, 2}).accepted);  // p = 1 - 2*2 < 0
    CHECK_FALSE(admissible_check({}).accepted);
}

TEST_CASE("property: accepted sequences give coprime pairs") {
    // every sequence of length <= 4 with entries in [-6, 6]
    int accepted = 0;
    for (int len = 1; len <= 4; ++len) {
        std::vector<int64_t> a(len, -6);
        while (true) {
            Admissible r;
            CHECK_NOTHROW(r = admissible_check(a));
            if (r.accepted) {
                ++accepted;
                CHECK(std::gcd(r.p, r.q) == 1);
                CHECK(r.p > 0);
                for (int64_t c : r.c) CHECK(c >= 0);
            }
            int i = 0;
            while (i < len && a[i] == 6) a[i++] = -6;
            if (i == len) break;
            ++a[i];
        }
    }
    CHECK(accepted > 100);
}

TEST_CASE("cusp class of a (5,2) chain") {
    DivisorConfig cfg = chain_5_2();
    REQUIRE(validate(cfg).empty());
    Admissible adm = admissible_check({2, -2});
    REQUIRE(adm.accepted);
    CHECK(adm.p == 5);
    CHECK(adm.q == 2);
    CuspClass cc = cusp_class(cfg, {"D1", "D2", "D3"}, adm);
    CHECK(cc.A == parse_class(cfg.ambient(), "4H-E1-E2-2E3"));
    CHECK(square(cc.A) == 10);
    CHECK(all_pass(cc.checks));
    CHECK(cc.checks.size() == 5);

    Resolution res = resolve_pattern(cfg, cc.A, cc.da, cc.db, 5, 2);
    CHECK(res.weights == std::vector<int64_t>{2, 2, 1, 1});
    CHECK(all_pass(res.checks));
    HomologyClass expect = res.embed.apply(cc.A);
    for (size_t i = 0; i < 4; ++i) expect -= res.weights[i] * res.exceptional[i];
    CHECK(res.a_tilde == expect);

    PositiveCombination pc = positive_combination(cfg, res, 2, cc.da);
    CHECK(pc.nonnegative);
    CHECK(pc.reproduces);
    for (size_t i = 0; i < res.exceptional_ids.size(); ++i) {
        const auto& id = res.exceptional_ids[i];
        CHECK(pc.coefficients.at(id) == (i == 2 ? 1 : 0));
        if (i == 2) CHECK(res.config.component(id).cls == res.exceptional[2] - res.exceptional[3]);
    }
}

TEST_CASE("small resolutions") {
    // (1,1): one blowup at D1 n D2
    const Ambient P = Ambient::projective_plane();
    DivisorConfig lines = make_config(P, {{"D1", "H"}, {"D2", "H"}}, {{"D1", "D2"}});
    const HomologyClass h = generator(P, 0);
    Resolution r11 = resolve_pattern(lines, h, "D1", "D2", 1, 1);
    REQUIRE(r11.weights == std::vector<int64_t>{1});
    CHECK(r11.a_tilde == r11.embed.apply(h) - r11.exceptional[0]);
    PositiveCombination z = positive_combination(lines, r11, 1, "D1");
    CHECK(z.target.is_zero());
    for (const auto& [id, c] : z.coefficients) CHECK(c == 0);

    Resolution r21 = resolve_pattern(lines, 2 * h, "D1", "D2", 2, 1);
    PositiveCombination z2 = positive_combination(lines, r21, 1, "D1");
    CHECK(z2.target.is_zero());
    for (const auto& [id, c] : z2.coefficients) CHECK(c == 0);
    CHECK(z2.reproduces);
}

TEST_CASE("degenerate (1,0) identities") {
    const Ambient C = Ambient::rational_blowup(1);
    DivisorConfig cfg = with_forced_edges(make_config(C, {{"S", "H"}, {"T", "H-E1"}}));
    const HomologyClass f = fiber_f(C);
    auto ids = cusp_identities(cfg, f, 1, 0, "S", "");
    CHECK(all_pass(ids));
    Resolution r = resolve_pattern(cfg, f, "S", "", 1, 0);
    CHECK(r.weights.empty());
    CHECK(r.a_tilde == f);
    CHECK(all_pass(r.checks));
}

TEST_CASE("blowing up the cusp point") {
    int64_t m = 0;
    CuspState s = blowup_cusp_point({8, 3, "a", "b"}, "e", &m);
    CHECK(m == 3);
    CHECK(s.p == 5);
    CHECK(s.q == 3);
    CHECK(s.da == "a");
    CHECK(s.db == "e");
    s = blowup_cusp_point({2, 5, "a", "b"}, "e", &m);
    CHECK(m == 2);
    CHECK(s.p == 2);
    CHECK(s.q == 3);
    CHECK(s.da == "e");
    s = blowup_cusp_point({1, 1, "a", "b"}, "e", &m);
    CHECK(m == 1);
    CHECK(s.p == 1);
    CHECK(s.q == 0);
    CHECK(s.db.empty());
}

TEST_CASE("property: cusp identities on random admissible chains") {
    Rng rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        AdmissibleChain ac = random_admissible_chain(rng);
        const DivisorConfig& cfg = ac.chain.config;
        CuspClass cc = cusp_class(cfg, ac.chain.order, ac.adm);
        CAPTURE(cc.A.str());
        CHECK(all_pass(cc.checks));
        Resolution res = resolve_pattern(cfg, cc.A, cc.da, cc.db, cc.p, cc.q);
        CHECK(all_pass(res.checks));
        CHECK(square(res.a_tilde) == 0);
        CHECK(pair(res.a_tilde, canonical(res.config.ambient())) == -2);
        PositiveCombination pc = positive_combination(cfg, res, cc.q, cc.da);
        CHECK(pc.nonnegative);
        CHECK(pc.reproduces);
    }
}

TEST_CASE("certificate for the thirteen-point example") {
    auto doc = fixture("thirteen_point.json");
    AffineRuledCertificate cert = certify_affine_ruled(doc.config, *doc.areas);
    CHECK(cert.route == "admissible-subchain");
    CHECK(cert.p == 8);
    CHECK(cert.q == 3);
    CHECK(cert.a == std::vector<int64_t>{2, 2, -2});
    CHECK(cert.c == std::vector<int64_t>{1, 2, 3});
    CHECK(cert.A == parse_class(cert.A.ambient(), "6H-3E1-E2-E3-E7"));
    CHECK(square(cert.A) == 24);
    CHECK(pair(cert.A, canonical(cert.A.ambient())) == -12);
    CHECK(cert.weights.weights == std::vector<int64_t>{3, 3, 2, 1, 1});
    CHECK(square(cert.a_tilde) == 0);
    CHECK(pair(cert.a_tilde, canonical(cert.a_tilde.ambient())) == -2);
    CHECK(all_pass(cert.checks));
    CHECK(all_pass(verify_certificate(cert)));
    CHECK_FALSE(cert.assumptions.empty());

    // tampering with the stored class is caught
    AffineRuledCertificate bad = cert;
    bad.A = bad.A + generator(bad.A.ambient(), 0);
    CHECK_FALSE(all_pass(verify_certificate(bad)));
    AffineRuledCertificate bad_p = cert;
    bad_p.p = 7;
    CHECK_FALSE(all_pass(verify_certificate(bad_p)));
}

TEST_CASE("certificates along the other routes") {
    auto comb = fixture("ruled_comb.json");
    AffineRuledCertificate rc = certify_affine_ruled(comb.config, *comb.areas);
    CHECK(rc.route == "ruled-fiber");
    CHECK(rc.A == generator(rc.A.ambient(), "F"));
    CHECK(all_pass(verify_certificate(rc)));

    auto second = fixture("second_kind.json");
    AffineRuledCertificate sc = certify_affine_ruled(second.config, *second.areas);
    CHECK(sc.route == "comb");
    CHECK(all_pass(verify_certificate(sc)));

    auto conic = fixture("conic_cp2.json");
    AffineRuledCertificate cc = certify_affine_ruled(conic.config, *conic.areas);
    CHECK(cc.route == "A3'-special");
    CHECK(cc.A == parse_class(cc.A.ambient(), "2H-e1-e2-e3-e4"));
    CHECK(all_pass(verify_certificate(cc)));

    auto cubic = fixture("cubic_cp2.json");
    try {
        certify_affine_ruled(cubic.config, *cubic.areas);
        FAIL("expected a stage error");
    } catch (const StageError& e) {
        CHECK(e.stage() == "hypothesis");
    }
}

#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace symdiv;
using namespace symdiv::testing;

namespace {

// Every class in the coefficient box with square -1, K-pairing -1, positive
// area and area <= bound, by exhaustive scan.
std::set<std::vector<int64_t>> brute_force(const AreaVector& w, int64_t box, std::optional<Rational> bound) {
    const Ambient& amb = w.ambient();
    const HomologyClass K = canonical(amb);
    std::set<std::vector<int64_t>> out;
    std::vector<int64_t> v(amb.rank(), -box);
    while (true) {
        HomologyClass c(amb, v);
        if (square(c) == -1 && pair(K, c) == -1) {
            Rational a = area(c, w);
            if (a > 0 && (!bound || a <= *bound)) out.insert(v);
        }
        size_t i = 0;
        while (i < v.size() && v[i] == box) v[i++] = -box;
        if (i == v.size()) break;
        ++v[i];
    }
    return out;
}

std::set<std::vector<int64_t>> as_set(const ExceptionalSet& s) {
    std::set<std::vector<int64_t>> out;
    for (const auto& c : s.classes) out.insert(c.coeffs());
    return out;
}

AreaVector random_rational_areas(Rng& rng, int n) {
    // H = 1 and decreasing exceptional areas below 1/(n+1)
    std::vector<Rational> w{1};
    int64_t d = n + 2;
    for (int i = 0; i < n; ++i) {
        d += uniform(rng, 1, 5);
        w.push_back(Rational(uniform(rng, 1, 3), 3 * d));
    }
    std::sort(w.begin() + 1, w.end(), std::greater<>());
    return AreaVector(Ambient::rational_blowup(n), w);
}

}  // namespace

TEST_CASE("enumeration on the two-point blowup") {
    const Ambient C = Ambient::rational_blowup(2);
    const AreaVector w = areas(C, {"1", "1/3", "1/4"});
    ExceptionalSet s = enumerate_exceptional(w, std::nullopt);
    REQUIRE(s.classes.size() == 3);
    CHECK(s.classes[0] == parse_class(C, "E2"));
    CHECK(s.areas[0] == Rational(1, 4));
    CHECK(s.classes[1] == parse_class(C, "E1"));
    CHECK(s.areas[1] == Rational(1, 3));
    CHECK(s.classes[2] == parse_class(C, "H-E1-E2"));
    CHECK(s.areas[2] == Rational(5, 12));
    CHECK(minimal_area(s) == std::vector<HomologyClass>{parse_class(C, "E2")});
    CHECK(minimal_exceptional(w) == std::vector<HomologyClass>{parse_class(C, "E2")});
}

TEST_CASE("enumeration on minimal and ruled ambients") {
    CHECK(enumerate_exceptional(areas(Ambient::projective_plane(), {"1"}), std::nullopt).classes.empty());
    const Ambient R = Ambient::ruled_trivial(2, 1);
    ExceptionalSet s = enumerate_exceptional(areas(R, {"3", "1", "1/4"}), std::nullopt);
    std::set<std::vector<int64_t>> got = as_set(s);
    CHECK(got.count(parse_class(R, "E1").coeffs()));
    CHECK(got.count(parse_class(R, "F-E1").coeffs()));
    CHECK(got.size() == 2);
}

TEST_CASE("ties in minimal area are all returned") {
    const Ambient C = Ambient::rational_blowup(3);
    const AreaVector w = areas(C, {"1", "1/5", "1/5", "1/7"});
    ExceptionalSet s = enumerate_exceptional(w, Rational(1, 4));
    CHECK(minimal_area(s) == std::vector<HomologyClass>{parse_class(C, "E3")});
    const AreaVector tie = areas(C, {"1", "1/5", "1/7", "1/7"});
    auto m = minimal_area(enumerate_exceptional(tie, std::nullopt));
    CHECK(m.size() == 2);
}

TEST_CASE("default area bound is the cheapest generator") {
    const Ambient C = Ambient::rational_blowup(3);
    CHECK(default_area_bound(areas(C, {"1", "1/5", "1/9", "1/7"})) == Rational(1, 9));
    CHECK_FALSE(default_area_bound(areas(Ambient::projective_plane(), {"1"})).has_value());
}

TEST_CASE("oracle: enumeration matches an exhaustive scan") {
    Rng rng(21);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 2 + trial % 3;
        const AreaVector w = random_rational_areas(rng, n);
        const int64_t box = 4;
        for (std::optional<Rational> bound : {std::optional<Rational>{}, std::optional<Rational>(w[n] * 3)}) {
            ExceptionalSet s = enumerate_exceptional(w, bound, box);
            CHECK(as_set(s) == brute_force(w, box, bound));
            for (size_t i = 0; i < s.classes.size(); ++i) {
                CHECK(is_exceptional_class(s.classes[i]));
                CHECK(s.areas[i] == area(s.classes[i], w));
                if (i) CHECK(s.areas[i - 1] <= s.areas[i]);
            }
        }
    }
}

TEST_CASE("determinism: parallel enumeration equals the serial reference") {
    Rng rng(22);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 5 + trial % 4;
        const AreaVector w = random_rational_areas(rng, n);
        for (std::optional<Rational> bound : {std::optional<Rational>(Rational(1, 2)), std::optional<Rational>(w[1])}) {
            ExceptionalSet ref = enumerate_exceptional_serial(w, bound);
            for (int rep = 0; rep < 3; ++rep) {
                ExceptionalSet par = enumerate_exceptional(w, bound);
                CHECK(par.classes == ref.classes);
                CHECK(par.areas == ref.areas);
                CHECK(par.incomplete == ref.incomplete);
            }
        }
    }
}

TEST_CASE("property: minimal area ignores enumeration order") {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const AreaVector w = random_rational_areas(rng, 2 + trial % 4);
        ExceptionalSet s = enumerate_exceptional(w, std::nullopt, 6);
        auto expect = minimal_area(s);
        std::vector<size_t> idx(s.classes.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        ExceptionalSet t = s;
        for (size_t i = 0; i < idx.size(); ++i) {
            t.classes[i] = s.classes[idx[i]];
            t.areas[i] = s.areas[idx[i]];
        }
        auto got = minimal_area(t);
        std::sort(got.begin(), got.end());
        std::sort(expect.begin(), expect.end());
        CHECK(got == expect);
    }
}

TEST_CASE("secondary chain") {
    const Ambient C = Ambient::rational_blowup(2);
    SecondaryChain sc = secondary_chain(areas(C, {"1", "1/3", "1/4"}));
    REQUIRE(sc.chain.size() == 1);
    CHECK(sc.chain[0] == parse_class(C, "E2"));
    const std::set<std::vector<int64_t>> pair_set{parse_class(C, "E1").coeffs(), parse_class(C, "H-E1-E2").coeffs()};
    CHECK(pair_set.count(sc.e1.coeffs()));
    CHECK(pair_set.count(sc.e1_prime.coeffs()));
    CHECK(sc.e1 != sc.e1_prime);

    Rng rng(24);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 4;
        SecondaryChain s = secondary_chain(random_rational_areas(rng, n));
        CHECK(static_cast<int>(s.chain.size()) == n - 1);
        for (size_t i = 0; i < s.chain.size(); ++i)
            for (size_t j = i + 1; j < s.chain.size(); ++j) CHECK(pair(s.chain[i], s.chain[j]) == 0);
        const int64_t m = pair(s.e1, s.e1_prime);
        if (s.tag == TerminalTag::ProductOfSpheres) CHECK(m == 0);
        else CHECK(m == 1);
    }
}

TEST_CASE("SW criterion") {
    const Ambient C = Ambient::rational_blowup(3);
    const AreaVector w = areas(C, {"1", "1/3", "1/4", "1/5"});
    for (const auto& e : enumerate_exceptional(w, std::nullopt).classes) CHECK(sw_nonzero(e, w));
    const Ambient R = Ambient::ruled_trivial(1, 1);
    CHECK(sw_nonzero(generator(R, "F"), areas(R, {"3", "1", "1/3"})));
    CHECK_FALSE(sw_nonzero(-generator(C, "H"), w));
    CHECK_FALSE(sw_nonzero(parse_class(C, "-E1"), w));
}

TEST_CASE("D-good conditions") {
    const Ambient R = Ambient::ruled_trivial(1, 1);
    const AreaVector w = areas(R, {"3", "1", "1/3"});
    const DivisorConfig comb = with_forced_edges(make_config(R, {{"S", "B"}, {"T", "F-E1"}}));
    REQUIRE(validate(comb, &w).empty());
    ExceptionalSet set = enumerate_exceptional(w, std::nullopt);
    auto checks = d_good(generator(R, "F"), comb, w, set);
    CHECK(checks.size() == 4);
    CHECK(all_pass(checks));

    auto bad = d_good(parse_class(R, "F-E1"), comb, w, set);
    CHECK_FALSE(all_pass(bad));
    bool component_failed = false;
    for (const auto& c : bad)
        if (c.name == "component-pairing") component_failed = !c.pass;
    CHECK(component_failed);

    // a non-primitive square-zero class
    auto twice = d_good(2 * generator(R, "F"), comb, w, set);
    CHECK_FALSE(all_pass(twice));
    CHECK_THROWS(d_good(HomologyClass(R), comb, w, set));
}

TEST_CASE("normalization to a basis generator") {
    const Ambient C = Ambient::rational_blowup(3);
    Normalization id = normalize_to_basis(generator(C, "E3"));
    CHECK(id.reflections == 0);
    CHECK(apply_matrix(id.matrix, generator(C, "H").coeffs()) == generator(C, "H").coeffs());

    Normalization n = normalize_to_basis(parse_class(C, "H-E1-E2"));
    CHECK(n.reflections == 1);
    CHECK(apply_matrix(n.matrix, parse_class(C, "H-E1-E2").coeffs()) == generator(C, "E3").coeffs());
    // x -> x + (x.c) c with c = H - E1 - E2 - E3 sends H - E1 - E2 to E3
    const HomologyClass c = parse_class(C, "H-E1-E2-E3");
    CHECK(reflect(parse_class(C, "H-E1-E2"), c) == generator(C, "E3"));

    const Ambient R = Ambient::ruled_trivial(1, 2);
    Normalization r = normalize_to_basis(parse_class(R, "F-E1"));
    CHECK(apply_matrix(r.matrix, parse_class(R, "F-E1").coeffs()) == generator(R, "E2").coeffs());
    CHECK(reflect(parse_class(R, "F-E1"), parse_class(R, "F-E1-E2")) == generator(R, "E2"));

    CHECK_THROWS(normalize_to_basis(parse_class(C, "H")));
}

TEST_CASE("property: normalizations are isometries fixing K") {
    Rng rng(25);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 3 + trial % 4;
        const AreaVector w = random_rational_areas(rng, n);
        const Ambient& amb = w.ambient();
        const auto K = canonical(amb).coeffs();
        for (const auto& e : enumerate_exceptional(w, std::nullopt, 5).classes) {
            Normalization t = normalize_to_basis(e);
            CHECK(apply_matrix(t.matrix, e.coeffs()) == generator(amb, amb.rank() - 1).coeffs());
            CHECK(apply_matrix(t.matrix, K) == K);
            for (int i = 0; i < amb.rank(); ++i) {
                const auto ui = apply_matrix(t.matrix, generator(amb, i).coeffs());
                CHECK(apply_matrix(t.inverse, ui) == generator(amb, i).coeffs());
                for (int j = 0; j < amb.rank(); ++j)
                    CHECK(amb.pair(ui, apply_matrix(t.matrix, generator(amb, j).coeffs())) == amb.form(i, j));
            }
        }
    }
}

#include <doctest.h>

#include "padic/formal_group.hpp"

using namespace padic;

namespace {

RingPtr z3(unsigned n = 20) { return Ring::zp(3, n); }

TruncatedSeries s(const RingPtr& r, std::vector<long> c, unsigned m) {
    return TruncatedSeries::from_integers(r, c, m);
}

mpq_class frac(long n, long d) {
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

}  // namespace

TEST_CASE("lubin-tate data validation") {
    RingPtr r = z3();
    CHECK_NOTHROW(LubinTateData::from_series(s(r, {0, 3, 0, 1}, 4)));
    CHECK_THROWS_AS(LubinTateData::from_series(s(r, {0, 4, 1}, 4)), Error);  // 4 not a uniformizer
    // 9x + ... : v(9) = 2, not a uniformizer
    CHECK_THROWS_AS(LubinTateData::from_series(s(r, {0, 9, 0, 30, 0, 27, 0, 9, 0, 1}, 9)), Error);
    // wrong residue shape: 3x + x^2 is not x^3 mod 3
    CHECK_THROWS_AS(LubinTateData::from_series(s(r, {0, 3, 1}, 3)), Error);
}

TEST_CASE("group construction: forced x + y at degree 2, frozen coefficients at degree 4") {
    RingPtr r3 = Ring::zp(3, 3);
    LubinTateData lt = LubinTateData::from_series(s(r3, {0, 3, 0, 1}, 4));

    FormalGroupLaw f2 = lubin_tate_group(lt, 2);
    CHECK(f2.law.coeff(1, 0).is_one());
    CHECK(f2.law.coeff(0, 1).is_one());
    CHECK(f2.law.coeff(2, 0).is_zero());
    CHECK(f2.law.coeff(1, 1).is_zero());
    CHECK(f2.law.coeff(0, 2).is_zero());

    FormalGroupLaw f4 = lubin_tate_group(lt, 4);
    CHECK(f4.law.coeff(2, 1) == RingElement(r3, 17));
    CHECK(f4.law.coeff(1, 2) == RingElement(r3, 17));
    // the defining identity, rechecked through the public verifier
    CHECK(verify_endomorphism(f4, s(r3, {0, 3, 0, 1}, 4)).ok());
}

TEST_CASE("restriction consistency: the degree-8 build restricts to the degree-4 build") {
    RingPtr r = z3();
    LubinTateData lt = LubinTateData::from_series(s(r, {0, 3, 0, 1}, 8));
    FormalGroupLaw f8 = lubin_tate_group(lt, 8);
    FormalGroupLaw f4 = lubin_tate_group(lt, 4);
    for (unsigned total = 0; total <= 4; ++total)
        for (unsigned j = 0; j <= total; ++j)
            CHECK(f8.law.coeff(total - j, j) == f4.law.coeff(total - j, j));
}

TEST_CASE("group law certificates accept the additive law and reject asymmetry") {
    RingPtr r = z3();
    BivariateSeries add = BivariateSeries::variable_x(r, 4) + BivariateSeries::variable_y(r, 4);
    CHECK(verify_group_law(FormalGroupLaw{add}).ok());

    BivariateSeries bad = add;
    bad.set_coeff(2, 0, RingElement::one(r));  // x + y + x^2
    Certificate cert = verify_group_law(FormalGroupLaw{bad});
    CHECK_FALSE(cert.ok());
    bool commutativity_failed = false;
    for (const auto& c : cert.checks)
        if (c.name == "commutativity" && c.status == CheckStatus::fail) commutativity_failed = true;
    CHECK(commutativity_failed);
}

TEST_CASE("endomorphism certificates") {
    RingPtr r = z3();
    LubinTateData lt = LubinTateData::from_series(s(r, {0, 3, 0, 1}, 8));
    FormalGroupLaw F = lubin_tate_group(lt, 8);
    CHECK(verify_endomorphism(F, TruncatedSeries::identity(r, 8)).ok());
    CHECK(verify_endomorphism(F, s(r, {0, 3, 0, 1}, 8)).ok());
    CHECK_FALSE(verify_endomorphism(F, s(r, {0, 9, 6, 1}, 8)).ok());
}

TEST_CASE("[a] homomorphisms: frozen [2], uniqueness of [3], ring relations") {
    RingPtr r3 = Ring::zp(3, 3);
    LubinTateData lt3 = LubinTateData::from_series(s(r3, {0, 3, 0, 1}, 6));
    CHECK(lt_hom(RingElement(r3, 1), lt3, lt3, 6) == TruncatedSeries::identity(r3, 6));
    TruncatedSeries two = lt_hom(RingElement(r3, 2), lt3, lt3, 6);
    CHECK(two.coeff(1) == RingElement(r3, 2));
    CHECK(two.coeff(3) == RingElement(r3, 7));

    RingPtr r = z3();
    LubinTateData lt = LubinTateData::from_series(s(r, {0, 3, 0, 1}, 12));
    CHECK(lt_hom(RingElement(r, 3), lt, lt, 12) == s(r, {0, 3, 0, 1}, 12));

    // additivity: [1+1] = F([1], [1]); multiplicativity: [2] o [3] = [6]
    FormalGroupLaw F = lubin_tate_group(lt, 12);
    TruncatedSeries one = TruncatedSeries::identity(r, 12);
    TruncatedSeries two20 = lt_hom(RingElement(r, 2), lt, lt, 12);
    CHECK(substitute_diagonal(F.law, one, one) == two20);
    TruncatedSeries six = lt_hom(RingElement(r, 6), lt, lt, 12);
    TruncatedSeries three = lt_hom(RingElement(r, 3), lt, lt, 12);
    CHECK(compose(two20, three) == six);
    CHECK(compose(three, two20) == six);
    CHECK(commutator_defect(two20, three).is_zero());
}

TEST_CASE("lubin-tate over a ramified base: t x + x^3 in Z_3[t]/(t^2+3)") {
    RingPtr e = Ring::make(3, 12, {mpz_class(3), mpz_class(0), mpz_class(1)},
                           ExtensionKind::eisenstein);
    RingElement t = RingElement::generator(e);
    TruncatedSeries f(e, 6);
    f.set_coeff(1, t);
    f.set_coeff(3, RingElement::one(e));
    LubinTateData lt = LubinTateData::make(t, f);
    CHECK(lt.q == 3);
    FormalGroupLaw F = lubin_tate_group(lt, 6);
    CHECK(verify_group_law(F).ok());
    CHECK(verify_endomorphism(F, f).ok());
    CHECK(lt_hom(t, lt, lt, 6) == f);  // [pi] = f by uniqueness
}

TEST_CASE("torsion ladder annotated with the closed form") {
    RingPtr r = z3();
    LubinTateData lt = LubinTateData::from_series(s(r, {0, 3, 0, 1}, 27));
    auto ladder = torsion_ladder(lt, 3);
    REQUIRE(ladder.size() == 3);
    for (const auto& lvl : ladder) CHECK(lvl.matches_prediction);
    CHECK(ladder[0].predicted_valuation == frac(1, 2));
    CHECK(ladder[1].predicted_valuation == frac(1, 6));
    CHECK(ladder[2].predicted_count == 18);
    CHECK(torsion_ladder(lt, 0).empty());
    LubinTateData small = LubinTateData::from_series(s(r, {0, 3, 0, 1}, 8));
    CHECK_THROWS_AS(torsion_ladder(small, 2), TruncationTooSmall);
}

TEST_CASE("the machinery is not tied to p = 3: Lubin-Tate over Z_5") {
    RingPtr r = Ring::zp(5, 14);
    TruncatedSeries f(r, 25);
    f.set_coeff(1, RingElement(r, 5));
    f.set_coeff(5, RingElement::one(r));
    LubinTateData lt = LubinTateData::from_series(f);
    CHECK(lt.q == 5);

    FormalGroupLaw F = lubin_tate_group(lt, 6);
    CHECK(verify_group_law(F).ok());
    CHECK(verify_endomorphism(F, f.truncated(6)).ok());
    CHECK(lt_hom(RingElement(r, 5), lt, lt, 10) == f.truncated(10));

    auto ladder = torsion_ladder(lt, 2);
    REQUIRE(ladder.size() == 2);
    CHECK(ladder[0].matches_prediction);  // 4 new roots at valuation 1/4
    CHECK(ladder[1].matches_prediction);  // 20 new roots at valuation 1/20
    CHECK(ladder[0].predicted_count == 4);
    CHECK(ladder[0].predicted_valuation == frac(1, 4));
    CHECK(ladder[1].predicted_count == 20);
    CHECK(ladder[1].predicted_valuation == frac(1, 20));
}

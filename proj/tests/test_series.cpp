#include <doctest.h>

#include "padic/series.hpp"

using namespace padic;

namespace {

RingPtr z3(unsigned n = 20) { return Ring::zp(3, n); }

TruncatedSeries s(const RingPtr& r, std::vector<long> c, unsigned m) {
    return TruncatedSeries::from_integers(r, c, m);
}

}  // namespace

TEST_CASE("series arithmetic") {
    RingPtr r = z3();
    CHECK(s(r, {0, 3, 0, 1}, 4) * TruncatedSeries::identity(r, 4) == s(r, {0, 0, 3, 0, 1}, 4));
    TruncatedSeries a = s(r, {0, 4, 1}, 6);
    CHECK(a + TruncatedSeries(r, 6) == a);
    CHECK(a * a == s(r, {0, 0, 16, 8, 1}, 6));
}

TEST_CASE("composition against hand expansions") {
    RingPtr r = z3();
    TruncatedSeries f = s(r, {0, 9, 6, 1}, 6), u = s(r, {0, 4, 1}, 6);
    CHECK(compose(f, TruncatedSeries::identity(r, 6)) == f);
    CHECK(compose(u, f) == s(r, {0, 36, 105, 112, 54, 12, 1}, 6));
    TruncatedSeries h = TruncatedSeries::monomial(r, 2, 6), fF = s(r, {0, 3, 0, 1}, 6);
    CHECK(compose(h, fF) == s(r, {0, 0, 9, 0, 6, 0, 1}, 6));
    CHECK_THROWS_AS(compose(f, s(r, {1, 1}, 6)), NonzeroConstantTerm);
}

TEST_CASE("commutator defect") {
    RingPtr r = z3();
    TruncatedSeries f = s(r, {0, 9, 6, 1}, 12), u = s(r, {0, 4, 1}, 12);
    CHECK(commutator_defect(f, u).is_zero());
    CHECK(commutator_defect(f, f).is_zero());
    // 3x + x^3 does not commute with 5x + 5x^2 + x^5
    CHECK_FALSE(commutator_defect(s(r, {0, 3, 0, 1}, 12), s(r, {0, 5, 5, 0, 0, 1}, 12)).is_zero());
}

TEST_CASE("derivative") {
    RingPtr r = z3();
    CHECK(derivative(s(r, {0, 3, 0, 1}, 4)) == s(r, {3, 0, 3}, 3));
    CHECK(derivative(TruncatedSeries::monomial(r, 2, 4)) == s(r, {0, 2}, 3));
    CHECK(derivative(s(r, {0, 9, 6, 1}, 4)).coeff(0) == RingElement(r, 9));
}

TEST_CASE("compositional inverse, including the frozen mod-27 instance") {
    CHECK(compositional_inverse(TruncatedSeries::identity(z3(), 5)) ==
          TruncatedSeries::identity(z3(), 5));
    RingPtr r3 = z3(3);
    // solve c1 4 = 1, c1 + 16 c2 = 0 mod 27
    CHECK(compositional_inverse(s(r3, {0, 4, 1}, 2)) == s(r3, {0, 7, 8}, 2));
    CHECK_THROWS_AS(compositional_inverse(s(z3(), {0, 9, 6, 1}, 4)), NotInvertible);
}

TEST_CASE("iteration") {
    RingPtr r = z3();
    TruncatedSeries fF = s(r, {0, 3, 0, 1}, 9);
    CHECK(iterate(fF, 2) == s(r, {0, 9, 0, 30, 0, 27, 0, 9, 0, 1}, 9));
    CHECK(iterate(fF, 0) == TruncatedSeries::identity(r, 9));
    CHECK(iterate(fF, 1) == fF);
}

TEST_CASE("negative iteration goes through the compositional inverse") {
    RingPtr r = z3();
    TruncatedSeries u = s(r, {0, 4, 1}, 12);
    TruncatedSeries back = iterate_int(u, mpz_class(-2));
    CHECK(compose(iterate(u, 2), back) == TruncatedSeries::identity(r, 12));
}

TEST_CASE("padic_iterate: residues, convergence witness, inverse limit") {
    RingPtr r = z3();
    TruncatedSeries u = s(r, {0, 4, 1}, 24);
    CHECK(padic_iterate(u, mpz_class(0), 4).value == TruncatedSeries::identity(r, 24));

    // u^(3^k - 1) converges to the compositional inverse as k grows
    TruncatedSeries vinv = compositional_inverse(u);
    Valuation prev(0L);
    for (unsigned k = 2; k <= 6; ++k) {
        TruncatedSeries defect = padic_iterate(u, mpz_class(-1), k).value - vinv;
        Valuation ord = joint_order(defect);
        CHECK(ord > prev);
        prev = ord;
    }

    // the witness itself: joint orders nondecreasing for this u
    PadicIterate it = padic_iterate(u, mpz_class(-1), 8);
    CHECK(it.cauchy_nondecreasing);
    CHECK(it.steps.size() == 8);

    // a fixed point stays fixed for sampled z (u(-3) = -3)
    RingElement lambda(r, mpz_class(-3));
    for (long z : {2L, 5L, 7L, 26L}) {
        TruncatedSeries uz = padic_iterate(u, mpz_class(z), 3).value;
        CHECK(evaluate(uz, lambda).value == lambda);
    }
    CHECK_THROWS_AS(padic_iterate(s(r, {0, 3, 0, 1}, 8), mpz_class(1), 2), NotInvertible);
}

TEST_CASE("evaluation with precision reporting") {
    RingPtr r = z3();
    TruncatedSeries f = s(r, {0, 9, 6, 1}, 8);
    SeriesValue ev = evaluate(f, RingElement(r, mpz_class(-3)));
    CHECK(ev.value.is_zero());
    CHECK(ev.precision == Valuation(9L));  // min(20, 9 * 1)
    CHECK(evaluate(f, RingElement::zero(r)).value.is_zero());
    CHECK_THROWS_AS(evaluate(f, RingElement(r, 1)), NotInMaximalIdeal);

    RingPtr e = Ring::make(3, 20, {mpz_class(3), mpz_class(0), mpz_class(1)},
                           ExtensionKind::eisenstein);
    RingElement t = RingElement::generator(e);
    CHECK(evaluate(TruncatedSeries::monomial(e, 2, 8), t).value == RingElement(e, mpz_class(-3)));
}

TEST_CASE("weierstrass degree") {
    RingPtr r = z3();
    CHECK(weierstrass_degree(s(r, {0, 9, 6, 1}, 4)) == 3u);
    CHECK(weierstrass_degree(s(r, {0, 4, 1}, 4)) == 1u);
    CHECK_FALSE(weierstrass_degree(s(r, {0, 3, 3}, 2)).has_value());
}

TEST_CASE("stability reports") {
    RingPtr r3 = z3(3);
    StabilityReport su = stability_report(s(r3, {0, 4, 1}, 4));
    CHECK(su.is_stable);
    CHECK(su.is_invertible);
    CHECK_FALSE(su.is_root_of_unity);  // 4^2 = 16 != 1 mod 27

    StabilityReport sf = stability_report(s(z3(), {0, 9, 6, 1}, 4));
    CHECK(sf.is_stable);
    CHECK(sf.is_noninvertible_finite_height);
    CHECK(sf.wideg == 3u);

    StabilityReport sm = stability_report(s(z3(), {0, -1, 1}, 4));
    CHECK_FALSE(sm.is_stable);
    CHECK(sm.is_root_of_unity);
    CHECK(sm.root_of_unity_order == 2u);
    CHECK(sm.precision_caveat);

    StabilityReport sz = stability_report(s(z3(3), {0, 27, 1}, 4));
    CHECK(sz.is_zero);  // 27 = 0 at this precision
    CHECK_FALSE(sz.is_stable);
}

TEST_CASE("root-of-unity detection beyond the tame case") {
    // -1 is the only nontrivial root of unity of Z_2
    RingPtr r2 = Ring::zp(2, 5);
    StabilityReport s2 = stability_report(
        TruncatedSeries::from_integers(r2, {0, -1, 1}, 3));
    CHECK(s2.is_root_of_unity);
    CHECK(s2.root_of_unity_order == 2u);
    StabilityReport s3 = stability_report(TruncatedSeries::from_integers(r2, {0, 3, 1}, 3));
    CHECK_FALSE(s3.is_root_of_unity);  // 3 is not congruent to +-1 mod 32
    CHECK(s3.is_stable);

    // the ramified quadratic containing the cube roots of unity:
    // zeta = (-1 + t)/2 with t^2 = -3 has order 3
    RingPtr e = Ring::make(3, 8, {mpz_class(3), mpz_class(0), mpz_class(1)},
                           ExtensionKind::eisenstein);
    RingElement zeta = RingElement(e, {mpz_class(-1), mpz_class(1)}) *
                       RingElement(e, 2).inverse();
    CHECK(zeta.pow(3) == RingElement::one(e));
    TruncatedSeries uz(e, 3);
    uz.set_coeff(1, zeta);
    uz.set_coeff(2, RingElement::one(e));
    StabilityReport sz = stability_report(uz);
    CHECK(sz.is_root_of_unity);
    CHECK(sz.root_of_unity_order == 3u);
    CHECK_FALSE(sz.is_stable);
}

TEST_CASE("composition associativity, inverse round-trip, iterate homomorphism (seeded)") {
    RingPtr r = Ring::zp(3, 10);
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(101);
    auto rand_series = [&](bool unit) {
        TruncatedSeries out(r, 9);
        for (unsigned i = 1; i <= 9; ++i) out.set_coeff(i, RingElement(r, rng.get_z_range(r->pn())));
        if (unit)
            while (!out.coeff(1).is_unit())
                out.set_coeff(1, RingElement(r, rng.get_z_range(r->pn())));
        return out;
    };
    for (int i = 0; i < 40; ++i) {
        TruncatedSeries a = rand_series(false), b = rand_series(false), c = rand_series(false);
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
        TruncatedSeries u = rand_series(true);
        CHECK(compose(u, compositional_inverse(u)) == TruncatedSeries::identity(r, 9));
        CHECK(iterate(a, 5) == compose(iterate(a, 2), iterate(a, 3)));
    }
}

TEST_CASE("weierstrass degree is multiplicative under composition") {
    RingPtr r = Ring::zp(3, 8);
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(55);
    auto rand_noninvertible = [&](unsigned wd, unsigned m) {
        TruncatedSeries out(r, m);
        for (unsigned i = 1; i <= m; ++i) {
            mpz_class c = rng.get_z_range(r->pn());
            if (i < wd) c *= 3;
            if (i == wd && mpz_divisible_ui_p(c.get_mpz_t(), 3)) c += 1;
            out.set_coeff(i, RingElement(r, c));
        }
        return out;
    };
    for (int i = 0; i < 30; ++i) {
        unsigned d1 = 2 + static_cast<unsigned>(mpz_class(rng.get_z_range(3)).get_ui());
        unsigned d2 = 2 + static_cast<unsigned>(mpz_class(rng.get_z_range(3)).get_ui());
        TruncatedSeries f = rand_noninvertible(d1, 20), g = rand_noninvertible(d2, 20);
        auto wd = weierstrass_degree(compose(f, g));
        REQUIRE(wd.has_value());
        CHECK(*wd == d1 * d2);
    }
}

TEST_CASE("evaluation is a homomorphism for composition up to reported precision") {
    RingPtr r = Ring::zp(3, 12);
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(77);
    for (int i = 0; i < 40; ++i) {
        TruncatedSeries a(r, 10), b(r, 10);
        for (unsigned k = 1; k <= 10; ++k) {
            a.set_coeff(k, RingElement(r, rng.get_z_range(r->pn())));
            b.set_coeff(k, RingElement(r, rng.get_z_range(r->pn())));
        }
        RingElement alpha(r, 3 * (1 + rng.get_z_range(81)));
        SeriesValue lhs = evaluate(compose(a, b), alpha);
        SeriesValue rhs = evaluate(a, evaluate(b, alpha).value);
        Valuation guaranteed = min(lhs.precision, rhs.precision);
        CHECK((lhs.value - rhs.value).valuation() >= guaranteed);
    }
}

TEST_CASE("series algebra over an extension ring") {
    RingPtr q = Ring::make(3, 8, {mpz_class(1), mpz_class(0), mpz_class(1)},
                           ExtensionKind::unramified);
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(404);
    auto rand_series = [&](bool unit) {
        TruncatedSeries out(q, 8);
        for (unsigned i = 1; i <= 8; ++i)
            out.set_coeff(i, RingElement(q, {rng.get_z_range(q->pn()), rng.get_z_range(q->pn())}));
        if (unit)
            while (!out.coeff(1).is_unit())
                out.set_coeff(1, RingElement(q, {rng.get_z_range(q->pn()), rng.get_z_range(q->pn())}));
        return out;
    };
    for (int i = 0; i < 20; ++i) {
        TruncatedSeries a = rand_series(false), b = rand_series(false), c = rand_series(false);
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
        TruncatedSeries u = rand_series(true);
        CHECK(compose(compositional_inverse(u), u) == TruncatedSeries::identity(q, 8));
    }
}

TEST_CASE("padic iterates are Cauchy in the joint (p, x)-order") {
    RingPtr r = Ring::zp(3, 14);
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(99);
    for (int trial = 0; trial < 10; ++trial) {
        TruncatedSeries u(r, 16);
        for (unsigned k = 1; k <= 16; ++k) u.set_coeff(k, RingElement(r, rng.get_z_range(r->pn())));
        while (!u.coeff(1).is_unit()) u.set_coeff(1, RingElement(r, rng.get_z_range(r->pn())));
        // u^(3^(m+1) r) - u^(3^m r) with r = 2
        Valuation prev(0L);
        unsigned long low = 2;
        for (unsigned m = 0; m < 4; ++m) {
            TruncatedSeries diff = iterate(u, low * 3) - iterate(u, low);
            Valuation ord = joint_order(diff);
            CHECK(ord >= prev);
            prev = ord;
            low *= 3;
        }
    }
}

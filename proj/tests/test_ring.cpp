#include <doctest.h>

#include "padic/ring.hpp"

using namespace padic;

namespace {

RingPtr z3(unsigned n = 3) { return Ring::zp(3, n); }

RingPtr gauss3(unsigned n = 2) {
    // unramified quadratic: t^2 + 1 is irreducible mod 3
    return Ring::make(3, n, {mpz_class(1), mpz_class(0), mpz_class(1)}, ExtensionKind::unramified);
}

RingPtr ramified3(unsigned n = 6) {
    return Ring::make(3, n, {mpz_class(3), mpz_class(0), mpz_class(1)}, ExtensionKind::eisenstein);
}

}  // namespace

TEST_CASE("ring construction validates its inputs") {
    CHECK_THROWS_AS(Ring::zp(4, 3), Error);  // not prime
    CHECK_THROWS_AS(Ring::zp(3, 0), Error);  // precision >= 1
    // t^2 + 2 = (t-1)(t+1) mod 3 is reducible
    CHECK_THROWS_AS(
        Ring::make(3, 2, {mpz_class(2), mpz_class(0), mpz_class(1)}, ExtensionKind::unramified),
        Error);
    // v_3(c_0) = 2: not eisenstein
    CHECK_THROWS_AS(
        Ring::make(3, 4, {mpz_class(9), mpz_class(0), mpz_class(1)}, ExtensionKind::eisenstein),
        Error);
    CHECK(gauss3()->residue_degree() == 2);
    CHECK(gauss3()->ramification() == 1);
    CHECK(ramified3()->ramification() == 2);
    CHECK(ramified3()->residue_degree() == 1);
}

TEST_CASE("addition wraps mod p^N") {
    RingPtr r = z3();
    CHECK(RingElement(r, 25) + RingElement(r, 2) == RingElement::zero(r));

    RingPtr q = gauss3(2);
    RingElement a(q, {mpz_class(1), mpz_class(1)});  // t + 1
    RingElement b(q, {mpz_class(8), mpz_class(8)});  // 8t + 8
    CHECK((a + b).is_zero());
}

TEST_CASE("multiplication reduces by the modulus") {
    RingPtr r = z3();
    CHECK(RingElement(r, 4) * RingElement(r, 7) == RingElement::one(r));

    RingPtr q = gauss3(3);
    RingElement t = RingElement::generator(q);
    CHECK(t * t == RingElement(q, mpz_class(-1)));
    CHECK(t * RingElement::one(q) == t);
}

TEST_CASE("inverse: 4 -> 7 and 8 -> 17 mod 27; 3 is not a unit") {
    RingPtr r = z3();
    CHECK(RingElement(r, 4).inverse() == RingElement(r, 7));
    CHECK(RingElement(r, 8).inverse() == RingElement(r, 17));
    CHECK_THROWS_AS(RingElement(r, 3).inverse(), NotAUnit);
}

TEST_CASE("valuation is normalized with v(p) = 1") {
    RingPtr r = Ring::zp(3, 8);
    CHECK(RingElement(r, 540).valuation() == Valuation(3));  // 540 = 2^2 3^3 5
    CHECK(RingElement(r, 81).valuation() == Valuation(4));
    CHECK(RingElement::zero(r).valuation().is_infinite());

    CHECK(RingElement::generator(ramified3()).valuation() == Valuation(1, 2));
    // mixed term: 3 + t has v = min(1, 1/2) = 1/2 exactly
    RingElement mixed(ramified3(), {mpz_class(3), mpz_class(1)});
    CHECK(mixed.valuation() == Valuation(1, 2));
}

TEST_CASE("frobenius maps t to the other residue root") {
    RingPtr q = gauss3(4);
    RingElement t = RingElement::generator(q);
    CHECK(t.frobenius() == -t);
    CHECK(RingElement(q, 7).frobenius() == RingElement(q, 7));  // base fixed
    CHECK(t.frobenius().frobenius() == t);                      // order f_res = 2
    CHECK_THROWS_AS(RingElement::generator(ramified3()).frobenius(), UnsupportedExtension);
}

TEST_CASE("mismatched contexts are rejected") {
    RingElement a(z3(), 1);
    RingElement b(Ring::zp(5, 3), 1);
    CHECK_THROWS_AS(a + b, MismatchedContext);
}

TEST_CASE("uniformizer division in the ramified quadratic") {
    // quotients by a non-unit are determined only mod p^(N - ceil(v(d))):
    // assert the defining property exactly and closeness to the expected value
    RingPtr e = ramified3();
    RingElement t = RingElement::generator(e);
    RingElement q1 = RingElement(e, mpz_class(-3)).divide(t);  // t^2 = -3, so q1 ~ t
    CHECK(t * q1 == RingElement(e, mpz_class(-3)));
    CHECK((q1 - t).valuation() >= Valuation(5));
    RingElement q2 = (t * t).divide(t);
    CHECK(t * q2 == t * t);
    CHECK((q2 - t).valuation() >= Valuation(5));
}

TEST_CASE("ring axioms and inverse round-trips on seeded elements") {
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(42);
    for (RingPtr r : {z3(6), gauss3(5), ramified3(6)}) {
        auto rand_el = [&] {
            std::vector<mpz_class> c;
            for (unsigned i = 0; i < r->degree(); ++i) c.push_back(rng.get_z_range(r->pn()));
            return RingElement(r, c);
        };
        for (int i = 0; i < 50; ++i) {
            RingElement a = rand_el(), b = rand_el(), c = rand_el();
            CHECK((a + b) + c == a + (b + c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            if (a.is_unit()) CHECK(a * a.inverse() == RingElement::one(r));
        }
    }
}

TEST_CASE("ultrametric inequality with equality at distinct valuations") {
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(7);
    RingPtr r = Ring::zp(3, 10);
    Valuation horizon(10);
    for (int i = 0; i < 200; ++i) {
        RingElement a(r, rng.get_z_range(r->pn()));
        RingElement b(r, rng.get_z_range(r->pn()));
        Valuation va = a.valuation(), vb = b.valuation(), vs = (a + b).valuation();
        CHECK(vs >= min(va, vb));
        if (va != vb && min(va, vb) < horizon) CHECK(vs == min(va, vb));
    }
}

TEST_CASE("frobenius is a ring homomorphism on seeded pairs") {
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(11);
    RingPtr q = gauss3(6);
    for (int i = 0; i < 100; ++i) {
        RingElement a(q, {rng.get_z_range(q->pn()), rng.get_z_range(q->pn())});
        RingElement b(q, {rng.get_z_range(q->pn()), rng.get_z_range(q->pn())});
        CHECK((a * b).frobenius() == a.frobenius() * b.frobenius());
        CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
    }
}

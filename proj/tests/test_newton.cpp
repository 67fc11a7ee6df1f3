#include <doctest.h>

#include "padic/newton.hpp"

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

TEST_CASE("polygons of the worked series") {
    RingPtr r = z3();

    NewtonPolygon fF = newton_polygon(s(r, {0, 3, 0, 1}, 4), true);
    REQUIRE(fF.segments.size() == 1);
    CHECK(fF.segments[0].slope == frac(-1, 2));
    CHECK(fF.segments[0].length == 2);
    CHECK(root_valuations(fF) == ValuationMultiset{{frac(1, 2), 2}});

    NewtonPolygon f = newton_polygon(s(r, {0, 9, 6, 1}, 4), true);
    REQUIRE(f.segments.size() == 1);
    CHECK(f.segments[0].slope == mpq_class(-1));
    CHECK(f.segments[0].length == 2);

    NewtonPolygon g =
        newton_polygon(s(r, {0, 81, 540, 1386, 1782, 1287, 546, 135, 18, 1}, 9), true);
    REQUIRE(g.segments.size() == 2);
    CHECK(g.segments[0].slope == mpq_class(-1));
    CHECK(g.segments[0].length == 2);
    CHECK(g.segments[1].slope == frac(-1, 3));
    CHECK(g.segments[1].length == 6);

    CHECK(root_valuations(newton_polygon(s(r, {3, 1}, 1), false)) ==
          ValuationMultiset{{mpq_class(1), 1}});

    CHECK_THROWS_AS(newton_polygon(s(r, {0, 3, 3}, 2), true), WeierstrassDegreeNotVisible);
    CHECK_THROWS_AS(newton_polygon(TruncatedSeries(r, 4), true), WeierstrassDegreeNotVisible);
}

TEST_CASE("hensel lifting") {
    RingPtr r = z3(8);
    TruncatedSeries f = s(r, {2, 0, 1}, 2);  // x^2 + 2
    RingElement root = hensel_lift(f, RingElement(r, 1));
    CHECK(evaluate_polynomial(f, root).is_zero());
    mpz_class rem;
    mpz_mod_ui(rem.get_mpz_t(), root.coeffs()[0].get_mpz_t(), 9);
    CHECK(rem == 4);  // the branch through a0 = 1 is 4 mod 9

    CHECK(hensel_lift(s(r, {-5, 1}, 1), RingElement(r, 5)) == RingElement(r, 5));
    CHECK_THROWS_AS(hensel_lift(s(r, {3, 0, 1}, 2), RingElement::zero(r)), HenselConditionFailed);
}

TEST_CASE("roots_in_ring finds simple roots and flags singular residues") {
    RingPtr r = z3();
    RingRoots rr = roots_in_ring(s(r, {0, 9, 6, 1}, 3), r);
    REQUIRE(rr.roots.size() == 1);
    CHECK(rr.roots[0].first.is_zero());
    CHECK(rr.roots[0].second == 1);
    REQUIRE(rr.singular_residues.size() == 1);  // the (x+3)^2 factor at residue 0
    CHECK(rr.singular_residues[0].is_zero());

    RingPtr q = Ring::make(3, 12, {mpz_class(1), mpz_class(0), mpz_class(1)},
                           ExtensionKind::unramified);
    RingRoots ri = roots_in_ring(s(z3(12), {1, 0, 1}, 2), q);
    REQUIRE(ri.roots.size() == 2);
    RingElement t = RingElement::generator(q);
    CHECK(((ri.roots[0].first == t && ri.roots[1].first == -t) ||
           (ri.roots[0].first == -t && ri.roots[1].first == t)));

    RingPtr e = Ring::make(3, 12, {mpz_class(3), mpz_class(0), mpz_class(1)},
                           ExtensionKind::eisenstein);
    RingRoots re = roots_in_ring(s(z3(12), {3, 0, 1}, 2), e);
    REQUIRE(re.roots.size() == 2);
    RingElement te = RingElement::generator(e);
    CHECK(((re.roots[0].first == te && re.roots[1].first == -te) ||
           (re.roots[0].first == -te && re.roots[1].first == te)));
}

TEST_CASE("multiplicity at precision by repeated synthetic division") {
    RingPtr r = z3();
    RingElement minus3(r, mpz_class(-3));
    CHECK(multiplicity_at_precision(s(r, {0, 9, 6, 1}, 3), minus3) == 2);
    CHECK(multiplicity_at_precision(s(r, {0, 9, 6, 1}, 3), RingElement::zero(r)) == 1);
    CHECK(multiplicity_at_precision(s(r, {0, 9, 6, 1}, 3), RingElement(r, 1)) == 0);
}

TEST_CASE("iterate ladder of the Lubin-Tate cube and the condensed series") {
    RingPtr r = z3();
    auto lad = iterate_ladder(s(r, {0, 3, 0, 1}, 27), 3);
    REQUIRE(lad.size() == 3);
    CHECK(lad[0].new_roots == ValuationMultiset{{frac(1, 2), 2}});
    CHECK(lad[1].new_roots == ValuationMultiset{{frac(1, 6), 6}});
    CHECK(lad[2].new_roots == ValuationMultiset{{frac(1, 18), 18}});
    CHECK(lad[2].cumulative_count == 26);  // q^3 - 1

    auto fl = iterate_ladder(s(r, {0, 9, 6, 1}, 9), 2);
    CHECK(fl[0].new_roots == ValuationMultiset{{mpq_class(1), 2}});
    CHECK(fl[1].new_roots == ValuationMultiset{{frac(1, 3), 6}});

    CHECK(iterate_ladder(s(r, {0, 9, 6, 1}, 9), 0).empty());
    CHECK_THROWS_AS(iterate_ladder(s(r, {0, 3, 0, 1}, 8), 2), TruncationTooSmall);
}

TEST_CASE("max_small_roots is the Weierstrass bound") {
    RingPtr r = z3();
    CHECK(max_small_roots(s(r, {0, 9, 6, 1}, 3)) == 3);
    CHECK(max_small_roots(s(r, {0, 4, 1}, 2)) == 1);
    CHECK(max_small_roots(TruncatedSeries::monomial(r, 2, 4)) == 2);
    CHECK_THROWS_AS(max_small_roots(s(r, {0, 3}, 1)), WeierstrassDegreeNotVisible);
}

TEST_CASE("hensel roots are certified: v(f(root)) >= N on seeded polynomials") {
    RingPtr r = z3(14);
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(1234);
    unsigned found = 0;
    for (int i = 0; i < 60; ++i) {
        TruncatedSeries f(r, 5);
        for (unsigned k = 0; k <= 5; ++k) f.set_coeff(k, RingElement(r, rng.get_z_range(r->pn())));
        RingRoots rr = roots_in_ring(f, r);
        for (const auto& [root, mult] : rr.roots) {
            CHECK(evaluate_polynomial(f, root).is_zero());
            ++found;
        }
    }
    CHECK(found > 20);  // the suite actually exercises the lift
}

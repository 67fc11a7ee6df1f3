#pragma once

#include <utility>
#include <vector>

#include "padic/series.hpp"

namespace padic {

struct NewtonSegment {
    mpq_class slope;
    unsigned long length;
};

/// Lower convex hull of (index, valuation) over the nonzero coefficients up
/// to the Weierstrass degree.  A segment of slope -s and length l certifies
/// exactly l roots of valuation s (with multiplicity) in the open unit disk.
struct NewtonPolygon {
    std::vector<std::pair<unsigned long, mpq_class>> points;
    std::vector<std::pair<unsigned long, mpq_class>> vertices;
    std::vector<NewtonSegment> segments;  // slopes strictly increasing
    unsigned long stripped_power = 0;     // power of x removed when strip_zero
};

/// Computes the polygon up to wideg(f); beyond it slopes are >= 0 and roots
/// leave the open unit disk.  Throws WeierstrassDegreeNotVisible when no
/// unit coefficient is visible (the right endpoint cannot be certified).
NewtonPolygon newton_polygon(const TruncatedSeries& f, bool strip_zero = true);

/// (valuation, count) pairs, one per negative-slope segment, sorted by
/// decreasing valuation.
using ValuationMultiset = std::vector<std::pair<mpq_class, unsigned long>>;
ValuationMultiset root_valuations(const NewtonPolygon& np);

/// Newton iteration a <- a - f(a)/f'(a) from a0 with v(f(a0)) > 2 v(f'(a0)).
/// The stored coefficients of f are taken as an exact polynomial.
RingElement hensel_lift(const TruncatedSeries& f, const RingElement& a0);

/// Synthetic division of the polynomial f by the monic linear factor
/// (x - alpha): quotient and remainder f(alpha).
std::pair<TruncatedSeries, RingElement> divide_linear(const TruncatedSeries& f,
                                                      const RingElement& alpha);

/// Number of times (x - alpha) divides f with remainder valuation >= N/2.
unsigned multiplicity_at_precision(const TruncatedSeries& f, const RingElement& alpha);

struct RingRoots {
    std::vector<std::pair<RingElement, unsigned>> roots;  // (root, multiplicity at precision)
    std::vector<RingElement> singular_residues;  // residues mod p that resist simple lifting
};

/// All roots of the polynomial f in the given ring found by enumerating
/// lifts of O/pO and Hensel lifting where the simple-root condition holds.
/// Residue classes that carry roots but fail the condition are reported as
/// singular.  Base-ring polynomials may be searched in an extension.
RingRoots roots_in_ring(const TruncatedSeries& f, const RingPtr& ring);

struct RootLadderLevel {
    unsigned level;
    ValuationMultiset new_roots;   // valuations new at this level
    unsigned long new_root_count;
    unsigned long cumulative_count;
};

/// Newton-polygon root data of iterate(f, k) for k <= depth, with the
/// previous level's multiset subtracted.  Requires a noninvertible stable f
/// with visible Weierstrass degree d and trunc >= d^depth.
std::vector<RootLadderLevel> iterate_ladder(const TruncatedSeries& f, unsigned depth);

/// Weierstrass bound on the number of roots of f in the open unit disk.
unsigned long max_small_roots(const TruncatedSeries& f);

}  // namespace padic

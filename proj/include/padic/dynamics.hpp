#pragma once

#include "padic/formal_group.hpp"

namespace padic {

/// Condensation: the g with g(x^d) = f(x)^d.  Requires f(0) = 0 and f^d
/// supported only on exponents divisible by d (checked up to truncation);
/// throws NotCondensable naming the first offending exponent.  The returned
/// truncation is floor(trunc(f)/d).
TruncatedSeries condense(const TruncatedSeries& f, unsigned d);

/// Intertwining certificate: h(f_src(x)) = f_dst(h(x)) mod (p^N, x^M), plus
/// the structural fact h(0) = 0.
Certificate verify_isogeny(const TruncatedSeries& h, const TruncatedSeries& f_src,
                           const TruncatedSeries& f_dst);

/// For level-n torsion points alpha of f_src (certified at evaluation
/// precision), checks that h(alpha) is level-n torsion for f_dst.
/// Throws NotATorsionPoint when a supplied root is not certified.
Certificate torsion_image_check(const TruncatedSeries& h, const TruncatedSeries& f_src,
                                const TruncatedSeries& f_dst,
                                const std::vector<RingElement>& roots, unsigned level);

struct PreperLevel {
    unsigned level;               // k: analyses u^(p^k)(x) - x
    bool all_points_fixed;        // the difference vanished identically
    ValuationMultiset root_valuations;
};

/// Newton-polygon root data of iterate(u, p^k)(x) - x for k <= depth, after
/// stripping the fixed point at 0.  u must be invertible stable.
std::vector<PreperLevel> preper_ladder(const TruncatedSeries& u, unsigned depth);

struct LadderCompareReport {
    std::vector<mpq_class> torsion_valuations;  // valuation set over all levels
    std::vector<mpq_class> preper_valuations;
    std::vector<mpq_class> only_in_torsion;
    std::vector<mpq_class> only_in_preper;
    bool preper_degenerate = false;  // some level had every point fixed
    bool agree = false;              // valuation sets equal on the computed range
};

/// Compares the valuation sets (not multisets; levels are not aligned) of
/// the torsion ladder of f and the preperiodic ladder of u.
LadderCompareReport ladder_compare(const TruncatedSeries& f, unsigned torsion_depth,
                                   const TruncatedSeries& u, unsigned preper_depth);

/// Verifies evaluate(u^z, lambda) = lambda at guaranteed precision for each
/// supplied residue z mod p^k.  Requires v(lambda) > 0 and lambda fixed by u
/// at precision (NotAFixedPoint otherwise).
Certificate fixed_point_check(const TruncatedSeries& u, const RingElement& lambda,
                              const std::vector<std::pair<mpz_class, unsigned>>& exponents);

struct PermutationReport {
    std::vector<std::size_t> mapping;  // i -> mapping[i]
    bool is_identity = false;
    /// frobenius permutation of the same root set, unramified rings only
    std::optional<std::vector<std::size_t>> frobenius_permutation;
    std::optional<bool> commutes_with_frobenius;
    /// exponent k with mapping = frobenius^k, when frobenius acts as a
    /// single cycle on the root set
    std::optional<unsigned> power_of_frobenius;
};

/// The permutation i -> j with w(r_i) = r_j at matching tolerance, for
/// certified roots r of the polynomial f.  w and f are taken as exact
/// polynomials so roots of valuation 0 are honest evaluation points.
/// Throws NotRootStable when some image escapes the root set.
PermutationReport induced_root_permutation(const TruncatedSeries& w,
                                           const std::vector<RingElement>& roots,
                                           const TruncatedSeries& f);

/// The package (D, f, u; F, f_F, u_F; h) with machine-checkable coherence
/// conditions; optional members are reported as skipped checks.
struct DynamicalPackage {
    TruncatedSeries f;  // noninvertible stable, finite height
    TruncatedSeries u;  // invertible stable
    std::optional<FormalGroupLaw> F;
    std::optional<TruncatedSeries> lubin_tate_f;  // f_F
    std::optional<TruncatedSeries> u_F;
    std::optional<TruncatedSeries> h;  // isogeny from f_F to f
};

/// Runs every package invariant: stability of f and u, commutation,
/// isogeny intertwinings of h, group-law and endomorphism certificates for
/// F, and the torsion/preperiodic ladder comparison.
Certificate package_verify(const DynamicalPackage& pkg, unsigned ladder_depth = 2);

}  // namespace padic

#pragma once

#include <optional>
#include <vector>

#include "padic/ring.hpp"

namespace padic {

/// Formal power series over a ring context, coefficients known mod p^N and
/// terms kept up to x^trunc (degrees beyond trunc are unknown).
/// Immutable in practice; every operation returns a new value.
class TruncatedSeries {
public:
    TruncatedSeries(RingPtr ring, unsigned trunc);  // zero series
    TruncatedSeries(RingPtr ring, std::vector<RingElement> coeffs);

    static TruncatedSeries from_integers(RingPtr ring, const std::vector<long>& coeffs,
                                         unsigned trunc);
    static TruncatedSeries identity(RingPtr ring, unsigned trunc);  // x
    static TruncatedSeries monomial(RingPtr ring, unsigned degree, unsigned trunc);

    const RingPtr& ring() const { return ring_; }
    unsigned trunc() const { return static_cast<unsigned>(c_.size() - 1); }
    const RingElement& coeff(unsigned i) const { return c_.at(i); }
    void set_coeff(unsigned i, const RingElement& v);

    bool is_zero() const;
    bool zero_constant_term() const { return c_[0].is_zero(); }

    /// Least index with a nonzero coefficient, if any.
    std::optional<unsigned> x_order() const;
    /// Greatest index with a nonzero coefficient, if any.
    std::optional<unsigned> top_degree() const;

    /// Restriction to a smaller truncation order.
    TruncatedSeries truncated(unsigned m) const;
    /// Extension to a larger truncation order by appending zero coefficients:
    /// only meaningful when the stored coefficients are the whole polynomial.
    TruncatedSeries extended(unsigned m) const;

    TruncatedSeries to_ring(const RingPtr& other) const;

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    /// Equal as truncated objects: same ring, same trunc, same coefficients.
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);
    friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }

    std::string str() const;

private:
    RingPtr ring_;
    std::vector<RingElement> c_;  // c_[i] = coefficient of x^i, size trunc+1
};

TruncatedSeries scale(const TruncatedSeries& a, const RingElement& c);

/// outer(inner) with every coefficient of degree <= min(M_outer, M_inner)
/// exact mod p^N.  Throws NonzeroConstantTerm if inner(0) != 0.
TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner);

/// a(b(x)) - b(a(x)); the zero series iff a and b commute to this
/// precision/truncation.
TruncatedSeries commutator_defect(const TruncatedSeries& a, const TruncatedSeries& b);

TruncatedSeries derivative(const TruncatedSeries& a);

/// v with v(u(x)) = u(v(x)) = x mod (p^N, x^M), solved degree by degree.
/// Throws NotInvertible when v(u'(0)) > 0.
TruncatedSeries compositional_inverse(const TruncatedSeries& u);

/// n-fold composition of f with itself (n = 0 gives x), by composition
/// powering.  Requires f(0) = 0.
TruncatedSeries iterate(const TruncatedSeries& f, unsigned long n);

/// Signed iteration: negative indices route through compositional_inverse.
TruncatedSeries iterate_int(const TruncatedSeries& f, const mpz_class& n);

struct IterationStep {
    unsigned level;                         // m
    std::optional<unsigned long> x_order;   // of u^{z_m} - u^{z_{m-1}}
    Valuation p_order;                      // min coefficient valuation
    Valuation joint_order;                  // min over i of (i + v(a_i))
};

struct PadicIterate {
    TruncatedSeries value;  // u^{z mod p^k}, least nonnegative residue
    std::vector<IterationStep> steps;
    bool cauchy_nondecreasing;  // joint orders nondecreasing across steps
};

/// u^{z mod p^k} together with the Cauchy-convergence witness: for each
/// m <= k the (p, x)-orders of u^{z_m} - u^{z_{m-1}}, z_m = z mod p^m.
PadicIterate padic_iterate(const TruncatedSeries& u, const mpz_class& z, unsigned k);

struct SeriesValue {
    RingElement value;
    Valuation precision;  // guaranteed p-adic precision: min(N, (M+1) v(point))
};

/// Sum of a_i alpha^i for i <= M.  Requires v(alpha) > 0 so the dropped tail
/// is p-adically small; throws NotInMaximalIdeal otherwise.
SeriesValue evaluate(const TruncatedSeries& f, const RingElement& alpha);

/// Evaluation of the stored coefficients as an exact polynomial; valid for
/// any alpha, result exact mod p^N.
RingElement evaluate_polynomial(const TruncatedSeries& f, const RingElement& alpha);

/// Smallest d with v(a_d) = 0, or nullopt if no unit coefficient up to M.
std::optional<unsigned> weierstrass_degree(const TruncatedSeries& f);

struct StabilityReport {
    RingElement derivative_at_zero;
    bool is_zero;            // f'(0) = 0 at this precision
    bool is_root_of_unity;   // f'(0) congruent to a root of unity mod p^N
    std::optional<unsigned long> root_of_unity_order;
    bool precision_caveat;   // the root-of-unity call is decided mod p^N only
    bool is_stable;          // neither zero nor a root of unity
    bool is_invertible;      // v(f'(0)) = 0
    bool is_noninvertible_finite_height;  // v(f'(0)) > 0 and wideg visible
    std::optional<unsigned> wideg;
};

StabilityReport stability_report(const TruncatedSeries& f);

/// Joint (p, x)-adic order: min over nonzero coefficients of i + v(a_i);
/// +infinity for the zero series.
Valuation joint_order(const TruncatedSeries& f);

/// Carries a series into `ring`: same structure at another precision, or a
/// base-ring (trivial) series embedded as constants into an extension with
/// the same p.  Throws MismatchedContext otherwise.
TruncatedSeries embed_into(const TruncatedSeries& f, const RingPtr& ring);

}  // namespace padic

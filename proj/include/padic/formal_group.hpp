#pragma once

#include "padic/newton.hpp"
#include "padic/report.hpp"
#include "padic/series.hpp"

namespace padic {

/// Two-variable series truncated by total degree.
class BivariateSeries {
public:
    BivariateSeries(RingPtr ring, unsigned trunc);

    const RingPtr& ring() const { return ring_; }
    unsigned trunc() const { return trunc_; }

    const RingElement& coeff(unsigned i, unsigned j) const;  // i + j <= trunc
    void set_coeff(unsigned i, unsigned j, const RingElement& v);

    static BivariateSeries variable_x(RingPtr ring, unsigned trunc);
    static BivariateSeries variable_y(RingPtr ring, unsigned trunc);

    bool is_zero() const;
    bool is_symmetric() const;

    BivariateSeries to_ring(const RingPtr& other) const;

    friend BivariateSeries operator+(const BivariateSeries& a, const BivariateSeries& b);
    friend BivariateSeries operator-(const BivariateSeries& a, const BivariateSeries& b);
    friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b);
    friend bool operator==(const BivariateSeries& a, const BivariateSeries& b);

    std::string str() const;

private:
    std::size_t index(unsigned i, unsigned j) const;

    RingPtr ring_;
    unsigned trunc_;
    std::vector<RingElement> c_;  // triangular, total degree <= trunc
};

/// outer(inner) for univariate outer and bivariate inner with zero constant
/// term, truncated by total degree.
BivariateSeries substitute_univariate(const TruncatedSeries& outer, const BivariateSeries& inner);

/// F(ex(x), ey(y)) for univariate substitutions with zero constant term.
BivariateSeries substitute_pair(const BivariateSeries& F, const TruncatedSeries& ex,
                                const TruncatedSeries& ey);

/// F(a(x), b(x)) as a univariate series in x, truncated at F's total degree.
TruncatedSeries substitute_diagonal(const BivariateSeries& F, const TruncatedSeries& a,
                                    const TruncatedSeries& b);

/// One-dimensional commutative formal group law candidate; its axioms are
/// certified by verify_group_law, not assumed.
struct FormalGroupLaw {
    BivariateSeries law;
};

/// Lubin-Tate input data: uniformizer pi, residue cardinality q, and a
/// series f with f = pi x mod degree 2 and f = x^q mod the maximal ideal.
struct LubinTateData {
    RingPtr ring;
    RingElement pi;
    unsigned long q;
    TruncatedSeries f;

    static LubinTateData make(RingElement pi, TruncatedSeries f);
    /// pi := f'(0), q := wideg(f).
    static LubinTateData from_series(const TruncatedSeries& f);
};

/// The unique F with F = x + y mod total degree 2 and
/// f(F(x,y)) = F(f(x), f(y)) mod (p^N, total degree m_total), built degree by
/// degree.  Each homogeneous solve divides by pi^r - pi (one digit over a
/// Q_p base), so the construction runs internally at precision N + m_total.
FormalGroupLaw lubin_tate_group(const LubinTateData& lt, unsigned m_total);

/// The unique [a] with [a] = a x mod degree 2 and dst.f([a]) = [a](src.f)
/// mod (p^N, x^trunc).  With src = dst this is the endomorphism [a]_f.
TruncatedSeries lt_hom(const RingElement& a, const LubinTateData& src, const LubinTateData& dst,
                       unsigned trunc);

/// Identity, commutativity and associativity mod (p^N, total degree), one
/// certificate entry per axiom with the first failing coefficient.
Certificate verify_group_law(const FormalGroupLaw& F);

/// e(F(x,y)) = F(e(x), e(y)) mod (p^N, total degree).
Certificate verify_endomorphism(const FormalGroupLaw& F, const TruncatedSeries& e);

struct TorsionLevel {
    RootLadderLevel base;
    unsigned long predicted_count;   // q^k - q^(k-1)
    mpq_class predicted_valuation;   // 1 / (q^(k-1) (q-1))
    bool matches_prediction;
};

/// iterate_ladder on lt.f annotated with the closed-form Lubin-Tate torsion
/// prediction.  Requires lt.f.trunc() >= q^depth.
std::vector<TorsionLevel> torsion_ladder(const LubinTateData& lt, unsigned depth);

}  // namespace padic

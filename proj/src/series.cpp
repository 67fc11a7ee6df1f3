#include "padic/series.hpp"

#include <algorithm>
#include <sstream>

namespace padic {

namespace {

void require_same_ring_series(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.ring() == b.ring() || *a.ring() == *b.ring()) return;
    throw MismatchedContext("series live in different ring contexts");
}

}  // namespace

TruncatedSeries::TruncatedSeries(RingPtr ring, unsigned trunc) : ring_(std::move(ring)) {
    c_.assign(trunc + 1, RingElement::zero(ring_));
}

TruncatedSeries::TruncatedSeries(RingPtr ring, std::vector<RingElement> coeffs)
    : ring_(std::move(ring)), c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(RingElement::zero(ring_));
    for (const auto& c : c_)
        if (!(c.ring() == ring_ || *c.ring() == *ring_))
            throw MismatchedContext("series coefficient in a different ring");
}

TruncatedSeries TruncatedSeries::from_integers(RingPtr ring, const std::vector<long>& coeffs,
                                               unsigned trunc) {
    TruncatedSeries s(ring, trunc);
    for (std::size_t i = 0; i < coeffs.size() && i <= trunc; ++i)
        s.c_[i] = RingElement(ring, mpz_class(coeffs[i]));
    return s;
}

TruncatedSeries TruncatedSeries::identity(RingPtr ring, unsigned trunc) {
    return monomial(std::move(ring), 1, trunc);
}

TruncatedSeries TruncatedSeries::monomial(RingPtr ring, unsigned degree, unsigned trunc) {
    TruncatedSeries s(ring, trunc);
    if (degree <= trunc) s.c_[degree] = RingElement::one(s.ring_);
    return s;
}

void TruncatedSeries::set_coeff(unsigned i, const RingElement& v) {
    require_same_ring(c_.at(i), v);
    c_[i] = v;
}

bool TruncatedSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const RingElement& c) { return c.is_zero(); });
}

std::optional<unsigned> TruncatedSeries::x_order() const {
    for (unsigned i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return i;
    return std::nullopt;
}

std::optional<unsigned> TruncatedSeries::top_degree() const {
    for (unsigned i = static_cast<unsigned>(c_.size()); i-- > 0;)
        if (!c_[i].is_zero()) return i;
    return std::nullopt;
}

TruncatedSeries TruncatedSeries::truncated(unsigned m) const {
    if (m >= trunc()) return *this;
    TruncatedSeries s(ring_, m);
    for (unsigned i = 0; i <= m; ++i) s.c_[i] = c_[i];
    return s;
}

TruncatedSeries TruncatedSeries::extended(unsigned m) const {
    if (m <= trunc()) return truncated(m);
    TruncatedSeries s(ring_, m);
    for (unsigned i = 0; i <= trunc(); ++i) s.c_[i] = c_[i];
    return s;
}

TruncatedSeries TruncatedSeries::to_ring(const RingPtr& other) const {
    TruncatedSeries s(other, trunc());
    for (unsigned i = 0; i <= trunc(); ++i) s.c_[i] = c_[i].to_ring(other);
    return s;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_ring_series(a, b);
    unsigned m = std::min(a.trunc(), b.trunc());
    TruncatedSeries r(a.ring_, m);
    for (unsigned i = 0; i <= m; ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_ring_series(a, b);
    unsigned m = std::min(a.trunc(), b.trunc());
    TruncatedSeries r(a.ring_, m);
    for (unsigned i = 0; i <= m; ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_ring_series(a, b);
    unsigned m = std::min(a.trunc(), b.trunc());
    TruncatedSeries r(a.ring_, m);
    if (a.ring_->degree() == 1) {
        // accumulate raw integers and reduce once per output coefficient
        std::vector<mpz_class> acc(m + 1);
        for (unsigned i = 0; i <= m; ++i) {
            const mpz_class& ai = a.c_[i].coeffs()[0];
            if (ai == 0) continue;
            for (unsigned j = 0; i + j <= m; ++j) {
                const mpz_class& bj = b.c_[j].coeffs()[0];
                if (bj == 0) continue;
                mpz_addmul(acc[i + j].get_mpz_t(), ai.get_mpz_t(), bj.get_mpz_t());
            }
        }
        for (unsigned k = 0; k <= m; ++k)
            if (acc[k] != 0) r.c_[k] = RingElement(a.ring_, acc[k]);
        return r;
    }
    for (unsigned i = 0; i <= m; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (unsigned j = 0; i + j <= m; ++j) {
            if (b.c_[j].is_zero()) continue;
            r.c_[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return r;
}

TruncatedSeries scale(const TruncatedSeries& a, const RingElement& c) {
    TruncatedSeries r = a;
    for (unsigned i = 0; i <= r.trunc(); ++i) r.set_coeff(i, r.coeff(i) * c);
    return r;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (!(a.ring() == b.ring() || *a.ring() == *b.ring())) return false;
    if (a.trunc() != b.trunc()) return false;
    for (unsigned i = 0; i <= a.trunc(); ++i)
        if (a.coeff(i) != b.coeff(i)) return false;
    return true;
}

TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner) {
    require_same_ring_series(outer, inner);
    if (!inner.zero_constant_term())
        throw NonzeroConstantTerm("compose: inner series has a nonzero constant term");
    unsigned m = std::min(outer.trunc(), inner.trunc());
    // inner^j has x-order >= j, so coefficients of outer beyond degree m
    // cannot contribute below x^(m+1)
    auto top = outer.top_degree();
    unsigned hi = top ? std::min(*top, m) : 0;
    TruncatedSeries acc(outer.ring(), m);
    TruncatedSeries inner_m = inner.truncated(m);
    for (unsigned i = hi + 1; i-- > 0;) {
        acc = acc * inner_m;
        acc.set_coeff(0, acc.coeff(0) + outer.coeff(i));
    }
    return acc;
}

TruncatedSeries commutator_defect(const TruncatedSeries& a, const TruncatedSeries& b) {
    return compose(a, b) - compose(b, a);
}

TruncatedSeries derivative(const TruncatedSeries& a) {
    unsigned m = a.trunc() == 0 ? 0 : a.trunc() - 1;
    TruncatedSeries r(a.ring(), m);
    if (a.trunc() == 0) return r;
    for (unsigned i = 1; i <= a.trunc(); ++i)
        r.set_coeff(i - 1, a.coeff(i) * RingElement(a.ring(), mpz_class(i)));
    return r;
}

TruncatedSeries compositional_inverse(const TruncatedSeries& u) {
    if (!u.zero_constant_term())
        throw NonzeroConstantTerm("compositional_inverse: constant term must vanish");
    if (u.trunc() < 1) throw TruncationTooSmall("compositional_inverse: need trunc >= 1");
    const RingElement& u1 = u.coeff(1);
    if (!u1.is_unit())
        throw NotInvertible("compositional_inverse: linear coefficient has valuation " +
                            u1.valuation().str());
    unsigned m = u.trunc();
    RingElement u1_inv = u1.inverse();
    TruncatedSeries v(u.ring(), m);
    v.set_coeff(1, u1_inv);
    // powers[j] = u^j; [x^n] v(u(x)) = sum_j c_j [x^n] u^j must match x
    std::vector<TruncatedSeries> powers;
    powers.push_back(u);
    for (unsigned j = 2; j <= m; ++j) powers.push_back(powers.back() * u);
    RingElement inv_pow = u1_inv;
    for (unsigned n = 2; n <= m; ++n) {
        RingElement s = RingElement::zero(u.ring());
        for (unsigned j = 1; j < n; ++j) s += v.coeff(j) * powers[j - 1].coeff(n);
        inv_pow = inv_pow * u1_inv;  // u1^{-n}
        v.set_coeff(n, -(s * inv_pow));
    }
    return v;
}

TruncatedSeries iterate(const TruncatedSeries& f, unsigned long n) {
    if (!f.zero_constant_term()) throw NonzeroConstantTerm("iterate: f(0) must vanish");
    TruncatedSeries r = TruncatedSeries::identity(f.ring(), f.trunc());
    TruncatedSeries base = f;
    while (n > 0) {
        if (n & 1) r = compose(r, base);
        n >>= 1;
        if (n > 0) base = compose(base, base);
    }
    return r;
}

TruncatedSeries iterate_int(const TruncatedSeries& f, const mpz_class& n) {
    if (n >= 0) return iterate(f, n.get_ui());
    return iterate(compositional_inverse(f), mpz_class(-n).get_ui());
}

Valuation joint_order(const TruncatedSeries& f) {
    Valuation best = Valuation::infinity();
    for (unsigned i = 0; i <= f.trunc(); ++i) {
        if (f.coeff(i).is_zero()) continue;
        best = min(best, f.coeff(i).valuation() + Valuation(static_cast<long>(i)));
    }
    return best;
}

namespace {

Valuation gauss_order(const TruncatedSeries& f) {
    Valuation best = Valuation::infinity();
    for (unsigned i = 0; i <= f.trunc(); ++i) best = min(best, f.coeff(i).valuation());
    return best;
}

}  // namespace

PadicIterate padic_iterate(const TruncatedSeries& u, const mpz_class& z, unsigned k) {
    if (!u.zero_constant_term()) throw NonzeroConstantTerm("padic_iterate: u(0) must vanish");
    if (u.trunc() < 1 || !u.coeff(1).is_unit())
        throw NotInvertible("padic_iterate: u must be invertible");
    unsigned long p = u.ring()->p();

    mpz_class pk;
    mpz_pow_ui(pk.get_mpz_t(), mpz_class(p).get_mpz_t(), k);
    mpz_class zk;
    mpz_mod(zk.get_mpz_t(), z.get_mpz_t(), pk.get_mpz_t());

    // base-p digits of z_k; z_m = z mod p^m is the partial sum of digits
    std::vector<unsigned long> digits(k, 0);
    {
        mpz_class rest = zk;
        for (unsigned m = 0; m < k; ++m) {
            digits[m] = mpz_class(rest % p).get_ui();
            rest /= p;
        }
    }

    PadicIterate out{TruncatedSeries::identity(u.ring(), u.trunc()), {}, true};
    TruncatedSeries cur = out.value;          // u^{z_m}
    TruncatedSeries power_block = u;          // u^{p^m}
    Valuation prev_joint(0L);
    bool first = true;
    for (unsigned m = 0; m < k; ++m) {
        TruncatedSeries next =
            digits[m] == 0 ? cur : compose(cur, iterate(power_block, digits[m]));
        TruncatedSeries diff = next - cur;
        IterationStep step;
        step.level = m + 1;
        auto xo = diff.x_order();
        step.x_order = xo ? std::optional<unsigned long>(*xo) : std::nullopt;
        step.p_order = gauss_order(diff);
        step.joint_order = joint_order(diff);
        if (!first && step.joint_order < prev_joint) out.cauchy_nondecreasing = false;
        prev_joint = step.joint_order;
        first = false;
        out.steps.push_back(std::move(step));
        cur = std::move(next);
        if (m + 1 < k) power_block = iterate(power_block, p);
    }
    out.value = std::move(cur);
    return out;
}

SeriesValue evaluate(const TruncatedSeries& f, const RingElement& alpha) {
    if (!(alpha.ring() == f.ring() || *alpha.ring() == *f.ring()))
        throw MismatchedContext("evaluate: point in a different ring");
    Valuation va = alpha.valuation();
    if (!va.is_positive() || va.is_zero())
        throw NotInMaximalIdeal("evaluate: point must have positive valuation");
    RingElement value = evaluate_polynomial(f, alpha);
    Valuation tail = va.is_infinite()
                         ? Valuation::infinity()
                         : Valuation(mpq_class(va.value() * (static_cast<long>(f.trunc()) + 1)));
    Valuation precision = min(Valuation(static_cast<long>(f.ring()->precision())), tail);
    return {value, precision};
}

RingElement evaluate_polynomial(const TruncatedSeries& f, const RingElement& alpha) {
    RingElement acc = RingElement::zero(f.ring());
    for (unsigned i = f.trunc() + 1; i-- > 0;) acc = acc * alpha + f.coeff(i);
    return acc;
}

std::optional<unsigned> weierstrass_degree(const TruncatedSeries& f) {
    for (unsigned i = 0; i <= f.trunc(); ++i)
        if (f.coeff(i).is_unit()) return i;
    return std::nullopt;
}

namespace {

// Largest possible order of a true root of unity of the ring, as an exponent
// to test against: (q - 1) times the wild part.  The wild part is trivial
// except for p = 2 (the unit -1) and eisenstein rings ramified enough to
// contain p-power roots of unity (e >= p - 1).
mpz_class root_of_unity_exponent(const Ring& ring) {
    mpz_class ex = ring.residue_cardinality() - 1;
    unsigned long p = ring.p();
    if (p == 2) ex *= 2;
    if (ring.kind() == ExtensionKind::eisenstein && ring.ramification() >= p - 1) {
        unsigned long cap = ring.ramification() / (p - 1);
        unsigned long a = 1;
        for (unsigned long pw = p; pw <= cap; pw *= p) ++a;
        for (unsigned long i = 0; i < a; ++i) ex *= p;
    }
    return ex;
}

unsigned long multiplicative_order(const RingElement& c, const mpz_class& exponent_bound) {
    // order divides exponent_bound; peel prime factors
    mpz_class o = exponent_bound;
    mpz_class rest = exponent_bound;
    std::vector<mpz_class> primes;
    for (mpz_class q = 2; q * q <= rest;) {
        if (mpz_divisible_p(rest.get_mpz_t(), q.get_mpz_t())) {
            primes.push_back(q);
            while (mpz_divisible_p(rest.get_mpz_t(), q.get_mpz_t())) rest /= q;
        }
        q += (q == 2) ? 1 : 2;
    }
    if (rest > 1) primes.push_back(rest);
    for (const auto& q : primes)
        while (mpz_divisible_p(o.get_mpz_t(), q.get_mpz_t()) && c.pow(o / q).is_one()) o /= q;
    return mpz_class(o).get_ui();
}

}  // namespace

StabilityReport stability_report(const TruncatedSeries& f) {
    if (!f.zero_constant_term())
        throw NonzeroConstantTerm("stability_report: f(0) must vanish");
    if (f.trunc() < 1) throw TruncationTooSmall("stability_report: need trunc >= 1");
    const RingElement& c = f.coeff(1);
    StabilityReport rep{c,     c.is_zero(), false, std::nullopt,
                        false, false,       false, false,
                        weierstrass_degree(f)};
    Valuation vc = c.valuation();
    rep.is_invertible = vc.is_zero();
    if (rep.is_invertible) {
        mpz_class ex = root_of_unity_exponent(*f.ring());
        if (c.pow(ex).is_one()) {
            rep.is_root_of_unity = true;
            rep.root_of_unity_order = multiplicative_order(c, ex);
            rep.precision_caveat = true;  // congruence mod p^N, not an exact identity
        }
    }
    rep.is_stable = !rep.is_zero && !rep.is_root_of_unity;
    rep.is_noninvertible_finite_height =
        !rep.is_zero && !rep.is_invertible && rep.wideg.has_value();
    return rep;
}

TruncatedSeries embed_into(const TruncatedSeries& f, const RingPtr& ring) {
    if (f.ring() == ring || *f.ring() == *ring) return f;
    if (f.ring()->same_structure(*ring)) return f.to_ring(ring);
    if (f.ring()->kind() == ExtensionKind::trivial && f.ring()->p() == ring->p()) {
        TruncatedSeries lifted(ring, f.trunc());
        for (unsigned i = 0; i <= f.trunc(); ++i)
            lifted.set_coeff(i, RingElement(ring, f.coeff(i).coeffs()[0]));
        return lifted;
    }
    throw MismatchedContext("series is not over (a base of) the target ring");
}

std::string TruncatedSeries::str() const {
    std::ostringstream os;
    bool first = true;
    bool ext = ring_->degree() > 1;
    for (unsigned i = 0; i <= trunc(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        if (ext)
            os << "(" << c_[i].str() << ")";
        else
            os << c_[i].str();
        if (i >= 1) os << "*x";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    if (first) os << "0";
    os << " + O(x^" << trunc() + 1 << ")";
    return os.str();
}

}  // namespace padic

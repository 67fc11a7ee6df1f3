#include "padic/ring.hpp"

#include <algorithm>
#include <sstream>

namespace padic {

namespace {

// nonnegative remainder
mpz_class mod_pos(const mpz_class& x, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool is_prime_desk_scale(unsigned long p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (unsigned long q = 3; q * q <= p; q += 2)
        if (p % q == 0) return false;
    return true;
}

// ---- F_p[t] helpers (coefficients canonical in [0, p)) ----------------

using FpPoly = std::vector<mpz_class>;

void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, const mpz_class& p) {
    // m monic
    fp_trim(a);
    while (a.size() >= m.size()) {
        mpz_class c = a.back();
        std::size_t off = a.size() - m.size();
        if (c != 0)
            for (std::size_t i = 0; i + 1 < m.size(); ++i)
                a[off + i] = mod_pos(a[off + i] - c * m[i], p);
        a.pop_back();
        fp_trim(a);
    }
    return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, const mpz_class& p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    for (auto& c : r) c = mod_pos(c, p);
    return fp_mod(std::move(r), m, p);
}

FpPoly fp_powmod(FpPoly base, mpz_class e, const FpPoly& m, const mpz_class& p) {
    FpPoly r{1};
    base = fp_mod(std::move(base), m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fp_mulmod(r, base, m, p);
        base = fp_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

// extended gcd over F_p[t]; returns (g, s) with s*a = g mod b, g monic
std::pair<FpPoly, FpPoly> fp_gcdext(FpPoly a, FpPoly b, const mpz_class& p) {
    FpPoly s0{1}, s1{};
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        // divide a by b
        FpPoly q;
        mpz_class lead_inv;
        mpz_invert(lead_inv.get_mpz_t(), b.back().get_mpz_t(), p.get_mpz_t());
        FpPoly r = a;
        if (r.size() >= b.size()) q.assign(r.size() - b.size() + 1, mpz_class(0));
        while (r.size() >= b.size()) {
            mpz_class c = mod_pos(r.back() * lead_inv, p);
            std::size_t off = r.size() - b.size();
            q[off] = c;
            for (std::size_t i = 0; i < b.size(); ++i) r[off + i] = mod_pos(r[off + i] - c * b[i], p);
            fp_trim(r);
        }
        // s_next = s0 - q*s1
        FpPoly qs(q.size() + (s1.empty() ? 1 : s1.size()), mpz_class(0));
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
        FpPoly s2(std::max(s0.size(), qs.size()), mpz_class(0));
        for (std::size_t i = 0; i < s2.size(); ++i) {
            mpz_class v = (i < s0.size() ? s0[i] : mpz_class(0)) - (i < qs.size() ? qs[i] : mpz_class(0));
            s2[i] = mod_pos(v, p);
        }
        fp_trim(s2);
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // normalize gcd monic
    if (!a.empty() && a.back() != 1) {
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), a.back().get_mpz_t(), p.get_mpz_t());
        for (auto& c : a) c = mod_pos(c * inv, p);
        for (auto& c : s0) c = mod_pos(c * inv, p);
    }
    return {a, s0};
}

bool fp_irreducible(const FpPoly& m, const mpz_class& p) {
    // Rabin test: x^(p^d) = x mod m, and for each prime q | d,
    // gcd(x^(p^(d/q)) - x, m) = 1.
    std::size_t d = m.size() - 1;
    FpPoly x{0, 1};
    mpz_class pd;
    mpz_pow_ui(pd.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
    if (fp_powmod(x, pd, m, p) != fp_mod(x, m, p)) return false;
    std::size_t n = d;
    for (std::size_t q = 2; q <= n; ++q) {
        if (n % q != 0) continue;
        while (n % q == 0) n /= q;
        mpz_class e;
        mpz_pow_ui(e.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d / q));
        FpPoly xp = fp_powmod(x, e, m, p);
        // xp - x
        FpPoly diff = xp;
        if (diff.size() < 2) diff.resize(2, mpz_class(0));
        diff[1] = mod_pos(diff[1] - 1, p);
        fp_trim(diff);
        auto [g, s] = fp_gcdext(diff, m, p);
        (void)s;
        if (!(g.size() == 1 && g[0] == 1)) return false;
    }
    return true;
}

}  // namespace

std::string to_string(ExtensionKind kind) {
    switch (kind) {
        case ExtensionKind::trivial: return "trivial";
        case ExtensionKind::unramified: return "unramified";
        case ExtensionKind::eisenstein: return "eisenstein";
    }
    return "?";
}

Valuation integer_valuation(const mpz_class& n, unsigned long p) {
    if (n == 0) return Valuation::infinity();
    mpz_class rest, pz(static_cast<unsigned long>(p));
    auto v = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
    return Valuation(static_cast<long>(v));
}

RingPtr Ring::zp(unsigned long p, unsigned precision) {
    return make(p, precision, {mpz_class(0), mpz_class(1)}, ExtensionKind::trivial);
}

RingPtr Ring::make(unsigned long p, unsigned precision, std::vector<mpz_class> modulus,
                   ExtensionKind kind) {
    if (!is_prime_desk_scale(p) || p >= (1UL << 31))
        throw Error("p must be a prime below 2^31, got " + std::to_string(p));
    if (precision < 1) throw Error("precision must be >= 1");
    if (modulus.size() < 2 || modulus.back() != 1)
        throw Error("modulus must be monic of degree >= 1 (coefficients c_0..c_d, c_d = 1)");

    auto ring = std::shared_ptr<Ring>(new Ring());
    ring->p_ = p;
    ring->precision_ = precision;
    mpz_pow_ui(ring->pn_.get_mpz_t(), mpz_class(p).get_mpz_t(), precision);
    for (auto& c : modulus) c = mod_pos(c, ring->pn_);
    modulus.back() = 1;
    ring->modulus_ = std::move(modulus);
    ring->kind_ = kind;
    ring->degree_ = static_cast<unsigned>(ring->modulus_.size() - 1);

    unsigned d = ring->degree_;
    mpz_class pz(p);
    switch (kind) {
        case ExtensionKind::trivial:
            if (d != 1 || ring->modulus_[0] != 0)
                throw Error("trivial kind requires modulus m(t) = t");
            ring->e_ = ring->f_res_ = 1;
            break;
        case ExtensionKind::unramified: {
            if (d < 2) throw Error("unramified kind requires degree >= 2 (use trivial for d = 1)");
            FpPoly mbar(ring->modulus_.size());
            for (std::size_t i = 0; i < mbar.size(); ++i) mbar[i] = mod_pos(ring->modulus_[i], pz);
            if (!fp_irreducible(mbar, pz))
                throw Error("unramified modulus must be irreducible mod p");
            ring->e_ = 1;
            ring->f_res_ = d;
            break;
        }
        case ExtensionKind::eisenstein: {
            if (d < 2) throw Error("eisenstein kind requires degree >= 2 (use trivial for d = 1)");
            for (unsigned i = 0; i < d; ++i) {
                Valuation v = integer_valuation(ring->modulus_[i], p);
                if (v < Valuation(1))
                    throw Error("eisenstein modulus needs v_p(c_i) >= 1 below the leading term");
                if (i == 0 && v != Valuation(1))
                    throw Error("eisenstein modulus needs v_p(c_0) = 1 exactly");
            }
            ring->e_ = d;
            ring->f_res_ = 1;
            break;
        }
    }

    if (kind == ExtensionKind::unramified) {
        // frobenius(t): Hensel-lift the residue root t^p of m.
        RingPtr rp = ring;
        FpPoly mbar(ring->modulus_.size());
        for (std::size_t i = 0; i < mbar.size(); ++i) mbar[i] = mod_pos(ring->modulus_[i], pz);
        FpPoly r0 = fp_powmod({0, 1}, pz, mbar, pz);
        std::vector<mpz_class> coords(d, mpz_class(0));
        for (std::size_t i = 0; i < r0.size(); ++i) coords[i] = r0[i];
        RingElement r(rp, coords);
        auto eval_at = [&](const std::vector<mpz_class>& poly, const RingElement& x) {
            RingElement acc = RingElement::zero(rp);
            for (auto it = poly.rbegin(); it != poly.rend(); ++it)
                acc = acc * x + RingElement(rp, *it);
            return acc;
        };
        std::vector<mpz_class> mprime(d);
        for (unsigned i = 1; i <= d; ++i) mprime[i - 1] = mpz_class(i) * ring->modulus_[i];
        unsigned steps = 1;
        while ((1u << steps) < precision + 1) ++steps;
        for (unsigned s = 0; s <= steps; ++s)
            r = r - eval_at(ring->modulus_, r) * eval_at(mprime, r).inverse();
        if (!eval_at(ring->modulus_, r).is_zero())
            throw Error("internal: frobenius lift did not converge");
        ring->frob_image_ = r.coeffs();
    }

    return ring;
}

mpz_class Ring::residue_cardinality() const {
    mpz_class q;
    mpz_pow_ui(q.get_mpz_t(), mpz_class(p_).get_mpz_t(), f_res_);
    return q;
}

bool Ring::same_structure(const Ring& other) const {
    if (p_ != other.p_ || kind_ != other.kind_ || degree_ != other.degree_) return false;
    const mpz_class& pn = precision_ <= other.precision_ ? pn_ : other.pn_;
    for (unsigned i = 0; i <= degree_; ++i)
        if (mod_pos(modulus_[i], pn) != mod_pos(other.modulus_[i], pn)) return false;
    return true;
}

RingPtr Ring::at_precision(unsigned precision) const {
    return make(p_, precision, modulus_, kind_);
}

const std::vector<mpz_class>& Ring::frobenius_image() const {
    if (kind_ != ExtensionKind::unramified)
        throw UnsupportedExtension("frobenius image only exists for unramified extensions");
    return frob_image_;
}

std::string Ring::describe() const {
    std::ostringstream os;
    os << "Z_" << p_ << " (mod " << p_ << "^" << precision_ << ")";
    if (kind_ != ExtensionKind::trivial) os << "[t], " << to_string(kind_) << " degree " << degree_;
    return os.str();
}

// ---- RingElement -------------------------------------------------------

RingElement::RingElement(RingPtr ring, const mpz_class& constant) : ring_(std::move(ring)) {
    c_.assign(ring_->degree(), mpz_class(0));
    c_[0] = constant;
    canonicalize();
}

RingElement::RingElement(RingPtr ring, std::vector<mpz_class> coeffs) : ring_(std::move(ring)) {
    c_ = std::move(coeffs);
    if (c_.size() > ring_->degree()) {
        // reduce by the monic modulus
        const auto& m = ring_->modulus();
        unsigned d = ring_->degree();
        while (c_.size() > d) {
            mpz_class lead = c_.back();
            std::size_t off = c_.size() - 1 - d;
            if (lead != 0)
                for (unsigned i = 0; i < d; ++i) c_[off + i] -= lead * m[i];
            c_.pop_back();
        }
    }
    c_.resize(ring_->degree(), mpz_class(0));
    canonicalize();
}

void RingElement::canonicalize() {
    for (auto& c : c_) c = mod_pos(c, ring_->pn());
}

RingElement RingElement::zero(RingPtr ring) { return RingElement(std::move(ring), mpz_class(0)); }

RingElement RingElement::one(RingPtr ring) { return RingElement(std::move(ring), mpz_class(1)); }

RingElement RingElement::generator(RingPtr ring) {
    std::vector<mpz_class> c(ring->degree(), mpz_class(0));
    if (c.size() > 1) c[1] = 1;
    return RingElement(std::move(ring), std::move(c));
}

bool RingElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const mpz_class& c) { return c == 0; });
}

bool RingElement::is_one() const {
    if (c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](const mpz_class& c) { return c == 0; });
}

Valuation RingElement::valuation() const {
    unsigned long p = ring_->p();
    Valuation best = Valuation::infinity();
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Valuation vi = integer_valuation(c_[i], p);
        if (ring_->kind() == ExtensionKind::eisenstein)
            vi = vi + Valuation(static_cast<long>(i), static_cast<long>(ring_->ramification()));
        best = min(best, vi);
    }
    // terms have distinct valuations per kind (distinct fractional parts for
    // eisenstein, field residue for unramified), so the min is exact
    return best;
}

void require_same_ring(const RingElement& a, const RingElement& b) {
    if (a.ring() == b.ring() || *a.ring() == *b.ring()) return;
    throw MismatchedContext("operands live in different ring contexts: " + a.ring()->describe() +
                            " vs " + b.ring()->describe());
}

RingElement operator+(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    RingElement r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        r.c_[i] += b.c_[i];
        if (r.c_[i] >= r.ring_->pn()) r.c_[i] -= r.ring_->pn();
    }
    return r;
}

RingElement operator-(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    RingElement r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        r.c_[i] -= b.c_[i];
        if (r.c_[i] < 0) r.c_[i] += r.ring_->pn();
    }
    return r;
}

RingElement& RingElement::operator+=(const RingElement& b) {
    *this = *this + b;
    return *this;
}

RingElement& RingElement::operator-=(const RingElement& b) {
    *this = *this - b;
    return *this;
}

RingElement RingElement::operator-() const {
    RingElement r = *this;
    for (auto& c : r.c_) {
        if (c != 0) c = ring_->pn() - c;
    }
    return r;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    unsigned d = a.ring_->degree();
    if (d == 1) {
        RingElement r(a.ring_);
        r.c_.resize(1);
        r.c_[0] = mod_pos(a.c_[0] * b.c_[0], a.ring_->pn());
        return r;
    }
    std::vector<mpz_class> prod(2 * d - 1, mpz_class(0));
    for (unsigned i = 0; i < d; ++i) {
        if (a.c_[i] == 0) continue;
        for (unsigned j = 0; j < d; ++j) prod[i + j] += a.c_[i] * b.c_[j];
    }
    return RingElement(a.ring_, std::move(prod));
}

RingElement RingElement::pow(const mpz_class& n) const {
    if (n < 0) throw Error("pow: negative exponent (invert first)");
    RingElement r = one(ring_);
    RingElement base = *this;
    mpz_class e = n;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

RingElement RingElement::inverse() const {
    if (!is_unit()) throw NotAUnit("cannot invert element of valuation " + valuation().str());
    if (ring_->degree() == 1) {
        RingElement r(ring_);
        r.c_.resize(1);
        if (mpz_invert(r.c_[0].get_mpz_t(), c_[0].get_mpz_t(), ring_->pn().get_mpz_t()) == 0)
            throw NotAUnit("no inverse mod p^N");
        return r;
    }
    // invert in F_p[t]/(m) then Newton-lift: b <- b(2 - ab)
    mpz_class pz(ring_->p());
    FpPoly mbar(ring_->modulus().size());
    for (std::size_t i = 0; i < mbar.size(); ++i) mbar[i] = mod_pos(ring_->modulus()[i], pz);
    FpPoly abar(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) abar[i] = mod_pos(c_[i], pz);
    auto [g, s] = fp_gcdext(fp_mod(std::move(abar), mbar, pz), mbar, pz);
    if (!(g.size() == 1 && g[0] == 1)) throw NotAUnit("residue is not invertible");
    std::vector<mpz_class> bc(ring_->degree(), mpz_class(0));
    for (std::size_t i = 0; i < s.size(); ++i) bc[i] = s[i];
    RingElement b(ring_, std::move(bc));
    RingElement two = RingElement(ring_, mpz_class(2));
    unsigned steps = 0;
    while ((1u << steps) < ring_->precision()) ++steps;
    for (unsigned k = 0; k < steps; ++k) b = b * (two - *this * b);
    return b;
}

RingElement RingElement::frobenius() const {
    if (ring_->kind() == ExtensionKind::trivial) return *this;
    if (ring_->kind() != ExtensionKind::unramified)
        throw UnsupportedExtension("frobenius is only defined on unramified extensions");
    RingElement image(ring_, ring_->frobenius_image());
    RingElement acc = zero(ring_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * image + RingElement(ring_, *it);
    return acc;
}

RingElement RingElement::divide_by_p_power(unsigned k) const {
    if (k == 0) return *this;
    mpz_class pk;
    mpz_pow_ui(pk.get_mpz_t(), mpz_class(ring_->p()).get_mpz_t(), k);
    RingElement r(ring_);
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!mpz_divisible_p(c_[i].get_mpz_t(), pk.get_mpz_t()))
            throw Error("divide_by_p_power: coefficient not divisible by p^" + std::to_string(k));
        mpz_divexact(r.c_[i].get_mpz_t(), c_[i].get_mpz_t(), pk.get_mpz_t());
    }
    return r;
}

namespace {

// a / t in an eisenstein ring, defined when v(a) >= 1/e.  Uses
// t^-1 = -(1/c_0)(t^(d-1) + sum_{i>=1} c_i t^(i-1)) with c_0 = p*w, w a unit.
RingElement divide_by_uniformizer(const RingElement& a) {
    const RingPtr& ring = a.ring();
    unsigned d = ring->degree();
    const auto& m = ring->modulus();
    mpz_class c0 = a.coeffs()[0];
    mpz_class p(ring->p());
    if (!mpz_divisible_p(c0.get_mpz_t(), p.get_mpz_t()))
        throw Error("divide_by_uniformizer: element not in (t)");
    mpz_class c0_over_p;
    mpz_divexact(c0_over_p.get_mpz_t(), c0.get_mpz_t(), p.get_mpz_t());
    mpz_class w;
    mpz_divexact(w.get_mpz_t(), m[0].get_mpz_t(), p.get_mpz_t());
    RingElement winv = RingElement(ring, w).inverse();

    std::vector<mpz_class> shifted(d, mpz_class(0));
    for (unsigned i = 1; i < d; ++i) shifted[i - 1] = a.coeffs()[i];
    std::vector<mpz_class> tail(d, mpz_class(0));  // t^(d-1) + sum_{i>=1} m_i t^(i-1)
    tail[d - 1] = 1;
    for (unsigned i = 1; i < d; ++i) tail[i - 1] += m[i];
    return RingElement(ring, std::move(shifted)) -
           RingElement(ring, c0_over_p) * winv * RingElement(ring, std::move(tail));
}

}  // namespace

RingElement RingElement::divide(const RingElement& den) const {
    require_same_ring(*this, den);
    Valuation vd = den.valuation();
    if (vd.is_infinite()) throw NotAUnit("division by zero (at this precision)");
    if (vd.is_zero()) return *this * den.inverse();
    if (valuation() < vd)
        throw Error("divide: numerator valuation " + valuation().str() + " below denominator " +
                    vd.str());
    if (ring_->kind() == ExtensionKind::eisenstein) {
        mpq_class steps_q = vd.value() * static_cast<long>(ring_->ramification());
        unsigned long steps = mpz_class(steps_q.get_num() / steps_q.get_den()).get_ui();
        RingElement num = *this, d2 = den;
        for (unsigned long i = 0; i < steps; ++i) {
            num = divide_by_uniformizer(num);
            d2 = divide_by_uniformizer(d2);
        }
        return num * d2.inverse();
    }
    unsigned k = static_cast<unsigned>(mpz_class(vd.value().get_num()).get_ui());
    return divide_by_p_power(k) * den.divide_by_p_power(k).inverse();
}

bool operator==(const RingElement& a, const RingElement& b) {
    if (!(a.ring() == b.ring() || *a.ring() == *b.ring())) return false;
    return a.c_ == b.c_;
}

RingElement RingElement::to_ring(const RingPtr& other) const {
    if (!ring_->same_structure(*other))
        throw MismatchedContext("to_ring: different ring structure");
    return RingElement(other, c_);
}

std::string RingElement::str() const {
    // balanced representatives read better: 3^20 - 3 prints as -3
    auto balanced = [this](const mpz_class& c) {
        return 2 * c > ring_->pn() ? mpz_class(c - ring_->pn()) : c;
    };
    if (ring_->degree() == 1) return balanced(c_[0]).get_str();
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        os << balanced(c_[i]).get_str();
        if (i >= 1) os << "*t";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace padic

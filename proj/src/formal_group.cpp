#include "padic/formal_group.hpp"

#include <sstream>

namespace padic {

// ---- BivariateSeries ----------------------------------------------------

std::size_t BivariateSeries::index(unsigned i, unsigned j) const {
    unsigned r = i + j;
    return static_cast<std::size_t>(r) * (r + 1) / 2 + j;
}

BivariateSeries::BivariateSeries(RingPtr ring, unsigned trunc)
    : ring_(std::move(ring)), trunc_(trunc) {
    std::size_t n = static_cast<std::size_t>(trunc + 1) * (trunc + 2) / 2;
    c_.assign(n, RingElement::zero(ring_));
}

const RingElement& BivariateSeries::coeff(unsigned i, unsigned j) const {
    if (i + j > trunc_) throw Error("bivariate coefficient beyond truncation");
    return c_[index(i, j)];
}

void BivariateSeries::set_coeff(unsigned i, unsigned j, const RingElement& v) {
    if (i + j > trunc_) throw Error("bivariate coefficient beyond truncation");
    c_[index(i, j)] = v;
}

BivariateSeries BivariateSeries::variable_x(RingPtr ring, unsigned trunc) {
    BivariateSeries s(std::move(ring), trunc);
    if (trunc >= 1) s.set_coeff(1, 0, RingElement::one(s.ring_));
    return s;
}

BivariateSeries BivariateSeries::variable_y(RingPtr ring, unsigned trunc) {
    BivariateSeries s(std::move(ring), trunc);
    if (trunc >= 1) s.set_coeff(0, 1, RingElement::one(s.ring_));
    return s;
}

bool BivariateSeries::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

bool BivariateSeries::is_symmetric() const {
    for (unsigned r = 0; r <= trunc_; ++r)
        for (unsigned j = 0; j <= r; ++j)
            if (coeff(r - j, j) != coeff(j, r - j)) return false;
    return true;
}

BivariateSeries BivariateSeries::to_ring(const RingPtr& other) const {
    BivariateSeries s(other, trunc_);
    for (std::size_t k = 0; k < c_.size(); ++k) s.c_[k] = c_[k].to_ring(other);
    return s;
}

BivariateSeries operator+(const BivariateSeries& a, const BivariateSeries& b) {
    unsigned m = std::min(a.trunc_, b.trunc_);
    BivariateSeries r(a.ring_, m);
    for (unsigned rr = 0; rr <= m; ++rr)
        for (unsigned j = 0; j <= rr; ++j)
            r.set_coeff(rr - j, j, a.coeff(rr - j, j) + b.coeff(rr - j, j));
    return r;
}

BivariateSeries operator-(const BivariateSeries& a, const BivariateSeries& b) {
    unsigned m = std::min(a.trunc_, b.trunc_);
    BivariateSeries r(a.ring_, m);
    for (unsigned rr = 0; rr <= m; ++rr)
        for (unsigned j = 0; j <= rr; ++j)
            r.set_coeff(rr - j, j, a.coeff(rr - j, j) - b.coeff(rr - j, j));
    return r;
}

BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
    unsigned m = std::min(a.trunc_, b.trunc_);
    BivariateSeries r(a.ring_, m);
    for (unsigned r1 = 0; r1 <= m; ++r1)
        for (unsigned j1 = 0; j1 <= r1; ++j1) {
            const RingElement& ca = a.coeff(r1 - j1, j1);
            if (ca.is_zero()) continue;
            for (unsigned r2 = 0; r1 + r2 <= m; ++r2)
                for (unsigned j2 = 0; j2 <= r2; ++j2) {
                    const RingElement& cb = b.coeff(r2 - j2, j2);
                    if (cb.is_zero()) continue;
                    unsigned i = (r1 - j1) + (r2 - j2), j = j1 + j2;
                    r.set_coeff(i, j, r.coeff(i, j) + ca * cb);
                }
        }
    return r;
}

bool operator==(const BivariateSeries& a, const BivariateSeries& b) {
    if (a.trunc_ != b.trunc_) return false;
    if (!(a.ring_ == b.ring_ || *a.ring_ == *b.ring_)) return false;
    return a.c_ == b.c_;
}

std::string BivariateSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (unsigned r = 0; r <= trunc_; ++r)
        for (unsigned j = 0; j <= r; ++j) {
            const RingElement& c = coeff(r - j, j);
            if (c.is_zero()) continue;
            if (!first) os << " + ";
            os << c.str();
            if (r - j > 0) os << "*x" << (r - j > 1 ? "^" + std::to_string(r - j) : "");
            if (j > 0) os << "*y" << (j > 1 ? "^" + std::to_string(j) : "");
            first = false;
        }
    if (first) os << "0";
    return os.str();
}

BivariateSeries substitute_univariate(const TruncatedSeries& outer, const BivariateSeries& inner) {
    if (!inner.coeff(0, 0).is_zero())
        throw NonzeroConstantTerm("substitute_univariate: inner constant term must vanish");
    if (outer.trunc() < inner.trunc())
        throw TruncationTooSmall("substitute_univariate: outer series truncated below " +
                                 std::to_string(inner.trunc()));
    unsigned m = inner.trunc();
    auto top = outer.top_degree();
    unsigned hi = top ? std::min(*top, m) : 0;
    BivariateSeries acc(inner.ring(), m);
    for (unsigned i = hi + 1; i-- > 0;) {
        acc = acc * inner;
        acc.set_coeff(0, 0, acc.coeff(0, 0) + outer.coeff(i).to_ring(inner.ring()));
    }
    return acc;
}

BivariateSeries substitute_pair(const BivariateSeries& F, const TruncatedSeries& ex,
                                const TruncatedSeries& ey) {
    if (!ex.zero_constant_term() || !ey.zero_constant_term())
        throw NonzeroConstantTerm("substitute_pair: substitutions must have zero constant term");
    unsigned m = F.trunc();
    if (ex.trunc() < m || ey.trunc() < m)
        throw TruncationTooSmall("substitute_pair: substitutions truncated below " +
                                 std::to_string(m));
    // powers of the substitutions, truncated at m
    std::vector<TruncatedSeries> px, py;
    px.push_back(TruncatedSeries::monomial(F.ring(), 0, m));
    py.push_back(TruncatedSeries::monomial(F.ring(), 0, m));
    for (unsigned k = 1; k <= m; ++k) {
        px.push_back(px.back() * ex.truncated(m));
        py.push_back(py.back() * ey.truncated(m));
    }
    BivariateSeries out(F.ring(), m);
    for (unsigned r = 0; r <= m; ++r)
        for (unsigned j = 0; j <= r; ++j) {
            const RingElement& c = F.coeff(r - j, j);
            if (c.is_zero()) continue;
            // c * ex^(r-j)(x) * ey^j(y), truncated by total degree
            for (unsigned a = r - j; a <= m; ++a) {
                const RingElement& xa = px[r - j].coeff(a);
                if (xa.is_zero()) continue;
                RingElement cxa = c * xa;
                for (unsigned b = j; a + b <= m; ++b) {
                    const RingElement& yb = py[j].coeff(b);
                    if (yb.is_zero()) continue;
                    out.set_coeff(a, b, out.coeff(a, b) + cxa * yb);
                }
            }
        }
    return out;
}

TruncatedSeries substitute_diagonal(const BivariateSeries& F, const TruncatedSeries& a,
                                    const TruncatedSeries& b) {
    if (!a.zero_constant_term() || !b.zero_constant_term())
        throw NonzeroConstantTerm("substitute_diagonal: substitutions must have zero constant term");
    unsigned m = std::min({F.trunc(), a.trunc(), b.trunc()});
    std::vector<TruncatedSeries> pa, pb;
    pa.push_back(TruncatedSeries::monomial(F.ring(), 0, m));
    pb.push_back(TruncatedSeries::monomial(F.ring(), 0, m));
    for (unsigned k = 1; k <= m; ++k) {
        pa.push_back(pa.back() * a.truncated(m));
        pb.push_back(pb.back() * b.truncated(m));
    }
    TruncatedSeries out(F.ring(), m);
    for (unsigned r = 0; r <= m; ++r)
        for (unsigned j = 0; j <= r; ++j) {
            const RingElement& c = F.coeff(r - j, j);
            if (c.is_zero()) continue;
            TruncatedSeries term = scale(pa[r - j] * pb[j], c);
            out = out + term;
        }
    return out;
}

// ---- trivariate scratch type for the associativity certificate ---------

namespace {

class Tri {
public:
    Tri(RingPtr ring, unsigned m) : ring_(std::move(ring)), m_(m) {
        std::size_t n = static_cast<std::size_t>(m + 1) * (m + 2) * (m + 3) / 6;
        c_.assign(n, RingElement::zero(ring_));
    }

    static std::size_t idx(unsigned i, unsigned j, unsigned k) {
        unsigned r = i + j + k;
        std::size_t base = static_cast<std::size_t>(r) * (r + 1) * (r + 2) / 6;
        std::size_t local = static_cast<std::size_t>(j) * (r + 1) - static_cast<std::size_t>(j) * (j - 1) / 2 + k;
        return base + local;
    }

    const RingElement& at(unsigned i, unsigned j, unsigned k) const { return c_[idx(i, j, k)]; }
    RingElement& at(unsigned i, unsigned j, unsigned k) { return c_[idx(i, j, k)]; }

    unsigned trunc() const { return m_; }
    const RingPtr& ring() const { return ring_; }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (unsigned r = 0; r <= m_; ++r)
            for (unsigned j = 0; j <= r; ++j)
                for (unsigned k = 0; j + k <= r; ++k) fn(r - j - k, j, k, at(r - j - k, j, k));
    }

    friend Tri operator+(const Tri& a, const Tri& b) {
        Tri r(a.ring_, a.m_);
        for (std::size_t t = 0; t < r.c_.size(); ++t) r.c_[t] = a.c_[t] + b.c_[t];
        return r;
    }

    friend Tri operator*(const Tri& a, const Tri& b) {
        Tri r(a.ring_, a.m_);
        a.for_each([&](unsigned i1, unsigned j1, unsigned k1, const RingElement& ca) {
            if (ca.is_zero()) return;
            b.for_each([&](unsigned i2, unsigned j2, unsigned k2, const RingElement& cb) {
                if (cb.is_zero()) return;
                if (i1 + j1 + k1 + i2 + j2 + k2 > r.m_) return;
                RingElement& tgt = r.at(i1 + i2, j1 + j2, k1 + k2);
                tgt += ca * cb;
            });
        });
        return r;
    }

    bool operator==(const Tri& o) const { return c_ == o.c_; }

    // first coefficient where the two differ, for certificate details
    static std::string first_difference(const Tri& a, const Tri& b) {
        for (unsigned r = 0; r <= a.m_; ++r)
            for (unsigned j = 0; j <= r; ++j)
                for (unsigned k = 0; j + k <= r; ++k) {
                    unsigned i = r - j - k;
                    if (a.at(i, j, k) != b.at(i, j, k))
                        return "x^" + std::to_string(i) + " y^" + std::to_string(j) + " z^" +
                               std::to_string(k);
                }
        return "";
    }

private:
    RingPtr ring_;
    unsigned m_;
    std::vector<RingElement> c_;
};

// x -> variable va, y -> variable vb (0 = x, 1 = y, 2 = z)
Tri embed_bivariate(const BivariateSeries& F, unsigned va, unsigned vb) {
    Tri t(F.ring(), F.trunc());
    for (unsigned r = 0; r <= F.trunc(); ++r)
        for (unsigned j = 0; j <= r; ++j) {
            const RingElement& c = F.coeff(r - j, j);
            if (c.is_zero()) continue;
            unsigned e[3] = {0, 0, 0};
            e[va] += r - j;
            e[vb] += j;
            t.at(e[0], e[1], e[2]) = c;
        }
    return t;
}

Tri variable(const RingPtr& ring, unsigned m, unsigned v) {
    Tri t(ring, m);
    unsigned e[3] = {0, 0, 0};
    e[v] = 1;
    t.at(e[0], e[1], e[2]) = RingElement::one(ring);
    return t;
}

// F(A, B) with trivariate arguments, Horner in A over precomputed B powers
Tri apply_bivariate(const BivariateSeries& F, const Tri& A, const Tri& B) {
    unsigned m = F.trunc();
    std::vector<Tri> pb;
    pb.emplace_back(F.ring(), m);
    pb[0].at(0, 0, 0) = RingElement::one(F.ring());
    for (unsigned k = 1; k <= m; ++k) pb.push_back(pb.back() * B);
    Tri acc(F.ring(), m);
    for (unsigned i = m + 1; i-- > 0;) {
        acc = acc * A;
        // row_i = sum_j c_ij B^j
        for (unsigned j = 0; i + j <= m; ++j) {
            const RingElement& c = F.coeff(i, j);
            if (c.is_zero()) continue;
            pb[j].for_each([&](unsigned a, unsigned b, unsigned cc, const RingElement& v) {
                if (v.is_zero()) return;
                acc.at(a, b, cc) += c * v;
            });
        }
    }
    return acc;
}

}  // namespace

// ---- Lubin-Tate ---------------------------------------------------------

LubinTateData LubinTateData::make(RingElement pi, TruncatedSeries f) {
    RingPtr ring = f.ring();
    if (!(pi.ring() == ring || *pi.ring() == *ring))
        throw MismatchedContext("lubin-tate data: pi and f over different rings");
    if (!f.zero_constant_term()) throw Error("lubin-tate data: f(0) must vanish");
    Valuation vpi = pi.valuation();
    if (vpi != Valuation(1, static_cast<long>(ring->ramification())))
        throw Error("lubin-tate data: pi must be a uniformizer, v(pi) = 1/e; got " + vpi.str());
    mpz_class qz = ring->residue_cardinality();
    if (qz > 65536) throw Error("lubin-tate data: residue cardinality beyond desk scale");
    unsigned long q = qz.get_ui();
    if (f.trunc() < q)
        throw TruncationTooSmall("lubin-tate data: truncation below residue cardinality q = " +
                                 std::to_string(q));
    if (f.coeff(1) != pi) throw Error("lubin-tate data: f = pi x mod degree 2 fails");
    auto wd = weierstrass_degree(f);
    if (!wd || *wd != q)
        throw Error("lubin-tate data: wideg(f) must equal q = " + std::to_string(q));
    for (unsigned i = 0; i <= f.trunc(); ++i) {
        Valuation v = i == q ? (f.coeff(i) - RingElement::one(ring)).valuation()
                             : f.coeff(i).valuation();
        if (!(v > Valuation(0L)))
            throw Error("lubin-tate data: f = x^q mod the maximal ideal fails at degree " +
                        std::to_string(i));
    }
    return LubinTateData{ring, std::move(pi), q, std::move(f)};
}

LubinTateData LubinTateData::from_series(const TruncatedSeries& f) {
    if (f.trunc() < 1) throw TruncationTooSmall("lubin-tate data: empty series");
    return make(f.coeff(1), f);
}

FormalGroupLaw lubin_tate_group(const LubinTateData& lt, unsigned m_total) {
    if (m_total < 1) throw Error("lubin_tate_group: total degree must be >= 1");
    if (lt.f.trunc() < m_total)
        throw TruncationTooSmall("lubin_tate_group: f truncated below total degree " +
                                 std::to_string(m_total));
    unsigned n = lt.ring->precision();
    if (n + m_total > 1u << 20)
        throw PrecisionExhausted("lubin_tate_group: internal precision overflows limits");

    // one digit is lost per homogeneous degree (division by pi^r - pi), so
    // work at N + m_total and report at N
    RingPtr hi = lt.ring->at_precision(n + m_total);
    TruncatedSeries f = lt.f.to_ring(hi).truncated(m_total);
    RingElement pi = lt.pi.to_ring(hi);

    BivariateSeries F = BivariateSeries::variable_x(hi, m_total) +
                        BivariateSeries::variable_y(hi, m_total);
    for (unsigned r = 2; r <= m_total; ++r) {
        BivariateSeries defect = substitute_univariate(f, F) - substitute_pair(F, f, f);
        RingElement denom = pi.pow(r) - pi;
        for (unsigned j = 0; j <= r; ++j) {
            const RingElement& e = defect.coeff(r - j, j);
            if (e.is_zero()) continue;
            F.set_coeff(r - j, j, F.coeff(r - j, j) + e.divide(denom));
        }
    }

    FormalGroupLaw out{F.to_ring(lt.ring)};
    // reported digits must satisfy the defining identity on the nose
    BivariateSeries check = substitute_univariate(lt.f.truncated(m_total), out.law) -
                            substitute_pair(out.law, lt.f.truncated(m_total), lt.f.truncated(m_total));
    if (!check.is_zero())
        throw PrecisionExhausted("lubin_tate_group: construction defect visible at precision N");
    return out;
}

TruncatedSeries lt_hom(const RingElement& a, const LubinTateData& src, const LubinTateData& dst,
                       unsigned trunc) {
    if (!(*src.ring == *dst.ring))
        throw MismatchedContext("lt_hom: source and destination rings differ");
    if (src.pi.valuation() != dst.pi.valuation())
        throw Error("lt_hom: uniformizers generate different ideals");
    if (src.f.trunc() < trunc || dst.f.trunc() < trunc)
        throw TruncationTooSmall("lt_hom: lubin-tate series truncated below " +
                                 std::to_string(trunc));
    unsigned n = src.ring->precision();
    if (n + trunc > 1u << 20) throw PrecisionExhausted("lt_hom: internal precision overflows");

    RingPtr hi = src.ring->at_precision(n + trunc);
    TruncatedSeries fs = src.f.to_ring(hi).truncated(trunc);
    TruncatedSeries fd = dst.f.to_ring(hi).truncated(trunc);
    RingElement pis = src.pi.to_ring(hi), pid = dst.pi.to_ring(hi);

    // powers of src.f: A(src.f) = sum_j c_j fs^j updated incrementally
    std::vector<TruncatedSeries> fpow;
    fpow.push_back(TruncatedSeries::monomial(hi, 0, trunc));
    for (unsigned k = 1; k <= trunc; ++k) fpow.push_back(fpow.back() * fs);

    TruncatedSeries A(hi, trunc);
    A.set_coeff(1, a.to_ring(hi));
    TruncatedSeries right = scale(fpow[1], A.coeff(1));  // A(src.f)
    for (unsigned r = 2; r <= trunc; ++r) {
        TruncatedSeries left = compose(fd, A);
        RingElement phi = left.coeff(r) - right.coeff(r);
        if (phi.is_zero()) continue;
        RingElement c = phi.divide(pis.pow(r) - pid);
        A.set_coeff(r, c);
        right = right + scale(fpow[r], c);
    }
    return A.to_ring(src.ring);
}

Certificate verify_group_law(const FormalGroupLaw& F) {
    Certificate cert;
    const BivariateSeries& law = F.law;
    unsigned m = law.trunc();
    const RingPtr& ring = law.ring();

    {
        std::string bad;
        for (unsigned i = 0; i <= m && bad.empty(); ++i) {
            bool ok_x = i == 1 ? law.coeff(1, 0).is_one() : law.coeff(i, 0).is_zero();
            if (!ok_x) bad = "x^" + std::to_string(i) + " y^0";
            bool ok_y = i == 1 ? law.coeff(0, 1).is_one() : law.coeff(0, i).is_zero();
            if (bad.empty() && !ok_y) bad = "x^0 y^" + std::to_string(i);
        }
        cert.check("identity", bad.empty(),
                   bad.empty() ? "F(x,0) = x and F(0,y) = y" : "first failure at " + bad);
    }
    {
        std::string bad;
        for (unsigned r = 0; r <= m && bad.empty(); ++r)
            for (unsigned j = 0; j <= r; ++j)
                if (law.coeff(r - j, j) != law.coeff(j, r - j)) {
                    bad = "x^" + std::to_string(r - j) + " y^" + std::to_string(j);
                    break;
                }
        cert.check("commutativity", bad.empty(),
                   bad.empty() ? "F(x,y) = F(y,x)" : "first failure at " + bad);
    }
    {
        Tri inner_xy = embed_bivariate(law, 0, 1);
        Tri inner_yz = embed_bivariate(law, 1, 2);
        Tri lhs = apply_bivariate(law, inner_xy, variable(ring, m, 2));
        Tri rhs = apply_bivariate(law, variable(ring, m, 0), inner_yz);
        bool okay = lhs == rhs;
        cert.check("associativity", okay,
                   okay ? "F(F(x,y),z) = F(x,F(y,z)) mod total degree " + std::to_string(m)
                        : "first failure at " + Tri::first_difference(lhs, rhs));
    }
    return cert;
}

Certificate verify_endomorphism(const FormalGroupLaw& F, const TruncatedSeries& e) {
    Certificate cert;
    if (!e.zero_constant_term())
        throw NonzeroConstantTerm("verify_endomorphism: e(0) must vanish");
    BivariateSeries lhs = substitute_univariate(e, F.law);
    BivariateSeries rhs = substitute_pair(F.law, e, e);
    std::string bad;
    for (unsigned r = 0; r <= F.law.trunc() && bad.empty(); ++r)
        for (unsigned j = 0; j <= r; ++j)
            if (lhs.coeff(r - j, j) != rhs.coeff(r - j, j)) {
                bad = "x^" + std::to_string(r - j) + " y^" + std::to_string(j);
                break;
            }
    cert.check("endomorphism", bad.empty(),
               bad.empty() ? "e(F(x,y)) = F(e(x),e(y)) mod total degree " +
                                 std::to_string(F.law.trunc())
                           : "first failure at " + bad);
    return cert;
}

std::vector<TorsionLevel> torsion_ladder(const LubinTateData& lt, unsigned depth) {
    auto ladder = iterate_ladder(lt.f, depth);
    std::vector<TorsionLevel> out;
    mpq_class qk(1);  // q^(k-1)
    for (const auto& level : ladder) {
        TorsionLevel tl{level, 0, mpq_class(0), false};
        mpq_class count = qk * (static_cast<long>(lt.q) - 1);  // q^k - q^(k-1)
        tl.predicted_count = static_cast<unsigned long>(count.get_num().get_ui());
        tl.predicted_valuation = 1 / count;
        tl.matches_prediction = level.new_roots.size() == 1 &&
                                level.new_roots[0].first == tl.predicted_valuation &&
                                level.new_roots[0].second == tl.predicted_count;
        out.push_back(std::move(tl));
        qk *= static_cast<long>(lt.q);
    }
    return out;
}

}  // namespace padic

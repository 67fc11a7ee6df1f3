#include "padic/newton.hpp"

#include <algorithm>
#include <map>

namespace padic {

namespace {

mpq_class valuation_q(const RingElement& c) {
    Valuation v = c.valuation();
    if (v.is_infinite()) throw Error("internal: valuation of a nonzero coefficient expected");
    return v.value();
}

}  // namespace

NewtonPolygon newton_polygon(const TruncatedSeries& f, bool strip_zero) {
    NewtonPolygon np;
    auto ord = f.x_order();
    if (!ord) throw WeierstrassDegreeNotVisible("newton polygon of the zero series");

    unsigned base = 0;
    if (strip_zero) {
        np.stripped_power = *ord;
        base = *ord;
    }
    std::optional<unsigned> wd;
    for (unsigned i = base; i <= f.trunc(); ++i)
        if (f.coeff(i).is_unit()) {
            wd = i;
            break;
        }
    if (!wd)
        throw WeierstrassDegreeNotVisible(
            "no unit coefficient up to x^" + std::to_string(f.trunc()) +
            "; cannot certify the polygon's right endpoint");

    for (unsigned i = base; i <= *wd; ++i) {
        if (f.coeff(i).is_zero()) continue;
        np.points.emplace_back(i - base, valuation_q(f.coeff(i)));
    }

    // lower hull, monotone chain; collinear middle points are dropped so the
    // segments that come out are maximal
    for (const auto& pt : np.points) {
        while (np.vertices.size() >= 2) {
            const auto& a = np.vertices[np.vertices.size() - 2];
            const auto& b = np.vertices.back();
            mpq_class lhs = (mpq_class(b.first) - mpq_class(a.first)) * (pt.second - a.second);
            mpq_class rhs = (mpq_class(pt.first) - mpq_class(a.first)) * (b.second - a.second);
            if (lhs <= rhs)
                np.vertices.pop_back();
            else
                break;
        }
        np.vertices.push_back(pt);
    }

    for (std::size_t i = 1; i < np.vertices.size(); ++i) {
        const auto& a = np.vertices[i - 1];
        const auto& b = np.vertices[i];
        mpq_class slope = (b.second - a.second) / (mpq_class(b.first) - mpq_class(a.first));
        np.segments.push_back({slope, b.first - a.first});
    }
    return np;
}

ValuationMultiset root_valuations(const NewtonPolygon& np) {
    ValuationMultiset out;
    for (const auto& seg : np.segments) {
        if (seg.slope >= 0) continue;
        out.emplace_back(mpq_class(-seg.slope), seg.length);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    return out;
}

RingElement hensel_lift(const TruncatedSeries& f, const RingElement& a0) {
    const RingPtr& ring = a0.ring();
    TruncatedSeries poly = embed_into(f, ring);
    TruncatedSeries dpoly = derivative(poly);

    Valuation vf = evaluate_polynomial(poly, a0).valuation();
    Valuation vdf = evaluate_polynomial(dpoly, a0).valuation();
    if (!(vf > vdf + vdf))
        throw HenselConditionFailed("need v(f(a0)) > 2 v(f'(a0)); got v(f(a0)) = " + vf.str() +
                                    ", v(f'(a0)) = " + vdf.str());

    unsigned n = ring->precision();
    RingPtr work = ring;
    TruncatedSeries pw = poly, dpw = dpoly;
    RingElement a = a0;
    if (!vdf.is_zero()) {
        // non-unit derivative: each correction divides by p^ceil(v(f')),
        // so run at boosted precision and reduce at the end
        mpq_class k = vdf.value();
        unsigned kc = static_cast<unsigned>(mpz_class((k.get_num() + k.get_den() - 1) / k.get_den()).get_ui());
        work = ring->at_precision(n + 2 * kc + 2);
        pw = poly.to_ring(work);
        dpw = derivative(pw);
        a = a0.to_ring(work);
    }

    unsigned max_steps = 2;
    while ((1u << max_steps) < work->precision()) ++max_steps;
    for (unsigned s = 0; s <= max_steps + 1; ++s) {
        RingElement fa = evaluate_polynomial(pw, a);
        if (fa.is_zero()) break;
        a = a - fa.divide(evaluate_polynomial(dpw, a));
    }
    RingElement result = work == ring ? a : a.to_ring(ring);
    Valuation residual = evaluate_polynomial(poly, result).valuation();
    if (residual < Valuation(static_cast<long>(n)))
        throw PrecisionExhausted("hensel_lift stalled at v(f(a)) = " + residual.str());
    return result;
}

std::pair<TruncatedSeries, RingElement> divide_linear(const TruncatedSeries& f,
                                                      const RingElement& alpha) {
    unsigned m = f.trunc();
    TruncatedSeries q(f.ring(), m == 0 ? 0 : m - 1);
    RingElement acc = RingElement::zero(f.ring());
    for (unsigned i = m + 1; i-- > 1;) {
        acc = acc * alpha + f.coeff(i);
        q.set_coeff(i - 1, acc);
    }
    RingElement rem = acc * alpha + f.coeff(0);
    return {q, rem};
}

unsigned multiplicity_at_precision(const TruncatedSeries& f, const RingElement& alpha) {
    // remainder below valuation N/2 counts as nonzero (guard band against
    // accumulated truncation noise)
    Valuation threshold(static_cast<long>(f.ring()->precision()), 2);
    unsigned count = 0;
    TruncatedSeries g = f;
    while (g.top_degree() && *g.top_degree() > 0) {
        auto [q, rem] = divide_linear(g, alpha);
        if (rem.valuation() < threshold) break;
        ++count;
        g = q;
    }
    return count;
}

RingRoots roots_in_ring(const TruncatedSeries& f, const RingPtr& ring) {
    unsigned long p = ring->p();
    unsigned d = ring->degree();
    mpz_class size;
    mpz_pow_ui(size.get_mpz_t(), mpz_class(p).get_mpz_t(), d);
    if (size > 65536)
        throw ResidueFieldTooLarge("residue enumeration has " + size.get_str() +
                                   " candidates; limit is 2^16");
    unsigned long count = size.get_ui();

    TruncatedSeries g = embed_into(f, ring);  // base-ring polynomials may be
                                              // searched in an extension
    if (!g.top_degree()) throw Error("roots_in_ring: zero polynomial");

    // strip integer content so Hensel sees the primitive part (3x + 3 has the
    // same roots as x + 1); root residuals only gain valuation from this
    {
        long content = -1;
        for (unsigned i = 0; i <= g.trunc() && content != 0; ++i)
            for (const auto& coord : g.coeff(i).coeffs()) {
                if (coord == 0) continue;
                Valuation v = integer_valuation(coord, p);
                long vi = static_cast<long>(mpz_class(v.value().get_num()).get_si());
                if (content < 0 || vi < content) content = vi;
                if (content == 0) break;
            }
        if (content > 0)
            for (unsigned i = 0; i <= g.trunc(); ++i)
                g.set_coeff(i, g.coeff(i).divide_by_p_power(static_cast<unsigned>(content)));
    }

    std::vector<RingElement> candidates;
    candidates.reserve(count);
    for (unsigned long idx = 0; idx < count; ++idx) {
        std::vector<mpz_class> coords(d);
        unsigned long rest = idx;
        for (unsigned i = 0; i < d; ++i) {
            coords[i] = static_cast<unsigned long>(rest % p);
            rest /= p;
        }
        candidates.emplace_back(ring, std::move(coords));
    }

    Valuation half_n(static_cast<long>(ring->precision()), 2);
    RingRoots out;
    while (g.top_degree() && *g.top_degree() > 0) {
        TruncatedSeries dg = derivative(g);
        std::optional<RingElement> found;
        for (const auto& a0 : candidates) {
            Valuation vf = evaluate_polynomial(g, a0).valuation();
            if (vf.is_zero()) continue;
            Valuation vdf = evaluate_polynomial(dg, a0).valuation();
            if (vf > vdf + vdf) {
                found = hensel_lift(g, a0);
                break;
            }
        }
        if (!found) break;
        unsigned mult = 0;
        while (g.top_degree() && *g.top_degree() > 0) {
            auto [q, rem] = divide_linear(g, *found);
            if (rem.valuation() < half_n) break;
            g = q;
            ++mult;
        }
        if (mult == 0) break;  // certified root the division refuses; stop rather than loop
        bool merged = false;
        for (auto& [root, m] : out.roots)
            if (root == *found) {
                m += mult;
                merged = true;
            }
        if (!merged) out.roots.emplace_back(*found, mult);
    }

    // residues still carrying roots that no simple lift reaches
    for (const auto& a0 : candidates) {
        Valuation vf = evaluate_polynomial(g, a0).valuation();
        if (vf.is_zero()) continue;
        Valuation vdf = evaluate_polynomial(derivative(g), a0).valuation();
        if (!(vf > vdf + vdf)) out.singular_residues.push_back(a0);
    }
    return out;
}

unsigned long max_small_roots(const TruncatedSeries& f) {
    auto wd = weierstrass_degree(f);
    if (!wd)
        throw WeierstrassDegreeNotVisible("max_small_roots: no unit coefficient up to x^" +
                                          std::to_string(f.trunc()));
    return *wd;
}

namespace {

using VMap = std::map<mpq_class, long>;

VMap to_map(const ValuationMultiset& ms) {
    VMap m;
    for (const auto& [v, c] : ms) m[v] += static_cast<long>(c);
    return m;
}

}  // namespace

std::vector<RootLadderLevel> iterate_ladder(const TruncatedSeries& f, unsigned depth) {
    StabilityReport rep = stability_report(f);
    if (!rep.is_noninvertible_finite_height)
        throw Error("iterate_ladder: requires a noninvertible stable series of finite height");
    unsigned long d = *rep.wideg;
    unsigned long need = 1;
    for (unsigned k = 0; k < depth; ++k) {
        if (need > (1UL << 40) / d)
            throw TruncationTooSmall("iterate_ladder: d^depth overflows any usable truncation");
        need *= d;
    }
    if (f.trunc() < need)
        throw TruncationTooSmall("iterate_ladder: need trunc >= wideg^depth = " +
                                 std::to_string(need) + ", have " + std::to_string(f.trunc()));

    std::vector<RootLadderLevel> out;
    VMap prev;
    unsigned long cumulative = 0;
    TruncatedSeries it = TruncatedSeries::identity(f.ring(), f.trunc());
    for (unsigned k = 1; k <= depth; ++k) {
        it = compose(f, it);
        ValuationMultiset cur = root_valuations(newton_polygon(it, /*strip_zero=*/true));
        VMap diff = to_map(cur);
        for (const auto& [v, c] : prev) {
            diff[v] -= c;
            if (diff[v] < 0)
                throw Error("iterate_ladder: level " + std::to_string(k) +
                            " lost roots of valuation " + v.get_str() +
                            " present at the previous level");
        }
        RootLadderLevel level;
        level.level = k;
        level.new_root_count = 0;
        for (const auto& [v, c] : diff) {
            if (c == 0) continue;
            level.new_roots.emplace_back(v, static_cast<unsigned long>(c));
            level.new_root_count += static_cast<unsigned long>(c);
        }
        std::sort(level.new_roots.begin(), level.new_roots.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        cumulative += level.new_root_count;
        level.cumulative_count = cumulative;
        out.push_back(std::move(level));
        prev = to_map(cur);
    }
    return out;
}

}  // namespace padic

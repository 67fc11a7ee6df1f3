#include "padic/dynamics.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace padic {

TruncatedSeries condense(const TruncatedSeries& f, unsigned d) {
    if (!f.zero_constant_term()) throw NonzeroConstantTerm("condense: f(0) must vanish");
    if (d == 0) throw Error("condense: d must be positive");
    if (d == 1) return f;
    TruncatedSeries power = TruncatedSeries::monomial(f.ring(), 0, f.trunc());
    for (unsigned k = 0; k < d; ++k) power = power * f;
    for (unsigned i = 0; i <= power.trunc(); ++i)
        if (i % d != 0 && !power.coeff(i).is_zero())
            throw NotCondensable("f^" + std::to_string(d) + " contains exponent " +
                                 std::to_string(i) + " not divisible by " + std::to_string(d));
    TruncatedSeries g(f.ring(), f.trunc() / d);
    for (unsigned k = 0; k <= g.trunc(); ++k) g.set_coeff(k, power.coeff(d * k));
    return g;
}

Certificate verify_isogeny(const TruncatedSeries& h, const TruncatedSeries& f_src,
                           const TruncatedSeries& f_dst) {
    Certificate cert;
    cert.check("h-vanishes-at-origin", h.zero_constant_term(),
               h.zero_constant_term() ? "h(0) = 0" : "h(0) != 0");
    if (!h.zero_constant_term()) return cert;
    TruncatedSeries lhs = compose(h, f_src);
    TruncatedSeries rhs = compose(f_dst, h);
    TruncatedSeries defect = lhs - rhs;
    auto bad = defect.x_order();
    cert.check("intertwining", !bad,
               !bad ? "h o f_src = f_dst o h mod (p^N, x^" + std::to_string(defect.trunc()) + ")"
                    : "first failing coefficient at x^" + std::to_string(*bad) + " = " +
                          defect.coeff(*bad).str());
    return cert;
}

Certificate torsion_image_check(const TruncatedSeries& h_in, const TruncatedSeries& f_src,
                                const TruncatedSeries& f_dst,
                                const std::vector<RingElement>& roots, unsigned level) {
    if (roots.empty()) throw Error("torsion_image_check: empty root list");
    const RingPtr& ring = roots.front().ring();  // roots may live in an extension
    TruncatedSeries h = embed_into(h_in, ring);
    TruncatedSeries src_it = iterate(embed_into(f_src, ring), level);
    TruncatedSeries dst_it = iterate(embed_into(f_dst, ring), level);
    Certificate cert;
    std::string offenders;
    for (const auto& alpha : roots) {
        SeriesValue ev = evaluate(src_it, alpha);
        if (ev.value.valuation() < ev.precision)
            offenders += (offenders.empty() ? "" : ", ") + alpha.str();
    }
    if (!offenders.empty())
        throw NotATorsionPoint("not level-" + std::to_string(level) +
                               " torsion at precision: " + offenders);
    std::size_t idx = 0;
    for (const auto& alpha : roots) {
        RingElement image = evaluate(h, alpha).value;
        SeriesValue ev = evaluate(dst_it, image);
        bool okay = ev.value.valuation() >= ev.precision;
        cert.check("image-" + std::to_string(idx++), okay,
                   "h(" + alpha.str() + ") = " + image.str() +
                       (okay ? " is torsion at precision " + ev.precision.str()
                             : " fails: v = " + ev.value.valuation().str()));
    }
    return cert;
}

std::vector<PreperLevel> preper_ladder(const TruncatedSeries& u, unsigned depth) {
    // identity-like inputs (stability fails through a root of unity) are
    // allowed and surface as AllPointsFixed levels
    StabilityReport rep = stability_report(u);
    if (!rep.is_invertible) throw NotInvertible("preper_ladder: u must be invertible");
    unsigned long p = u.ring()->p();
    std::vector<PreperLevel> out;
    TruncatedSeries x = TruncatedSeries::identity(u.ring(), u.trunc());
    TruncatedSeries it = u;  // u^(p^k)
    for (unsigned k = 0; k <= depth; ++k) {
        if (k > 0) it = iterate(it, p);
        TruncatedSeries s = it - x;
        PreperLevel lvl{k, false, {}};
        if (s.is_zero()) {
            lvl.all_points_fixed = true;
        } else {
            try {
                lvl.root_valuations = root_valuations(newton_polygon(s, /*strip_zero=*/true));
            } catch (const WeierstrassDegreeNotVisible&) {
                throw TruncationTooSmall("preper_ladder: wideg of u^(p^" + std::to_string(k) +
                                         ") - x not visible at trunc " +
                                         std::to_string(u.trunc()));
            }
        }
        out.push_back(std::move(lvl));
    }
    return out;
}

namespace {

std::vector<mpq_class> sorted_set(const std::set<mpq_class>& s) {
    std::vector<mpq_class> v(s.begin(), s.end());
    std::sort(v.begin(), v.end(), [](const mpq_class& a, const mpq_class& b) { return a > b; });
    return v;
}

}  // namespace

LadderCompareReport ladder_compare(const TruncatedSeries& f, unsigned torsion_depth,
                                   const TruncatedSeries& u, unsigned preper_depth) {
    if (!(f.ring() == u.ring() || *f.ring() == *u.ring()))
        throw MismatchedContext("ladder_compare: ladders over different contexts");
    LadderCompareReport rep;
    std::set<mpq_class> ts, ps;
    for (const auto& lvl : iterate_ladder(f, torsion_depth))
        for (const auto& [v, c] : lvl.new_roots) ts.insert(v);
    for (const auto& lvl : preper_ladder(u, preper_depth)) {
        if (lvl.all_points_fixed) rep.preper_degenerate = true;
        for (const auto& [v, c] : lvl.root_valuations) ps.insert(v);
    }
    rep.torsion_valuations = sorted_set(ts);
    rep.preper_valuations = sorted_set(ps);
    for (const auto& v : ts)
        if (!ps.count(v)) rep.only_in_torsion.push_back(v);
    for (const auto& v : ps)
        if (!ts.count(v)) rep.only_in_preper.push_back(v);
    rep.agree = rep.only_in_torsion.empty() && rep.only_in_preper.empty();
    return rep;
}

Certificate fixed_point_check(const TruncatedSeries& u, const RingElement& lambda,
                              const std::vector<std::pair<mpz_class, unsigned>>& exponents) {
    Valuation vl = lambda.valuation();
    if (vl.is_zero()) throw NotInMaximalIdeal("fixed_point_check: v(lambda) must be positive");
    SeriesValue base = evaluate(u, lambda);
    if ((base.value - lambda).valuation() < base.precision)
        throw NotAFixedPoint("lambda is not fixed by u at precision " + base.precision.str() +
                             ": v(u(lambda) - lambda) = " + (base.value - lambda).valuation().str());
    Certificate cert;
    for (const auto& [z, k] : exponents) {
        TruncatedSeries uz = padic_iterate(u, z, k).value;
        SeriesValue ev = evaluate(uz, lambda);
        Valuation defect = (ev.value - lambda).valuation();
        bool okay = defect >= ev.precision;
        cert.check("z=" + z.get_str() + " mod " + std::to_string(u.ring()->p()) + "^" +
                       std::to_string(k),
                   okay,
                   okay ? "fixed at precision " + ev.precision.str()
                        : "v(u^z(lambda) - lambda) = " + defect.str() + " < " + ev.precision.str());
    }
    return cert;
}

namespace {

Valuation match_tolerance(const RingPtr& ring, unsigned trunc, const Valuation& root_valuation) {
    // half the guaranteed evaluation precision; unit roots are evaluated with
    // exact polynomial semantics, so their guarantee is the full N
    mpq_class n(static_cast<long>(ring->precision()));
    if (root_valuation.is_finite() && root_valuation.value() > 0) {
        mpq_class tail = root_valuation.value() * (static_cast<long>(trunc) + 1);
        if (tail < n) n = tail;
    }
    return Valuation(mpq_class(n / 2));
}

std::optional<std::size_t> match_root(const RingElement& value,
                                      const std::vector<RingElement>& roots,
                                      const Valuation& tolerance) {
    std::optional<std::size_t> hit;
    for (std::size_t j = 0; j < roots.size(); ++j) {
        if ((value - roots[j]).valuation() >= tolerance) {
            if (hit) return std::nullopt;  // ambiguous
            hit = j;
        }
    }
    return hit;
}

std::vector<std::size_t> compose_perm(const std::vector<std::size_t>& a,
                                      const std::vector<std::size_t>& b) {
    std::vector<std::size_t> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
}

bool single_cycle(const std::vector<std::size_t>& perm) {
    std::size_t n = perm.size(), i = 0, seen = 0;
    do {
        i = perm[i];
        ++seen;
    } while (i != 0 && seen <= n);
    return i == 0 && seen == n;
}

}  // namespace

PermutationReport induced_root_permutation(const TruncatedSeries& w_in,
                                           const std::vector<RingElement>& roots,
                                           const TruncatedSeries& f_in) {
    if (roots.empty()) throw Error("induced_root_permutation: empty root set");
    const RingPtr& ring = roots.front().ring();
    TruncatedSeries w = embed_into(w_in, ring);
    TruncatedSeries f = embed_into(f_in, ring);
    Valuation full_n(static_cast<long>(ring->precision()));
    for (const auto& r : roots)
        if (evaluate_polynomial(f, r).valuation() < full_n)
            throw Error("induced_root_permutation: root " + r.str() + " is not certified, v(f(r)) < N");

    // every pair must be separated beyond the matching tolerance, otherwise
    // the permutation would be ambiguous
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            Valuation tol = match_tolerance(ring, w.trunc(), roots[i].valuation());
            if ((roots[i] - roots[j]).valuation() >= tol)
                throw Error("induced_root_permutation: roots " + std::to_string(i) + " and " +
                            std::to_string(j) + " are closer than the matching tolerance");
        }

    PermutationReport rep;
    rep.mapping.resize(roots.size());
    std::vector<bool> hitlist(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        RingElement image = evaluate_polynomial(w, roots[i]);
        auto j = match_root(image, roots, match_tolerance(ring, w.trunc(), roots[i].valuation()));
        if (!j)
            throw NotRootStable("w(" + roots[i].str() + ") = " + image.str() +
                                " does not match any supplied root");
        rep.mapping[i] = *j;
        hitlist[*j] = true;
    }
    if (std::find(hitlist.begin(), hitlist.end(), false) != hitlist.end())
        throw NotRootStable("induced map on the root set is not a bijection");

    rep.is_identity = true;
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (rep.mapping[i] != i) rep.is_identity = false;

    if (ring->kind() == ExtensionKind::unramified) {
        std::vector<std::size_t> sigma(roots.size());
        bool okay = true;
        for (std::size_t i = 0; i < roots.size() && okay; ++i) {
            auto j = match_root(roots[i].frobenius(), roots,
                                match_tolerance(ring, w.trunc(), roots[i].valuation()));
            if (!j)
                okay = false;
            else
                sigma[i] = *j;
        }
        if (okay) {
            rep.frobenius_permutation = sigma;
            rep.commutes_with_frobenius =
                compose_perm(rep.mapping, sigma) == compose_perm(sigma, rep.mapping);
            if (single_cycle(sigma)) {
                std::vector<std::size_t> pow(roots.size());
                for (std::size_t i = 0; i < pow.size(); ++i) pow[i] = i;
                for (unsigned k = 0; k < roots.size(); ++k) {
                    if (pow == rep.mapping) {
                        rep.power_of_frobenius = k;
                        break;
                    }
                    pow = compose_perm(sigma, pow);
                }
            }
        }
    }
    return rep;
}

Certificate package_verify(const DynamicalPackage& pkg, unsigned ladder_depth) {
    Certificate cert;

    StabilityReport fs = stability_report(pkg.f);
    cert.check("f-stability", fs.is_noninvertible_finite_height,
               fs.is_noninvertible_finite_height
                   ? "noninvertible stable of finite height, wideg " + std::to_string(*fs.wideg)
                   : "f is not noninvertible stable of finite height");
    StabilityReport us = stability_report(pkg.u);
    cert.check("u-stability", us.is_invertible && us.is_stable,
               us.is_invertible && us.is_stable
                   ? "invertible stable, u'(0) = " + us.derivative_at_zero.str()
                   : "u is not invertible stable");

    {
        TruncatedSeries defect = commutator_defect(pkg.f, pkg.u);
        auto bad = defect.x_order();
        cert.check("commute-f-u", !bad,
                   !bad ? "f o u = u o f mod (p^N, x^" + std::to_string(defect.trunc()) + ")"
                        : "defect at x^" + std::to_string(*bad));
    }

    if (pkg.h) {
        cert.check("h-nonzero", !pkg.h->is_zero());
        if (pkg.lubin_tate_f)
            cert.merge(verify_isogeny(*pkg.h, *pkg.lubin_tate_f, pkg.f), "isogeny-h-fF-f/");
        else
            cert.skip("isogeny-h-fF-f", "lubin_tate_f not supplied");
        if (pkg.u_F)
            cert.merge(verify_isogeny(*pkg.h, *pkg.u_F, pkg.u), "isogeny-h-uF-u/");
        else
            cert.skip("isogeny-h-uF-u", "u_F not supplied");
    } else {
        cert.skip("h-nonzero", "h not supplied");
        cert.skip("isogeny-h-fF-f", "h not supplied");
        cert.skip("isogeny-h-uF-u", "h not supplied");
    }

    if (pkg.F) {
        cert.merge(verify_group_law(*pkg.F), "group-law/");
        if (pkg.lubin_tate_f)
            cert.merge(verify_endomorphism(*pkg.F, *pkg.lubin_tate_f), "endo-fF/");
        else
            cert.skip("endo-fF", "lubin_tate_f not supplied");
        if (pkg.u_F)
            cert.merge(verify_endomorphism(*pkg.F, *pkg.u_F), "endo-uF/");
        else
            cert.skip("endo-uF", "u_F not supplied");
    } else {
        cert.skip("group-law", "formal group not supplied");
        cert.skip("endo-fF", "formal group not supplied");
        cert.skip("endo-uF", "formal group not supplied");
    }

    // ladder agreement at the deepest depth the truncation supports
    try {
        unsigned long d = fs.wideg ? *fs.wideg : 0;
        unsigned depth = 0;
        if (d >= 2) {
            unsigned long need = d;
            while (depth < ladder_depth && need <= pkg.f.trunc()) {
                ++depth;
                if (need > pkg.f.trunc() / d) break;
                need *= d;
            }
        }
        if (depth == 0) {
            cert.skip("ladder-compare", "truncation too small for any torsion level");
        } else {
            LadderCompareReport lc = ladder_compare(pkg.f, depth, pkg.u, 1);
            std::ostringstream os;
            os << "torsion valuations {";
            for (const auto& v : lc.torsion_valuations) os << " " << v.get_str();
            os << " }, preperiodic {";
            for (const auto& v : lc.preper_valuations) os << " " << v.get_str();
            os << " }";
            if (lc.only_in_preper.empty())
                cert.pass("ladder-compare", os.str());
            else
                cert.finding("ladder-compare", os.str() + "; preperiodic valuations outside the "
                                                          "computed torsion range");
        }
    } catch (const Error& e) {
        cert.skip("ladder-compare", e.what());
    }

    return cert;
}

}  // namespace padic

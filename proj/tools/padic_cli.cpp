#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "padic/battery.hpp"
#include "padic/io.hpp"

namespace {

using padic::json;

json load_json_arg(const std::string& arg) {
    // inline JSON first (arrays, objects, scalars), then a file path
    try {
        return json::parse(arg);
    } catch (const std::exception&) {
    }
    std::ifstream in(arg);
    if (!in) throw padic::ParseError("argument is neither inline JSON nor a readable file: " + arg);
    std::string text(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>{});
    try {
        return json::parse(text);
    } catch (const std::exception& e) {
        throw padic::ParseError("bad JSON in " + arg + ": " + e.what());
    }
}

struct CommonOpts {
    unsigned long p = 3;
    unsigned precision = 20;
    unsigned trunc = 64;
    std::string context;  // overrides --p/--precision when given
    bool json_out = false;

    padic::RingPtr ring() const {
        if (!context.empty()) return padic::ring_from_json(load_json_arg(context));
        return padic::Ring::zp(p, precision);
    }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--p", o.p, "prime of the base ring (default 3)");
    cmd->add_option("--precision", o.precision, "coefficients are known mod p^N (default 20)");
    cmd->add_option("--trunc", o.trunc, "series truncation order M (default 64)");
    cmd->add_option("--context", o.context, "ring context JSON (inline or file); overrides --p");
    cmd->add_flag("--json", o.json_out, "machine-readable JSON output");
}

padic::TruncatedSeries load_series(const std::string& arg, const CommonOpts& o) {
    return padic::series_from_json(load_json_arg(arg), o.ring(), o.trunc);
}

void emit_series(const padic::TruncatedSeries& s, const CommonOpts& o) {
    if (o.json_out)
        std::cout << padic::series_to_json(s).dump(2) << "\n";
    else
        std::cout << s.str() << "\n";
}

int emit_certificate(const padic::Certificate& cert, const CommonOpts& o) {
    if (o.json_out) {
        std::cout << padic::certificate_to_json(cert).dump(2) << "\n";
    } else {
        for (const auto& c : cert.checks)
            std::cout << padic::to_string(c.status) << "  " << c.name
                      << (c.detail.empty() ? "" : "  -- " + c.detail) << "\n";
        std::cout << (cert.ok() ? "OK" : "FAILED") << "\n";
    }
    return cert.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact p-adic dynamics toolkit: truncated power series over Z_p lifts, "
        "Newton polygons, Lubin-Tate groups, condensation isogenies"};
    app.require_subcommand(1);

    int exit_code = 0;

    // compose
    {
        auto o = std::make_shared<CommonOpts>();
        auto s = std::make_shared<std::pair<std::string, std::string>>();
        auto* cmd = app.add_subcommand("compose", "outer(inner) for zero-constant-term inner");
        add_common(cmd, *o);
        cmd->add_option("--outer", s->first)->required();
        cmd->add_option("--inner", s->second)->required();
        cmd->callback([o, s] {
            emit_series(padic::compose(load_series(s->first, *o), load_series(s->second, *o)), *o);
        });
    }
    // iterate
    {
        auto o = std::make_shared<CommonOpts>();
        auto series = std::make_shared<std::string>();
        auto n = std::make_shared<long>(1);
        auto z = std::make_shared<std::string>();
        auto k = std::make_shared<int>(-1);
        auto* cmd = app.add_subcommand("iterate", "n-fold composition; --z/--k for Z_p exponents");
        add_common(cmd, *o);
        cmd->add_option("--series", *series)->required();
        cmd->add_option("--n", *n, "iteration count (negatives use the compositional inverse)");
        cmd->add_option("--z", *z, "p-adic exponent as an integer residue");
        cmd->add_option("--k", *k, "residue is taken mod p^k");
        cmd->callback([o, series, n, z, k, &exit_code] {
            padic::TruncatedSeries u = load_series(*series, *o);
            if (*k >= 0) {
                mpz_class zz(z->empty() ? std::string("0") : *z, 10);
                padic::PadicIterate it = padic::padic_iterate(u, zz, static_cast<unsigned>(*k));
                if (o->json_out) {
                    std::cout << padic::padic_iterate_to_json(it).dump(2) << "\n";
                } else {
                    std::cout << it.value.str() << "\n";
                    for (const auto& st : it.steps)
                        std::cout << "  level " << st.level << ": x-order "
                                  << (st.x_order ? std::to_string(*st.x_order) : "inf")
                                  << ", p-order " << st.p_order.str() << ", joint "
                                  << st.joint_order.str() << "\n";
                    std::cout << (it.cauchy_nondecreasing ? "joint orders nondecreasing"
                                                          : "joint orders NOT nondecreasing")
                              << "\n";
                }
            } else {
                emit_series(padic::iterate_int(u, mpz_class(*n)), *o);
            }
        });
    }
    // commute
    {
        auto o = std::make_shared<CommonOpts>();
        auto s = std::make_shared<std::pair<std::string, std::string>>();
        auto* cmd = app.add_subcommand("commute", "commutator defect a(b(x)) - b(a(x))");
        add_common(cmd, *o);
        cmd->add_option("--a", s->first)->required();
        cmd->add_option("--b", s->second)->required();
        cmd->callback([o, s, &exit_code] {
            padic::TruncatedSeries d =
                padic::commutator_defect(load_series(s->first, *o), load_series(s->second, *o));
            auto bad = d.x_order();
            if (o->json_out) {
                json out = {{"zero", !bad}, {"defect", padic::series_to_json(d, false)}};
                std::cout << out.dump(2) << "\n";
            } else if (!bad) {
                std::cout << "defect ZERO mod (p^" << d.ring()->precision() << ", x^" << d.trunc()
                          << ")\n";
            } else {
                std::cout << "defect NONZERO, first at x^" << *bad << ": " << d.coeff(*bad).str()
                          << "\n";
            }
            if (bad) exit_code = 1;
        });
    }
    // inverse
    {
        auto o = std::make_shared<CommonOpts>();
        auto series = std::make_shared<std::string>();
        auto* cmd = app.add_subcommand("inverse", "compositional inverse");
        add_common(cmd, *o);
        cmd->add_option("--series", *series)->required();
        cmd->callback(
            [o, series] { emit_series(padic::compositional_inverse(load_series(*series, *o)), *o); });
    }
    // condense
    {
        auto o = std::make_shared<CommonOpts>();
        auto series = std::make_shared<std::string>();
        auto d = std::make_shared<unsigned>(2);
        auto* cmd = app.add_subcommand("condense", "g with g(x^d) = f(x)^d");
        add_common(cmd, *o);
        cmd->add_option("--series", *series)->required();
        cmd->add_option("--d", *d, "condensation degree (default 2)");
        cmd->callback([o, series, d] { emit_series(padic::condense(load_series(*series, *o), *d), *o); });
    }
    // newton
    {
        auto o = std::make_shared<CommonOpts>();
        auto series = std::make_shared<std::string>();
        auto keep = std::make_shared<bool>(false);
        auto* cmd = app.add_subcommand("newton", "Newton polygon and root valuations");
        add_common(cmd, *o);
        cmd->add_option("--series", *series)->required();
        cmd->add_flag("--keep-zero-root", *keep, "do not strip the power of x dividing f");
        cmd->callback([o, series, keep] {
            padic::NewtonPolygon np = padic::newton_polygon(load_series(*series, *o), !*keep);
            json out = padic::polygon_to_json(np);
            if (o->json_out) {
                std::cout << out.dump(2) << "\n";
            } else {
                for (const auto& s : np.segments)
                    std::cout << "segment slope " << s.slope.get_str() << ", length " << s.length
                              << "\n";
                for (const auto& [v, c] : padic::root_valuations(np))
                    std::cout << c << " roots of valuation " << v.get_str() << "\n";
            }
        });
    }
    // ladder
    {
        auto o = std::make_shared<CommonOpts>();
        auto series = std::make_shared<std::string>();
        auto depth = std::make_shared<unsigned>(2);
        auto kind = std::make_shared<std::string>("auto");
        auto* cmd = app.add_subcommand(
            "ladder", "torsion ladder (noninvertible) or preperiodic ladder (invertible)");
        add_common(cmd, *o);
        cmd->add_option("--series", *series)->required();
        cmd->add_option("--depth", *depth);
        cmd->add_option("--kind", *kind, "auto | torsion | preper")
            ->check(CLI::IsMember({"auto", "torsion", "preper"}));
        cmd->callback([o, series, depth, kind] {
            padic::TruncatedSeries f = load_series(*series, *o);
            padic::StabilityReport rep = padic::stability_report(f);
            std::string which = *kind;
            if (which == "auto") which = rep.is_invertible ? "preper" : "torsion";
            json out;
            out["kind"] = which;
            out["stability"] = padic::stability_to_json(rep);
            if (which == "torsion") {
                // auto-raise the truncation to wideg^depth (treating the
                // stored coefficients as the whole polynomial)
                if (rep.wideg) {
                    unsigned long need = 1;
                    for (unsigned i = 0; i < *depth; ++i) need *= *rep.wideg;
                    if (need > f.trunc() && need <= (1u << 16)) {
                        std::cerr << "note: raising truncation to wideg^depth = " << need << "\n";
                        f = f.extended(static_cast<unsigned>(need));
                    }
                }
                // Lubin-Tate inputs get the closed-form annotation
                std::optional<padic::LubinTateData> lt;
                try {
                    lt = padic::LubinTateData::from_series(f);
                } catch (const padic::Error&) {
                }
                if (lt)
                    out["levels"] =
                        padic::torsion_ladder_to_json(padic::torsion_ladder(*lt, *depth));
                else
                    out["levels"] = padic::ladder_to_json(padic::iterate_ladder(f, *depth));
            } else {
                out["levels"] = padic::preper_ladder_to_json(padic::preper_ladder(f, *depth));
            }
            std::cout << out.dump(2) << "\n";
        });
    }
    // lt-build
    {
        auto o = std::make_shared<CommonOpts>();
        auto series = std::make_shared<std::string>();
        auto m_total = std::make_shared<unsigned>(8);
        auto* cmd = app.add_subcommand("lt-build", "Lubin-Tate formal group from f (pi = f'(0))");
        add_common(cmd, *o);
        cmd->add_option("--series", *series)->required();
        cmd->add_option("--mtotal", *m_total, "total-degree truncation of F (default 8)");
        cmd->callback([o, series, m_total, &exit_code] {
            padic::TruncatedSeries f0 = load_series(*series, *o);
            padic::TruncatedSeries f = f0.trunc() < *m_total ? f0.extended(*m_total) : f0;
            padic::LubinTateData lt = padic::LubinTateData::from_series(f);
            padic::FormalGroupLaw F = padic::lubin_tate_group(lt, *m_total);
            padic::Certificate cert = padic::verify_group_law(F);
            if (o->json_out) {
                json out = {{"formal_group", padic::formal_group_to_json(F)},
                            {"certificate", padic::certificate_to_json(cert)}};
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << "F = " << F.law.str() << "\n";
                for (const auto& c : cert.checks)
                    std::cout << padic::to_string(c.status) << "  " << c.name << "\n";
            }
            if (!cert.ok()) exit_code = 1;
        });
    }
    // lt-endo
    {
        auto o = std::make_shared<CommonOpts>();
        auto series = std::make_shared<std::string>();
        auto a = std::make_shared<std::string>("1");
        auto* cmd = app.add_subcommand("lt-endo", "[a]_f for the Lubin-Tate series f");
        add_common(cmd, *o);
        cmd->add_option("--series", *series)->required();
        cmd->add_option("--a", *a, "multiplier (decimal, or JSON array for extension elements)");
        cmd->callback([o, series, a] {
            padic::TruncatedSeries f = load_series(*series, *o).extended(o->trunc);
            padic::LubinTateData lt = padic::LubinTateData::from_series(f);
            padic::RingElement mult = padic::element_from_json(load_json_arg(*a), f.ring());
            emit_series(padic::lt_hom(mult, lt, lt, o->trunc), *o);
        });
    }
    // verify-isogeny
    {
        auto o = std::make_shared<CommonOpts>();
        auto h = std::make_shared<std::string>();
        auto src = std::make_shared<std::string>();
        auto dst = std::make_shared<std::string>();
        auto* cmd = app.add_subcommand("verify-isogeny", "h o f_src = f_dst o h certificate");
        cmd->set_help_flag("--help", "print help");  // frees -h for the isogeny series
        add_common(cmd, *o);
        cmd->add_option("--h", *h)->required();
        cmd->add_option("--src", *src)->required();
        cmd->add_option("--dst", *dst)->required();
        cmd->callback([o, h, src, dst, &exit_code] {
            exit_code = emit_certificate(
                padic::verify_isogeny(load_series(*h, *o), load_series(*src, *o),
                                      load_series(*dst, *o)),
                *o);
        });
    }
    // verify-package
    {
        auto o = std::make_shared<CommonOpts>();
        auto input = std::make_shared<std::string>();
        auto* cmd = app.add_subcommand("verify-package", "full package coherence certificate");
        add_common(cmd, *o);
        cmd->add_option("input", *input, "package JSON (inline or file)")->required();
        cmd->callback([o, input, &exit_code] {
            padic::DynamicalPackage pkg =
                padic::package_from_json(load_json_arg(*input), o->ring(), o->trunc);
            exit_code = emit_certificate(padic::package_verify(pkg), *o);
        });
    }
    // verify-paper-examples
    {
        auto o = std::make_shared<CommonOpts>();
        auto seed = std::make_shared<unsigned long>(20110803UL);
        auto skip_props = std::make_shared<bool>(false);
        auto cases = std::make_shared<unsigned>(200);
        auto* cmd = app.add_subcommand("verify-paper-examples",
                                       "run the bundled worked-example battery end to end");
        add_common(cmd, *o);
        cmd->add_option("--seed", *seed, "seed for the randomized property drivers");
        cmd->add_option("--cases", *cases, "cases per property suite (default 200)");
        cmd->add_flag("--skip-properties", *skip_props, "skip the randomized suites");
        cmd->callback([o, seed, skip_props, cases, &exit_code] {
            padic::BatteryOptions opts;
            opts.precision = o->precision;
            opts.trunc = o->trunc;
            opts.seed = *seed;
            opts.property_suites = !*skip_props;
            opts.property_cases = *cases;
            exit_code = emit_certificate(padic::run_example_battery(opts), *o);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const padic::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const padic::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

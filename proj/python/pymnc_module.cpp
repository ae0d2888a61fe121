#include "mnc/cli.hpp"
#include "mnc/errors.hpp"
#include "mnc/json_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace mnc;

namespace {

// The module speaks JSON strings at the boundary; the pymnc package wraps
// them into dicts. Rationals stay exact as "p/q".

Json parse(const std::string& s) {
    try {
        return Json::parse(s);
    } catch (const std::exception& e) {
        throw InputError(std::string("json: ") + e.what());
    }
}

std::string dump(const Json& j) { return j.dump(); }

QVec vec_of_strings(const std::vector<std::string>& xs) {
    QVec v;
    for (const auto& s : xs) {
        auto r = parse_rat(s);
        if (!r) throw InputError("malformed rational: " + s);
        v.push_back(*r);
    }
    return v;
}

std::vector<std::string> strings_of_vec(const QVec& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(format_rat(x));
    return out;
}

CovectorPoint cov_of(const StalkContext& cx, const std::vector<std::string>& flat) {
    QVec v = vec_of_strings(flat);
    if ((int)v.size() != cx.N) throw InputError("covector: wrong length");
    CovectorPoint p;
    p.blocks.resize(cx.family.ell() + 1);
    for (int k = 1; k <= cx.family.ell(); ++k)
        for (int pos : cx.block_pos[k]) p.blocks[k].push_back(v[pos]);
    return p;
}

MonomialScheme scheme_of_json(const Json& j, bool dual) {
    if (j.contains("members")) {
        IndexFamily f = family_from_json(j);
        DerivedIndices d = derive(f);
        return dual ? scheme_for_dual(f, d) : scheme_from_family(f, d);
    }
    return scheme_from_json(j);
}

}  // namespace

PYBIND11_MODULE(_pymnc, m) {
    m.doc() = "multi-normal cone calculus for rational polyhedral data";

    py::register_exception<InputError>(m, "InputError");
    py::register_exception<ResourceError>(m, "ResourceError");
    py::register_exception<InternalConsistencyError>(m, "InternalConsistencyError");

    // families
    m.def("validate_family", [](const std::string& fam) {
        return dump(validation_to_json(validate(family_from_json(parse(fam)))));
    });
    m.def("derive_family", [](const std::string& fam) {
        return dump(derived_to_json(derive(family_from_json(parse(fam)))));
    });
    m.def("restrict_family", [](const std::string& fam, const std::vector<int>& K) {
        std::set<int> k(K.begin(), K.end());
        return dump(family_to_json(restrict(family_from_json(parse(fam)), k)));
    });

    // schemes
    m.def("scheme", [](const std::string& fam, bool dual) {
        return dump(scheme_to_json(scheme_of_json(parse(fam), dual)));
    }, py::arg("family"), py::arg("dual") = false);
    m.def("apply_scheme", [](const std::string& scheme, const std::vector<std::string>& x,
                             const std::vector<std::string>& t) {
        return strings_of_vec(
            apply_scheme(scheme_from_json(parse(scheme)), vec_of_strings(x), vec_of_strings(t)));
    });

    // cones
    m.def("cone_hv", [](const std::string& c) {
        return dump(cone_to_json(hv_convert(cone_from_json(parse(c)))));
    });
    m.def("cone_polar", [](const std::string& c) {
        return dump(cone_to_json(polar(cone_from_json(parse(c)))));
    });
    m.def("cone_antipode", [](const std::string& c) {
        return dump(cone_to_json(antipode(cone_from_json(parse(c)))));
    });
    m.def("cone_sum", [](const std::vector<std::string>& cs) {
        std::vector<Cone> parts;
        for (const auto& c : cs) parts.push_back(cone_from_json(parse(c)));
        return dump(cone_to_json(mink_sum(parts)));
    });
    m.def("cone_intersect", [](const std::string& a, const std::string& b) {
        return dump(cone_to_json(intersect(cone_from_json(parse(a)), cone_from_json(parse(b)))));
    });
    m.def("cone_subset", [](const std::string& a, const std::string& b) {
        return cone_subset(cone_from_json(parse(a)), cone_from_json(parse(b)));
    });
    m.def("cone_member", [](const std::string& a, const std::vector<std::string>& x) {
        return cone_member(cone_from_json(parse(a)), vec_of_strings(x));
    });
    m.def("cone_dim", [](const std::string& a) { return cone_dim(cone_from_json(parse(a))); });
    m.def("cone_proper_wrt", [](const std::string& a, const std::vector<std::string>& xi) {
        return is_proper_wrt(cone_from_json(parse(a)), vec_of_strings(xi));
    });

    // multi-normal cones
    m.def("mnc_member", [](const std::string& scheme, const std::string& z,
                           const std::vector<std::string>& p, bool dual) {
        auto res = mnc_member(scheme_of_json(parse(scheme), dual), polyset_from_json(parse(z)),
                              vec_of_strings(p));
        Json out;
        out["verdict"] = res.verdict == Verdict::IN ? "IN" : "OUT";
        if (res.cert_in) out["certificate"] = membership_cert_to_json(*res.cert_in);
        if (res.cert_out) out["certificate"] = separation_cert_to_json(*res.cert_out);
        return dump(out);
    }, py::arg("scheme"), py::arg("z"), py::arg("point"), py::arg("dual") = false);
    m.def("mnc_describe", [](const std::string& scheme, const std::string& z, bool dual) {
        auto res = mnc_describe(scheme_of_json(parse(scheme), dual), polyset_from_json(parse(z)));
        return dump(polyset_to_json(res.cone));
    }, py::arg("scheme"), py::arg("z"), py::arg("dual") = false);
    m.def("oracle_member", [](const std::string& scheme, const std::string& z,
                              const std::vector<std::string>& p, long base, int steps,
                              const std::vector<std::string>& eps, bool randomize,
                              unsigned long long seed) {
        OracleLadder ladder;
        ladder.base = base;
        ladder.max_steps = steps;
        if (!eps.empty()) ladder.epsilons = vec_of_strings(eps);
        ladder.randomize_axes = randomize;
        ladder.seed = seed;
        auto res = oracle_member(scheme_of_json(parse(scheme), false), polyset_from_json(parse(z)),
                                 vec_of_strings(p), ladder);
        return res.verdict == OracleVerdict::LIKELY_IN    ? "LIKELY_IN"
               : res.verdict == OracleVerdict::LIKELY_OUT ? "LIKELY_OUT"
                                                          : "INCONCLUSIVE";
    }, py::arg("scheme"), py::arg("z"), py::arg("point"), py::arg("base") = 2,
       py::arg("steps") = 20, py::arg("eps") = std::vector<std::string>{},
       py::arg("randomize") = true, py::arg("seed") = 0);
    m.def("verify_membership", [](const std::string& scheme, const std::string& z,
                                  const std::vector<std::string>& p, const std::string& cert) {
        return verify_membership(scheme_of_json(parse(scheme), false),
                                 polyset_from_json(parse(z)), vec_of_strings(p),
                                 membership_cert_from_json(parse(cert)));
    });
    m.def("verify_separation", [](const std::string& scheme, const std::string& z,
                                  const std::string& cert) {
        return verify_separation(scheme_of_json(parse(scheme), false),
                                 polyset_from_json(parse(z)),
                                 separation_cert_from_json(parse(cert)));
    });

    // stalk geometry
    m.def("gamma_cone", [](const std::string& fam, int k, const std::vector<std::string>& cov) {
        StalkContext cx = make_context(family_from_json(parse(fam)));
        auto g = gamma(cx, k, cov_of(cx, cov));
        Json out{{"empty", g.empty}};
        if (!g.empty) {
            out["closure"] = cone_to_json(g.closure);
            out["strict_row"] = vec_to_json(g.strict_row);
        }
        return dump(out);
    });
    m.def("g_ladder", [](const std::string& fam, const std::vector<std::string>& cov, int m) {
        StalkContext cx = make_context(family_from_json(parse(fam)));
        auto lad = g_ladder(cx, cov_of(cx, cov), m);
        return dump(Json{{"G", cone_to_json(lad.G)}, {"U", poly_to_json(lad.U)}});
    });
    m.def("multicone", [](const std::string& fam, const std::vector<std::string>& dir, int m) {
        StalkContext cx = make_context(family_from_json(parse(fam)));
        auto mc = multicone(cx, cov_of(cx, dir), m);
        return dump(polyset_to_json(mc.closed));
    });
    m.def("enclose", [](const std::string& fam, const std::vector<std::string>& cov, int m) {
        StalkContext cx = make_context(family_from_json(parse(fam)));
        auto p = cov_of(cx, cov);
        auto cert = enclose(cx, p, make_z_family(cx, p, m));
        Json table = Json::array();
        for (const auto& [sigma, ok] : cert.table)
            table.push_back(Json{{"sigma", sigma}, {"verified", ok}});
        return dump(Json{{"ok", cert.ok}, {"G", cone_to_json(cert.G)}, {"table", table}});
    });
    m.def("check_g_condition", [](const std::string& fam, const std::vector<std::string>& cov,
                                  const std::string& g) {
        StalkContext cx = make_context(family_from_json(parse(fam)));
        return check_g_condition(cx, cov_of(cx, cov), cone_from_json(parse(g)));
    });

    // degrees
    m.def("degree_general", [](const std::string& fam, const std::string& split,
                               const std::vector<std::string>& cov) {
        IndexFamily f = family_from_json(parse(fam));
        StalkContext cx = make_context(f);
        return dump(degree_report_to_json(
            degree_general(f, split_from_json(parse(split)), cov_of(cx, cov))));
    });
    m.def("degree_complex", [](const std::string& fam, const std::vector<std::string>& cov) {
        IndexFamily f = family_from_json(parse(fam));
        StalkContext cx = make_context(f);
        return dump(degree_report_to_json(degree_complex(f, cov_of(cx, cov))));
    });

    // microsupport
    m.def("ss_estimate", [](const std::string& fam, const std::string& conic) {
        return dump(polyset_to_json(
            ss_estimate(family_from_json(parse(fam)), conic_from_json(parse(conic)))));
    });
    m.def("support_bound", [](const std::string& fam, const std::string& conic) {
        return dump(polyset_to_json(
            support_bound(family_from_json(parse(fam)), conic_from_json(parse(conic)))));
    });
    m.def("seq_witness", [](const std::string& fam, const std::string& conic,
                            const std::vector<std::string>& p) {
        auto res = seq_witness(family_from_json(parse(fam)), conic_from_json(parse(conic)),
                               vec_of_strings(p));
        Json out{{"found", res.found}};
        if (res.found) {
            Json pts = Json::array();
            for (const auto& q : res.points) pts.push_back(vec_to_json(q));
            out["points"] = pts;
        }
        return dump(out);
    });
    m.def("noncharacteristic_check", [](const std::string& fam, const std::string& conic) {
        auto res = noncharacteristic_check(family_from_json(parse(fam)),
                                           conic_from_json(parse(conic)));
        Json out{{"noncharacteristic", res.ok}};
        if (res.witness) out["witness"] = vec_to_json(*res.witness);
        return dump(out);
    });
    m.def("iota_sharp", [](int nx, int ny, const std::string& a) {
        IotaCoords coords{nx, ny};
        return dump(polyset_to_json(iota_sharp(coords, polyset_from_json(parse(a)))));
    });
    m.def("hyperbolicity_check", [](int nx, int ny, const std::vector<int>& ncoords,
                                    const std::string& ch) {
        IotaCoords coords{nx, ny};
        std::set<int> n(ncoords.begin(), ncoords.end());
        return hyperbolicity_check(coords, n, polyset_from_json(parse(ch)));
    });

    // cellular local cohomology
    m.def("stalk_limit", [](const std::string& fam, const std::vector<std::string>& cov,
                            const std::string& w, int m_max) {
        StalkContext cx = make_context(family_from_json(parse(fam)));
        auto t = stalk_limit(cx, cov_of(cx, cov), polyset_from_json(parse(w)), m_max);
        return dump(table_to_json(t));
    });
    m.def("compare_families", [](const std::string& fam, const std::vector<std::string>& cov,
                                 const std::string& w, int m_max) {
        StalkContext cx = make_context(family_from_json(parse(fam)));
        auto rep = compare_families(cx, cov_of(cx, cov), polyset_from_json(parse(w)), m_max);
        const char* o = rep.outcome == CompareOutcome::AGREE      ? "AGREE"
                        : rep.outcome == CompareOutcome::DISAGREE ? "DISAGREE"
                                                                  : "INCONCLUSIVE";
        return dump(Json{{"outcome", o},
                         {"g_side", table_to_json(rep.g_side)},
                         {"z_side", table_to_json(rep.z_side)}});
    });

    m.def("run_fixtures", [](const std::string& dir, const std::string& filter,
                             unsigned long long seed) {
        Json arr = Json::array();
        for (const auto& r : run_fixtures(dir, filter, seed))
            arr.push_back(Json{{"name", r.name}, {"ok", r.ok}, {"detail", r.detail}});
        return dump(arr);
    }, py::arg("dir"), py::arg("filter") = "", py::arg("seed") = 0);
}

#include "mnc/cli.hpp"
#include "mnc/errors.hpp"
#include "mnc/json_io.hpp"

#include <fstream>
#include <random>
#include <sstream>

namespace mnc {
namespace {

using Expo = std::vector<std::vector<int>>;

// Missing fixture files are input errors and abort the run; corrupted
// content is reported as a failed fixture instead.
struct MissingFixture : InputError {
    using InputError::InputError;
};

Json load(const std::string& dir, const std::string& file) {
    std::ifstream in(dir + "/" + file);
    if (!in) throw MissingFixture("missing fixture " + dir + "/" + file);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError(dir + "/" + file + ": " + e.what());
    }
    return j;
}

struct Runner {
    std::string dir;
    std::string filter;
    unsigned long long seed;
    std::vector<FixtureResult>* out;

    void check(const std::string& name, const std::function<std::string()>& body) {
        if (!filter.empty() && name.find(filter) == std::string::npos) return;
        FixtureResult r;
        r.name = name;
        try {
            r.detail = body();
            r.ok = r.detail.empty();
            if (r.ok) r.detail = "ok";
        } catch (const MissingFixture&) {
            throw;
        } catch (const std::exception& e) {
            r.ok = false;
            r.detail = e.what();
        }
        out->push_back(std::move(r));
    }
};

std::string expect_sets(const std::vector<std::set<int>>& got,
                        const std::vector<std::set<int>>& want, const char* what) {
    if (got == want) return "";
    std::ostringstream os;
    os << what << " mismatch";
    return os.str();
}

QVec qv(std::initializer_list<long> xs) {
    QVec v;
    for (long x : xs) v.push_back(rat_of(x));
    return v;
}

CovectorPoint flat_cov(const StalkContext& cx, const QVec& v) {
    CovectorPoint p;
    p.blocks.resize(cx.family.ell() + 1);
    for (int k = 1; k <= cx.family.ell(); ++k)
        for (int pos : cx.block_pos[k]) p.blocks[k].push_back(v[pos]);
    return p;
}

std::string gamma_probe(const StalkContext& cx, int k, const QVec& cov,
                        const std::vector<std::pair<QVec, bool>>& probes) {
    auto g = gamma(cx, k, flat_cov(cx, cov));
    for (const auto& [x, want] : probes) {
        if (gamma_member(g, x) != want)
            return "gamma_" + std::to_string(k) + " probe " + format_vec(x) + " expected " +
                   (want ? "in" : "out");
    }
    return "";
}

}  // namespace

std::vector<FixtureResult> run_fixtures(const std::string& dir, const std::string& filter,
                                        unsigned long long seed) {
    std::vector<FixtureResult> results;
    Runner run{dir, filter, seed, &results};

    // ----- validation of the shipped families -----
    for (const char* name : {"majima_r3", "takeuchi_r3", "mixed_r3", "takeuchi_r2", "majima_c2",
                             "takeuchi_c2"}) {
        run.check(std::string(name) + ".validate", [&, name]() -> std::string {
            auto f = family_from_json(load(dir, std::string(name) + ".json"));
            auto rep = validate(f);
            if (!rep.ok) return "family failed validation";
            return "";
        });
    }

    // ----- index combinatorics -----
    run.check("majima_r3.derive", [&]() -> std::string {
        auto d = derive(family_from_json(load(dir, "majima_r3.json")));
        return expect_sets({d.J[1], d.J[2], d.J[3]}, {{1}, {2}, {3}}, "J");
    });
    run.check("takeuchi_r3.derive", [&]() -> std::string {
        auto d = derive(family_from_json(load(dir, "takeuchi_r3.json")));
        std::string e = expect_sets({d.J[1], d.J[2], d.J[3]}, {{1}, {1, 2}, {1, 2, 3}}, "J");
        if (!e.empty()) return e;
        return expect_sets({d.hatI[1], d.hatI[2], d.hatI[3]}, {{1}, {2}, {3}}, "hatI");
    });
    run.check("mixed_r3.derive", [&]() -> std::string {
        auto d = derive(family_from_json(load(dir, "mixed_r3.json")));
        std::string e = expect_sets({d.J[1], d.J[2], d.J[3]}, {{1}, {1, 2}, {1, 3}}, "J");
        if (!e.empty()) return e;
        return expect_sets({d.incomp[2]}, {{3}}, "J_incomp");
    });
    run.check("majima_c2.derive", [&]() -> std::string {
        auto d = derive(family_from_json(load(dir, "majima_c2.json")));
        return expect_sets({d.J[1], d.J[2], d.J[3], d.J[4]}, {{1}, {1}, {2}, {2}}, "J");
    });
    run.check("takeuchi_c2.derive", [&]() -> std::string {
        auto d = derive(family_from_json(load(dir, "takeuchi_c2.json")));
        return expect_sets({d.J[1], d.J[2], d.J[3], d.J[4]}, {{1}, {1}, {1, 2}, {1, 2}}, "J");
    });

    // ----- base deformation schemes -----
    auto scheme_check = [&](const char* name, const Expo& want) {
        run.check(std::string(name) + ".scheme", [&, name, want]() -> std::string {
            auto f = family_from_json(load(dir, std::string(name) + ".json"));
            auto s = scheme_from_family(f, derive(f));
            if (s.exponents != want) return "scaling exponents mismatch";
            return "";
        });
    };
    scheme_check("majima_r3", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    scheme_check("takeuchi_r3", {{1, 0, 0}, {1, 1, 0}, {1, 1, 1}});
    scheme_check("mixed_r3", {{1, 0, 0}, {1, 1, 0}, {1, 0, 1}});
    scheme_check("majima_c2", {{1, 0}, {1, 0}, {0, 1}, {0, 1}});
    scheme_check("takeuchi_c2", {{1, 0}, {1, 0}, {1, 1}, {1, 1}});

    // ----- cotangent schemes -----
    auto dual_check = [&](const char* name, const Expo& want_fiber) {
        run.check(std::string(name) + ".dual_scheme", [&, name, want_fiber]() -> std::string {
            auto f = family_from_json(load(dir, std::string(name) + ".json"));
            auto s = scheme_for_dual(f, derive(f));
            Expo fiber(s.exponents.begin() + f.n, s.exponents.end());
            if (fiber != want_fiber) return "fiber scaling exponents mismatch";
            return "";
        });
    };
    dual_check("takeuchi_r3", {{0, 1, 1}, {0, 0, 1}, {0, 0, 0}});
    dual_check("mixed_r3", {{0, 1, 1}, {0, 0, 1}, {0, 1, 0}});
    dual_check("majima_c2", {{0, 1}, {0, 1}, {1, 0}, {1, 0}});
    dual_check("takeuchi_c2", {{0, 1}, {0, 1}, {0, 0}, {0, 0}});

    // ----- gamma cones -----
    run.check("takeuchi_r3.gamma", [&]() -> std::string {
        StalkContext cx = make_context(family_from_json(load(dir, "takeuchi_r3.json")));
        QVec ones = qv({1, 1, 1});
        std::string e = gamma_probe(cx, 1, ones,
                                    {{qv({2, 0, 0}), true},
                                     {qv({-1, 0, 0}), false},
                                     {qv({2, 1, 0}), false}});
        if (!e.empty()) return e;
        e = gamma_probe(cx, 2, ones,
                        {{qv({5, 1, 0}), true}, {qv({5, -1, 0}), false}, {qv({5, 1, 2}), false}});
        if (!e.empty()) return e;
        return gamma_probe(cx, 3, ones, {{qv({-3, 7, 1}), true}, {qv({-3, 7, 0}), false}});
    });
    run.check("mixed_r3.gamma", [&]() -> std::string {
        StalkContext cx = make_context(family_from_json(load(dir, "mixed_r3.json")));
        QVec ones = qv({1, 1, 1});
        std::string e = gamma_probe(cx, 2, ones,
                                    {{qv({4, 1, 0}), true}, {qv({4, 1, 2}), false}});
        if (!e.empty()) return e;
        return gamma_probe(cx, 3, ones, {{qv({4, 0, 1}), true}, {qv({4, 2, 1}), false}});
    });
    run.check("majima_r3.gamma", [&]() -> std::string {
        StalkContext cx = make_context(family_from_json(load(dir, "majima_r3.json")));
        QVec ones = qv({1, 1, 1});
        return gamma_probe(cx, 1, ones,
                           {{qv({1, 0, 0}), true}, {qv({1, 1, 0}), false}, {qv({-1, 0, 0}), false}});
    });
    run.check("majima_c2.gamma", [&]() -> std::string {
        StalkContext cx = make_context(family_from_json(load(dir, "majima_c2.json")));
        QVec eta = qv({1, 0, 1, 0});  // direction 1 in each complex line
        std::string e = gamma_probe(cx, 1, eta,
                                    {{qv({1, -5, 0, 0}), true},
                                     {qv({0, 1, 0, 0}), false},
                                     {qv({1, 0, 1, 0}), false}});
        if (!e.empty()) return e;
        return gamma_probe(cx, 2, eta, {{qv({0, 0, 1, 9}), true}, {qv({0, 0, -1, 0}), false}});
    });
    run.check("takeuchi_c2.gamma", [&]() -> std::string {
        StalkContext cx = make_context(family_from_json(load(dir, "takeuchi_c2.json")));
        QVec eta = qv({1, 0, 1, 0});
        std::string e = gamma_probe(cx, 1, eta,
                                    {{qv({1, 2, 0, 0}), true}, {qv({1, 2, 1, 0}), false}});
        if (!e.empty()) return e;
        return gamma_probe(cx, 2, eta, {{qv({7, 8, 1, 0}), true}, {qv({7, 8, 0, 1}), false}});
    });

    // ----- cofinal multi-cones (printed epsilon families, m = 4) -----
    run.check("takeuchi_r3.multicone", [&]() -> std::string {
        StalkContext cx = make_context(family_from_json(load(dir, "takeuchi_r3.json")));
        auto mc = multicone(cx, flat_cov(cx, qv({1, 1, 1})), 4);
        Rat eps(1, 4);
        std::vector<Polyhedron> pieces;
        for (int s2 : {-1, 1})
            for (int s3 : {-1, 1}) {
                std::vector<QVec> A = {{rat_of(0), rat_of(s2), rat_of(0)},
                                       {rat_of(0), rat_of(0), rat_of(s3)},
                                       {eps, -rat_of(s2), -rat_of(s3)},
                                       {rat_of(0), eps, -rat_of(s3)},
                                       {rat_of(0), rat_of(0), rat_of(1)}};
                QVec b(5, rat_of(0));
                Polyhedron piece = poly_from_rows(3, A, b);
                if (!poly_is_empty(piece)) pieces.push_back(piece);
            }
        if (!polyset_equal(mc.closed, polyset_of(pieces, 3)))
            return "closure differs from the printed family";
        return "";
    });
    run.check("mixed_r3.multicone", [&]() -> std::string {
        StalkContext cx = make_context(family_from_json(load(dir, "mixed_r3.json")));
        auto mc = multicone(cx, flat_cov(cx, qv({1, 1, 1})), 4);
        Rat eps(1, 4);
        std::vector<QVec> A = {{rat_of(0), rat_of(1), rat_of(0)},
                               {rat_of(0), rat_of(0), rat_of(1)},
                               {eps, -rat_of(1), -rat_of(1)}};
        QVec b(3, rat_of(0));
        if (!polyset_equal(mc.closed, polyset_of({poly_from_rows(3, A, b)}, 3)))
            return "closure differs from the printed family";
        return "";
    });
    run.check("majima_r3.multicone", [&]() -> std::string {
        StalkContext cx = make_context(family_from_json(load(dir, "majima_r3.json")));
        std::vector<QVec> A = {{rat_of(1), rat_of(0), rat_of(0)},
                               {rat_of(0), rat_of(1), rat_of(0)},
                               {rat_of(0), rat_of(0), rat_of(1)}};
        QVec b(3, rat_of(0));
        PolySet octant = polyset_of({poly_from_rows(3, A, b)}, 3);
        for (int m : {1, 4, 9}) {
            auto mc = multicone(cx, flat_cov(cx, qv({1, 1, 1})), m);
            if (!polyset_equal(mc.closed, octant)) return "octant mismatch at m=" + std::to_string(m);
        }
        return "";
    });

    // ----- takeuchi R^2 multi-normal cone -----
    run.check("takeuchi_r2.mnc", [&]() -> std::string {
        auto f = family_from_json(load(dir, "takeuchi_r2.json"));
        auto s = scheme_from_family(f, derive(f));
        PolySet Z = polyset_from_json(load(dir, "takeuchi_r2_wedge.json"));
        auto in = mnc_member(s, Z, qv({0, 1}));
        if (in.verdict != Verdict::IN) return "(0,1) should be IN";
        if (!verify_membership(s, Z, qv({0, 1}), *in.cert_in)) return "IN certificate failed";
        for (QVec p : {qv({0, -1}), qv({1, 0})}) {
            auto out = mnc_member(s, Z, p);
            if (out.verdict != Verdict::OUT) return format_vec(p) + " should be OUT";
            if (!verify_separation(s, Z, *out.cert_out)) return "OUT certificate failed";
        }
        auto desc = mnc_describe(s, Z);
        PolySet expect = polyset_of(
            {poly_from_rows(2, {{rat_of(0), rat_of(1)}}, {rat_of(0)},
                            {{rat_of(1), rat_of(0)}}, {rat_of(0)})},
            2);
        if (!polyset_equal(desc.cone, expect)) return "described cone differs";
        return "";
    });

    // ----- property suites (seeded) -----
    std::mt19937_64 rng(seed ? seed : 424242);
    run.check("prop.polar_laws", [&]() -> std::string {
        std::uniform_int_distribution<int> vd(-3, 3), kd(1, 4), dd(2, 4);
        for (int trial = 0; trial < 40; ++trial) {
            int dim = dd(rng);
            auto mk = [&]() {
                std::vector<QVec> rays;
                int k = kd(rng);
                for (int i = 0; i < k; ++i) {
                    QVec r(dim);
                    for (auto& x : r) x = rat_of(vd(rng));
                    rays.push_back(std::move(r));
                }
                return canonicalized(cone_from_v(dim, std::move(rays)));
            };
            Cone a = mk(), b = mk();
            if (!cone_equal(polar(polar(a)), a)) return "double polar failed";
            if (!cone_equal(polar(mink_sum({a, b})), intersect(polar(a), polar(b))))
                return "sum-polar law failed";
        }
        return "";
    });
    run.check("prop.oracle_concordance", [&]() -> std::string {
        std::uniform_int_distribution<int> vd(-2, 2), dimd(1, 3), elld(1, 2), rowsd(1, 3),
            bitd(0, 1);
        int done = 0;
        while (done < 25) {
            int dim = dimd(rng), ell = elld(rng);
            MonomialScheme s;
            s.dim = dim;
            s.ell = ell;
            s.exponents.assign(dim, std::vector<int>(ell, 0));
            for (auto& row : s.exponents)
                for (auto& e : row) e = bitd(rng);
            std::vector<QVec> A;
            QVec b;
            int nr = rowsd(rng);
            for (int r = 0; r < nr; ++r) {
                QVec a(dim);
                for (auto& x : a) x = rat_of(vd(rng));
                if (is_zero_vec(a)) a[0] = 1;
                A.push_back(a);
                b.push_back(rat_of(vd(rng)));
            }
            Polyhedron z = poly_from_rows(dim, A, b);
            if (poly_is_empty(z)) continue;
            PolySet Z = polyset_of({z}, dim);
            QVec p(dim);
            for (auto& x : p) x = rat_of(vd(rng));
            auto mr = mnc_member(s, Z, p);
            OracleLadder ladder;
            ladder.max_steps = 14;
            ladder.randomize_axes = true;
            ladder.seed = seed ? seed : 424242;
            auto orc = oracle_member(s, Z, p, ladder);
            if (orc.verdict == OracleVerdict::LIKELY_IN && mr.verdict != Verdict::IN)
                return "oracle IN vs member OUT";
            if (orc.verdict == OracleVerdict::LIKELY_OUT && mr.verdict != Verdict::OUT)
                return "oracle OUT vs member IN";
            ++done;
        }
        return "";
    });
    run.check("prop.restriction_compat", [&]() -> std::string {
        auto f = family_from_json(load(dir, "takeuchi_r2.json"));
        auto s_full = scheme_from_family(f, derive(f));
        auto fk = restrict(f, {2});
        auto s_sub = scheme_from_family(fk, derive(fk));
        std::uniform_int_distribution<int> vd(-2, 2), rowsd(1, 2);
        int done = 0;
        while (done < 15) {
            std::vector<QVec> A;
            QVec b;
            int nr = rowsd(rng);
            for (int r = 0; r < nr; ++r) {
                QVec a{rat_of(vd(rng)), rat_of(vd(rng))};
                if (is_zero_vec(a)) a[0] = 1;
                A.push_back(a);
                b.push_back(rat_of(vd(rng)));
            }
            Polyhedron z = poly_from_rows(2, A, b);
            if (poly_is_empty(z)) continue;
            PolySet Z = polyset_of({z}, 2);
            QVec p{rat_of(0), rat_of(vd(rng))};
            if (mnc_member(s_full, Z, p).verdict != mnc_member(s_sub, Z, p).verdict)
                return "restriction compatibility failed at " + format_vec(p);
            ++done;
        }
        return "";
    });

    return results;
}

}  // namespace mnc

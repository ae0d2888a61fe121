#include "mnc/cli.hpp"

#include "mnc/errors.hpp"
#include "mnc/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace mnc {
namespace {

Json read_json(const std::string& path) {
    if (path == "-") {
        Json j;
        try {
            std::cin >> j;
        } catch (const std::exception& e) {
            throw InputError(std::string("stdin: ") + e.what());
        }
        return j;
    }
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    return j;
}

QVec parse_vec_arg(const std::string& s) {
    QVec v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto r = parse_rat(tok);
        if (!r) throw InputError("malformed rational list: " + s);
        v.push_back(*r);
    }
    return v;
}

std::set<int> parse_set_arg(const std::string& s) {
    std::set<int> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.insert(std::stoi(tok));
    return out;
}

// scheme json, or a family json (members present) converted through derive
MonomialScheme scheme_arg(const Json& j, bool dual = false) {
    if (j.contains("members")) {
        IndexFamily f = family_from_json(j);
        DerivedIndices d = derive(f);
        return dual ? scheme_for_dual(f, d) : scheme_from_family(f, d);
    }
    return scheme_from_json(j);
}

CovectorPoint covector_arg(const StalkContext& cx, const std::string& flat) {
    QVec v = parse_vec_arg(flat);
    if ((int)v.size() != cx.N)
        throw InputError("covector: expected " + std::to_string(cx.N) + " coordinates");
    CovectorPoint p;
    p.blocks.resize(cx.family.ell() + 1);
    for (int k = 1; k <= cx.family.ell(); ++k)
        for (int pos : cx.block_pos[k]) p.blocks[k].push_back(v[pos]);
    return p;
}

struct Output {
    std::string status = "OK";
    Json payload = Json::object();
    std::vector<std::string> diagnostics;
};

int finish(const Output& out, bool pretty) {
    Json j{{"status", out.status}, {"payload", out.payload}, {"diagnostics", out.diagnostics}};
    if (pretty)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << j.dump() << "\n";
    if (out.status == "INPUT_ERROR") return 2;
    if (out.status == "RESOURCE" || out.status == "INCONCLUSIVE") return 3;
    return 0;
}

// ----- svg emission (2d/3d cones, wireframe for 3d) -------------------------

double approx(const Rat& r) { return r.get_d(); }

void write_svg(const std::string& path, const PolySet& set) {
    int dim = set.dim;
    if (dim != 2 && dim != 3) throw InputError("--svg supports dimension 2 or 3 only");
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    double size = 400, half = size / 2, scl = half / 1.4;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << size << "' height='" << size
        << "' viewBox='0 0 " << size << " " << size << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    auto proj = [&](const QVec& v) {
        double x, y;
        if (dim == 2) {
            x = approx(v[0]);
            y = approx(v[1]);
        } else {
            x = approx(v[0]) - 0.5 * approx(v[2]);
            y = approx(v[1]) - 0.35 * approx(v[2]);
        }
        return std::pair<double, double>(half + scl * x, half - scl * y);
    };
    const char* colors[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e"};
    int ci = 0;
    for (const auto& member : set.members) {
        // clip to the unit box and enumerate vertices
        Polyhedron clip = member;
        for (int i = 0; i < dim; ++i) {
            QVec e(dim, Rat(0));
            e[i] = 1;
            clip.A.push_back(e);
            clip.b.push_back(rat_of(-1));
            e[i] = -1;
            clip.A.push_back(e);
            clip.b.push_back(rat_of(-1));
        }
        clip.canonical = false;
        canonicalize(clip);
        if (clip.empty_flag) continue;
        // vertices: feasible points where dim many independent rows are tight
        std::vector<QVec> verts;
        std::vector<std::pair<QVec, Rat>> rows;
        for (size_t r = 0; r < clip.A.size(); ++r) rows.push_back({clip.A[r], clip.b[r]});
        size_t nr = rows.size();
        std::function<void(size_t, std::vector<size_t>&)> pick = [&](size_t start,
                                                                     std::vector<size_t>& idx) {
            if ((int)idx.size() == dim - (int)clip.C.size()) {
                std::vector<LinCon> cons = poly_conditions(clip);
                for (size_t i : idx) cons.push_back({rows[i].first, rows[i].second, RelOp::Eq});
                auto pt = lp_feasible_point(dim, cons);
                if (pt) {
                    bool dup = false;
                    for (const auto& v : verts)
                        if (v == *pt) dup = true;
                    if (!dup) verts.push_back(*pt);
                }
                return;
            }
            for (size_t i = start; i < nr; ++i) {
                idx.push_back(i);
                pick(i + 1, idx);
                idx.pop_back();
            }
        };
        std::vector<size_t> idx;
        pick(0, idx);
        if (verts.empty()) continue;
        const char* color = colors[ci++ % 5];
        if (dim == 2) {
            // order by angle around the centroid
            double cxm = 0, cym = 0;
            std::vector<std::pair<double, double>> pts;
            for (const auto& v : verts) {
                auto [x, y] = proj(v);
                pts.push_back({x, y});
                cxm += x;
                cym += y;
            }
            cxm /= pts.size();
            cym /= pts.size();
            std::sort(pts.begin(), pts.end(), [&](auto& a, auto& b) {
                return std::atan2(a.second - cym, a.first - cxm) <
                       std::atan2(b.second - cym, b.first - cxm);
            });
            out << "<polygon points='";
            for (auto& [x, y] : pts) out << x << "," << y << " ";
            out << "' fill='" << color << "' fill-opacity='0.35' stroke='" << color << "'/>\n";
        } else {
            // wireframe: edges join vertices sharing dim-1 tight rows
            for (size_t a = 0; a < verts.size(); ++a)
                for (size_t b2 = a + 1; b2 < verts.size(); ++b2) {
                    int common = 0;
                    for (const auto& [row, rhs] : rows)
                        if (dot(row, verts[a]) == rhs && dot(row, verts[b2]) == rhs) ++common;
                    if (common < dim - 1 - (int)clip.C.size()) continue;
                    auto [x1, y1] = proj(verts[a]);
                    auto [x2, y2] = proj(verts[b2]);
                    out << "<line x1='" << x1 << "' y1='" << y1 << "' x2='" << x2 << "' y2='"
                        << y2 << "' stroke='" << color << "'/>\n";
                }
        }
    }
    out << "</svg>\n";
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"multi-normal cone calculus for rational polyhedral data"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string output_mode = "json";
    unsigned long long seed = 0;
    std::string guard_spec;
    app.add_option("--output", output_mode, "json|pretty")->capture_default_str();
    app.add_option("--seed", seed, "seed for randomized paths")->capture_default_str();
    app.add_option("--guard", guard_spec, "limits as key=value,... (ell,dim,chambers,signatures,cells,sep)");

    Guards guards;
    auto apply_guards = [&]() {
        if (guard_spec.empty()) return;
        std::stringstream ss(guard_spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw InputError("--guard: expected key=value");
            std::string key = tok.substr(0, eq);
            long val = std::stol(tok.substr(eq + 1));
            if (key == "ell") guards.max_ell = (int)val;
            else if (key == "dim") guards.max_dim = (int)val;
            else if (key == "chambers") guards.max_chambers = val;
            else if (key == "signatures") guards.max_signatures = val;
            else if (key == "cells") guards.max_cells = val;
            else if (key == "sep") guards.max_separation_m = (int)val;
            else throw InputError("--guard: unknown key " + key);
        }
    };

    Output result;
    std::function<void()> action;

    // ---- family ----
    auto* family = app.add_subcommand("family", "index-family operations");
    {
        static std::string path;
        auto* v = family->add_subcommand("validate", "check H1, H2, H3");
        v->add_option("family", path, "family json")->required();
        v->callback([&]() {
            action = [&]() {
                auto rep = validate(family_from_json(read_json(path)));
                result.payload = validation_to_json(rep);
                result.status = rep.ok ? "OK" : "FALSE";
                for (const auto& viol : rep.violations)
                    result.diagnostics.push_back(viol.condition + ": " + viol.reason);
            };
        });
        static std::string dpath;
        auto* d = family->add_subcommand("derive", "index combinatorics");
        d->add_option("family", dpath, "family json")->required();
        d->callback([&]() {
            action = [&]() {
                result.payload = derived_to_json(derive(family_from_json(read_json(dpath))));
            };
        });
        static std::string rpath, kspec;
        auto* r = family->add_subcommand("restrict", "subfamily");
        r->add_option("family", rpath)->required();
        r->add_option("--K", kspec, "comma separated member indices")->required();
        r->callback([&]() {
            action = [&]() {
                auto sub = restrict(family_from_json(read_json(rpath)), parse_set_arg(kspec));
                result.payload = family_to_json(sub);
                result.payload["valid"] = validate(sub).ok;
            };
        });
    }

    // ---- cone ----
    auto* conecmd = app.add_subcommand("cone", "exact cone and polyhedron calculus");
    {
        static std::string a, b, point, xi, block;
        auto add_unary = [&](const char* name, const char* help, auto fn) {
            auto* c = conecmd->add_subcommand(name, help);
            c->add_option("cone", a)->required();
            c->callback([&, fn]() { action = [&, fn]() { fn(); }; });
            return c;
        };
        add_unary("hv", "both minimal representations", [&]() {
            result.payload = cone_to_json(hv_convert(cone_from_json(read_json(a))));
        });
        add_unary("polar", "nonnegative-pairing polar", [&]() {
            result.payload = cone_to_json(polar(cone_from_json(read_json(a))));
        });
        add_unary("antipode", "pointwise negation", [&]() {
            result.payload = cone_to_json(antipode(cone_from_json(read_json(a))));
        });
        add_unary("dim", "dimension", [&]() {
            result.payload = Json{{"dim", cone_dim(cone_from_json(read_json(a)))}};
        });
        {
            auto* c = conecmd->add_subcommand("sum", "Minkowski sum");
            static std::vector<std::string> paths;
            c->add_option("cones", paths)->required()->expected(-2);
            c->callback([&]() {
                action = [&]() {
                    std::vector<Cone> parts;
                    for (const auto& p : paths) parts.push_back(cone_from_json(read_json(p)));
                    result.payload = cone_to_json(mink_sum(parts));
                };
            });
        }
        {
            auto* c = conecmd->add_subcommand("intersect", "intersection");
            c->add_option("a", a)->required();
            c->add_option("b", b)->required();
            c->callback([&]() {
                action = [&]() {
                    result.payload = cone_to_json(
                        intersect(cone_from_json(read_json(a)), cone_from_json(read_json(b))));
                };
            });
        }
        {
            auto* c = conecmd->add_subcommand("subset", "containment");
            c->add_option("a", a)->required();
            c->add_option("b", b)->required();
            c->callback([&]() {
                action = [&]() {
                    bool ok = cone_subset(cone_from_json(read_json(a)), cone_from_json(read_json(b)));
                    result.payload = Json{{"subset", ok}};
                    result.status = ok ? "OK" : "FALSE";
                };
            });
        }
        {
            auto* c = conecmd->add_subcommand("proper", "properness w.r.t. a direction");
            c->add_option("cone", a)->required();
            c->add_option("--xi", xi)->required();
            c->callback([&]() {
                action = [&]() {
                    bool ok = is_proper_wrt(cone_from_json(read_json(a)), parse_vec_arg(xi));
                    result.payload = Json{{"proper", ok}};
                    result.status = ok ? "OK" : "FALSE";
                };
            });
        }
        {
            auto* c = conecmd->add_subcommand("member", "point membership (cone, polyhedron or polyset)");
            c->add_option("set", a)->required();
            c->add_option("--point", point)->required();
            c->callback([&]() {
                action = [&]() {
                    Json j = read_json(a);
                    QVec x = parse_vec_arg(point);
                    bool ok;
                    if (j.contains("members"))
                        ok = polyset_member(polyset_from_json(j), x);
                    else if (j.contains("vrep") || (j.contains("hrep") && !j.at("hrep").contains("rhs")))
                        ok = cone_member(cone_from_json(j), x);
                    else
                        ok = poly_member(poly_from_json(j), x);
                    result.payload = Json{{"member", ok}};
                    result.status = ok ? "OK" : "FALSE";
                };
            });
        }
        {
            auto* c = conecmd->add_subcommand("relint", "relative interior point");
            c->add_option("poly", a)->required();
            c->callback([&]() {
                action = [&]() {
                    result.payload =
                        Json{{"point", vec_to_json(relative_interior_point(poly_from_json(read_json(a))))}};
                };
            });
        }
        {
            auto* c = conecmd->add_subcommand("partialpolar", "blockwise polar on a product");
            c->add_option("cone", a)->required();
            c->add_option("--block", block, "0-based coordinates")->required();
            c->callback([&]() {
                action = [&]() {
                    std::vector<int> blk;
                    for (int i : parse_set_arg(block)) blk.push_back(i);
                    result.payload = cone_to_json(partial_polar(cone_from_json(read_json(a)), blk));
                };
            });
        }
    }

    // ---- deform ----
    auto* deform = app.add_subcommand("deform", "monomial scaling schemes");
    {
        static std::string fpath, ppath, ispec, jspec;
        auto* s = deform->add_subcommand("scale", "base deformation scheme");
        s->add_option("family", fpath)->required();
        s->callback([&]() {
            action = [&]() {
                IndexFamily f = family_from_json(read_json(fpath));
                result.payload = scheme_to_json(scheme_from_family(f, derive(f)));
            };
        });
        auto* d = deform->add_subcommand("dual", "cotangent scheme on 2n coordinates");
        d->add_option("family", fpath)->required();
        d->callback([&]() {
            action = [&]() {
                IndexFamily f = family_from_json(read_json(fpath));
                result.payload = scheme_to_json(scheme_for_dual(f, derive(f)));
            };
        });
        auto* r = deform->add_subcommand("relabel", "Hamiltonian block swap");
        r->add_option("family", fpath)->required();
        r->add_option("--point", ppath, "cotangent point json")->required();
        r->add_option("--I", ispec);
        r->add_option("--J", jspec);
        r->callback([&]() {
            action = [&]() {
                IndexFamily f = family_from_json(read_json(fpath));
                DerivedIndices dd = derive(f);
                Json pj = read_json(ppath);
                CotangentPoint pt;
                pt.base.resize(f.ell() + 1);
                pt.fiber.resize(f.ell() + 1);
                for (int k = 0; k <= f.ell(); ++k) {
                    std::string key = std::to_string(k);
                    pt.base[k] = pj.contains("base") && pj["base"].contains(key)
                                     ? vec_from_json(pj["base"][key])
                                     : QVec(dd.hatI[k].size(), Rat(0));
                    pt.fiber[k] = pj.contains("fiber") && pj["fiber"].contains(key)
                                      ? vec_from_json(pj["fiber"][key])
                                      : QVec(dd.hatI[k].size(), Rat(0));
                }
                auto out = hamiltonian_relabel(f, dd, parse_set_arg(ispec), parse_set_arg(jspec), pt);
                Json base = Json::object(), fiber = Json::object();
                for (int k = 0; k <= f.ell(); ++k) {
                    base[std::to_string(k)] = vec_to_json(out.base[k]);
                    fiber[std::to_string(k)] = vec_to_json(out.fiber[k]);
                }
                result.payload = Json{{"base", base}, {"fiber", fiber}};
            };
        });
    }

    // ---- mnc ----
    auto* mnc = app.add_subcommand("mnc", "multi-normal cone computations");
    {
        static std::string spath, zpath, point, cpath;
        static long base = 2;
        static int steps = 20;
        static std::string epss = "1/2,1/4,1/8";
        static bool dual = false;
        auto* m = mnc->add_subcommand("member", "decide p in C(Z) with certificate");
        m->add_option("scheme", spath, "scheme json or family json")->required();
        m->add_option("Z", zpath, "polyset json")->required();
        m->add_option("--point", point)->required();
        m->add_flag("--dual", dual, "use the cotangent scheme of the family");
        m->callback([&]() {
            action = [&]() {
                MonomialScheme s = scheme_arg(read_json(spath), dual);
                PolySet Z = polyset_from_json(read_json(zpath));
                auto res = mnc_member(s, Z, parse_vec_arg(point), guards);
                result.payload["verdict"] = res.verdict == Verdict::IN ? "IN" : "OUT";
                if (res.cert_in) result.payload["certificate"] = membership_cert_to_json(*res.cert_in);
                if (res.cert_out)
                    result.payload["certificate"] = separation_cert_to_json(*res.cert_out);
                result.status = res.verdict == Verdict::IN ? "OK" : "FALSE";
            };
        });
        auto* de = mnc->add_subcommand("describe", "the full multi-normal cone");
        de->add_option("scheme", spath)->required();
        de->add_option("Z", zpath)->required();
        de->add_flag("--dual", dual);
        de->callback([&]() {
            action = [&]() {
                MonomialScheme s = scheme_arg(read_json(spath), dual);
                PolySet Z = polyset_from_json(read_json(zpath));
                auto res = mnc_describe(s, Z, guards);
                result.payload["cone"] = polyset_to_json(res.cone);
                Json chambers = Json::array();
                for (const auto& ch : res.chambers) {
                    Json groups = Json::array();
                    for (const auto& g : ch.groups) {
                        Json rows = Json::array();
                        for (const auto& row : g) {
                            Json rr = Json::array();
                            for (int e : row) rr.push_back(e);
                            rows.push_back(rr);
                        }
                        groups.push_back(rows);
                    }
                    Json limits = Json::array();
                    for (const auto& lim : ch.limits) limits.push_back(poly_to_json(lim));
                    Json witness = Json::array();
                    for (long w : ch.witness) witness.push_back(w);
                    chambers.push_back(
                        Json{{"groups", groups}, {"witness", witness}, {"limits", limits}});
                }
                result.payload["chambers"] = chambers;
            };
        });
        auto* o = mnc->add_subcommand("oracle", "sampling oracle ladder");
        o->add_option("scheme", spath)->required();
        o->add_option("Z", zpath)->required();
        o->add_option("--point", point)->required();
        o->add_option("--base", base)->capture_default_str();
        o->add_option("--steps", steps)->capture_default_str();
        o->add_option("--eps", epss, "comma separated epsilons")->capture_default_str();
        o->add_flag("--dual", dual);
        o->callback([&]() {
            action = [&]() {
                MonomialScheme s = scheme_arg(read_json(spath), dual);
                PolySet Z = polyset_from_json(read_json(zpath));
                OracleLadder ladder;
                ladder.base = base;
                ladder.max_steps = steps;
                ladder.epsilons = parse_vec_arg(epss);
                ladder.seed = seed;
                ladder.randomize_axes = seed != 0;
                auto res = oracle_member(s, Z, parse_vec_arg(point), ladder);
                const char* v = res.verdict == OracleVerdict::LIKELY_IN    ? "LIKELY_IN"
                                : res.verdict == OracleVerdict::LIKELY_OUT ? "LIKELY_OUT"
                                                                           : "INCONCLUSIVE";
                result.payload["verdict"] = v;
                Json grid = Json::array();
                for (const auto& row : res.feasible) {
                    Json r = Json::array();
                    for (bool x : row) r.push_back(x);
                    grid.push_back(r);
                }
                result.payload["feasible"] = grid;
                result.diagnostics = res.notes;
                if (res.verdict == OracleVerdict::INCONCLUSIVE) result.status = "INCONCLUSIVE";
            };
        });
        auto* ve = mnc->add_subcommand("verify", "re-check a certificate");
        ve->add_option("scheme", spath)->required();
        ve->add_option("Z", zpath)->required();
        ve->add_option("certificate", cpath)->required();
        ve->add_option("--point", point);
        ve->add_flag("--dual", dual);
        ve->callback([&]() {
            action = [&]() {
                MonomialScheme s = scheme_arg(read_json(spath), dual);
                PolySet Z = polyset_from_json(read_json(zpath));
                Json cj = read_json(cpath);
                bool ok;
                if (cj.contains("weights")) {
                    if (point.empty()) throw InputError("mnc verify: membership needs --point");
                    ok = verify_membership(s, Z, parse_vec_arg(point),
                                           membership_cert_from_json(cj));
                } else {
                    ok = verify_separation(s, Z, separation_cert_from_json(cj));
                }
                result.payload = Json{{"verified", ok}};
                result.status = ok ? "OK" : "FALSE";
            };
        });
    }

    // ---- stalk ----
    auto* stalk = app.add_subcommand("stalk", "fiber-formula cone families");
    {
        static std::string fpath, cov, dir, svg, ispec, jspec;
        static int k = 1, m = 1;
        auto* g = stalk->add_subcommand("gamma", "gamma_k cone");
        g->add_option("family", fpath)->required();
        g->add_option("--k", k)->required();
        g->add_option("--cov", cov, "covector, flat over the N coordinates")->required();
        g->callback([&]() {
            action = [&]() {
                StalkContext cx = make_context(family_from_json(read_json(fpath)));
                auto gm = gamma(cx, k, covector_arg(cx, cov));
                result.payload["empty"] = gm.empty;
                if (!gm.empty) {
                    result.payload["closure"] = cone_to_json(gm.closure);
                    result.payload["strict_row"] = vec_to_json(gm.strict_row);
                }
            };
        });
        auto* l = stalk->add_subcommand("ladder", "G-ladder stage");
        l->add_option("family", fpath)->required();
        l->add_option("--cov", cov)->required();
        l->add_option("--m", m)->required();
        l->callback([&]() {
            action = [&]() {
                StalkContext cx = make_context(family_from_json(read_json(fpath)));
                auto lad = g_ladder(cx, covector_arg(cx, cov), m);
                result.payload["G"] = cone_to_json(lad.G);
                result.payload["U"] = poly_to_json(lad.U);
                Json parts = Json::array();
                for (const auto& p : lad.parts) parts.push_back(cone_to_json(p));
                result.payload["parts"] = parts;
            };
        });
        auto* z = stalk->add_subcommand("zfamily", "Z_k family stage");
        z->add_option("family", fpath)->required();
        z->add_option("--cov", cov)->required();
        z->add_option("--m", m)->required();
        z->callback([&]() {
            action = [&]() {
                StalkContext cx = make_context(family_from_json(read_json(fpath)));
                auto p = covector_arg(cx, cov);
                auto zf = make_z_family(cx, p, m);
                Json items = Json::array();
                for (const auto& item : zf) {
                    items.push_back(Json{{"k", item.k},
                                         {"eps", rat_to_json(item.eps)},
                                         {"cap", cone_to_json(item.cap)},
                                         {"Zk", polyset_to_json(item.Zk)},
                                         {"normal_condition",
                                          check_normal_condition(cx, p, item.Zk, item.k, guards)}});
                }
                result.payload["items"] = items;
            };
        });
        auto* e = stalk->add_subcommand("enclose", "wedge certificate");
        e->add_option("family", fpath)->required();
        e->add_option("--cov", cov)->required();
        e->add_option("--m", m)->required();
        e->callback([&]() {
            action = [&]() {
                StalkContext cx = make_context(family_from_json(read_json(fpath)));
                auto p = covector_arg(cx, cov);
                auto cert = enclose(cx, p, make_z_family(cx, p, m), guards);
                result.payload["ok"] = cert.ok;
                result.payload["delta"] = rat_to_json(cert.delta);
                result.payload["G"] = cone_to_json(cert.G);
                result.payload["V"] = cone_to_json(cert.V);
                Json table = Json::array();
                for (const auto& [sigma, ok] : cert.table)
                    table.push_back(Json{{"sigma", sigma}, {"verified", ok}});
                result.payload["table"] = table;
                result.status = cert.ok ? "OK" : "FALSE";
            };
        });
        auto* mc = stalk->add_subcommand("multicone", "cofinal multi-cone member");
        mc->add_option("family", fpath)->required();
        mc->add_option("--dir", dir, "direction, flat over the N coordinates")->required();
        mc->add_option("--m", m)->required();
        mc->add_option("--svg", svg, "write an svg rendering");
        mc->callback([&]() {
            action = [&]() {
                StalkContext cx = make_context(family_from_json(read_json(fpath)));
                auto mcone = multicone(cx, covector_arg(cx, dir), m);
                result.payload["closed"] = polyset_to_json(mcone.closed);
                Json strict = Json::array();
                for (const auto& row : mcone.strict_rows) strict.push_back(vec_to_json(row));
                result.payload["strict_rows"] = strict;
                if (!svg.empty()) {
                    write_svg(svg, mcone.closed);
                    result.diagnostics.push_back("svg written to " + svg);
                }
            };
        });
        auto* mx = stalk->add_subcommand("mixed", "mixed specialization ladder");
        mx->add_option("family", fpath)->required();
        mx->add_option("--cov", cov)->required();
        mx->add_option("--m", m)->required();
        mx->add_option("--I", ispec);
        mx->add_option("--J", jspec);
        mx->callback([&]() {
            action = [&]() {
                StalkContext cx = make_context(family_from_json(read_json(fpath)));
                auto ml = mixed_ladder(cx, parse_set_arg(ispec), parse_set_arg(jspec),
                                       covector_arg(cx, cov), m);
                result.payload["W"] = polyset_to_json(ml.W);
                result.payload["G"] = cone_to_json(ml.g.G);
            };
        });
        auto* xg = stalk->add_subcommand("xig", "properness direction search");
        xg->add_option("family", fpath)->required();
        xg->add_option("--cov", cov)->required();
        xg->add_option("--m", m)->required();
        xg->callback([&]() {
            action = [&]() {
                StalkContext cx = make_context(family_from_json(read_json(fpath)));
                auto p = covector_arg(cx, cov);
                auto lad = g_ladder(cx, p, m);
                auto xgr = xi_G(cx, p, lad.parts);
                result.payload["xi"] = vec_to_json(xgr.xi);
                result.payload["sigma"] = xgr.sigma;
                Json exps = Json::array();
                for (int ee : xgr.exponents) exps.push_back(ee);
                result.payload["exponents"] = exps;
            };
        });
    }

    // ---- degree ----
    auto* degree = app.add_subcommand("degree", "concentration degree formulas");
    {
        static std::string fpath, cov, spath;
        auto* g = degree->add_subcommand("general", "mixed real/complex degree");
        g->add_option("family", fpath)->required();
        g->add_option("--split", spath, "split json")->required();
        g->add_option("--cov", cov)->required();
        g->callback([&]() {
            action = [&]() {
                IndexFamily f = family_from_json(read_json(fpath));
                StalkContext cx = make_context(f);
                auto rep = degree_general(f, split_from_json(read_json(spath)),
                                          covector_arg(cx, cov));
                result.payload = degree_report_to_json(rep);
            };
        });
        auto* c = degree->add_subcommand("complex", "all-complex degree");
        c->add_option("family", fpath)->required();
        c->add_option("--cov", cov)->required();
        c->callback([&]() {
            action = [&]() {
                IndexFamily f = family_from_json(read_json(fpath));
                StalkContext cx = make_context(f);
                auto rep = degree_complex(f, covector_arg(cx, cov));
                result.payload = degree_report_to_json(rep);
            };
        });
    }

    // ---- ss ----
    auto* ss = app.add_subcommand("ss", "microsupport estimates");
    {
        static std::string fpath, cpath, point, ncoords;
        static int nx = 1, ny = 1;
        auto* e = ss->add_subcommand("estimate", "C_{chi*} of a conic set");
        e->add_option("family", fpath)->required();
        e->add_option("conic", cpath)->required();
        e->callback([&]() {
            action = [&]() {
                result.payload = polyset_to_json(ss_estimate(
                    family_from_json(read_json(fpath)), conic_from_json(read_json(cpath)), guards));
            };
        });
        auto* s2 = ss->add_subcommand("support", "support bound on S*_chi");
        s2->add_option("family", fpath)->required();
        s2->add_option("conic", cpath)->required();
        s2->callback([&]() {
            action = [&]() {
                result.payload = polyset_to_json(support_bound(
                    family_from_json(read_json(fpath)), conic_from_json(read_json(cpath)), guards));
            };
        });
        auto* w = ss->add_subcommand("witness", "sequence witness at a point");
        w->add_option("family", fpath)->required();
        w->add_option("conic", cpath)->required();
        w->add_option("--point", point, "flat 2n coordinates")->required();
        w->callback([&]() {
            action = [&]() {
                auto res = seq_witness(family_from_json(read_json(fpath)),
                                       conic_from_json(read_json(cpath)), parse_vec_arg(point),
                                       guards);
                result.payload["found"] = res.found;
                if (res.found) {
                    result.payload["certificate"] = membership_cert_to_json(*res.cert);
                    Json pts = Json::array(), cs = Json::array();
                    for (const auto& q : res.points) pts.push_back(vec_to_json(q));
                    for (const auto& c : res.scales) cs.push_back(vec_to_json(c));
                    result.payload["points"] = pts;
                    result.payload["scales"] = cs;
                } else {
                    result.payload["separation"] = separation_cert_to_json(*res.separation);
                    result.status = "FALSE";
                }
            };
        });
        auto* nc = ss->add_subcommand("nonchar", "non-characteristic check");
        nc->add_option("family", fpath)->required();
        nc->add_option("conic", cpath)->required();
        nc->callback([&]() {
            action = [&]() {
                auto res = noncharacteristic_check(family_from_json(read_json(fpath)),
                                                   conic_from_json(read_json(cpath)), guards);
                result.payload["noncharacteristic"] = res.ok;
                result.payload["bound_slice"] = polyset_to_json(res.bound_slice);
                if (res.witness) result.payload["witness"] = vec_to_json(*res.witness);
                result.status = res.ok ? "OK" : "FALSE";
            };
        });
        auto* io = ss->add_subcommand("iotasharp", "T*M slice of the conormal-cone limit");
        io->add_option("conic", cpath)->required();
        io->add_option("--nx", nx)->required();
        io->add_option("--ny", ny)->required();
        io->callback([&]() {
            action = [&]() {
                IotaCoords coords{nx, ny};
                result.payload = polyset_to_json(
                    iota_sharp(coords, polyset_from_json(read_json(cpath)), guards));
            };
        });
        auto* hy = ss->add_subcommand("hyperbolic", "hyperbolicity of N in M");
        hy->add_option("conic", cpath)->required();
        hy->add_option("--nx", nx)->required();
        hy->add_option("--ny", ny)->required();
        hy->add_option("--N", ncoords, "coordinates cut by N (1-based in x)")->required();
        hy->callback([&]() {
            action = [&]() {
                IotaCoords coords{nx, ny};
                bool ok = hyperbolicity_check(coords, parse_set_arg(ncoords),
                                              polyset_from_json(read_json(cpath)), guards);
                result.payload = Json{{"hyperbolic", ok}};
                result.status = ok ? "OK" : "FALSE";
            };
        });
    }

    // ---- lc ----
    auto* lc = app.add_subcommand("lc", "cellular local cohomology");
    {
        static std::string fpath, cov, wpath;
        static int mmax = 4;
        auto* st = lc->add_subcommand("stalk", "stalk limit along the G-ladder");
        st->add_option("family", fpath)->required();
        st->add_option("--cov", cov)->required();
        st->add_option("--W", wpath, "coefficient region polyset")->required();
        st->add_option("--mmax", mmax)->capture_default_str();
        st->callback([&]() {
            action = [&]() {
                StalkContext cx = make_context(family_from_json(read_json(fpath)));
                auto t = stalk_limit(cx, covector_arg(cx, cov),
                                     polyset_from_json(read_json(wpath)), mmax, guards);
                result.payload = table_to_json(t);
                for (const auto& line : t.trail) result.diagnostics.push_back(line);
                if (!t.stabilized) result.status = "INCONCLUSIVE";
            };
        });
        auto* cp = lc->add_subcommand("compare", "G-ladder route vs Z-family route");
        cp->add_option("family", fpath)->required();
        cp->add_option("--cov", cov)->required();
        cp->add_option("--W", wpath)->required();
        cp->add_option("--mmax", mmax)->capture_default_str();
        cp->callback([&]() {
            action = [&]() {
                StalkContext cx = make_context(family_from_json(read_json(fpath)));
                auto rep = compare_families(cx, covector_arg(cx, cov),
                                            polyset_from_json(read_json(wpath)), mmax, guards);
                const char* o = rep.outcome == CompareOutcome::AGREE      ? "AGREE"
                                : rep.outcome == CompareOutcome::DISAGREE ? "DISAGREE"
                                                                          : "INCONCLUSIVE";
                result.payload["outcome"] = o;
                result.payload["g_side"] = table_to_json(rep.g_side);
                result.payload["z_side"] = table_to_json(rep.z_side);
                if (rep.outcome == CompareOutcome::INCONCLUSIVE) result.status = "INCONCLUSIVE";
                if (rep.outcome == CompareOutcome::DISAGREE) result.status = "FALSE";
            };
        });
    }

    // ---- fixtures ----
    auto* fx = app.add_subcommand("fixtures", "golden fixtures and property suites");
    {
        static std::string dir = "fixtures";
        static std::string filter;
        auto* run = fx->add_subcommand("run", "run all fixtures");
        run->add_option("--dir", dir)->capture_default_str();
        run->add_option("--filter", filter, "substring filter on fixture names");
        run->callback([&]() {
            action = [&]() {
                auto results = run_fixtures(dir, filter, seed);
                Json arr = Json::array();
                bool all_ok = true;
                for (const auto& r : results) {
                    arr.push_back(Json{{"name", r.name}, {"ok", r.ok}, {"detail", r.detail}});
                    if (!r.ok) {
                        all_ok = false;
                        result.diagnostics.push_back(r.name + ": " + r.detail);
                    }
                }
                result.payload = Json{{"fixtures", arr}, {"total", results.size()}};
                result.status = all_ok ? "OK" : "FALSE";
            };
        });
    }

    try {
        app.parse(argc, argv);
        apply_guards();
        if (!action) throw InputError("no operation selected");
        action();
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        Output err;
        err.status = "INPUT_ERROR";
        err.diagnostics.push_back(e.what());
        finish(err, output_mode == "pretty");
        return 2;
    } catch (const InputError& e) {
        Output err;
        err.status = "INPUT_ERROR";
        err.diagnostics.push_back(e.what());
        return finish(err, output_mode == "pretty");
    } catch (const ResourceError& e) {
        Output err;
        err.status = "RESOURCE";
        err.diagnostics.push_back(e.what());
        return finish(err, output_mode == "pretty");
    } catch (const InternalConsistencyError& e) {
        Output err;
        err.status = "RESOURCE";
        err.diagnostics.push_back(std::string("internal consistency: ") + e.what());
        finish(err, output_mode == "pretty");
        return 3;
    }
    return finish(result, output_mode == "pretty");
}

}  // namespace mnc

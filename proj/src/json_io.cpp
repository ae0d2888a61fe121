#include "mnc/json_io.hpp"

#include "mnc/errors.hpp"

namespace mnc {

Json rat_to_json(const Rat& r) { return format_rat(r); }

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat((long)j.get<long long>());
    if (!j.is_string()) throw InputError("expected rational as \"p/q\" string");
    auto r = parse_rat(j.get<std::string>());
    if (!r) throw InputError("malformed rational: " + j.get<std::string>());
    return *r;
}

Json vec_to_json(const QVec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(rat_to_json(x));
    return out;
}

QVec vec_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("expected array of rationals");
    QVec v;
    for (const auto& x : j) v.push_back(rat_from_json(x));
    return v;
}

namespace {
Json rows_to_json(const std::vector<QVec>& rows) {
    Json out = Json::array();
    for (const auto& r : rows) out.push_back(vec_to_json(r));
    return out;
}

std::vector<QVec> rows_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("expected array of rows");
    std::vector<QVec> rows;
    for (const auto& r : j) rows.push_back(vec_from_json(r));
    return rows;
}

Json set_to_json(const std::set<int>& s) {
    Json out = Json::array();
    for (int x : s) out.push_back(x);
    return out;
}

std::set<int> set_from_json(const Json& j) {
    std::set<int> s;
    for (const auto& x : j) s.insert(x.get<int>());
    return s;
}
}  // namespace

Json family_to_json(const IndexFamily& f) {
    Json members = Json::array();
    for (const auto& m : f.members) members.push_back(set_to_json(m));
    return Json{{"n", f.n}, {"members", members}};
}

IndexFamily family_from_json(const Json& j) {
    if (!j.contains("n") || !j.contains("members"))
        throw InputError("family: expected {\"n\": int, \"members\": [[...]]}");
    IndexFamily f;
    f.n = j.at("n").get<int>();
    for (const auto& m : j.at("members")) f.members.push_back(set_from_json(m));
    return f;
}

Json derived_to_json(const DerivedIndices& d) {
    Json out;
    Json hatI = Json::array();
    for (const auto& s : d.hatI) hatI.push_back(set_to_json(s));
    out["hatI"] = hatI;
    out["I0"] = set_to_json(d.I0);
    Json J = Json::object();
    for (size_t i = 1; i < d.J.size(); ++i) J[std::to_string(i)] = set_to_json(d.J[i]);
    out["J"] = J;
    Json hatJ = Json::array(), hatJc = Json::array();
    for (const auto& s : d.hatJ) hatJ.push_back(set_to_json(s));
    for (const auto& s : d.hatJc) hatJc.push_back(set_to_json(s));
    out["hatJ"] = hatJ;
    out["hatJc"] = hatJc;
    Json prec = Json::object(), succ = Json::object(), incomp = Json::object();
    for (size_t k = 1; k < d.prec.size(); ++k) {
        prec[std::to_string(k)] = set_to_json(d.prec[k]);
        succ[std::to_string(k)] = set_to_json(d.succ[k]);
        incomp[std::to_string(k)] = set_to_json(d.incomp[k]);
    }
    out["prec"] = prec;
    out["succ"] = succ;
    out["incomp"] = incomp;
    return out;
}

Json cone_to_json(const Cone& c) {
    Cone cc = canonicalized(c);
    return Json{{"dim", cc.dim},
                {"hrep", Json{{"ineqs", rows_to_json(cc.ineqs)}, {"eqs", rows_to_json(cc.eqs)}}},
                {"vrep", Json{{"rays", rows_to_json(cc.rays)}, {"lines", rows_to_json(cc.lines)}}}};
}

Cone cone_from_json(const Json& j) {
    if (!j.contains("dim")) throw InputError("cone: missing dim");
    int dim = j.at("dim").get<int>();
    if (j.contains("hrep")) {
        const auto& h = j.at("hrep");
        return cone_from_h(dim, h.contains("ineqs") ? rows_from_json(h.at("ineqs")) : std::vector<QVec>{},
                           h.contains("eqs") ? rows_from_json(h.at("eqs")) : std::vector<QVec>{});
    }
    if (j.contains("vrep")) {
        const auto& v = j.at("vrep");
        return cone_from_v(dim, v.contains("rays") ? rows_from_json(v.at("rays")) : std::vector<QVec>{},
                           v.contains("lines") ? rows_from_json(v.at("lines")) : std::vector<QVec>{});
    }
    throw InputError("cone: expected hrep or vrep");
}

Json poly_to_json(const Polyhedron& p) {
    Polyhedron c = canonicalized(p);
    Json out;
    out["dim"] = c.dim;
    out["empty"] = c.empty_flag;
    Json h;
    h["ineqs"] = rows_to_json(c.A);
    h["rhs"] = vec_to_json(c.b);
    h["eqs"] = rows_to_json(c.C);
    h["eq_rhs"] = vec_to_json(c.d);
    out["hrep"] = h;
    return out;
}

Polyhedron poly_from_json(const Json& j) {
    if (!j.contains("dim")) throw InputError("polyhedron: missing dim");
    int dim = j.at("dim").get<int>();
    if (j.contains("empty") && j.at("empty").get<bool>()) {
        Polyhedron p;
        p.dim = dim;
        p.empty_flag = true;
        p.canonical = true;
        return p;
    }
    if (!j.contains("hrep")) throw InputError("polyhedron: missing hrep");
    const auto& h = j.at("hrep");
    std::vector<QVec> A = h.contains("ineqs") ? rows_from_json(h.at("ineqs")) : std::vector<QVec>{};
    QVec b = h.contains("rhs") ? vec_from_json(h.at("rhs")) : QVec(A.size(), Rat(0));
    std::vector<QVec> C = h.contains("eqs") ? rows_from_json(h.at("eqs")) : std::vector<QVec>{};
    QVec d = h.contains("eq_rhs") ? vec_from_json(h.at("eq_rhs")) : QVec(C.size(), Rat(0));
    return poly_from_rows(dim, std::move(A), std::move(b), std::move(C), std::move(d));
}

Json polyset_to_json(const PolySet& s) {
    PolySet cs = canonicalized(s);
    Json members = Json::array();
    for (const auto& m : cs.members) members.push_back(poly_to_json(m));
    return Json{{"dim", cs.dim}, {"members", members}};
}

PolySet polyset_from_json(const Json& j) {
    if (!j.contains("dim") || !j.contains("members"))
        throw InputError("polyset: expected {\"dim\", \"members\"}");
    PolySet s;
    s.dim = j.at("dim").get<int>();
    for (const auto& m : j.at("members")) s.members.push_back(poly_from_json(m));
    canonicalize(s);
    return s;
}

Json scheme_to_json(const MonomialScheme& s) {
    Json expo = Json::array();
    for (const auto& row : s.exponents) {
        Json r = Json::array();
        for (int e : row) r.push_back(e);
        expo.push_back(r);
    }
    return Json{{"ell", s.ell}, {"exponents", expo}};
}

MonomialScheme scheme_from_json(const Json& j) {
    if (!j.contains("ell") || !j.contains("exponents"))
        throw InputError("scheme: expected {\"ell\", \"exponents\"}");
    MonomialScheme s;
    s.ell = j.at("ell").get<int>();
    for (const auto& row : j.at("exponents")) {
        std::vector<int> r;
        for (const auto& e : row) r.push_back(e.get<int>());
        s.exponents.push_back(std::move(r));
    }
    s.dim = (int)s.exponents.size();
    return s;
}

Json covector_to_json(const CovectorPoint& p) {
    Json blocks = Json::object();
    for (size_t k = 1; k < p.blocks.size(); ++k)
        blocks[std::to_string(k)] = vec_to_json(p.blocks[k]);
    return Json{{"blocks", blocks}};
}

CovectorPoint covector_from_json(const Json& j, const StalkContext& cx) {
    if (!j.contains("blocks")) throw InputError("covector: expected {\"blocks\": {...}}");
    CovectorPoint p;
    p.blocks.resize(cx.family.ell() + 1);
    for (auto it = j.at("blocks").begin(); it != j.at("blocks").end(); ++it) {
        int k = std::stoi(it.key());
        if (k < 1 || k > cx.family.ell()) throw InputError("covector: block index out of range");
        p.blocks[k] = vec_from_json(it.value());
    }
    for (int k = 1; k <= cx.family.ell(); ++k)
        if (p.blocks[k].empty()) p.blocks[k].assign(cx.derived.hatI[k].size(), Rat(0));
    check_covector(cx, p);
    return p;
}

Json split_to_json(const RealComplexSplit& s) {
    return Json{{"I_R", set_to_json(s.I_R)}, {"I_C", set_to_json(s.I_C)}};
}

RealComplexSplit split_from_json(const Json& j) {
    RealComplexSplit s;
    if (j.contains("I_R")) s.I_R = set_from_json(j.at("I_R"));
    if (j.contains("I_C")) s.I_C = set_from_json(j.at("I_C"));
    return s;
}

Json conic_to_json(const ConicInput& c) {
    Json fibers = Json::array();
    for (int i : c.fiber_coords) fibers.push_back(i);
    Json out = polyset_to_json(c.set);
    out["fiber_coords"] = fibers;
    return out;
}

ConicInput conic_from_json(const Json& j) {
    ConicInput c;
    c.set = polyset_from_json(j);
    if (j.contains("fiber_coords")) {
        for (const auto& i : j.at("fiber_coords")) c.fiber_coords.push_back(i.get<int>());
    } else {
        for (int i = c.set.dim / 2; i < c.set.dim; ++i) c.fiber_coords.push_back(i);
    }
    return c;
}

Json membership_cert_to_json(const MembershipCertificate& c) {
    Json pert = Json::array();
    for (const auto& [e, v] : c.perturbation)
        pert.push_back(Json{{"exponent", e}, {"direction", vec_to_json(v)}});
    Json weights = Json::array();
    for (long w : c.weights) weights.push_back(w);
    return Json{{"weights", weights},
                {"perturbation", pert},
                {"tau0", rat_to_json(c.tau0)},
                {"member_index", c.member_index}};
}

MembershipCertificate membership_cert_from_json(const Json& j) {
    MembershipCertificate c;
    for (const auto& w : j.at("weights")) c.weights.push_back(w.get<long>());
    for (const auto& p : j.at("perturbation"))
        c.perturbation.emplace_back(p.at("exponent").get<long>(),
                                    vec_from_json(p.at("direction")));
    c.tau0 = rat_from_json(j.at("tau0"));
    c.member_index = j.at("member_index").get<int>();
    return c;
}

Json separation_cert_to_json(const SeparationCertificate& c) {
    Json strict = Json::array();
    for (int r : c.strict_rows) strict.push_back(r);
    return Json{{"cone", poly_to_json(c.cone)},
                {"strict_rows", strict},
                {"anchor", vec_to_json(c.anchor)},
                {"radius", rat_to_json(c.radius)}};
}

SeparationCertificate separation_cert_from_json(const Json& j) {
    SeparationCertificate c;
    c.cone = poly_from_json(j.at("cone"));
    for (const auto& r : j.at("strict_rows")) c.strict_rows.push_back(r.get<int>());
    c.anchor = vec_from_json(j.at("anchor"));
    c.radius = rat_from_json(j.at("radius"));
    return c;
}

Json table_to_json(const CohomologyTable& t) {
    Json ranks = Json::object();
    for (const auto& [k, r] : t.ranks) ranks[std::to_string(k)] = r;
    return Json{{"ranks", ranks}, {"stabilized", t.stabilized}, {"m_index", t.m_index}};
}

Json degree_report_to_json(const DegreeReport& r) {
    const char* mode = r.mode == DegreeMode::REAL      ? "REAL"
                       : r.mode == DegreeMode::COMPLEX ? "COMPLEX"
                                                       : "REAL_COMPLEX";
    return Json{{"J_star", set_to_json(r.J_star)},
                {"hatJ_star", set_to_json(r.hatJ_star)},
                {"I_star", set_to_json(r.I_star)},
                {"degree", r.degree},
                {"mode", mode}};
}

Json validation_to_json(const ValidationReport& r) {
    Json v = Json::array();
    for (const auto& x : r.violations) {
        Json item{{"condition", x.condition}, {"member", x.j}, {"reason", x.reason}};
        if (x.k) item["other"] = x.k;
        v.push_back(item);
    }
    return Json{{"ok", r.ok}, {"violations", v}};
}

}  // namespace mnc

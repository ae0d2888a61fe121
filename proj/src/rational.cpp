#include "mnc/rational.hpp"

#include <sstream>

namespace mnc {

std::optional<Rat> parse_rat(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Rat r(s);
            r.canonicalize();
            return r;
        }
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (num.empty() || den.empty()) return std::nullopt;
        Rat r(num + "/" + den);
        if (r.get_den() == 0) return std::nullopt;
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::string format_rat(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string format_vec(const QVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << format_rat(v[i]);
    }
    os << ")";
    return os.str();
}

Rat dot(const QVec& a, const QVec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

QVec add(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

QVec sub(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

QVec scale(const QVec& a, const Rat& s) {
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

QVec neg(const QVec& a) { return scale(a, -1); }

QVec primitive(const QVec& v) {
    Int lcm_den = 1;
    for (const auto& x : v) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den().get_mpz_t());
    Int g = 0;
    std::vector<Int> ints(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        ints[i] = v[i].get_num() * (lcm_den / v[i].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
    }
    QVec r(v.size(), Rat(0));
    if (g == 0) return r;
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(ints[i] / g);
    return r;
}

QVec primitive_signed(const QVec& v) {
    QVec r = primitive(v);
    for (const auto& x : r) {
        if (x > 0) return r;
        if (x < 0) return neg(r);
    }
    return r;
}

int lex_cmp(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return -1;
        if (a[i] > b[i]) return 1;
    }
    return 0;
}

}  // namespace mnc

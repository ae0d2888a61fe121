#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace mnc {

using Rat = mpq_class;
using Int = mpz_class;
using QVec = std::vector<Rat>;

inline Rat rat_of(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p/q", "p", or a plain integer token. Denominator must be nonzero.
std::optional<Rat> parse_rat(const std::string& s);

// "p/q" with q > 0, or "p" when the value is integral.
std::string format_rat(const Rat& r);

std::string format_vec(const QVec& v);

inline bool is_zero_vec(const QVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

Rat dot(const QVec& a, const QVec& b);
QVec add(const QVec& a, const QVec& b);
QVec sub(const QVec& a, const QVec& b);
QVec scale(const QVec& a, const Rat& s);
QVec neg(const QVec& a);

// Clears denominators and divides by the content; zero vector stays zero.
QVec primitive(const QVec& v);

// primitive() and additionally flips sign so the first nonzero entry is positive.
QVec primitive_signed(const QVec& v);

// Lexicographic comparison, used for canonical sort orders.
int lex_cmp(const QVec& a, const QVec& b);

}  // namespace mnc

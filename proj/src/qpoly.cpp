#include "segredefect/qpoly.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace segredefect {

namespace {

long long checked(__int128 v, const char* what) {
    if (v > __int128(INT64_MAX) || v < __int128(INT64_MIN))
        throw Error(std::string("rational overflow in ") + what);
    return (long long)v;
}

} // namespace

Rational::Rational(long long n, long long d) {
    if (d == 0) throw Error("zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num = n;
    den = d;
}

Rational Rational::operator-() const { return Rational(-num, den); }

Rational Rational::operator+(const Rational& o) const {
    long long g = std::gcd(den, o.den);
    __int128 n = (__int128)num * (o.den / g) + (__int128)o.num * (den / g);
    __int128 d = (__int128)den * (o.den / g);
    return Rational(checked(n, "add"), checked(d, "add"));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    long long g1 = std::gcd(num < 0 ? -num : num, o.den);
    long long g2 = std::gcd(o.num < 0 ? -o.num : o.num, den);
    __int128 n = (__int128)(num / g1) * (o.num / g2);
    __int128 d = (__int128)(den / g2) * (o.den / g1);
    return Rational(checked(n, "mul"), checked(d, "mul"));
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

BivarPoly BivarPoly::constant(Rational c) {
    BivarPoly p;
    if (!c.is_zero()) p.terms[{0, 0}] = c;
    return p;
}

BivarPoly BivarPoly::var_m() {
    BivarPoly p;
    p.terms[{1, 0}] = Rational(1);
    return p;
}

BivarPoly BivarPoly::var_n() {
    BivarPoly p;
    p.terms[{0, 1}] = Rational(1);
    return p;
}

bool BivarPoly::is_constant() const {
    return terms.empty() || (terms.size() == 1 && terms.begin()->first == std::pair{0, 0});
}

BivarPoly BivarPoly::operator+(const BivarPoly& o) const {
    BivarPoly r = *this;
    for (const auto& [e, c] : o.terms) {
        auto it = r.terms.find(e);
        if (it == r.terms.end()) {
            r.terms[e] = c;
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) r.terms.erase(it);
        }
    }
    return r;
}

BivarPoly BivarPoly::operator-(const BivarPoly& o) const { return *this + o.scaled(Rational(-1)); }

BivarPoly BivarPoly::operator*(const BivarPoly& o) const {
    BivarPoly r;
    for (const auto& [e1, c1] : this->terms)
        for (const auto& [e2, c2] : o.terms) {
            auto e = std::pair{e1.first + e2.first, e1.second + e2.second};
            auto it = r.terms.find(e);
            Rational add = c1 * c2;
            if (it == r.terms.end()) {
                if (!add.is_zero()) r.terms[e] = add;
            } else {
                it->second = it->second + add;
                if (it->second.is_zero()) r.terms.erase(it);
            }
        }
    return r;
}

BivarPoly BivarPoly::scaled(Rational c) const {
    BivarPoly r;
    if (c.is_zero()) return r;
    for (const auto& [e, coef] : terms) r.terms[e] = coef * c;
    return r;
}

Rational BivarPoly::eval(long long m, long long n) const {
    Rational acc(0);
    for (const auto& [e, c] : terms) {
        __int128 pw = 1;
        for (int i = 0; i < e.first; ++i) pw *= m;
        for (int i = 0; i < e.second; ++i) pw *= n;
        acc = acc + c * Rational(checked(pw, "eval"));
    }
    return acc;
}

BivarPoly BivarPoly::substitute(const BivarPoly& M, const BivarPoly& N) const {
    BivarPoly r;
    for (const auto& [e, c] : terms) {
        BivarPoly t = BivarPoly::constant(c);
        for (int i = 0; i < e.first; ++i) t = t * M;
        for (int i = 0; i < e.second; ++i) t = t * N;
        r = r + t;
    }
    return r;
}

std::string BivarPoly::str() const {
    if (terms.empty()) return "0";
    // descending by total degree, then by m-degree
    std::vector<std::pair<std::pair<int, int>, Rational>> ts(terms.begin(), terms.end());
    std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        int ta = a.first.first + a.first.second, tb = b.first.first + b.first.second;
        if (ta != tb) return ta > tb;
        return a.first.first > b.first.first;
    });
    std::string out;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i) out += " + ";
        out += ts[i].second.str();
        if (ts[i].first.first > 0) {
            out += " * m";
            if (ts[i].first.first > 1) out += "^" + std::to_string(ts[i].first.first);
        }
        if (ts[i].first.second > 0) {
            out += " * n";
            if (ts[i].first.second > 1) out += "^" + std::to_string(ts[i].first.second);
        }
    }
    return out;
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    long line;
    void skip_ws() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) { throw ParseError(what + " in \"" + s + "\"", line); }
    long long integer() {
        skip_ws();
        std::size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        std::size_t digits = i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
        if (i == digits) fail("expected integer");
        return std::stoll(s.substr(start, i - start));
    }
};

} // namespace

BivarPoly BivarPoly::parse(const std::string& text, long line_no) {
    Cursor c{text, 0, line_no};
    BivarPoly poly;
    bool first = true;
    while (true) {
        c.skip_ws();
        if (c.i >= c.s.size()) {
            if (first) c.fail("empty polynomial");
            break;
        }
        if (!first && !c.eat('+')) c.fail("expected '+' between terms");

        Rational coef(1);
        bool have_coef = false;
        c.skip_ws();
        if (c.i < c.s.size() && (std::isdigit((unsigned char)c.s[c.i]) || c.s[c.i] == '-' || c.s[c.i] == '+')) {
            long long num = c.integer();
            long long den = 1;
            if (c.eat('/')) den = c.integer();
            coef = Rational(num, den);
            have_coef = true;
        }
        int em = 0, en = 0;
        bool have_var = false;
        while (true) {
            if (have_coef || have_var) {
                std::size_t save = c.i;
                if (!c.eat('*')) {
                    c.i = save;
                    break;
                }
            }
            c.skip_ws();
            if (c.i < c.s.size() && (c.s[c.i] == 'm' || c.s[c.i] == 'n')) {
                char v = c.s[c.i++];
                int e = 1;
                if (c.eat('^')) e = int(c.integer());
                if (e < 0) c.fail("negative exponent");
                (v == 'm' ? em : en) += e;
                have_var = true;
            } else if (have_coef || have_var) {
                c.fail("expected variable factor after '*'");
            } else {
                c.fail("expected term");
            }
        }
        if (!have_coef && !have_var) c.fail("expected term");
        poly = poly + BivarPoly::constant(coef) * [&] {
            BivarPoly t = BivarPoly::constant(Rational(1));
            for (int i = 0; i < em; ++i) t = t * BivarPoly::var_m();
            for (int i = 0; i < en; ++i) t = t * BivarPoly::var_n();
            return t;
        }();
        first = false;
    }
    return poly;
}

QuasiPolynomial QuasiPolynomial::zero() { return constant(0); }

QuasiPolynomial QuasiPolynomial::constant(long long c) {
    return poly(BivarPoly::constant(Rational(c)));
}

QuasiPolynomial QuasiPolynomial::poly(BivarPoly p) {
    QuasiPolynomial q;
    q.modulus = 1;
    q.cases[{0, 0}] = std::move(p);
    return q;
}

bool QuasiPolynomial::covers(long long m, long long n) const {
    auto rm = int(((m % modulus) + modulus) % modulus);
    auto rn = int(((n % modulus) + modulus) % modulus);
    return cases.count({rm, rn}) != 0;
}

const BivarPoly& QuasiPolynomial::case_for(long long m, long long n) const {
    auto rm = int(((m % modulus) + modulus) % modulus);
    auto rn = int(((n % modulus) + modulus) % modulus);
    auto it = cases.find({rm, rn});
    if (it == cases.end())
        throw MissingCase("no case for residues (" + std::to_string(rm) + ", " +
                          std::to_string(rn) + ") mod " + std::to_string(modulus));
    return it->second;
}

long long QuasiPolynomial::eval(long long m, long long n) const {
    Rational v = case_for(m, n).eval(m, n);
    if (!v.is_integer())
        throw NonInteger("value " + v.str() + " at (" + std::to_string(m) + ", " +
                         std::to_string(n) + ") is not an integer");
    return v.num;
}

bool QuasiPolynomial::is_identically_zero() const {
    for (const auto& [r, p] : cases)
        if (!p.is_zero()) return false;
    return true;
}

QuasiPolynomial QuasiPolynomial::lifted(int D) const {
    if (D == modulus) return *this;
    if (D % modulus != 0) throw Error("lift target must be a multiple of the modulus");
    QuasiPolynomial out;
    out.modulus = D;
    for (int rm = 0; rm < D; ++rm)
        for (int rn = 0; rn < D; ++rn) {
            auto it = cases.find({rm % modulus, rn % modulus});
            if (it != cases.end()) out.cases[{rm, rn}] = it->second;
        }
    return out;
}

QuasiPolynomial QuasiPolynomial::simplified() const {
    for (int d = 1; d < modulus; ++d) {
        if (modulus % d != 0) continue;
        // all classes congruent mod d must agree (same presence, same poly)
        bool ok = true;
        std::map<std::pair<int, int>, const BivarPoly*> rep;
        for (int rm = 0; ok && rm < modulus; ++rm)
            for (int rn = 0; ok && rn < modulus; ++rn) {
                auto it = cases.find({rm, rn});
                auto key = std::pair{rm % d, rn % d};
                auto rit = rep.find(key);
                if (rit == rep.end()) {
                    rep[key] = it == cases.end() ? nullptr : &it->second;
                } else if ((rit->second == nullptr) != (it == cases.end()) ||
                           (rit->second && !(*rit->second == it->second))) {
                    ok = false;
                }
            }
        if (ok) {
            QuasiPolynomial out;
            out.modulus = d;
            for (const auto& [key, p] : rep)
                if (p) out.cases[key] = *p;
            return out;
        }
    }
    return *this;
}

long long lcm_int(long long a, long long b) { return std::lcm(a, b); }

QuasiPolynomial QuasiPolynomial::operator+(const QuasiPolynomial& o) const {
    int D = int(lcm_int(modulus, o.modulus));
    QuasiPolynomial a = lifted(D), b = o.lifted(D), out;
    out.modulus = D;
    for (const auto& [r, p] : a.cases) {
        auto it = b.cases.find(r);
        if (it != b.cases.end()) out.cases[r] = p + it->second;
    }
    return out.simplified();
}

QuasiPolynomial QuasiPolynomial::operator-(const QuasiPolynomial& o) const {
    int D = int(lcm_int(modulus, o.modulus));
    QuasiPolynomial a = lifted(D), b = o.lifted(D), out;
    out.modulus = D;
    for (const auto& [r, p] : a.cases) {
        auto it = b.cases.find(r);
        if (it != b.cases.end()) out.cases[r] = p - it->second;
    }
    return out.simplified();
}

namespace {

// Residue of P(m,n) mod d on the class m = rm + D s, n = rn + D t, provided
// it is constant there: P(rm + D s, rn + D t) - P(rm, rn) must have integer
// coefficients divisible by d, and P(rm, rn) must be an integer.
bool class_residue(const BivarPoly& P, int rm, int rn, int D, int d, int& out) {
    BivarPoly shifted = P.substitute(
        BivarPoly::constant(Rational(rm)) + BivarPoly::var_m().scaled(Rational(D)),
        BivarPoly::constant(Rational(rn)) + BivarPoly::var_n().scaled(Rational(D)));
    Rational c0 = shifted.eval(0, 0);
    if (!c0.is_integer()) return false;
    for (const auto& [e, c] : shifted.terms) {
        if (e == std::pair{0, 0}) continue;
        if (!c.is_integer() || c.num % d != 0) return false;
    }
    out = int(((c0.num % d) + d) % d);
    return true;
}

} // namespace

QuasiPolynomial compose(const QuasiPolynomial& f, const QuasiPolynomial& M,
                        const QuasiPolynomial& N) {
    constexpr int kModulusCap = 64;
    int D = int(lcm_int(lcm_int(f.modulus, M.modulus), N.modulus));
    for (; D <= kModulusCap; D *= 2) {
        QuasiPolynomial out;
        out.modulus = D;
        bool ok = true;
        for (int rm = 0; ok && rm < D; ++rm)
            for (int rn = 0; ok && rn < D; ++rn) {
                auto mit = M.cases.find({rm % M.modulus, rn % M.modulus});
                auto nit = N.cases.find({rm % N.modulus, rn % N.modulus});
                if (mit == M.cases.end() || nit == N.cases.end()) continue;
                int resM, resN;
                if (!class_residue(mit->second, rm, rn, D, f.modulus, resM) ||
                    !class_residue(nit->second, rm, rn, D, f.modulus, resN)) {
                    ok = false;
                    break;
                }
                auto fit = f.cases.find({resM, resN});
                if (fit == f.cases.end()) continue;
                out.cases[{rm, rn}] = fit->second.substitute(mit->second, nit->second);
            }
        if (ok) return out.simplified();
    }
    throw MissingCase("composition does not stabilize below modulus 64");
}

} // namespace segredefect

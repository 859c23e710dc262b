#include "segredefect/configs.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace segredefect {

namespace {

std::string subset_str(SubsetIndex I) {
    std::string s = "{";
    bool first = true;
    for (int t = 1; t <= kMaxSubvarieties; ++t)
        if (I & (SubsetIndex(1) << (t - 1))) {
            if (!first) s += ",";
            s += std::to_string(t);
            first = false;
        }
    return s + "}";
}

} // namespace

std::vector<ShapeViolation> validate_shape(const ConfigShape& shape) {
    std::vector<ShapeViolation> out;
    if (shape.k < 0 || shape.k > kMaxSubvarieties || shape.m < 0 || shape.n < 0) {
        out.push_back({ShapeCondition::ArraySize, 0, "k must be in [0,16] and m,n nonnegative"});
        return out;
    }
    const std::size_t nsub = shape.subsets();
    if (shape.tilde_u.size() != nsub || shape.tilde_v.size() != nsub ||
        shape.points.size() != nsub) {
        out.push_back({ShapeCondition::ArraySize, 0, "parameter arrays must have 2^k entries"});
        return out;
    }
    for (SubsetIndex I = 0; I < nsub; ++I) {
        if (shape.tilde_u[I] < 0 || shape.tilde_v[I] < 0 || shape.points[I] < 0)
            out.push_back({ShapeCondition::NonNegative, I,
                           "negative parameter at I=" + subset_str(I)});
    }
    if (!out.empty()) return out;

    long long su = std::accumulate(shape.tilde_u.begin(), shape.tilde_u.end(), 0ll);
    long long sv = std::accumulate(shape.tilde_v.begin(), shape.tilde_v.end(), 0ll);
    if (su != shape.m + 1)
        out.push_back({ShapeCondition::SumU, 0,
                       "sum of tilde_u is " + std::to_string(su) + ", expected m+1 = " +
                           std::to_string(shape.m + 1)});
    if (sv != shape.n + 1)
        out.push_back({ShapeCondition::SumV, 0,
                       "sum of tilde_v is " + std::to_string(sv) + ", expected n+1 = " +
                           std::to_string(shape.n + 1)});

    for (int t = 1; t <= shape.k; ++t) {
        const SubsetIndex bit = SubsetIndex(1) << (t - 1);
        long long du = 0, dv = 0;
        for (SubsetIndex J = 0; J < nsub; ++J)
            if (!(J & bit)) {
                du += shape.tilde_u[J];
                dv += shape.tilde_v[J];
            }
        if (du <= 0)
            out.push_back({ShapeCondition::NonEmptyU, bit,
                           "subvariety " + std::to_string(t) + " has empty x-factor"});
        if (dv <= 0)
            out.push_back({ShapeCondition::NonEmptyV, bit,
                           "subvariety " + std::to_string(t) + " has empty y-factor"});
    }

    for (SubsetIndex I = 0; I < nsub; ++I) {
        if (shape.points[I] <= 0) continue;
        long long du = 0, dv = 0;
        for (SubsetIndex J = 0; J < nsub; ++J)
            if (!(J & I)) {
                du += shape.tilde_u[J];
                dv += shape.tilde_v[J];
            }
        if (du <= 0)
            out.push_back({ShapeCondition::PointSupportU, I,
                           "points at I=" + subset_str(I) + " but the intersection has empty x-factor"});
        if (dv <= 0)
            out.push_back({ShapeCondition::PointSupportV, I,
                           "points at I=" + subset_str(I) + " but the intersection has empty y-factor"});
    }
    return out;
}

void require_valid(const ConfigShape& shape) {
    auto v = validate_shape(shape);
    if (!v.empty()) throw InvalidShape("invalid configuration: " + v.front().message);
}

DerivedCodims derive_codims(const ConfigShape& shape) {
    const std::size_t nsub = shape.subsets();
    DerivedCodims d;
    d.u.assign(nsub, 0);
    d.v.assign(nsub, 0);
    for (SubsetIndex I = 0; I < nsub; ++I)
        for (SubsetIndex J = I;; J = (J + 1) | I) { // supersets of I
            if (J < nsub) {
                d.u[I] += shape.tilde_u[J];
                d.v[I] += shape.tilde_v[J];
            }
            if (J >= nsub - 1) break;
        }
    return d;
}

VariableAssignment assign_variables(const ConfigShape& shape) {
    VariableAssignment a;
    a.m = shape.m;
    a.n = shape.n;
    a.k = shape.k;
    a.xlabel.reserve(shape.m + 1);
    a.ylabel.reserve(shape.n + 1);
    for (SubsetIndex I = 0; I < shape.subsets(); ++I) {
        for (long long c = 0; c < shape.tilde_u[I]; ++c) a.xlabel.push_back(I);
        for (long long c = 0; c < shape.tilde_v[I]; ++c) a.ylabel.push_back(I);
    }
    if (a.xlabel.size() != std::size_t(shape.m + 1) ||
        a.ylabel.size() != std::size_t(shape.n + 1))
        throw InvalidShape("variable blocks do not fill the coordinate lists");
    return a;
}

namespace {

template <class F>
void for_each_basis_monomial(const VariableAssignment& a, F&& f) {
    const SubsetIndex full = a.k == 0 ? 0 : (SubsetIndex(1) << a.k) - 1;
    for (int i = 0; i <= a.m; ++i) {
        const SubsetIndex xi = a.xlabel[i];
        for (int j1 = 0; j1 <= a.n; ++j1) {
            const SubsetIndex xy1 = xi | a.ylabel[j1];
            for (int j2 = j1; j2 <= a.n; ++j2)
                if ((xy1 | a.ylabel[j2]) == full) f(i, j1, j2);
        }
    }
}

} // namespace

MonomialBasis ideal_basis(const VariableAssignment& a) {
    MonomialBasis basis;
    for_each_basis_monomial(a, [&](int i, int j1, int j2) { basis.push_back({i, j1, j2}); });
    return basis;
}

std::size_t ideal_dim(const VariableAssignment& a) {
    std::size_t count = 0;
    for_each_basis_monomial(a, [&](int, int, int) { ++count; });
    return count;
}

std::vector<int> vanishing_vars(const VariableAssignment& a, SubsetIndex I) {
    std::vector<int> vars;
    for (int i = 0; i <= a.m; ++i)
        if ((a.xlabel[i] & I) == I) vars.push_back(i);
    for (int j = 0; j <= a.n; ++j)
        if ((a.ylabel[j] & I) == I) vars.push_back(a.m + 1 + j);
    return vars;
}

std::vector<int> vanishing_vars(const ConfigShape& shape, SubsetIndex I) {
    return vanishing_vars(assign_variables(shape), I);
}

long long virtual_dim(const ConfigShape& shape) {
    const auto d = derive_codims(shape);
    long long dim = (long long)ideal_dim(assign_variables(shape));
    const long long cap = (long long)shape.m + shape.n + 1;
    for (SubsetIndex I = 0; I < shape.subsets(); ++I)
        dim -= shape.points[I] * std::min(d.u[I] + d.v[I], cap);
    return dim;
}

Abundancy abundancy(const ConfigShape& shape) {
    long long v = virtual_dim(shape);
    if (v == 0) return Abundancy::Equi;
    return v > 0 ? Abundancy::Sub : Abundancy::Super;
}

const char* abundancy_name(Abundancy a) {
    switch (a) {
        case Abundancy::Sub: return "SUB";
        case Abundancy::Super: return "SUPER";
        case Abundancy::Equi: return "EQUI";
    }
    return "?";
}

ConfigShape erase_irrelevant(const ConfigShape& shape) {
    const auto d = derive_codims(shape);
    ConfigShape out = shape;
    for (SubsetIndex I = 0; I < shape.subsets(); ++I)
        if (d.u[I] + d.v[I] == 0) out.points[I] = 0;
    return out;
}

ConfigShape restrict_to(const ConfigShape& shape, int t) {
    if (t < 1 || t > shape.k) throw Error("no subvariety " + std::to_string(t));
    const SubsetIndex bit = SubsetIndex(1) << (t - 1);
    const std::size_t nsub = shape.subsets();

    for (int s = 1; s <= shape.k; ++s) {
        if (s == t) continue;
        const SubsetIndex pair = bit | (SubsetIndex(1) << (s - 1));
        long long du = 0, dv = 0;
        for (SubsetIndex J = 0; J < nsub; ++J)
            if (!(J & pair)) {
                du += shape.tilde_u[J];
                dv += shape.tilde_v[J];
            }
        if (du <= 0 || dv <= 0)
            throw EmptyIntersection("subvarieties " + std::to_string(t) + " and " +
                                    std::to_string(s) + " do not meet");
    }

    ConfigShape out;
    out.k = shape.k - 1;
    long long mu = 0, nv = 0;
    for (SubsetIndex J = 0; J < nsub; ++J)
        if (!(J & bit)) {
            mu += shape.tilde_u[J];
            nv += shape.tilde_v[J];
        }
    out.m = int(mu - 1);
    out.n = int(nv - 1);
    out.tilde_u.assign(out.subsets(), 0);
    out.tilde_v.assign(out.subsets(), 0);
    out.points.assign(out.subsets(), 0);

    const SubsetIndex low = bit - 1; // bits below t-1
    for (SubsetIndex I = 0; I < out.subsets(); ++I) {
        const SubsetIndex old = (I & low) | ((I & ~low) << 1); // reinsert a gap at t-1
        out.tilde_u[I] = shape.tilde_u[old];
        out.tilde_v[I] = shape.tilde_v[old];
        out.points[I] = shape.points[old | bit];
    }
    return out;
}

Parity classify_parity(long long m, long long n) {
    return (m % 2 == 0 && n % 2 != 0) ? Parity::Ugly : Parity::Nice;
}

long long binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (long long i = n; i > n - k; --i) r *= i;
    for (long long i = 2; i <= k; ++i) r /= i;
    return r;
}

SecantBounds secant_bounds(long long m, long long n) {
    SecantBounds b{};
    long long num = (m + 1) * (n - m + 2);
    b.ups = (num >= 0 ? num / 2 : -((-num + 1) / 2)) + 1;
    long long total = (m + 1) * binomial(n + 2, 2);
    long long conds = n + m + 1;
    b.upr = (total + conds - 1) / conds;
    b.remainder = total - conds * b.upr;
    return b;
}

ConfigShape canonical_form(const ConfigShape& shape) {
    if (shape.k <= 1) return shape;
    std::vector<int> perm(shape.k);
    std::iota(perm.begin(), perm.end(), 0);

    ConfigShape best = shape;
    bool have = false;
    const std::size_t nsub = shape.subsets();
    ConfigShape cand = shape;
    do {
        for (SubsetIndex I = 0; I < nsub; ++I) {
            SubsetIndex J = 0;
            for (int b = 0; b < shape.k; ++b)
                if (I & (SubsetIndex(1) << b)) J |= SubsetIndex(1) << perm[b];
            cand.tilde_u[J] = shape.tilde_u[I];
            cand.tilde_v[J] = shape.tilde_v[I];
            cand.points[J] = shape.points[I];
        }
        auto tup = [](const ConfigShape& s) { return std::tie(s.tilde_u, s.tilde_v, s.points); };
        if (!have || tup(cand) < tup(best)) {
            best = cand;
            have = true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

bool equal_canonical(const ConfigShape& a, const ConfigShape& b) {
    if (a.m != b.m || a.n != b.n || a.k != b.k) return false;
    return canonical_form(a) == canonical_form(b);
}

std::string serialize_shape(const ConfigShape& shape) {
    std::ostringstream os;
    os << "config k=" << shape.k << " m=" << shape.m << " n=" << shape.n << "\n";
    for (SubsetIndex I = 0; I < shape.subsets(); ++I)
        if (shape.tilde_u[I] || shape.tilde_v[I] || shape.points[I])
            os << "I=" << I << " u=" << shape.tilde_u[I] << " v=" << shape.tilde_v[I]
               << " p=" << shape.points[I] << "\n";
    return os.str();
}

namespace {

bool read_kv(std::istringstream& is, const std::string& key, long long& out) {
    std::string tok;
    if (!(is >> tok)) return false;
    if (tok.rfind(key + "=", 0) != 0) return false;
    try {
        std::size_t used = 0;
        out = std::stoll(tok.substr(key.size() + 1), &used);
        return used == tok.size() - key.size() - 1;
    } catch (...) {
        return false;
    }
}

} // namespace

ConfigShape parse_shape(std::istream& in, long& line_no) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("expected `config` header", line_no);
    ++line_no;
    std::istringstream hs(line);
    std::string word;
    hs >> word;
    long long k, m, n;
    if (word != "config" || !read_kv(hs, "k", k) || !read_kv(hs, "m", m) || !read_kv(hs, "n", n))
        throw ParseError("malformed config header: " + line, line_no - 1);
    if (k < 0 || k > kMaxSubvarieties || m < 0 || n < 0)
        throw ParseError("config header out of range", line_no - 1);

    ConfigShape shape;
    shape.k = int(k);
    shape.m = int(m);
    shape.n = int(n);
    shape.tilde_u.assign(shape.subsets(), 0);
    shape.tilde_v.assign(shape.subsets(), 0);
    shape.points.assign(shape.subsets(), 0);

    while (in.peek() == 'I') {
        if (!std::getline(in, line)) break;
        ++line_no;
        std::istringstream is(line);
        long long I, u, v, p;
        if (!read_kv(is, "I", I) || !read_kv(is, "u", u) || !read_kv(is, "v", v) ||
            !read_kv(is, "p", p))
            throw ParseError("malformed subset line: " + line, line_no - 1);
        if (I < 0 || I >= (long long)shape.subsets())
            throw ParseError("subset index out of range: " + line, line_no - 1);
        shape.tilde_u[I] = u;
        shape.tilde_v[I] = v;
        shape.points[I] = p;
    }
    return shape;
}

ConfigShape parse_shape(const std::string& text) {
    std::istringstream is(text);
    long line_no = 1;
    return parse_shape(is, line_no);
}

} // namespace segredefect

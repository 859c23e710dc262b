#include "segredefect/families.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace segredefect {

const char* parity_class_name(ParityClass p) {
    switch (p) {
        case ParityClass::All: return "all";
        case ParityClass::Nice: return "nice";
        case ParityClass::Ugly: return "ugly";
    }
    return "?";
}

namespace {

bool parity_matches(ParityClass p, long long m, long long n) {
    switch (p) {
        case ParityClass::All: return true;
        case ParityClass::Nice: return classify_parity(m, n) == Parity::Nice;
        case ParityClass::Ugly: return classify_parity(m, n) == Parity::Ugly;
    }
    return false;
}

} // namespace

bool DomainPredicate::contains(long long m, long long n) const {
    if (m < m_min || n < 0) return false;
    if (!parity_matches(parity, m, n)) return false;
    for (const auto& b : n_lower_bounds)
        if (n < b.eval(m, 0)) return false;
    return true;
}

std::optional<long long> DomainPredicate::n_floor(long long m) const {
    if (m < m_min) return std::nullopt;
    long long lo = 0;
    for (const auto& b : n_lower_bounds) lo = std::max(lo, b.eval(m, 0));
    for (long long n = lo; n < lo + 2; ++n)
        if (parity_matches(parity, m, n)) return n;
    return std::nullopt;
}

long long qp_eval(const QuasiPolynomial& q, long long m, long long n) { return q.eval(m, n); }

ConfigShape family_eval(const FamilySpec& spec, long long m, long long n) {
    if (!spec.domain.contains(m, n))
        throw OutOfDomain(spec.name + " is not defined at (" + std::to_string(m) + ", " +
                          std::to_string(n) + ")");
    ConfigShape shape;
    shape.k = spec.k;
    shape.m = int(m);
    shape.n = int(n);
    const std::size_t nsub = shape.subsets();
    shape.tilde_u.resize(nsub);
    shape.tilde_v.resize(nsub);
    shape.points.resize(nsub);
    for (SubsetIndex I = 0; I < nsub; ++I) {
        shape.tilde_u[I] = spec.tilde_u[I].eval(m, n);
        shape.tilde_v[I] = spec.tilde_v[I].eval(m, n);
        shape.points[I] = spec.points[I].eval(m, n);
        if (shape.tilde_u[I] < 0 || shape.tilde_v[I] < 0 || shape.points[I] < 0)
            throw NegativeParameter(spec.name + " has a negative parameter at I=" +
                                    std::to_string(I) + ", (m,n)=(" + std::to_string(m) + ", " +
                                    std::to_string(n) + ")");
    }
    require_valid(shape);
    return shape;
}

namespace {

// modest grid of in-domain points for probing symbolic claims
std::vector<std::pair<long long, long long>> probe_points(const DomainPredicate& dom,
                                                          int m_span = 12, int n_span = 12) {
    std::vector<std::pair<long long, long long>> pts;
    for (long long m = dom.m_min; m <= dom.m_min + m_span; ++m) {
        auto base = dom.n_floor(m);
        if (!base) continue;
        for (long long n = *base; n <= *base + n_span; ++n)
            if (dom.contains(m, n)) pts.push_back({m, n});
    }
    return pts;
}

} // namespace

FamilySpec build_inductant(const FamilySpec& parent, const InductantStep& step,
                           const DomainPredicate& domain, const std::string& name) {
    if (parent.k + 1 > kMaxSubvarieties)
        throw Error("inductant would exceed " + std::to_string(kMaxSubvarieties) +
                    " subvarieties");

    FamilySpec child;
    child.name = name.empty() ? parent.name + "'" : name;
    child.k = parent.k + 1;
    child.domain = domain;
    const std::size_t old_nsub = std::size_t(1) << parent.k;
    const std::size_t nsub = old_nsub << 1;
    const SubsetIndex newbit = SubsetIndex(old_nsub);
    child.tilde_u.resize(nsub);
    child.tilde_v.resize(nsub);
    child.points.resize(nsub);

    for (SubsetIndex I = 0; I < old_nsub; ++I) {
        QuasiPolynomial u_at = compose(parent.tilde_u[I], step.M, step.N);
        QuasiPolynomial v_at = compose(parent.tilde_v[I], step.M, step.N);
        QuasiPolynomial p_at = compose(parent.points[I], step.M, step.N);
        child.tilde_u[I] = u_at;
        child.tilde_v[I] = v_at;
        child.tilde_u[I | newbit] = parent.tilde_u[I] - u_at;
        child.tilde_v[I | newbit] = parent.tilde_v[I] - v_at;
        child.points[I] = parent.points[I] - p_at;
        child.points[I | newbit] = p_at;
    }

    // erase, per residue class, points on intersections whose equation count
    // is identically zero there
    for (SubsetIndex I = 0; I < old_nsub; ++I) {
        const SubsetIndex J = I | newbit;
        QuasiPolynomial uv = QuasiPolynomial::zero();
        for (SubsetIndex S = J; S < nsub; ++S)
            if ((S & J) == J) uv = uv + (child.tilde_u[S] + child.tilde_v[S]);
        int D = int(lcm_int(uv.modulus, child.points[J].modulus));
        QuasiPolynomial uvl = uv.lifted(D), pl = child.points[J].lifted(D);
        for (auto& [r, poly] : pl.cases) {
            auto uit = uvl.cases.find(r);
            if (uit != uvl.cases.end() && uit->second.is_zero()) poly = BivarPoly{};
        }
        child.points[J] = pl.simplified();
    }

    // probe the domain: non-negative parameters, and no equation count that
    // vanishes at a point without vanishing on its whole residue class
    for (auto [m, n] : probe_points(domain)) {
        ConfigShape shape;
        try {
            shape = family_eval(child, m, n);
        } catch (const NegativeParameter&) {
            throw NegativeParameter(child.name + ": negative parameter at witness (" +
                                    std::to_string(m) + ", " + std::to_string(n) + ")");
        } catch (const MissingCase&) {
            throw DomainMismatch(child.name + ": no residue case at (" + std::to_string(m) +
                                 ", " + std::to_string(n) + ")");
        }
        const auto d = derive_codims(shape);
        for (SubsetIndex I = 0; I < old_nsub; ++I) {
            const SubsetIndex J = I | newbit;
            if (d.u[J] + d.v[J] == 0 && shape.points[J] != 0)
                throw Error(child.name + ": equation count at I=" + std::to_string(J) +
                            " vanishes at (" + std::to_string(m) + ", " + std::to_string(n) +
                            ") but not on its residue class");
        }
    }
    return child;
}

ConfigShape inductant_shape_at(const FamilySpec& parent, const InductantStep& step,
                               long long m, long long n) {
    const long long M = step.M.eval(m, n);
    const long long N = step.N.eval(m, n);
    ConfigShape at_mn = family_eval(parent, m, n);
    ConfigShape at_MN = family_eval(parent, M, N);

    ConfigShape child;
    child.k = parent.k + 1;
    child.m = at_mn.m;
    child.n = at_mn.n;
    const std::size_t old_nsub = at_mn.subsets();
    const SubsetIndex newbit = SubsetIndex(old_nsub);
    child.tilde_u.assign(old_nsub << 1, 0);
    child.tilde_v.assign(old_nsub << 1, 0);
    child.points.assign(old_nsub << 1, 0);
    for (SubsetIndex I = 0; I < old_nsub; ++I) {
        child.tilde_u[I] = at_MN.tilde_u[I];
        child.tilde_v[I] = at_MN.tilde_v[I];
        child.tilde_u[I | newbit] = at_mn.tilde_u[I] - at_MN.tilde_u[I];
        child.tilde_v[I | newbit] = at_mn.tilde_v[I] - at_MN.tilde_v[I];
        child.points[I] = at_mn.points[I] - at_MN.points[I];
        child.points[I | newbit] = at_MN.points[I];
    }
    for (SubsetIndex I = 0; I < child.subsets(); ++I)
        if (child.tilde_u[I] < 0 || child.tilde_v[I] < 0 || child.points[I] < 0)
            throw NegativeParameter("inductant of " + parent.name + " at (" + std::to_string(m) +
                                    ", " + std::to_string(n) + ") has a negative parameter");
    return erase_irrelevant(child);
}

bool verify_inductant_at(const FamilySpec& child, const FamilySpec& parent,
                         const InductantStep& step, long long m, long long n) {
    if (child.k != parent.k + 1) return false;
    ConfigShape expected = inductant_shape_at(parent, step, m, n);
    ConfigShape actual = erase_irrelevant(family_eval(child, m, n));
    return equal_canonical(actual, expected);
}

bool vdim_additivity_check(const FamilySpec& parent, const InductantStep& step,
                           long long m, long long n) {
    const long long M = step.M.eval(m, n);
    const long long N = step.N.eval(m, n);
    ConfigShape built = inductant_shape_at(parent, step, m, n);
    return virtual_dim(built) ==
           virtual_dim(family_eval(parent, m, n)) - virtual_dim(family_eval(parent, M, N));
}

bool trivially_nondefective(const ConfigShape& shape) {
    for (auto p : shape.points)
        if (p != 0) return false;
    return ideal_dim(assign_variables(shape)) == 0;
}

// ---- family text format ----

namespace {

void emit_qp(std::ostringstream& os, const QuasiPolynomial& q, const char* indent) {
    for (const auto& [r, poly] : q.cases)
        os << indent << "case (" << r.first << ", " << r.second << "): " << poly.str() << "\n";
}

} // namespace

std::string emit_family(const FamilySpec& spec) {
    std::ostringstream os;
    os << "family " << spec.name << "\n";
    os << "k " << spec.k << "\n";
    os << "domain parity " << parity_class_name(spec.domain.parity) << "\n";
    os << "domain m_min " << spec.domain.m_min << "\n";
    for (const auto& b : spec.domain.n_lower_bounds) {
        os << "domain n_min mod " << b.modulus << "\n";
        emit_qp(os, b, "  ");
    }
    const std::size_t nsub = std::size_t(1) << spec.k;
    const char* tags[3] = {"u", "v", "p"};
    const std::vector<QuasiPolynomial>* arrays[3] = {&spec.tilde_u, &spec.tilde_v, &spec.points};
    for (int a = 0; a < 3; ++a)
        for (SubsetIndex I = 0; I < nsub; ++I) {
            const QuasiPolynomial& q = (*arrays[a])[I];
            if (q.is_identically_zero()) continue;
            os << "param " << tags[a] << " I=" << I << " mod " << q.modulus << "\n";
            emit_qp(os, q, "  ");
        }
    os << "end\n";
    return os.str();
}

namespace {

struct LineReader {
    std::istringstream in;
    long line_no = 0;
    std::string current;

    explicit LineReader(const std::string& text) : in(text) {}

    bool next() {
        while (std::getline(in, current)) {
            ++line_no;
            std::size_t a = current.find_first_not_of(" \t\r");
            if (a == std::string::npos) continue;
            std::size_t b = current.find_last_not_of(" \t\r");
            current = current.substr(a, b - a + 1);
            if (current.empty() || current[0] == '#') continue;
            return true;
        }
        return false;
    }
};

// "case (rm, rn): <poly>"
bool parse_case_line(const std::string& line, long line_no, int& rm, int& rn, BivarPoly& poly) {
    if (line.rfind("case", 0) != 0) return false;
    std::size_t open = line.find('(');
    std::size_t comma = line.find(',', open);
    std::size_t close = line.find(')', comma);
    std::size_t colon = line.find(':', close);
    if (open == std::string::npos || comma == std::string::npos || close == std::string::npos ||
        colon == std::string::npos)
        throw ParseError("malformed case line: " + line, line_no);
    try {
        rm = std::stoi(line.substr(open + 1, comma - open - 1));
        rn = std::stoi(line.substr(comma + 1, close - comma - 1));
    } catch (...) {
        throw ParseError("malformed residues in case line: " + line, line_no);
    }
    poly = BivarPoly::parse(line.substr(colon + 1), line_no);
    return true;
}

QuasiPolynomial parse_qp_block(LineReader& r, int modulus, bool& pending) {
    QuasiPolynomial q;
    q.modulus = modulus;
    pending = false;
    while (r.next()) {
        int rm, rn;
        BivarPoly poly;
        if (!parse_case_line(r.current, r.line_no, rm, rn, poly)) {
            pending = true; // line belongs to the caller
            break;
        }
        if (rm < 0 || rm >= modulus || rn < 0 || rn >= modulus)
            throw ParseError("case residues out of range for modulus " + std::to_string(modulus),
                             r.line_no);
        q.cases[{rm, rn}] = poly;
    }
    if (q.cases.empty()) throw ParseError("empty quasipolynomial block", r.line_no);
    return q;
}

} // namespace

std::vector<FamilySpec> parse_families(const std::string& text) {
    std::vector<FamilySpec> out;
    LineReader r(text);
    bool pending = r.next();
    while (true) {
        if (!pending && !r.next()) break;
        pending = false;
        std::istringstream is(r.current);
        std::string word, name;
        is >> word >> name;
        if (word != "family" || name.empty())
            throw ParseError("expected `family <name>`, got: " + r.current, r.line_no);

        FamilySpec spec;
        spec.name = name;
        bool have_k = false, done = false;
        while (!done && (pending || r.next())) {
            pending = false;
            std::istringstream ls(r.current);
            std::string head;
            ls >> head;
            if (head == "end") {
                done = true;
            } else if (head == "k") {
                if (!(ls >> spec.k) || spec.k < 0 || spec.k > kMaxSubvarieties)
                    throw ParseError("bad k line: " + r.current, r.line_no);
                const std::size_t nsub = std::size_t(1) << spec.k;
                spec.tilde_u.assign(nsub, QuasiPolynomial::zero());
                spec.tilde_v.assign(nsub, QuasiPolynomial::zero());
                spec.points.assign(nsub, QuasiPolynomial::zero());
                have_k = true;
            } else if (head == "domain") {
                std::string what;
                ls >> what;
                if (what == "parity") {
                    std::string p;
                    ls >> p;
                    if (p == "all")
                        spec.domain.parity = ParityClass::All;
                    else if (p == "nice")
                        spec.domain.parity = ParityClass::Nice;
                    else if (p == "ugly")
                        spec.domain.parity = ParityClass::Ugly;
                    else
                        throw ParseError("unknown parity class: " + p, r.line_no);
                } else if (what == "m_min") {
                    if (!(ls >> spec.domain.m_min))
                        throw ParseError("bad m_min line: " + r.current, r.line_no);
                } else if (what == "n_min") {
                    std::string kw;
                    int mod;
                    if (!(ls >> kw >> mod) || kw != "mod" || mod < 1)
                        throw ParseError("bad n_min line: " + r.current, r.line_no);
                    spec.domain.n_lower_bounds.push_back(parse_qp_block(r, mod, pending));
                } else {
                    throw ParseError("unknown domain clause: " + r.current, r.line_no);
                }
            } else if (head == "param") {
                if (!have_k) throw ParseError("param before k", r.line_no);
                std::string tag, itok, kw;
                int mod;
                if (!(ls >> tag >> itok >> kw >> mod) || kw != "mod" || mod < 1 ||
                    itok.rfind("I=", 0) != 0)
                    throw ParseError("bad param line: " + r.current, r.line_no);
                SubsetIndex I;
                try {
                    I = SubsetIndex(std::stoul(itok.substr(2)));
                } catch (...) {
                    throw ParseError("bad subset index: " + r.current, r.line_no);
                }
                if (I >= (SubsetIndex(1) << spec.k))
                    throw ParseError("subset index out of range: " + r.current, r.line_no);
                QuasiPolynomial q = parse_qp_block(r, mod, pending);
                if (tag == "u")
                    spec.tilde_u[I] = q;
                else if (tag == "v")
                    spec.tilde_v[I] = q;
                else if (tag == "p")
                    spec.points[I] = q;
                else
                    throw ParseError("unknown param tag: " + tag, r.line_no);
            } else {
                throw ParseError("unexpected line in family block: " + r.current, r.line_no);
            }
        }
        if (!done) throw ParseError("family " + name + " not closed by `end`", r.line_no);
        if (!have_k) throw ParseError("family " + name + " has no k", r.line_no);
        out.push_back(std::move(spec));
    }
    return out;
}

std::vector<FamilySpec> parse_families_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_families(ss.str());
}

QuasiPolynomial ups_qp() {
    // floor((m+1)(n-m+2)/2) + 1 split by parity
    QuasiPolynomial q;
    q.modulus = 2;
    BivarPoly nice = BivarPoly::parse("1/2 * m * n + -1/2 * m^2 + 1/2 * m + 1/2 * n + 2");
    BivarPoly ugly = BivarPoly::parse("1/2 * m * n + -1/2 * m^2 + 1/2 * m + 1/2 * n + 3/2");
    q.cases[{0, 0}] = nice;
    q.cases[{1, 0}] = nice;
    q.cases[{1, 1}] = nice;
    q.cases[{0, 1}] = ugly;
    return q;
}

QuasiPolynomial epsilon_qp() {
    QuasiPolynomial q;
    q.modulus = 4;
    for (int rm : {0, 2})
        for (int rn : {1, 3})
            q.cases[{rm, rn}] = BivarPoly::constant(Rational(((rn - rm) % 4 + 4) % 4));
    return q;
}

} // namespace segredefect

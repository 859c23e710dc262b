#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "segredefect/errors.hpp"

namespace segredefect {

// Subset of {1..k} as a bitmask: bit t-1 set iff t is in the subset.
using SubsetIndex = std::uint32_t;

inline constexpr int kMaxSubvarieties = 16;

// One coordinate configuration on P^m x P^n: for every subset I of the
// k coordinate subvarieties, the number tilde_u[I] (resp. tilde_v[I]) of
// x- (resp. y-) coordinate equations belonging exactly to the subvarieties
// in I, and the number points[I] of double points constrained to the
// intersection of the subvarieties in I.
struct ConfigShape {
    int m = 0;
    int n = 0;
    int k = 0;
    std::vector<long long> tilde_u; // size 2^k
    std::vector<long long> tilde_v;
    std::vector<long long> points;

    std::size_t subsets() const { return std::size_t(1) << k; }
    bool operator==(const ConfigShape&) const = default;
};

enum class ShapeCondition {
    ArraySize,
    NonNegative,
    SumU,          // sum tilde_u = m+1
    SumV,          // sum tilde_v = n+1
    NonEmptyU,     // for every t: sum_{J not containing t} tilde_u_J > 0
    NonEmptyV,
    PointSupportU, // p_I > 0 requires sum_{J disjoint from I} tilde_u_J > 0
    PointSupportV,
};

struct ShapeViolation {
    ShapeCondition condition;
    SubsetIndex subset = 0; // index set at fault (or singleton {t} for NonEmpty*)
    std::string message;
};

std::vector<ShapeViolation> validate_shape(const ConfigShape& shape);
// Throws InvalidShape with the first violations when validate_shape is nonempty.
void require_valid(const ConfigShape& shape);

// Superset sums u_I = sum_{J >= I} tilde_u_J (v likewise).
struct DerivedCodims {
    std::vector<long long> u, v;
};
DerivedCodims derive_codims(const ConfigShape& shape);

// label(z) = set of subvarieties whose equations include z = 0.
struct VariableAssignment {
    int m = 0, n = 0, k = 0;
    std::vector<SubsetIndex> xlabel; // size m+1
    std::vector<SubsetIndex> ylabel; // size n+1
};

// Canonical deterministic assignment: iterate I by increasing bitmask and
// hand out consecutive variable indices inside each block.
VariableAssignment assign_variables(const ConfigShape& shape);

// x_i * y_j1 * y_j2 with j1 <= j2.
struct Monomial {
    int i, j1, j2;
    bool operator==(const Monomial&) const = default;
};
using MonomialBasis = std::vector<Monomial>;

// All bidegree (1,2) monomials vanishing on every subvariety, in strictly
// increasing lexicographic order of (i, j1, j2).
MonomialBasis ideal_basis(const VariableAssignment& assignment);
std::size_t ideal_dim(const VariableAssignment& assignment); // |ideal_basis|, no list

// Variables vanishing on the intersection of the subvarieties in I, as
// ids 0..m for x_0..x_m and m+1..m+n+1 for y_0..y_n, ascending.
std::vector<int> vanishing_vars(const ConfigShape& shape, SubsetIndex I);
std::vector<int> vanishing_vars(const VariableAssignment& assignment, SubsetIndex I);

long long virtual_dim(const ConfigShape& shape);

enum class Abundancy { Sub, Super, Equi };
Abundancy abundancy(const ConfigShape& shape);
const char* abundancy_name(Abundancy a); // SUB / SUPER / EQUI

// Zero out points constrained to intersections with u_I + v_I = 0.
ConfigShape erase_irrelevant(const ConfigShape& shape);

// Restriction to subvariety t (1-based). Requires L_t to meet every other
// subvariety; throws EmptyIntersection otherwise.
ConfigShape restrict_to(const ConfigShape& shape, int t);

enum class Parity { Nice, Ugly };
Parity classify_parity(long long m, long long n); // Ugly iff m even and n odd

struct SecantBounds {
    long long ups;       // floor((m+1)(n-m+2)/2) + 1
    long long upr;       // ceil((m+1) C(n+2,2) / (n+m+1))
    long long remainder; // (m+1) C(n+2,2) - (n+m+1) upr
};
SecantBounds secant_bounds(long long m, long long n);

long long binomial(long long n, long long k);

// Lexicographically least relabeling of the subvarieties; two shapes are
// the same configuration up to renumbering iff their canonical forms match.
ConfigShape canonical_form(const ConfigShape& shape);
bool equal_canonical(const ConfigShape& a, const ConfigShape& b);

// Line-oriented text form: `config k=<k> m=<m> n=<n>` followed by one
// `I=<bitmask> u=<tilde_u> v=<tilde_v> p=<points>` line per subset with a
// nonzero entry. Omitted subsets are zero.
std::string serialize_shape(const ConfigShape& shape);
// Reads the serialized form starting at the current stream line; line_no is
// advanced across consumed lines. Throws ParseError.
ConfigShape parse_shape(std::istream& in, long& line_no);
ConfigShape parse_shape(const std::string& text);

} // namespace segredefect

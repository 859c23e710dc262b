#pragma once

#include <optional>
#include <string>
#include <vector>

#include "segredefect/configs.hpp"
#include "segredefect/qpoly.hpp"

namespace segredefect {

enum class ParityClass { All, Nice, Ugly };

const char* parity_class_name(ParityClass p); // all / nice / ugly

struct DomainPredicate {
    ParityClass parity = ParityClass::All;
    long long m_min = 0;
    // n must be >= every bound, each a quasipolynomial in m
    std::vector<QuasiPolynomial> n_lower_bounds;

    bool contains(long long m, long long n) const;
    // least admissible n for this m within the parity class, if any
    std::optional<long long> n_floor(long long m) const;
};

// A named family of coordinate configurations: one quasipolynomial per
// parameter slot, indexed like ConfigShape by subsets of {1..k}.
struct FamilySpec {
    std::string name;
    int k = 0;
    DomainPredicate domain;
    std::vector<QuasiPolynomial> tilde_u; // size 2^k
    std::vector<QuasiPolynomial> tilde_v;
    std::vector<QuasiPolynomial> points;
};

struct InductantStep {
    QuasiPolynomial M, N;
};

long long qp_eval(const QuasiPolynomial& q, long long m, long long n);

// Evaluate the family at an in-domain point. Throws OutOfDomain, and
// propagates NonInteger / MissingCase / NegativeParameter from the
// parameter functions; the returned shape passes validate_shape.
ConfigShape family_eval(const FamilySpec& spec, long long m, long long n);

// The family with one extra subvariety (index k+1) obtained by specializing
// so its restriction to the new subvariety reproduces the parent at
// (M(m,n), N(m,n)). Points that land on intersections whose equation count
// is identically zero on a residue class are erased there; an equation
// count that vanishes at some domain point without vanishing on its whole
// class is reported as an error. Parameter functions are probed for
// negative values over the domain and reported with a witness.
FamilySpec build_inductant(const FamilySpec& parent, const InductantStep& step,
                           const DomainPredicate& domain, const std::string& name = "");

// The inductant shape of `parent` at (m,n) with the step evaluated there:
// parameter relations applied numerically, irrelevant points erased.
ConfigShape inductant_shape_at(const FamilySpec& parent, const InductantStep& step,
                               long long m, long long n);

// True iff child(m,n) is, up to renumbering of subvarieties, the shape
// obtained from parent at (m,n) by the inductant relations with
// (M(m,n), N(m,n)), after erasing irrelevant points.
bool verify_inductant_at(const FamilySpec& child, const FamilySpec& parent,
                         const InductantStep& step, long long m, long long n);

// vdim of the inductant shape equals vdim parent(m,n) - vdim parent(M,N).
bool vdim_additivity_check(const FamilySpec& parent, const InductantStep& step,
                           long long m, long long n);

// No double points and no bidegree (1,2) monomial vanishes on all
// subvarieties: such a configuration is equiabundant and non-defective
// without any rank computation.
bool trivially_nondefective(const ConfigShape& shape);

// Family definition text format. Families are introduced by `family <name>`
// and closed by `end`; quasipolynomial values are given per residue pair as
//   case (rm, rn): c * m^a * n^b + ...
std::string emit_family(const FamilySpec& spec);
std::vector<FamilySpec> parse_families(const std::string& text);
std::vector<FamilySpec> parse_families_file(const std::string& path);

// Convenience builders used by the catalog and tests.
QuasiPolynomial ups_qp();                   // s.t. eval = secant_bounds(m,n).ups
QuasiPolynomial epsilon_qp();               // residue of n-m mod 4 on ugly pairs

} // namespace segredefect

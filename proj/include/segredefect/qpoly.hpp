#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "segredefect/errors.hpp"

namespace segredefect {

// Exact rational with 64-bit numerator/denominator, normalized (den > 0,
// gcd(num, den) = 1). Intermediates use 128 bits and overflow throws.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d);

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    bool operator==(const Rational&) const = default;
    auto operator<=>(const Rational& o) const {
        return (__int128)num * o.den <=> (__int128)o.num * den;
    }

    std::string str() const; // "3", "-3/2"
};

// Bivariate polynomial in m and n over the rationals, sparse by exponent.
struct BivarPoly {
    // (deg_m, deg_n) -> nonzero coefficient
    std::map<std::pair<int, int>, Rational> terms;

    static BivarPoly constant(Rational c);
    static BivarPoly var_m();
    static BivarPoly var_n();

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const;

    BivarPoly operator+(const BivarPoly& o) const;
    BivarPoly operator-(const BivarPoly& o) const;
    BivarPoly operator*(const BivarPoly& o) const;
    BivarPoly scaled(Rational c) const;
    bool operator==(const BivarPoly&) const = default;

    Rational eval(long long m, long long n) const;
    // Substitute m -> M, n -> N.
    BivarPoly substitute(const BivarPoly& M, const BivarPoly& N) const;

    // Term list "c * m^a * n^b + ...": coefficient always written, exponent-1
    // carets omitted, zero-exponent factors dropped; the zero polynomial is "0".
    std::string str() const;
    static BivarPoly parse(const std::string& text, long line_no = 0);
};

// Case-wise bivariate polynomial: one polynomial per residue pair
// (m mod d, n mod d). Absent residue pairs are undefined, not zero.
struct QuasiPolynomial {
    int modulus = 1;
    std::map<std::pair<int, int>, BivarPoly> cases;

    static QuasiPolynomial zero();
    static QuasiPolynomial constant(long long c);
    static QuasiPolynomial poly(BivarPoly p); // modulus 1

    bool covers(long long m, long long n) const;
    const BivarPoly& case_for(long long m, long long n) const; // MissingCase

    // Exact integer value; NonInteger when the rational value is fractional.
    long long eval(long long m, long long n) const;

    bool is_identically_zero() const;

    // Replicate cases to a multiple D of the modulus.
    QuasiPolynomial lifted(int D) const;
    // Drop the modulus to the smallest divisor that represents the same function.
    QuasiPolynomial simplified() const;

    QuasiPolynomial operator+(const QuasiPolynomial& o) const;
    QuasiPolynomial operator-(const QuasiPolynomial& o) const;
    bool operator==(const QuasiPolynomial&) const = default;
};

// f composed with (M, N): the quasipolynomial (m, n) -> f(M(m,n), N(m,n)).
// Defined on residue classes where M and N are defined, evaluate to integers
// on the class and have constant residues mod f's modulus. The result modulus
// escalates as needed; throws MissingCase when no modulus up to the cap works.
QuasiPolynomial compose(const QuasiPolynomial& f, const QuasiPolynomial& M,
                        const QuasiPolynomial& N);

long long lcm_int(long long a, long long b);

} // namespace segredefect

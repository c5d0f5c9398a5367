#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dio {

using Z = mpz_class;
using Q = mpq_class;

// Univariate polynomial with integer coefficients, c[i] = coefficient of X^i.
// The zero polynomial is represented by an empty coefficient vector.
struct ZPoly {
    std::vector<Z> c;

    ZPoly() = default;
    explicit ZPoly(std::vector<Z> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim();
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    const Z& lc() const { return c.back(); }

    static ZPoly from_int_list(const std::vector<long>& v);
};

bool operator==(const ZPoly& a, const ZPoly& b);

ZPoly add(const ZPoly& a, const ZPoly& b);
ZPoly sub(const ZPoly& a, const ZPoly& b);
ZPoly mul(const ZPoly& a, const ZPoly& b);
ZPoly neg(const ZPoly& a);
ZPoly scalar_mul(const Z& s, const ZPoly& a);
ZPoly derivative(const ZPoly& a);

Z eval(const ZPoly& a, const Z& x);
Q eval(const ZPoly& a, const Q& x);

// Content is non-negative; content of the zero polynomial is 0.
Z content(const ZPoly& a);
ZPoly primitive_part(const ZPoly& a);  // sign of lc preserved

// Exact division; throws std::invalid_argument if b does not divide a.
ZPoly divide_exact(const ZPoly& a, const ZPoly& b);
bool divides(const ZPoly& b, const ZPoly& a);

// gcd over Z, primitive with positive leading coefficient.
ZPoly gcd_z(const ZPoly& a, const ZPoly& b);

ZPoly squarefree_part(const ZPoly& a);

// Resultant of a and b (Sylvester determinant, fraction-free elimination).
Z resultant(const ZPoly& a, const ZPoly& b);

// reverse(a)(X) = X^deg(a) * a(1/X)
ZPoly reverse_poly(const ZPoly& a);

struct ZPolyFactorization {
    Z content;  // signed: content * prod(factor^mult) == input
    std::vector<std::pair<ZPoly, int>> factors;  // primitive, irreducible over Q,
                                                 // positive leading coefficient,
                                                 // sorted (degree, then coeffs)
};

// Factorization into irreducibles over Q (squarefree decomposition +
// modular factorization with Hensel lifting and recombination).
ZPolyFactorization factor_z(const ZPoly& a);

// Real roots, double precision (Durand-Kerner; for scan centers, not certified).
std::vector<double> real_roots_double(const ZPoly& a);
// All complex roots as (re, im) pairs.
std::vector<std::pair<double, double>> complex_roots_double(const ZPoly& a);

std::string to_string(const ZPoly& a);

}  // namespace dio

#pragma once

#include "dio/intpoly.hpp"

#include <string>
#include <vector>

namespace dio {

// Integer binary form F(X,Y) = a0*X^n + a1*X^(n-1)*Y + ... + an*Y^n.
// coeffs are stored highest X-power first, matching the JSON wire format.
// Coefficients are never silently reduced; content division is explicit.
struct BinaryForm {
    std::vector<Z> coeffs;  // size n+1

    explicit BinaryForm(std::vector<Z> c);
    static BinaryForm from_int_list(const std::vector<long>& v);

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    const Z& a(int i) const { return coeffs[i]; }  // coefficient of X^(n-i) Y^i

    // f(X) = F(X, 1), lowest-degree-first univariate.
    ZPoly dehomogenize() const;
    // F(1, Y) as a univariate polynomial in Y.
    ZPoly dehomogenize_y() const;
};

bool operator==(const BinaryForm& a, const BinaryForm& b);

// 2x2 integer matrix with determinant +-1, acting by
// (X, Y) -> (a*X + b*Y, c*X + d*Y).
struct UnimodularMap {
    Z a, b, c, d;
    Z det() const { return a * d - b * c; }
    bool is_unimodular() const;
    static UnimodularMap identity() { return {1, 0, 0, 1}; }
};

Z eval(const BinaryForm& F, const Z& p, const Z& q);
Z discriminant(const BinaryForm& F);  // degree >= 2 required
Z height(const BinaryForm& F);

struct FormFactor {
    BinaryForm factor;
    int multiplicity;
};

struct FormFactorization {
    Z content;  // signed; content * prod(factor^mult) == F
    std::vector<FormFactor> factors;
    bool is_irreducible() const {
        return factors.size() == 1 && factors[0].multiplicity == 1;
    }
};

FormFactorization factor_over_Q(const BinaryForm& F);
bool is_irreducible(const BinaryForm& F);

BinaryForm apply_map(const BinaryForm& F, const UnimodularMap& M);

struct NormalizedForm {
    BinaryForm G;
    long u, v;
    UnimodularMap map;  // G = F o map
};

// Smallest (u, v) lexicographically in {0..n-1}^2 with F(1,u) != 0 and
// F(v, uv+1) != 0; G(X,Y) = F(X + vY, uX + (uv+1)Y) has G(1,0)G(0,1) != 0.
NormalizedForm normalize_nonvanishing(const BinaryForm& F);

// JSON wire format: array of decimal coefficient strings, highest X-power
// first, e.g. ["1","0","0","-2"] for X^3 - 2Y^3.
std::string form_to_json(const BinaryForm& F);
BinaryForm form_from_json(const std::string& json);

std::string to_string(const BinaryForm& F);

}  // namespace dio

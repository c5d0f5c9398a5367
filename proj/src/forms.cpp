#include "dio/forms.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>

namespace dio {

BinaryForm::BinaryForm(std::vector<Z> c) : coeffs(std::move(c)) {
    if (coeffs.empty()) throw std::invalid_argument("BinaryForm: empty coefficients");
    bool all_zero = true;
    for (const auto& x : coeffs)
        if (x != 0) all_zero = false;
    if (all_zero) throw std::invalid_argument("BinaryForm: zero form");
}

BinaryForm BinaryForm::from_int_list(const std::vector<long>& v) {
    std::vector<Z> c;
    c.reserve(v.size());
    for (long x : v) c.emplace_back(x);
    return BinaryForm(std::move(c));
}

ZPoly BinaryForm::dehomogenize() const {
    int n = degree();
    std::vector<Z> c(n + 1);
    for (int i = 0; i <= n; ++i) c[n - i] = coeffs[i];
    return ZPoly(std::move(c));
}

ZPoly BinaryForm::dehomogenize_y() const {
    return ZPoly(std::vector<Z>(coeffs.begin(), coeffs.end()));
}

bool operator==(const BinaryForm& a, const BinaryForm& b) {
    return a.coeffs == b.coeffs;
}

bool UnimodularMap::is_unimodular() const {
    Z d = det();
    return d == 1 || d == -1;
}

Z eval(const BinaryForm& F, const Z& p, const Z& q) {
    // Horner in p; q powers fold in term by term.
    Z r = 0;
    Z qp = 1;
    int n = F.degree();
    for (int i = 0; i <= n; ++i) {
        r = r * p + F.coeffs[i] * qp;
        qp *= q;
    }
    return r;
}

Z discriminant(const BinaryForm& F) {
    int n = F.degree();
    if (n < 2) throw std::invalid_argument("discriminant: degree must be >= 2");
    // Disc(F) = (-1)^(n(n-1)/2) Res(f, f') / a0 with f = F(X,1) of exact
    // degree n. If a0 = 0, first shear X -> X, Y -> cX + Y (det 1, leaves
    // the discriminant unchanged) to make the top coefficient non-zero.
    BinaryForm G = F;
    if (G.coeffs[0] == 0) {
        for (long c = 1;; ++c) {
            if (eval(F, 1, c) != 0) {
                G = apply_map(F, UnimodularMap{1, 0, Z(c), 1});
                break;
            }
        }
    }
    ZPoly f = G.dehomogenize();
    Z res = resultant(f, derivative(f));
    Z disc = res / G.coeffs[0];
    if ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) disc = -disc;
    return disc;
}

Z height(const BinaryForm& F) {
    Z h = 0;
    for (const auto& x : F.coeffs) {
        Z a = abs(x);
        if (a > h) h = a;
    }
    return h;
}

static BinaryForm homogenize(const ZPoly& g) {
    int d = g.degree();
    std::vector<Z> c(d + 1);
    for (int i = 0; i <= d; ++i) c[i] = g.c[d - i];
    return BinaryForm(std::move(c));
}

FormFactorization factor_over_Q(const BinaryForm& F) {
    if (F.degree() < 1) throw std::invalid_argument("factor_over_Q: degree must be >= 1");
    ZPoly f = F.dehomogenize();
    int ymult = F.degree() - f.degree();  // Y^ymult divides F
    ZPolyFactorization zf = factor_z(f);
    FormFactorization out;
    out.content = zf.content;
    if (ymult > 0)
        out.factors.push_back({BinaryForm({Z(0), Z(1)}), ymult});
    for (auto& [g, m] : zf.factors) out.factors.push_back({homogenize(g), m});
    std::sort(out.factors.begin(), out.factors.end(),
              [](const FormFactor& x, const FormFactor& y) {
                  if (x.factor.degree() != y.factor.degree())
                      return x.factor.degree() < y.factor.degree();
                  return x.factor.coeffs < y.factor.coeffs;
              });
    return out;
}

bool is_irreducible(const BinaryForm& F) {
    if (F.degree() < 1) return false;
    FormFactorization ff = factor_over_Q(F);
    return ff.is_irreducible() && (ff.content == 1 || ff.content == -1);
}

BinaryForm apply_map(const BinaryForm& F, const UnimodularMap& M) {
    if (!M.is_unimodular()) throw std::invalid_argument("apply_map: determinant not +-1");
    int n = F.degree();
    // (aX+bY)^k and (cX+dY)^k expansions, built incrementally.
    // pw1[k][j] = coeff of X^(k-j) Y^j in (aX+bY)^k
    std::vector<std::vector<Z>> pw1(n + 1), pw2(n + 1);
    pw1[0] = {Z(1)};
    pw2[0] = {Z(1)};
    for (int k = 1; k <= n; ++k) {
        pw1[k].assign(k + 1, Z(0));
        pw2[k].assign(k + 1, Z(0));
        for (int j = 0; j < k; ++j) {
            pw1[k][j] += pw1[k - 1][j] * M.a;
            pw1[k][j + 1] += pw1[k - 1][j] * M.b;
            pw2[k][j] += pw2[k - 1][j] * M.c;
            pw2[k][j + 1] += pw2[k - 1][j] * M.d;
        }
    }
    std::vector<Z> out(n + 1, Z(0));
    for (int i = 0; i <= n; ++i) {
        if (F.coeffs[i] == 0) continue;
        const auto& u = pw1[n - i];
        const auto& v = pw2[i];
        for (size_t j = 0; j < u.size(); ++j)
            for (size_t l = 0; l < v.size(); ++l)
                out[j + l] += F.coeffs[i] * u[j] * v[l];
    }
    return BinaryForm(std::move(out));
}

NormalizedForm normalize_nonvanishing(const BinaryForm& F) {
    int n = F.degree();
    if (n < 1) throw std::invalid_argument("normalize_nonvanishing: degree must be >= 1");
    for (long u = 0; u < n; ++u) {
        if (eval(F, 1, u) == 0) continue;
        for (long v = 0; v < n; ++v) {
            if (eval(F, v, u * v + 1) == 0) continue;
            UnimodularMap M{1, Z(v), Z(u), Z(u * v + 1)};
            return NormalizedForm{apply_map(F, M), u, v, M};
        }
    }
    throw std::logic_error("normalize_nonvanishing: no (u,v) found");
}

std::string form_to_json(const BinaryForm& F) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& x : F.coeffs) j.push_back(x.get_str());
    return j.dump();
}

BinaryForm form_from_json(const std::string& json) {
    nlohmann::json j = nlohmann::json::parse(json);
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("form JSON must be a non-empty array");
    std::vector<Z> c;
    for (const auto& e : j) {
        if (e.is_string())
            c.emplace_back(e.get<std::string>());
        else if (e.is_number_integer())
            c.emplace_back(static_cast<long>(e.get<long long>()));
        else
            throw std::invalid_argument("form coefficients must be strings or integers");
    }
    return BinaryForm(std::move(c));
}

std::string to_string(const BinaryForm& F) {
    std::ostringstream os;
    int n = F.degree();
    bool first = true;
    for (int i = 0; i <= n; ++i) {
        const Z& a = F.coeffs[i];
        if (a == 0) continue;
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        Z v = abs(a);
        int xp = n - i, yp = i;
        if (v != 1 || (xp == 0 && yp == 0)) os << v.get_str();
        if (xp > 0) {
            os << "X";
            if (xp > 1) os << "^" << xp;
        }
        if (yp > 0) {
            os << "Y";
            if (yp > 1) os << "^" << yp;
        }
        first = false;
    }
    return os.str();
}

}  // namespace dio

#include "dio/padic.hpp"

#include "dio/arith.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace dio {

namespace {

Z pow_z(const Z& P, int e) {
    Z r;
    mpz_pow_ui(r.get_mpz_t(), P.get_mpz_t(), e);
    return r;
}

// Coefficients of f(a + X) (Taylor shift, exact).
std::vector<Z> taylor_shift(const ZPoly& f, const Z& a) {
    std::vector<Z> b = f.c;
    int n = f.degree();
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) b[j] += a * b[j + 1];
    return b;
}

}  // namespace

long valuation(const Z& n, const Z& P) {
    if (n == 0) throw std::invalid_argument("valuation: zero integer");
    Z m = abs(n);
    long v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), P.get_mpz_t())) {
        m /= P;
        ++v;
    }
    return v;
}

std::optional<long> valuation(const Q& r, const Z& P) {
    if (r == 0) return std::nullopt;
    return valuation(Z(r.get_num()), P) - valuation(Z(r.get_den()), P);
}

// ---------------------------------------------------------------------------
// Root finding in Z_P
// ---------------------------------------------------------------------------

namespace {

// Hensel lift a simple root (f'(r) unit mod P) from precision c to N.
Z hensel_lift_simple(const ZPoly& f, const Z& P, Z r, int c, int N) {
    ZPoly fp = derivative(f);
    while (c < N) {
        int next = std::min(2 * c, N);
        Z mod = pow_z(P, next);
        Z d = eval(fp, r) % mod;
        Z dinv;
        if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t()) == 0)
            throw std::logic_error("hensel: derivative not invertible");
        r = (r - eval(f, r) * dinv) % mod;
        if (r < 0) r += mod;
        c = next;
    }
    return r;
}

}  // namespace

PAdicRootsResult padic_roots(const ZPoly& f, const Z& P, int N, int depth_cap) {
    if (f.is_zero()) throw std::invalid_argument("padic_roots: zero polynomial");
    if (N < 1) throw std::invalid_argument("padic_roots: precision must be >= 1");
    if (depth_cap < 0) {
        Z disc = resultant(f, derivative(f));
        if (disc != 0)
            depth_cap = std::max<long>(N, 4 * (valuation(disc, P) + 1));
        else
            depth_cap = 2 * N;
    }
    PAdicRootsResult out;
    ZPoly fp = derivative(f);
    struct Node {
        Z residue;
        int level;
    };
    std::deque<Node> work;
    for (Z a = 0; a < P; ++a) {
        if (eval(f, a) % P == 0) work.push_back({a, 1});
    }
    while (!work.empty()) {
        Node nd = work.front();
        work.pop_front();
        bool simple = eval(fp, nd.residue) % P != 0;
        if (simple) {
            Z r = hensel_lift_simple(f, P, nd.residue, nd.level, N);
            out.roots.push_back({P, N, r, true, false});
            continue;
        }
        if (nd.level >= N) {
            out.roots.push_back({P, nd.level, nd.residue, false, false});
            continue;
        }
        if (nd.level >= depth_cap) {
            out.undecided.push_back({P, nd.level, nd.residue, false, false});
            continue;
        }
        Z step = pow_z(P, nd.level);
        Z next_mod = step * P;
        for (Z t = 0; t < P; ++t) {
            Z b = nd.residue + t * step;
            if (eval(f, b) % next_mod == 0) work.push_back({b, nd.level + 1});
        }
    }
    return out;
}

PAdicRootsResult padic_roots_with_poles(const ZPoly& f, const Z& P, int N,
                                        int depth_cap) {
    PAdicRootsResult out = padic_roots(f, P, N, depth_cap);
    // Roots in Q_P \ Z_P: x with v_P(x) < 0 correspond to roots y = 1/x of the
    // reversed polynomial with y ≡ 0 (mod P).
    ZPoly rev = reverse_poly(f);
    if (!rev.is_zero() && rev.degree() >= 1) {
        PAdicRootsResult r2 = padic_roots(rev, P, N, depth_cap);
        for (auto& z : r2.roots) {
            if (z.residue % P == 0) {
                z.pole_at_infinity = true;
                out.roots.push_back(z);
            }
        }
        for (auto& z : r2.undecided) {
            if (z.residue % P == 0) {
                z.pole_at_infinity = true;
                out.undecided.push_back(z);
            }
        }
    }
    return out;
}

PAdicDistance padic_distance(const PAdicRootApprox& z, const Z& p, const Z& q) {
    const Z& P = z.prime;
    Z g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    if (g != 1) throw std::invalid_argument("padic_distance: gcd(p,q) != 1");
    Z PN = pow_z(P, z.precision);
    bool q_unit = q % P != 0;

    if (!z.pole_at_infinity) {
        if (!q_unit)
            throw std::invalid_argument("padic_distance: q ≡ 0 mod P for a Z_P root");
        // |zeta - p/q|_P = |zeta*q - p|_P, known through residue mod P^N.
        Z d = z.residue * q - p;
        if (d % PN == 0) {
            Q v(1);
            v /= PN;
            return {v, false};
        }
        long v = valuation(d, P);
        if (v >= z.precision) {
            Q val(1);
            val /= PN;
            return {val, false};
        }
        if (v == 0) return {Q(1), true};
        Q val(1);
        val /= pow_z(P, v);
        return {val, true};
    }

    // Pole case: residue approximates 1/zeta, residue ≡ 0 mod P.
    if (q_unit) {
        // |p/q|_P <= 1 < |zeta|_P, so the distance is |zeta|_P > 1.
        return {Q(1), true};
    }
    // q ≡ 0 mod P, p a unit. |zeta - p/q| = |zeta|*|p/q|*|q/p - 1/zeta|.
    if (z.residue == 0) {
        // Valuation of zeta unknown beyond |zeta| >= P^N; report bound.
        Q v(1);
        return {v, false};
    }
    long vz = valuation(z.residue, P);  // v_P(1/zeta) > 0
    long w = valuation(q, P);
    Z d = z.residue * p - q;
    long vd;
    bool exact = true;
    if (d == 0 || d % PN == 0) {
        vd = z.precision;
        exact = false;
    } else {
        vd = valuation(d, P);
        if (vd >= z.precision) {
            vd = z.precision;
            exact = false;
        }
    }
    // |zeta - p/q|_P = P^(vz + w - vd)
    long e = vz + w - vd;
    if (e >= 0) return {Q(1), exact || e > 0};
    Q val(1);
    val /= pow_z(P, -e);
    return {val, exact};
}

PAdicRootApprox lift_root(const ZPoly& f, const PAdicRootApprox& z, int N) {
    if (N <= z.precision) return z;
    if (z.pole_at_infinity) {
        PAdicRootApprox inner = z;
        inner.pole_at_infinity = false;
        PAdicRootApprox lifted = lift_root(reverse_poly(f), inner, N);
        lifted.pole_at_infinity = true;
        return lifted;
    }
    if (z.simple) {
        Z r = hensel_lift_simple(f, z.prime, z.residue, z.precision, N);
        return {z.prime, N, r, true, false};
    }
    PAdicRootsResult rr = padic_roots(f, z.prime, N);
    Z mod = pow_z(z.prime, z.precision);
    for (const auto& cand : rr.roots) {
        if ((cand.residue - z.residue) % mod == 0) return cand;
    }
    throw std::runtime_error("lift_root: singular branch did not extend");
}

// ---------------------------------------------------------------------------
// Local densities
// ---------------------------------------------------------------------------

namespace {

// #{x mod P^e : f(x) ≡ 0 mod P^e}, restricted to x ≡ 0 mod P when only_div_P.
// Counts residue classes wholesale instead of enumerating them.
Z count_root_residues_rec(const ZPoly& f, const ZPoly& fp, const Z& P, int e,
                          const Z& a, int c) {
    if (c >= e) return 1;
    if (eval(fp, a) % P != 0) return 1;  // simple: unique lift all the way
    // If the whole class a + P^c * Z consists of roots mod P^e, count it.
    std::vector<Z> b = taylor_shift(f, a);
    Z pe = pow_z(P, e);
    bool whole = true;
    Z pc_i = 1;  // P^(c*i)
    Z pc = pow_z(P, c);
    for (size_t i = 0; i < b.size(); ++i) {
        if ((b[i] * pc_i) % pe != 0) {
            whole = false;
            break;
        }
        pc_i *= pc;
        if (pc_i >= pe) {  // remaining terms all divisible
            break;
        }
    }
    if (whole) return pow_z(P, e - c);
    Z step = pow_z(P, c);
    Z next_mod = step * P;
    Z total = 0;
    for (Z t = 0; t < P; ++t) {
        Z x = a + t * step;
        if (eval(f, x) % next_mod == 0)
            total += count_root_residues_rec(f, fp, P, e, x, c + 1);
    }
    return total;
}

Z count_root_residues(const ZPoly& f, const Z& P, int e, bool only_div_P) {
    if (e == 0) return 1;
    ZPoly fp = derivative(f);
    Z total = 0;
    if (only_div_P) {
        if (eval(f, Z(0)) % P == 0)
            total = count_root_residues_rec(f, fp, P, e, Z(0), 1);
        return total;
    }
    for (Z a = 0; a < P; ++a) {
        if (eval(f, a) % P == 0)
            total += count_root_residues_rec(f, fp, P, e, a, 1);
    }
    return total;
}

}  // namespace

Z primitive_solution_count(const BinaryForm& F, const Z& P, int l) {
    if (l < 1) throw std::invalid_argument("primitive_solution_count: l >= 1");
    // Fiber over the unit coordinate: pairs with q a unit biject with
    // (root of f mod P^l) x (unit), and pairs with p a unit, q ≡ 0 mod P
    // biject with (root ≡ 0 of F(1,Y)) x (unit).
    Z phi = pow_z(P, l) - pow_z(P, l - 1);
    Z r1 = count_root_residues(F.dehomogenize(), P, l, false);
    Z r2 = count_root_residues(F.dehomogenize_y(), P, l, true);
    return phi * (r1 + r2);
}

Z rho_prime_power(const BinaryForm& F, const Z& P, int e) {
    if (e == 0) return 1;
    int n = F.degree();
    Z prim = primitive_solution_count(F, P, e);
    Z imprim;
    if (e <= n)
        imprim = pow_z(P, 2 * (e - 1));
    else
        imprim = pow_z(P, 2 * (n - 1)) * rho_prime_power(F, P, e - n);
    return prim + imprim;
}

Z rho(const BinaryForm& F, const Z& m) {
    if (m < 1) throw std::invalid_argument("rho: m must be >= 1");
    if (m == 1) return 1;
    Z result = 1;
    for (const auto& [p, e] : factorize(m).factors)
        result *= rho_prime_power(F, p, e);
    return result;
}

Q local_measure(const BinaryForm& F, const Z& P, int j) {
    if (j < 0) throw std::invalid_argument("local_measure: j >= 0");
    if (discriminant(F) == 0)
        throw std::invalid_argument("local_measure: repeated-factor form unsupported");
    Z count;
    if (j == 0) {
        count = P * P - 1 - primitive_solution_count(F, P, 1);
    } else {
        count = P * P * primitive_solution_count(F, P, j) -
                primitive_solution_count(F, P, j + 1);
    }
    Q m(count);
    m /= pow_z(P, 2 * (j + 1));
    m.canonicalize();
    return m;
}

LocalFactor local_factor(const BinaryForm& F, const Z& P, int J) {
    int n = F.degree();
    if (n < 3) throw std::invalid_argument("local_factor: degree must be >= 3");
    double Pd = mpq_class(P).get_d();
    std::vector<Q> ms(J + 1);
    double value = 0;
    Q mass_sum = 0;
    for (int j = 0; j <= J; ++j) {
        ms[j] = local_measure(F, P, j);
        mass_sum += ms[j];
        value += std::pow(Pd, 2.0 * j / n) * ms[j].get_d();
    }
    Q full = 1 - Q(1) / (P * P);
    Q residual = full - mass_sum;
    residual.canonicalize();

    // Geometric decay check on the trailing levels (ratio at most 2/P).
    bool certified = residual >= 0;
    for (int j = std::max(0, J - 2); j < J && certified; ++j) {
        if (ms[j + 1] * P > ms[j] * 2) certified = false;
    }
    double tail;
    if (residual == 0) {
        tail = 0;
    } else {
        // Residual mass distributed over levels j > J with the observed
        // geometric profile c*P^-j; weight P^(2j/n) per level.
        double ratio = std::pow(Pd, 2.0 / n - 1.0);
        tail = residual.get_d() * ((Pd - 1) / Pd) * std::pow(Pd, 2.0 * (J + 1) / n) /
               (1.0 - ratio);
    }
    return {value, tail, certified, residual};
}

}  // namespace dio

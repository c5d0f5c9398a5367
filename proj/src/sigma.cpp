// Archimedean density sigma_F = area{(x,y) : |F(x,y)| <= 1}.
//
// The region is a union of rays from the origin: along (u,v) it extends to
// r = |F(u,v)|^{-1/n}. Parametrizing directions by the perimeter of the unit
// square and applying Green's theorem, the area reduces to two 1-D integrals
//   sigma_F = int_{-1}^{1} |F(1,t)|^{-2/n} dt + int_{-1}^{1} |F(s,1)|^{-2/n} ds
// (opposite edges pair up since |F(-u,-v)| = |F(u,v)|). The integrands have
// integrable |.|^{-2/n} singularities at the real roots, n >= 3.

#include "dio/count.hpp"

#include "dio/intpoly.hpp"
#include "dio/padic.hpp"
#include "dio/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <stdexcept>
#include <vector>

namespace dio {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double up(double x) { return std::nextafter(x, kInf); }
double dn(double x) { return std::nextafter(x, -kInf); }

struct DI {
    double lo, hi;
};

DI di_add(DI a, DI b) { return {dn(a.lo + b.lo), up(a.hi + b.hi)}; }

DI di_mul(DI a, DI b) {
    double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo,
           p4 = a.hi * b.hi;
    return {dn(std::min(std::min(p1, p2), std::min(p3, p4))),
            up(std::max(std::max(p1, p2), std::max(p3, p4)))};
}

std::vector<DI> di_coeffs(const ZPoly& g) {
    std::vector<DI> c;
    c.reserve(g.c.size());
    for (const auto& z : g.c) {
        double d = z.get_d();
        c.push_back({dn(d), up(d)});
    }
    if (c.empty()) c.push_back({0, 0});
    return c;
}

DI di_horner(const std::vector<DI>& c, DI x) {
    DI v = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) v = di_add(di_mul(v, x), c[i]);
    return v;
}

// x^e with directed slack (x > 0)
double pow_up(double x, double e) { return up(std::pow(x, e) * (1 + 1e-12)); }
double pow_dn(double x, double e) {
    return std::max(0.0, dn(std::pow(x, e) * (1 - 1e-12)));
}

struct Cell {
    int which;  // 0: |F(1,t)|, 1: |F(s,1)|
    double a, b;
    double lo, hi;
};

struct CellCmp {
    bool operator()(const Cell& x, const Cell& y) const {
        return (x.hi - x.lo) < (y.hi - y.lo);
    }
};

// rigorous enclosure of int_a^b |g|^{-alpha}
void cell_bounds(const std::vector<DI>& g, const std::vector<DI>& gd,
                 double alpha, Cell& c) {
    DI gr = di_horner(g, {c.a, c.b});
    double w = c.b - c.a;
    double m = 0, M = 0;
    if (gr.lo > 0) {
        m = gr.lo;
        M = gr.hi;
    } else if (gr.hi < 0) {
        m = -gr.hi;
        M = -gr.lo;
    }
    if (m > 0) {
        c.lo = dn(w * pow_dn(M, -alpha));
        c.hi = up(w * pow_up(m, -alpha));
        return;
    }
    c.lo = 0;
    DI dgr = di_horner(gd, {c.a, c.b});
    if (dgr.lo > 0 || dgr.hi < 0) {
        // g monotone with slope at least mp: |g(t)| >= mp*|t - theta| for at
        // most one zero theta in the cell, so the integral is at most
        // mp^-alpha * 2*(w/2)^(1-alpha)/(1-alpha)
        double mp = dgr.lo > 0 ? dgr.lo : -dgr.hi;
        c.hi = up(2 * pow_up(mp, -alpha) * pow_up(w / 2, 1 - alpha) /
                  dn(1 - alpha));
    } else {
        c.hi = kInf;
    }
}

}  // namespace

AreaEstimate sigma_archimedean(const BinaryForm& F, double tol,
                               long max_cells) {
    int n = F.degree();
    if (n < 3) throw std::invalid_argument("sigma: degree must be >= 3");
    if (discriminant(F) == 0)
        throw std::invalid_argument("sigma: discriminant must be non-zero");
    if (!(tol > 0)) throw std::invalid_argument("sigma: tol must be positive");
    double alpha = 2.0 / n;

    ZPoly g1 = F.dehomogenize_y();  // F(1, t)
    ZPoly g2 = F.dehomogenize();    // F(s, 1)
    std::vector<DI> G[2] = {di_coeffs(g1), di_coeffs(g2)};
    std::vector<DI> GD[2] = {di_coeffs(derivative(g1)), di_coeffs(derivative(g2))};

    std::priority_queue<Cell, std::vector<Cell>, CellCmp> heap;
    // cells with an infinite upper bound are counted, not summed, so the
    // running totals stay finite (inf - inf would poison them with NaN)
    double total_lo = 0, total_hi = 0;
    long inf_count = 0;
    auto add = [&](const Cell& c) {
        total_lo += c.lo;
        if (c.hi == kInf) ++inf_count;
        else total_hi += c.hi;
    };
    auto remove = [&](const Cell& c) {
        total_lo -= c.lo;
        if (c.hi == kInf) --inf_count;
        else total_hi -= c.hi;
    };
    auto push = [&](Cell c) {
        cell_bounds(G[c.which], GD[c.which], alpha, c);
        add(c);
        heap.push(c);
    };
    for (int which = 0; which < 2; ++which)
        for (int i = 0; i < 8; ++i)
            push({which, -1 + i / 4.0, -1 + (i + 1) / 4.0, 0, 0});

    long popped = 0;
    while ((inf_count > 0 || (total_hi - total_lo) / 2 > tol) &&
           popped < max_cells && !heap.empty()) {
        Cell c = heap.top();
        heap.pop();
        ++popped;
        remove(c);
        double mid = (c.a + c.b) / 2;
        if (mid <= c.a || mid >= c.b) {
            // cannot split further at double resolution: keep the cell's
            // contribution in the totals and refine elsewhere
            add(c);
            continue;
        }
        push({c.which, c.a, mid, 0, 0});
        push({c.which, mid, c.b, 0, 0});
    }
    AreaEstimate out;
    double hi_final = inf_count > 0 ? kInf : total_hi;
    out.value = (total_lo + hi_final) / 2;
    out.radius = (hi_final - total_lo) / 2;
    out.method = "quadrature";
    return out;
}

namespace {

// int_{-1}^{1} |t - theta|^{-alpha} dt, closed form
double singular_integral(double theta, double alpha) {
    double beta = 1 - alpha;
    if (theta >= -1 && theta <= 1)
        return (std::pow(1 + theta, beta) + std::pow(1 - theta, beta)) / beta;
    if (theta > 1)
        return (std::pow(theta + 1, beta) - std::pow(theta - 1, beta)) / beta;
    return (std::pow(1 - theta, beta) - std::pow(-1 - theta, beta)) / beta;
}

struct McAcc {
    double sum = 0, sumsq = 0;
    long count = 0;
};

}  // namespace

AreaEstimate sigma_monte_carlo(const BinaryForm& F, long samples,
                               uint64_t seed, int threads) {
    int n = F.degree();
    if (n < 3) throw std::invalid_argument("sigma: degree must be >= 3");
    if (discriminant(F) == 0)
        throw std::invalid_argument("sigma: discriminant must be non-zero");
    if (samples < 1) throw std::invalid_argument("sigma: samples must be >= 1");
    double alpha = 2.0 / n;

    double value = 0, var_total = 0;
    for (int which = 0; which < 2; ++which) {
        ZPoly g = which == 0 ? F.dehomogenize_y() : F.dehomogenize();
        ZPoly gd = derivative(g);
        std::vector<double> gc, gdc;
        for (const auto& z : g.c) gc.push_back(z.get_d());
        for (const auto& z : gd.c) gdc.push_back(z.get_d());
        auto ev = [](const std::vector<double>& c, double x) {
            double v = 0;
            for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
            return v;
        };
        // singularity subtraction: h = |g|^-a - sum c_i |t - theta_i|^-a is
        // bounded, so plain Monte-Carlo on h has finite variance
        std::vector<double> thetas, cs;
        for (double th : real_roots_double(g)) {
            if (std::abs(th) > 1.5) continue;
            thetas.push_back(th);
            double slope = std::abs(ev(gdc, th));
            cs.push_back(std::pow(slope, -alpha));
        }
        double analytic = 0;
        for (size_t i = 0; i < thetas.size(); ++i)
            analytic += cs[i] * singular_integral(thetas[i], alpha);

        const long block = 8192;
        long nblocks = (samples + block - 1) / block;
        McAcc acc = parallel_chunks<McAcc>(
            0, nblocks, 1, threads, McAcc{},
            [&](long ba, long) {
                McAcc a;
                std::mt19937_64 rng(seed ^
                                    (0x9E3779B97F4A7C15ULL *
                                     (static_cast<uint64_t>(ba) + 1 +
                                      static_cast<uint64_t>(which) * 0x100000)));
                std::uniform_real_distribution<double> U(-1.0, 1.0);
                long cnt = std::min(block, samples - ba * block);
                for (long i = 0; i < cnt; ++i) {
                    double t = U(rng);
                    double h = std::pow(std::abs(ev(gc, t)), -alpha);
                    for (size_t j = 0; j < thetas.size(); ++j)
                        h -= cs[j] * std::pow(std::abs(t - thetas[j]), -alpha);
                    if (!std::isfinite(h)) h = 0;  // measure-zero hits
                    a.sum += h;
                    a.sumsq += h * h;
                    ++a.count;
                }
                return a;
            },
            [](McAcc a, McAcc b) {
                a.sum += b.sum;
                a.sumsq += b.sumsq;
                a.count += b.count;
                return a;
            });
        double mean = acc.sum / acc.count;
        double var = std::max(0.0, acc.sumsq / acc.count - mean * mean) /
                     acc.count;
        value += analytic + 2 * mean;  // interval length 2
        var_total += 4 * var;
    }
    AreaEstimate out;
    out.value = value;
    out.radius = 2.576 * std::sqrt(var_total);  // 99% CI
    out.method = "monte-carlo";
    out.seed = seed;
    return out;
}

AreaEstimate sigma_S(const BinaryForm& F, const PrimeSet& S, int J,
                     double tol) {
    AreaEstimate sig = sigma_archimedean(F, tol);
    double lo = sig.value - sig.radius, hi = sig.value + sig.radius;
    for (const auto& P : S.primes) {
        LocalFactor lf = local_factor(F, P, J);
        if (!lf.tail_certified) lf = local_factor(F, P, 2 * J + 4);
        if (!lf.tail_certified)
            throw std::domain_error(
                "sigma_S: local factor tail not certified; increase J");
        lo *= lf.value;
        hi *= lf.value + lf.tail_bound;
    }
    AreaEstimate out;
    out.value = (lo + hi) / 2;
    out.radius = (hi - lo) / 2;
    out.method = "quadrature";
    return out;
}

}  // namespace dio

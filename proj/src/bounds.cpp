#include "dio/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dio {

namespace {

const std::map<std::string, BoundName>& name_table() {
    static const std::map<std::string, BoundName> t = {
        {"lewis_mahler", BoundName::lewis_mahler},
        {"mahler84", BoundName::mahler84},
        {"bombieri_schmidt", BoundName::bombieri_schmidt},
        {"stewart91", BoundName::stewart91},
        {"evertse97", BoundName::evertse97},
        {"evertse84", BoundName::evertse84},
        {"beukers_schlickewei", BoundName::beukers_schlickewei},
        {"thm15", BoundName::thm15},
        {"est_lower", BoundName::est_lower},
        {"ks_lower", BoundName::ks_lower},
        {"bugeaud_gyory", BoundName::bugeaud_gyory},
    };
    return t;
}

[[noreturn]] void fail(const std::string& msg) {
    throw std::domain_error("eval_bound: " + msg);
}

Q need(const std::map<std::string, Q>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) fail("missing parameter '" + key + "'");
    return it->second;
}

long need_int(const std::map<std::string, Q>& params, const std::string& key,
              long min) {
    Q v = need(params, key);
    if (v.get_den() != 1) fail("parameter '" + key + "' must be an integer");
    if (v.get_num() < min) {
        std::ostringstream os;
        os << "parameter '" << key << "' must be >= " << min;
        fail(os.str());
    }
    return v.get_num().get_si();
}

Z pow_z(const Z& b, unsigned long e) {
    Z r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

double log_z(const Z& v) {
    signed long exp2;
    double d = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log(d) + exp2 * std::log(2.0);
}

void finish_exact(BoundSpec& b, const Z& v) {
    b.exact = v;
    b.log_value = log_z(v);
    b.log_form = b.log_value > 700;
    b.value = b.log_form ? std::numeric_limits<double>::infinity() : v.get_d();
}

void finish_log(BoundSpec& b, double log_value) {
    if (!std::isfinite(log_value)) fail("bound is not finite");
    b.log_value = log_value;
    b.log_form = log_value > 700;
    b.value = b.log_form ? std::numeric_limits<double>::infinity()
                         : std::exp(log_value);
}

}  // namespace

BoundName bound_name_from_string(const std::string& s) {
    auto it = name_table().find(s);
    if (it == name_table().end())
        throw std::invalid_argument("unknown bound name: " + s);
    return it->second;
}

std::string to_string(BoundName n) {
    for (const auto& [s, v] : name_table())
        if (v == n) return s;
    return "?";
}

BoundSpec eval_bound(BoundName name, const std::map<std::string, Q>& params) {
    BoundSpec b;
    b.name = name;
    b.params = params;
    b.side = BoundSide::upper_count;
    switch (name) {
        case BoundName::lewis_mahler: {
            long n = need_int(params, "n", 3);
            long t = need_int(params, "t", 0);
            Q H = need(params, "H");
            Q c1 = need(params, "c1");
            Q c2 = need(params, "c2");
            if (H <= 0 || c1 <= 0 || c2 <= 0)
                fail("H, c1, c2 must be positive");
            double l1 = std::sqrt(static_cast<double>(n)) *
                        std::log(Q(c1 * n * H).get_d());
            double l2 = (t + 1) * std::log(Q(c2 * n).get_d());
            // log(e^l1 + e^l2)
            double m = std::max(l1, l2);
            finish_log(b, m + std::log1p(std::exp(std::min(l1, l2) - m)));
            break;
        }
        case BoundName::mahler84: {
            long n = need_int(params, "n", 3);
            long om = need_int(params, "omega", 0);
            finish_exact(b, 64 * pow_z(Z(n), om + 1));
            break;
        }
        case BoundName::bombieri_schmidt: {
            long n = need_int(params, "n", 3);
            long om = need_int(params, "omega", 0);
            Q c0 = need(params, "c0");
            if (c0 <= 0) fail("c0 must be positive");
            Q v = c0 * Q(pow_z(Z(n), om + 1));
            v.canonicalize();
            if (v.get_den() == 1) finish_exact(b, Z(v.get_num()));
            else finish_log(b, std::log(v.get_d()));
            break;
        }
        case BoundName::stewart91: {
            long n = need_int(params, "n", 3);
            long om = need_int(params, "omega", 0);
            finish_exact(b, 4200 * pow_z(Z(n), om + 1));
            break;
        }
        case BoundName::evertse97: {
            long n = need_int(params, "n", 3);
            long t = need_int(params, "t", 0);
            finish_exact(b, 2 * pow_z(Z(100000) * n, t + 1));
            break;
        }
        case BoundName::evertse84: {
            long t = need_int(params, "t", 0);
            finish_exact(b, pow_z(Z(7), 2 * t + 4));
            break;
        }
        case BoundName::beukers_schlickewei: {
            long r = need_int(params, "r", 0);
            finish_exact(b, pow_z(Z(2), 16 * (r + 1)));
            break;
        }
        case BoundName::thm15: {
            long n = need_int(params, "n", 3);
            Q beta1 = need(params, "beta1");
            if (beta1 <= 2) fail("beta1 must exceed 2");
            double delta = 1 - 2 / beta1.get_d();
            double l3n = std::log(3.0 * n);
            double v = std::pow(2.0, 30) / (delta * delta * delta) * l3n *
                       std::log(l3n / delta);
            finish_log(b, std::log(v));
            break;
        }
        case BoundName::est_lower: {
            b.side = BoundSide::lower_count;
            long t = need_int(params, "t", 2);
            Q eps = need(params, "eps");
            if (eps <= 0 || eps >= 4) fail("eps must lie in (0, 4)");
            double lt = std::log(static_cast<double>(t));
            if (lt <= 0) fail("t must exceed 1");
            finish_log(b, (4 - eps.get_d()) * std::sqrt(t / lt));
            break;
        }
        case BoundName::ks_lower: {
            b.side = BoundSide::lower_count;
            long t = need_int(params, "t", 1);
            Q eps = need(params, "eps");
            double e2 = 2 - std::sqrt(2.0);
            if (eps <= 0 || eps.get_d() >= e2)
                fail("eps must lie in (0, 2 - sqrt(2))");
            finish_log(b, std::pow(static_cast<double>(t), e2 - eps.get_d()));
            break;
        }
        case BoundName::bugeaud_gyory: {
            b.side = BoundSide::height_bound;
            long n = need_int(params, "n", 3);
            Q H = need(params, "H");
            Q M = need(params, "M");
            if (H < 3) fail("H must be >= 3");
            if (M < 3) fail("M must be >= 3 (log M degenerates at M=1)");
            double log_cn = 3.0 * (n + 9) * std::log(3.0) +
                            18.0 * (n + 1) * std::log(static_cast<double>(n));
            b.components["log_c_n"] = log_cn;
            double lH = std::log(H.get_d());
            double bound_log = log_cn + (2 * n - 2) * lH +
                               (2 * n - 1) * std::log(lH) +
                               std::log(std::log(M.get_d()));
            // the bound itself (on log|p,q|) is astronomically large; carry it
            // in log form
            finish_log(b, bound_log);
            break;
        }
    }
    return b;
}

VerifyReport verify_counts(const Z& observed, const BoundSpec& bound) {
    if (observed < 0)
        throw std::invalid_argument("verify_counts: observed must be >= 0");
    VerifyReport r;
    r.observed = observed;
    r.bound = bound;
    std::ostringstream os;
    switch (bound.side) {
        case BoundSide::upper_count: {
            bool pass;
            if (bound.exact) {
                pass = observed <= *bound.exact;
            } else if (observed == 0) {
                pass = true;
            } else {
                pass = log_z(observed) <= bound.log_value;
            }
            r.status = pass ? "PASS" : "FAIL";
            os << "observed " << observed << (pass ? " <= " : " > ")
               << to_string(bound.name) << " upper bound";
            r.detail = os.str();
            break;
        }
        case BoundSide::lower_count:
            r.status = "INFO";
            os << to_string(bound.name)
               << " is a lower bound over families of instances; "
                  "not asserted per-instance (observed "
               << observed << ")";
            r.detail = os.str();
            break;
        case BoundSide::height_bound:
            throw std::invalid_argument(
                "verify_counts: height bound is not comparable to a count");
    }
    return r;
}

}  // namespace dio

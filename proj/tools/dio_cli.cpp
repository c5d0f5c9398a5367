// Command-line front end: parses a run configuration, dispatches to the
// library, serializes results as JSON lines (or CSV), and caches completed
// records keyed by a content hash of the canonical config.

#include <CLI11.hpp>
#include <json.hpp>

#include "dio/approx.hpp"
#include "dio/bounds.hpp"
#include "dio/count.hpp"
#include "dio/forms.hpp"
#include "dio/padic.hpp"
#include "dio/solve.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <map>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <unistd.h>

using json = nlohmann::json;
using namespace dio;

namespace {

constexpr const char* kVersion = "1.0.0";

// ---------------------------------------------------------------------------
// parsing helpers
// ---------------------------------------------------------------------------

Z parse_z(const std::string& s) {
    try {
        return Z(s);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid integer: " + s);
    }
}

Q parse_q(const std::string& s) {
    try {
        Q q(s);
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid rational: " + s);
    }
}

std::vector<Z> parse_coeff_array(const std::string& s, const char* what) {
    json j;
    try {
        j = json::parse(s);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) +
                                    ": expected a JSON array, got: " + s);
    }
    if (!j.is_array() || j.empty())
        throw std::invalid_argument(std::string(what) +
                                    ": expected a non-empty JSON array");
    std::vector<Z> out;
    for (const auto& e : j) {
        if (e.is_number_integer())
            out.push_back(Z(e.get<long>()));
        else if (e.is_string())
            out.push_back(parse_z(e.get<std::string>()));
        else
            throw std::invalid_argument(std::string(what) +
                                        ": entries must be integers or strings");
    }
    return out;
}

BinaryForm parse_form(const std::string& s) {
    return BinaryForm(parse_coeff_array(s, "form"));
}

ZPoly parse_poly(const std::string& s) {
    // lowest-degree-first coefficient list
    ZPoly p;
    p.c = parse_coeff_array(s, "poly");
    p.trim();
    return p;
}

PrimeSet parse_primes(const std::vector<std::string>& v) {
    std::vector<Z> ps;
    for (const auto& s : v) ps.push_back(parse_z(s));
    return PrimeSet(ps);  // validates primality
}

std::vector<Z> parse_grid(const std::vector<std::string>& v) {
    std::vector<Z> out;
    for (const auto& s : v) out.push_back(parse_z(s));
    for (size_t i = 0; i < out.size(); ++i)
        if (out[i] <= 0 || (i > 0 && out[i] <= out[i - 1]))
            throw std::invalid_argument("grid: must be positive and increasing");
    return out;
}

// ---------------------------------------------------------------------------
// serialization helpers (big integers and rationals as strings)
// ---------------------------------------------------------------------------

json jz(const Z& z) { return z.get_str(); }
json jq(const Q& q) { return q.get_str(); }

json jform(const BinaryForm& F) {
    json a = json::array();
    for (const auto& c : F.coeffs) a.push_back(c.get_str());
    return a;
}

json jpoly(const ZPoly& p) {
    json a = json::array();
    for (const auto& c : p.c) a.push_back(c.get_str());
    return a;
}

json jprimes(const PrimeSet& S) {
    json a = json::array();
    for (const auto& p : S.primes) a.push_back(p.get_str());
    return a;
}

json jcount(const CountResult& r) {
    return {{"count", jz(r.count)},
            {"core_box", jz(r.core_box)},
            {"scan_box", jz(r.scan_box)},
            {"margin_hits", jz(r.margin_hits)}};
}

json jarea(const AreaEstimate& a) {
    return {{"value", a.value},
            {"radius", a.radius},
            {"method", a.method},
            {"seed", a.seed}};
}

json jbound(const BoundSpec& b) {
    json p = json::object();
    for (const auto& [k, v] : b.params) p[k] = v.get_str();
    json out = {{"name", to_string(b.name)},
                {"params", p},
                {"log_form", b.log_form},
                {"log_value", b.log_value},
                {"side", b.side == BoundSide::upper_count  ? "upper_count"
                         : b.side == BoundSide::lower_count ? "lower_count"
                                                            : "height_bound"}};
    if (b.log_form)
        out["value"] = nullptr;
    else
        out["value"] = b.value;
    if (b.exact) out["exact"] = b.exact->get_str();
    if (!b.components.empty()) out["components"] = b.components;
    return out;
}

// ---------------------------------------------------------------------------
// config hashing and cache
// ---------------------------------------------------------------------------

std::string fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

struct Cache {
    std::string dir;  // empty: disabled

    std::string path(const std::string& key) const {
        return dir + "/" + key + ".json";
    }

    std::optional<json> lookup(const std::string& key) const {
        if (dir.empty()) return std::nullopt;
        std::ifstream in(path(key));
        if (!in) return std::nullopt;
        try {
            json j;
            in >> j;
            return j;
        } catch (const std::exception& e) {
            std::cerr << "warning: corrupt cache record " << path(key)
                      << " treated as miss (" << e.what() << ")\n";
            return std::nullopt;
        }
    }

    void store(const std::string& key, const json& record) const {
        if (dir.empty()) return;
        std::string tmp = path(key) + ".tmp." +
                          std::to_string(static_cast<long>(getpid()));
        {
            std::ofstream out(tmp);
            if (!out) return;
            out << record.dump(2) << "\n";
        }
        std::rename(tmp.c_str(), path(key).c_str());
    }
};

// ---------------------------------------------------------------------------
// output
// ---------------------------------------------------------------------------

std::string csv_cell(const json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void emit(const json& payload, const std::string& format,
          const std::string& hash, bool cached) {
    if (format == "json") {
        if (payload.contains("rows"))
            for (const auto& row : payload["rows"])
                std::cout << row.dump() << "\n";
        json summary;
        for (const auto& [k, v] : payload.items())
            if (k != "rows") summary[k] = v;
        summary["record"] = "summary";
        summary["config_hash"] = hash;
        summary["version"] = kVersion;
        summary["cached"] = cached;
        std::cout << summary.dump() << "\n";
        return;
    }
    // csv
    if (payload.contains("rows") && !payload["rows"].empty()) {
        const auto& rows = payload["rows"];
        std::vector<std::string> cols;
        for (const auto& [k, v] : rows[0].items()) cols.push_back(k);
        for (size_t i = 0; i < cols.size(); ++i)
            std::cout << (i ? "," : "") << csv_cell(cols[i]);
        std::cout << "\n";
        for (const auto& row : rows) {
            for (size_t i = 0; i < cols.size(); ++i)
                std::cout << (i ? "," : "")
                          << (row.contains(cols[i]) ? csv_cell(row[cols[i]])
                                                    : "");
            std::cout << "\n";
        }
    } else {
        std::cout << "key,value\n";
        for (const auto& [k, v] : payload.items())
            if (k != "rows")
                std::cout << csv_cell(k) << "," << csv_cell(v) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Desk-scale experiments on Thue, Thue-Mahler, and S-unit "
                 "equations"};
    app.require_subcommand(0, 1);
    app.set_config("--config", "", "key=value config file (flags override)");

    int threads = 1;
    uint64_t seed = 0;
    std::string format = "json";
    const char* env_cache = std::getenv("DIO_CACHE_DIR");
    std::string cache_dir = env_cache ? env_cache : "";
    app.add_option("--threads", threads, "worker threads")
        ->check(CLI::Range(1, 1024));
    app.add_option("--seed", seed, "random seed (part of the config hash)");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--cache-dir", cache_dir,
                   "cache directory (default: $DIO_CACHE_DIR; empty disables)");

    // Each leaf subcommand fills `config` (canonical, hashed) and `runner`.
    json config;
    std::function<json(const Cache&, const json&)> runner;

    // shared option storage
    std::string form_s, poly_s, m_s = "1", B_s = "100", Z_s = "100",
                M_s = "100", a_s = "1", b_s = "1", k_q = "1", beta_s,
                beta1_s, h1_s, p_s, q_s, obs_s, name_s, tol_s = "1e-3";
    std::vector<std::string> primes_v, grid_v, gamma_v;
    int E = 10, kk = 2, J = 8, N = 8, jj = 0, t_i = 0, shells = 4, top = 10,
        margin = 2;
    long pmax = 10000, samples = 1000000;
    bool poles = false, use_mc = false;
    std::string cb_s;

    auto add_form = [&](CLI::App* c) {
        c->add_option("--form", form_s,
                      "binary form coefficients, highest X power first, e.g. "
                      "[1,0,0,-2]")
            ->required();
    };
    auto add_primes = [&](CLI::App* c, bool required) {
        auto* o = c->add_option("--primes", primes_v, "prime set");
        if (required) o->required();
    };

    // ---------------- solve ----------------
    auto* solve = app.add_subcommand("solve", "equation solvers");
    {
        auto* c = solve->add_subcommand("thue", "F(p,q) = m over a box");
        add_form(c);
        c->add_option("-m,--target", m_s, "target value");
        c->add_option("-B,--box", B_s, "search box |p|,|q| <= B");
        c->add_option("--certified-bound", cb_s,
                      "caller-proven height bound (sets certified_complete)");
        c->callback([&] {
            BinaryForm F = parse_form(form_s);
            Z m = parse_z(m_s), B = parse_z(B_s);
            std::optional<Z> cb;
            if (!cb_s.empty()) cb = parse_z(cb_s);
            config = {{"cmd", "solve.thue"},
                      {"form", jform(F)},
                      {"m", jz(m)},
                      {"B", jz(B)},
                      {"certified_bound", cb ? jz(*cb) : json(nullptr)}};
            runner = [&, F, m, B, cb](const Cache&, const json&) {
                ThueResult r = solve_thue(F, m, B, threads, cb);
                json rows = json::array();
                for (const auto& [p, q] : r.solutions)
                    rows.push_back({{"p", jz(p)}, {"q", jz(q)}});
                return json{{"rows", rows},
                            {"count", r.solutions.size()},
                            {"box", jz(r.box)},
                            {"certified_complete", r.certified_complete}};
            };
        });
    }
    {
        auto* c = solve->add_subcommand("tm", "|F(p,q)| an S-unit over a box");
        add_form(c);
        add_primes(c, true);
        c->add_option("-B,--box", B_s, "search box");
        c->callback([&] {
            BinaryForm F = parse_form(form_s);
            PrimeSet S = parse_primes(primes_v);
            Z B = parse_z(B_s);
            config = {{"cmd", "solve.tm"},
                      {"form", jform(F)},
                      {"primes", jprimes(S)},
                      {"B", jz(B)}};
            runner = [&, F, S, B](const Cache&, const json&) {
                TMResult r = solve_thue_mahler(F, S, B, threads);
                json rows = json::array();
                for (const auto& s : r.solutions)
                    rows.push_back({{"p", jz(s.p)},
                                    {"q", jz(s.q)},
                                    {"value", jz(s.value)},
                                    {"z", s.z}});
                return json{{"rows", rows},
                            {"count", r.solutions.size()},
                            {"box", jz(r.box)}};
            };
        });
    }
    {
        auto* c = solve->add_subcommand("sunit", "x + y = 1 in S-units");
        add_primes(c, true);
        c->add_option("-E,--exponent", E, "exponent bound |z_i| <= E");
        c->callback([&] {
            PrimeSet S = parse_primes(primes_v);
            config = {{"cmd", "solve.sunit"},
                      {"primes", jprimes(S)},
                      {"E", E}};
            runner = [&, S](const Cache&, const json&) {
                auto sols = solve_sunit(S, E, threads);
                json rows = json::array();
                for (const auto& s : sols)
                    rows.push_back({{"x", jq(s.x)},
                                    {"y", jq(s.y)},
                                    {"zx", s.zx},
                                    {"zy", s.zy}});
                return json{{"rows", rows}, {"count", sols.size()}};
            };
        });
    }
    {
        auto* c = solve->add_subcommand("wsunit", "a x + b y = 1 in S-units");
        add_primes(c, true);
        c->add_option("-a", a_s, "coefficient a");
        c->add_option("-b", b_s, "coefficient b");
        c->add_option("-E,--exponent", E, "exponent bound");
        c->callback([&] {
            Q a = parse_q(a_s), b = parse_q(b_s);
            PrimeSet S = parse_primes(primes_v);
            config = {{"cmd", "solve.wsunit"},
                      {"a", jq(a)},
                      {"b", jq(b)},
                      {"primes", jprimes(S)},
                      {"E", E}};
            runner = [&, a, b, S](const Cache&, const json&) {
                auto sols = solve_weighted_sunit(a, b, S, E);
                json rows = json::array();
                for (const auto& s : sols)
                    rows.push_back({{"x", jq(s.x)}, {"y", jq(s.y)}});
                return json{{"rows", rows}, {"count", sols.size()}};
            };
        });
    }

    // ---------------- count ----------------
    auto* count = app.add_subcommand("count", "counting and densities");
    {
        auto* c = count->add_subcommand("A", "A_{F,S}(Z)");
        add_form(c);
        add_primes(c, false);
        c->add_option("-Z,--bound", Z_s, "value bound");
        c->add_option("--margin", margin, "scan box margin factor");
        c->callback([&] {
            BinaryForm F = parse_form(form_s);
            PrimeSet S = parse_primes(primes_v);
            Z Zb = parse_z(Z_s);
            config = {{"cmd", "count.A"},
                      {"form", jform(F)},
                      {"primes", jprimes(S)},
                      {"Z", jz(Zb)},
                      {"margin", margin}};
            runner = [&, F, S, Zb](const Cache&, const json&) {
                return jcount(count_A(F, S, Zb, threads, margin));
            };
        });
    }
    {
        auto* c = count->add_subcommand("R", "distinct represented values");
        add_form(c);
        c->add_option("-Z,--bound", Z_s, "value bound");
        c->add_option("--margin", margin, "scan box margin factor");
        c->callback([&] {
            BinaryForm F = parse_form(form_s);
            Z Zb = parse_z(Z_s);
            config = {{"cmd", "count.R"},
                      {"form", jform(F)},
                      {"Z", jz(Zb)},
                      {"margin", margin}};
            runner = [&, F, Zb](const Cache&, const json&) {
                return jcount(count_R(F, Zb, threads, margin));
            };
        });
    }
    {
        auto* c = count->add_subcommand("Rk", "distinct k-free values");
        add_form(c);
        c->add_option("-k", kk, "k-free parameter")->check(CLI::Range(2, 64));
        c->add_option("-Z,--bound", Z_s, "value bound");
        c->callback([&] {
            BinaryForm F = parse_form(form_s);
            Z Zb = parse_z(Z_s);
            config = {{"cmd", "count.Rk"},
                      {"form", jform(F)},
                      {"k", kk},
                      {"Z", jz(Zb)}};
            runner = [&, F, Zb](const Cache&, const json&) {
                return jcount(count_Rk(F, kk, Zb, threads));
            };
        });
    }
    {
        auto* c = count->add_subcommand("Nk", "pairs with k-free values");
        add_form(c);
        c->add_option("-k", kk, "k-free parameter")->check(CLI::Range(2, 64));
        c->add_option("-Z,--bound", Z_s, "value bound");
        c->callback([&] {
            BinaryForm F = parse_form(form_s);
            Z Zb = parse_z(Z_s);
            config = {{"cmd", "count.Nk"},
                      {"form", jform(F)},
                      {"k", kk},
                      {"Z", jz(Zb)}};
            runner = [&, F, Zb](const Cache&, const json&) {
                return jcount(count_Nk(F, kk, Zb, threads));
            };
        });
    }
    {
        auto* c = count->add_subcommand("sigma", "archimedean density sigma_F");
        add_form(c);
        c->add_option("--tol", tol_s, "certified radius target");
        c->add_flag("--mc", use_mc, "Monte-Carlo estimator instead");
        c->add_option("--samples", samples, "MC sample count");
        c->callback([&] {
            BinaryForm F = parse_form(form_s);
            double tol = std::stod(tol_s);
            config = {{"cmd", "count.sigma"},
                      {"form", jform(F)},
                      {"tol", tol},
                      {"mc", use_mc},
                      {"samples", use_mc ? json(samples) : json(nullptr)}};
            runner = [&, F, tol](const Cache&, const json&) {
                AreaEstimate a = use_mc
                                     ? sigma_monte_carlo(F, samples, seed,
                                                         threads)
                                     : sigma_archimedean(F, tol);
                return jarea(a);
            };
        });
    }
    {
        auto* c = count->add_subcommand("sigmaS", "sigma_{F,S}");
        add_form(c);
        add_primes(c, true);
        c->add_option("-J,--truncation", J, "local factor truncation");
        c->add_option("--tol", tol_s, "archimedean radius target");
        c->callback([&] {
            BinaryForm F = parse_form(form_s);
            PrimeSet S = parse_primes(primes_v);
            double tol = std::stod(tol_s);
            config = {{"cmd", "count.sigmaS"},
                      {"form", jform(F)},
                      {"primes", jprimes(S)},
                      {"J", J},
                      {"tol", tol}};
            runner = [&, F, S, tol](const Cache&, const json&) {
                return jarea(sigma_S(F, S, J, tol));
            };
        });
    }
    {
        auto* c = count->add_subcommand("lambda", "Euler product lambda_{F,k}");
        add_form(c);
        c->add_option("-k", kk, "power")->check(CLI::Range(2, 64));
        c->add_option("--pmax", pmax, "partial product cutoff");
        c->callback([&] {
            BinaryForm F = parse_form(form_s);
            config = {{"cmd", "count.lambda"},
                      {"form", jform(F)},
                      {"k", kk},
                      {"pmax", pmax}};
            runner = [&, F](const Cache&, const json&) {
                EulerProduct e = lambda_k(F, kk, pmax);
                return json{{"value", e.value},
                            {"tail_bound", e.tail_bound},
                            {"tail_validated", e.tail_validated}};
            };
        });
    }
    {
        auto* c = count->add_subcommand(
            "asym", "count series vs. the asymptotic constant");
        add_form(c);
        add_primes(c, false);
        c->add_option("--grid", grid_v, "increasing Z grid")->required();
        auto* ko = c->add_option("-k", kk, "k-free variant (requires empty S)");
        c->add_option("--tol", tol_s, "sigma radius target");
        c->add_option("-J,--truncation", J, "local factor truncation");
        c->add_option("--pmax", pmax, "lambda cutoff");
        c->callback([&] {
            BinaryForm F = parse_form(form_s);
            PrimeSet S = parse_primes(primes_v);
            std::vector<Z> grid = parse_grid(grid_v);
            std::optional<int> kopt;
            if (ko->count()) kopt = kk;
            double tol = std::stod(tol_s);
            json jg = json::array();
            for (const auto& z : grid) jg.push_back(jz(z));
            config = {{"cmd", "count.asym"},
                      {"form", jform(F)},
                      {"primes", jprimes(S)},
                      {"grid", jg},
                      {"k", kopt ? json(*kopt) : json(nullptr)},
                      {"tol", tol},
                      {"J", J},
                      {"pmax", pmax}};
            runner = [&, F, S, grid, kopt, tol](const Cache& cache,
                                                const json& cfg) {
                // prefix reuse: completed entries are stored per
                // config-minus-grid and reused for matching Z values
                json base = cfg;
                base.erase("grid");
                std::string skey = "series-" + fnv1a(base.dump());
                json store = json::object();
                if (auto hit = cache.lookup(skey)) {
                    if ((*hit).value("version", "") == kVersion &&
                        (*hit)["config"] == base)
                        store = (*hit)["entries"];
                }
                std::vector<Z> missing;
                for (const auto& z : grid)
                    if (!store.contains(z.get_str())) missing.push_back(z);
                CountSeries cs = asymptotic_report(F, S, missing, kopt,
                                                   threads, tol, J, pmax);
                for (const auto& e : cs.entries) {
                    json row = jcount(e.result);
                    row["Z"] = jz(e.Zvalue);
                    row["normalized"] = e.normalized;
                    store[e.Zvalue.get_str()] = row;
                }
                cache.store(skey, json{{"version", kVersion},
                                       {"config", base},
                                       {"entries", store}});
                json rows = json::array();
                for (const auto& z : grid) rows.push_back(store[z.get_str()]);
                return json{{"rows", rows},
                            {"reference", cs.reference},
                            {"reference_radius", cs.reference_radius},
                            {"t0", cs.t0},
                            {"error_exponent", cs.error_exponent},
                            {"log_power", cs.log_power}};
            };
        });
    }
    {
        auto* c = count->add_subcommand("richest",
                                        "values with the most representations");
        add_form(c);
        c->add_option("-M,--bound", M_s, "value bound");
        c->add_option("--top", top, "number of targets to report");
        c->callback([&] {
            BinaryForm F = parse_form(form_s);
            Z M = parse_z(M_s);
            config = {{"cmd", "count.richest"},
                      {"form", jform(F)},
                      {"M", jz(M)},
                      {"top", top}};
            runner = [&, F, M](const Cache&, const json&) {
                auto targets =
                    richest_targets(F, M, static_cast<size_t>(top), threads);
                json rows = json::array();
                for (const auto& t : targets) {
                    Z am = abs(t.m);
                    double lm = std::log(am.get_d());
                    rows.push_back(
                        {{"m", jz(t.m)},
                         {"count", t.count},
                         {"curve_log14", std::pow(lm, 0.25)},
                         {"curve_log13", std::pow(lm, 1.0 / 3)},
                         {"curve_log12", std::pow(lm, 0.5)}});
                }
                return json{{"rows", rows}};
            };
        });
    }
    {
        auto* c = count->add_subcommand("gpfscan",
                                        "greatest prime factor per dyadic shell");
        add_form(c);
        c->add_option("--shells", shells, "max dyadic shell index")
            ->check(CLI::Range(0, 24));
        c->callback([&] {
            BinaryForm F = parse_form(form_s);
            config = {{"cmd", "count.gpfscan"},
                      {"form", jform(F)},
                      {"shells", shells}};
            runner = [&, F](const Cache&, const json&) {
                auto res = gpf_scan(F, shells, threads);
                json rows = json::array();
                for (const auto& sh : res)
                    rows.push_back({{"shell", sh.shell},
                                    {"min_gpf", jz(sh.min_gpf)},
                                    {"max_gpf", jz(sh.max_gpf)},
                                    {"min_p", jz(sh.min_pair.first)},
                                    {"min_q", jz(sh.min_pair.second)},
                                    {"shape", sh.shape}});
                return json{{"rows", rows}};
            };
        });
    }

    // ---------------- approx ----------------
    auto* approx = app.add_subcommand("approx", "approximation systems");
    {
        auto* c = approx->add_subcommand("tuples", "Gamma exponent tuples");
        c->add_option("--beta", beta_s, "beta")->required();
        c->add_option("--beta1", beta1_s, "beta1")->required();
        c->add_option("-t", t_i, "number of finite places")
            ->check(CLI::Range(0, 64));
        c->callback([&] {
            Q beta = parse_q(beta_s), beta1 = parse_q(beta1_s);
            config = {{"cmd", "approx.tuples"},
                      {"beta", jq(beta)},
                      {"beta1", jq(beta1)},
                      {"t", t_i}};
            runner = [&, beta, beta1](const Cache&, const json&) {
                GammaTupleSet g = gamma_tuples(beta, beta1, t_i);
                json rows = json::array();
                for (const auto& tup : g.tuples) rows.push_back(tup);
                return json{{"rows", rows},
                            {"lambda", jq(g.lambda)},
                            {"v", g.v},
                            {"cardinality", jz(g.cardinality())}};
            };
        });
    }
    {
        auto* c = approx->add_subcommand(
            "check", "verify the approximation system at (p,q)");
        add_form(c);
        add_primes(c, false);
        c->add_option("-k", k_q, "constant k >= 1");
        c->add_option("--beta1", beta1_s, "exponent beta1")->required();
        c->add_option("--gamma", gamma_v,
                      "Gamma per place: archimedean first, then each prime")
            ->required();
        c->add_option("-p", p_s, "numerator")->required();
        c->add_option("-q", q_s, "denominator")->required();
        c->add_option("-N,--precision", N, "p-adic working precision");
        c->callback([&] {
            BinaryForm F = parse_form(form_s);
            PrimeSet S = parse_primes(primes_v);
            Q kq = parse_q(k_q), beta1 = parse_q(beta1_s);
            Z p = parse_z(p_s), q = parse_z(q_s);
            std::vector<Q> gammas;
            for (const auto& g : gamma_v) gammas.push_back(parse_q(g));
            if (gammas.size() != S.primes.size() + 1)
                throw std::invalid_argument(
                    "gamma: need one value per place (archimedean + primes)");
            config = {{"cmd", "approx.check"},
                      {"form", jform(F)},
                      {"primes", jprimes(S)},
                      {"k", jq(kq)},
                      {"beta1", jq(beta1)},
                      {"gamma", gamma_v},
                      {"p", jz(p)},
                      {"q", jz(q)},
                      {"N", N}};
            runner = [&, F, S, kq, beta1, gammas, p, q](const Cache&,
                                                        const json&) {
                ZPoly f = F.dehomogenize();
                ApproxSystem sys;
                sys.k = kq;
                sys.beta1 = beta1;
                sys.gammas = gammas;
                // archimedean place: real root nearest to p/q
                auto reals = real_roots_isolated(f);
                if (reals.empty())
                    throw std::domain_error(
                        "approx check: form has no real root");
                Q target(p, q);
                target.canonicalize();
                size_t best = 0;
                Q bd = -1;
                for (size_t i = 0; i < reals.size(); ++i) {
                    Q mid = (reals[i].lo + reals[i].hi) / 2 - target;
                    Q d = abs(mid);
                    if (bd < 0 || d < bd) {
                        bd = d;
                        best = i;
                    }
                }
                PlaceRoot pr;
                pr.archimedean = true;
                pr.real = reals[best];
                sys.roots.push_back(pr);
                for (const auto& P : S.primes) {
                    PAdicRootsResult rr = padic_roots_with_poles(f, P, N);
                    if (rr.roots.empty())
                        throw std::domain_error(
                            "approx check: no root in Q_" + P.get_str());
                    size_t bi = 0;
                    Q bdist = -1;
                    for (size_t i = 0; i < rr.roots.size(); ++i) {
                        Q d = padic_distance(rr.roots[i], p, q).value;
                        if (bdist < 0 || d < bdist) {
                            bdist = d;
                            bi = i;
                        }
                    }
                    PlaceRoot fr;
                    fr.archimedean = false;
                    fr.padic = rr.roots[bi];
                    sys.roots.push_back(fr);
                }
                SystemCheck sc = check_system(sys, p, q);
                json rows = json::array();
                for (const auto& pl : sc.places)
                    rows.push_back({{"gamma", jq(pl.gamma)},
                                    {"holds", pl.holds},
                                    {"log10_margin", pl.log10_margin}});
                return json{{"rows", rows}, {"holds", sc.holds}};
            };
        });
    }
    {
        auto* c = approx->add_subcommand("gap", "gap principle threshold");
        c->add_option("-k", k_q, "constant k >= 1");
        c->add_option("--beta1", beta1_s, "exponent beta1")->required();
        c->add_option("--h1", h1_s, "first solution height")->required();
        c->callback([&] {
            Q kq = parse_q(k_q), beta1 = parse_q(beta1_s);
            Z h1 = parse_z(h1_s);
            config = {{"cmd", "approx.gap"},
                      {"k", jq(kq)},
                      {"beta1", jq(beta1)},
                      {"h1", jz(h1)}};
            runner = [&, kq, beta1, h1](const Cache&, const json&) {
                Q t = gap_threshold(kq, beta1, h1);
                return json{{"threshold", jq(t)},
                            {"threshold_double", t.get_d()}};
            };
        });
    }

    // ---------------- padic ----------------
    auto* padic = app.add_subcommand("padic", "p-adic computations");
    {
        auto* c = padic->add_subcommand("roots", "roots of f in Z_P (or Q_P)");
        c->add_option("--poly", poly_s,
                      "polynomial coefficients, lowest degree first")
            ->required();
        c->add_option("-P,--prime", p_s, "prime")->required();
        c->add_option("-N,--precision", N, "precision P^N");
        c->add_flag("--poles", poles, "include roots outside Z_P");
        c->callback([&] {
            ZPoly f = parse_poly(poly_s);
            Z P = parse_z(p_s);
            config = {{"cmd", "padic.roots"},
                      {"poly", jpoly(f)},
                      {"P", jz(P)},
                      {"N", N},
                      {"poles", poles}};
            runner = [&, f, P](const Cache&, const json&) {
                PAdicRootsResult r = poles ? padic_roots_with_poles(f, P, N)
                                           : padic_roots(f, P, N);
                json rows = json::array();
                for (const auto& z : r.roots)
                    rows.push_back({{"residue", jz(z.residue)},
                                    {"precision", z.precision},
                                    {"simple", z.simple},
                                    {"pole_at_infinity", z.pole_at_infinity},
                                    {"undecided", false}});
                for (const auto& z : r.undecided)
                    rows.push_back({{"residue", jz(z.residue)},
                                    {"precision", z.precision},
                                    {"simple", z.simple},
                                    {"pole_at_infinity", z.pole_at_infinity},
                                    {"undecided", true}});
                return json{{"rows", rows},
                            {"roots", r.roots.size()},
                            {"undecided", r.undecided.size()}};
            };
        });
    }
    {
        auto* c = padic->add_subcommand("rho", "rho_F(m) solution count");
        add_form(c);
        c->add_option("-m,--modulus", m_s, "modulus")->required();
        c->callback([&] {
            BinaryForm F = parse_form(form_s);
            Z m = parse_z(m_s);
            config = {{"cmd", "padic.rho"},
                      {"form", jform(F)},
                      {"m", jz(m)}};
            runner = [&, F, m](const Cache&, const json&) {
                return json{{"rho", jz(rho(F, m))}};
            };
        });
    }
    {
        auto* c = padic->add_subcommand("measure", "local measure m_{P,j}");
        add_form(c);
        c->add_option("-P,--prime", p_s, "prime")->required();
        c->add_option("-j", jj, "valuation level")->check(CLI::Range(0, 64));
        c->callback([&] {
            BinaryForm F = parse_form(form_s);
            Z P = parse_z(p_s);
            config = {{"cmd", "padic.measure"},
                      {"form", jform(F)},
                      {"P", jz(P)},
                      {"j", jj}};
            runner = [&, F, P](const Cache&, const json&) {
                Q m = local_measure(F, P, jj);
                return json{{"measure", jq(m)},
                            {"measure_double", m.get_d()}};
            };
        });
    }

    // ---------------- forms ----------------
    auto* forms = app.add_subcommand("forms", "binary form utilities");
    {
        auto* c = forms->add_subcommand("disc", "discriminant and height");
        add_form(c);
        c->callback([&] {
            BinaryForm F = parse_form(form_s);
            config = {{"cmd", "forms.disc"}, {"form", jform(F)}};
            runner = [&, F](const Cache&, const json&) {
                return json{{"discriminant", jz(discriminant(F))},
                            {"height", jz(height(F))},
                            {"degree", F.degree()}};
            };
        });
    }
    {
        auto* c = forms->add_subcommand("factor", "factorization over Q");
        add_form(c);
        c->callback([&] {
            BinaryForm F = parse_form(form_s);
            config = {{"cmd", "forms.factor"}, {"form", jform(F)}};
            runner = [&, F](const Cache&, const json&) {
                FormFactorization ff = factor_over_Q(F);
                json rows = json::array();
                for (const auto& f : ff.factors)
                    rows.push_back({{"factor", jform(f.factor)},
                                    {"multiplicity", f.multiplicity}});
                return json{{"rows", rows},
                            {"content", jz(ff.content)},
                            {"irreducible", ff.is_irreducible()}};
            };
        });
    }
    {
        auto* c = forms->add_subcommand("normalize",
                                        "non-vanishing normalization");
        add_form(c);
        c->callback([&] {
            BinaryForm F = parse_form(form_s);
            config = {{"cmd", "forms.normalize"}, {"form", jform(F)}};
            runner = [&, F](const Cache&, const json&) {
                NormalizedForm nf = normalize_nonvanishing(F);
                return json{{"G", jform(nf.G)},
                            {"u", nf.u},
                            {"v", nf.v},
                            {"map",
                             {jz(nf.map.a), jz(nf.map.b), jz(nf.map.c),
                              jz(nf.map.d)}}};
            };
        });
    }

    // ---------------- bounds ----------------
    auto* bounds = app.add_subcommand("bounds", "bound formulas");
    std::string bn_s, bt_s, bo_s, bh_s, bm_s, bc0_s, bc1_s, bc2_s, bb1_s,
        beps_s, br_s;
    auto add_bound_params = [&](CLI::App* c) {
        c->add_option("--name", name_s, "formula name")->required();
        c->add_option("-n", bn_s, "degree n");
        c->add_option("-t", bt_s, "number of primes t");
        c->add_option("--omega", bo_s, "omega(m)");
        c->add_option("-H", bh_s, "height H");
        c->add_option("-M", bm_s, "target bound M");
        c->add_option("--c0", bc0_s, "Bombieri-Schmidt constant");
        c->add_option("--c1", bc1_s, "Lewis-Mahler constant c1");
        c->add_option("--c2", bc2_s, "Lewis-Mahler constant c2");
        c->add_option("--beta1", bb1_s, "exponent beta1");
        c->add_option("--eps", beps_s, "epsilon");
        c->add_option("-r", br_s, "rank/prime count r");
    };
    auto collect_params = [&] {
        std::map<std::string, Q> params;
        auto put = [&](const char* key, const std::string& v) {
            if (!v.empty()) params[key] = parse_q(v);
        };
        put("n", bn_s);
        put("t", bt_s);
        put("omega", bo_s);
        put("H", bh_s);
        put("M", bm_s);
        put("c0", bc0_s);
        put("c1", bc1_s);
        put("c2", bc2_s);
        put("beta1", bb1_s);
        put("eps", beps_s);
        put("r", br_s);
        return params;
    };
    {
        auto* c = bounds->add_subcommand("eval", "evaluate a bound formula");
        add_bound_params(c);
        c->callback([&] {
            BoundName bn = bound_name_from_string(name_s);
            auto params = collect_params();
            json jp = json::object();
            for (const auto& [k, v] : params) jp[k] = v.get_str();
            config = {{"cmd", "bounds.eval"}, {"name", name_s}, {"params", jp}};
            runner = [&, bn, params](const Cache&, const json&) {
                return jbound(eval_bound(bn, params));
            };
        });
    }
    {
        auto* c = bounds->add_subcommand(
            "verify", "compare an observed count against a bound");
        add_bound_params(c);
        c->add_option("--observed", obs_s, "enumerated count")->required();
        c->callback([&] {
            BoundName bn = bound_name_from_string(name_s);
            auto params = collect_params();
            Z obs = parse_z(obs_s);
            json jp = json::object();
            for (const auto& [k, v] : params) jp[k] = v.get_str();
            config = {{"cmd", "bounds.verify"},
                      {"name", name_s},
                      {"params", jp},
                      {"observed", jz(obs)}};
            runner = [&, bn, params, obs](const Cache&, const json&) {
                VerifyReport r = verify_counts(obs, eval_bound(bn, params));
                return json{{"status", r.status},
                            {"detail", r.detail},
                            {"observed", jz(r.observed)},
                            {"bound", jbound(r.bound)}};
            };
        });
    }

    // allow the global flags after the subcommand name
    for (auto* grp : app.get_subcommands({})) {
        grp->fallthrough();
        for (auto* leaf : grp->get_subcommands({})) leaf->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (!runner) {
        std::cout << app.help() << "\n";
        return 1;
    }

    try {
        config["version"] = kVersion;
        config["seed"] = seed;
        std::string hash = fnv1a(config.dump());
        Cache cache{cache_dir};
        json payload;
        bool cached = false;
        if (auto hit = cache.lookup(hash)) {
            if ((*hit).value("version", "") == kVersion &&
                (*hit)["config"] == config) {
                payload = (*hit)["payload"];
                cached = true;
            }
        }
        if (!cached) {
            payload = runner(cache, config);
            cache.store(hash, json{{"version", kVersion},
                                   {"config", config},
                                   {"timestamp", std::time(nullptr)},
                                   {"payload", payload}});
        }
        emit(payload, format, hash, cached);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const PrecisionError& e) {
        std::cerr << "error (precision): " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}

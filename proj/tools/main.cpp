// isoconst command line front end.  Links only the shared C API; all
// numerics live behind it.

#include <isoconst.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitDivergent = 2;
constexpr int kExitCheckFailed = 3;
constexpr int kExitInternal = 4;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void fail(int code, const std::string& msg) { throw CliError{code, msg}; }

int exit_code_for(isoc_status st) {
    switch (st) {
        case ISOC_OK: return kExitOk;
        case ISOC_ERROR_INVALID: return kExitConfig;
        case ISOC_ERROR_DIVERGENT: return kExitDivergent;
        default: return kExitInternal;
    }
}

struct KeyValues {
    std::string family;
    std::map<std::string, double> params;
};

// "product:m=1,k=3,a=1,b=1" -> family + numeric params
KeyValues parse_spec(const std::string& spec) {
    KeyValues kv;
    auto colon = spec.find(':');
    kv.family = spec.substr(0, colon);
    if (colon == std::string::npos) return kv;
    std::stringstream rest(spec.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) fail(kExitConfig, "bad parameter '" + item + "'");
        try {
            kv.params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            fail(kExitConfig, "bad numeric value in '" + item + "'");
        }
    }
    return kv;
}

double take(KeyValues& kv, const std::string& key, std::optional<double> fallback = {}) {
    auto it = kv.params.find(key);
    if (it == kv.params.end()) {
        if (fallback) return *fallback;
        fail(kExitConfig, kv.family + ": missing parameter '" + key + "'");
    }
    const double v = it->second;
    kv.params.erase(it);
    return v;
}

void expect_consumed(const KeyValues& kv) {
    if (!kv.params.empty())
        fail(kExitConfig, kv.family + ": unknown parameter '" + kv.params.begin()->first + "'");
}

struct RunConfig {
    std::string command;
    std::string profile_spec;
    std::string geometry_spec;
    int N = 0;
    double p = 0.0;
    std::optional<double> q;
    double tol = 0.0;  // 0 = library default
    std::string family;
    int budget = 100;
    unsigned long long seed = 20240901ULL;
    std::string out;
    std::string format = "json";
    std::string inequality = "sobolev";
    std::string pair = "sobolev";
    std::string input;  // rearrange csv
    long rearrange_p = 2;
};

void check(isoc_status st, int fallback_code = -1) {
    if (st == ISOC_OK) return;
    const int code = fallback_code > 0 ? fallback_code : exit_code_for(st);
    fail(code, isoc_last_error());
}

struct Handles {
    isoc_profile* prof = nullptr;
    isoc_geometry* geom = nullptr;

    ~Handles() {
        isoc_profile_free(prof);
        isoc_geometry_free(geom);
    }
};

void build_geometry(const RunConfig& cfg, Handles& h) {
    if (cfg.geometry_spec.empty() || cfg.geometry_spec == "none") return;
    KeyValues kv = parse_spec(cfg.geometry_spec);
    if (kv.family == "euclidean") {
        const int N = static_cast<int>(take(kv, "N", cfg.N ? std::optional<double>(cfg.N)
                                                           : std::nullopt));
        expect_consumed(kv);
        check(isoc_geometry_euclidean(N, &h.geom));
    } else if (kv.family == "product_model") {
        const int m = static_cast<int>(take(kv, "m"));
        const int k = static_cast<int>(take(kv, "k"));
        const double H = take(kv, "H");
        const double match = take(kv, "match", 0.0);
        expect_consumed(kv);
        check(isoc_geometry_product_model(m, k, H, match, &h.geom));
    } else {
        fail(kExitConfig, "unknown geometry family '" + kv.family + "'");
    }
}

void build_profile(const RunConfig& cfg, Handles& h) {
    if (cfg.profile_spec.empty()) fail(kExitConfig, "a profile is required (--profile)");
    KeyValues kv = parse_spec(cfg.profile_spec);
    auto need_N = [&]() -> int {
        const double n = take(kv, "N", cfg.N ? std::optional<double>(cfg.N) : std::nullopt);
        return static_cast<int>(n);
    };
    if (kv.family == "euclidean") {
        const int N = need_N();
        expect_consumed(kv);
        check(isoc_profile_euclidean(N, &h.prof));
    } else if (kv.family == "product") {
        const int m = static_cast<int>(take(kv, "m"));
        const int k = static_cast<int>(take(kv, "k"));
        const double a = take(kv, "a", 1.0);
        const double b = take(kv, "b", 1.0);
        const double cn = take(kv, "cn", 0.0);
        expect_consumed(kv);
        check(isoc_profile_product(m, k, a, b, cn, &h.prof));
    } else if (kv.family == "paraboloid") {
        const int N = need_N();
        const double beta = take(kv, "beta");
        const double a = take(kv, "a", 1.0);
        const double b = take(kv, "b", 1.0);
        const double cn = take(kv, "cn", 0.0);
        expect_consumed(kv);
        check(isoc_profile_paraboloid(N, beta, a, b, cn, &h.prof));
    } else if (kv.family == "bounded_geometry") {
        const int N = need_N();
        const double nu = take(kv, "nu");
        const double theta = take(kv, "theta", 1.0);
        const double v0 = take(kv, "v0", 1.0);
        expect_consumed(kv);
        check(isoc_profile_bounded_geometry(N, nu, theta, v0, &h.prof));
    } else if (kv.family == "power_log") {
        const int N = need_N();
        const double gamma = take(kv, "gamma", 1.0);
        const double kexp = take(kv, "k");
        const double z = take(kv, "z", 0.0);
        const double cn = take(kv, "cn", 0.0);
        expect_consumed(kv);
        check(isoc_profile_power_log(N, gamma, kexp, z, cn, &h.prof));
    } else if (kv.family == "from_geometry") {
        expect_consumed(kv);
        if (!h.geom) fail(kExitConfig, "profile 'from_geometry' requires --geometry");
        check(isoc_profile_from_geometry(h.geom, &h.prof));
    } else {
        fail(kExitConfig, "unknown profile family '" + kv.family + "'");
    }
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void emit(const RunConfig& cfg, isoc_report* rep) {
    std::string text;
    if (cfg.format == "json") {
        ordered_json doc = ordered_json::parse(isoc_report_json(rep));
        doc["timestamp"] = iso_timestamp();
        text = doc.dump(2) + "\n";
    } else if (cfg.format == "csv") {
        text = std::string("# generated_at ") + iso_timestamp() + "\n" + isoc_report_csv(rep);
    } else {
        fail(kExitConfig, "unknown format '" + cfg.format + "' (use json or csv)");
    }
    if (cfg.out.empty() || cfg.out == "-") {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) fail(kExitConfig, "cannot open output file " + cfg.out);
        f << text;
    }
}

int run_command(const RunConfig& cfg) {
    Handles h;
    isoc_report* rep = nullptr;

    if (cfg.command == "rearrange") {
        std::ifstream f(cfg.input);
        if (!f) fail(kExitConfig, "cannot open input csv " + cfg.input);
        std::stringstream ss;
        ss << f.rdbuf();
        const std::string csv = ss.str();
        check(isoc_run_rearrange_csv(csv.c_str(), cfg.rearrange_p, &rep));
        emit(cfg, rep);
        isoc_report_free(rep);
        return kExitOk;
    }

    build_geometry(cfg, h);
    build_profile(cfg, h);
    if (cfg.p <= 0.0) fail(kExitConfig, "exponent --p is required and must be > 1");

    if (cfg.command == "constants") {
        const double* q = cfg.q ? &*cfg.q : nullptr;
        isoc_status st = isoc_run_constants(h.prof, h.geom, cfg.p, q, cfg.tol, &rep);
        if (st != ISOC_OK && rep == nullptr) check(st);
        emit(cfg, rep);
        isoc_report_free(rep);
        return exit_code_for(st);
    }
    if (cfg.command == "hyperbolic") {
        check(isoc_run_hyperbolic(h.prof, cfg.p, &rep));
        emit(cfg, rep);
        isoc_report_free(rep);
        return kExitOk;
    }
    if (cfg.command == "verify") {
        if (!h.geom) fail(kExitConfig, "verify requires --geometry");
        const double* q = cfg.q ? &*cfg.q : nullptr;
        const std::string fam = cfg.family.empty() ? "tent" : cfg.family;
        check(isoc_run_verify(h.prof, h.geom, cfg.p, q, cfg.inequality.c_str(), fam.c_str(),
                              cfg.budget, cfg.seed, cfg.tol, &rep));
        emit(cfg, rep);
        int pass = 0;
        check(isoc_report_flag(rep, "/all_pass", &pass));
        isoc_report_free(rep);
        return pass ? kExitOk : kExitCheckFailed;
    }
    if (cfg.command == "bliss") {
        const std::string fam = cfg.family.empty() ? "indicators" : cfg.family;
        check(isoc_run_bliss(h.prof, h.geom, cfg.p, cfg.pair.c_str(), fam.c_str(), cfg.budget,
                             cfg.seed, &rep));
        emit(cfg, rep);
        int ok = 0;
        check(isoc_report_flag(rep, "/bracket_ok", &ok));
        isoc_report_free(rep);
        return ok ? kExitOk : kExitCheckFailed;
    }
    fail(kExitConfig, "unknown command '" + cfg.command + "'");
}

// Flat key = value file with [profile] / [geometry] / [run] sections.
// Flags take precedence; unknown keys are rejected.
void apply_config_file(const std::string& path, RunConfig& cfg, const CLI::App& app) {
    std::ifstream f(path);
    if (!f) fail(kExitConfig, "cannot open config file " + path);
    std::string line, section;
    int lineno = 0;
    std::map<std::string, std::string> profile_kv, geometry_kv;
    auto was_set = [&](const std::string& flag) { return app.count(flag) > 0; };
    while (std::getline(f, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            if (section != "profile" && section != "geometry" && section != "run")
                fail(kExitConfig, "config line " + std::to_string(lineno) +
                                      ": unknown section [" + section + "]");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(kExitConfig, "config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (section == "profile" || section == "geometry") {
            auto& kv = section == "profile" ? profile_kv : geometry_kv;
            kv[key] = value;
            continue;
        }
        if (section.empty())
            fail(kExitConfig, "config line " + std::to_string(lineno) + ": key outside a section");
        // [run] keys
        try {
            if (key == "N") { if (!was_set("--N")) cfg.N = std::stoi(value); }
            else if (key == "p") { if (!was_set("--p")) cfg.p = std::stod(value); }
            else if (key == "q") { if (!was_set("--q")) cfg.q = std::stod(value); }
            else if (key == "tol") { if (!was_set("--tol")) cfg.tol = std::stod(value); }
            else if (key == "family") { if (!was_set("--family")) cfg.family = value; }
            else if (key == "budget") { if (!was_set("--budget")) cfg.budget = std::stoi(value); }
            else if (key == "seed") { if (!was_set("--seed")) cfg.seed = std::stoull(value); }
            else if (key == "out") { if (!was_set("--out")) cfg.out = value; }
            else if (key == "format") { if (!was_set("--format")) cfg.format = value; }
            else if (key == "inequality") { if (!was_set("--inequality")) cfg.inequality = value; }
            else if (key == "pair") { if (!was_set("--pair")) cfg.pair = value; }
            else if (key == "input") { if (!was_set("--input")) cfg.input = value; }
            else fail(kExitConfig, "config line " + std::to_string(lineno) + ": unknown key '" +
                                       key + "'");
        } catch (const CliError&) {
            throw;
        } catch (const std::exception&) {
            fail(kExitConfig, "config line " + std::to_string(lineno) + ": bad value for '" +
                                  key + "'");
        }
    }
    auto build_spec = [](const std::map<std::string, std::string>& kv) {
        auto fam = kv.find("family");
        std::string spec = fam != kv.end() ? fam->second : "";
        std::string params;
        for (const auto& [k, v] : kv) {
            if (k == "family") continue;
            params += (params.empty() ? "" : ",") + k + "=" + v;
        }
        if (!params.empty()) spec += ":" + params;
        return spec;
    };
    if (!profile_kv.empty() && !was_set("--profile")) cfg.profile_spec = build_spec(profile_kv);
    if (!geometry_kv.empty() && !was_set("--geometry")) cfg.geometry_spec = build_spec(geometry_kv);
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    std::string config_path;

    CLI::App app{"Sobolev/Hardy constants from isoperimetric profiles"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--config", config_path, "config file (key = value with sections)");
    app.add_option("--profile", cfg.profile_spec, "profile family spec, e.g. product:m=1,k=3");
    app.add_option("--geometry", cfg.geometry_spec, "geometry spec, e.g. euclidean");
    app.add_option("--N", cfg.N, "topological dimension");
    app.add_option("--p", cfg.p, "gradient exponent, 1 < p < N");
    app.add_option("--q", cfg.q, "secondary exponent (q < p for hardy-sobolev)");
    app.add_option("--tol", cfg.tol, "relative tolerance (default 1e-8)");
    app.add_option("--family", cfg.family, "test function family");
    app.add_option("--budget", cfg.budget, "family sweep size");
    app.add_option("--seed", cfg.seed, "random seed for seeded families");
    app.add_option("--out", cfg.out, "output path (default stdout)");
    app.add_option("--format", cfg.format, "json|csv");

    auto* c_constants = app.add_subcommand("constants", "compute B1, B2, C1, C2");
    auto* c_verify = app.add_subcommand("verify", "verify an inequality over a family");
    c_verify->add_option("--inequality", cfg.inequality, "sobolev|hardy|hardy-sobolev");
    auto* c_bliss = app.add_subcommand("bliss", "bracket the 1-d inequality constant");
    c_bliss->add_option("--pair", cfg.pair, "sobolev|hardy measure pair");
    auto* c_rearrange = app.add_subcommand("rearrange", "rearrange a sampled step function");
    c_rearrange->add_option("--input", cfg.input, "csv file with header x,value");
    c_rearrange->add_option("--pexp", cfg.rearrange_p, "integer exponent for the exact check");
    auto* c_hyper = app.add_subcommand("hyperbolic", "p-hyperbolicity test");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (c_constants->parsed()) cfg.command = "constants";
        else if (c_verify->parsed()) cfg.command = "verify";
        else if (c_bliss->parsed()) cfg.command = "bliss";
        else if (c_rearrange->parsed()) cfg.command = "rearrange";
        else if (c_hyper->parsed()) cfg.command = "hyperbolic";

        if (config_path.empty()) {
            if (const char* env = std::getenv("ISOCONST_CONFIG")) config_path = env;
        }
        if (!config_path.empty()) apply_config_file(config_path, cfg, app);
        return run_command(cfg);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}

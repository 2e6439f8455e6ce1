#include "report.hpp"

#include <cmath>
#include <sstream>

namespace isoc::report {

namespace {

json attainment_json(const quad::SupremumResult& where) {
    json j;
    j["attainment"] = quad::attainment_name(where.attained);
    if (std::isinf(where.location))
        j["location"] = "infinity";
    else
        j["location"] = where.location;
    j["grid_size"] = where.grid_size;
    j["refine_iterations"] = where.refine_iterations;
    return j;
}

json finite_or_string(double v) {
    if (std::isinf(v)) return json(v > 0 ? "infinity" : "-infinity");
    return json(v);
}

}  // namespace

json constants_report(const constants::ConstantsReport& rep) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "constants";
    j["profile"] = rep.profile_name;
    j["N"] = rep.N;
    j["p"] = rep.p;
    if (rep.q) j["q"] = *rep.q;
    j["hyperbolic"] = rep.hyperbolic;
    if (!rep.hyperbolic) {
        j["divergent_integral"] = "tail";
        j["tolerances"] = {{"rel_tol", rep.rel_tol}};
        return j;
    }
    j["hyperbolicity_integral"] = rep.hyperbolicity_integral;
    if (rep.B1) j["B1"] = *rep.B1;
    if (rep.B1_where) j["B1_attained_at"] = attainment_json(*rep.B1_where);
    if (rep.B2) j["B2"] = *rep.B2;
    if (rep.B2_where) j["B2_attained_at"] = attainment_json(*rep.B2_where);
    if (rep.C1) j["C1"] = *rep.C1;
    if (rep.C2) j["C2"] = *rep.C2;
    j["k_pstar_p"] = rep.k_pstar_p;
    if (rep.hardy_sobolev) j["hardy_sobolev_constant"] = *rep.hardy_sobolev;
    j["tolerances"] = {{"rel_tol", rep.rel_tol}};
    if (rep.geometry_consistency_gap)
        j["geometry_consistency_gap"] = *rep.geometry_consistency_gap;
    return j;
}

json hyperbolicity_report(const profile::IsoperimetricProfile& prof, double p,
                          const profile::HyperbolicityResult& res) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "hyperbolic";
    j["profile"] = prof.name;
    j["N"] = prof.N;
    j["p"] = p;
    j["hyperbolic"] = res.hyperbolic;
    j["integral"] = finite_or_string(res.integral);
    return j;
}

json bliss_report(const bliss::BracketReport& rep, const std::string& pair,
                  const std::string& family, int budget, std::uint64_t seed) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "bliss";
    j["pair"] = pair;
    j["family"] = family;
    j["budget"] = budget;
    j["seed"] = seed;
    j["B_tilde"] = rep.B_tilde;
    j["observed_sup"] = rep.observed_sup;
    j["upper"] = rep.upper;
    j["best_function"] = rep.best_function;
    j["evaluated"] = rep.evaluated;
    j["lower_ok"] = rep.lower_ok;
    j["upper_ok"] = rep.upper_ok;
    j["bracket_ok"] = rep.lower_ok && rep.upper_ok;
    return j;
}

json verify_report(const verify::SweepReport& rep, const std::string& inequality,
                   const std::string& family, int budget, std::uint64_t seed, double C1,
                   double C2) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "verify";
    j["inequality"] = inequality;
    j["family"] = family;
    j["budget"] = budget;
    j["seed"] = seed;
    j["C1"] = C1;
    j["C2"] = C2;
    j["rows"] = json::array();
    for (const auto& r : rep.rows) {
        j["rows"].push_back({{"function", r.function},
                             {"lhs", r.lhs},
                             {"rhs", r.rhs},
                             {"ratio", r.ratio},
                             {"pass", r.pass}});
    }
    j["max_quotient"] = rep.max_quotient;
    j["argmax"] = rep.argmax;
    j["all_pass"] = rep.all_pass;
    return j;
}

namespace {

json step_json(const rearrange::StepFunction& s) {
    json cells = json::array();
    for (size_t i = 0; i < s.values.size(); ++i) {
        cells.push_back({{"from", s.edges[i].get_str()},
                         {"to", s.edges[i + 1].get_str()},
                         {"value", s.values[i].get_str()}});
    }
    return cells;
}

}  // namespace

json rearrange_report(const RearrangeOutcome& out) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "rearrange";
    j["p"] = out.p;
    j["input"] = step_json(out.input);
    j["rearranged"] = step_json(out.rearranged);
    j["cavalieri"] = {{"lhs", out.cavalieri.lhs.get_str()},
                      {"rhs", out.cavalieri.rhs.get_str()},
                      {"residual", out.cavalieri.residual.get_str()},
                      {"residual_zero", out.cavalieri.residual == 0}};
    j["monotone"] = out.monotone;
    return j;
}

rearrange::StepFunction parse_step_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<rearrange::Rational> edges{rearrange::Rational(0)};
    std::vector<rearrange::Rational> values;

    auto fail = [&](const std::string& what) {
        throw DomainError("csv line " + std::to_string(lineno) + ": " + what);
    };
    auto parse_rational = [&](const std::string& tok) -> rearrange::Rational {
        // accepts integers, fractions a/b and decimals (parsed exactly)
        std::string s = tok;
        if (s.empty()) fail("empty field");
        try {
            auto slash = s.find('/');
            if (slash != std::string::npos) {
                rearrange::Rational r(s);
                r.canonicalize();
                return r;
            }
            auto dot = s.find('.');
            if (dot == std::string::npos) return rearrange::Rational(s);
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            const size_t frac_len = s.size() - dot - 1;
            rearrange::Rational r(digits);
            rearrange::Rational den(1);
            for (size_t i = 0; i < frac_len; ++i) den *= 10;
            r /= den;
            return r;
        } catch (const std::exception&) {
            fail("cannot parse number '" + tok + "'");
        }
        return rearrange::Rational(0);
    };

    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "x,value") fail("expected header 'x,value'");
            header_seen = true;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) fail("expected 'x,value'");
        rearrange::Rational x = parse_rational(line.substr(0, comma));
        rearrange::Rational v = parse_rational(line.substr(comma + 1));
        if (!(x > edges.back())) fail("x values must be strictly increasing");
        edges.push_back(x);
        values.push_back(v);
    }
    if (!header_seen) throw DomainError("csv line 1: missing header 'x,value'");
    if (values.empty()) throw DomainError("csv: no data rows");
    return rearrange::make_step(std::move(edges), std::move(values));
}

std::string to_csv(const json& report) {
    std::ostringstream out;
    if (report.contains("rows")) {
        out << "function,lhs,rhs,ratio,pass\n";
        for (const auto& r : report["rows"]) {
            out << r["function"].get<std::string>() << ',' << r["lhs"] << ',' << r["rhs"] << ','
                << r["ratio"] << ',' << (r["pass"].get<bool>() ? 1 : 0) << '\n';
        }
        return out.str();
    }
    out << "key,value\n";
    for (auto it = report.begin(); it != report.end(); ++it) {
        if (it.value().is_structured()) continue;
        out << it.key() << ',' << it.value().dump() << '\n';
    }
    return out.str();
}

}  // namespace isoc::report

#pragma once

#include <json.hpp>

#include <string>

#include "bliss.hpp"
#include "constants.hpp"
#include "rearrange.hpp"
#include "verify.hpp"

// Machine-readable reports.  The JSON produced here is canonical: identical
// inputs yield byte-identical text (timestamps, if any, are added by the
// front end).

namespace isoc::report {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "isoconst-report/1";

json constants_report(const constants::ConstantsReport& rep);

json hyperbolicity_report(const profile::IsoperimetricProfile& prof, double p,
                          const profile::HyperbolicityResult& res);

json bliss_report(const bliss::BracketReport& rep, const std::string& pair,
                  const std::string& family, int budget, std::uint64_t seed);

json verify_report(const verify::SweepReport& rep, const std::string& inequality,
                   const std::string& family, int budget, std::uint64_t seed, double C1,
                   double C2);

struct RearrangeOutcome {
    rearrange::StepFunction input;
    rearrange::StepFunction rearranged;
    rearrange::CavalieriExact cavalieri;
    long p;
    bool monotone;
};

json rearrange_report(const RearrangeOutcome& out);

// Parses `x,value` CSV text (header required, strictly increasing x) into a
// step function with exact rational cells [x_{i-1}, x_i).  Throws DomainError
// carrying the offending line number.
rearrange::StepFunction parse_step_csv(const std::string& text);

std::string to_csv(const json& report);

}  // namespace isoc::report

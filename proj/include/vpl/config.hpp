// config.hpp
// Flat run configuration shared by every subcommand. A config file (JSON)
// fills fields first, explicit flags override, and the parsed result
// round-trips through its serialized form.

#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "vpl/common.hpp"

namespace vpl {

struct RunConfig {
    std::string command;

    double x = 0.0;
    double Q = 0.0;
    double r = 2.0;
    double A = 1.0; // exponent for the Q1 = ln^(A+1)(x) diagnostic column
    std::uint64_t q = 1;
    std::uint64_t a = 1;
    std::uint64_t limit = 1000;
    std::uint64_t N = 0;
    std::uint64_t seed = 1;
    std::uint64_t trials = 200;
    std::uint64_t budget = 0; // 0 = module default
    int threads = 0;          // 0 = library default

    std::string theorem = "1.4";
    std::string weights = "theta";
    std::string quantity = "single";
    std::string experiment = "classic";
    std::string coeffs = "pm1";
    std::string algo = "dp";
    std::string input;
    std::string out;
    std::string prime_cache;
    bool primitive_only = false;
    bool quick = false;
    bool record = false;

    void validate() const {
        if (limit == 0 || trials == 0) {
            throw DomainError("RunConfig: caps must be positive");
        }
    }
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

} // namespace vpl

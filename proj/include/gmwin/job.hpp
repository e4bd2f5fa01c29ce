#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmwin/localization.hpp"
#include "gmwin/spaces.hpp"
#include "gmwin/walls.hpp"

namespace gmwin {

/// One matrix entry c * x^e of a declared complex.
struct JobEntry {
    Rational c;
    long long e = 0;

    friend bool operator==(const JobEntry&, const JobEntry&) = default;
};

/// A complex as declared in the input file; instantiated against the
/// operation that consumes it.
struct JobComplex {
    int min_degree = 0;
    std::vector<std::vector<int>> term_degrees;
    std::vector<std::vector<std::vector<JobEntry>>> diffs;

    friend bool operator==(const JobComplex&, const JobComplex&) = default;
};

struct JobLeg {
    int ell = +1;
    Rational theta;

    friend bool operator==(const JobLeg&, const JobLeg&) = default;
};

/// Fully parsed and validated input for one CLI invocation.
struct JobSpec {
    std::string op;
    std::optional<GmSpace> space;
    std::optional<TorusRep> rep;
    std::map<std::string, JobComplex> complexes;
    std::map<std::string, KClass> classes;

    std::optional<long long> w;
    std::optional<Rational> a;
    std::optional<Rational> a1;
    std::optional<Rational> a2;
    std::vector<Rational> theta;
    std::optional<Rational> theta0;
    std::vector<JobLeg> legs;
    std::optional<std::string> complex_name;
    std::optional<std::string> class_name;
    std::optional<long long> order;
    std::optional<std::pair<long long, long long>> window;

    friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

extern const std::vector<std::string> kJobOps;

/// Parse the declarative input format. `op_override` supplies the operation
/// when the [job] section omits it (the CLI passes its subcommand); a
/// mismatch between the two is rejected.
JobSpec parse_input(const std::string& text, const std::string& op_override = "");

/// Canonical rendering; parse_input(render_input(j)) == j.
std::string render_input(const JobSpec& job);

struct RunOptions {
    std::optional<long long> order;                        // truncation override
    std::optional<std::pair<long long, long long>> window; // weight window override
    bool machine = false;
};

struct Report {
    std::map<std::string, std::string> machine;  // sorted key -> value
    std::string table;                           // human-readable rendering

    std::string machine_text() const;
    std::string text(bool machine_format) const;
};

/// Dispatch a validated job to the core modules.
Report run(const JobSpec& job, const RunOptions& options = {});

}  // namespace gmwin

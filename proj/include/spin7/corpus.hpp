#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace spin7 {

struct CorpusContext {
    std::uint64_t seed = 1;
    int samples = 2000;  // sphere samples for the sup-over-sphere entries
};

struct CorpusOutcome {
    std::string got;
    std::string residual = "0";
    bool pass = false;
    // Scalar values of the exact run that a float recomputation must reproduce.
    std::vector<double> values;
};

struct CorpusEntry {
    std::string id;
    std::string anchor;    // what is being checked
    std::string expected;  // the stated value
    int criterion = 0;     // acceptance item the entry backs
    std::function<CorpusOutcome(const CorpusContext&)> exact;
    // Recomputes `values` from float inputs; empty for structural entries
    // (dimensions, subspace membership).
    std::function<std::vector<double>(const CorpusContext&)> floating;
};

// All entries, sorted by id.
const std::vector<CorpusEntry>& corpus();

struct CorpusResult {
    std::string id, anchor, expected, got, residual;
    int criterion = 0;
    bool exact_pass = false;
    bool float_checked = false;
    bool float_pass = true;
    double float_error = 0.0;  // max |float - exact| / max(|exact|, 1)
    std::vector<double> exact_values, float_values;
    std::string error;  // exception text when the closure threw

    bool pass() const { return exact_pass && float_pass && error.empty(); }
};

constexpr double kFloatAgreement = 1e-9;

struct CorpusOptions {
    CorpusContext ctx;
    bool float_check = false;
    std::vector<std::string> only;  // run just these ids when non-empty
};

// Results are ordered by id.
std::vector<CorpusResult> run_corpus(const CorpusOptions& opt);

}  // namespace spin7

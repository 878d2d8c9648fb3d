#pragma once

#include "qregress/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qregress {

enum class Bound { at_most, at_least, within };

struct PropertyResult {
    std::string name;
    double measured = 0.0;
    double lower = 0.0;  // used by at_least / within
    double upper = 0.0;  // used by at_most / within
    Bound kind = Bound::at_most;
    bool pass = false;

    std::string bound_text() const;
};

struct VerificationReport {
    std::vector<PropertyResult> results;

    bool all_passed() const;
    std::size_t failures() const;
};

/// Runs the invariant suites of every module against `model` plus a batch of
/// seeded random models. Deterministic for a given (model, seed).
VerificationReport run_verification(const SystemModel& model, std::uint64_t seed);

}  // namespace qregress

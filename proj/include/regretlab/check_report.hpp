#pragma once

// Structured verdicts for validators and consistency checkers. A report is
// pass/fail plus replayable witnesses (each a tagged bag of rendered fields)
// and counters describing how much work the check actually did. Maps keep
// keys sorted, so rendered reports are byte-stable across runs.

#include <map>
#include <string>
#include <vector>

namespace regretlab {

struct Witness {
    std::string what;
    std::map<std::string, std::string> fields;
};

struct CheckReport {
    std::string check;
    bool pass = true;
    std::vector<Witness> witnesses;
    std::map<std::string, long long> stats;
    std::vector<std::string> notes;

    explicit CheckReport(std::string name) : check(std::move(name)) {}

    void fail(Witness w) {
        pass = false;
        witnesses.push_back(std::move(w));
    }

    void bump(const std::string& key, long long by = 1) { stats[key] += by; }

    void note(std::string text) { notes.push_back(std::move(text)); }
};

}  // namespace regretlab

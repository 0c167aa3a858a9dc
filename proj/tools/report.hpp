#pragma once

#include "qgal/duality.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qgal::cli {

using Json = nlohmann::ordered_json;

/// One line of a report. Check records come from CheckReport; derive
/// records carry one compared structure constant each.
struct Record {
    int case_id = 0;
    std::string side;
    std::string check;
    std::string instantiation;
    std::string status; // "pass", "fail", "error"
    std::optional<std::string> ordering;
    std::vector<Finding> findings;
    std::vector<std::string> notes;
    std::optional<std::string> derived, claimed;
    std::optional<double> seconds;
};

Record from_check(int case_id, Side side, const CheckReport& r);
Record from_comparison(int case_id, const DualVerification& v, const StructureComparison& s);

class Report {
public:
    Report(std::string command, Json config) : command_(std::move(command)), config_(std::move(config)) {}

    void add(Record r) { records_.push_back(std::move(r)); }
    /// Free-form per-case results that are not pass/fail (pairing values,
    /// derived star patterns, ordering verdicts).
    void add_result(Json j) { results_.push_back(std::move(j)); }

    bool all_passed() const;
    Json to_json() const;
    std::string to_text() const;

private:
    std::string command_;
    Json config_;
    std::vector<Record> records_;
    std::vector<Json> results_;
};

} // namespace qgal::cli

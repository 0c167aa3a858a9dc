#include "report.hpp"

#include <algorithm>
#include <sstream>

namespace qgal::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string case_name(const Record& r)
{
    return r.side + " case " + std::to_string(r.case_id);
}

} // namespace

Record from_check(int case_id, Side side, const CheckReport& r)
{
    Record out;
    out.case_id = case_id;
    out.side = std::string(to_string(side));
    out.check = r.check;
    out.instantiation = r.instantiation;
    out.status = r.ok ? "pass" : "fail";
    out.findings = r.findings;
    out.notes = r.notes;
    return out;
}

Record from_comparison(int case_id, const DualVerification& v, const StructureComparison& s)
{
    Record out;
    out.case_id = case_id;
    out.side = "dual";
    out.check = s.structure;
    out.instantiation = v.instantiation;
    out.status = s.agree ? "pass" : "fail";
    out.ordering = v.alternate_order ? "alternate" : "default";
    out.derived = s.derived;
    out.claimed = s.claimed;
    if (!s.agree) {
        out.findings.push_back({"derived - claimed", s.difference});
    }
    return out;
}

bool Report::all_passed() const
{
    return std::all_of(records_.begin(), records_.end(), [](const Record& r) { return r.status == "pass"; });
}

Json Report::to_json() const
{
    Json j;
    j["tool"] = "qgal";
    j["version"] = kVersion;
    j["command"] = command_;
    j["config"] = config_;
    Json records = Json::array();
    std::size_t passed = 0, failed = 0, errors = 0;
    for (const auto& r : records_) {
        Json x;
        x["case"] = r.case_id;
        x["side"] = r.side;
        x["check"] = r.check;
        if (r.ordering) {
            x["ordering"] = *r.ordering;
        }
        x["instantiation"] = r.instantiation;
        x["status"] = r.status;
        Json f = Json::array();
        for (const auto& finding : r.findings) {
            f.push_back({{"subject", finding.subject}, {"residual", finding.residual}});
        }
        x["findings"] = f;
        x["notes"] = r.notes;
        if (r.derived) {
            x["derived"] = *r.derived;
            x["claimed"] = *r.claimed;
        }
        if (r.seconds) {
            x["seconds"] = *r.seconds;
        }
        records.push_back(std::move(x));
        (r.status == "pass" ? passed : r.status == "fail" ? failed : errors) += 1;
    }
    j["records"] = records;
    if (!results_.empty()) {
        j["results"] = results_;
    }
    j["summary"] = {{"records", records_.size()}, {"passed", passed}, {"failed", failed}, {"errors", errors}};
    return j;
}

std::string Report::to_text() const
{
    std::ostringstream out;
    out << "qgal " << kVersion << " " << command_ << " " << config_.dump() << "\n";
    std::size_t passed = 0;
    for (const auto& r : records_) {
        std::string status = r.status;
        std::transform(status.begin(), status.end(), status.begin(), ::toupper);
        out << status << "  " << case_name(r) << "  " << r.check;
        if (r.ordering) {
            out << "  (" << *r.ordering << " ordering)";
        }
        out << "  " << r.instantiation;
        if (r.seconds) {
            out << "  " << *r.seconds << "s";
        }
        out << "\n";
        for (const auto& f : r.findings) {
            out << "      " << f.subject << ": " << f.residual << "\n";
        }
        if (r.status != "pass" && r.derived) {
            out << "      derived: " << *r.derived << "\n      claimed: " << *r.claimed << "\n";
        }
        for (const auto& n : r.notes) {
            out << "      note: " << n << "\n";
        }
        passed += r.status == "pass";
    }
    for (const auto& j : results_) {
        out << "RESULT  " << j.dump() << "\n";
    }
    out << passed << "/" << records_.size() << " records passed\n";
    return out.str();
}

} // namespace qgal::cli

#pragma once
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hv/estimate.hpp"

namespace hv {

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::string to_csv() const;  // header line + rows, 17 significant digits
};

struct ExperimentReport {
    std::string id;
    nlohmann::ordered_json params;
    std::vector<std::pair<std::string, NormEstimate>> verdicts;
    std::vector<Table> tables;
    std::string expectation;  // the registered pass/fail rule, verbatim
    bool passed = false;
    std::vector<std::string> notes;

    nlohmann::ordered_json to_json() const;
    const NormEstimate* verdict(const std::string& label) const;
};

// write-to-temp-then-rename so readers never see a partial file
void write_text_atomic(const std::string& path, const std::string& content);

// report.json plus one <table>.csv per table, plus a small SVG of the first
// two-column table; creates dir if needed
void write_report(const ExperimentReport& rep, const std::string& dir);

std::string svg_polyline(const std::vector<double>& x, const std::vector<double>& y,
                         const std::string& title);

} // namespace hv

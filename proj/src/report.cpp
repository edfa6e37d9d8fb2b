#include "hv/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hv/errors.hpp"
#include "hv/util.hpp"

namespace hv {

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out += ',';
        out += columns[c];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += fmt17(row[c]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json ExperimentReport::to_json() const {
    nlohmann::ordered_json j;
    j["id"] = id;
    j["params"] = params;
    nlohmann::ordered_json vs = nlohmann::ordered_json::array();
    for (const auto& [label, est] : verdicts) {
        nlohmann::ordered_json v;
        v["label"] = label;
        v["estimate"] = est.to_json();
        vs.push_back(v);
    }
    j["verdicts"] = vs;
    nlohmann::ordered_json ts = nlohmann::ordered_json::array();
    for (const auto& t : tables) ts.push_back(t.name);
    j["tables"] = ts;
    j["expectation"] = expectation;
    j["passed"] = passed;
    j["notes"] = notes;
    return j;
}

const NormEstimate* ExperimentReport::verdict(const std::string& label) const {
    for (const auto& [l, est] : verdicts)
        if (l == label) return &est;
    return nullptr;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw numeric_failure("cannot open for writing: " + tmp);
        out << content;
        if (!out) throw numeric_failure("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::string svg_polyline(const std::vector<double>& x, const std::vector<double>& y,
                         const std::string& title) {
    const int W = 640, H = 400, pad = 40;
    double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
    if (!x.empty()) {
        xlo = *std::min_element(x.begin(), x.end());
        xhi = *std::max_element(x.begin(), x.end());
        ylo = *std::min_element(y.begin(), y.end());
        yhi = *std::max_element(y.begin(), y.end());
    }
    if (xhi <= xlo) xhi = xlo + 1;
    if (yhi <= ylo) yhi = ylo + 1;
    auto fmt6 = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return std::string(buf);
    };
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
         "viewBox=\"0 0 640 400\">\n";
    s += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
    s += "<text x=\"320\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" + title +
         "</text>\n";
    s += "<line x1=\"40\" y1=\"360\" x2=\"600\" y2=\"360\" stroke=\"black\"/>\n";
    s += "<line x1=\"40\" y1=\"40\" x2=\"40\" y2=\"360\" stroke=\"black\"/>\n";
    s += "<text x=\"40\" y=\"378\" font-size=\"10\">" + fmt6(xlo) + "</text>\n";
    s += "<text x=\"600\" y=\"378\" text-anchor=\"end\" font-size=\"10\">" + fmt6(xhi) +
         "</text>\n";
    s += "<text x=\"4\" y=\"360\" font-size=\"10\">" + fmt6(ylo) + "</text>\n";
    s += "<text x=\"4\" y=\"48\" font-size=\"10\">" + fmt6(yhi) + "</text>\n";
    if (!x.empty()) {
        s += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
            double px = pad + (x[i] - xlo) / (xhi - xlo) * (W - 2 * pad);
            double py = (H - pad) - (y[i] - ylo) / (yhi - ylo) * (H - 2 * pad);
            if (!std::isfinite(px) || !std::isfinite(py)) continue;
            if (i) s += ' ';
            s += fmt6(px) + "," + fmt6(py);
        }
        s += "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

void write_report(const ExperimentReport& rep, const std::string& dir) {
    std::filesystem::create_directories(dir);
    write_text_atomic(dir + "/report.json", rep.to_json().dump(2) + "\n");
    for (const auto& t : rep.tables) write_text_atomic(dir + "/" + t.name + ".csv", t.to_csv());
    for (const auto& t : rep.tables) {
        if (t.columns.size() < 2 || t.rows.empty()) continue;
        std::vector<double> xs, ys;
        for (const auto& r : t.rows) {
            xs.push_back(r[0]);
            ys.push_back(r[1]);
        }
        write_text_atomic(dir + "/" + t.name + ".svg",
                          svg_polyline(xs, ys, rep.id + ": " + t.name));
        break;
    }
}

} // namespace hv

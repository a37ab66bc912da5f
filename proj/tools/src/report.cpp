#include "report.hpp"

#include <cstdio>
#include <sstream>

namespace mollify::cli {
namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void flatten(const Json& j, const std::string& prefix, std::ostringstream& os) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, os);
    } else if (j.is_array()) {
        if (j.empty()) os << csv_field(prefix) << ",\n";
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), os);
    } else {
        os << csv_field(prefix) << ',' << csv_field(j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

}  // namespace

std::string render_json(const Report& report) {
    Json doc;
    doc["command"] = report.command;
    doc["inputs"] = report.inputs;
    doc["results"] = report.results;
    doc["metadata"] = {{"main_terms_only", true}, {"version", "0.1.0"}};
    return doc.dump(2) + "\n";
}

std::string render_csv(const Report& report) {
    std::ostringstream os;
    os << "key,value\n";
    flatten(report.results, "", os);
    return os.str();
}

std::string fixed(const HighPrecision& x, int digits) { return to_fixed(x, digits); }

std::string scientific(const HighPrecision& x, int digits) {
    std::ostringstream os;
    os.setf(std::ios::scientific);
    os.precision(digits);
    os << x;
    return os.str();
}

std::string scientific(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits, x);
    return buf;
}

}  // namespace mollify::cli

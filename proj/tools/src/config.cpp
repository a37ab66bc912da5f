#include "config.hpp"

#include "mollify/errors.hpp"

#include <fstream>
#include <sstream>

namespace mollify::cli {

Json load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

Json parse_config(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
}

Fields::Fields(const Json& object, std::string where) : object_(object), where_(std::move(where)) {
    if (!object_.is_object()) throw ConfigError(where_ + ": expected a JSON object");
}

const Json* Fields::optional(std::string_view key) {
    seen_.emplace(key);
    const auto it = object_.find(std::string(key));
    return it == object_.end() ? nullptr : &*it;
}

const Json& Fields::required(std::string_view key) {
    const Json* v = optional(key);
    if (v == nullptr) throw ConfigError(where_ + ": missing field \"" + std::string(key) + "\"");
    return *v;
}

void Fields::finish() const {
    for (const auto& [key, value] : object_.items()) {
        if (!seen_.contains(key)) throw ConfigError(where_ + ": unknown field \"" + key + "\"");
    }
}

Rational as_rational(const Json& value, std::string_view where) {
    if (value.is_string()) return Rational::parse(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<long>());
    throw ConfigError(std::string(where) + ": rationals are written as strings, e.g. \"21/20\" or \"1.05\"");
}

std::vector<Rational> as_rational_list(const Json& value, std::string_view where) {
    if (!value.is_array()) throw ConfigError(std::string(where) + ": expected an array");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        out.push_back(as_rational(value[i], std::string(where) + "[" + std::to_string(i) + "]"));
    }
    return out;
}

int as_int(const Json& value, std::string_view where) {
    if (!value.is_number_integer()) throw ConfigError(std::string(where) + ": expected an integer");
    const auto v = value.get<long long>();
    if (v < -1000000000LL || v > 1000000000LL) throw ConfigError(std::string(where) + ": integer out of range");
    return static_cast<int>(v);
}

bool as_bool(const Json& value, std::string_view where) {
    if (!value.is_boolean()) throw ConfigError(std::string(where) + ": expected true or false");
    return value.get<bool>();
}

std::string as_string(const Json& value, std::string_view where) {
    if (!value.is_string()) throw ConfigError(std::string(where) + ": expected a string");
    return value.get<std::string>();
}

MollifierSpec as_mollifier(const Json& value, std::string_view where) {
    Fields f(value, std::string(where));
    MollifierSpec spec;
    if (const Json* d = f.optional("delta1")) spec.delta1 = as_rational(*d, f.where() + ".delta1");
    if (const Json* d = f.optional("delta2")) spec.delta2 = as_rational(*d, f.where() + ".delta2");
    spec.p_coeffs = as_rational_list(f.required("P"), f.where() + ".P");
    if (const Json* q = f.optional("Q")) spec.q_coeffs = as_rational_list(*q, f.where() + ".Q");
    f.finish();
    return spec;
}

Json mollifier_to_json(const MollifierSpec& spec) {
    Json j;
    j["delta1"] = spec.delta1.to_string();
    j["delta2"] = spec.delta2.to_string();
    j["P"] = Json::array();
    for (const auto& c : spec.p_coeffs) j["P"].push_back(c.to_string());
    j["Q"] = Json::array();
    for (const auto& c : spec.q_coeffs) j["Q"].push_back(c.to_string());
    return j;
}

void read_output_settings(Fields& fields, OutputSettings& settings) {
    if (const Json* p = fields.optional("precision")) {
        const int digits = as_int(*p, fields.where() + ".precision");
        if (digits < 0 || digits > 60) throw ConfigError("precision must lie in 0..60");
        if (!settings.precision_locked) settings.precision = digits;
    }
    if (const Json* fmt = fields.optional("format")) {
        const std::string f = as_string(*fmt, fields.where() + ".format");
        if (f != "json" && f != "csv") throw ConfigError("format must be \"json\" or \"csv\"");
        if (!settings.format_locked) settings.csv = f == "csv";
    }
}

}  // namespace mollify::cli

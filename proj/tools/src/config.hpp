#pragma once

#include "mollify/moments.hpp"
#include "mollify/rational.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mollify::cli {

using Json = nlohmann::ordered_json;

/// Reads a JSON document; ParseError on malformed JSON, ConfigError if unreadable.
Json load_config(const std::filesystem::path& path);
Json parse_config(std::string_view text);

/// Strict view of a JSON object: every key must be consumed before finish().
class Fields {
public:
    Fields(const Json& object, std::string where);

    const Json* optional(std::string_view key);
    const Json& required(std::string_view key);

    /// ConfigError naming any key that was never asked for.
    void finish() const;

    const std::string& where() const { return where_; }

private:
    const Json& object_;
    std::string where_;
    std::set<std::string, std::less<>> seen_;
};

Rational as_rational(const Json& value, std::string_view where);
std::vector<Rational> as_rational_list(const Json& value, std::string_view where);
int as_int(const Json& value, std::string_view where);
bool as_bool(const Json& value, std::string_view where);
std::string as_string(const Json& value, std::string_view where);

/// {"delta1", "delta2", "P", "Q"}; deltas default to 1, Q to zero.
MollifierSpec as_mollifier(const Json& value, std::string_view where);
Json mollifier_to_json(const MollifierSpec& spec);

/// Output settings shared by all commands; `format` and `precision` may come
/// from the document and are overridden by command-line flags.
struct OutputSettings {
    int precision = 6;
    bool csv = false;
    bool precision_locked = false;  // set from the command line
    bool format_locked = false;
};

/// Consumes the optional "precision" and "format" keys.
void read_output_settings(Fields& fields, OutputSettings& settings);

}  // namespace mollify::cli

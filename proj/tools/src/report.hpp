#pragma once

#include "config.hpp"

#include "mollify/asymptotics.hpp"

#include <string>

namespace mollify::cli {

struct Report {
    std::string command;
    Json inputs = Json::object();
    Json results = Json::object();
    bool passed = true;  // verify sets this; a failed report still renders
};

/// {command, inputs, results, metadata}, two-space indent, trailing newline.
std::string render_json(const Report& report);

/// "key,value" rows of the flattened results block; nested keys are joined
/// with '.', array elements by index.
std::string render_csv(const Report& report);

std::string fixed(const HighPrecision& x, int digits);
std::string scientific(const HighPrecision& x, int digits);
std::string scientific(double x, int digits);

}  // namespace mollify::cli

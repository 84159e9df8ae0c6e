#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dlpp/network.hpp"

namespace dlpp {

/// Parses and validates an instance document. Throws ParseError on malformed
/// JSON and ValidationError (with a field path) on schema or invariant breaks.
Instance load_instance(std::istream& in);
Instance load_instance_string(const std::string& text);
Instance load_instance_file(const std::filesystem::path& path);

/// Serializes with a fixed key order so equal instances produce equal bytes.
std::string save_instance(const Instance& inst);
void save_instance_file(const Instance& inst, const std::filesystem::path& path);

/// Reads a reference plan given as a list of {sort_pair, trailer_type, count}
/// (or a LoadPlan document, whose "y" list has the same shape).
ReferencePlan load_reference_plan_string(const Instance& inst, const std::string& text);

}  // namespace dlpp

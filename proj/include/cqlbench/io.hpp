// io.hpp — output formatting shared by the CLI and experiment writers.
// All numbers are serialized with 12 significant digits so repeated runs
// are byte-identical and every stated tolerance survives the round-trip.

#pragma once

#include <string>

namespace cql::io {

std::string format_double(double x);  // %.12g, with "null" for non-finite
std::string json_escape(const std::string& s);
std::string csv_field(const std::string& s);  // RFC-4180-style quoting

} // namespace cql::io

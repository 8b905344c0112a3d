#pragma once

#include "macdop/signal.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace macdop {

enum class CsvSchema {
    automatic,  ///< one column -> value_only, two -> time_value
    value_only, ///< dt = 1, t0 = 0
    time_value,
};

/// Malformed or unusable input file. The message carries the line number.
class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads a signal from CSV. A first line that does not parse as numbers is
/// taken as a header. Timestamps must increase strictly and be uniformly
/// spaced within 1e-9 relative.
UniformSignal ingest_csv(std::filesystem::path const& path, CsvSchema schema = CsvSchema::automatic);
UniformSignal parse_csv(std::istream& in, CsvSchema schema = CsvSchema::automatic);

/// Writes "time,value" rows with 17 significant digits, enough to read every
/// double back bit-for-bit.
void write_csv(std::ostream& out, UniformSignal const& signal);
void write_csv(std::filesystem::path const& path, UniformSignal const& signal);

/// 17 significant digits, the form every CSV writer here uses.
std::string format_double(double v);

/// Shortest decimal that still reads back to the same double.
std::string format_short(double v);

} // namespace macdop

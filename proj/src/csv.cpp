#include "macdop/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

namespace macdop {

namespace {

std::string_view trim(std::string_view s) {
    auto const is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

std::optional<double> parse_number(std::string_view field) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') {
        field.remove_prefix(1);
    }
    if (field.empty()) {
        return std::nullopt;
    }
    double v = 0.0;
    auto const [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        return std::nullopt;
    }
    return v;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t const comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

[[noreturn]] void fail(std::size_t line, std::string const& msg) {
    throw CsvError(msg + " at line " + std::to_string(line));
}

struct Row {
    std::size_t line;
    std::vector<double> fields;
};

} // namespace

UniformSignal parse_csv(std::istream& in, CsvSchema schema) {
    std::vector<Row> rows;
    std::string raw;
    std::size_t line_no = 0;
    bool first_content = true;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view const line = trim(raw);
        if (line.empty()) {
            continue;
        }
        auto const fields = split(line);
        Row row{line_no, {}};
        bool numeric = true;
        for (auto f : fields) {
            auto v = parse_number(f);
            if (!v) {
                numeric = false;
                break;
            }
            row.fields.push_back(*v);
        }
        if (!numeric) {
            if (first_content) {
                first_content = false;
                continue; // header
            }
            fail(line_no, "unparseable number");
        }
        first_content = false;
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw CsvError("empty file: no data rows (line " + std::to_string(line_no) + ")");
    }

    if (schema == CsvSchema::automatic) {
        std::size_t const cols = rows.front().fields.size();
        if (cols == 1) {
            schema = CsvSchema::value_only;
        } else if (cols == 2) {
            schema = CsvSchema::time_value;
        } else {
            fail(rows.front().line, "expected 1 or 2 columns, found " + std::to_string(cols));
        }
    }
    std::size_t const expected_cols = schema == CsvSchema::value_only ? 1 : 2;

    std::vector<double> values;
    values.reserve(rows.size());
    for (auto const& row : rows) {
        if (row.fields.size() != expected_cols) {
            fail(row.line, "expected " + std::to_string(expected_cols) + " columns, found " +
                               std::to_string(row.fields.size()));
        }
        for (double f : row.fields) {
            if (!std::isfinite(f)) {
                fail(row.line, "non-finite value");
            }
        }
        values.push_back(row.fields.back());
    }

    if (schema == CsvSchema::value_only) {
        return {0.0, 1.0, std::move(values)};
    }

    double const t0 = rows.front().fields[0];
    if (rows.size() == 1) {
        return {t0, 1.0, std::move(values)};
    }
    double const step = rows[1].fields[0] - t0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        double const delta = rows[r].fields[0] - rows[r - 1].fields[0];
        if (!(delta > 0.0)) {
            fail(rows[r].line, "timestamps not strictly increasing");
        }
        if (std::abs(delta - step) > 1e-9 * step) {
            fail(rows[r].line, "non-uniform spacing");
        }
    }
    double const dt = (rows.back().fields[0] - t0) / static_cast<double>(rows.size() - 1);
    return {t0, dt, std::move(values)};
}

UniformSignal ingest_csv(std::filesystem::path const& path, CsvSchema schema) {
    std::ifstream in(path);
    if (!in) {
        throw CsvError("cannot open " + path.string());
    }
    return parse_csv(in, schema);
}

std::string format_double(double v) {
    char buf[64];
    auto const [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_short(double v) {
    char buf[64];
    auto const [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

void write_csv(std::ostream& out, UniformSignal const& signal) {
    out << "time,value\n";
    for (std::size_t i = 0; i < signal.size(); ++i) {
        out << format_double(signal.time(i)) << ',' << format_double(signal[i]) << '\n';
    }
}

void write_csv(std::filesystem::path const& path, UniformSignal const& signal) {
    std::ofstream out(path);
    if (!out) {
        throw CsvError("cannot write " + path.string());
    }
    write_csv(out, signal);
    if (!out) {
        throw CsvError("write failed for " + path.string());
    }
}

} // namespace macdop

#include "macdop/csv.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <sstream>

using namespace macdop;

namespace {

UniformSignal parse(std::string const& text, CsvSchema schema = CsvSchema::automatic) {
    std::istringstream in(text);
    return parse_csv(in, schema);
}

std::string error_of(std::string const& text, CsvSchema schema = CsvSchema::automatic) {
    try {
        parse(text, schema);
    } catch (CsvError const& e) {
        return e.what();
    }
    return {};
}

bool bit_equal(double a, double b) {
    return std::memcmp(&a, &b, sizeof a) == 0;
}

} // namespace

TEST(Csv, ValueOnly) {
    UniformSignal const s = parse("1\n2\n3\n");
    EXPECT_EQ(s.t0(), 0.0);
    EXPECT_EQ(s.dt(), 1.0);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s[2], 3.0);
}

TEST(Csv, TimeValueWithHeader) {
    UniformSignal const s = parse("t,v\n0,1\n0.5,2\n1.0,3\n");
    EXPECT_EQ(s.dt(), 0.5);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s[0], 1.0);
    EXPECT_EQ(s[1], 2.0);
    EXPECT_EQ(s[2], 3.0);
}

TEST(Csv, GapReportsPhysicalLine) {
    EXPECT_NE(error_of("0,1\n1,2\n3,4\n").find("non-uniform spacing at line 3"), std::string::npos);
    EXPECT_NE(error_of("t,v\n0,1\n1,2\n3,4\n").find("non-uniform spacing at line 4"), std::string::npos);
}

TEST(Csv, Errors) {
    EXPECT_NE(error_of("").find("empty"), std::string::npos);
    EXPECT_NE(error_of("time,value\n").find("empty"), std::string::npos);
    EXPECT_NE(error_of("1\nnan\n3\n").find("non-finite value at line 2"), std::string::npos);
    EXPECT_NE(error_of("1\ninf\n").find("line 2"), std::string::npos);
    EXPECT_NE(error_of("0,1\n0,2\n").find("not strictly increasing at line 2"), std::string::npos);
    EXPECT_NE(error_of("1\n2x\n").find("line 2"), std::string::npos);
    EXPECT_THROW(parse("0,1\n1,2\n", CsvSchema::value_only), CsvError);
    EXPECT_THROW(ingest_csv("/nonexistent/file.csv"), CsvError);
}

TEST(Csv, ForcedSchemaAndBlankLines) {
    UniformSignal const s = parse("\n0.25,4\n\n0.5,5\n", CsvSchema::time_value);
    EXPECT_EQ(s.t0(), 0.25);
    EXPECT_EQ(s.dt(), 0.25);
    EXPECT_EQ(s.size(), 2u);
}

TEST(Csv, RoundTripIsBitExact) {
    UniformSignal const s(1.0 / 3.0, 0.1, macdop::testing::uniform_values(1000, 9, -1e6, 1e6));
    std::ostringstream out;
    write_csv(out, s);
    EXPECT_EQ(out.str().substr(0, 11), "time,value\n");
    UniformSignal const back = parse(out.str());
    ASSERT_EQ(back.size(), s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        ASSERT_TRUE(bit_equal(back[i], s[i])) << i;
    }
    EXPECT_TRUE(bit_equal(back.t0(), s.t0()));
}

TEST(Csv, Formatting) {
    EXPECT_EQ(format_short(1e-12), "1e-12");
    EXPECT_EQ(format_short(0.5), "0.5");
    double const third = 1.0 / 3.0;
    EXPECT_EQ(std::stod(format_double(third)), third);
}

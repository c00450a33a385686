#include "kzent/time_grid.hpp"
#include "kzent/errors.hpp"
#include "kzent/trace_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

using namespace kzent;

namespace {

Trace sample_trace()
{
    Trace t;
    t.name = "dia";
    t.metadata = {{"name", "demo"}, {"seed", "1"}, {"config", "{\"a\":[1,2],\"b\":\"x: y\"}"}};
    t.columns = {"t", "concurrence", "overlap_modulus", "h_t"};
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double c = u(rng);
        t.rows.push_back({i / 49.0, c, c, 1.0 + 1e-3 * u(rng)});
    }
    t.rows.push_back({1.5, 1e-300, 0.0, -2.5e-7});
    return t;
}

}  // namespace

TEST(TimeGrid, InclusiveEndpoints)
{
    const auto v = TimeGrid{0.0, 1.0, 201}.values();
    ASSERT_EQ(v.size(), 201u);
    EXPECT_EQ(v.front(), 0.0);
    EXPECT_EQ(v.back(), 1.0);
    EXPECT_DOUBLE_EQ(v[100], 0.5);
    EXPECT_EQ(TimeGrid({0.3, 0.3, 1}).values(), std::vector<double>{0.3});
    EXPECT_THROW((TimeGrid{0.0, 1.0, 0}.values()), ConfigError);
    EXPECT_THROW((TimeGrid{1.0, 1.0, 5}.values()), ConfigError);
    EXPECT_THROW((TimeGrid{-1.0, 1.0, 5}.values()), ConfigError);
}

TEST(TraceIo, NumberFormatting)
{
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(1e-20), "1e-20");
    EXPECT_EQ(format_number(123456789012345.0), "1.23456789012e+14");
    EXPECT_EQ(format_number(2.0 / 3.0), "0.666666666667");
}

TEST(TraceIo, EmptyTraceHasHeaderAndMetadataOnly)
{
    Trace t;
    t.metadata = {{"seed", "7"}};
    t.columns = {"t", "concurrence"};
    EXPECT_EQ(to_csv(t), "# seed: 7\nt,concurrence\n");
    const Trace back = parse_csv(to_csv(t));
    EXPECT_TRUE(back.rows.empty());
    EXPECT_EQ(back.columns, t.columns);
}

TEST(TraceIo, RoundTrip)
{
    const Trace t = sample_trace();
    const std::string text = to_csv(t);
    EXPECT_EQ(text.find('\r'), std::string::npos);
    const Trace back = parse_csv(text);
    EXPECT_EQ(back.metadata, t.metadata);
    EXPECT_EQ(back.columns, t.columns);
    ASSERT_EQ(back.rows.size(), t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t j = 0; j < t.columns.size(); ++j) EXPECT_EQ(back.rows[i][j], round_to_csv(t.rows[i][j]));
    EXPECT_EQ(to_csv(back), text);
}

TEST(TraceIo, FileRoundTripAndErrors)
{
    const auto dir = std::filesystem::temp_directory_path() / "kzent_trace_io_test";
    std::filesystem::create_directories(dir);
    const Trace t = sample_trace();
    emit_csv(t, dir / "a.csv");
    EXPECT_EQ(to_csv(read_csv(dir / "a.csv")), to_csv(t));
    try {
        emit_csv(t, dir / "missing" / "a.csv");
        FAIL() << "expected an I/O error";
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("missing"), std::string::npos);
    }
    std::filesystem::remove_all(dir);
}

TEST(TraceIo, RejectsMalformedInput)
{
    Trace t = sample_trace();
    t.metadata.emplace_back("bad", "two\nlines");
    EXPECT_THROW(to_csv(t), std::invalid_argument);
    t = sample_trace();
    t.rows[0].pop_back();
    EXPECT_THROW(to_csv(t), std::invalid_argument);
    EXPECT_THROW(parse_csv("# a: 1\n"), std::invalid_argument);
    EXPECT_THROW(parse_csv("t,c\n1,x\n"), std::invalid_argument);
    EXPECT_THROW(parse_csv("t,c\n1\n"), std::invalid_argument);
}

TEST(TraceIo, ConcurrenceTraceInvariants)
{
    Trace t = sample_trace();
    EXPECT_NO_THROW(validate_concurrence_trace(t));
    t.rows[3][0] = t.rows[2][0];
    EXPECT_THROW(validate_concurrence_trace(t), std::logic_error);
    t = sample_trace();
    t.rows[4][1] = 1.0 + 1e-9;
    EXPECT_THROW(validate_concurrence_trace(t), std::logic_error);
}

TEST(TraceIo, PlotScripts)
{
    const std::string cmp = plot_script(PlotKind::compare, {"f_para.csv", "f_dia.csv", "f_diff.csv"}, "f");
    EXPECT_NE(cmp.find("multiplot"), std::string::npos);
    EXPECT_NE(cmp.find("'f_diff.csv' using 1:4"), std::string::npos);
    EXPECT_EQ(cmp.find('/'), std::string::npos);

    const std::string heat = plot_script(PlotKind::heat_map, {"sweep.csv"}, "s");
    EXPECT_NE(heat.find("with image"), std::string::npos);
    EXPECT_NE(heat.find("using 1:2:5"), std::string::npos);

    EXPECT_THROW(plot_script(PlotKind::lines, {"/tmp/a.csv"}, "x"), std::invalid_argument);
    EXPECT_THROW(plot_script(PlotKind::lines, {"sub/a.csv"}, "x"), std::invalid_argument);
    EXPECT_THROW(plot_script(PlotKind::compare, {"a.csv"}, "x"), std::invalid_argument);
}

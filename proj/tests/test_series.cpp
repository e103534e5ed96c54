#include <gtest/gtest.h>

#include <cmath>

#include <rankcp/series.hpp>
#include <rankcp/simulate.hpp>

#include "test_helpers.hpp"

using namespace rankcp;
using testing_util::TempDir;

TEST(LoadCsv, MinimalFile) {
    TempDir dir;
    const auto s = load_csv(dir.write("r.csv", "r\n0.1\n-0.2\n0.05"));
    EXPECT_EQ(s.length(), 3u);
    EXPECT_EQ(s.dim(), 1u);
    EXPECT_EQ(s.columns, std::vector<std::string>{"r"});
    EXPECT_EQ(s.observations, PointSet::scalars({0.1, -0.2, 0.05}));
    EXPECT_FALSE(s.labels);
}

TEST(LoadCsv, LabelsPreservedVerbatim) {
    TempDir dir;
    CsvOptions opt;
    opt.label_column = "month";
    const auto s = load_csv(dir.write("m.csv", "month,ret\r\n2000-03,0.5\r\n2000-04,-1e-3\r\n2000-05,2\r\n"), opt);
    ASSERT_TRUE(s.labels);
    EXPECT_EQ(*s.labels, (std::vector<std::string>{"2000-03", "2000-04", "2000-05"}));
    EXPECT_EQ(s.observations, PointSet::scalars({0.5, -1e-3, 2}));

    CsvOptions by_index;
    by_index.label_column = "0";
    EXPECT_EQ(load_csv(dir.file("m.csv"), by_index).labels, s.labels);
}

TEST(LoadCsv, MultipleColumnsInFileOrder) {
    TempDir dir;
    CsvOptions opt;
    opt.label_column = "id";
    const auto s = load_csv(dir.write("m.csv", "a,id,b\n1,x,2\n3,\"y,z\",4\n"), opt);
    EXPECT_EQ(s.columns, (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(s.observations, PointSet::from_rows({{1, 2}, {3, 4}}));
    EXPECT_EQ(*s.labels, (std::vector<std::string>{"x", "y,z"}));
}

TEST(LoadCsv, HeaderlessFile) {
    TempDir dir;
    CsvOptions opt;
    opt.has_header = false;
    const auto s = load_csv(dir.write("h.csv", "1,2\n3,4\n"), opt);
    EXPECT_EQ(s.observations, PointSet::from_rows({{1, 2}, {3, 4}}));
}

TEST(LoadCsv, NonNumericCellNamesRowAndColumn) {
    TempDir dir;
    const auto path = dir.write("bad.csv", "r\n0.1\nabc\n0.05\n");
    try {
        load_csv(path);
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("row 2"), std::string::npos) << msg;
        EXPECT_NE(msg.find("column \"r\""), std::string::npos) << msg;
    }
}

TEST(LoadCsv, StructuralErrors) {
    TempDir dir;
    EXPECT_THROW(load_csv(dir.write("ragged.csv", "a,b\n1,2\n3\n")), DataError);
    EXPECT_THROW(load_csv(dir.write("empty.csv", "")), DataError);
    EXPECT_THROW(load_csv(dir.write("header_only.csv", "a,b\n")), DataError);
    EXPECT_THROW(load_csv(dir.file("missing.csv")), DataError);
    EXPECT_THROW(load_csv(dir.write("blank.csv", "a,b\n1,\n")), DataError);
    CsvOptions opt;
    opt.label_column = "nope";
    EXPECT_THROW(load_csv(dir.write("nolabel.csv", "a\n1\n"), opt), DataError);
    opt.label_column = "a";
    EXPECT_THROW(load_csv(dir.write("dup.csv", "a,b\nx,1\nx,2\n"), opt), DataError);
    EXPECT_THROW(load_csv(dir.write("inf.csv", "a\ninf\n")), DataError);
}

TEST(LogReturns, Values) {
    EXPECT_NEAR(log_returns(std::vector<double>{1.0, std::exp(1.0)})[0], 1.0, 1e-15);
    EXPECT_EQ(log_returns(std::vector<double>{5, 5, 5}), (std::vector<double>{0, 0}));
    for (std::size_t n = 2; n < 20; ++n) EXPECT_EQ(log_returns(std::vector<double>(n, 1.5)).size(), n - 1);
}

TEST(LogReturns, Errors) {
    EXPECT_THROW(log_returns(std::vector<double>{1.0}), std::invalid_argument);
    try {
        log_returns(std::vector<double>{1.0, 2.0, 0.0});
        FAIL();
    } catch (const std::domain_error& e) {
        EXPECT_NE(std::string(e.what()).find("position 3"), std::string::npos);
    }
}

TEST(LogReturns, LabelsShiftToLaterPrice) {
    Series prices;
    prices.columns = {"close"};
    prices.observations = PointSet::scalars({10, 20, 10});
    prices.labels = std::vector<std::string>{"jan", "feb", "mar"};
    const auto r = log_returns(prices);
    EXPECT_EQ(*r.labels, (std::vector<std::string>{"feb", "mar"}));
    EXPECT_NEAR(r.observations[0][0], std::log(2.0), 1e-15);
}

TEST(PlotData, LoadsBackExactly) {
    RegimeSpec spec;
    spec.dim = 2;
    spec.seed = 3;
    spec.segments = {{25, StudentTRegime{2.0, {0, 1e-7}, {1e5, 1e-9}}}};
    auto series = gen_series(spec);
    const auto tsv = plot_data_tsv(series, std::vector<std::size_t>{4, 9});
    EXPECT_TRUE(tsv.starts_with("# change_points: 4 9\nlabel\tx1\tx2\n"));

    TempDir dir;
    CsvOptions opt;
    opt.delimiter = '\t';
    opt.label_column = "label";
    const auto back = load_csv(dir.write("plot.tsv", tsv), opt);
    EXPECT_EQ(back.observations, series.observations);
    EXPECT_EQ(back.columns, series.columns);
    EXPECT_EQ(back.labels->front(), "1");
}

#include <doctest.h>

#include <cmath>

#include "epf/error.hpp"
#include "epf/ingest/ingest.hpp"
#include "epf/ingest/standardize.hpp"
#include "test_util.hpp"

using namespace epf;
using namespace epf_test;

namespace {

std::string hourly_csv(const char* date, int hours, double base, int start_hour = 0) {
    std::string s = "timestamp,value\n";
    for (int h = 0; h < hours; ++h) {
        char line[64];
        std::snprintf(line, sizeof(line), "%sT%02d:00:00,%g\n", date, start_hour + h,
                      base + h);
        s += line;
    }
    return s;
}

ColumnSpec spec_of(const std::string& file, const std::string& src, const std::string& canon) {
    ColumnSpec s;
    s.source_file = file;
    s.source_column = src;
    s.canonical_name = canon;
    s.availability = AvailabilityClass::historical_exogenous;
    s.unit = "MW";
    return s;
}

}  // namespace

TEST_CASE("ingest: two sources on identical grids join with zero missing") {
    auto dir = scratch_dir("ingest_join");
    auto fa = write_file(dir, "a.csv", hourly_csv("2025-01-01", 24, 100));
    auto fb = write_file(dir, "b.csv", hourly_csv("2025-01-01", 24, 500));
    auto table = ingest_sources({spec_of(fa, "value", "load"), spec_of(fb, "value", "wind")}, 60);
    CHECK(table.rows() == 24);
    for (const auto& col : table.columns())
        for (auto m : col.missing) CHECK(m == 0);
    CHECK(*table.at(Timestamp(Date(2025, 1, 1), 0), "load") == 100.0);
    CHECK(*table.at(Timestamp(Date(2025, 1, 1), 0), "wind") == 500.0);
}

TEST_CASE("ingest: disjoint coverage yields complementary masks over the union") {
    auto dir = scratch_dir("ingest_union");
    auto fa = write_file(dir, "jan.csv", hourly_csv("2025-01-30", 24, 1));
    auto fb = write_file(dir, "feb.csv", hourly_csv("2025-01-31", 24, 2));
    auto table = ingest_sources({spec_of(fa, "value", "a"), spec_of(fb, "value", "b")}, 60);
    CHECK(table.rows() == 48);
    const Column& a = table.column("a");
    const Column& b = table.column("b");
    for (size_t r = 0; r < 24; ++r) {
        CHECK(a.missing[r] == 0);
        CHECK(b.missing[r] == 1);
    }
    for (size_t r = 24; r < 48; ++r) {
        CHECK(a.missing[r] == 1);
        CHECK(b.missing[r] == 0);
    }
}

TEST_CASE("ingest: duplicate timestamp names file and instant") {
    auto dir = scratch_dir("ingest_dup");
    std::string csv = "timestamp,value\n2025-01-01T00:00:00,1\n2025-01-01T00:00:00,2\n";
    auto fa = write_file(dir, "dup.csv", csv);
    try {
        ingest_sources({spec_of(fa, "value", "x")}, 60);
        FAIL("expected duplicate-timestamp error");
    } catch (const Error& e) {
        CHECK(e.code() == "duplicate-timestamp");
        CHECK(std::string(e.what()).find("dup.csv") != std::string::npos);
        CHECK(std::string(e.what()).find("2025-01-01T00:00") != std::string::npos);
    }
}

TEST_CASE("ingest: canonical-name collision rejected") {
    auto dir = scratch_dir("ingest_collision");
    auto fa = write_file(dir, "a.csv", hourly_csv("2025-01-01", 2, 0));
    CHECK_THROWS_WITH_AS(
        ingest_sources({spec_of(fa, "value", "x"), spec_of(fa, "value", "x")}, 60),
        doctest::Contains("canonical-name-collision"), Error);
}

TEST_CASE("ingest: unparsable timestamp rejected") {
    auto dir = scratch_dir("ingest_badts");
    auto fa = write_file(dir, "a.csv", "timestamp,value\nyesterday,1\n");
    CHECK_THROWS_WITH_AS(ingest_sources({spec_of(fa, "value", "x")}, 60),
                         doctest::Contains("unparsable-timestamp"), Error);
}

TEST_CASE("ingest: deterministic byte-identical serialization") {
    auto dir = scratch_dir("ingest_det");
    auto fa = write_file(dir, "a.csv", hourly_csv("2025-01-01", 24, 3.25));
    auto run = [&](const char* tag) {
        auto table = ingest_sources({spec_of(fa, "value", "x")}, 60);
        std::string csv = dir + "/out" + tag + ".csv";
        std::string side = dir + "/out" + tag + ".json";
        save_canonical_table(table, csv, side);
        return read_file(csv) + read_file(side);
    };
    CHECK(run("1") == run("2"));
}

TEST_CASE("ingest: canonical table round trip preserves values and masks") {
    auto dir = scratch_dir("ingest_roundtrip");
    std::string csv = "timestamp,value\n2025-01-01T00:00:00,1.5\n2025-01-01T01:00:00,\n"
                      "2025-01-01T02:00:00,-3.75\n";
    auto fa = write_file(dir, "a.csv", csv);
    auto table = ingest_sources({spec_of(fa, "value", "x")}, 60);
    save_canonical_table(table, dir + "/t.csv", dir + "/t.json");
    auto back = load_canonical_table(dir + "/t.csv", dir + "/t.json");
    CHECK(back.rows() == table.rows());
    CHECK(back.column("x").missing[1] == 1);
    CHECK(back.column("x").values[2] == -3.75);
    CHECK(back.column("x").availability == AvailabilityClass::historical_exogenous);
}

TEST_CASE("ingest: forward-fill option fills interior gaps only") {
    auto dir = scratch_dir("ingest_ff");
    std::string csv = "timestamp,value\n2025-01-01T00:00:00,\n2025-01-01T01:00:00,7\n"
                      "2025-01-01T02:00:00,\n2025-01-01T03:00:00,9\n";
    auto fa = write_file(dir, "a.csv", csv);
    auto table = ingest_sources({spec_of(fa, "value", "x")}, 60, MissingPolicy::forward_fill);
    const Column& x = table.column("x");
    CHECK(x.missing[0] == 1);  // nothing to fill from
    CHECK(x.missing[2] == 0);
    CHECK(x.values[2] == 7.0);
}

// ---------------------------------------------------------------------------
// Standardizer
// ---------------------------------------------------------------------------

namespace {

TimeSeriesTable small_table(const std::vector<double>& vals) {
    std::vector<Timestamp> index;
    Column c;
    c.name = "x";
    c.availability = AvailabilityClass::historical_exogenous;
    for (size_t i = 0; i < vals.size(); ++i) {
        index.push_back(Timestamp(Date(2025, 1, 1).plus_days(static_cast<int>(i)), 0));
        c.values.push_back(vals[i]);
        c.missing.push_back(0);
    }
    return TimeSeriesTable(60, std::move(index), {std::move(c)});
}

}  // namespace

TEST_CASE("standardizer: population moments match a brute-force oracle") {
    auto table = small_table({1.0, 2.0, 3.0});
    auto sz = Standardizer::fit(table, Date(2025, 1, 1), Date(2025, 1, 3), {"x"});
    const auto& st = sz.stats("x");
    double mean = (1.0 + 2.0 + 3.0) / 3.0;
    double ss = 0.0;
    for (double v : {1.0, 2.0, 3.0}) ss += (v - mean) * (v - mean);
    double pop_std = std::sqrt(ss / 3.0);
    CHECK(st.mean == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(st.stddev == doctest::Approx(pop_std).epsilon(1e-15));
    CHECK(st.stddev == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
}

TEST_CASE("standardizer: constant column flagged zero-variance and passed through") {
    auto table = small_table({5.0, 5.0, 5.0});
    auto sz = Standardizer::fit(table, Date(2025, 1, 1), Date(2025, 1, 3), {"x"});
    CHECK(sz.stats("x").zero_variance);
    auto out = sz.apply(table);
    CHECK(out.column("x").values[0] == 5.0);
}

TEST_CASE("standardizer: train mean about zero after applying") {
    auto table = small_table({3.0, 7.0, 11.0, 19.0, -4.0});
    auto sz = Standardizer::fit(table, Date(2025, 1, 1), Date(2025, 1, 5), {"x"});
    auto out = sz.apply(table);
    double mean = 0.0;
    for (double v : out.column("x").values) mean += v;
    mean /= 5.0;
    CHECK(std::abs(mean) < 1e-12);
}

TEST_CASE("standardizer: transform/invert round trip within 1e-10") {
    auto table = small_table({3.5, -120.25, 884.0, 0.125, 77.7});
    auto sz = Standardizer::fit(table, Date(2025, 1, 1), Date(2025, 1, 5), {"x"});
    std::vector<double> vals = {1e6, -3.0, 0.0};
    auto z = sz.transform("x", vals);
    auto back = sz.invert("x", z);
    for (size_t i = 0; i < vals.size(); ++i)
        CHECK(back[i] == doctest::Approx(vals[i]).epsilon(1e-10));
}

TEST_CASE("standardizer: identity statistics leave values unchanged") {
    auto table = small_table({0.5, -0.5});  // mean 0
    auto sz = Standardizer::fit(table, Date(2025, 1, 1), Date(2025, 1, 2), {"x"});
    // stddev is 0.5 here, so build the identity check from transform/invert
    auto z = sz.transform("x", {0.25});
    CHECK(sz.invert("x", z)[0] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("standardizer: unknown column raises") {
    auto table = small_table({1.0, 2.0});
    auto sz = Standardizer::fit(table, Date(2025, 1, 1), Date(2025, 1, 2), {"x"});
    CHECK_THROWS_WITH_AS(sz.stats("y"), doctest::Contains("unknown-column"), Error);
}

TEST_CASE("standardizer: leakage guard - poisoning rows outside the train range") {
    auto clean = small_table({1.0, 2.0, 3.0, 4.0});
    auto sz1 = Standardizer::fit(clean, Date(2025, 1, 1), Date(2025, 1, 2), {"x"});
    auto poisoned = small_table({1.0, 2.0, 1e9, -1e9});
    auto sz2 = Standardizer::fit(poisoned, Date(2025, 1, 1), Date(2025, 1, 2), {"x"});
    CHECK(sz1.stats("x").mean == sz2.stats("x").mean);
    CHECK(sz1.stats("x").stddev == sz2.stats("x").stddev);
}

TEST_CASE("standardizer: empty training range raises") {
    auto table = small_table({1.0, 2.0});
    CHECK_THROWS_WITH_AS(
        Standardizer::fit(table, Date(2024, 1, 1), Date(2024, 1, 5), {"x"}),
        doctest::Contains("empty-training-range"), Error);
}

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "streamq/errors.hpp"
#include "streamq/reference.hpp"
#include "streamq/sketch.hpp"

using namespace streamq;

namespace {

CdfSketch sketch_of(const Grid& grid, const std::vector<double>& values) {
    CdfSketch s(grid);
    for (double v : values) {
        s.insert(v);
    }
    return s;
}

std::uint64_t counter_sum(const CdfSketch& s) {
    std::uint64_t sum = s.underflow() + s.overflow();
    for (std::uint64_t c : s.bin_counts()) {
        sum += c;
    }
    return sum;
}

CdfSketch random_sketch(const Grid& grid, std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> value(-2.0, 12.0);
    CdfSketch s(grid);
    for (int i = 0; i < n; ++i) {
        s.insert(value(rng));
    }
    return s;
}

}  // namespace

TEST_CASE("insert routes to bins and under/overflow") {
    const Grid g = Grid::uniform(0, 10, 10);
    CdfSketch s(g);
    s.insert(5.0);
    CHECK(s.bin_counts()[5] == 1);
    CHECK(s.total() == 1);
    s.insert(-3.0);
    CHECK(s.underflow() == 1);
    s.insert(10.0);
    CHECK(s.overflow() == 1);
    CHECK(s.total() == 3);
    CHECK_THROWS_AS(s.insert(NAN), NonFiniteValue);
}

TEST_CASE("insert matches an independent one-pass binning") {
    const Grid g = Grid::uniform(0, 10, 10);
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> uni(0.0, 10.0);
    std::vector<double> values(1000);
    for (double& v : values) {
        v = uni(rng);
    }
    const CdfSketch s = sketch_of(g, values);

    // brute-force oracle: scan edges per value
    std::vector<std::uint64_t> expected(g.bin_count(), 0);
    for (double v : values) {
        for (std::size_t k = 0; k < g.bin_count(); ++k) {
            if (v >= g.edges()[k] && v < g.edges()[k + 1]) {
                ++expected[k];
                break;
            }
        }
    }
    CHECK(s.bin_counts() == expected);
    CHECK(s.total() == 1000);
}

TEST_CASE("merge with the empty sketch is the identity") {
    const Grid g = Grid::uniform(0, 10, 10);
    const CdfSketch s = sketch_of(g, {1.0, 5.5, 9.0, -2.0, 12.0});
    CHECK(merge_counts(s, CdfSketch(g)) == s);
}

TEST_CASE("subtract of self yields the empty sketch") {
    const Grid g = Grid::uniform(0, 10, 10);
    const CdfSketch s = sketch_of(g, {1.0, 5.5, 9.0});
    const CdfSketch diff = subtract_counts(s, s);
    CHECK(diff.total() == 0);
    CHECK(diff == CdfSketch(g));
}

TEST_CASE("merge equals binning the union") {
    const Grid g = Grid::uniform(0, 10, 10);
    const CdfSketch a = sketch_of(g, {1.0, 2.0});
    const CdfSketch b = sketch_of(g, {3.0, 4.0});
    CHECK(merge_counts(a, b) == sketch_of(g, {1.0, 2.0, 3.0, 4.0}));
}

TEST_CASE("merge and subtract reject grid mismatches") {
    const CdfSketch a{Grid::uniform(0, 10, 10)};
    const CdfSketch b{Grid::uniform(0, 10, 20)};
    CHECK_THROWS_AS(merge_counts(a, b), GridMismatch);
    CHECK_THROWS_AS(subtract_counts(a, b), GridMismatch);
}

TEST_CASE("subtract underflow signals corrupted bookkeeping") {
    const Grid g = Grid::uniform(0, 10, 10);
    const CdfSketch a = sketch_of(g, {1.0});
    const CdfSketch b = sketch_of(g, {1.0, 1.2});
    CHECK_THROWS_AS(subtract_counts(a, b), NegativeCount);
    // a failed subtract must leave the operand untouched
    CdfSketch c = a;
    try {
        c.subtract(b);
    } catch (const NegativeCount&) {
    }
    CHECK(c == a);
}

TEST_CASE("counter saturation is an error, not wraparound") {
    const Grid g = Grid::uniform(0, 1, 1);
    const std::uint64_t huge = std::numeric_limits<std::uint64_t>::max() - 1;
    const CdfSketch a = CdfSketch::from_counts(g, {huge}, 0, 0);
    const CdfSketch b = CdfSketch::from_counts(g, {2}, 0, 0);
    CHECK_THROWS_AS(merge_counts(a, b), CountSaturation);
    CdfSketch c = CdfSketch::from_counts(
        g, {std::numeric_limits<std::uint64_t>::max()}, 0, 0);
    CHECK_THROWS_AS(c.insert(0.5), CountSaturation);
}

TEST_CASE("cdf_at hand-checked values") {
    const Grid g4 = Grid::uniform(0, 4, 4);
    const CdfSketch s4 = sketch_of(g4, {1.0, 2.0, 3.0});
    CHECK(s4.cdf_at(4.0) == doctest::Approx(1.0));
    CHECK(s4.cdf_at(-1.0) == doctest::Approx(0.0));

    const Grid g10 = Grid::uniform(0, 10, 10);
    const CdfSketch s10 = sketch_of(g10, {2.5, 2.5, 7.5, 7.5});
    CHECK(s10.cdf_at(2.5) == doctest::Approx(0.25));
    CHECK(s10.cdf_at(7.5) == doctest::Approx(0.75));
}

TEST_CASE("cdf_at edge behavior and errors") {
    const Grid g = Grid::uniform(0, 10, 10);
    CdfSketch s(g);
    CHECK_THROWS_AS(s.cdf_at(5.0), EmptySketch);
    s.insert(-1.0);
    s.insert(5.5);
    // left edge carries only underflow mass
    CHECK(s.cdf_at(0.0) == doctest::Approx(0.5));
    CHECK(s.cdf_at(10.0) == doctest::Approx(1.0));
    CHECK(s.cdf_at(100.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(s.cdf_at(NAN), NonFiniteValue);
}

TEST_CASE("cdf_at is exact at grid edges") {
    const Grid g = Grid::uniform(0, 10, 10);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> value(-2.0, 12.0);
    std::vector<double> values(500);
    for (double& v : values) {
        v = value(rng);
    }
    const CdfSketch s = sketch_of(g, values);
    for (double e : g.edges()) {
        std::uint64_t below_in_range = 0;
        for (double v : values) {
            if (v >= g.edges().front() && v < e) {
                ++below_in_range;
            }
        }
        const double expect = e >= g.edges().back()
                                  ? 1.0
                                  : static_cast<double>(below_in_range +
                                                        s.underflow()) /
                                        static_cast<double>(s.total());
        CHECK(s.cdf_at(e) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("cdf_at is monotone") {
    const Grid g = Grid::uniform(0, 10, 10);
    std::mt19937 rng(11);
    const CdfSketch s = random_sketch(g, rng, 300);
    std::uniform_real_distribution<double> probe(-3.0, 13.0);
    for (int i = 0; i < 200; ++i) {
        double x1 = probe(rng);
        double x2 = probe(rng);
        if (x1 > x2) {
            std::swap(x1, x2);
        }
        CHECK(s.cdf_at(x1) <= s.cdf_at(x2) + 1e-12);
    }
}

TEST_CASE("quantile hand-checked values") {
    const Grid g = Grid::uniform(0, 10, 10);
    const CdfSketch s = sketch_of(g, {5.0});
    const QuantileResult q = s.quantile(0.5);
    CHECK(q.value == doctest::Approx(5.5));
    CHECK_FALSE(q.clamped);

    const CdfSketch t = sketch_of(g, {7.2});
    CHECK(t.quantile(0.0).value == doctest::Approx(7.0));
    CHECK_FALSE(t.quantile(0.0).clamped);
}

TEST_CASE("quantile clamps into the edge when mass is out of range") {
    const Grid g = Grid::uniform(0, 10, 10);
    const CdfSketch s = sketch_of(g, {-5.0, 5.0, 15.0});
    const QuantileResult lo = s.quantile(0.01);
    CHECK(lo.value == doctest::Approx(0.0));
    CHECK(lo.clamped);
    const QuantileResult hi = s.quantile(0.99);
    CHECK(hi.value == doctest::Approx(10.0));
    CHECK(hi.clamped);
    const QuantileResult mid = s.quantile(0.5);
    CHECK_FALSE(mid.clamped);
}

TEST_CASE("quantile errors") {
    const Grid g = Grid::uniform(0, 10, 10);
    CdfSketch s(g);
    CHECK_THROWS_AS(s.quantile(0.5), EmptySketch);
    s.insert(5.0);
    CHECK_THROWS_AS(s.quantile(-0.1), InvalidProbability);
    CHECK_THROWS_AS(s.quantile(1.5), InvalidProbability);
}

TEST_CASE("quantile skips empty bins deterministically") {
    const Grid g = Grid::uniform(0, 10, 10);
    const CdfSketch s = sketch_of(g, {1.5, 8.5});
    // p=0.75 -> target 1.5, inside the bin holding 8.5
    CHECK(s.quantile(0.75).value == doctest::Approx(8.5));
    // p=0 -> left edge of the first nonempty bin
    CHECK(s.quantile(0.0).value == doctest::Approx(1.0));
}

TEST_CASE("quantile within one bin width of the sort-based oracle") {
    const Grid g = Grid::uniform(0, 1, 100);
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> values(10000);
    CdfSketch s(g);
    for (double& v : values) {
        v = uni(rng);
        s.insert(v);
    }
    for (double p : {0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99}) {
        const double exact = reference::exact_quantile(values, p);
        CHECK(std::abs(s.quantile(p).value - exact) <= 0.01);
    }
}

TEST_CASE("inverse consistency between cdf_at and quantile") {
    const Grid g = Grid::uniform(0, 10, 20);
    std::mt19937 rng(5);
    const CdfSketch s = random_sketch(g, rng, 400);
    const double inv_n = 1.0 / static_cast<double>(s.total());
    std::uniform_real_distribution<double> prob(0.01, 0.99);
    for (int i = 0; i < 200; ++i) {
        const double p = prob(rng);
        const QuantileResult q = s.quantile(p);
        if (q.clamped) {
            continue;
        }
        CHECK(s.cdf_at(q.value) >= p - inv_n - 1e-9);
        // round-tripping a value stays in its bin
        const double x = q.value;
        const double p_back = s.cdf_at(x);
        if (p_back > 0.0 && p_back < 1.0) {
            const QuantileResult q2 = s.quantile(p_back);
            if (!q2.clamped) {
                CHECK(g.locate(q2.value).bin == g.locate(x).bin);
            }
        }
    }
}

TEST_CASE("conservation holds through insert/merge/subtract") {
    const Grid g = Grid::uniform(0, 10, 10);
    std::mt19937 rng(99);
    CdfSketch acc(g);
    for (int round = 0; round < 50; ++round) {
        const CdfSketch piece = random_sketch(g, rng, 20);
        acc.add(piece);
        CHECK(acc.total() == counter_sum(acc));
        if (round % 3 == 0) {
            acc.subtract(piece);
            CHECK(acc.total() == counter_sum(acc));
        }
    }
}

TEST_CASE("subtract(merge(a,b), b) == a for random same-grid sketches") {
    const Grid g = Grid::uniform(0, 10, 16);
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> size(0, 100);
    for (int trial = 0; trial < 100; ++trial) {
        const CdfSketch a = random_sketch(g, rng, size(rng));
        const CdfSketch b = random_sketch(g, rng, size(rng));
        CHECK(subtract_counts(merge_counts(a, b), b) == a);
    }
}

TEST_CASE("snapshot is isolated from later inserts") {
    const Grid g = Grid::uniform(0, 10, 10);
    CdfSketch s(g);
    CHECK(s.snapshot() == CdfSketch(g));
    s.insert(3.0);
    const CdfSketch snap = s.snapshot();
    s.insert(7.0);
    s.insert(8.0);
    CHECK(snap.total() == 1);
    CHECK(snap.bin_counts()[3] == 1);
    CHECK(snap.bin_counts()[7] == 0);
    for (double p : {0.1, 0.5, 0.9}) {
        CHECK(snap.quantile(p).value == doctest::Approx(3.0 + p));
    }
}

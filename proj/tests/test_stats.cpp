#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "skillaudit/stats.hpp"

using namespace skillaudit;

namespace {

bool near(double a, double b, double tol = 1e-9) { return std::fabs(a - b) < tol; }

// Independent ICC(2,1) oracle: total/between decomposition instead of the
// residual double loop, so an algebra slip in either side shows up.
double icc_oracle(const std::vector<std::vector<double>>& m) {
    std::size_t n = m.size(), k = m[0].size();
    double grand = 0.0;
    for (const auto& row : m)
        for (double x : row) grand += x;
    grand /= static_cast<double>(n * k);

    double sst = 0.0, ssbs = 0.0, ssbr = 0.0;
    for (const auto& row : m)
        for (double x : row) sst += (x - grand) * (x - grand);
    for (std::size_t i = 0; i < n; ++i) {
        double rm = 0.0;
        for (std::size_t j = 0; j < k; ++j) rm += m[i][j];
        rm /= static_cast<double>(k);
        ssbs += (rm - grand) * (rm - grand) * static_cast<double>(k);
    }
    for (std::size_t j = 0; j < k; ++j) {
        double cm = 0.0;
        for (std::size_t i = 0; i < n; ++i) cm += m[i][j];
        cm /= static_cast<double>(n);
        ssbr += (cm - grand) * (cm - grand) * static_cast<double>(n);
    }
    double sse = sst - ssbs - ssbr;
    double msr = ssbs / static_cast<double>(n - 1);
    double msc = ssbr / static_cast<double>(k - 1);
    double mse = sse / static_cast<double>((n - 1) * (k - 1));
    double kd = static_cast<double>(k), nd = static_cast<double>(n);
    return (msr - mse) / (msr + (kd - 1.0) * mse + (kd / nd) * (msc - mse));
}

// Independent kappa oracle via observed/expected agreement proportions.
double kappa_oracle(const std::vector<int>& a, const std::vector<int>& b) {
    double obs[4][4] = {};
    for (std::size_t i = 0; i < a.size(); ++i) obs[a[i]][b[i]] += 1.0;
    double n = static_cast<double>(a.size());
    double po = 0.0, pe = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double w = 1.0 - std::abs(i - j) / 3.0;
            double ra = 0.0, rb = 0.0;
            for (int t = 0; t < 4; ++t) {
                ra += obs[i][t];
                rb += obs[t][j];
            }
            po += w * obs[i][j] / n;
            pe += w * (ra / n) * (rb / n);
        }
    return (po - pe) / (1.0 - pe);
}

// Midranks recomputed by sorting pairs rather than index vectors.
std::vector<double> ranks_oracle(const std::vector<double>& absd) {
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i = 0; i < absd.size(); ++i) order.push_back({absd[i], i});
    std::stable_sort(order.begin(), order.end());
    std::vector<double> ranks(absd.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && order[j + 1].first == order[i].first) ++j;
        double r = static_cast<double>(i + j + 2) / 2.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t].second] = r;
        i = j + 1;
    }
    return ranks;
}

struct WilcoxonOracle {
    double statistic;
    double p_value;
    bool all_zero;
};

// Full sign enumeration with the symmetric two-sided deviation rule.
WilcoxonOracle wilcoxon_oracle(const std::vector<double>& diffs) {
    std::vector<double> d;
    for (double x : diffs)
        if (x != 0.0) d.push_back(x);
    if (d.empty()) return {0.0, 1.0, true};
    std::vector<double> ad(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) ad[i] = std::fabs(d[i]);
    auto ranks = ranks_oracle(ad);
    double total = 0.0, w_plus = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        total += ranks[i];
        if (d[i] > 0) w_plus += ranks[i];
    }
    double center = total / 2.0;
    double dev = std::fabs(w_plus - center);
    std::size_t m = d.size(), hits = 0;
    std::size_t all = static_cast<std::size_t>(1) << m;
    for (std::size_t mask = 0; mask < all; ++mask) {
        double w = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (static_cast<std::size_t>(1) << i)) w += ranks[i];
        if (std::fabs(w - center) >= dev - 1e-9) ++hits;
    }
    return {std::min(w_plus, total - w_plus),
            static_cast<double>(hits) / static_cast<double>(all), false};
}

}  // namespace

TEST_CASE("icc matches frozen worked examples", "[stats][icc]") {
    auto r = icc_2_1({{80, 84}, {60, 58}, {90, 95}, {70, 66}});
    CHECK(near(r.value, 0.965749578888265));
    CHECK(near(r.anova.msr, 439.791666666667));
    CHECK(near(r.anova.msc, 1.125));
    CHECK(near(r.anova.mse, 9.79166666666667));
    CHECK(near(r.ci_low, 0.593775967645583));
    CHECK(near(r.ci_high, 0.997743010298265));

    // published 6x4 example: 0.29, CI [0.019, 0.761]
    auto r2 = icc_2_1({{9, 2, 5, 8},
                       {6, 1, 3, 2},
                       {8, 4, 6, 8},
                       {7, 1, 2, 6},
                       {10, 5, 6, 9},
                       {6, 2, 4, 7}});
    CHECK(near(r2.value, 0.289763779527559));
    CHECK(near(r2.ci_low, 0.018786513374712));
    CHECK(near(r2.ci_high, 0.761084369648953));
}

TEST_CASE("icc identity and degeneracy", "[stats][icc]") {
    auto perfect = icc_2_1({{1, 1}, {2, 2}, {3, 3}});
    CHECK(near(perfect.value, 1.0));

    try {
        icc_2_1({{5, 5}, {5, 5}, {5, 5}});
        FAIL("expected throw");
    } catch (const AuditError& e) {
        CHECK(e.code() == ErrorCode::DegenerateMatrix);
    }
    CHECK_THROWS_AS(icc_2_1({{1, 2}}), AuditError);
    CHECK_THROWS_AS(icc_2_1({{1}, {2}}), AuditError);
    CHECK_THROWS_AS(icc_2_1({{1, 2}, {3}}), AuditError);
}

TEST_CASE("icc agrees with the decomposition oracle on random matrices", "[stats][icc]") {
    std::mt19937_64 rng(91);
    std::uniform_real_distribution<double> val(0.0, 100.0);
    std::uniform_int_distribution<int> nsub(3, 9), nrat(2, 4);
    for (int t = 0; t < 20; ++t) {
        std::size_t n = nsub(rng), k = nrat(rng);
        std::vector<std::vector<double>> m(n, std::vector<double>(k));
        for (auto& row : m)
            for (auto& x : row) x = val(rng);
        CAPTURE(t, n, k);
        CHECK(near(icc_2_1(m).value, icc_oracle(m)));
    }
}

TEST_CASE("icc is invariant under subject and rater permutation", "[stats][icc]") {
    std::vector<std::vector<double>> m = {{80, 84, 78}, {60, 58, 61}, {90, 95, 88}, {70, 66, 73}};
    auto base = icc_2_1(m);

    auto rows = m;
    std::swap(rows[0], rows[3]);
    std::swap(rows[1], rows[2]);
    auto perm_rows = icc_2_1(rows);
    CHECK(near(perm_rows.value, base.value));
    CHECK(near(perm_rows.ci_low, base.ci_low));

    auto cols = m;
    for (auto& row : cols) std::swap(row[0], row[2]);
    auto perm_cols = icc_2_1(cols);
    CHECK(near(perm_cols.value, base.value));
    CHECK(near(perm_cols.ci_high, base.ci_high));
}

TEST_CASE("weighted kappa matches hand-computed cases", "[stats][kappa]") {
    auto k = weighted_kappa_linear({0, 1, 2, 3, 3}, {0, 2, 2, 3, 1});
    CHECK(near(k.value, 16.0 / 31.0));
    CHECK_FALSE(k.degenerate);

    auto identical = weighted_kappa_linear({3, 3, 3}, {3, 3, 3});
    CHECK(near(identical.value, 1.0));
    CHECK(identical.degenerate);

    auto anti = weighted_kappa_linear({0, 3}, {3, 0});
    CHECK(near(anti.value, -1.0));

    // constant disagreement: observed equals expected, kappa is exactly zero
    auto const_diff = weighted_kappa_linear({3, 3, 3}, {0, 0, 0});
    CHECK(near(const_diff.value, 0.0));
    CHECK_FALSE(const_diff.degenerate);
}

TEST_CASE("weighted kappa agrees with the proportion oracle and stays in [-1,1]",
          "[stats][kappa]") {
    std::mt19937_64 rng(92);
    std::uniform_int_distribution<int> cat(0, 3), len(2, 30);
    for (int t = 0; t < 20; ++t) {
        std::size_t n = len(rng);
        std::vector<int> a(n), b(n);
        for (auto& x : a) x = cat(rng);
        for (auto& x : b) x = cat(rng);
        auto k = weighted_kappa_linear(a, b);
        if (k.degenerate) continue;
        CAPTURE(t, n);
        CHECK(near(k.value, kappa_oracle(a, b)));
        CHECK(k.value >= -1.0 - 1e-12);
        CHECK(k.value <= 1.0 + 1e-12);
    }
    CHECK_THROWS_AS(weighted_kappa_linear({0, 1}, {0}), AuditError);
    CHECK_THROWS_AS(weighted_kappa_linear({0, 4}, {0, 1}), AuditError);
}

TEST_CASE("wilcoxon exact branch matches frozen enumerations", "[stats][wilcoxon]") {
    auto w = wilcoxon_signed_rank({1, -2, 3, -4, 5}, {0, 0, 0, 0, 0});
    CHECK(w.method == "exact");
    CHECK(near(w.statistic, 6.0));
    CHECK(near(w.p_value, 0.8125));

    auto w8 = wilcoxon_signed_rank({2, -2, 3, 3, -1, 4, -4, 5}, std::vector<double>(8, 0.0));
    CHECK(near(w8.statistic, 10.0));
    CHECK(near(w8.p_value, 0.296875));

    auto w12 = wilcoxon_signed_rank({1, 2, -3, 4, 5, -6, 7, 8, -9, 10, 11, -1},
                                    std::vector<double>(12, 0.0));
    CHECK(near(w12.statistic, 22.5));
    CHECK(near(w12.p_value, 0.2109375));
}

TEST_CASE("wilcoxon drops zero differences and flags the empty case", "[stats][wilcoxon]") {
    auto w = wilcoxon_signed_rank({1, 0, -2, 0, 3}, {1, 0, 0, 0, 0});
    CHECK(w.n_used == 2);
    auto wz = wilcoxon_signed_rank({4, 4}, {4, 4});
    CHECK(wz.all_zero);
    CHECK(near(wz.p_value, 1.0));
}

TEST_CASE("wilcoxon exact agrees with full sign enumeration on random instances",
          "[stats][wilcoxon]") {
    std::mt19937_64 rng(93);
    std::uniform_int_distribution<int> len(2, 11), dval(-5, 5);
    for (int t = 0; t < 20; ++t) {
        std::size_t n = len(rng);
        std::vector<double> a(n), zero(n, 0.0);
        for (auto& x : a) x = dval(rng);
        auto got = wilcoxon_signed_rank(a, zero);
        auto want = wilcoxon_oracle(a);
        CAPTURE(t, n);
        CHECK(got.all_zero == want.all_zero);
        if (!want.all_zero) {
            CHECK(got.method == "exact");
            CHECK(near(got.statistic, want.statistic));
            CHECK(near(got.p_value, want.p_value));
        }
    }
}

TEST_CASE("wilcoxon normal branch matches frozen references and stays near exact",
          "[stats][wilcoxon]") {
    std::vector<double> d13 = {1.5, -0.5, 2.0, 2.0, -1.0, 0.5, 3.0,
                               -2.5, 1.0, 1.0, -0.5, 2.5, 0.5};
    auto w = wilcoxon_signed_rank(d13, std::vector<double>(13, 0.0));
    CHECK(w.method == "normal");
    CHECK(near(w.statistic, 22.5));
    CHECK(near(w.p_value, 0.114069377587455));

    std::vector<double> d20 = {2.0, 0.5, 0.5, 1.0, -0.5, 0.5, 0.5, -1.5, 1.5, 1.0,
                               0.5, 0.5, 1.0, 0.5, 0.5, -1.0, 1.0, 0.5, 0.5, -1.0};
    auto w20 = wilcoxon_signed_rank(d20, std::vector<double>(20, 0.0));
    CHECK(near(w20.statistic, 53.5));
    CHECK(near(w20.p_value, 0.051427043100858));

    // at n = 12 both branches are available; they should roughly agree
    std::vector<double> d12 = {1.5, -0.5, 2.0, 2.0, -1.0, 0.5, 3.0, -2.5, 1.0, 1.0, -0.5, 2.5};
    auto exact = wilcoxon_signed_rank(d12, std::vector<double>(12, 0.0));
    auto approx = wilcoxon_signed_rank(d12, std::vector<double>(12, 0.0), 0);
    CHECK(exact.method == "exact");
    CHECK(approx.method == "normal");
    CHECK(std::fabs(exact.p_value - approx.p_value) < 0.05);
}

TEST_CASE("bland-altman limits bracket the bias at 1.96 sd", "[stats][blandaltman]") {
    auto ba = bland_altman({2, 4, 6}, {1, 2, 3});
    CHECK(near(ba.bias, 2.0));
    CHECK(near(ba.sd, 1.0));
    CHECK(near(ba.loa_low, 0.04));
    CHECK(near(ba.loa_high, 3.96));
    CHECK(near(ba.loa_high - ba.loa_low, 2 * 1.96 * ba.sd, 1e-12));

    auto zero = bland_altman({5, 7, 9}, {5, 7, 9});
    CHECK(near(zero.bias, 0.0));
    CHECK(near(zero.sd, 0.0));

    CHECK_THROWS_AS(bland_altman({1}, {1}), AuditError);
    CHECK_THROWS_AS(bland_altman({1, 2}, {1}), AuditError);
}

TEST_CASE("bland-altman recomputes cleanly on random data", "[stats][blandaltman]") {
    std::mt19937_64 rng(94);
    std::uniform_real_distribution<double> val(0.0, 100.0);
    std::uniform_int_distribution<int> len(2, 40);
    for (int t = 0; t < 20; ++t) {
        std::size_t n = len(rng);
        std::vector<double> a(n), b(n), d(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = val(rng);
            b[i] = val(rng);
            d[i] = a[i] - b[i];
        }
        double mean = 0.0;
        for (double x : d) mean += x;
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (double x : d) ss += (x - mean) * (x - mean);
        double sd = std::sqrt(ss / static_cast<double>(n - 1));
        auto ba = bland_altman(a, b);
        CAPTURE(t, n);
        CHECK(near(ba.bias, mean));
        CHECK(near(ba.sd, sd));
        CHECK(near(ba.loa_low, mean - 1.96 * sd));
        CHECK(near(ba.loa_high, mean + 1.96 * sd));
    }
}

TEST_CASE("rank confusion counts and agreement rates", "[stats][confusion]") {
    auto rc = rank_confusion({0, 1, 2, 3, 3, 2}, {0, 2, 2, 3, 1, 1});
    CHECK(rc.counts[0][0] == 1);
    CHECK(rc.counts[1][2] == 1);
    CHECK(rc.counts[3][1] == 1);
    CHECK(near(rc.exact_agreement, 3.0 / 6.0));
    CHECK(near(rc.within_one, 5.0 / 6.0));

    auto empty = rank_confusion({}, {});
    CHECK(empty.n == 0);
    CHECK_THROWS_AS(rank_confusion({0, 5}, {0, 1}), AuditError);
}

TEST_CASE("diff summary reports both dispersion flavors", "[stats][diff]") {
    auto s = abs_diff_summary({5, 1, 8}, {2, 3, 8});
    CHECK(near(s.mean_abs, 5.0 / 3.0));
    CHECK(near(s.median_abs, 2.0));
    CHECK(near(s.max_abs, 3.0));
    double m = 1.0 / 3.0;
    double sd_signed = std::sqrt(((3 - m) * (3 - m) + (-2 - m) * (-2 - m) + m * m) / 2.0);
    CHECK(near(s.sd_signed, sd_signed));
    CHECK(s.sd_abs > 0.0);

    auto ident = abs_diff_summary({4, 4}, {4, 4});
    CHECK(near(ident.mean_abs, 0.0));
    CHECK(near(ident.sd_signed, 0.0));
}

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/distributions/fisher_f.hpp>

#include "skillaudit/errors.hpp"

namespace skillaudit {

namespace detail {

inline double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double sample_sd(const std::vector<double>& v) {
    double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Midranks of |values|, ties averaged.
inline std::vector<double> midranks(const std::vector<double>& abs_values) {
    std::size_t m = abs_values.size();
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return abs_values[a] < abs_values[b]; });
    std::vector<double> ranks(m);
    std::size_t i = 0;
    while (i < m) {
        std::size_t j = i;
        while (j + 1 < m && abs_values[idx[j + 1]] == abs_values[idx[i]]) ++j;
        double r = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t t = i; t <= j; ++t) ranks[idx[t]] = r;
        i = j + 1;
    }
    return ranks;
}

} // namespace detail

struct AnovaDecomposition {
    double msr = 0.0; // between-subject mean square
    double msc = 0.0; // between-rater mean square
    double mse = 0.0; // residual mean square
    std::size_t n = 0;
    std::size_t k = 0;
};

struct IccResult {
    double value = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    AnovaDecomposition anova;
};

// Two-way random effects, absolute agreement, single rater. The matrix is
// n subjects by k raters and must already be complete: rows with missing
// cells are the caller's problem (listwise deletion happens upstream).
// A matrix without any variance has no defined agreement; that is an error,
// not a perfect score.
inline IccResult icc_2_1(const std::vector<std::vector<double>>& matrix, double alpha = 0.05) {
    std::size_t n = matrix.size();
    if (n < 2)
        throw AuditError(ErrorCode::DegenerateMatrix, "need at least 2 subjects, got " +
                                                          std::to_string(n));
    std::size_t k = matrix[0].size();
    if (k < 2)
        throw AuditError(ErrorCode::DegenerateMatrix,
                         "need at least 2 raters, got " + std::to_string(k));
    for (const auto& row : matrix)
        if (row.size() != k)
            throw AuditError(ErrorCode::LengthMismatch, "ragged rating matrix");

    double grand = 0.0;
    for (const auto& row : matrix)
        for (double x : row) grand += x;
    grand /= static_cast<double>(n * k);

    std::vector<double> row_mean(n, 0.0), col_mean(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            row_mean[i] += matrix[i][j];
            col_mean[j] += matrix[i][j];
        }
        row_mean[i] /= static_cast<double>(k);
    }
    for (std::size_t j = 0; j < k; ++j) col_mean[j] /= static_cast<double>(n);

    double ssr = 0.0, ssc = 0.0, sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) ssr += (row_mean[i] - grand) * (row_mean[i] - grand);
    ssr *= static_cast<double>(k);
    for (std::size_t j = 0; j < k; ++j) ssc += (col_mean[j] - grand) * (col_mean[j] - grand);
    ssc *= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            double r = matrix[i][j] - row_mean[i] - col_mean[j] + grand;
            sse += r * r;
        }

    AnovaDecomposition a;
    a.n = n;
    a.k = k;
    a.msr = ssr / static_cast<double>(n - 1);
    a.msc = ssc / static_cast<double>(k - 1);
    a.mse = sse / static_cast<double>((n - 1) * (k - 1));

    double nd = static_cast<double>(n), kd = static_cast<double>(k);
    double denom = a.msr + (kd - 1.0) * a.mse + (kd / nd) * (a.msc - a.mse);
    if (denom == 0.0)
        throw AuditError(ErrorCode::DegenerateMatrix,
                         "rating matrix has no variance; agreement undefined");

    IccResult res;
    res.anova = a;
    res.value = (a.msr - a.mse) / denom;

    // Confidence interval: classic single-score random-effects construction
    // with a satterthwaite df for the rater term. Reproduces the published
    // bounds for the standard worked 6x4 example to three decimals.
    double icc = res.value;
    if (a.mse == 0.0) {
        // zero residual: the F machinery degenerates, interval collapses
        res.ci_low = res.ci_high = icc;
        return res;
    }
    double fj = a.msc / a.mse;
    double core = kd * icc * fj + nd * (1.0 + (kd - 1.0) * icc) - kd * icc;
    double vn = (kd - 1.0) * (nd - 1.0) * core * core;
    double vd = (nd - 1.0) * kd * kd * icc * icc * fj * fj +
                (nd * (1.0 + (kd - 1.0) * icc) - kd * icc) *
                    (nd * (1.0 + (kd - 1.0) * icc) - kd * icc);
    double v = vn / vd;
    boost::math::fisher_f f_up(nd - 1.0, v);
    boost::math::fisher_f f_lo(v, nd - 1.0);
    double fu = boost::math::quantile(f_up, 1.0 - alpha / 2.0);
    double fl = boost::math::quantile(f_lo, 1.0 - alpha / 2.0);
    res.ci_low = nd * (a.msr - fu * a.mse) /
                 (fu * (kd * a.msc + (kd * nd - kd - nd) * a.mse) + nd * a.msr);
    res.ci_high = nd * (fl * a.msr - a.mse) /
                  (kd * a.msc + (kd * nd - kd - nd) * a.mse + nd * fl * a.msr);
    return res;
}

struct KappaResult {
    double value = 0.0;
    bool degenerate = false; // both raters constant and identical
};

// Linear-weight Cohen's kappa over the four release categories. Expected
// agreement comes from each rater's own marginals.
inline KappaResult weighted_kappa_linear(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size())
        throw AuditError(ErrorCode::LengthMismatch,
                         "rating vectors differ: " + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()));
    if (a.empty()) throw AuditError(ErrorCode::DegenerateMatrix, "no paired ratings");
    constexpr int kC = 4;
    double obs[kC][kC] = {};
    double ma[kC] = {}, mb[kC] = {};
    double n = static_cast<double>(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < 0 || a[i] >= kC || b[i] < 0 || b[i] >= kC)
            throw AuditError(ErrorCode::OutOfRange,
                             "rating outside the 4 release categories at index " +
                                 std::to_string(i));
        obs[a[i]][b[i]] += 1.0 / n;
        ma[a[i]] += 1.0 / n;
        mb[b[i]] += 1.0 / n;
    }
    double wo = 0.0, we = 0.0;
    for (int i = 0; i < kC; ++i)
        for (int j = 0; j < kC; ++j) {
            double w = std::abs(i - j) / 3.0;
            wo += w * obs[i][j];
            we += w * ma[i] * mb[j];
        }
    if (we == 0.0) {
        // both raters used one identical category throughout; agreement is
        // trivially perfect but carries no information
        return {1.0, true};
    }
    return {1.0 - wo / we, false};
}

struct WilcoxonResult {
    double statistic = 0.0; // min(W+, W-)
    double p_value = 1.0;
    std::string method; // "exact" | "normal"
    bool all_zero = false;
    std::size_t n_used = 0; // pairs after zero-difference removal
};

// Paired signed-rank test, two-sided. Zero differences are dropped; ties get
// midranks. Small samples are enumerated exactly (distribution of W+ over
// all sign assignments); larger ones use the normal approximation with tie
// and continuity corrections.
inline WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a,
                                           const std::vector<double>& b,
                                           std::size_t exact_max_n = 12) {
    if (a.size() != b.size())
        throw AuditError(ErrorCode::LengthMismatch,
                         "paired samples differ: " + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()));
    std::vector<double> d;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double diff = a[i] - b[i];
        if (diff != 0.0) d.push_back(diff);
    }
    WilcoxonResult res;
    res.n_used = d.size();
    if (d.empty()) {
        res.all_zero = true;
        res.method = "exact";
        res.p_value = 1.0;
        return res;
    }

    std::vector<double> ad(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) ad[i] = std::fabs(d[i]);
    auto ranks = detail::midranks(ad);

    double w_plus = 0.0, total = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        total += ranks[i];
        if (d[i] > 0.0) w_plus += ranks[i];
    }
    double w_minus = total - w_plus;
    res.statistic = std::min(w_plus, w_minus);

    std::size_t m = d.size();
    if (m <= exact_max_n) {
        res.method = "exact";
        double center = total / 2.0;
        double dev = std::fabs(w_plus - center);
        const double eps = 1e-9;
        std::size_t hits = 0, all = static_cast<std::size_t>(1) << m;
        for (std::size_t mask = 0; mask < all; ++mask) {
            double w = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (static_cast<std::size_t>(1) << i)) w += ranks[i];
            if (std::fabs(w - center) >= dev - eps) ++hits;
        }
        res.p_value = static_cast<double>(hits) / static_cast<double>(all);
        return res;
    }

    res.method = "normal";
    double md = static_cast<double>(m);
    double mean = md * (md + 1.0) / 4.0;
    double var = md * (md + 1.0) * (2.0 * md + 1.0) / 24.0;
    // tie correction: group counts over |d|
    std::vector<double> sorted_ad = ad;
    std::sort(sorted_ad.begin(), sorted_ad.end());
    std::size_t i = 0;
    while (i < sorted_ad.size()) {
        std::size_t j = i;
        while (j + 1 < sorted_ad.size() && sorted_ad[j + 1] == sorted_ad[i]) ++j;
        double t = static_cast<double>(j - i + 1);
        var -= (t * t * t - t) / 48.0;
        i = j + 1;
    }
    if (var <= 0.0) {
        // every |d| identical and tied; the approximation collapses
        res.p_value = 1.0;
        return res;
    }
    double z = (res.statistic - mean + 0.5) / std::sqrt(var); // continuity toward the center
    double p = 2.0 * detail::normal_cdf(z);
    res.p_value = std::min(1.0, p);
    return res;
}

struct BlandAltmanResult {
    double bias = 0.0;
    double sd = 0.0; // of the differences, n-1 denominator
    double loa_low = 0.0;
    double loa_high = 0.0;
    std::size_t n = 0;
};

inline BlandAltmanResult bland_altman(const std::vector<double>& a,
                                      const std::vector<double>& b) {
    if (a.size() != b.size())
        throw AuditError(ErrorCode::LengthMismatch,
                         "paired samples differ: " + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()));
    if (a.size() < 2)
        throw AuditError(ErrorCode::DegenerateMatrix,
                         "need at least 2 pairs for limits of agreement");
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    BlandAltmanResult res;
    res.n = d.size();
    res.bias = detail::mean_of(d);
    res.sd = detail::sample_sd(d);
    res.loa_low = res.bias - 1.96 * res.sd;
    res.loa_high = res.bias + 1.96 * res.sd;
    return res;
}

struct RankConfusion {
    long counts[4][4] = {}; // [first][second]
    std::size_t n = 0;
    double exact_agreement = 0.0;
    double within_one = 0.0;
};

inline RankConfusion rank_confusion(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size())
        throw AuditError(ErrorCode::LengthMismatch,
                         "rank vectors differ: " + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()));
    RankConfusion rc;
    rc.n = a.size();
    if (a.empty()) return rc;
    long exact = 0, close = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < 0 || a[i] > 3 || b[i] < 0 || b[i] > 3)
            throw AuditError(ErrorCode::OutOfRange, "rank outside [0,3] at index " +
                                                        std::to_string(i));
        rc.counts[a[i]][b[i]] += 1;
        if (a[i] == b[i]) ++exact;
        if (std::abs(a[i] - b[i]) <= 1) ++close;
    }
    rc.exact_agreement = static_cast<double>(exact) / static_cast<double>(rc.n);
    rc.within_one = static_cast<double>(close) / static_cast<double>(rc.n);
    return rc;
}

struct DiffSummary {
    double mean_abs = 0.0;
    double median_abs = 0.0;
    double max_abs = 0.0;
    double sd_signed = 0.0; // spread of signed differences around their mean
    double sd_abs = 0.0;    // spread of |differences| around their mean
    std::size_t n = 0;
};

// Both dispersion flavors are reported side by side and labeled; they answer
// different questions and are not interchangeable.
inline DiffSummary abs_diff_summary(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw AuditError(ErrorCode::LengthMismatch,
                         "paired samples differ: " + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()));
    DiffSummary s;
    s.n = a.size();
    if (a.empty()) return s;
    std::vector<double> d(a.size()), ad(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        d[i] = a[i] - b[i];
        ad[i] = std::fabs(d[i]);
    }
    s.mean_abs = detail::mean_of(ad);
    s.max_abs = *std::max_element(ad.begin(), ad.end());
    std::vector<double> sorted_ad = ad;
    std::sort(sorted_ad.begin(), sorted_ad.end());
    std::size_t mid = sorted_ad.size() / 2;
    s.median_abs = sorted_ad.size() % 2 == 1
                       ? sorted_ad[mid]
                       : (sorted_ad[mid - 1] + sorted_ad[mid]) / 2.0;
    if (a.size() >= 2) {
        s.sd_signed = detail::sample_sd(d);
        s.sd_abs = detail::sample_sd(ad);
    }
    return s;
}

} // namespace skillaudit

#include "touchtell/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>

#include "touchtell/rng.hpp"

namespace touchtell {

// ---- distribution helpers ----------------------------------------------

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
    constexpr double kTiny = 1e-300;
    constexpr double kEps = 3e-16;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

double poly(const double* c, int n, double x) {
    double v = c[n - 1];
    for (int i = n - 2; i >= 0; --i) v = v * x + c[i];
    return v;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) fail(ErrorKind::Domain, "incomplete_beta requires a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                         a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
    return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double t_sf(double t, double df) {
    if (df <= 0.0) fail(ErrorKind::Domain, "t_sf requires df > 0");
    if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
    const double tail = 0.5 * incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
    return t >= 0.0 ? tail : 1.0 - tail;
}

double f_sf(double f, double df1, double df2) {
    if (df1 <= 0.0 || df2 <= 0.0) fail(ErrorKind::Domain, "f_sf requires positive df");
    if (std::isinf(f)) return 0.0;
    if (f <= 0.0) return 1.0;
    return incomplete_beta(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * f));
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }
double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// Wichura's algorithm AS 241 (PPND16).
double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) fail(ErrorKind::Domain, "normal_quantile requires p in (0,1)");
    static const double a[8] = {3.3871328727963666080e0,  1.3314166789178437745e+2,
                                1.9715909503065514427e+3, 1.3731693765509461125e+4,
                                4.5921953931549871457e+4, 6.7265770927008700853e+4,
                                3.3430575583588128105e+4, 2.5090809287301226727e+3};
    static const double b[8] = {1.0,
                                4.2313330701600911252e+1,
                                6.8718700749205790830e+2,
                                5.3941960214247511077e+3,
                                2.1213794301586595867e+4,
                                3.9307895800092710610e+4,
                                2.8729085735721942674e+4,
                                5.2264952788528545610e+3};
    static const double c[8] = {1.42343711074968357734e0,  4.63033784615654529590e0,
                                5.76949722146069140550e0,  3.64784832476320460504e0,
                                1.27045825245236838258e0,  2.41780725177450611770e-1,
                                2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static const double d[8] = {1.0,
                                2.05319162663775882187e0,
                                1.67638483018380384940e0,
                                6.89767334985100004550e-1,
                                1.48103976427480074590e-1,
                                1.51986665636164571966e-2,
                                5.47593808499534494600e-4,
                                1.05075007164441684324e-9};
    static const double e[8] = {6.65790464350110377720e0,  5.46378491116411436990e0,
                                1.78482653991729133580e0,  2.96560571828504891230e-1,
                                2.65321895265761230930e-2, 1.24266094738807843860e-3,
                                2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static const double f[8] = {1.0,
                                5.99832206555887937690e-1,
                                1.36929880922735805310e-1,
                                1.48753612908506148525e-2,
                                7.86869131145613259100e-4,
                                1.84631831751005468180e-5,
                                1.42151175831644588870e-7,
                                2.04426310338993978564e-15};

    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        double num = a[7], den = b[7];
        for (int i = 6; i >= 0; --i) {
            num = num * r + a[i];
            den = den * r + b[i];
        }
        return q * num / den;
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        double num = c[7], den = d[7];
        for (int i = 6; i >= 0; --i) {
            num = num * r + c[i];
            den = den * r + d[i];
        }
        val = num / den;
    } else {
        r -= 5.0;
        double num = e[7], den = f[7];
        for (int i = 6; i >= 0; --i) {
            num = num * r + e[i];
            den = den * r + f[i];
        }
        val = num / den;
    }
    return (q < 0.0) ? -val : val;
}

// ---- standardization -----------------------------------------------------

ZscoreModel zscore_fit(const Matrix& m) {
    if (m.rows < 2) fail(ErrorKind::Size, "zscore_fit requires at least 2 rows");
    ZscoreModel model;
    model.mean.resize(m.cols);
    model.std.resize(m.cols);
    model.zero_variance.resize(m.cols);
    for (std::size_t c = 0; c < m.cols; ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < m.rows; ++r) sum += m(r, c);
        const double mean = sum / static_cast<double>(m.rows);
        double ss = 0.0;
        for (std::size_t r = 0; r < m.rows; ++r) {
            const double dv = m(r, c) - mean;
            ss += dv * dv;
        }
        const double std = std::sqrt(ss / static_cast<double>(m.rows));
        model.mean[c] = mean;
        model.std[c] = std;
        model.zero_variance[c] = (std == 0.0);
    }
    return model;
}

Matrix zscore_apply(const ZscoreModel& model, const Matrix& m) {
    if (m.cols != model.mean.size())
        fail(ErrorKind::Shape, "zscore_apply: column count mismatch (" + std::to_string(m.cols) +
                                   " vs " + std::to_string(model.mean.size()) + ")");
    Matrix out(m.rows, m.cols);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c)
            out(r, c) = model.zero_variance[c] ? 0.0 : (m(r, c) - model.mean[c]) / model.std[c];
    return out;
}

// ---- PCA -------------------------------------------------------------------

PcaModel pca_fit(const Matrix& m) {
    if (m.rows < 2) fail(ErrorKind::Size, "pca_fit requires at least 2 rows");
    for (double v : m.data)
        if (!std::isfinite(v)) fail(ErrorKind::Domain, "pca_fit: non-finite input");

    const std::size_t n = m.rows, d = m.cols;
    PcaModel model;
    model.mean.resize(d);
    for (std::size_t c = 0; c < d; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r) s += m(r, c);
        model.mean[c] = s / static_cast<double>(n);
    }

    Eigen::MatrixXd centered(n, d);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) centered(r, c) = m(r, c) - model.mean[c];
    // population covariance, consistent with zscore_fit
    Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) fail(ErrorKind::Degenerate, "eigendecomposition failed");

    // descending eigenvalue order
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    const auto& evals = solver.eigenvalues();
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return evals(x) > evals(y); });

    model.loadings = Matrix(d, d);
    model.eigenvalues.resize(d);
    double total = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        model.eigenvalues[i] = evals(order[i]);
        total += std::max(0.0, model.eigenvalues[i]);
        // sign convention: the largest-magnitude entry is positive
        Eigen::VectorXd v = solver.eigenvectors().col(order[i]);
        std::size_t arg = 0;
        for (std::size_t j = 1; j < d; ++j)
            if (std::abs(v(j)) > std::abs(v(arg))) arg = j;
        if (v(arg) < 0.0) v = -v;
        for (std::size_t j = 0; j < d; ++j) model.loadings(i, j) = v(j);
    }

    if (total <= 0.0) fail(ErrorKind::Degenerate, "pca_fit: zero total variance");
    double cum = 0.0;
    model.retained = static_cast<int>(d);
    for (std::size_t i = 0; i < d; ++i) {
        cum += std::max(0.0, model.eigenvalues[i]);
        if (cum >= 0.95 * total) {
            model.retained = static_cast<int>(i + 1);
            break;
        }
    }
    return model;
}

Matrix pca_transform(const PcaModel& model, const Matrix& m) {
    const std::size_t d = model.mean.size();
    if (m.cols != d) fail(ErrorKind::Shape, "pca_transform: column count mismatch");
    Matrix out(m.rows, d);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t k = 0; k < d; ++k) {
            double s = 0.0;
            for (std::size_t c = 0; c < d; ++c)
                s += (m(r, c) - model.mean[c]) * model.loadings(k, c);
            out(r, k) = s;
        }
    return out;
}

// ---- ICC --------------------------------------------------------------------

IccResult icc_consistency(const Matrix& m) {
    const std::size_t n = m.rows, k = m.cols;
    if (n < 2 || k < 2) fail(ErrorKind::Config, "icc requires n >= 2 targets and k >= 2 raters");

    double grand = 0.0;
    for (double v : m.data) grand += v;
    grand /= static_cast<double>(n * k);

    std::vector<double> row_mean(n, 0.0), col_mean(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) row_mean[i] += m(i, j);
        row_mean[i] /= static_cast<double>(k);
    }
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < n; ++i) col_mean[j] += m(i, j);
        col_mean[j] /= static_cast<double>(n);
    }

    double ss_rows = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        ss_rows += (row_mean[i] - grand) * (row_mean[i] - grand);
    ss_rows *= static_cast<double>(k);

    // residual computed directly so perfectly additive data gives exactly 0
    double ss_err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const double resid = m(i, j) - row_mean[i] - col_mean[j] + grand;
            ss_err += resid * resid;
        }

    IccResult r;
    r.n_targets = static_cast<int>(n);
    r.k_raters = static_cast<int>(k);
    const double df_rows = static_cast<double>(n - 1);
    const double df_err = static_cast<double>((n - 1) * (k - 1));
    r.ms_rows = ss_rows / df_rows;
    r.ms_error = ss_err / df_err;

    if (r.ms_error == 0.0 && r.ms_rows == 0.0)
        fail(ErrorKind::Degenerate, "icc: all cells equal");

    r.icc = (r.ms_rows - r.ms_error) / (r.ms_rows + static_cast<double>(k - 1) * r.ms_error);
    if (r.ms_error == 0.0) {
        r.f = std::numeric_limits<double>::infinity();
        r.p = 0.0;
    } else {
        r.f = r.ms_rows / r.ms_error;
        r.p = f_sf(r.f, df_rows, df_err);
    }
    return r;
}

// ---- PERMANOVA ---------------------------------------------------------------

namespace {

struct DistanceContext {
    std::vector<double> d2;  // squared Euclidean, full N x N
    std::size_t n = 0;
    double ss_total = 0.0;
    int n_groups = 0;

    double pseudo_f(const std::vector<int>& labels, std::vector<double>& within_scratch,
                    std::vector<int>& size_scratch) const {
        std::fill(within_scratch.begin(), within_scratch.end(), 0.0);
        std::fill(size_scratch.begin(), size_scratch.end(), 0);
        for (std::size_t i = 0; i < n; ++i) ++size_scratch[labels[i]];
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = d2.data() + i * n;
            const int gi = labels[i];
            for (std::size_t j = i + 1; j < n; ++j)
                if (labels[j] == gi) within_scratch[gi] += row[j];
        }
        double ss_within = 0.0;
        for (int g = 0; g < n_groups; ++g)
            if (size_scratch[g] > 0) ss_within += within_scratch[g] / size_scratch[g];
        const double ss_between = ss_total - ss_within;
        const double df_between = static_cast<double>(n_groups - 1);
        const double df_within = static_cast<double>(n) - n_groups;
        return (ss_between / df_between) / (ss_within / df_within);
    }
};

DistanceContext build_distance_context(const Matrix& x, int n_groups) {
    DistanceContext ctx;
    ctx.n = x.rows;
    ctx.n_groups = n_groups;
    ctx.d2.assign(ctx.n * ctx.n, 0.0);
    for (std::size_t i = 0; i < ctx.n; ++i)
        for (std::size_t j = i + 1; j < ctx.n; ++j) {
            double s = 0.0;
            const double* a = x.row_ptr(i);
            const double* b = x.row_ptr(j);
            for (std::size_t c = 0; c < x.cols; ++c) {
                const double dv = a[c] - b[c];
                s += dv * dv;
            }
            ctx.d2[i * ctx.n + j] = s;
            ctx.d2[j * ctx.n + i] = s;
            ctx.ss_total += s;
        }
    ctx.ss_total /= static_cast<double>(ctx.n);
    return ctx;
}

}  // namespace

PermanovaResult permanova(const Matrix& features, const std::vector<int>& groups,
                          int n_permutations, std::uint64_t seed) {
    if (features.rows != groups.size())
        fail(ErrorKind::Shape, "permanova: rows vs groups length mismatch");
    if (n_permutations < 99) fail(ErrorKind::Config, "permanova requires n_permutations >= 99");

    int n_groups = 0;
    for (int g : groups) {
        if (g < 0) fail(ErrorKind::Config, "group ids must be non-negative");
        n_groups = std::max(n_groups, g + 1);
    }
    std::vector<int> sizes(n_groups, 0);
    for (int g : groups) ++sizes[g];
    int present = 0;
    for (int s : sizes)
        if (s > 0) {
            ++present;
            if (s < 2) fail(ErrorKind::Config, "every group needs at least 2 members");
        }
    if (present < 2) fail(ErrorKind::Config, "permanova requires at least 2 groups");

    DistanceContext ctx = build_distance_context(features, n_groups);
    // pseudo_f's df use the number of distinct groups actually present
    ctx.n_groups = n_groups;

    std::vector<double> within(n_groups);
    std::vector<int> size_scratch(n_groups);
    // df must count only present groups; remap ids to be dense
    std::vector<int> remap(n_groups, -1);
    int dense = 0;
    for (int g = 0; g < n_groups; ++g)
        if (sizes[g] > 0) remap[g] = dense++;
    std::vector<int> labels(groups.size());
    for (std::size_t i = 0; i < groups.size(); ++i) labels[i] = remap[groups[i]];
    ctx.n_groups = dense;
    within.assign(dense, 0.0);
    size_scratch.assign(dense, 0);

    const double f_obs = ctx.pseudo_f(labels, within, size_scratch);

    int count_ge = 0;
    std::vector<int> perm = labels;
    for (int b = 0; b < n_permutations; ++b) {
        Rng rng(derive_seed(seed, {0x7065726dULL, static_cast<std::uint64_t>(b)}));
        perm = labels;
        rng.shuffle(perm);
        if (ctx.pseudo_f(perm, within, size_scratch) >= f_obs) ++count_ge;
    }

    PermanovaResult r;
    r.pseudo_f = f_obs;
    r.n_permutations = n_permutations;
    r.p = (1.0 + count_ge) / (1.0 + n_permutations);
    for (int g = 0; g < n_groups; ++g)
        if (sizes[g] > 0) r.group_sizes.push_back(sizes[g]);
    return r;
}

std::vector<PairwisePermanovaRow> pairwise_permanova_holm(const Matrix& features,
                                                          const std::vector<int>& groups,
                                                          int n_permutations, std::uint64_t seed) {
    int n_groups = 0;
    for (int g : groups) n_groups = std::max(n_groups, g + 1);

    std::vector<int> present;
    {
        std::vector<int> sizes(n_groups, 0);
        for (int g : groups) ++sizes[g];
        for (int g = 0; g < n_groups; ++g)
            if (sizes[g] > 0) present.push_back(g);
    }

    std::vector<PairwisePermanovaRow> rows;
    std::vector<double> raw;
    int pair_index = 0;
    for (std::size_t a = 0; a < present.size(); ++a)
        for (std::size_t b = a + 1; b < present.size(); ++b, ++pair_index) {
            std::vector<std::size_t> idx;
            std::vector<int> sub_groups;
            for (std::size_t i = 0; i < groups.size(); ++i)
                if (groups[i] == present[a] || groups[i] == present[b]) {
                    idx.push_back(i);
                    sub_groups.push_back(groups[i] == present[a] ? 0 : 1);
                }
            const Matrix sub = features.select_rows(idx);
            const PermanovaResult r =
                permanova(sub, sub_groups, n_permutations,
                          derive_seed(seed, {0x70616972ULL, static_cast<std::uint64_t>(pair_index)}));
            PairwisePermanovaRow row;
            row.group_a = present[a];
            row.group_b = present[b];
            row.pseudo_f = r.pseudo_f;
            row.p_raw = r.p;
            rows.push_back(row);
            raw.push_back(r.p);
        }

    const std::vector<double> adjusted = holm_adjust(raw);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].p_adjusted = adjusted[i];
    return rows;
}

// ---- univariate tests -----------------------------------------------------

std::vector<double> holm_adjust(const std::vector<double>& p_values) {
    const std::size_t m = p_values.size();
    for (double p : p_values)
        if (!(p >= 0.0 && p <= 1.0))
            fail(ErrorKind::Domain, "holm_adjust: p outside [0,1]");
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
    std::vector<double> out(m, 0.0);
    double running = 0.0;
    for (std::size_t rank = 0; rank < m; ++rank) {
        const double scaled = p_values[order[rank]] * static_cast<double>(m - rank);
        running = std::max(running, scaled);
        out[order[rank]] = std::min(1.0, running);
    }
    return out;
}

ShapiroResult shapiro_wilk(const std::vector<double>& x_in) {
    const int n = static_cast<int>(x_in.size());
    if (n < 3 || n > 5000)
        fail(ErrorKind::Size, "shapiro_wilk requires 3 <= n <= 5000, got " + std::to_string(n));

    std::vector<double> x = x_in;
    std::sort(x.begin(), x.end());
    const double range = x.back() - x.front();
    if (range <= 0.0) fail(ErrorKind::Degenerate, "shapiro_wilk: all values equal");

    // AS R94 polynomial coefficients
    static const double g[2] = {-2.273, 0.459};
    static const double c1[6] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
    static const double c2[6] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
    static const double c3[4] = {0.5440, -0.39978, 0.025054, -6.714e-4};
    static const double c4[4] = {1.3822, -0.77857, 0.062767, -0.0020322};
    static const double c5[4] = {-1.5861, -0.31082, -0.083751, 0.0038915};
    static const double c6[3] = {-0.4803, -0.082676, 0.0030302};

    const int n2 = n / 2;
    std::vector<double> a(n2);  // a[k] is the weight for order statistic k+1 (low half)
    const double an = static_cast<double>(n);

    if (n == 3) {
        a[0] = std::numbers::sqrt2 / 2.0;
    } else {
        double summ2 = 0.0;
        for (int i = 0; i < n2; ++i) {
            a[i] = normal_quantile((i + 1 - 0.375) / (an + 0.25));
            summ2 += a[i] * a[i];
        }
        summ2 *= 2.0;
        const double ssumm2 = std::sqrt(summ2);
        const double rsn = 1.0 / std::sqrt(an);
        const double a1 = poly(c1, 6, rsn) - a[0] / ssumm2;

        int start;
        double fac;
        if (n > 5) {
            start = 2;
            const double a2 = -a[1] / ssumm2 + poly(c2, 6, rsn);
            fac = std::sqrt((summ2 - 2.0 * a[0] * a[0] - 2.0 * a[1] * a[1]) /
                            (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
            a[1] = a2;
        } else {
            start = 1;
            fac = std::sqrt((summ2 - 2.0 * a[0] * a[0]) / (1.0 - 2.0 * a1 * a1));
        }
        a[0] = a1;
        for (int i = start; i < n2; ++i) a[i] /= -fac;
    }

    // W = squared correlation between sorted data and the antisymmetric
    // weight vector; a[] holds the (positive) high-half magnitudes.
    auto weight = [&](int i) -> double {
        const int j = n - 1 - i;
        if (i == j) return 0.0;
        const double w = a[std::min(i, j)];
        return i < j ? -w : w;
    };
    double mean_x = 0.0;
    for (int i = 0; i < n; ++i) mean_x += x[i] / range;
    mean_x /= an;

    double ssa = 0.0, ssx = 0.0, sax = 0.0;
    double mean_a = 0.0;
    for (int i = 0; i < n; ++i) mean_a += weight(i);
    mean_a /= an;
    for (int i = 0; i < n; ++i) {
        const double da = weight(i) - mean_a;
        const double dx = x[i] / range - mean_x;
        ssa += da * da;
        ssx += dx * dx;
        sax += da * dx;
    }

    const double ssassx = std::sqrt(ssa * ssx);
    const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
    ShapiroResult res;
    res.w = 1.0 - w1;

    if (n == 3) {
        const double pi6 = 1.90985931710274;
        const double stqr = 1.04719755119660;
        res.p = pi6 * (std::asin(std::sqrt(res.w)) - stqr);
        res.p = std::clamp(res.p, 0.0, 1.0);
        return res;
    }

    const double y = std::log(w1);
    const double log_n = std::log(an);
    double mu, sigma;
    if (n <= 11) {
        const double gamma = poly(g, 2, an);
        if (y >= gamma) {
            res.p = 1e-99;
            return res;
        }
        const double y2 = -std::log(gamma - y);
        mu = poly(c3, 4, an);
        sigma = std::exp(poly(c4, 4, an));
        res.p = normal_sf((y2 - mu) / sigma);
        return res;
    }
    mu = poly(c5, 4, log_n);
    sigma = std::exp(poly(c6, 3, log_n));
    res.p = normal_sf((y - mu) / sigma);
    return res;
}

TTestResult t_test_one_sample(const std::vector<double>& x, double mu, Alternative alt) {
    const int n = static_cast<int>(x.size());
    if (n < 2) fail(ErrorKind::Size, "t_test_one_sample requires n >= 2");
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const double s = std::sqrt(ss / (n - 1));
    if (s == 0.0) fail(ErrorKind::Degenerate, "t_test_one_sample: zero sample variance");

    TTestResult r;
    r.t = (mean - mu) / (s / std::sqrt(static_cast<double>(n)));
    r.df = n - 1;
    switch (alt) {
        case Alternative::Greater: r.p = t_sf(r.t, r.df); break;
        case Alternative::Less: r.p = t_sf(-r.t, r.df); break;
        case Alternative::TwoSided: r.p = std::min(1.0, 2.0 * t_sf(std::abs(r.t), r.df)); break;
    }
    return r;
}

}  // namespace touchtell

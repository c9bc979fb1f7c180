#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "touchtell/matrix.hpp"

namespace touchtell {

// ---- distribution helpers ----------------------------------------------

// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

// Right tails.
double t_sf(double t, double df);            // P(T >= t)
double f_sf(double f, double df1, double df2);  // P(F >= f)
double normal_sf(double z);                  // P(Z >= z)
double normal_cdf(double z);
double normal_quantile(double p);            // inverse CDF (AS 241)

// ---- standardization -----------------------------------------------------

struct ZscoreModel {
    std::vector<double> mean;
    std::vector<double> std;          // population std
    std::vector<bool> zero_variance;  // flagged columns map to 0 on apply

    bool any_zero_variance() const {
        for (bool b : zero_variance)
            if (b) return true;
        return false;
    }
};

ZscoreModel zscore_fit(const Matrix& m);
Matrix zscore_apply(const ZscoreModel& model, const Matrix& m);

// ---- PCA -------------------------------------------------------------------

struct PcaModel {
    std::vector<double> mean;       // fit-set column means
    Matrix loadings;                // one loading vector per row, orthonormal
    std::vector<double> eigenvalues;  // descending, population covariance
    int retained = 0;               // smallest count reaching >= 95% variance
};

PcaModel pca_fit(const Matrix& m);
Matrix pca_transform(const PcaModel& model, const Matrix& m);

// ---- ICC --------------------------------------------------------------------

// Two-way consistency model, single measurement: ICC(C,1).
struct IccResult {
    double icc = 0.0;
    double ms_rows = 0.0;
    double ms_error = 0.0;
    double f = 0.0;
    double p = 1.0;
    int n_targets = 0;
    int k_raters = 0;
};

IccResult icc_consistency(const Matrix& targets_by_raters);

// ---- PERMANOVA ---------------------------------------------------------------

struct PermanovaResult {
    double pseudo_f = 0.0;
    double p = 1.0;
    int n_permutations = 0;
    std::vector<int> group_sizes;
};

PermanovaResult permanova(const Matrix& features, const std::vector<int>& groups,
                          int n_permutations, std::uint64_t seed);

struct PairwisePermanovaRow {
    int group_a = 0;
    int group_b = 0;
    double pseudo_f = 0.0;
    double p_raw = 1.0;
    double p_adjusted = 1.0;
};

std::vector<PairwisePermanovaRow> pairwise_permanova_holm(const Matrix& features,
                                                          const std::vector<int>& groups,
                                                          int n_permutations, std::uint64_t seed);

// ---- univariate tests -----------------------------------------------------

std::vector<double> holm_adjust(const std::vector<double>& p_values);

struct ShapiroResult {
    double w = 0.0;
    double p = 0.0;
};

// Royston's AS R94 approximation; 3 <= n <= 5000.
ShapiroResult shapiro_wilk(const std::vector<double>& x);

enum class Alternative { Greater, Less, TwoSided };

struct TTestResult {
    double t = 0.0;
    int df = 0;
    double p = 1.0;
};

TTestResult t_test_one_sample(const std::vector<double>& x, double mu, Alternative alt);

}  // namespace touchtell

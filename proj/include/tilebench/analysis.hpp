#pragma once

#include <array>
#include <string>
#include <vector>

#include "tilebench/outcome.hpp"

namespace tilebench {

enum class Metric { p1_score, diff };
inline const char* metric_name(Metric m) { return m == Metric::p1_score ? "p1_score" : "diff"; }
inline double metric_value(const GameOutcome& o, Metric m) {
    return m == Metric::p1_score ? o.p1_score : o.diff;
}

// One-way ANOVA with tile order as the factor. Requires a balanced table
// (equal replicates per order, >= 2 orders, >= 2 replicates).
struct DecompositionResult {
    std::string metric;
    int n_orders = 0;
    int replicates = 0;
    double ss_total = 0, ss_between = 0, ss_within = 0;
    // literal construction: Var(order means) / Var(all values)
    double between_fraction_naive = 0;
    // bias-corrected variance component max(0, (MSB - MSW) / R) and its
    // share of the total component variance
    double between_component_anova = 0;
    double anova_between_fraction = 0;
    bool defined = true;  // false when all values are equal (SS_total == 0)
};
DecompositionResult variance_decomposition(const OutcomeTable& table, Metric metric);

// Mean of diff with order-clustered standard error (replicates within an
// order are dependent) and a 95% normal CI.
struct AdvantageResult {
    double mean_diff = 0;
    double std_error = 0;
    double ci_low = 0, ci_high = 0;
    int n_games = 0;
    int n_orders = 0;
};
AdvantageResult first_player_advantage(const OutcomeTable& table);

// Empirical {5,25,50,75,95}% quantiles of the within-order sd distribution,
// linear interpolation between order statistics.
struct SdQuantiles {
    double q5 = 0, q25 = 0, q50 = 0, q75 = 0, q95 = 0;
    int n_orders = 0;
};
SdQuantiles within_sd_quantiles(const OutcomeTable& table, Metric metric);
double quantile(std::vector<double> values, double p);  // p in [0,1]

// Mean p1 score by (decile of blank 1, decile of blank 2), symmetrized.
// Deciles are 10-tile groups; positions past 100 join the last decile.
struct DecileGrid {
    std::array<std::array<double, 10>, 10> mean{};
    std::array<std::array<int, 10>, 10> count{};
    std::array<std::array<bool, 10>, 10> masked{};  // below min_count
    int min_count = 0;
    // per-blank step: mean p1 score when one blank sits in the front half
    // minus when it sits in the back half (count-weighted marginal over the
    // other blank's position)
    double front_back_contrast() const;
};
DecileGrid blank_decile_table(const OutcomeTable& table, int min_count = 50);

// Mean p1 score for the k-th S (k = 1..count) by decile of its position.
struct SPositionTable {
    int s_count = 0;
    std::vector<std::array<double, 10>> mean;   // [k][decile]
    std::vector<std::array<int, 10>> count;
    std::vector<std::array<bool, 10>> masked;
    int min_count = 0;
};
SPositionTable s_position_table(const OutcomeTable& table, int min_count = 50);

// OLS slope of the metric on player 1's exposure count of a letter, with
// cluster-robust (by order) standard error. use_played switches the
// regressor to the tiles-played proxy.
struct TileEffect {
    char letter = 0;
    double slope = 0;
    double std_error = 0;
    bool defined = true;  // false when the exposure count never varies
};
TileEffect tile_regression(const OutcomeTable& table, char letter, Metric metric,
                           bool use_played = false);

struct LetterComparison {
    char letter;
    double scrabble_effect;
    double wwf_effect;
    double delta;  // wwf - scrabble
};
std::vector<LetterComparison> compare_rulesets(const OutcomeTable& scrabble,
                                               const OutcomeTable& wwf,
                                               Metric metric = Metric::p1_score);

// Survival function of the chi-square distribution (regularized upper
// incomplete gamma); used by the exchange-uniformity frequency test.
double chi_square_sf(double x, double df);

}  // namespace tilebench

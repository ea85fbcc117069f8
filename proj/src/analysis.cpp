#include "tilebench/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tilebench {

namespace {

// values grouped by order; throws unless balanced with >=2 orders and reps
std::vector<std::vector<double>> balanced_groups(const OutcomeTable& table, Metric metric) {
    std::vector<std::vector<double>> groups;
    size_t reps = 0;
    for (const auto& [id, rows] : table.by_order()) {
        std::vector<double> g;
        g.reserve(rows.size());
        for (const auto* r : rows) g.push_back(metric_value(*r, metric));
        if (groups.empty())
            reps = g.size();
        else if (g.size() != reps)
            throw std::runtime_error(
                "unbalanced table: order " + std::to_string(id) + " has " +
                std::to_string(g.size()) + " replicates, expected " + std::to_string(reps) +
                "; filter to equal replicate counts per order first");
        groups.push_back(std::move(g));
    }
    if (groups.size() < 2 || reps < 2)
        throw std::runtime_error("variance decomposition needs >= 2 orders and >= 2 replicates");
    return groups;
}

double sample_variance(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double mean = 0;
    for (double x : v) mean += x;
    mean /= double(v.size());
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / double(v.size() - 1);
}

}  // namespace

DecompositionResult variance_decomposition(const OutcomeTable& table, Metric metric) {
    auto groups = balanced_groups(table, metric);
    const int S = int(groups.size());
    const int R = int(groups[0].size());
    const double N = double(S) * R;

    DecompositionResult res;
    res.metric = metric_name(metric);
    res.n_orders = S;
    res.replicates = R;

    double grand = 0;
    for (const auto& g : groups)
        for (double x : g) grand += x;
    grand /= N;

    std::vector<double> order_means;
    order_means.reserve(size_t(S));
    for (const auto& g : groups) {
        double m = 0;
        for (double x : g) m += x;
        order_means.push_back(m / R);
    }

    for (int i = 0; i < S; ++i) {
        res.ss_between += R * (order_means[i] - grand) * (order_means[i] - grand);
        for (double x : groups[i]) {
            res.ss_total += (x - grand) * (x - grand);
            res.ss_within += (x - order_means[i]) * (x - order_means[i]);
        }
    }

    if (res.ss_total <= 0.0) {
        res.defined = false;
        return res;
    }

    std::vector<double> all;
    all.reserve(size_t(N));
    for (const auto& g : groups) all.insert(all.end(), g.begin(), g.end());
    res.between_fraction_naive = sample_variance(order_means) / sample_variance(all);

    const double msb = res.ss_between / (S - 1);
    const double msw = res.ss_within / (double(S) * (R - 1));
    res.between_component_anova = std::max(0.0, (msb - msw) / R);
    res.anova_between_fraction =
        res.between_component_anova / (res.between_component_anova + msw);
    return res;
}

AdvantageResult first_player_advantage(const OutcomeTable& table) {
    AdvantageResult res;
    auto groups = table.by_order();
    res.n_orders = int(groups.size());
    double sum = 0;
    for (const auto& r : table.rows) sum += r.diff;
    res.n_games = int(table.rows.size());
    if (res.n_games < 2) throw std::runtime_error("first_player_advantage needs >= 2 games");
    res.mean_diff = sum / res.n_games;

    double cluster_ss = 0;
    for (const auto& [id, rows] : groups) {
        double u = 0;
        for (const auto* r : rows) u += r->diff - res.mean_diff;
        cluster_ss += u * u;
    }
    const double g = double(res.n_orders);
    double correction = g > 1 ? g / (g - 1) : 1.0;
    res.std_error = std::sqrt(correction * cluster_ss) / res.n_games;
    res.ci_low = res.mean_diff - 1.96 * res.std_error;
    res.ci_high = res.mean_diff + 1.96 * res.std_error;
    return res;
}

double quantile(std::vector<double> values, double p) {
    if (values.empty()) throw std::runtime_error("quantile of empty set");
    std::sort(values.begin(), values.end());
    double h = p * double(values.size() - 1);
    size_t lo = size_t(std::floor(h));
    size_t hi = std::min(lo + 1, values.size() - 1);
    double frac = h - double(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

SdQuantiles within_sd_quantiles(const OutcomeTable& table, Metric metric) {
    std::vector<double> sds;
    for (const auto& [id, rows] : table.by_order()) {
        if (rows.size() < 2)
            throw std::runtime_error("within_sd_quantiles needs >= 2 replicates per order");
        std::vector<double> vals;
        vals.reserve(rows.size());
        for (const auto* r : rows) vals.push_back(metric_value(*r, metric));
        sds.push_back(std::sqrt(sample_variance(vals)));
    }
    SdQuantiles q;
    q.n_orders = int(sds.size());
    q.q5 = quantile(sds, 0.05);
    q.q25 = quantile(sds, 0.25);
    q.q50 = quantile(sds, 0.50);
    q.q75 = quantile(sds, 0.75);
    q.q95 = quantile(sds, 0.95);
    return q;
}

namespace {
int decile_of(int pos_1based) { return std::min(9, (pos_1based - 1) / 10); }
}  // namespace

DecileGrid blank_decile_table(const OutcomeTable& table, int min_count) {
    DecileGrid grid;
    grid.min_count = min_count;
    std::array<std::array<double, 10>, 10> sum{};
    for (const auto& r : table.rows) {
        int d1 = decile_of(r.blank_positions[0]);
        int d2 = decile_of(r.blank_positions[1]);
        sum[d1][d2] += r.p1_score;
        ++grid.count[d1][d2];
        if (d1 != d2) {
            sum[d2][d1] += r.p1_score;
            ++grid.count[d2][d1];
        }
    }
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            grid.masked[i][j] = grid.count[i][j] < min_count;
            grid.mean[i][j] = grid.count[i][j] > 0 ? sum[i][j] / grid.count[i][j] : 0.0;
        }
    return grid;
}

double DecileGrid::front_back_contrast() const {
    // marginal effect of one blank: the symmetrized row index tracks a single
    // blank, so rows 0-4 have it in the front half and rows 5-9 in the back
    // half while the other blank averages out over the columns
    double front_sum = 0, back_sum = 0;
    long front_n = 0, back_n = 0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            if (masked[i][j]) continue;
            // diagonal cells hold one entry per game but represent two blanks
            long w = count[i][j] * (i == j ? 2 : 1);
            if (i < 5) {
                front_sum += mean[i][j] * w;
                front_n += w;
            } else {
                back_sum += mean[i][j] * w;
                back_n += w;
            }
        }
    if (front_n == 0 || back_n == 0) return 0.0;
    return front_sum / double(front_n) - back_sum / double(back_n);
}

SPositionTable s_position_table(const OutcomeTable& table, int min_count) {
    SPositionTable t;
    t.min_count = min_count;
    for (const auto& r : table.rows) t.s_count = std::max(t.s_count, int(r.s_positions.size()));
    t.mean.assign(size_t(t.s_count), {});
    t.count.assign(size_t(t.s_count), {});
    t.masked.assign(size_t(t.s_count), {});
    std::vector<std::array<double, 10>> sum(size_t(t.s_count));
    for (const auto& r : table.rows) {
        for (size_t k = 0; k < r.s_positions.size(); ++k) {
            int d = decile_of(r.s_positions[k]);
            sum[k][d] += r.p1_score;
            ++t.count[k][d];
        }
    }
    for (int k = 0; k < t.s_count; ++k)
        for (int d = 0; d < 10; ++d) {
            t.masked[k][d] = t.count[k][d] < min_count;
            t.mean[k][d] = t.count[k][d] > 0 ? sum[k][d] / t.count[k][d] : 0.0;
        }
    return t;
}

TileEffect tile_regression(const OutcomeTable& table, char letter, Metric metric,
                           bool use_played) {
    int tile = tile_from_char(letter);
    if (tile < 0) throw std::runtime_error(std::string("bad letter: ") + letter);
    TileEffect eff;
    eff.letter = letter;

    const size_t n = table.rows.size();
    if (n < 3) throw std::runtime_error("tile_regression needs >= 3 games");
    double x_mean = 0, y_mean = 0;
    auto x_of = [&](const GameOutcome& r) {
        return double(use_played ? r.played_p1[tile] : r.drawn_p1[tile]);
    };
    for (const auto& r : table.rows) {
        x_mean += x_of(r);
        y_mean += metric_value(r, metric);
    }
    x_mean /= double(n);
    y_mean /= double(n);

    double sxx = 0, sxy = 0;
    for (const auto& r : table.rows) {
        double dx = x_of(r) - x_mean;
        sxx += dx * dx;
        sxy += dx * (metric_value(r, metric) - y_mean);
    }
    if (sxx <= 0.0) {
        eff.defined = false;
        return eff;
    }
    eff.slope = sxy / sxx;

    auto groups = table.by_order();
    double cluster_ss = 0;
    for (const auto& [id, rows] : groups) {
        double h = 0;
        for (const auto* r : rows) {
            double dx = x_of(*r) - x_mean;
            double e = (metric_value(*r, metric) - y_mean) - eff.slope * dx;
            h += dx * e;
        }
        cluster_ss += h * h;
    }
    const double g = double(groups.size());
    double correction = g > 1 ? g / (g - 1) : 1.0;
    eff.std_error = std::sqrt(correction * cluster_ss) / sxx;
    return eff;
}

std::vector<LetterComparison> compare_rulesets(const OutcomeTable& scrabble,
                                               const OutcomeTable& wwf, Metric metric) {
    std::vector<LetterComparison> out;
    const std::string letters = "ABCDEFGHIJKLMNOPQRSTUVWXYZ?";
    for (char c : letters) {
        TileEffect a = tile_regression(scrabble, c, metric);
        TileEffect b = tile_regression(wwf, c, metric);
        if (!a.defined || !b.defined) continue;
        out.push_back({c, a.slope, b.slope, b.slope - a.slope});
    }
    return out;
}

// --- chi-square survival function ----------------------------------------

namespace {

// regularized incomplete gamma, series and continued-fraction forms
double gamma_p_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double chi_square_sf(double x, double df) {
    if (x <= 0) return 1.0;
    double a = df / 2.0, hx = x / 2.0;
    if (hx < a + 1.0) return 1.0 - gamma_p_series(a, hx);
    return gamma_q_contfrac(a, hx);
}

}  // namespace tilebench

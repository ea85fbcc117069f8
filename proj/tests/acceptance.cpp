#include <doctest.h>

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "brute_force.hpp"
#include "scored_cases.hpp"
#include "test_util.hpp"
#include "tilebench/analysis.hpp"
#include "tilebench/harness.hpp"

using namespace tilebench;
using tbtest::data_path;
using tbtest::english_lexicon_path;
using tbtest::make_outcome;
using tbtest::read_file;
using tbtest::scrabble_rules;
using tbtest::temp_path;
using tbtest::write_file;

namespace {

void report(int id, const char* name, bool ok, const std::string& detail = "") {
    std::printf("criterion %02d %-28s %s%s%s\n", id, name, ok ? "PASS" : "FAIL",
                detail.empty() ? "" : " ", detail.c_str());
    std::fflush(stdout);
    CHECK_MESSAGE(ok, "criterion ", id, " (", name, ") ", detail);
}

double normal(Rng& rng) {
    double u1 = rng.unit(), u2 = rng.unit();
    while (u1 <= 0) u1 = rng.unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

ExperimentConfig desk_config(const std::string& ruleset_file, uint64_t seed) {
    ExperimentConfig cfg;
    cfg.ruleset_path = data_path("rulesets/" + ruleset_file);
    cfg.lexicon_path = english_lexicon_path();
    cfg.n_orders = 200;
    cfg.replicates_per_order = 20;
    cfg.master_seed = seed;
    cfg.bot1.leave_table = LeaveTable::load(data_path("leaves/default.leaves"));
    cfg.bot2.leave_table = cfg.bot1.leave_table;
    cfg.workers = 1;
    return cfg;
}

const ExperimentResult& desk_run(const char* ruleset_file, uint64_t seed,
                                 ExperimentResult& cache) {
    if (cache.table.rows.empty()) {
        std::fprintf(stderr, "running desk-scale experiment: %s\n", ruleset_file);
        cache = run_experiment(desk_config(ruleset_file, seed), [&](int done, int total) {
            if (done % 800 == 0 || done == total)
                std::fprintf(stderr, "  %s: %d/%d games\n", ruleset_file, done, total);
        });
    }
    return cache;
}

ExperimentResult g_scrabble, g_wwf;
const ExperimentResult& desk_scrabble() { return desk_run("scrabble.rules", 424242, g_scrabble); }
const ExperimentResult& desk_wwf() { return desk_run("wwf.rules", 424242, g_wwf); }

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

}  // namespace

TEST_CASE("criterion 1: sum-of-squares identity") {
    Rng rng(111);
    bool ok = true;
    double worst = 0;
    for (int trial = 0; trial < 80 && ok; ++trial) {
        int S = 2 + int(rng.below(25));
        int R = 2 + int(rng.below(12));
        OutcomeTable t;
        for (int o = 0; o < S; ++o)
            for (int r = 0; r < R; ++r)
                t.rows.push_back(make_outcome(o, r, int(rng.below(1000)), int(rng.below(1000))));
        auto res = variance_decomposition(t, Metric::diff);
        if (res.ss_total > 0) {
            double rel = std::fabs(res.ss_total - (res.ss_between + res.ss_within)) / res.ss_total;
            worst = std::max(worst, rel);
            ok = ok && rel <= 1e-9;
        }
    }
    report(1, "anova identity", ok, fmt("(worst rel err %.2e)", worst));
}

TEST_CASE("criterion 2: synthetic decomposition recovery") {
    Rng rng(222);
    OutcomeTable t;
    for (int o = 0; o < 500; ++o) {
        double b = 100.0 * normal(rng);
        for (int r = 0; r < 50; ++r)
            t.rows.push_back(make_outcome(o, r, int(std::lround(b + 100.0 * normal(rng))), 0));
    }
    auto res = variance_decomposition(t, Metric::p1_score);
    bool ok = res.anova_between_fraction >= 0.45 && res.anova_between_fraction <= 0.55;
    report(2, "synthetic recovery", ok, fmt("(between fraction %.4f)", res.anova_between_fraction));
}

TEST_CASE("criterion 3: replicated front draws under varying opposition") {
    TileSequence seq = sequence_for_order(scrabble_rules(), 77, 0);
    const int p1_counts[8] = {7, 3, 2, 4, 1, 5, 2, 3};  // fixed P1 schedule, 27 tiles
    std::vector<std::vector<TileId>> p1_draws;
    std::vector<std::vector<TileId>> p2_draws;
    for (int rep = 0; rep < 5; ++rep) {
        Reservoir res(seq, scrabble_rules().exchange_min_reserve);
        Rng rng(1000 + uint64_t(rep));
        std::vector<TileId> mine, theirs;
        for (int turn = 0; turn < 8; ++turn) {
            auto d = res.draw(End::front, p1_counts[turn], rng);
            mine.insert(mine.end(), d.begin(), d.end());
            // opposing draw counts vary by replicate; pool never runs dry here
            auto e = res.draw(End::back, int(rng.below(5)), rng);
            theirs.insert(theirs.end(), e.begin(), e.end());
        }
        p1_draws.push_back(mine);
        p2_draws.push_back(theirs);
    }
    bool identical = true;
    for (const auto& d : p1_draws) identical = identical && d == p1_draws[0];
    bool p2_varied = false;
    for (const auto& d : p2_draws) p2_varied = p2_varied || d != p2_draws[0];
    report(3, "two-sided draw replication", identical && p2_varied,
           fmt("(p1 drew %zu tiles x5 replicates)", p1_draws[0].size()));
}

TEST_CASE("criterion 4: selection audit clean at desk scale") {
    const ExperimentResult& res = desk_scrabble();
    long violations = 0;
    for (const auto& r : res.table.rows) violations += r.audit_violations;
    bool ok = violations == 0 && res.aborted == 0 && res.table.rows.size() == 4000;
    report(4, "perturbation bound", ok,
           fmt("(%ld violations, %d aborted over %zu games)", violations, res.aborted,
               res.table.rows.size()));
}

TEST_CASE("criterion 5: move generator equals brute force") {
    Rng rng(4242);
    int failures = 0;
    std::string first;
    for (int i = 0; i < 100; ++i) {
        auto inst = tbtest::random_movegen_instance(rng);
        std::string diff = tbtest::compare_movegen_to_brute_force(inst, scrabble_rules());
        if (!diff.empty()) {
            ++failures;
            if (first.empty()) first = diff;
        }
    }
    report(5, "movegen oracle", failures == 0,
           failures ? fmt("(%d/100 mismatched: %s)", failures, first.c_str())
                    : "(100/100 instances matched)");
}

TEST_CASE("criterion 6: hand-scored positions") {
    auto cases = tbtest::scored_cases();
    int bad = 0;
    for (const auto& tc : cases) {
        Board board = tbtest::board_from(tc.board);
        Placement p = tbtest::make_placement(board, tc.row, tc.col, tc.across, tc.word);
        if (score_move(board, p, tc.rs) != tc.expected) ++bad;
    }
    report(6, "scoring oracle", cases.size() >= 20 && bad == 0,
           fmt("(%zu positions, %d mismatched)", cases.size(), bad));
}

TEST_CASE("criterion 7: desk-scale directional results") {
    const OutcomeTable& t = desk_scrabble().table;

    auto dec = variance_decomposition(t, Metric::diff);
    double observed = dec.anova_between_fraction;

    // null calibration: shuffle order labels, keeping the grid balanced
    std::vector<double> diffs;
    for (const auto& r : t.rows) diffs.push_back(r.diff);
    Rng rng(777);
    double null_sum = 0;
    const int kNull = 20;
    for (int s = 0; s < kNull; ++s) {
        rng.shuffle(diffs);
        OutcomeTable shuffled = t;
        for (size_t i = 0; i < shuffled.rows.size(); ++i)
            shuffled.rows[i].diff = int(diffs[i]);
        null_sum += variance_decomposition(shuffled, Metric::diff).anova_between_fraction;
    }
    double null_mean = null_sum / kNull;

    auto adv = first_player_advantage(t);
    DecileGrid grid = blank_decile_table(t);
    double contrast = grid.front_back_contrast();
    TileEffect s_eff = tile_regression(t, 'S', Metric::p1_score);
    TileEffect q_eff = tile_regression(t, 'Q', Metric::p1_score);

    bool ok_frac = observed >= 0.15 && observed <= 0.75 && observed > null_mean;
    bool ok_adv = adv.mean_diff > 0 && adv.ci_low > 0;
    bool ok_blank = contrast >= 10 && contrast <= 60;
    bool ok_tiles = s_eff.defined && s_eff.slope > 0 && q_eff.defined && q_eff.slope < 0;
    report(7, "scrabble directional", ok_frac && ok_adv && ok_blank && ok_tiles,
           fmt("(between %.3f null %.3f; adv %.1f ci [%.1f,%.1f]; blank %.1f; S %.2f Q %.2f)",
               observed, null_mean, adv.mean_diff, adv.ci_low, adv.ci_high, contrast, s_eff.slope,
               q_eff.slope));
}

TEST_CASE("criterion 8: ruleset comparison structure") {
    const OutcomeTable& scr = desk_scrabble().table;
    const OutcomeTable& wwf = desk_wwf().table;
    double mean_scr = 0, mean_wwf = 0;
    for (const auto& r : scr.rows) mean_scr += r.p1_score;
    for (const auto& r : wwf.rows) mean_wwf += r.p1_score;
    mean_scr /= double(scr.rows.size());
    mean_wwf /= double(wwf.rows.size());

    auto rows = compare_rulesets(scr, wwf, Metric::p1_score);
    double delta_j = 0;
    bool have_j = false;
    for (const auto& r : rows)
        if (r.letter == 'J') {
            have_j = true;
            delta_j = r.delta;
        }
    bool ok = std::fabs(mean_wwf - mean_scr) > 0.5 && !rows.empty() && have_j && delta_j > 0;
    report(8, "wwf vs scrabble", ok,
           fmt("(mean p1 %.1f vs %.1f; %zu letters; delta(J) %.2f)", mean_scr, mean_wwf,
               rows.size(), delta_j));
}

TEST_CASE("criterion 9: deterministic output files") {
    auto small = [](const char* name) {
        ExperimentConfig cfg = desk_config("scrabble.rules", 555);
        cfg.n_orders = 6;
        cfg.replicates_per_order = 3;
        cfg.output_path = temp_path(name);
        std::filesystem::remove(cfg.output_path);
        return cfg;
    };
    ExperimentConfig one = small("acc_w1.csv");
    ExperimentConfig eight = small("acc_w8.csv");
    eight.workers = 8;
    run_experiment(one);
    run_experiment(eight);
    std::string a = read_file(one.output_path);
    bool workers_ok = a == read_file(eight.output_path) && !a.empty();

    // interrupt: keep the two header lines plus four finished rows, resume
    std::istringstream in(a);
    std::string line, partial;
    for (int kept = 0; kept < 6 && std::getline(in, line); ++kept) partial += line + "\n";
    ExperimentConfig resumed = small("acc_resume.csv");
    write_file(resumed.output_path, partial);
    run_experiment(resumed);
    bool resume_ok = read_file(resumed.output_path) == a;

    report(9, "determinism", workers_ok && resume_ok,
           fmt("(1-vs-8 workers %s, resume %s)", workers_ok ? "identical" : "DIFFER",
               resume_ok ? "identical" : "DIFFER"));
}

TEST_CASE("criterion 10: exchange reinsertion uniformity") {
    Rng rng(99);
    const int kTrials = 100000;
    std::array<int, 10> counts{};
    for (int t = 0; t < kTrials; ++t) {
        Reservoir res(TileSequence::from_line("AAAAAAAAAA"), 0);
        res.exchange(End::front, {TileId(tile_from_char('Z'))}, rng);
        auto rem = res.remaining_tiles();
        for (size_t i = 0; i < rem.size(); ++i)
            if (rem[i] == tile_from_char('Z')) ++counts[i];
    }
    double expected = kTrials / 10.0, stat = 0;
    for (int c : counts) stat += (c - expected) * (c - expected) / expected;
    double p = chi_square_sf(stat, 9);
    report(10, "exchange uniformity", p > 0.001, fmt("(chi2 %.2f, p %.4f)", stat, p));
}

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tilebench/analysis.hpp"
#include "tilebench/harness.hpp"

using namespace tilebench;

namespace {

int default_workers() {
    if (const char* env = std::getenv("TILEBENCH_WORKERS")) {
        int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return 1;
}

struct BotFlags {
    std::string leave_table_path;
    double perturb = 1.0;
    double exchange_threshold = 2.0;
    double openness = 0.0;

    BotConfig to_config() const {
        BotConfig cfg;
        if (!leave_table_path.empty()) cfg.leave_table = LeaveTable::load(leave_table_path);
        cfg.perturbation_half_width = perturb;
        cfg.exchange_threshold = exchange_threshold;
        cfg.openness_weight = openness;
        return cfg;
    }
};

void add_bot_flags(CLI::App* cmd, BotFlags& flags) {
    cmd->add_option("--leave-table", flags.leave_table_path,
                    "Leave-table data file (default: built-in zero table)");
    cmd->add_option("--perturb", flags.perturb,
                    "Half-width of the uniform utility perturbation (default 1)");
    cmd->add_option("--exchange-threshold", flags.exchange_threshold,
                    "Exchange when the best play's utility is below this (default 2)");
    cmd->add_option("--openness", flags.openness, "Openness term weight (default 0)");
}

void print_decomposition(const DecompositionResult& d) {
    std::cout << "metric: " << d.metric << "\n"
              << "orders: " << d.n_orders << "  replicates: " << d.replicates << "\n"
              << "SS_total:   " << d.ss_total << "\n"
              << "SS_between: " << d.ss_between << "\n"
              << "SS_within:  " << d.ss_within << "\n"
              << "identity |SS_total - (SS_between+SS_within)| = "
              << std::abs(d.ss_total - d.ss_between - d.ss_within) << "\n";
    if (!d.defined) {
        std::cout << "fractions: undefined (all values equal)\n";
        return;
    }
    std::cout << "between fraction (naive, Var of order means / Var of all): "
              << d.between_fraction_naive << "\n"
              << "between fraction (ANOVA component):                        "
              << d.anova_between_fraction << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tilebench: replicated tile-order experiments for crossword games"};
    app.require_subcommand(1);

    // ---- lexicon build
    auto* lex_cmd = app.add_subcommand("lexicon", "Lexicon operations");
    lex_cmd->require_subcommand(1);
    auto* lex_build = lex_cmd->add_subcommand("build", "Build a compressed lexicon from a word list");
    std::string wordlist_path, lexicon_out;
    lex_build->add_option("wordlist", wordlist_path, "Word list, one word per line")->required();
    lex_build->add_option("-o,--output", lexicon_out, "Output lexicon file")->required();

    // ---- ruleset validate
    auto* rules_cmd = app.add_subcommand("ruleset", "Ruleset operations");
    rules_cmd->require_subcommand(1);
    auto* rules_validate = rules_cmd->add_subcommand("validate", "Validate a ruleset file");
    std::string ruleset_path;
    rules_validate->add_option("path", ruleset_path, "Ruleset file")->required();

    // ---- simulate
    auto* sim = app.add_subcommand("simulate", "Run a tile-order experiment");
    ExperimentConfig cfg;
    cfg.workers = default_workers();
    BotFlags bot_flags;
    sim->add_option("--ruleset", cfg.ruleset_path, "Ruleset file")->required();
    sim->add_option("--lexicon", cfg.lexicon_path, "Serialized lexicon file")->required();
    sim->add_option("--orders", cfg.n_orders, "Number of tile orders");
    sim->add_option("--reps", cfg.replicates_per_order, "Replicated games per order");
    sim->add_option("--seed", cfg.master_seed, "Master seed; all randomness derives from it");
    sim->add_option("--workers", cfg.workers, "Worker threads (env TILEBENCH_WORKERS)");
    sim->add_option("-o,--output", cfg.output_path, "Output CSV path")->required();
    sim->add_flag("--classic-bag", cfg.classic_bag,
                  "Draw uniformly from the remaining tiles instead of the two-sided order");
    add_bot_flags(sim, bot_flags);

    // ---- game (single game to a record file)
    auto* game_cmd = app.add_subcommand("game", "Play one game and save its record");
    ExperimentConfig game_cfg;
    BotFlags game_bot_flags;
    uint64_t game_order = 0, game_rep = 0;
    std::string record_out;
    game_cmd->add_option("--ruleset", game_cfg.ruleset_path, "Ruleset file")->required();
    game_cmd->add_option("--lexicon", game_cfg.lexicon_path, "Serialized lexicon file")->required();
    game_cmd->add_option("--seed", game_cfg.master_seed, "Master seed");
    game_cmd->add_option("--order", game_order, "Order id");
    game_cmd->add_option("--rep", game_rep, "Replicate id");
    game_cmd->add_option("-o,--output", record_out, "Record output path")->required();
    add_bot_flags(game_cmd, game_bot_flags);

    // ---- replay
    auto* replay = app.add_subcommand("replay", "Replay and verify a game record");
    std::string record_path, replay_ruleset;
    bool replay_quiet = false;
    replay->add_option("record", record_path, "Game record file")->required();
    replay->add_option("--ruleset", replay_ruleset,
                       "Ruleset file (defaults to data/rulesets/<name>.rules)");
    replay->add_flag("-q,--quiet", replay_quiet, "Verify only, no board printout");

    // ---- analyze
    auto* analyze = app.add_subcommand("analyze", "Estimators over an outcome CSV");
    analyze->require_subcommand(1);
    std::string an_csv, an_csv2, an_out;
    std::string an_metric = "p1_score";
    int an_min_count = 50;
    std::string an_letter = "S";
    bool an_played = false;

    auto* an_dec = analyze->add_subcommand("decompose", "Between/within variance decomposition");
    an_dec->add_option("csv", an_csv)->required();
    an_dec->add_option("--metric", an_metric, "p1_score or diff");

    auto* an_adv = analyze->add_subcommand("advantage", "First-player advantage");
    an_adv->add_option("csv", an_csv)->required();

    auto* an_sd = analyze->add_subcommand("withinsd", "Quantiles of within-order sd");
    an_sd->add_option("csv", an_csv)->required();
    an_sd->add_option("--metric", an_metric, "p1_score or diff");

    auto* an_blanks = analyze->add_subcommand("blanks", "Blank decile grid");
    an_blanks->add_option("csv", an_csv)->required();
    an_blanks->add_option("-o,--output", an_out, "Write the grid as CSV");
    an_blanks->add_option("--min-count", an_min_count, "Mask cells with fewer games");

    auto* an_s = analyze->add_subcommand("sletters", "Per-decile means for the k-th S");
    an_s->add_option("csv", an_csv)->required();
    an_s->add_option("-o,--output", an_out, "Write the table as CSV");
    an_s->add_option("--min-count", an_min_count, "Mask cells with fewer games");

    auto* an_reg = analyze->add_subcommand("regress", "Per-tile linear effect");
    an_reg->add_option("csv", an_csv)->required();
    an_reg->add_option("--letter", an_letter, "Letter A-Z or ?");
    an_reg->add_option("--metric", an_metric, "p1_score or diff");
    an_reg->add_flag("--played", an_played, "Regress on tiles played instead of tiles drawn");

    auto* an_cmp = analyze->add_subcommand("compare", "Per-letter effects, Scrabble vs WWF");
    an_cmp->add_option("scrabble_csv", an_csv)->required();
    an_cmp->add_option("wwf_csv", an_csv2)->required();
    an_cmp->add_option("-o,--output", an_out, "Write the comparison as CSV");

    auto* an_orders = analyze->add_subcommand("orders", "Per-order summary statistics");
    an_orders->add_option("csv", an_csv)->required();
    an_orders->add_option("-o,--output", an_out, "Write per-order stats as CSV");

    CLI11_PARSE(app, argc, argv);

    auto metric_of = [&]() {
        if (an_metric == "p1_score") return Metric::p1_score;
        if (an_metric == "diff") return Metric::diff;
        throw std::runtime_error("unknown metric: " + an_metric + " (use p1_score or diff)");
    };

    try {
        if (*lex_build) {
            LexiconBuildReport report;
            auto words = read_word_list(wordlist_path);
            Lexicon lex = Lexicon::build(words, &report);
            lex.save(lexicon_out);
            std::cout << "words accepted: " << report.accepted
                      << "  rejected (length): " << report.rejected_length
                      << "  duplicates: " << report.duplicates << "\n"
                      << "nodes: " << lex.node_count() << "  arcs: " << lex.arc_count() << "\n"
                      << "wrote " << lexicon_out << "\n";
        } else if (*rules_validate) {
            RuleSet rs = load_ruleset(ruleset_path);
            auto findings = validate_ruleset(rs);
            if (findings.empty()) {
                std::cout << "ok: " << rs.name << " (" << rs.total_tiles() << " tiles)\n";
            } else {
                for (const auto& f : findings)
                    std::cout << "finding[" << f.code << "]: " << f.detail << "\n";
                return 1;
            }
        } else if (*sim) {
            cfg.bot1 = bot_flags.to_config();
            cfg.bot2 = cfg.bot1;
            auto result = run_experiment(cfg, [](int done, int total) {
                std::cerr << "\r" << done << "/" << total << " games" << std::flush;
            });
            std::cerr << "\n";
            std::cout << "rows: " << result.table.rows.size() << "  aborted: " << result.aborted
                      << "\nwrote " << cfg.output_path << " (+ .meta.json)\n";
            if (result.aborted > 0) return 1;
        } else if (*game_cmd) {
            game_cfg.bot1 = game_bot_flags.to_config();
            game_cfg.bot2 = game_cfg.bot1;
            RuleSet rs = load_ruleset(game_cfg.ruleset_path);
            Lexicon lex = Lexicon::load(game_cfg.lexicon_path);
            GameRecord rec = run_single_game(rs, lex, game_cfg, game_order, game_rep);
            rec.save(record_out);
            std::cout << "final " << rec.final_scores[0] << "-" << rec.final_scores[1]
                      << ", wrote " << record_out << "\n";
        } else if (*replay) {
            GameRecord rec = GameRecord::load(record_path);
            std::string rules_path = replay_ruleset.empty()
                                         ? "data/rulesets/" + rec.ruleset_name + ".rules"
                                         : replay_ruleset;
            RuleSet rs = load_ruleset(rules_path);
            auto scores = replay_record(rec, rs, replay_quiet ? nullptr : &std::cout);
            std::cout << "verified: final " << scores[0] << "-" << scores[1] << "\n";
        } else if (*an_dec) {
            print_decomposition(variance_decomposition(read_outcome_csv(an_csv), metric_of()));
        } else if (*an_adv) {
            auto a = first_player_advantage(read_outcome_csv(an_csv));
            std::cout << "games: " << a.n_games << "  orders: " << a.n_orders << "\n"
                      << "mean diff (p1 - p2): " << a.mean_diff << "\n"
                      << "clustered se: " << a.std_error << "\n"
                      << "95% CI: [" << a.ci_low << ", " << a.ci_high << "]\n";
        } else if (*an_sd) {
            auto q = within_sd_quantiles(read_outcome_csv(an_csv), metric_of());
            std::cout << "within-order sd quantiles over " << q.n_orders << " orders ("
                      << an_metric << "):\n"
                      << "  5%: " << q.q5 << "\n 25%: " << q.q25 << "\n 50%: " << q.q50
                      << "\n 75%: " << q.q75 << "\n 95%: " << q.q95 << "\n";
        } else if (*an_blanks) {
            auto grid = blank_decile_table(read_outcome_csv(an_csv), an_min_count);
            std::ostream* out = &std::cout;
            std::ofstream f;
            if (!an_out.empty()) {
                f.open(an_out);
                out = &f;
            }
            *out << "blank1_decile,blank2_decile,mean_p1_score,count,masked\n";
            for (int i = 0; i < 10; ++i)
                for (int j = 0; j < 10; ++j)
                    *out << i + 1 << ',' << j + 1 << ',' << grid.mean[i][j] << ','
                         << grid.count[i][j] << ',' << (grid.masked[i][j] ? 1 : 0) << "\n";
            std::cout << "front-half vs back-half contrast: " << grid.front_back_contrast()
                      << " points\n";
        } else if (*an_s) {
            auto t = s_position_table(read_outcome_csv(an_csv), an_min_count);
            std::ostream* out = &std::cout;
            std::ofstream f;
            if (!an_out.empty()) {
                f.open(an_out);
                out = &f;
            }
            *out << "s_index,decile,mean_p1_score,count,masked\n";
            for (int k = 0; k < t.s_count; ++k)
                for (int d = 0; d < 10; ++d)
                    *out << k + 1 << ',' << d + 1 << ',' << t.mean[k][d] << ',' << t.count[k][d]
                         << ',' << (t.masked[k][d] ? 1 : 0) << "\n";
        } else if (*an_reg) {
            auto eff = tile_regression(read_outcome_csv(an_csv), an_letter.at(0), metric_of(),
                                       an_played);
            if (!eff.defined) {
                std::cout << "undefined: exposure count of " << an_letter << " never varies\n";
                return 1;
            }
            std::cout << "letter " << eff.letter << ": slope " << eff.slope
                      << " points per copy (clustered se " << eff.std_error << ")\n";
        } else if (*an_cmp) {
            auto rows = compare_rulesets(read_outcome_csv(an_csv), read_outcome_csv(an_csv2));
            std::ostream* out = &std::cout;
            std::ofstream f;
            if (!an_out.empty()) {
                f.open(an_out);
                out = &f;
            }
            *out << "letter,scrabble_effect,wwf_effect,delta\n";
            for (const auto& r : rows)
                *out << r.letter << ',' << r.scrabble_effect << ',' << r.wwf_effect << ','
                     << r.delta << "\n";
        } else if (*an_orders) {
            auto sums = summarize_orders(read_outcome_csv(an_csv));
            std::ostream* out = &std::cout;
            std::ofstream f;
            if (!an_out.empty()) {
                f.open(an_out);
                out = &f;
            }
            *out << "order_id,replicates,mean_p1,sd_p1,mean_diff,sd_diff,variance_defined\n";
            for (const auto& s : sums)
                *out << s.order_id << ',' << s.replicates << ',' << s.mean_p1 << ',' << s.sd_p1
                     << ',' << s.mean_diff << ',' << s.sd_diff << ',' << (s.variance_defined ? 1 : 0)
                     << "\n";
        }
    } catch (const RulesetError& e) {
        std::cerr << "error[" << e.code << "]: " << e.what() << "\n";
        return 1;
    } catch (const LexiconError& e) {
        std::cerr << "error[" << e.code << "]: " << e.what() << "\n";
        return 1;
    } catch (const ReservoirError& e) {
        std::cerr << "error[" << e.code << "]: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include "tilebench/harness.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include <json.hpp>

namespace tilebench {

uint64_t order_seed(uint64_t master_seed, uint64_t order_id) {
    return mix64(master_seed, 0x6f72646572ULL /* "order" */, order_id);
}

uint64_t game_seed(uint64_t master_seed, uint64_t order_id, uint64_t replicate_id) {
    return mix64(mix64(master_seed, 0x67616d65ULL /* "game" */, order_id), replicate_id);
}

TileSequence sequence_for_order(const RuleSet& rs, uint64_t master_seed, uint64_t order_id) {
    Rng rng(order_seed(master_seed, order_id));
    TileSequence seq = generate_sequence(rs, rng);
    seq.order_id = order_id;
    return seq;
}

GameRecord run_single_game(const RuleSet& rs, const Lexicon& lex, const ExperimentConfig& config,
                           uint64_t order_id, uint64_t replicate_id) {
    TileSequence seq = sequence_for_order(rs, config.master_seed, order_id);
    Reservoir res(seq, rs.exchange_min_reserve, config.classic_bag);
    SpeedyBot bot1(config.bot1), bot2(config.bot2);
    Rng rng(game_seed(config.master_seed, order_id, replicate_id));
    GameRecord rec = play_game(rs, lex, res, bot1, bot2, rng);
    rec.order_id = order_id;
    rec.replicate_id = replicate_id;
    return rec;
}

ExperimentResult run_experiment(const ExperimentConfig& config,
                                std::function<void(int, int)> progress) {
    if (config.n_orders < 1 || config.replicates_per_order < 1)
        throw std::runtime_error("n_orders and replicates_per_order must be >= 1");
    const RuleSet rs = load_ruleset(config.ruleset_path);
    const Lexicon lex = Lexicon::load(config.lexicon_path);

    ExperimentResult result;
    result.table.ruleset_name = rs.name;
    std::set<std::pair<uint64_t, uint64_t>> done;

    // Resume: keep rows already on disk that belong to this grid.
    if (!config.output_path.empty() && std::filesystem::exists(config.output_path)) {
        try {
            OutcomeTable existing = read_outcome_csv(config.output_path);
            for (auto& row : existing.rows) {
                if (row.order_id >= uint64_t(config.n_orders) ||
                    row.replicate_id >= uint64_t(config.replicates_per_order))
                    continue;
                if (done.insert({row.order_id, row.replicate_id}).second)
                    result.table.rows.push_back(std::move(row));
            }
        } catch (const std::exception&) {
            // unreadable partial file: start over
        }
    }

    std::vector<std::pair<uint64_t, uint64_t>> tasks;
    for (int o = 0; o < config.n_orders; ++o)
        for (int r = 0; r < config.replicates_per_order; ++r)
            if (!done.count({uint64_t(o), uint64_t(r)})) tasks.push_back({uint64_t(o), uint64_t(r)});

    std::ofstream flush_file;
    if (!config.output_path.empty()) {
        if (done.empty()) {
            flush_file.open(config.output_path, std::ios::trunc);
            flush_file << outcome_csv_header() << "\n";
            for (const auto& row : result.table.rows) flush_file << outcome_csv_row(row) << "\n";
        } else {
            flush_file.open(config.output_path, std::ios::app);
        }
    }

    std::atomic<size_t> next_task{0};
    std::atomic<int> done_count{int(done.size())};
    const int total = config.n_orders * config.replicates_per_order;
    std::mutex collect_mutex;

    auto worker = [&]() {
        for (;;) {
            size_t i = next_task.fetch_add(1);
            if (i >= tasks.size()) return;
            auto [order_id, replicate_id] = tasks[i];
            try {
                GameRecord rec = run_single_game(rs, lex, config, order_id, replicate_id);
                TileSequence seq = sequence_for_order(rs, config.master_seed, order_id);
                GameOutcome outcome = GameOutcome::from_record(rec, seq);
                std::lock_guard<std::mutex> lock(collect_mutex);
                if (flush_file.is_open()) {
                    flush_file << outcome_csv_row(outcome) << "\n";
                    flush_file.flush();
                }
                result.table.rows.push_back(std::move(outcome));
            } catch (const GameAbort& e) {
                std::lock_guard<std::mutex> lock(collect_mutex);
                ++result.aborted;
                result.abort_diagnostics.push_back("order " + std::to_string(order_id) +
                                                   " replicate " + std::to_string(replicate_id) +
                                                   ": " + e.what());
            }
            int d = done_count.fetch_add(1) + 1;
            if (progress && (d % 100 == 0 || d == total)) progress(d, total);
        }
    };

    int n_workers = std::max(1, config.workers);
    std::vector<std::thread> threads;
    threads.reserve(size_t(n_workers));
    for (int i = 0; i < n_workers; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (flush_file.is_open()) flush_file.close();

    result.table.sort_rows();
    if (!config.output_path.empty()) {
        write_outcome_csv(result.table, config.output_path);
        nlohmann::json meta;
        meta["format"] = "tilebench-experiment-meta";
        meta["version"] = 1;
        meta["ruleset"] = rs.name;
        meta["ruleset_path"] = config.ruleset_path;
        meta["lexicon_path"] = config.lexicon_path;
        meta["n_orders"] = config.n_orders;
        meta["replicates_per_order"] = config.replicates_per_order;
        meta["master_seed"] = config.master_seed;
        meta["classic_bag"] = config.classic_bag;
        meta["rows"] = result.table.rows.size();
        meta["aborted_games"] = result.aborted;
        meta["abort_diagnostics"] = result.abort_diagnostics;
        std::ofstream mf(config.output_path + ".meta.json");
        mf << meta.dump(2) << "\n";
    }
    return result;
}

}  // namespace tilebench

#include "tilebench/outcome.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tilebench {

namespace {
constexpr const char* kCsvVersionLine = "# tilebench-outcomes 1";
}

GameOutcome GameOutcome::from_record(const GameRecord& rec, const TileSequence& seq) {
    GameOutcome o;
    o.order_id = rec.order_id;
    o.replicate_id = rec.replicate_id;
    o.p1_score = rec.final_scores[0];
    o.p2_score = rec.final_scores[1];
    o.diff = o.p1_score - o.p2_score;
    o.winner = o.diff > 0 ? 1 : (o.diff < 0 ? 2 : 0);
    o.p1_bingos = rec.bingos[0];
    o.p2_bingos = rec.bingos[1];
    o.tiles_available_p1 = int(rec.drawn[0].size());
    o.tiles_available_p2 = int(rec.drawn[1].size());
    o.audit_violations = rec.audit_violations;
    o.drawn_p1 = rec.exposure_counts_p1();
    o.played_p1 = rec.played_counts_p1;
    int nb = 0;
    for (size_t i = 0; i < seq.tiles.size(); ++i) {
        if (seq.tiles[i] == kBlank && nb < 2) o.blank_positions[nb++] = int(i) + 1;
        if (seq.tiles[i] == 'S' - 'A') o.s_positions.push_back(int(i) + 1);
    }
    return o;
}

std::map<uint64_t, std::vector<const GameOutcome*>> OutcomeTable::by_order() const {
    std::map<uint64_t, std::vector<const GameOutcome*>> groups;
    for (const auto& r : rows) groups[r.order_id].push_back(&r);
    for (auto& [id, g] : groups)
        std::sort(g.begin(), g.end(), [](const GameOutcome* a, const GameOutcome* b) {
            return a->replicate_id < b->replicate_id;
        });
    return groups;
}

void OutcomeTable::sort_rows() {
    std::sort(rows.begin(), rows.end(), [](const GameOutcome& a, const GameOutcome& b) {
        return std::tie(a.order_id, a.replicate_id) < std::tie(b.order_id, b.replicate_id);
    });
}

std::vector<OrderSummary> summarize_orders(const OutcomeTable& table) {
    std::vector<OrderSummary> out;
    for (const auto& [id, rows] : table.by_order()) {
        OrderSummary s;
        s.order_id = id;
        s.replicates = int(rows.size());
        double sum_p1 = 0, sum_diff = 0;
        for (const auto* r : rows) {
            sum_p1 += r->p1_score;
            sum_diff += r->diff;
        }
        s.mean_p1 = sum_p1 / s.replicates;
        s.mean_diff = sum_diff / s.replicates;
        if (s.replicates >= 2) {
            double ss_p1 = 0, ss_diff = 0;
            for (const auto* r : rows) {
                ss_p1 += (r->p1_score - s.mean_p1) * (r->p1_score - s.mean_p1);
                ss_diff += (r->diff - s.mean_diff) * (r->diff - s.mean_diff);
            }
            s.var_p1 = ss_p1 / (s.replicates - 1);
            s.var_diff = ss_diff / (s.replicates - 1);
            s.sd_p1 = std::sqrt(s.var_p1);
            s.sd_diff = std::sqrt(s.var_diff);
            s.variance_defined = true;
        }
        out.push_back(s);
    }
    return out;
}

std::string outcome_csv_header() {
    std::ostringstream h;
    h << kCsvVersionLine << "\n";
    h << "order_id,replicate_id,p1_score,p2_score,diff,winner,p1_bingos,p2_bingos,"
         "tiles_available_p1,tiles_available_p2,audit_violations,blank_pos_1,blank_pos_2,"
         "s_positions";
    for (int t = 0; t < kNumTileKinds; ++t)
        h << ",drawn_" << (t == kBlank ? std::string("blank") : std::string(1, char('A' + t)));
    for (int t = 0; t < kNumTileKinds; ++t)
        h << ",played_" << (t == kBlank ? std::string("blank") : std::string(1, char('A' + t)));
    return h.str();
}

std::string outcome_csv_row(const GameOutcome& o) {
    std::ostringstream r;
    r << o.order_id << ',' << o.replicate_id << ',' << o.p1_score << ',' << o.p2_score << ','
      << o.diff << ',' << o.winner << ',' << o.p1_bingos << ',' << o.p2_bingos << ','
      << o.tiles_available_p1 << ',' << o.tiles_available_p2 << ',' << o.audit_violations << ','
      << o.blank_positions[0] << ',' << o.blank_positions[1] << ',';
    for (size_t i = 0; i < o.s_positions.size(); ++i) {
        if (i) r << ';';
        r << o.s_positions[i];
    }
    for (int t = 0; t < kNumTileKinds; ++t) r << ',' << o.drawn_p1[t];
    for (int t = 0; t < kNumTileKinds; ++t) r << ',' << o.played_p1[t];
    return r.str();
}

GameOutcome parse_outcome_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    if (fields.size() != size_t(14 + 2 * kNumTileKinds))
        throw std::runtime_error("bad outcome row (field count " + std::to_string(fields.size()) +
                                 "): " + line);
    GameOutcome o;
    size_t i = 0;
    auto next_ll = [&]() { return std::stoll(fields[i++]); };
    o.order_id = uint64_t(next_ll());
    o.replicate_id = uint64_t(next_ll());
    o.p1_score = int(next_ll());
    o.p2_score = int(next_ll());
    o.diff = int(next_ll());
    o.winner = int(next_ll());
    o.p1_bingos = int(next_ll());
    o.p2_bingos = int(next_ll());
    o.tiles_available_p1 = int(next_ll());
    o.tiles_available_p2 = int(next_ll());
    o.audit_violations = int(next_ll());
    o.blank_positions[0] = int(next_ll());
    o.blank_positions[1] = int(next_ll());
    {
        std::istringstream ss(fields[i++]);
        std::string tok;
        while (std::getline(ss, tok, ';'))
            if (!tok.empty()) o.s_positions.push_back(std::stoi(tok));
    }
    for (int t = 0; t < kNumTileKinds; ++t) o.drawn_p1[t] = int(next_ll());
    for (int t = 0; t < kNumTileKinds; ++t) o.played_p1[t] = int(next_ll());
    return o;
}

void write_outcome_csv(const OutcomeTable& table, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for write: " + path);
    f << outcome_csv_header() << "\n";
    for (const auto& r : table.rows) f << outcome_csv_row(r) << "\n";
}

OutcomeTable read_outcome_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open outcome csv: " + path);
    std::string line;
    if (!std::getline(f, line) || line != kCsvVersionLine)
        throw std::runtime_error("unsupported or missing outcome csv version line in " + path);
    OutcomeTable table;
    bool header_seen = false;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (!header_seen) {
            header_seen = true;  // column header
            continue;
        }
        table.rows.push_back(parse_outcome_csv_row(line));
    }
    return table;
}

}  // namespace tilebench

/// @file xqrules_cli.cpp
/// @brief Command-line arbiter, corpus runner, perft and engine protocol loop.

#include <cstdint>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <xqrules/xqrules.hpp>

namespace {

using nlohmann::json;

// ── shared helpers ────────────────────────────────────────────────────────────

xqrules::Position position_from_arg(const std::string& fen) {
    return fen == "startpos" ? xqrules::Position::initial() : xqrules::Position::from_fen(fen);
}

const char* level_label(xqrules::ViolationLevel v) {
    switch (v) {
        case xqrules::ViolationLevel::PerpetualCheck: return "PerpetualCheck";
        case xqrules::ViolationLevel::PerpetualChase: return "PerpetualChase";
        case xqrules::ViolationLevel::PerpetualIdle: return "PerpetualIdle";
        default: return "Undecided";
    }
}

std::vector<std::string> square_names(const xqrules::SquareSet& set) {
    std::vector<std::string> out;
    for (const xqrules::Square s : set.squares()) out.push_back(xqrules::square_name(s));
    return out;
}

std::string joined(const std::vector<std::string>& parts) {
    std::string out;
    for (const std::string& p : parts) {
        if (!out.empty()) out += ' ';
        out += p;
    }
    return out;
}

// ── judge ─────────────────────────────────────────────────────────────────────

/// Full ruling named for the side that played the last move.
struct Ruling {
    xqrules::GameResult result = xqrules::GameResult::Undecided;
    xqrules::Color judged_side = xqrules::Color::Red;
    xqrules::PlayerJudgment ours;
    xqrules::PlayerJudgment opponent;
    bool repetition_found = false;
};

Ruling make_ruling(const xqrules::Game& g, int ntimes) {
    const xqrules::History& h = g.history();
    const int last = static_cast<int>(h.size()) - 1;
    Ruling r;
    r.judged_side = other(g.position().side_to_move());
    r.ours = judge_player_ex(h, last, ntimes);
    r.opponent = judge_player_ex(h, last - 1, ntimes);
    r.result = judge_ntimes(h, ntimes);
    if (r.result == xqrules::GameResult::Win)
        r.result = xqrules::GameResult::Loss;
    else if (r.result == xqrules::GameResult::Loss)
        r.result = xqrules::GameResult::Win;
    r.repetition_found = r.result != xqrules::GameResult::Undecided;
    return r;
}

void print_ruling_text(const Ruling& r) {
    const char* side = xqrules::color_name(r.judged_side);
    switch (r.result) {
        case xqrules::GameResult::Undecided: std::cout << "UNDECIDED\n"; return;
        case xqrules::GameResult::Draw:
            std::cout << "DRAW (" << level_label(r.ours.level) << " vs "
                      << level_label(r.opponent.level) << ")\n";
            break;
        case xqrules::GameResult::Win:
            std::cout << "WIN for " << side << " (" << level_label(r.ours.level) << " vs "
                      << level_label(r.opponent.level) << ")\n";
            break;
        case xqrules::GameResult::Loss:
            std::cout << "LOSS for " << side << " (" << level_label(r.ours.level) << " vs "
                      << level_label(r.opponent.level) << ")\n";
            break;
    }
    const char* opp = xqrules::color_name(other(r.judged_side));
    std::cout << "  " << side << ": " << level_label(r.ours.level);
    if (!r.ours.chased.empty()) std::cout << ", chasing " << joined(square_names(r.ours.chased));
    std::cout << "\n  " << opp << ": " << level_label(r.opponent.level);
    if (!r.opponent.chased.empty())
        std::cout << ", chasing " << joined(square_names(r.opponent.chased));
    std::cout << "\n";
}

json ruling_to_json(const Ruling& r, int ntimes) {
    json violations;
    violations[xqrules::color_name(r.judged_side)] = {
        {"level", level_label(r.ours.level)}, {"chased", square_names(r.ours.chased)}};
    violations[xqrules::color_name(other(r.judged_side))] = {
        {"level", level_label(r.opponent.level)}, {"chased", square_names(r.opponent.chased)}};
    return json{{"result", xqrules::result_name(r.result)},
                {"side", xqrules::color_name(r.judged_side)},
                {"violations", violations},
                {"repetition", r.repetition_found},
                {"ntimes", ntimes}};
}

int cmd_judge(const std::string& fen, const std::vector<std::string>& moves, int ntimes,
              bool as_json) {
    xqrules::Game g(position_from_arg(fen));
    for (const std::string& token : moves) g.play(xqrules::parse_move(g.position(), token));
    const Ruling r = make_ruling(g, ntimes);
    if (as_json)
        std::cout << ruling_to_json(r, ntimes).dump() << "\n";
    else
        print_ruling_text(r);
    return 0;
}

// ── corpus ────────────────────────────────────────────────────────────────────

int cmd_corpus(const std::string& path, bool as_json) {
    const std::vector<xqrules::CorpusCase> cases = xqrules::load_corpus(path);
    const xqrules::CorpusReport report = xqrules::run_corpus(cases);
    if (as_json) {
        json out{{"total", report.passed + report.failed},
                 {"passed", report.passed},
                 {"failed", report.failed},
                 {"cases", json::array()}};
        for (const xqrules::CaseOutcome& o : report.outcomes)
            out["cases"].push_back({{"id", o.id},
                                    {"expected", o.expected},
                                    {"actual", o.actual},
                                    {"passed", o.passed}});
        std::cout << out.dump() << "\n";
    } else {
        for (const xqrules::CaseOutcome& o : report.outcomes) {
            if (o.passed)
                std::cout << "ok   " << o.id << "\n";
            else
                std::cout << "FAIL " << o.id << ": expected " << o.expected << ", got "
                          << o.actual << "\n";
        }
        std::cout << report.passed << "/" << report.passed + report.failed
                  << (report.all_passed() ? " PASS" : " FAIL") << "\n";
    }
    return report.all_passed() ? 0 : 1;
}

// ── perft ─────────────────────────────────────────────────────────────────────

int cmd_perft(const std::string& fen, int depth, bool split, bool as_json) {
    xqrules::Position p = position_from_arg(fen);
    json out{{"fen", fen}, {"counts", json::array()}};
    if (depth < 1) {
        if (as_json)
            out["counts"].push_back(1);
        else
            std::cout << "perft(0) = 1\n";
    }
    for (int d = 1; d <= depth; ++d) {
        const std::uint64_t total = xqrules::perft(p, d);
        if (as_json)
            out["counts"].push_back(total);
        else
            std::cout << "perft(" << d << ") = " << total << "\n";
    }
    if (split && depth >= 1) {
        json splits;
        for (const xqrules::Move m : xqrules::generate_moves(p)) {
            const xqrules::Position::Undo u = p.make_move(m);
            const std::uint64_t n = depth == 1 ? 1 : xqrules::perft(p, depth - 1);
            p.unmake_move(u);
            if (as_json)
                splits[xqrules::move_name(m)] = n;
            else
                std::cout << xqrules::move_name(m) << ": " << n << "\n";
        }
        if (as_json) out["split"] = splits;
    }
    if (as_json) std::cout << out.dump() << "\n";
    return 0;
}

// ── engine protocol ───────────────────────────────────────────────────────────

class EngineSession {
   public:
    EngineSession(xqrules::SearchOptions options, xqrules::SearchLimits defaults)
        : options_(options), defaults_(defaults) {}

    int run() {
        std::string line;
        while (std::getline(std::cin, line))
            if (!dispatch(line)) break;
        stop_and_join();
        return 0;
    }

   private:
    xqrules::Game game_{xqrules::Position::initial()};
    xqrules::SearchOptions options_;
    xqrules::SearchLimits defaults_;
    std::unique_ptr<xqrules::Searcher> searcher_;
    std::thread worker_;

    void stop_and_join() {
        if (searcher_) searcher_->request_stop();
        if (worker_.joinable()) worker_.join();
    }

    bool dispatch(const std::string& line) {
        std::istringstream in(line);
        std::string cmd;
        if (!(in >> cmd)) return true;
        if (cmd == "quit") return false;
        if (cmd == "stop") {
            stop_and_join();
            return true;
        }
        if (cmd == "position") {
            stop_and_join();
            cmd_position(in);
            return true;
        }
        if (cmd == "go") {
            stop_and_join();
            cmd_go(in);
            return true;
        }
        std::cout << "error: unknown command" << std::endl;
        return true;
    }

    void cmd_position(std::istringstream& in) {
        std::string kind;
        in >> kind;
        try {
            std::string word;
            std::string fen;
            bool in_moves = false;
            std::vector<std::string> moves;
            if (kind == "startpos") {
                fen = "startpos";
            } else if (kind == "fen") {
                while (in >> word) {
                    if (word == "moves") {
                        in_moves = true;
                        break;
                    }
                    if (!fen.empty()) fen += ' ';
                    fen += word;
                }
            } else {
                std::cout << "error: unknown command" << std::endl;
                return;
            }
            while (in >> word) {
                if (!in_moves && word == "moves") {
                    in_moves = true;
                    continue;
                }
                moves.push_back(word);
            }
            xqrules::Game next(position_from_arg(fen));
            for (const std::string& token : moves)
                next.play(xqrules::parse_move(next.position(), token));
            game_ = std::move(next);
        } catch (const std::exception& e) {
            std::cout << "error: " << e.what() << std::endl;
        }
    }

    void cmd_go(std::istringstream& in) {
        xqrules::SearchLimits limits = defaults_;
        std::string key;
        while (in >> key) {
            if (key == "depth")
                in >> limits.depth;
            else if (key == "movetime")
                in >> limits.movetime_ms;
            else if (key == "nodes")
                in >> limits.nodes;
            else {
                std::cout << "error: unknown command" << std::endl;
                return;
            }
        }
        searcher_ = std::make_unique<xqrules::Searcher>(game_, options_);
        xqrules::Searcher* searcher = searcher_.get();
        worker_ = std::thread([searcher, limits] {
            const auto info = [](const xqrules::SearchResult& it) {
                std::cout << "info depth " << it.depth << " score " << it.score << " nodes "
                          << it.stats.nodes << " time " << it.time_ms;
                if (!it.pv.empty()) {
                    std::cout << " pv";
                    for (const xqrules::Move m : it.pv) std::cout << ' ' << xqrules::move_name(m);
                }
                std::cout << std::endl;
            };
            const xqrules::SearchResult r = searcher->search(limits, info);
            std::cout << "bestmove "
                      << (r.best == xqrules::kNullMove ? std::string("none")
                                                       : xqrules::move_name(r.best))
                      << std::endl;
        });
    }
};

int cmd_engine(int ntimes, int depth, std::int64_t movetime_ms) {
    xqrules::SearchOptions options;
    options.ntimes = ntimes;
    xqrules::SearchLimits defaults;
    defaults.depth = depth;
    defaults.movetime_ms = movetime_ms;
    EngineSession session(options, defaults);
    return session.run();
}

}  // namespace

// ── entry point ───────────────────────────────────────────────────────────────

int main(int argc, char** argv) {
    CLI::App app{"Xiangqi repetition arbiter and search engine"};
    app.require_subcommand(1);

    std::string fen;
    std::vector<std::string> moves;
    std::string corpus_path;
    int ntimes = 2;
    int engine_ntimes = 1;
    int depth = 4;
    int engine_depth = 6;
    std::int64_t movetime_ms = 0;
    bool as_json = false;
    bool split = false;

    CLI::App* judge = app.add_subcommand("judge", "Rule on a repetition after a move sequence");
    judge->add_option("fen", fen, "FEN string or 'startpos'")->required();
    judge->add_option("moves", moves, "moves in WXF or coordinate form");
    judge->add_option("--ntimes", ntimes, "hash recurrences required")->capture_default_str();
    judge->add_flag("--json", as_json, "machine-readable output");

    CLI::App* corpus = app.add_subcommand("corpus", "Run a JSONL corpus of judged cases");
    corpus->add_option("path", corpus_path, "corpus file")->required();
    corpus->add_flag("--json", as_json, "machine-readable output");

    CLI::App* perft = app.add_subcommand("perft", "Count legal move paths");
    perft->add_option("fen", fen, "FEN string or 'startpos'")->required();
    perft->add_option("depth", depth, "maximum depth")->required();
    perft->add_flag("--split", split, "per-move counts at the root");
    perft->add_flag("--json", as_json, "machine-readable output");

    CLI::App* engine = app.add_subcommand("engine", "Interactive search protocol on stdin");
    engine->add_option("--ntimes", engine_ntimes, "recurrences required in-tree")
        ->capture_default_str();
    engine->add_option("--depth", engine_depth, "default depth for 'go'")->capture_default_str();
    engine->add_option("--movetime", movetime_ms, "default time budget for 'go' (ms)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (judge->parsed()) return cmd_judge(fen, moves, ntimes, as_json);
        if (corpus->parsed()) return cmd_corpus(corpus_path, as_json);
        if (perft->parsed()) return cmd_perft(fen, depth, split, as_json);
        if (engine->parsed()) return cmd_engine(engine_ntimes, engine_depth, movetime_ms);
    } catch (const xqrules::IllegalMoveError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const xqrules::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

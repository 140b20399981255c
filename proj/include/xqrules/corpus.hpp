/// @file corpus.hpp
/// @brief JSONL regression corpus: load cases, replay them, report rulings.
///
/// Each line of a corpus file is one JSON object:
///
///   {"id": "...", "fen": "...", "moves": ["R2=1", ...],
///    "ntimes": 1, "expected": "loss", "perspective": "red"}
///
/// `moves` accepts WXF tokens and coordinate pairs interchangeably.
/// `ntimes` is optional (default 1).  `expected` is the ruling after the
/// last move, named from `perspective`'s point of view: win/loss swap when
/// that side is not the one to move at the end of the line.

#pragma once

#include <fstream>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <xqrules/history.hpp>
#include <xqrules/judge.hpp>
#include <xqrules/notation.hpp>
#include <xqrules/position.hpp>

namespace xqrules {

// ── case model ────────────────────────────────────────────────────────────────

struct CorpusCase {
    std::string id;
    std::string fen;
    std::vector<std::string> moves;
    int ntimes = 1;
    std::string expected;     ///< "win", "loss", "draw" or "undecided"
    std::string perspective;  ///< "red" or "black"
};

struct CaseOutcome {
    std::string id;
    std::string expected;
    std::string actual;
    bool passed = false;
};

struct CorpusReport {
    std::vector<CaseOutcome> outcomes;
    int passed = 0;
    int failed = 0;

    bool all_passed() const { return failed == 0 && !outcomes.empty(); }
};

// ── names ─────────────────────────────────────────────────────────────────────

inline const char* result_name(GameResult r) {
    switch (r) {
        case GameResult::Win: return "win";
        case GameResult::Loss: return "loss";
        case GameResult::Draw: return "draw";
        default: return "undecided";
    }
}

inline const char* color_name(Color c) { return c == Color::Red ? "red" : "black"; }

inline const char* level_name(ViolationLevel v) {
    switch (v) {
        case ViolationLevel::PerpetualCheck: return "perpetual check";
        case ViolationLevel::PerpetualChase: return "perpetual chase";
        case ViolationLevel::PerpetualIdle: return "idle repetition";
        default: return "undecided";
    }
}

// ── loading ───────────────────────────────────────────────────────────────────

inline CorpusCase parse_corpus_line(const std::string& line, int lineno) {
    const std::string where = "corpus line " + std::to_string(lineno) + ": ";
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(where + e.what());
    }
    CorpusCase c;
    try {
        c.id = j.at("id").get<std::string>();
        c.fen = j.at("fen").get<std::string>();
        c.moves = j.at("moves").get<std::vector<std::string>>();
        c.expected = j.at("expected").get<std::string>();
        c.perspective = j.at("perspective").get<std::string>();
        c.ntimes = j.value("ntimes", 1);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(where + e.what());
    }
    if (c.expected != "win" && c.expected != "loss" && c.expected != "draw" &&
        c.expected != "undecided")
        throw ParseError(where + "unknown expected value '" + c.expected + "'");
    if (c.perspective != "red" && c.perspective != "black")
        throw ParseError(where + "unknown perspective '" + c.perspective + "'");
    if (c.ntimes < 1) throw ParseError(where + "ntimes must be positive");
    return c;
}

inline std::vector<CorpusCase> load_corpus(std::istream& in) {
    std::vector<CorpusCase> cases;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        cases.push_back(parse_corpus_line(line, lineno));
    }
    if (cases.empty()) throw ParseError("corpus contains no cases");
    return cases;
}

inline std::vector<CorpusCase> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open corpus file: " + path);
    return load_corpus(in);
}

// ── running ───────────────────────────────────────────────────────────────────

/// Replays the case and names the final ruling from its perspective.
inline std::string run_case(const CorpusCase& c) {
    Game g(Position::from_fen(c.fen));
    for (const std::string& token : c.moves) g.play(parse_move(g.position(), token));
    GameResult r = judge_ntimes(g.history(), c.ntimes);
    if (c.perspective != color_name(g.position().side_to_move())) {
        if (r == GameResult::Win)
            r = GameResult::Loss;
        else if (r == GameResult::Loss)
            r = GameResult::Win;
    }
    return result_name(r);
}

inline CorpusReport run_corpus(const std::vector<CorpusCase>& cases) {
    CorpusReport report;
    for (const CorpusCase& c : cases) {
        CaseOutcome o;
        o.id = c.id;
        o.expected = c.expected;
        try {
            o.actual = run_case(c);
        } catch (const std::exception& e) {
            o.actual = std::string("error: ") + e.what();
        }
        o.passed = o.actual == o.expected;
        ++(o.passed ? report.passed : report.failed);
        report.outcomes.push_back(std::move(o));
    }
    return report;
}

}  // namespace xqrules

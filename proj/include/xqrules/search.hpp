/// @file search.hpp
/// Alpha-beta search over a Game, folding repetition rulings into the tree.
/// The repetition judge runs at every interior node through its pruning
/// shortcut, and threat lists for chase refinement are computed lazily: a
/// node that fails high on a capture never pays for them.

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <vector>

#include <xqrules/eval.hpp>
#include <xqrules/judge.hpp>
#include <xqrules/movegen.hpp>

namespace xqrules {

inline constexpr int kWinScore = 20000;
inline constexpr int kInfinity = 32000;
inline constexpr int kDrawScore = 0;

// ── Limits, options, results ──────────────────────────────────────────────────

struct SearchLimits {
    int depth = 6;
    std::int64_t movetime_ms = 0;  ///< 0 disables the clock.
    std::uint64_t nodes = 0;       ///< 0 disables the node cap.
};

struct SearchOptions {
    bool lazy_threats = true;  ///< Defer threat lists to the first quiet child.
    bool use_judge = true;     ///< Rule on repetitions inside the tree.
    int ntimes = 1;            ///< Recurrences required by the judge.
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t threat_lists_computed = 0;
    std::uint64_t threat_lists_skipped = 0;
};

struct SearchResult {
    Move best = kNullMove;
    int score = 0;
    int depth = 0;
    std::int64_t time_ms = 0;
    std::vector<Move> pv;
    SearchStats stats;
};

// ── Move ordering ─────────────────────────────────────────────────────────────

inline int mvv_lva_weight(PieceKind kind) {
    switch (kind) {
        case PieceKind::King: return 10000;
        case PieceKind::Rook: return 900;
        case PieceKind::Cannon: return 450;
        case PieceKind::Knight: return 400;
        case PieceKind::Advisor:
        case PieceKind::Elephant: return 200;
        case PieceKind::Pawn: return 100;
    }
    return 0;
}

inline int move_order_key(const Position& p, Move m) {
    if (!m.captured) return -1;
    return 1000 * mvv_lva_weight(*m.captured) - mvv_lva_weight(p.at(m.from)->kind);
}

inline void order_moves(const Position& p, std::vector<Move>& moves) {
    std::stable_sort(moves.begin(), moves.end(), [&p](Move a, Move b) {
        return move_order_key(p, a) > move_order_key(p, b);
    });
}

// ── Searcher ──────────────────────────────────────────────────────────────────

class Searcher {
   public:
    using InfoFn = std::function<void(const SearchResult&)>;

    explicit Searcher(Game& game, SearchOptions options = {})
        : game_(game), options_(options) {}

    void request_stop() { stop_.store(true, std::memory_order_relaxed); }

    SearchResult search(const SearchLimits& limits, const InfoFn& info = nullptr) {
        stats_ = {};
        stop_.store(false, std::memory_order_relaxed);
        aborted_ = false;
        node_cap_ = limits.nodes;
        const auto start = std::chrono::steady_clock::now();
        has_deadline_ = limits.movetime_ms > 0;
        if (has_deadline_) deadline_ = start + std::chrono::milliseconds(limits.movetime_ms);

        SearchResult result;
        std::vector<Move> root_moves = generate_moves(game_.position());
        if (root_moves.empty()) {
            result.score = -kWinScore;
            result.stats = stats_;
            return result;
        }
        order_moves(game_.position(), root_moves);
        result.best = root_moves.front();

        const int max_depth = limits.depth > 0 ? limits.depth : 64;
        std::vector<Move> pv;
        for (int depth = 1; depth <= max_depth; ++depth) {
            const int score = negamax(depth, 0, -kInfinity, kInfinity, pv);
            if (aborted_) {
                // Keep the best completed line but not the interrupted score.
                if (!pv.empty()) result.best = pv.front();
                break;
            }
            result.depth = depth;
            result.score = score;
            result.pv = pv;
            if (!pv.empty()) result.best = pv.front();
            result.time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
            result.stats = stats_;
            if (info) info(result);
            if (score >= kWinScore - 128 || score <= -kWinScore + 128) break;
        }
        result.time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        result.stats = stats_;
        return result;
    }

    const SearchStats& stats() const { return stats_; }

   private:
    bool out_of_time() {
        if (stop_.load(std::memory_order_relaxed)) return true;
        if (node_cap_ && stats_.nodes >= node_cap_) return true;
        return has_deadline_ && std::chrono::steady_clock::now() >= deadline_;
    }

    int negamax(int depth, int ply, int alpha, int beta, std::vector<Move>& pv) {
        pv.clear();
        ++stats_.nodes;
        if ((stats_.nodes & 1023) == 0 && out_of_time()) aborted_ = true;
        if (aborted_) return 0;

        const History& h = game_.history();
        if (options_.use_judge && ply > 0) {
            switch (judge_prune(h, kDrawScore, beta, options_.ntimes)) {
                case GameResult::Loss: return -kWinScore + ply;
                case GameResult::Win: return kWinScore - ply;
                case GameResult::Draw: return kDrawScore;
                case GameResult::Undecided: break;
            }
        }
        if (depth <= 0) return evaluate(game_.position());

        std::vector<Move> moves = generate_moves(game_.position());
        if (moves.empty()) return -kWinScore + ply;
        order_moves(game_.position(), moves);

        const bool prev_pending = h.back().pending;
        ThreatList threats;
        bool threats_ready = false;
        const auto ensure_threats = [&] {
            if (threats_ready) return;
            threats = get_chases(game_.position());
            threats_ready = true;
            ++stats_.threat_lists_computed;
        };
        if (prev_pending && !options_.lazy_threats) ensure_threats();

        int best = -kInfinity;
        std::vector<Move> child_pv;
        for (const Move m : moves) {
            const ThreatList* refine = nullptr;
            if (prev_pending && !is_irreversible(game_.position(), m)) {
                ensure_threats();
                refine = &threats;
            }
            game_.play(m, refine);
            const int score = -negamax(depth - 1, ply + 1, -beta, -alpha, child_pv);
            game_.undo();
            if (aborted_) return 0;
            if (score > best) {
                best = score;
                if (score > alpha) {
                    alpha = score;
                    pv.assign(1, m);
                    pv.insert(pv.end(), child_pv.begin(), child_pv.end());
                    if (alpha >= beta) break;
                }
            }
        }
        if (prev_pending && !threats_ready) ++stats_.threat_lists_skipped;
        return best;
    }

    Game& game_;
    SearchOptions options_;
    SearchStats stats_;
    std::atomic<bool> stop_{false};
    bool aborted_ = false;
    bool has_deadline_ = false;
    std::chrono::steady_clock::time_point deadline_;
    std::uint64_t node_cap_ = 0;
};

}  // namespace xqrules

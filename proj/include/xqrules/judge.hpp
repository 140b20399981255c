/// @file judge.hpp
/// Repetition rulings: per-player violation levels over repetition windows
/// and their combination into game results.

#pragma once

#include <algorithm>
#include <cstdint>

#include <xqrules/history.hpp>

namespace xqrules {

/// Violation severity of one player across a repetition window, ordered so
/// that the bigger offender loses.
enum class ViolationLevel : int {
    Undecided = -1,
    PerpetualIdle = 0,
    PerpetualChase = 1,
    PerpetualCheck = 2,
};

/// Ruling relative to the side to move at the last history record.
enum class GameResult { Undecided, Win, Loss, Draw };

/// Carries a chased-square set across an intervening move by the chased
/// side: a victim that moved is tracked to its new square.
inline SquareSet update_subset(SquareSet s, Move intervening) {
    if (s.contains(intervening.from)) {
        s.erase(intervening.from);
        s.insert(intervening.to);
    }
    return s;
}

using ChasePredicate = bool (*)(const SquareSet&);

/// A perpetual chase must hound a single victim; persistent multi-victim
/// pressure is treated as idle repetition.
inline bool single_victim_chase(const SquareSet& s) { return s.size() == 1; }

struct PlayerJudgment {
    ViolationLevel level = ViolationLevel::Undecided;
    SquareSet chased;
};

/// Scans the moves of the player who produced h[index], walking same-player
/// records two plies apart until the position hash recurs `ntimes` times
/// (at least once).  Statuses are ORed together; a pure chase additionally
/// maintains the intersection of chased squares, carried across the
/// opponent's intervening moves.  Any Cancel fences the window.
inline PlayerJudgment judge_player_ex(const History& h, int index, int ntimes = 1,
                                      ChasePredicate pred = single_victim_chase) {
    if (index < 0 || h[index].status == kCancel) return {};
    const std::uint64_t hash = h[index].hash;
    int remaining = std::max(ntimes, 1);
    unsigned status = 0;
    bool repeating = false;
    bool tracking = false;
    SquareSet set;
    for (int j = index - 2; j >= 0; j -= 2) {
        if (h[j + 1].status == kCancel || h[j].status == kCancel) break;
        status |= h[j].status;
        if (status == kChase) {
            if (!tracking) {
                tracking = true;
                set = h[j].chased;
            } else {
                set = update_subset(set, h[j + 1].move);
                set &= h[j].chased;
                if (set.empty()) status = kIdle;
            }
        }
        if (h[j].hash == hash && --remaining == 0) {
            repeating = true;
            break;
        }
    }
    if (!repeating) return {};
    if (status == kCheck) return {ViolationLevel::PerpetualCheck, {}};
    if (status == kChase && pred(set)) return {ViolationLevel::PerpetualChase, set};
    return {ViolationLevel::PerpetualIdle, set};
}

inline ViolationLevel judge_player(const History& h, int index, int ntimes = 1,
                                   ChasePredicate pred = single_victim_chase) {
    return judge_player_ex(h, index, ntimes, pred).level;
}

/// Ruling for the side to move at the last record: both players' windows
/// must close before anything is decided, then the worse offender loses.
inline GameResult judge_ntimes(const History& h, int ntimes = 1,
                               ChasePredicate pred = single_victim_chase) {
    const int last = static_cast<int>(h.size()) - 1;
    const ViolationLevel opponent = judge_player(h, last, ntimes, pred);
    if (opponent == ViolationLevel::Undecided) return GameResult::Undecided;
    const ViolationLevel ours = judge_player(h, last - 1, ntimes, pred);
    if (ours == ViolationLevel::Undecided) return GameResult::Undecided;
    if (ours == opponent) return GameResult::Draw;
    return ours > opponent ? GameResult::Loss : GameResult::Win;
}

/// First recurrence of h[index]'s position among the same player's earlier
/// records, fenced by Cancel exactly like the judge scan.
inline bool is_repetition(const History& h, int index) {
    if (index < 0 || h[index].status == kCancel) return false;
    const std::uint64_t hash = h[index].hash;
    for (int j = index - 2; j >= 0; j -= 2) {
        if (h[j + 1].status == kCancel || h[j].status == kCancel) break;
        if (h[j].hash == hash) return true;
    }
    return false;
}

/// Pruning form of the ruling for search: when our own window is merely
/// idle and a draw already reaches beta, the first repetition is scored as
/// a draw without judging the opponent.  Equivalent to judge_ntimes
/// whenever draw_score < beta; the shortcut may upgrade a Win to Draw but
/// never masks a Loss.
inline GameResult judge_prune(const History& h, int draw_score, int beta, int ntimes = 1,
                              ChasePredicate pred = single_victim_chase) {
    const int last = static_cast<int>(h.size()) - 1;
    if (h[last].status == kCancel) return GameResult::Undecided;
    const ViolationLevel ours = judge_player(h, last - 1, ntimes, pred);
    if (ours == ViolationLevel::Undecided) return GameResult::Undecided;
    if (ours == ViolationLevel::PerpetualIdle && draw_score >= beta)
        return is_repetition(h, last) ? GameResult::Draw : GameResult::Undecided;
    const ViolationLevel opponent = judge_player(h, last, ntimes, pred);
    if (opponent == ViolationLevel::Undecided) return GameResult::Undecided;
    if (ours == opponent) return GameResult::Draw;
    return ours > opponent ? GameResult::Loss : GameResult::Win;
}

}  // namespace xqrules

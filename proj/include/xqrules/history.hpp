/// @file history.hpp
/// Game history records and the driver that keeps them classified.

#pragma once

#include <cstdint>
#include <vector>

#include <xqrules/chase.hpp>
#include <xqrules/movegen.hpp>
#include <xqrules/position.hpp>

namespace xqrules {

/// One record per reached position.  Record k describes the position after
/// move k and carries the status of move k itself; record 0 anchors the
/// starting position with a null move.
struct HistoryRecord {
    std::uint64_t hash = 0;
    Move move = kNullMove;
    unsigned status = kIdle;
    bool pending = false;  // provisional Idle, refined when the reply is played
    SquareSet chased;
};

using History = std::vector<HistoryRecord>;

/// Position plus classified history.  Check and Cancel are final the moment
/// a move is pushed; anything else starts as a pending Idle that the next
/// quiet move refines through reply classification.  Undoing simply pops the
/// record: a sibling move re-finalizes the same pending record, so search
/// trees can share the prefix.
class Game {
   public:
    explicit Game(Position p) : pos_(std::move(p)) {
        HistoryRecord r;
        r.hash = pos_.hash();
        if (pos_.in_check(pos_.side_to_move()))
            r.status = kCheck;
        else
            r.pending = true;
        hist_.push_back(r);
    }

    const Position& position() const { return pos_; }
    Position& position() { return pos_; }
    const History& history() const { return hist_; }

    /// Plays a move.  `threats` are the standing chases of the current
    /// position (as computed by get_chases); pass nullptr to have them
    /// computed on demand when the previous record needs refining.
    void play(Move m, const ThreatList* threats = nullptr) {
        const bool irr = is_irreversible(pos_, m);
        const bool refine = hist_.back().pending && !irr;
        ThreatList local;
        if (refine && !threats) {
            local = get_chases(pos_);
            threats = &local;
        }
        undos_.push_back(pos_.make_move(m));
        if (refine) {
            const ReplyClass c = classify_reply(pos_, /*prior_check=*/false, m, *threats);
            hist_.back().status = c.status;
            hist_.back().chased = c.chased;
        }
        HistoryRecord r;
        r.hash = pos_.hash();
        r.move = m;
        if (irr)
            r.status = kCancel;
        else if (pos_.in_check(pos_.side_to_move()))
            r.status = kCheck;
        else
            r.pending = true;
        hist_.push_back(r);
    }

    void undo() {
        hist_.pop_back();
        pos_.unmake_move(undos_.back());
        undos_.pop_back();
    }

    int last_index() const { return static_cast<int>(hist_.size()) - 1; }

   private:
    Position pos_;
    History hist_;
    std::vector<Position::Undo> undos_;
};

}  // namespace xqrules

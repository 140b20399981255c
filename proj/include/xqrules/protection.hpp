/// @file protection.hpp
/// Recapture-based protection: piece value classes, pre-capture occupancy
/// snapshots, defender enumeration and the protection / exchange tests.

#pragma once

#include <bitset>
#include <cassert>
#include <vector>

#include <xqrules/movegen.hpp>
#include <xqrules/position.hpp>

namespace xqrules {

/// Rooks outrank knights and cannons, which outrank the rest.  Kings are
/// outside the scale; callers never pass them.
constexpr int value_class(PieceKind k) {
    switch (k) {
        case PieceKind::Rook: return 3;
        case PieceKind::Knight:
        case PieceKind::Cannon: return 2;
        case PieceKind::Advisor:
        case PieceKind::Elephant:
        case PieceKind::Pawn: return 1;
        case PieceKind::King: break;
    }
    assert(!"value class is undefined for kings");
    return 0;
}

/// Occupancy as it stood before a hypothetical capture; ray defenders count
/// their screens against this, not against the board after the capture.
struct OccupancySnapshot {
    std::bitset<kSquares> occupied;

    static OccupancySnapshot of(const Position& p) {
        OccupancySnapshot s;
        for (Square sq = 0; sq < kSquares; ++sq) s.occupied.set(sq, p.at(sq).has_value());
        return s;
    }

    bool test(Square s) const { return occupied.test(s); }

    int count_between(Square a, Square b) const {
        const int df = file_of(b) - file_of(a);
        const int dr = rank_of(b) - rank_of(a);
        const int sf = (df > 0) - (df < 0);
        const int sr = (dr > 0) - (dr < 0);
        int n = 0;
        for (Square s = make_square(file_of(a) + sf, rank_of(a) + sr); s != b;
             s = make_square(file_of(s) + sf, rank_of(s) + sr))
            if (occupied.test(s)) ++n;
        return n;
    }
};

/// All pieces of the captured side that bear on `target` after the capture
/// was applied to `after`.  Rook and cannon reach is measured on the
/// snapshot; every other piece is probed on the resulting board.
inline std::vector<Move> get_defenders(const Position& after, Square target,
                                       const OccupancySnapshot& snap) {
    std::vector<Move> out;
    const Cell& occupant = after.at(target);
    const Color side = other(occupant->color);
    static constexpr PieceKind kOrder[] = {PieceKind::Advisor, PieceKind::Elephant,
                                           PieceKind::Pawn,    PieceKind::Knight,
                                           PieceKind::Cannon,  PieceKind::Rook,
                                           PieceKind::King};
    for (const PieceKind kind : kOrder) {
        for (Square s = 0; s < kSquares; ++s) {
            const Cell& c = after.at(s);
            if (!c || c->color != side || c->kind != kind) continue;
            bool reaches = false;
            if (kind == PieceKind::Cannon || kind == PieceKind::Rook) {
                const bool aligned =
                    file_of(s) == file_of(target) || rank_of(s) == rank_of(target);
                reaches = aligned && s != target &&
                          snap.count_between(s, target) == (kind == PieceKind::Cannon ? 1 : 0);
            } else {
                reaches = after.attacks(s, target);
            }
            if (reaches) out.push_back(Move{s, target, occupant->kind});
        }
    }
    return out;
}

inline bool has_legal_recapture(Position& p, Move capture) {
    const OccupancySnapshot snap = OccupancySnapshot::of(p);
    const Color defender = p.at(capture.to)->color;
    const Position::Undo u = p.make_move(capture);
    bool found = false;
    for (const Move& d : get_defenders(p, capture.to, snap)) {
        const Position::Undo du = p.make_move(d);
        const bool safe = !p.in_check(defender);
        p.unmake_move(du);
        if (safe) {
            found = true;
            break;
        }
    }
    p.unmake_move(u);
    return found;
}

/// Whether the victim of a pseudo-legal capture is protected: capturing into
/// a bigger value class is never protected, otherwise some defender must
/// have a legal recapture on the square.
inline bool is_protected(Position& p, Move capture) {
    assert(p.at(capture.from) && p.at(capture.to));
    if (value_class(p.at(capture.to)->kind) > value_class(p.at(capture.from)->kind))
        return false;
    return has_legal_recapture(p, capture);
}

/// An exchange trades equal value classes with a legal recapture waiting.
inline bool is_exchange_move(Position& p, Move capture) {
    if (value_class(p.at(capture.to)->kind) != value_class(p.at(capture.from)->kind))
        return false;
    return has_legal_recapture(p, capture);
}

}  // namespace xqrules

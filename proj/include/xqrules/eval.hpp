/// @file eval.hpp
/// Static evaluation: material plus a small centralization bonus, scored
/// from the side to move's perspective.

#pragma once

#include <cstdlib>

#include <xqrules/position.hpp>

namespace xqrules {

// ── Piece values ──────────────────────────────────────────────────────────────

inline int piece_value(Piece piece, Square s) {
    int value = 0;
    switch (piece.kind) {
        case PieceKind::King: return 0;
        case PieceKind::Rook: value = 900; break;
        case PieceKind::Cannon: value = 450; break;
        case PieceKind::Knight: value = 400; break;
        case PieceKind::Advisor:
        case PieceKind::Elephant: return 200;
        case PieceKind::Pawn: value = crossed_river(s, piece.color) ? 200 : 100; break;
    }
    return value + 2 * (4 - std::abs(file_of(s) - 4));
}

// ── Evaluation ────────────────────────────────────────────────────────────────

inline int evaluate(const Position& p) {
    int score = 0;
    for (Square s = 0; s < kSquares; ++s) {
        const Cell& c = p.at(s);
        if (!c) continue;
        const int value = piece_value(*c, s);
        score += c->color == p.side_to_move() ? value : -value;
    }
    return score;
}

}  // namespace xqrules

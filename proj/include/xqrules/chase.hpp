/// @file chase.hpp
/// Move classification building blocks: capture threats, chase candidates,
/// reply classification and reversibility.

#pragma once

#include <bitset>
#include <vector>

#include <xqrules/movegen.hpp>
#include <xqrules/position.hpp>
#include <xqrules/protection.hpp>

namespace xqrules {

// ── Status flags ──────────────────────────────────────────────────────────────

/// Bit flags classifying a single move in game history.  Idle, Chase and
/// Check may accumulate across a repetition window; Cancel marks an
/// irreversible move and fences any window that would cross it.
enum Status : unsigned { kIdle = 1u, kChase = 2u, kCheck = 4u, kCancel = 8u };

/// Set of squares holding currently chased pieces.
struct SquareSet {
    std::bitset<kSquares> bits;

    bool contains(Square s) const { return s >= 0 && s < kSquares && bits.test(s); }
    void insert(Square s) {
        if (s >= 0 && s < kSquares) bits.set(s);
    }
    void erase(Square s) {
        if (s >= 0 && s < kSquares) bits.reset(s);
    }
    std::size_t size() const { return bits.count(); }
    bool empty() const { return bits.none(); }

    SquareSet& operator&=(const SquareSet& o) {
        bits &= o.bits;
        return *this;
    }

    std::vector<Square> squares() const {
        std::vector<Square> out;
        for (Square s = 0; s < kSquares; ++s)
            if (bits.test(s)) out.push_back(s);
        return out;
    }

    friend bool operator==(const SquareSet&, const SquareSet&) = default;
};

using ThreatList = std::vector<Move>;

// ── Threat enumeration ────────────────────────────────────────────────────────

/// Capture threats by the side to move.  Only knights, rooks, cannons,
/// advisors and elephants count as attackers, and kings are never victims.
inline std::vector<Move> gen_captures(const Position& p) {
    static constexpr PieceKind kAttackers[] = {PieceKind::Knight, PieceKind::Rook,
                                               PieceKind::Cannon, PieceKind::Advisor,
                                               PieceKind::Elephant};
    std::vector<Move> out;
    std::vector<Move> scratch;
    for (const PieceKind kind : kAttackers) {
        for (Square s = 0; s < kSquares; ++s) {
            const Cell& c = p.at(s);
            if (!c || c->color != p.side_to_move() || c->kind != kind) continue;
            scratch.clear();
            append_piece_moves(p, s, scratch, /*captures_only=*/true);
            for (const Move& m : scratch)
                if (*m.captured != PieceKind::King) out.push_back(m);
        }
    }
    return out;
}

/// Chase threats standing after a move: free captures by the side that just
/// moved, excluding exchanges, protected victims and pawns still on their
/// own half.
inline ThreatList get_chases(Position& p) {
    p.flip_side_to_move();
    ThreatList chases;
    for (const Move& m : gen_captures(p)) {
        const Cell& victim = p.at(m.to);
        if (victim->kind == PieceKind::Pawn && on_own_half(m.to, victim->color)) continue;
        if (!is_legal(p, m)) continue;
        if (is_exchange_move(p, m)) continue;
        if (is_protected(p, m)) continue;
        chases.push_back(m);
    }
    p.flip_side_to_move();
    return chases;
}

// ── Reply classification ──────────────────────────────────────────────────────

struct ReplyClass {
    unsigned status = kIdle;
    SquareSet chased;
};

/// Classifies the quiet reply that produced `p_after` against the threats
/// standing before it.  A reply made while in check is Check.  Otherwise it
/// is a chase of every threat it answered — by moving the victim, blocking
/// or unpinning the capture, or newly protecting the victim — and Idle when
/// every standing threat was simply ignored.
inline ReplyClass classify_reply(Position& p_after, bool prior_check, Move reply,
                                 const ThreatList& threats) {
    if (prior_check) return {kCheck, {}};
    SquareSet chased;
    for (Move t : threats) {
        const bool moved = t.to == reply.from;
        if (moved) t.to = reply.to;
        bool responded = moved;
        if (!responded)
            responded = !p_after.attacks(t.from, t.to) || !is_legal(p_after, t) ||
                        is_protected(p_after, t);
        if (responded) chased.insert(t.to);
    }
    if (chased.empty()) return {kIdle, {}};
    return {kChase, chased};
}

// ── Reversibility ─────────────────────────────────────────────────────────────

/// Captures and forward pawn pushes can never be taken back; a sideways pawn
/// traverse can.
inline bool is_irreversible(const Position& p, Move m) {
    if (p.at(m.to)) return true;
    return p.at(m.from)->kind == PieceKind::Pawn && rank_of(m.to) != rank_of(m.from);
}

}  // namespace xqrules

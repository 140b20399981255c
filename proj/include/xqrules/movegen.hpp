/// @file movegen.hpp
/// Pseudo-legal and legal move generation, legality testing and perft.

#pragma once

#include <cstdint>
#include <vector>

#include <xqrules/position.hpp>

namespace xqrules {

namespace movegen_detail {

inline void add_target(const Position& p, Square from, Square to, std::vector<Move>& out,
                       bool captures_only) {
    const Cell& target = p.at(to);
    if (target && target->color == p.at(from)->color) return;
    if (captures_only && !target) return;
    out.push_back(Move{from, to, target ? std::optional<PieceKind>(target->kind) : std::nullopt});
}

inline void add_if_attacked(const Position& p, Square from, int file, int rank,
                            std::vector<Move>& out, bool captures_only) {
    if (!valid_coords(file, rank)) return;
    const Square to = make_square(file, rank);
    if (p.attacks(from, to)) add_target(p, from, to, out, captures_only);
}

}  // namespace movegen_detail

/// Appends the pseudo-legal moves of the piece on `from`.  Includes the
/// flying-king capture of the opposing king along an open file.
inline void append_piece_moves(const Position& p, Square from, std::vector<Move>& out,
                               bool captures_only = false) {
    using movegen_detail::add_if_attacked;
    using movegen_detail::add_target;
    const Piece pc = *p.at(from);
    const int f = file_of(from), r = rank_of(from);
    switch (pc.kind) {
        case PieceKind::King: {
            static constexpr int kSteps[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            for (const auto& d : kSteps) add_if_attacked(p, from, f + d[0], r + d[1], out, captures_only);
            for (const int dr : {1, -1}) {
                for (int rr = r + dr; valid_coords(f, rr); rr += dr) {
                    const Cell& c = p.at(make_square(f, rr));
                    if (!c) continue;
                    if (c->color != pc.color && c->kind == PieceKind::King)
                        add_target(p, from, make_square(f, rr), out, captures_only);
                    break;
                }
            }
            return;
        }
        case PieceKind::Advisor: {
            static constexpr int kSteps[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
            for (const auto& d : kSteps) add_if_attacked(p, from, f + d[0], r + d[1], out, captures_only);
            return;
        }
        case PieceKind::Elephant: {
            static constexpr int kSteps[4][2] = {{2, 2}, {2, -2}, {-2, 2}, {-2, -2}};
            for (const auto& d : kSteps) add_if_attacked(p, from, f + d[0], r + d[1], out, captures_only);
            return;
        }
        case PieceKind::Knight: {
            static constexpr int kSteps[8][2] = {{1, 2},   {2, 1},   {2, -1}, {1, -2},
                                                 {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
            for (const auto& d : kSteps) add_if_attacked(p, from, f + d[0], r + d[1], out, captures_only);
            return;
        }
        case PieceKind::Rook: {
            static constexpr int kDirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            for (const auto& d : kDirs) {
                for (int ff = f + d[0], rr = r + d[1]; valid_coords(ff, rr);
                     ff += d[0], rr += d[1]) {
                    const Square to = make_square(ff, rr);
                    if (p.at(to)) {
                        add_target(p, from, to, out, captures_only);
                        break;
                    }
                    if (!captures_only) out.push_back(Move{from, to, std::nullopt});
                }
            }
            return;
        }
        case PieceKind::Cannon: {
            static constexpr int kDirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            for (const auto& d : kDirs) {
                bool screened = false;
                for (int ff = f + d[0], rr = r + d[1]; valid_coords(ff, rr);
                     ff += d[0], rr += d[1]) {
                    const Square to = make_square(ff, rr);
                    if (!p.at(to)) {
                        if (!screened && !captures_only) out.push_back(Move{from, to, std::nullopt});
                        continue;
                    }
                    if (!screened) {
                        screened = true;
                        continue;
                    }
                    add_target(p, from, to, out, captures_only);
                    break;
                }
            }
            return;
        }
        case PieceKind::Pawn: {
            const int fwd = pc.color == Color::Red ? 1 : -1;
            add_if_attacked(p, from, f, r + fwd, out, captures_only);
            if (crossed_river(from, pc.color)) {
                add_if_attacked(p, from, f + 1, r, out, captures_only);
                add_if_attacked(p, from, f - 1, r, out, captures_only);
            }
            return;
        }
    }
}

inline std::vector<Move> generate_pseudolegal(const Position& p) {
    std::vector<Move> out;
    out.reserve(64);
    for (Square s = 0; s < kSquares; ++s)
        if (p.at(s) && p.at(s)->color == p.side_to_move()) append_piece_moves(p, s, out);
    return out;
}

/// A move is legal when the mover's own king is not attacked afterwards.
/// The mover is taken from the board, not the side to move, so threats by
/// the side that just moved can be tested in place.
inline bool is_legal(Position& p, Move m) {
    const Color mover = p.at(m.from)->color;
    const Position::Undo u = p.make_move(m);
    const bool ok = !p.in_check(mover);
    p.unmake_move(u);
    return ok;
}

inline std::vector<Move> generate_moves(Position& p) {
    std::vector<Move> out = generate_pseudolegal(p);
    std::erase_if(out, [&](const Move& m) { return !is_legal(p, m); });
    return out;
}

inline std::uint64_t perft(Position& p, int depth) {
    if (depth <= 0) return 1;
    std::uint64_t total = 0;
    for (const Move& m : generate_pseudolegal(p)) {
        const Color mover = p.at(m.from)->color;
        const Position::Undo u = p.make_move(m);
        if (!p.in_check(mover)) total += depth == 1 ? 1 : perft(p, depth - 1);
        p.unmake_move(u);
    }
    return total;
}

}  // namespace xqrules

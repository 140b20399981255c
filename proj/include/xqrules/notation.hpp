/// @file notation.hpp
/// Move notation: coordinate pairs ("h2e2") and WXF tokens ("C2=5",
/// "N8+7", "+R+1"). Files are numbered 1-9 from each player's own right,
/// straight movers give rank counts or a destination file after '=', and
/// diagonal movers always name their destination file.
///
/// Tandem convention: when exactly two like pieces share a file, '+'
/// or '-' in place of the file digit picks the front or rear one, as a
/// prefix ("+R+1") or infix ("R++1").  Stacks of three or more (tandem
/// pawns included) are not given WXF names; the formatter falls back to
/// coordinate pairs, which the parser always accepts.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <xqrules/movegen.hpp>
#include <xqrules/position.hpp>

namespace xqrules {

/// A syntactically valid token that names no unique legal move.
class IllegalMoveError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

namespace notation_detail {

inline bool is_file_char(char c) { return c >= 'a' && c <= 'i'; }

inline bool is_op_char(char c) { return c == '+' || c == '-' || c == '='; }

inline PieceKind kind_from_letter(char c) {
    switch (c) {
        case 'k': return PieceKind::King;
        case 'a': return PieceKind::Advisor;
        case 'e':
        case 'b': return PieceKind::Elephant;
        case 'n':
        case 'h': return PieceKind::Knight;
        case 'r': return PieceKind::Rook;
        case 'c': return PieceKind::Cannon;
        case 'p': return PieceKind::Pawn;
        default: throw ParseError("unknown piece letter in move token");
    }
}

inline char letter_from_kind(PieceKind kind) {
    switch (kind) {
        case PieceKind::King: return 'K';
        case PieceKind::Advisor: return 'A';
        case PieceKind::Elephant: return 'E';
        case PieceKind::Knight: return 'N';
        case PieceKind::Rook: return 'R';
        case PieceKind::Cannon: return 'C';
        case PieceKind::Pawn: return 'P';
    }
    return '?';
}

/// Player file digit (1-9) to internal file, and back.
inline int file_from_digit(Color c, int digit) { return c == Color::Red ? 9 - digit : digit - 1; }

inline int digit_from_file(Color c, int file) { return c == Color::Red ? 9 - file : file + 1; }

inline bool straight_mover(PieceKind kind) {
    return kind == PieceKind::King || kind == PieceKind::Rook || kind == PieceKind::Cannon ||
           kind == PieceKind::Pawn;
}

inline std::vector<Square> pieces_of(const Position& p, Color c, PieceKind kind) {
    std::vector<Square> out;
    for (Square s = 0; s < kSquares; ++s) {
        const Cell& cell = p.at(s);
        if (cell && cell->color == c && cell->kind == kind) out.push_back(s);
    }
    return out;
}

inline std::string clean_token(std::string_view token) {
    std::string t;
    for (const char c : token)
        if (!std::isspace(static_cast<unsigned char>(c)))
            t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return t;
}

}  // namespace notation_detail

// ── Parsing ───────────────────────────────────────────────────────────────────

inline Move parse_move(Position& p, std::string_view token) {
    using namespace notation_detail;
    const std::string t = clean_token(token);
    if (t.size() != 4) throw ParseError("move token must be four characters: '" + t + "'");

    std::vector<Move> legal = generate_moves(p);

    // Coordinate form: from-square then to-square.
    if (is_file_char(t[0]) && std::isdigit(static_cast<unsigned char>(t[1])) && is_file_char(t[2]) &&
        std::isdigit(static_cast<unsigned char>(t[3]))) {
        const Square from = make_square(t[0] - 'a', t[1] - '0');
        const Square to = make_square(t[2] - 'a', t[3] - '0');
        for (const Move m : legal)
            if (m.from == from && m.to == to) return m;
        throw IllegalMoveError("not a legal move: '" + t + "'");
    }

    // WXF form: optional tandem selector, piece letter, operator, argument.
    char selector = 0;
    char letter = 0;
    char file_digit = 0;
    char op = 0;
    char arg = 0;
    if (t[0] == '+' || t[0] == '-') {
        selector = t[0];
        letter = t[1];
        op = t[2];
        arg = t[3];
    } else {
        letter = t[0];
        if (std::isdigit(static_cast<unsigned char>(t[1])))
            file_digit = t[1];
        else if (t[1] == '+' || t[1] == '-')
            selector = t[1];
        else
            throw ParseError("expected file digit or tandem selector: '" + t + "'");
        op = t[2];
        arg = t[3];
    }
    if (!is_op_char(op)) throw ParseError("expected '+', '-' or '=': '" + t + "'");
    if (arg < '1' || arg > '9') throw ParseError("expected argument digit 1-9: '" + t + "'");
    const PieceKind kind = kind_from_letter(letter);
    if (!straight_mover(kind) && op == '=')
        throw ParseError("'=' applies to straight movers only: '" + t + "'");

    const Color us = p.side_to_move();
    const int dir = us == Color::Red ? 1 : -1;
    const std::vector<Square> all = pieces_of(p, us, kind);

    std::vector<Square> candidates;
    if (file_digit) {
        const int file = file_from_digit(us, file_digit - '0');
        for (const Square s : all)
            if (file_of(s) == file) candidates.push_back(s);
        if (candidates.empty())
            throw IllegalMoveError("no such piece on that file: '" + t + "'");
    } else {
        // Tandem selector: files holding exactly two pieces of the kind.
        for (int file = 0; file < kFiles; ++file) {
            std::vector<Square> column;
            for (const Square s : all)
                if (file_of(s) == file) column.push_back(s);
            if (column.size() != 2) continue;
            const Square front = dir > 0 ? column.back() : column.front();
            const Square rear = dir > 0 ? column.front() : column.back();
            candidates.push_back(selector == '+' ? front : rear);
        }
        if (candidates.empty())
            throw IllegalMoveError("no doubled pieces for tandem move: '" + t + "'");
    }

    std::vector<Move> matches;
    for (const Square from : candidates) {
        int to_file = file_of(from);
        int to_rank = rank_of(from);
        if (op == '=') {
            to_file = file_from_digit(us, arg - '0');
        } else {
            const int sign = op == '+' ? dir : -dir;
            if (straight_mover(kind)) {
                to_rank += sign * (arg - '0');
            } else {
                to_file = file_from_digit(us, arg - '0');
                const int df = std::abs(to_file - file_of(from));
                int dr = 0;
                if (kind == PieceKind::Advisor && df == 1) dr = 1;
                if (kind == PieceKind::Elephant && df == 2) dr = 2;
                if (kind == PieceKind::Knight && (df == 1 || df == 2)) dr = 3 - df;
                if (dr == 0) continue;
                to_rank += sign * dr;
            }
        }
        if (!valid_coords(to_file, to_rank)) continue;
        const Square to = make_square(to_file, to_rank);
        for (const Move m : legal)
            if (m.from == from && m.to == to) matches.push_back(m);
    }
    if (matches.empty()) throw IllegalMoveError("not a legal move: '" + t + "'");
    if (matches.size() > 1) throw IllegalMoveError("ambiguous move token: '" + t + "'");
    return matches.front();
}

// ── Formatting ────────────────────────────────────────────────────────────────

inline std::string format_move_wxf(Position& p, Move m) {
    using namespace notation_detail;
    const Cell& cell = p.at(m.from);
    if (!cell) throw IllegalMoveError("no piece on the from-square");
    const Piece piece = *cell;
    const int dir = piece.color == Color::Red ? 1 : -1;

    std::vector<int> column_ranks;
    for (Square s = 0; s < kSquares; ++s) {
        const Cell& c = p.at(s);
        if (c && c->color == piece.color && c->kind == piece.kind &&
            file_of(s) == file_of(m.from))
            column_ranks.push_back(rank_of(s));
    }

    std::string out;
    if (column_ranks.size() == 1) {
        out.push_back(letter_from_kind(piece.kind));
        out.push_back(static_cast<char>('0' + digit_from_file(piece.color, file_of(m.from))));
    } else if (column_ranks.size() == 2) {
        const int front = dir > 0 ? std::max(column_ranks[0], column_ranks[1])
                                  : std::min(column_ranks[0], column_ranks[1]);
        out.push_back(rank_of(m.from) == front ? '+' : '-');
        out.push_back(letter_from_kind(piece.kind));
    } else {
        return move_name(m);  // Three or more stacked pieces: coordinates.
    }

    const int drank = (rank_of(m.to) - rank_of(m.from)) * dir;
    if (file_of(m.to) == file_of(m.from)) {
        out.push_back(drank > 0 ? '+' : '-');
        out.push_back(static_cast<char>('0' + std::abs(drank)));
    } else if (straight_mover(piece.kind)) {
        out.push_back('=');
        out.push_back(static_cast<char>('0' + digit_from_file(piece.color, file_of(m.to))));
    } else {
        out.push_back(drank > 0 ? '+' : '-');
        out.push_back(static_cast<char>('0' + digit_from_file(piece.color, file_of(m.to))));
    }
    // A token that fails to name this exact move (doubled pairs on several
    // files can collide) degrades to coordinates.
    try {
        if (parse_move(p, out) == m) return out;
    } catch (const std::exception&) {
    }
    return move_name(m);
}

}  // namespace xqrules

/// @file position.hpp
/// Board state for Xiangqi: geometry helpers, pieces, Zobrist hashing,
/// FEN I/O and incremental make/unmake.

#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace xqrules {

// ── Geometry ──────────────────────────────────────────────────────────────────

inline constexpr int kFiles = 9;
inline constexpr int kRanks = 10;
inline constexpr int kSquares = kFiles * kRanks;

/// Squares are rank * 9 + file; file 0 is red's leftmost column ('a'),
/// rank 0 is red's back rank.
using Square = int;

constexpr int file_of(Square s) { return s % kFiles; }
constexpr int rank_of(Square s) { return s / kFiles; }
constexpr Square make_square(int file, int rank) { return rank * kFiles + file; }
constexpr bool valid_coords(int file, int rank) {
    return file >= 0 && file < kFiles && rank >= 0 && rank < kRanks;
}

enum class Color : std::uint8_t { Red, Black };

constexpr Color other(Color c) { return c == Color::Red ? Color::Black : Color::Red; }

constexpr bool in_palace(Square s, Color c) {
    const int f = file_of(s);
    const int r = rank_of(s);
    if (f < 3 || f > 5) return false;
    return c == Color::Red ? r <= 2 : r >= 7;
}

/// The river runs between ranks 4 and 5; ranks 0-4 belong to red.
constexpr bool on_own_half(Square s, Color c) {
    return c == Color::Red ? rank_of(s) <= 4 : rank_of(s) >= 5;
}

constexpr bool crossed_river(Square s, Color c) { return !on_own_half(s, c); }

inline std::string square_name(Square s) {
    std::string n;
    n += static_cast<char>('a' + file_of(s));
    n += static_cast<char>('0' + rank_of(s));
    return n;
}

// ── Pieces and moves ──────────────────────────────────────────────────────────

enum class PieceKind : std::uint8_t { King, Advisor, Elephant, Knight, Rook, Cannon, Pawn };

struct Piece {
    Color color;
    PieceKind kind;
    friend constexpr bool operator==(const Piece&, const Piece&) = default;
};

using Cell = std::optional<Piece>;

constexpr int piece_index(Piece p) {
    return static_cast<int>(p.color) * 7 + static_cast<int>(p.kind);
}

/// A move records the captured kind (if any) so that unmaking and move
/// bookkeeping never needs a history lookup.
struct Move {
    Square from = -1;
    Square to = -1;
    std::optional<PieceKind> captured;
    friend constexpr bool operator==(const Move&, const Move&) = default;
};

inline constexpr Move kNullMove{};

inline std::string move_name(Move m) { return square_name(m.from) + square_name(m.to); }

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ── Zobrist keys ──────────────────────────────────────────────────────────────

namespace zobrist {

constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct Table {
    std::array<std::array<std::uint64_t, kSquares>, 14> piece;
    std::uint64_t side;
};

inline const Table& table() {
    static const Table t = [] {
        Table out{};
        std::uint64_t state = 0x58f1e3c7a94d02b6ULL;
        for (auto& row : out.piece)
            for (auto& key : row) key = splitmix64(state);
        out.side = splitmix64(state);
        return out;
    }();
    return t;
}

}  // namespace zobrist

// ── Position ──────────────────────────────────────────────────────────────────

inline constexpr const char* kStartFen =
    "rnbakabnr/9/1c5c1/p1p1p1p1p/9/9/P1P1P1P1P/1C5C1/9/RNBAKABNR w";

/// Full game state minus history: piece placement, side to move, running
/// Zobrist hash and a ply counter.  The hash folds in the side to move
/// (the side key is XORed in whenever black is on move).
class Position {
   public:
    struct Undo {
        Move move;
        Cell captured;
        std::uint64_t hash;
    };

    static Position initial() { return from_fen(kStartFen); }
    static Position from_fen(const std::string& fen);
    std::string to_fen() const;

    const Cell& at(Square s) const { return board_[s]; }
    Color side_to_move() const { return stm_; }
    std::uint64_t hash() const { return hash_; }
    int ply() const { return ply_; }

    void put(Square s, Piece p) {
        clear(s);
        board_[s] = p;
        hash_ ^= zobrist::table().piece[piece_index(p)][s];
    }

    void clear(Square s) {
        if (board_[s]) hash_ ^= zobrist::table().piece[piece_index(*board_[s])][s];
        board_[s] = std::nullopt;
    }

    void flip_side_to_move() {
        stm_ = other(stm_);
        hash_ ^= zobrist::table().side;
    }

    void set_side_to_move(Color c) {
        if (c != stm_) flip_side_to_move();
    }

    Undo make_move(Move m) {
        Undo u{m, board_[m.to], hash_};
        const Piece moving = *board_[m.from];
        hash_ ^= zobrist::table().piece[piece_index(moving)][m.from];
        if (board_[m.to]) hash_ ^= zobrist::table().piece[piece_index(*board_[m.to])][m.to];
        board_[m.to] = moving;
        board_[m.from] = std::nullopt;
        hash_ ^= zobrist::table().piece[piece_index(moving)][m.to];
        flip_side_to_move();
        ++ply_;
        return u;
    }

    void unmake_move(const Undo& u) {
        board_[u.move.from] = board_[u.move.to];
        board_[u.move.to] = u.captured;
        stm_ = other(stm_);
        hash_ = u.hash;
        --ply_;
    }

    std::uint64_t compute_hash() const {
        std::uint64_t h = 0;
        for (Square s = 0; s < kSquares; ++s)
            if (board_[s]) h ^= zobrist::table().piece[piece_index(*board_[s])][s];
        if (stm_ == Color::Black) h ^= zobrist::table().side;
        return h;
    }

    Square king_square(Color c) const {
        for (Square s = 0; s < kSquares; ++s)
            if (board_[s] && board_[s]->color == c && board_[s]->kind == PieceKind::King) return s;
        return -1;
    }

    /// Number of occupied squares strictly between two aligned squares.
    int count_between(Square a, Square b) const {
        const int df = file_of(b) - file_of(a);
        const int dr = rank_of(b) - rank_of(a);
        const int sf = (df > 0) - (df < 0);
        const int sr = (dr > 0) - (dr < 0);
        int n = 0;
        for (Square s = make_square(file_of(a) + sf, rank_of(a) + sr); s != b;
             s = make_square(file_of(s) + sf, rank_of(s) + sr))
            if (board_[s]) ++n;
        return n;
    }

    /// Capture geometry: whether the piece on `from` bears on `to` under the
    /// movement rules, including the flying-king device along an open file.
    bool attacks(Square from, Square to) const;

    bool in_check(Color side) const;

    friend bool operator==(const Position& x, const Position& y) {
        return x.board_ == y.board_ && x.stm_ == y.stm_;
    }

   private:
    std::array<Cell, kSquares> board_{};
    Color stm_ = Color::Red;
    std::uint64_t hash_ = 0;
    int ply_ = 0;
};

inline bool Position::attacks(Square from, Square to) const {
    if (from == to || !board_[from]) return false;
    const Piece pc = *board_[from];
    const int ff = file_of(from), fr = rank_of(from);
    const int tf = file_of(to), tr = rank_of(to);
    const int df = tf - ff, dr = tr - fr;
    switch (pc.kind) {
        case PieceKind::King: {
            if (in_palace(to, pc.color) && std::abs(df) + std::abs(dr) == 1) return true;
            if (df != 0) return false;
            const Cell& t = board_[to];
            return t && t->kind == PieceKind::King && t->color != pc.color &&
                   count_between(from, to) == 0;
        }
        case PieceKind::Advisor:
            return std::abs(df) == 1 && std::abs(dr) == 1 && in_palace(to, pc.color);
        case PieceKind::Elephant: {
            if (std::abs(df) != 2 || std::abs(dr) != 2) return false;
            if (!on_own_half(to, pc.color)) return false;
            return !board_[make_square(ff + df / 2, fr + dr / 2)];
        }
        case PieceKind::Knight: {
            if (!((std::abs(df) == 1 && std::abs(dr) == 2) ||
                  (std::abs(df) == 2 && std::abs(dr) == 1)))
                return false;
            const Square leg = std::abs(df) == 2 ? make_square(ff + df / 2, fr)
                                                 : make_square(ff, fr + dr / 2);
            return !board_[leg];
        }
        case PieceKind::Rook:
            if (df != 0 && dr != 0) return false;
            return count_between(from, to) == 0;
        case PieceKind::Cannon:
            if (df != 0 && dr != 0) return false;
            return count_between(from, to) == 1;
        case PieceKind::Pawn: {
            const int fwd = pc.color == Color::Red ? 1 : -1;
            if (df == 0 && dr == fwd) return true;
            return std::abs(df) == 1 && dr == 0 && crossed_river(from, pc.color);
        }
    }
    return false;
}

inline bool Position::in_check(Color side) const {
    const Square k = king_square(side);
    if (k < 0) return false;
    const Color enemy = other(side);
    const int kf = file_of(k), kr = rank_of(k);

    static constexpr int kDirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const auto& d : kDirs) {
        int f = kf + d[0], r = kr + d[1];
        bool screened = false;
        while (valid_coords(f, r)) {
            const Cell& c = board_[make_square(f, r)];
            if (c) {
                if (!screened) {
                    if (c->color == enemy) {
                        if (c->kind == PieceKind::Rook) return true;
                        if (c->kind == PieceKind::King && d[0] == 0) return true;
                    }
                    screened = true;
                } else {
                    if (c->color == enemy && c->kind == PieceKind::Cannon) return true;
                    break;
                }
            }
            f += d[0];
            r += d[1];
        }
    }

    static constexpr int kKnightOffsets[8][2] = {{1, 2},   {2, 1},   {2, -1}, {1, -2},
                                                 {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
    for (const auto& d : kKnightOffsets) {
        const int f = kf + d[0], r = kr + d[1];
        if (!valid_coords(f, r)) continue;
        const Cell& c = board_[make_square(f, r)];
        if (!c || c->color != enemy || c->kind != PieceKind::Knight) continue;
        const int dx = kf - f, dy = kr - r;
        const int legf = std::abs(dx) == 2 ? f + dx / 2 : f;
        const int legr = std::abs(dx) == 2 ? r : r + dy / 2;
        if (!board_[make_square(legf, legr)]) return true;
    }

    const int behind = enemy == Color::Red ? -1 : 1;
    if (valid_coords(kf, kr + behind)) {
        const Cell& c = board_[make_square(kf, kr + behind)];
        if (c && c->color == enemy && c->kind == PieceKind::Pawn) return true;
    }
    for (const int df : {-1, 1}) {
        if (!valid_coords(kf + df, kr)) continue;
        const Square s = make_square(kf + df, kr);
        const Cell& c = board_[s];
        if (c && c->color == enemy && c->kind == PieceKind::Pawn && crossed_river(s, enemy))
            return true;
    }
    return false;
}

namespace fen_detail {

inline Cell piece_from_letter(char ch) {
    const Color color = std::isupper(static_cast<unsigned char>(ch)) ? Color::Red : Color::Black;
    switch (std::tolower(static_cast<unsigned char>(ch))) {
        case 'k': return Piece{color, PieceKind::King};
        case 'a': return Piece{color, PieceKind::Advisor};
        case 'b':
        case 'e': return Piece{color, PieceKind::Elephant};
        case 'n':
        case 'h': return Piece{color, PieceKind::Knight};
        case 'r': return Piece{color, PieceKind::Rook};
        case 'c': return Piece{color, PieceKind::Cannon};
        case 'p': return Piece{color, PieceKind::Pawn};
        default: return std::nullopt;
    }
}

inline char letter_from_piece(Piece p) {
    static constexpr char kLetters[] = {'k', 'a', 'b', 'n', 'r', 'c', 'p'};
    const char ch = kLetters[static_cast<int>(p.kind)];
    return p.color == Color::Red ? static_cast<char>(std::toupper(ch)) : ch;
}

inline int piece_cap(PieceKind k) {
    switch (k) {
        case PieceKind::King: return 1;
        case PieceKind::Pawn: return 5;
        default: return 2;
    }
}

}  // namespace fen_detail

inline Position Position::from_fen(const std::string& fen) {
    std::istringstream in(fen);
    std::string board_field, side_field;
    if (!(in >> board_field)) throw ParseError("fen: missing board field");
    if (!(in >> side_field)) throw ParseError("fen: missing side-to-move field");

    std::vector<std::string> rows;
    std::string row;
    std::istringstream board_in(board_field);
    while (std::getline(board_in, row, '/')) rows.push_back(row);
    if (rows.size() != static_cast<std::size_t>(kRanks))
        throw ParseError("fen: expected 10 ranks, got " + std::to_string(rows.size()));

    Position p;
    int counts[2][7] = {};
    for (int i = 0; i < kRanks; ++i) {
        const int r = kRanks - 1 - i;
        int f = 0;
        for (const char ch : rows[i]) {
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                f += ch - '0';
                continue;
            }
            const Cell piece = fen_detail::piece_from_letter(ch);
            if (!piece) throw ParseError(std::string("fen: bad piece letter '") + ch + "'");
            if (f >= kFiles)
                throw ParseError("fen: rank " + std::to_string(r) + " wider than 9 files");
            ++counts[static_cast<int>(piece->color)][static_cast<int>(piece->kind)];
            p.put(make_square(f, r), *piece);
            ++f;
        }
        if (f != kFiles)
            throw ParseError("fen: rank " + std::to_string(r) + " does not span 9 files");
    }

    for (const Color c : {Color::Red, Color::Black}) {
        const char* name = c == Color::Red ? "red" : "black";
        for (int k = 0; k < 7; ++k) {
            const int cap = fen_detail::piece_cap(static_cast<PieceKind>(k));
            if (counts[static_cast<int>(c)][k] > cap)
                throw ParseError(std::string("fen: too many ") + name + " pieces of one kind");
        }
        if (counts[static_cast<int>(c)][static_cast<int>(PieceKind::King)] == 0)
            throw ParseError(std::string("fen: missing ") + name + " king");
        if (!in_palace(p.king_square(c), c))
            throw ParseError(std::string("fen: ") + name + " king outside its palace");
    }

    if (side_field == "w" || side_field == "r")
        p.set_side_to_move(Color::Red);
    else if (side_field == "b")
        p.set_side_to_move(Color::Black);
    else
        throw ParseError("fen: side to move must be 'w', 'r' or 'b'");
    return p;
}

inline std::string Position::to_fen() const {
    std::string out;
    for (int r = kRanks - 1; r >= 0; --r) {
        int empties = 0;
        for (int f = 0; f < kFiles; ++f) {
            const Cell& c = board_[make_square(f, r)];
            if (!c) {
                ++empties;
                continue;
            }
            if (empties) out += static_cast<char>('0' + empties);
            empties = 0;
            out += fen_detail::letter_from_piece(*c);
        }
        if (empties) out += static_cast<char>('0' + empties);
        if (r) out += '/';
    }
    out += stm_ == Color::Red ? " w" : " b";
    return out;
}

}  // namespace xqrules

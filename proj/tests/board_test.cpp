/// @file board_test.cpp
/// Board state checks: FEN round-trips and failures, Zobrist bookkeeping,
/// make/unmake integrity and the check detector.

#include <gtest/gtest.h>

#include <random>

#include <xqrules/movegen.hpp>
#include <xqrules/position.hpp>

#include "oracle.hpp"

namespace {

using namespace xqrules;

Square sq(const char* name) { return make_square(name[0] - 'a', name[1] - '0'); }

// ── FEN parsing ───────────────────────────────────────────────────────────────

static constexpr const char* kAliasStartFen =
    "rheakaehr/9/1c5c1/p1p1p1p1p/9/9/P1P1P1P1P/1C5C1/9/RHEAKAEHR w";
static constexpr const char* kFacingKingsFen = "4k4/9/9/9/9/9/9/9/9/4K4 w";

TEST(FenTest, StartposRoundTrip) {
    const Position p = Position::initial();
    EXPECT_EQ(p.to_fen(), std::string(kStartFen));
    EXPECT_EQ(p.side_to_move(), Color::Red);
    EXPECT_EQ(p.ply(), 0);
    EXPECT_EQ(p.at(sq("e0"))->kind, PieceKind::King);
    EXPECT_EQ(p.at(sq("e0"))->color, Color::Red);
    EXPECT_EQ(p.at(sq("h2"))->kind, PieceKind::Cannon);
    EXPECT_EQ(p.at(sq("e9"))->color, Color::Black);
}

TEST(FenTest, AliasLettersNormalize) {
    const Position p = Position::from_fen(kAliasStartFen);
    EXPECT_EQ(p.to_fen(), std::string(kStartFen));
}

TEST(FenTest, RedSideLetterAccepted) {
    const Position w = Position::from_fen("4k4/9/9/9/9/9/9/9/9/4K4 w");
    const Position r = Position::from_fen("4k4/9/9/9/9/9/9/9/9/4K4 r");
    EXPECT_EQ(w.side_to_move(), Color::Red);
    EXPECT_EQ(r.side_to_move(), Color::Red);
    EXPECT_EQ(w.hash(), r.hash());
}

TEST(FenTest, ExtraFieldsIgnored) {
    const Position p = Position::from_fen("4k4/9/9/9/9/9/9/9/9/4K4 b - - 0 1");
    EXPECT_EQ(p.side_to_move(), Color::Black);
}

TEST(FenTest, RejectsWrongRankCount) {
    EXPECT_THROW(Position::from_fen("4k4/9/9/9/9/9/9/9/4K4 w"), ParseError);
    EXPECT_THROW(Position::from_fen("4k4/9/9/9/9/9/9/9/9/9/4K4 w"), ParseError);
}

TEST(FenTest, RejectsWrongRankWidth) {
    EXPECT_THROW(Position::from_fen("3k4/9/9/9/9/9/9/9/9/4K4 w"), ParseError);
    EXPECT_THROW(Position::from_fen("5k4/9/9/9/9/9/9/9/9/4K4 w"), ParseError);
}

TEST(FenTest, RejectsPieceCountOverflow) {
    EXPECT_THROW(Position::from_fen("4k4/9/9/ppppppppp/9/9/9/9/9/4K4 w"), ParseError);
    EXPECT_THROW(Position::from_fen("4k4/9/9/9/9/9/9/9/RRR6/4K4 w"), ParseError);
}

TEST(FenTest, RejectsMissingKing) {
    EXPECT_THROW(Position::from_fen("9/9/9/9/9/9/9/9/9/4K4 w"), ParseError);
    EXPECT_THROW(Position::from_fen("4k4/9/9/9/9/9/9/9/9/9 w"), ParseError);
}

TEST(FenTest, RejectsKingOutsidePalace) {
    EXPECT_THROW(Position::from_fen("k8/9/9/9/9/9/9/9/9/4K4 w"), ParseError);
    EXPECT_THROW(Position::from_fen("4k4/9/9/9/9/9/9/9/9/K8 w"), ParseError);
    EXPECT_THROW(Position::from_fen("4k4/9/9/9/9/4K4/9/9/9/9 w"), ParseError);
}

TEST(FenTest, RejectsBadSideField) {
    EXPECT_THROW(Position::from_fen("4k4/9/9/9/9/9/9/9/9/4K4 x"), ParseError);
    EXPECT_THROW(Position::from_fen("4k4/9/9/9/9/9/9/9/9/4K4"), ParseError);
}

// ── Geometry helpers ──────────────────────────────────────────────────────────

TEST(GeometryTest, PalaceAndRiver) {
    EXPECT_TRUE(in_palace(sq("e0"), Color::Red));
    EXPECT_TRUE(in_palace(sq("f2"), Color::Red));
    EXPECT_FALSE(in_palace(sq("e3"), Color::Red));
    EXPECT_FALSE(in_palace(sq("b1"), Color::Red));
    EXPECT_TRUE(in_palace(sq("d9"), Color::Black));
    EXPECT_FALSE(in_palace(sq("d9"), Color::Red));
    EXPECT_TRUE(on_own_half(sq("e4"), Color::Red));
    EXPECT_FALSE(on_own_half(sq("e5"), Color::Red));
    EXPECT_TRUE(crossed_river(sq("e4"), Color::Black));
    EXPECT_FALSE(crossed_river(sq("e5"), Color::Black));
}

// ── Zobrist hashing ───────────────────────────────────────────────────────────

TEST(ZobristTest, SideToMoveChangesHash) {
    const Position w = Position::from_fen("4k4/9/9/9/9/9/9/9/9/4K4 w");
    const Position b = Position::from_fen("4k4/9/9/9/9/9/9/9/9/4K4 b");
    EXPECT_NE(w.hash(), b.hash());
    EXPECT_EQ(w.hash(), w.compute_hash());
    EXPECT_EQ(b.hash(), b.compute_hash());
}

TEST(ZobristTest, PutAndClearKeepHashConsistent) {
    Position p = Position::from_fen("4k4/9/9/9/9/9/9/9/9/4K4 w");
    p.put(sq("e4"), Piece{Color::Red, PieceKind::Rook});
    EXPECT_EQ(p.hash(), p.compute_hash());
    p.put(sq("e4"), Piece{Color::Black, PieceKind::Cannon});
    EXPECT_EQ(p.hash(), p.compute_hash());
    p.clear(sq("e4"));
    EXPECT_EQ(p.hash(), p.compute_hash());
    p.flip_side_to_move();
    EXPECT_EQ(p.hash(), p.compute_hash());
}

TEST(ZobristTest, RandomPlayoutRoundTripRestoresEverything) {
    std::mt19937_64 rng(20260814ULL);
    for (int game = 0; game < 40; ++game) {
        Position p = Position::initial();
        const Position start = p;
        const std::uint64_t start_hash = p.hash();
        std::vector<Position::Undo> undos;
        for (int ply = 0; ply < 60; ++ply) {
            std::vector<Move> moves = generate_moves(p);
            if (moves.empty()) break;
            const Move m = moves[rng() % moves.size()];
            undos.push_back(p.make_move(m));
            ASSERT_EQ(p.hash(), p.compute_hash());
        }
        while (!undos.empty()) {
            p.unmake_move(undos.back());
            undos.pop_back();
            ASSERT_EQ(p.hash(), p.compute_hash());
        }
        EXPECT_TRUE(p == start);
        EXPECT_EQ(p.hash(), start_hash);
        EXPECT_EQ(p.ply(), 0);
    }
}

// ── Check detection ───────────────────────────────────────────────────────────

TEST(CheckTest, StartposIsQuiet) {
    const Position p = Position::initial();
    EXPECT_FALSE(p.in_check(Color::Red));
    EXPECT_FALSE(p.in_check(Color::Black));
}

TEST(CheckTest, RookChecksAlongOpenLine) {
    const Position p = Position::from_fen("4k4/9/9/9/9/9/9/9/4R4/4K4 w");
    EXPECT_TRUE(p.in_check(Color::Black));
    EXPECT_FALSE(p.in_check(Color::Red));
}

TEST(CheckTest, CannonNeedsExactlyOneScreen) {
    const Position one = Position::from_fen("4k4/9/9/9/9/9/9/4p4/4C4/4K4 w");
    EXPECT_TRUE(one.in_check(Color::Black));
    const Position none = Position::from_fen("4k4/9/9/9/9/9/9/9/4C4/4K4 w");
    EXPECT_FALSE(none.in_check(Color::Black));
    const Position two = Position::from_fen("4k4/9/9/4p4/9/4p4/9/9/4C4/4K4 w");
    EXPECT_FALSE(two.in_check(Color::Black));
}

TEST(CheckTest, KnightCheckRespectsLeg) {
    const Position open = Position::from_fen("3k5/9/9/9/9/9/9/5n3/9/4K4 w");
    EXPECT_TRUE(open.in_check(Color::Red));
    const Position blocked = Position::from_fen("3k5/9/9/9/9/9/9/5n3/5P3/4K4 w");
    EXPECT_FALSE(blocked.in_check(Color::Red));
}

TEST(CheckTest, PawnChecksForwardAndSideways) {
    const Position ahead = Position::from_fen("4k4/9/9/9/9/9/9/9/4p4/4K4 w");
    EXPECT_TRUE(ahead.in_check(Color::Red));
    const Position beside = Position::from_fen("4k4/9/9/9/9/9/9/9/9/3pK4 w");
    EXPECT_TRUE(beside.in_check(Color::Red));
    const Position crossed_beside = Position::from_fen("3Pk4/9/9/9/9/9/9/9/9/4K4 w");
    EXPECT_TRUE(crossed_beside.in_check(Color::Black));
    const Position passed_by = Position::from_fen("9/4P4/4k4/9/9/9/9/9/9/3K5 w");
    EXPECT_FALSE(passed_by.in_check(Color::Black));
}

TEST(CheckTest, FacingKingsCheckBothWays) {
    const Position p = Position::from_fen(kFacingKingsFen);
    EXPECT_TRUE(p.in_check(Color::Red));
    EXPECT_TRUE(p.in_check(Color::Black));
    const Position screened = Position::from_fen("4k4/9/9/9/4p4/9/9/9/9/4K4 w");
    EXPECT_FALSE(screened.in_check(Color::Red));
    EXPECT_FALSE(screened.in_check(Color::Black));
}

// ── Oracle agreement on check detection ───────────────────────────────────────

TEST(CheckTest, MatchesOracleOnRandomPlayouts) {
    std::mt19937_64 rng(7ULL);
    for (int game = 0; game < 25; ++game) {
        Position p = Position::initial();
        for (int ply = 0; ply < 40; ++ply) {
            std::vector<Move> moves = generate_moves(p);
            if (moves.empty()) break;
            p.make_move(moves[rng() % moves.size()]);
            const oracle::Board b = oracle::parse(p.to_fen());
            ASSERT_EQ(p.in_check(Color::Red), oracle::king_attacked(b, true)) << p.to_fen();
            ASSERT_EQ(p.in_check(Color::Black), oracle::king_attacked(b, false)) << p.to_fen();
        }
    }
}

}  // namespace

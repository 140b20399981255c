/// @file xqrules.hpp
/// @brief Convenience umbrella for the whole library.

#pragma once

#include <xqrules/chase.hpp>
#include <xqrules/corpus.hpp>
#include <xqrules/eval.hpp>
#include <xqrules/history.hpp>
#include <xqrules/judge.hpp>
#include <xqrules/movegen.hpp>
#include <xqrules/notation.hpp>
#include <xqrules/position.hpp>
#include <xqrules/protection.hpp>
#include <xqrules/search.hpp>

#pragma once

// Text formats. Boards show a multiset over Z_3^3 as three 3x3 squares side
// by side (boards 0,1,2 left to right); inside a square the top line is row 2
// and the left column is column 0. Tokens: '.' absent, 'X' once, '2'..'9'.
//
//   . . .  . . .  . . .
//   2 X .  . . .  . . .
//   . 2 .  2 X .  . . .
//
// Sequences over any group are one element per line, "a,b,c", '#' comments.

#include <string>
#include <string_view>

#include "zsl/group.hpp"

namespace zsl {

/// Throws std::invalid_argument on a malformed token or wrong dimensions.
GroupMultiset parse_board(std::string_view text);
/// Throws std::invalid_argument unless the group is Z_3^3 and multiplicities are <= 9.
std::string render_board(const GroupMultiset& a);

GroupMultiset parse_sequence(std::string_view text, const GroupSpec& spec);
std::string render_sequence(const GroupMultiset& a);

}  // namespace zsl

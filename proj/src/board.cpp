#include "zsl/board.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace zsl {

namespace {

std::vector<std::string> content_lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(line);
  }
  return out;
}

}  // namespace

GroupMultiset parse_board(std::string_view text) {
  const GroupSpec spec = GroupSpec::elementary(3, 3);
  GroupMultiset out(spec);
  auto lines = content_lines(text);
  if (lines.size() != 3) throw std::invalid_argument("board: expected 3 lines, got " + std::to_string(lines.size()));
  for (std::size_t l = 0; l < 3; ++l) {
    std::istringstream ls(lines[l]);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.size() != 9) throw std::invalid_argument("board: line " + std::to_string(l + 1) + " has " + std::to_string(tok.size()) + " tokens, expected 9");
    for (std::size_t j = 0; j < 9; ++j) {
      const std::string& t = tok[j];
      std::uint32_t m;
      if (t == ".") m = 0;
      else if (t == "X") m = 1;
      else if (t.size() == 1 && t[0] >= '2' && t[0] <= '9') m = static_cast<std::uint32_t>(t[0] - '0');
      else throw std::invalid_argument("board: malformed token '" + t + "'");
      if (m) out.add(spec.index_of({static_cast<std::uint32_t>(j / 3), static_cast<std::uint32_t>(2 - l), static_cast<std::uint32_t>(j % 3)}), m);
    }
  }
  return out;
}

std::string render_board(const GroupMultiset& a) {
  if (!(a.spec() == GroupSpec::elementary(3, 3))) throw std::invalid_argument("board: group must be 3,3,3");
  std::string out;
  for (std::uint32_t l = 0; l < 3; ++l) {
    for (std::uint32_t j = 0; j < 9; ++j) {
      if (j) out += (j % 3 == 0) ? "  " : " ";
      const std::uint32_t m = a.count(a.spec().index_of({j / 3, 2 - l, j % 3}));
      if (m > 9) throw std::invalid_argument("board: multiplicity above 9");
      out += m == 0 ? '.' : m == 1 ? 'X' : static_cast<char>('0' + m);
    }
    out += '\n';
  }
  return out;
}

GroupMultiset parse_sequence(std::string_view text, const GroupSpec& spec) {
  GroupMultiset out(spec);
  for (const auto& line : content_lines(text)) {
    std::vector<std::uint32_t> coords;
    std::istringstream ls(line);
    std::string part;
    while (std::getline(ls, part, ',')) {
      std::size_t pos = 0;
      long long v;
      try {
        v = std::stoll(part, &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("sequence: malformed line '" + line + "'");
      }
      if (part.find_first_not_of(" \t\r", pos) != std::string::npos)
        throw std::invalid_argument("sequence: malformed line '" + line + "'");
      const long long d = spec.factor(std::min(coords.size(), spec.rank() - 1));
      coords.push_back(static_cast<std::uint32_t>(((v % d) + d) % d));
    }
    if (coords.size() != spec.rank())
      throw std::invalid_argument("sequence: expected " + std::to_string(spec.rank()) + " coordinates in '" + line + "'");
    out.add(spec.index_of(coords));
  }
  return out;
}

std::string render_sequence(const GroupMultiset& a) {
  std::string out;
  for (auto [e, c] : a.entries()) {
    auto coords = a.spec().coords_of(e);
    std::string line;
    for (std::size_t i = 0; i < coords.size(); ++i) line += (i ? "," : "") + std::to_string(coords[i]);
    for (std::uint32_t k = 0; k < c; ++k) out += line + '\n';
  }
  return out;
}

}  // namespace zsl

#include "rotortree/tree.hpp"

#include <algorithm>
#include <charconv>

#include "rotortree/errors.hpp"

namespace rotortree {

TreeParams::TreeParams(unsigned k) : k_(k) {
  if (k < 3) throw Error(ErrorCode::DegenerateK, "tree degree must be at least 3, got " + std::to_string(k));
  if (k > 256) throw Error(ErrorCode::InvalidArgument, "tree degree above 256 is not supported");
}

std::vector<unsigned> Vertex::letters() const {
  std::vector<unsigned> out;
  out.reserve(word_.size());
  for (char c : word_) out.push_back(static_cast<unsigned char>(c));
  return out;
}

std::string Vertex::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (i) out.push_back('.');
    out += std::to_string(letter(i));
  }
  return out;
}

Vertex make_vertex(std::span<const unsigned> letters, const TreeParams& params) {
  Vertex v;
  v.word_.reserve(letters.size());
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i] >= params.k()) {
      throw Error(ErrorCode::LetterOutOfRange,
                  "letter " + std::to_string(letters[i]) + " at position " + std::to_string(i));
    }
    if (i && letters[i] == letters[i - 1]) {
      throw Error(ErrorCode::RepeatedLetter, "letters " + std::to_string(i - 1) + " and " +
                                                 std::to_string(i) + " are both " +
                                                 std::to_string(letters[i]));
    }
    v.word_.push_back(static_cast<char>(letters[i]));
  }
  return v;
}

Vertex parse_vertex(std::string_view text, const TreeParams& params) {
  std::vector<unsigned> letters;
  if (!text.empty()) {
    std::size_t pos = 0;
    while (true) {
      std::size_t dot = text.find('.', pos);
      std::string_view piece = text.substr(pos, dot == std::string_view::npos ? text.npos : dot - pos);
      unsigned value = 0;
      auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
      if (piece.empty() || ec != std::errc{} || ptr != piece.data() + piece.size()) {
        throw Error(ErrorCode::ParseError, "bad vertex '" + std::string(text) + "'");
      }
      letters.push_back(value);
      if (dot == std::string_view::npos) break;
      pos = dot + 1;
    }
  }
  return make_vertex(letters, params);
}

Vertex neighbor(const Vertex& v, Direction d, const TreeParams& params) {
  if (d.index >= params.k()) {
    throw Error(ErrorCode::LetterOutOfRange, "direction " + std::to_string(d.index));
  }
  Vertex out = v;
  if (!out.word_.empty() && out.last_letter() == d.index) {
    out.word_.pop_back();
  } else {
    out.word_.push_back(static_cast<char>(d.index));
  }
  return out;
}

Direction toward_origin(const Vertex& v) {
  if (v.is_origin()) throw Error(ErrorCode::AtOrigin, "the origin has no inward direction");
  return Direction{v.last_letter()};
}

std::size_t distance(const Vertex& a, const Vertex& b) noexcept {
  auto [ia, ib] = std::mismatch(a.word_.begin(), a.word_.end(), b.word_.begin(), b.word_.end());
  std::size_t common = static_cast<std::size_t>(ia - a.word_.begin());
  return a.word_.size() + b.word_.size() - 2 * common;
}

BigInt sphere_size(std::size_t x, const TreeParams& params) {
  if (x == 0) return 1;
  return BigInt(params.k()) * pow_ui(params.k() - 1, x - 1);
}

std::vector<Vertex> sphere_vertices(std::size_t depth, const TreeParams& params) {
  std::vector<Vertex> layer{Vertex::origin()};
  for (std::size_t r = 0; r < depth; ++r) {
    std::vector<Vertex> next;
    next.reserve(layer.size() * (params.k() - (r == 0 ? 0 : 1)));
    for (const Vertex& v : layer) {
      for (unsigned d = 0; d < params.k(); ++d) {
        if (!v.is_origin() && v.last_letter() == d) continue;
        next.push_back(neighbor(v, Direction{d}, params));
      }
    }
    layer = std::move(next);
  }
  return layer;
}

std::vector<Vertex> ball_vertices(std::size_t radius, const TreeParams& params) {
  std::vector<Vertex> out{Vertex::origin()};
  std::size_t begin = 0;
  for (std::size_t r = 0; r < radius; ++r) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (unsigned d = 0; d < params.k(); ++d) {
        const Vertex& v = out[i];
        if (!v.is_origin() && v.last_letter() == d) continue;
        out.push_back(neighbor(v, Direction{d}, params));
      }
    }
    begin = end;
  }
  return out;
}

std::vector<Vertex> neighborhood(const Vertex& center, std::size_t r, const TreeParams& params) {
  // Breadth-first search, never stepping back along the edge we came in by.
  struct Item {
    Vertex v;
    int came_from;
  };
  std::vector<Item> frontier{{center, -1}};
  std::vector<Vertex> out{center};
  for (std::size_t step = 0; step < r; ++step) {
    std::vector<Item> next;
    for (const Item& item : frontier) {
      for (unsigned d = 0; d < params.k(); ++d) {
        if (static_cast<int>(d) == item.came_from) continue;
        Vertex w = neighbor(item.v, Direction{d}, params);
        out.push_back(w);
        next.push_back({std::move(w), static_cast<int>(d)});
      }
    }
    frontier = std::move(next);
  }
  return out;
}

Vertex canonical_descendant(const Vertex& v, std::size_t steps) {
  Vertex out = v;
  out.word_.reserve(v.depth() + steps);
  for (std::size_t i = 0; i < steps; ++i) {
    unsigned next = (!out.is_origin() && out.last_letter() == 0) ? 1u : 0u;
    out.word_.push_back(static_cast<char>(next));
  }
  return out;
}

}  // namespace rotortree

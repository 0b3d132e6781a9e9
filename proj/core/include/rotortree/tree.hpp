#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rotortree/bigint.hpp"

namespace rotortree {

/// Degree of the infinite regular tree. Letters are stored as bytes, so k is
/// limited to 256.
class TreeParams {
 public:
  explicit TreeParams(unsigned k);

  unsigned k() const noexcept { return k_; }

  friend bool operator==(const TreeParams&, const TreeParams&) = default;

 private:
  unsigned k_;
};

struct Direction {
  unsigned index = 0;

  friend auto operator<=>(const Direction&, const Direction&) = default;
};

/// A vertex of the k-regular tree, addressed by its reduced word over the
/// direction letters 0..k-1 (no two adjacent letters equal). The empty word is
/// the origin and the word length is the distance to the origin.
class Vertex {
 public:
  Vertex() = default;

  static Vertex origin() { return Vertex{}; }

  std::size_t depth() const noexcept { return word_.size(); }
  bool is_origin() const noexcept { return word_.empty(); }

  unsigned letter(std::size_t i) const noexcept { return static_cast<unsigned char>(word_[i]); }
  unsigned last_letter() const noexcept { return static_cast<unsigned char>(word_.back()); }
  std::vector<unsigned> letters() const;

  /// Dot-separated letter indices; "" for the origin.
  std::string to_string() const;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  /// Shortlex order: by depth, then lexicographic by letters.
  friend bool operator<(const Vertex& a, const Vertex& b) noexcept {
    if (a.word_.size() != b.word_.size()) return a.word_.size() < b.word_.size();
    return a.word_ < b.word_;
  }

  std::size_t hash() const noexcept { return std::hash<std::string>{}(word_); }

 private:
  friend Vertex make_vertex(std::span<const unsigned>, const TreeParams&);
  friend Vertex neighbor(const Vertex&, Direction, const TreeParams&);
  friend Vertex parse_vertex(std::string_view, const TreeParams&);
  friend std::size_t distance(const Vertex&, const Vertex&) noexcept;
  friend Vertex canonical_descendant(const Vertex&, std::size_t);

  // One byte per letter; std::string keeps short words inline.
  std::string word_;
};

struct VertexHash {
  std::size_t operator()(const Vertex& v) const noexcept { return v.hash(); }
};

Vertex make_vertex(std::span<const unsigned> letters, const TreeParams& params);
inline Vertex make_vertex(std::initializer_list<unsigned> letters, const TreeParams& params) {
  return make_vertex(std::span<const unsigned>(letters.begin(), letters.size()), params);
}

/// Inverse of Vertex::to_string.
Vertex parse_vertex(std::string_view text, const TreeParams& params);

/// Moves one step in direction d: cancels the last letter if it equals d,
/// otherwise appends d.
Vertex neighbor(const Vertex& v, Direction d, const TreeParams& params);

/// The unique direction that decreases depth; throws AtOrigin for the origin.
Direction toward_origin(const Vertex& v);

/// Tree distance between two vertices (length of the geodesic).
std::size_t distance(const Vertex& a, const Vertex& b) noexcept;

/// Number of vertices at distance x from the origin: 1, then k(k-1)^(x-1).
BigInt sphere_size(std::size_t x, const TreeParams& params);

constexpr bool same_parity(std::size_t x, std::size_t t) noexcept { return (x % 2) == (t % 2); }

/// Every vertex with depth <= radius, origin first, in shortlex order.
std::vector<Vertex> ball_vertices(std::size_t radius, const TreeParams& params);

/// Every vertex at exactly the given depth, in lexicographic order.
std::vector<Vertex> sphere_vertices(std::size_t depth, const TreeParams& params);

/// Every vertex within distance r of center (center first, then by distance).
std::vector<Vertex> neighborhood(const Vertex& center, std::size_t r, const TreeParams& params);

/// Extends v by `steps` letters away from the origin, appending 0, or 1 when 0
/// would repeat the previous letter.
Vertex canonical_descendant(const Vertex& v, std::size_t steps);

}  // namespace rotortree

template <>
struct std::hash<rotortree::Vertex> {
  std::size_t operator()(const rotortree::Vertex& v) const noexcept { return v.hash(); }
};

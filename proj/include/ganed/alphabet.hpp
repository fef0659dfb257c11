#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ganed {

using Symbol = int;

/// A finite alphabet of `size` symbols, optionally carrying a glyph table
/// (one character per symbol) for text I/O. Immutable after construction.
class Alphabet {
 public:
  /// Alphabet of `size` anonymous symbols (no glyph table). size >= 2.
  static Alphabet indexed(int size);

  /// Alphabet whose symbols 0..n-1 map to the given distinct glyphs.
  static Alphabet from_glyphs(std::string_view glyphs);

  /// Alphabet used for discretized series: glyphs a..z A..Z 0..9 + /.
  /// 2 <= alpha <= 64.
  static Alphabet sax(int alpha);

  int size() const { return size_; }
  bool has_glyphs() const { return !glyphs_.empty(); }

  /// Glyph for a symbol index; requires a glyph table and 0 <= s < size.
  char glyph(Symbol s) const;

  /// Symbol index of a glyph, or nullopt if the glyph is not in the table.
  std::optional<Symbol> index_of(char glyph) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.size_ == b.size_ && a.glyphs_ == b.glyphs_;
  }
  friend bool operator!=(const Alphabet& a, const Alphabet& b) { return !(a == b); }

 private:
  Alphabet(int size, std::string glyphs);

  int size_;
  std::string glyphs_;  // empty, or exactly size_ distinct chars
};

/// An immutable string over a finite alphabet, stored as symbol indices.
/// Empty sequences are legal. Each sequence built from raw symbols gets a
/// process-unique id, shared by its copies; the id keys profile caches.
class SymbolicSequence {
 public:
  SymbolicSequence(std::vector<Symbol> symbols, Alphabet alphabet);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  const Alphabet& alphabet() const { return alphabet_; }
  std::uint64_t id() const { return id_; }

  /// Renders the sequence through the alphabet's glyph table.
  std::string to_glyphs() const;

  /// Content equality; the id is identity metadata, not content.
  friend bool operator==(const SymbolicSequence& a, const SymbolicSequence& b) {
    return a.alphabet_ == b.alphabet_ && a.symbols_ == b.symbols_;
  }

 private:
  std::vector<Symbol> symbols_;
  Alphabet alphabet_;
  std::uint64_t id_;
};

/// Maps a glyph string to a symbolic sequence over `alphabet`.
/// Throws data_error naming the glyph and position if a character is
/// not in the alphabet's table.
SymbolicSequence make_sequence(std::string_view glyphs, const Alphabet& alphabet);

}  // namespace ganed

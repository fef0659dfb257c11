#include "ganed/alphabet.hpp"

#include <atomic>
#include <stdexcept>
#include <unordered_set>

#include "ganed/errors.hpp"

namespace ganed {

namespace {
constexpr std::string_view kSaxGlyphs =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+/";

std::uint64_t next_sequence_id() {
  static std::atomic<std::uint64_t> counter{0};
  return counter.fetch_add(1, std::memory_order_relaxed);
}
}  // namespace

Alphabet::Alphabet(int size, std::string glyphs) : size_(size), glyphs_(std::move(glyphs)) {
  if (size_ < 2) throw std::invalid_argument("alphabet size must be >= 2");
  if (!glyphs_.empty()) {
    if (static_cast<int>(glyphs_.size()) != size_)
      throw std::invalid_argument("glyph table size does not match alphabet size");
    std::unordered_set<char> seen(glyphs_.begin(), glyphs_.end());
    if (static_cast<int>(seen.size()) != size_)
      throw std::invalid_argument("glyph table contains duplicate glyphs");
  }
}

Alphabet Alphabet::indexed(int size) { return Alphabet(size, {}); }

Alphabet Alphabet::from_glyphs(std::string_view glyphs) {
  return Alphabet(static_cast<int>(glyphs.size()), std::string(glyphs));
}

Alphabet Alphabet::sax(int alpha) {
  if (alpha < 2 || alpha > 64)
    throw std::invalid_argument("sax alphabet size must be in [2, 64]");
  return Alphabet(alpha, std::string(kSaxGlyphs.substr(0, alpha)));
}

char Alphabet::glyph(Symbol s) const {
  if (glyphs_.empty()) throw std::logic_error("alphabet has no glyph table");
  if (s < 0 || s >= size_) throw std::out_of_range("symbol index out of range");
  return glyphs_[static_cast<std::size_t>(s)];
}

std::optional<Symbol> Alphabet::index_of(char glyph) const {
  auto pos = glyphs_.find(glyph);
  if (pos == std::string::npos) return std::nullopt;
  return static_cast<Symbol>(pos);
}

SymbolicSequence::SymbolicSequence(std::vector<Symbol> symbols, Alphabet alphabet)
    : symbols_(std::move(symbols)), alphabet_(std::move(alphabet)), id_(next_sequence_id()) {
  for (Symbol s : symbols_) {
    if (s < 0 || s >= alphabet_.size())
      throw std::invalid_argument("symbol index out of alphabet range");
  }
}

std::string SymbolicSequence::to_glyphs() const {
  std::string out;
  out.reserve(symbols_.size());
  for (Symbol s : symbols_) out.push_back(alphabet_.glyph(s));
  return out;
}

SymbolicSequence make_sequence(std::string_view glyphs, const Alphabet& alphabet) {
  if (!alphabet.has_glyphs())
    throw std::invalid_argument("make_sequence requires an alphabet with a glyph table");
  std::vector<Symbol> symbols;
  symbols.reserve(glyphs.size());
  for (std::size_t i = 0; i < glyphs.size(); ++i) {
    auto idx = alphabet.index_of(glyphs[i]);
    if (!idx) {
      throw data_error("unknown glyph '" + std::string(1, glyphs[i]) + "' at position " +
                       std::to_string(i));
    }
    symbols.push_back(*idx);
  }
  return SymbolicSequence(std::move(symbols), alphabet);
}

}  // namespace ganed

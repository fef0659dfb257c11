#include <map>
#include <vector>

#include "doctest.h"
#include "ganed/alphabet.hpp"
#include "ganed/errors.hpp"
#include "ganed/ngram.hpp"
#include "oracles.hpp"

using namespace ganed;

namespace {

NGramProfile::Gram gram(std::initializer_list<Symbol> symbols) {
  return NGramProfile::Gram(symbols);
}

}  // namespace

TEST_SUITE("sequence_core") {

TEST_CASE("indexed alphabet has no glyph table") {
  const Alphabet a = Alphabet::indexed(5);
  CHECK(a.size() == 5);
  CHECK_FALSE(a.has_glyphs());
}

TEST_CASE("glyph alphabets round-trip glyph and index") {
  const Alphabet a = Alphabet::from_glyphs("xyz");
  CHECK(a.size() == 3);
  REQUIRE(a.has_glyphs());
  for (Symbol s = 0; s < a.size(); ++s) {
    const auto back = a.index_of(a.glyph(s));
    REQUIRE(back.has_value());
    CHECK(*back == s);
  }
  CHECK_FALSE(a.index_of('w').has_value());
}

TEST_CASE("sax alphabet uses the documented glyph order") {
  const Alphabet a = Alphabet::sax(64);
  for (Symbol s = 0; s < 64; ++s) CHECK(a.glyph(s) == oracle::kGlyphs[s]);
  const Alphabet small = Alphabet::sax(4);
  CHECK(small.size() == 4);
  CHECK(small.glyph(0) == 'a');
  CHECK(small.glyph(3) == 'd');
}

TEST_CASE("make_sequence maps glyphs and reports bad ones") {
  const Alphabet a = Alphabet::from_glyphs("ab");
  const SymbolicSequence s = make_sequence("abba", a);
  CHECK(s.symbols() == std::vector<Symbol>{0, 1, 1, 0});
  CHECK(s.to_glyphs() == "abba");
  CHECK(make_sequence("", a).empty());
  CHECK_THROWS_AS(make_sequence("abca", a), data_error);
  CHECK_THROWS_WITH(make_sequence("abca", a),
                    doctest::Contains("'c'"));
}

TEST_CASE("sequence equality is content equality") {
  const Alphabet a = Alphabet::from_glyphs("ab");
  const SymbolicSequence s = make_sequence("ab", a);
  const SymbolicSequence t = make_sequence("ab", a);
  CHECK(s == t);
  CHECK(s.id() != t.id());
  const SymbolicSequence copy = s;
  CHECK(copy.id() == s.id());
}

TEST_CASE("1-gram profile of MARWAN") {
  const Alphabet a = Alphabet::from_glyphs("MARWNFUD");
  const NGramProfile p = ngram_profile(make_sequence("MARWAN", a), 1);
  CHECK(p.n == 1);
  CHECK(p.total() == 6);
  const std::map<NGramProfile::Gram, std::uint32_t> expected{
      {gram({0}), 1}, {gram({1}), 2}, {gram({2}), 1}, {gram({3}), 1}, {gram({4}), 1}};
  CHECK(p.counts == expected);
}

TEST_CASE("profiles match the map-of-substrings oracle") {
  Rng rng(41);
  const Alphabet a = Alphabet::sax(4);
  for (int trial = 0; trial < 40; ++trial) {
    const std::string w = oracle::random_word(rng, rng.index(9), 4);
    for (int n = 1; n <= 3; ++n) {
      const NGramProfile p = ngram_profile(make_sequence(w, a), n);
      const auto expected = oracle::profile(w, n);
      REQUIRE(p.counts.size() == expected.size());
      CHECK(p.total() ==
            (w.size() >= static_cast<std::size_t>(n) ? w.size() - static_cast<std::size_t>(n) + 1 : 0));
      for (const auto& [g, count] : p.counts) {
        std::string text;
        for (const Symbol s : g) text += a.glyph(s);
        REQUIRE(expected.count(text) == 1);
        CHECK(expected.at(text) == count);
      }
    }
  }
}

TEST_CASE("profile edge cases") {
  const Alphabet a = Alphabet::from_glyphs("ab");
  CHECK(ngram_profile(make_sequence("ab", a), 3).counts.empty());
  CHECK(ngram_profile(make_sequence("", a), 1).counts.empty());
  CHECK(ngram_profile(make_sequence("ab", a), 2).total() == 1);
  CHECK_THROWS_AS(ngram_profile(make_sequence("ab", a), 0), std::invalid_argument);
}

TEST_CASE("overlap of MARWAN and FUAD counts the shared A") {
  const Alphabet a = Alphabet::from_glyphs("MARWNFUD");
  const auto p = ngram_profile(make_sequence("MARWAN", a), 1);
  const auto q = ngram_profile(make_sequence("FUAD", a), 1);
  CHECK(overlap(p, q) == 1);
  CHECK(overlap(q, p) == 1);
}

TEST_CASE("overlap matches the oracle and rejects mixed n") {
  Rng rng(42);
  const Alphabet a = Alphabet::sax(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::string u = oracle::random_word(rng, 1 + rng.index(8), 3);
    const std::string v = oracle::random_word(rng, 1 + rng.index(8), 3);
    for (int n = 1; n <= 3; ++n) {
      const auto pu = ngram_profile(make_sequence(u, a), n);
      const auto pv = ngram_profile(make_sequence(v, a), n);
      CHECK(overlap(pu, pv) == oracle::overlap(u, v, n));
    }
  }
  const auto p1 = ngram_profile(make_sequence("aa", a), 1);
  const auto p2 = ngram_profile(make_sequence("aa", a), 2);
  CHECK_THROWS_AS(overlap(p1, p2), std::invalid_argument);
}

TEST_CASE("cache returns one profile per (sequence, n)") {
  const Alphabet a = Alphabet::from_glyphs("ab");
  const SymbolicSequence s = make_sequence("abab", a);
  NGramCache cache;
  const NGramProfile& first = cache.profile(s, 2);
  const NGramProfile& again = cache.profile(s, 2);
  CHECK(&first == &again);
  CHECK(first.counts == ngram_profile(s, 2).counts);
  const NGramProfile& other = cache.profile(s, 1);
  CHECK(&other != &first);
  CHECK(other.n == 1);
}

}

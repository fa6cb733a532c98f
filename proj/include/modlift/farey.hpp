#pragma once

#include "modlift/arith.hpp"
#include "modlift/groups.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace modlift {

struct Label {
  enum Kind { Pair, Bullet, Circle } kind = Pair;
  int id = 0;    // pairing id, Pair only
  int sign = 1;  // generator sign for Pair, epsilon for Bullet

  static Label pair(int id, int sign) { return {Pair, id, sign}; }
  static Label bullet(int eps) { return {Bullet, 0, eps}; }
  static Label circle() { return {Circle, 0, 1}; }
  bool operator==(const Label& o) const { return kind == o.kind && id == o.id && sign == o.sign; }
  std::string str() const;  // "+3", "-2", "B+", "B-", "O"
};

// cusps x_0..x_n with x_0 = -oo and x_n = oo (both stored as (1,0)); labels l_1..l_n on the
// edges [x_{k}, x_{k+1}], indexed from 0 here.
struct SignedFareySymbol {
  std::vector<Cusp> cusps;
  std::vector<Label> labels;

  std::size_t edges() const { return labels.size(); }
  // a_k, b_k with the -oo convention a_0 = -1, b_0 = 0
  Int num(std::size_t k) const;
  Int den(std::size_t k) const;
  bool has_circle() const;
  bool operator==(const SignedFareySymbol& o) const { return cusps == o.cusps && labels == o.labels; }
};

std::vector<std::string> validate(const SignedFareySymbol& sym);

enum class GenKind { Pair, Bullet, Circle };

struct Generator {
  Mat2 m;
  GenKind kind = GenKind::Pair;
  int edge = 0;     // smaller edge index
  int partner = 0;  // other edge for pairs, otherwise equal to edge
};

struct WordLetter {
  int gen;
  int exp;  // +1 or -1
  bool operator==(const WordLetter& o) const { return gen == o.gen && exp == o.exp; }
};

using Word = std::vector<WordLetter>;

struct ReducedWord {
  Word word;
  int sign = 1;  // eval(word) = sign * m
  bool member = false;
};

template <class T>
struct ReduceGeometry;

// Generators in edge order plus what word reduction needs about the polygon.
class GeneratorSet {
 public:
  explicit GeneratorSet(const SignedFareySymbol& sym);

  const SignedFareySymbol& symbol() const { return sym_; }
  const std::vector<Generator>& gens() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  const Mat2& operator[](std::size_t i) const { return gens_[i].m; }
  int gen_of_edge(std::size_t k) const { return edge_gen_[k]; }

  ReducedWord reduce(const Mat2& m) const;
  Mat2 eval(const Word& w) const;

 private:
  template <class T>
  friend struct ReduceGeometry;
  SignedFareySymbol sym_;
  std::vector<Generator> gens_;
  std::vector<int> edge_gen_;
  std::shared_ptr<const ReduceGeometry<Int>> big_;
  std::shared_ptr<const ReduceGeometry<__int128>> small_;  // null when the symbol is too large
};

std::vector<Generator> generators_from_symbol(const SignedFareySymbol& sym);
ReducedWord reduce_to_word(const GeneratorSet& gens, const Mat2& m);

// Closed forms in the cusp vectors; pairing_matrix needs i < j.
Mat2 pairing_matrix(const SignedFareySymbol& sym, std::size_t i, std::size_t j);
Mat2 bullet_matrix(const SignedFareySymbol& sym, std::size_t j);
Mat2 circle_matrix(const SignedFareySymbol& sym, std::size_t i);

struct BuildOptions {
  std::size_t max_edges = 2000000;
  std::function<void(std::size_t edges, std::size_t open)> progress;
};

SignedFareySymbol build_farey(const MembershipOracle& oracle, const BuildOptions& opt = {});

// Classes of symbol cusps under the side pairings; ordered oo first, then by (q, |p|, p).
struct CuspClass {
  Cusp rep;
  std::vector<std::size_t> members;  // cusp indices into sym.cusps
  long width = 0;                    // combinatorial width from the polygon
};
std::vector<CuspClass> cusp_classes(const SignedFareySymbol& sym);

struct EllipticCounts {
  long nu2 = 0, nu3 = 0;
};
EllipticCounts counts(const SignedFareySymbol& sym);

long symbol_index(const SignedFareySymbol& sym);  // 3(n-2) + nu3
long min_generators(const SignedFareySymbol& sym);

// Text format, version line first.
std::string serialize_symbol(const SignedFareySymbol& sym);
SignedFareySymbol parse_symbol(const std::string& text);

// Convenience: the symbol used for a spec (built for families, stored otherwise).
SignedFareySymbol symbol_for(const GroupSpec& spec, const BuildOptions& opt = {});

}  // namespace modlift

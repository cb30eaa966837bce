// Sturmian codings of the rotation by alpha, symbol grids read off the
// rhomb tessellation, and recovery of the rotation parameter from a finite
// word by intersecting arcs.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "penrose/pentagrid.hpp"
#include "penrose/wang.hpp"

namespace penrose {

// Plus: I = [1 - alpha, 1).  Minus: I = (1 - alpha, 1] (so {x} = 0 counts).
enum class Coding { Plus, Minus };

int sturmian_symbol(const Qr5& u, long long n, Coding c = Coding::Plus);

struct SturmianWord {
  Qr5 u;
  Coding coding = Coding::Plus;
  long long lo = 0;
  std::vector<int> z;
  int at(long long n) const { return z.at(static_cast<std::size_t>(n - lo)); }
  std::string str() const;
};

// Symbols z_n for n in [lo, hi].
SturmianWord sturmian_word(const Qr5& u, Coding c, long long lo, long long hi);

// Any two factors of equal length (up to max_len) have 1-counts differing by
// at most one.
bool balanced(const std::vector<int>& w, std::size_t max_len);

struct SymbolGrid {
  Index2 lo{};
  int width = 0, height = 0;
  std::vector<Symbol> s;  // row-major, n1 outer
  const Symbol& at(long long n0, long long n1) const { return s[(n1 - lo[1]) * width + (n0 - lo[0])]; }
  friend bool operator==(const SymbolGrid&, const SymbolGrid&) = default;
};

// Symbol of every g_n, counting 4- and 2-lines through R_n.  Throws
// SingularPatch on a singular patch.
SymbolGrid read_symbol_grid(const PentagridParams& u, const Index2& lo, int width, int height);
// (z_{n0}, z'_{n1}) over the words' common window.
SymbolGrid tensor_grid(const SturmianWord& z, const SturmianWord& zp, const Index2& lo, int width, int height);
// z(u4) (x) z(u2) for the normal form of u at R_0.
SymbolGrid expected_symbol_grid(const PentagridParams& u, const Index2& lo, int width, int height);

// Arc of the circle R/Z from start to end (start in [0,1), start < end <=
// start + 1), closed at the start for Plus codings and at the end for Minus.
struct Arc {
  Qr5 start, end;
  Coding coding = Coding::Plus;
  int pieces = 1;  // > 1 when the constraints left several cells and this is their hull
  bool contains(const Qr5& u) const;
  Qr5 length() const { return end - start; }
  std::string str() const;
};

class NotSturmian : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// All u with {u + n alpha} in I exactly when z_n = 1, over the given
// (n, z_n) pairs.  Throws NotSturmian when no u fits.
Arc recover_parameter(const std::vector<std::pair<long long, int>>& word, Coding c = Coding::Plus);
Arc recover_parameter(const SturmianWord& w);

}  // namespace penrose

#include "penrose/sturmian.hpp"

#include <algorithm>
#include <stdexcept>

namespace penrose {

namespace {

const Qr5& one_minus_alpha() {
  static const Qr5 c = Qr5(1) - Qr5::alpha();
  return c;
}

bool in_interval(const Qr5& x, Coding c) {
  Qr5 f = x.frac();
  if (c == Coding::Plus) return f >= one_minus_alpha();
  return f > one_minus_alpha() || f.is_zero();
}

}  // namespace

int sturmian_symbol(const Qr5& u, long long n, Coding c) {
  return in_interval(u + Qr5(n) * Qr5::alpha(), c) ? 1 : 0;
}

std::string SturmianWord::str() const {
  std::string s;
  for (int x : z) s.push_back(static_cast<char>('0' + x));
  return s;
}

SturmianWord sturmian_word(const Qr5& u, Coding c, long long lo, long long hi) {
  if (hi < lo) throw std::invalid_argument("empty index range");
  SturmianWord w{u.frac(), c, lo, {}};
  w.z.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long long n = lo; n <= hi; ++n) w.z.push_back(sturmian_symbol(u, n, c));
  return w;
}

bool balanced(const std::vector<int>& w, std::size_t max_len) {
  std::vector<int> prefix(w.size() + 1, 0);
  for (std::size_t k = 0; k < w.size(); ++k) prefix[k + 1] = prefix[k] + w[k];
  for (std::size_t len = 1; len <= std::min(max_len, w.size()); ++len) {
    int lo = len, hi = 0;
    for (std::size_t s = 0; s + len <= w.size(); ++s) {
      int c = prefix[s + len] - prefix[s];
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    if (hi - lo > 1) return false;
  }
  return true;
}

SymbolGrid read_symbol_grid(const PentagridParams& u, const Index2& lo, int width, int height) {
  SymbolGrid g{lo, width, height, {}};
  g.s.reserve(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      Index2 n{lo[0] + x, lo[1] + y};
      std::vector<CrossingCode> codes = crossings_in_rhomb(u, n);
      for (const CrossingCode& c : codes)
        if (c.multiplicity() != 2)
          throw SingularPatch("patch (" + std::to_string(n[0]) + "," + std::to_string(n[1]) + ") is singular");
      g.s.push_back(grid_symbol(codes));
    }
  return g;
}

SymbolGrid tensor_grid(const SturmianWord& z, const SturmianWord& zp, const Index2& lo, int width, int height) {
  SymbolGrid g{lo, width, height, {}};
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) g.s.push_back({z.at(lo[0] + x), zp.at(lo[1] + y)});
  return g;
}

SymbolGrid expected_symbol_grid(const PentagridParams& u, const Index2& lo, int width, int height) {
  PentagridParams v = translate_params(u, rhomb_corner(u, {0, 0}));
  SturmianWord z = sturmian_word(v[4], Coding::Plus, lo[0], lo[0] + width - 1);
  SturmianWord zp = sturmian_word(v[2], Coding::Plus, lo[1], lo[1] + height - 1);
  return tensor_grid(z, zp, lo, width, height);
}

bool Arc::contains(const Qr5& u) const {
  Qr5 x = u.frac();
  if (x < start) x += Qr5(1);
  if (coding == Coding::Plus) return start <= x && x < end;
  // (start, end]; the end point may sit one turn up
  if (x == start) return end == start + Qr5(1);
  return x <= end;
}

std::string Arc::str() const {
  std::string l = coding == Coding::Plus ? "[" : "(";
  std::string r = coding == Coding::Plus ? ")" : "]";
  return l + start.str() + ", " + end.str() + r;
}

Arc recover_parameter(const std::vector<std::pair<long long, int>>& word, Coding c) {
  const Qr5 a = Qr5::alpha();
  const Qr5 one(1);
  // allowed set as disjoint pieces of [0, 1), each [lo, hi) for Plus or
  // (lo, hi] for Minus
  std::vector<std::pair<Qr5, Qr5>> live{{Qr5(0), one}};
  for (const auto& [n, z] : word) {
    if (z != 0 && z != 1) throw std::invalid_argument("symbols must be 0 or 1");
    // {u + n alpha} in I  <=>  u in the arc of length alpha from 1 - alpha - n alpha
    Qr5 s = z ? (one_minus_alpha() - Qr5(n) * a).frac() : (-Qr5(n) * a).frac();
    Qr5 e = s + (z ? a : one_minus_alpha());
    std::pair<Qr5, Qr5> arc[2] = {{s, e < one ? e : one}, {Qr5(0), e - one}};
    int parts = e > one ? 2 : 1;
    std::vector<std::pair<Qr5, Qr5>> next;
    for (const auto& [lo, hi] : live)
      for (int k = 0; k < parts; ++k) {
        Qr5 l = std::max(lo, arc[k].first), h = std::min(hi, arc[k].second);
        if (l < h) next.push_back({l, h});
      }
    live = std::move(next);
    if (live.empty()) throw NotSturmian("word is not Sturmian-consistent");
  }
  std::sort(live.begin(), live.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  // glue the piece ending at 1 to the one starting at 0
  if (live.size() > 1 && live.front().first.is_zero() && live.back().second == one) {
    live.back().second = live.front().second + one;
    live.erase(live.begin());
  }
  if (live.size() == 1) return {live[0].first, live[0].second, c, 1};
  // several pieces: the shortest arc covering all of them
  Qr5 best_len(2);
  std::size_t best = 0;
  for (std::size_t k = 0; k < live.size(); ++k) {
    const Qr5& prev_end = live[(k + live.size() - 1) % live.size()].second;
    Qr5 gap = live[k].first - prev_end;
    if (gap.sign() < 0) gap += one;
    Qr5 len = one - gap;
    if (len < best_len) {
      best_len = len;
      best = k;
    }
  }
  Qr5 s = live[best].first;
  return {s, s + best_len, c, static_cast<int>(live.size())};
}

Arc recover_parameter(const SturmianWord& w) {
  if (!balanced(w.z, w.z.size())) throw NotSturmian("word is not balanced");
  std::vector<std::pair<long long, int>> pairs;
  for (std::size_t k = 0; k < w.z.size(); ++k) pairs.push_back({w.lo + static_cast<long long>(k), w.z[k]});
  return recover_parameter(pairs, w.coding);
}

}  // namespace penrose

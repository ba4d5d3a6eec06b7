#pragma once

// Planar-diagram (PD) and Dowker-Thistlethwaite (DT) codes.
//
// A PD crossing X[a,b,c,d] lists its four arcs counterclockwise starting from the
// incoming under-strand a; c is the outgoing under-strand.

#include <array>
#include <cctype>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rho1 {

struct PDCode {
  std::vector<std::array<int, 4>> crossings;
  friend bool operator==(const PDCode&, const PDCode&) = default;
};

struct ParseError : std::invalid_argument {
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at position " + std::to_string(pos)), position(pos) {}
  explicit ParseError(const std::string& what)
      : std::invalid_argument(what), position(std::string::npos) {}
  std::size_t position;
};

inline std::string to_string(const PDCode& pd) {
  std::ostringstream out;
  for (std::size_t k = 0; k < pd.crossings.size(); ++k) {
    const auto& x = pd.crossings[k];
    out << (k ? " " : "") << "X[" << x[0] << ',' << x[1] << ',' << x[2] << ',' << x[3] << ']';
  }
  return out.str();
}

/// One walk around a PD knot: the (crossing, slot) pairs at which the strand
/// enters a crossing, in order, starting with the under-passage of crossing 0.
struct PDWalk {
  struct Visit {
    std::size_t crossing;
    int entry_slot;  // 0 (under) or 1/3 (over)
  };
  std::vector<Visit> visits;
};

namespace detail {

struct Occurrence {
  std::size_t crossing;
  int slot;
};

inline std::map<int, std::vector<Occurrence>> arc_occurrences(const PDCode& pd) {
  std::map<int, std::vector<Occurrence>> occ;
  for (std::size_t c = 0; c < pd.crossings.size(); ++c)
    for (int s = 0; s < 4; ++s) occ[pd.crossings[c][s]].push_back({c, s});
  return occ;
}

inline Occurrence other_end(const std::map<int, std::vector<Occurrence>>& occ, int arc,
                            Occurrence here) {
  const auto& v = occ.at(arc);
  return (v[0].crossing == here.crossing && v[0].slot == here.slot) ? v[1] : v[0];
}

}  // namespace detail

/// Walks the knot. Throws ParseError on inconsistent orientation or on links.
inline PDWalk walk_pd(const PDCode& pd) {
  PDWalk walk;
  const std::size_t n = pd.crossings.size();
  if (n == 0) return walk;
  auto occ = detail::arc_occurrences(pd);
  std::vector<std::array<bool, 4>> used(n, {false, false, false, false});
  detail::Occurrence at{0, 0};
  do {
    if (used[at.crossing][at.slot])
      throw ParseError("PD strand revisits crossing " + std::to_string(at.crossing + 1));
    if (at.slot == 2)
      throw ParseError("PD orientation inconsistent at crossing " + std::to_string(at.crossing + 1) +
                       ": under-strand enters through its outgoing slot");
    int exit_slot = (at.slot + 2) % 4;
    used[at.crossing][at.slot] = used[at.crossing][exit_slot] = true;
    walk.visits.push_back({at.crossing, at.slot});
    int arc = pd.crossings[at.crossing][exit_slot];
    at = detail::other_end(occ, arc, {at.crossing, exit_slot});
  } while (!(at.crossing == 0 && at.slot == 0));
  if (walk.visits.size() != 2 * n)
    throw ParseError("PD code is disconnected or describes a link (" +
                     std::to_string(walk.visits.size()) + " of " + std::to_string(2 * n) +
                     " passages reached)");
  return walk;
}

/// Number of faces of the 4-valent map, using the counterclockwise slot order.
inline std::size_t pd_face_count(const PDCode& pd) {
  auto occ = detail::arc_occurrences(pd);
  // A dart is an arc end (crossing, slot) approached from along the arc.
  const std::size_t n = pd.crossings.size();
  std::vector<std::array<bool, 4>> seen(n, {false, false, false, false});
  std::size_t faces = 0;
  for (std::size_t c = 0; c < n; ++c)
    for (int s = 0; s < 4; ++s) {
      if (seen[c][s]) continue;
      ++faces;
      detail::Occurrence at{c, s};
      while (!seen[at.crossing][at.slot]) {
        seen[at.crossing][at.slot] = true;
        // arrive at (crossing, slot), leave through the clockwise-next slot
        int out = (at.slot + 3) % 4;
        int arc = pd.crossings[at.crossing][out];
        at = detail::other_end(occ, arc, {at.crossing, out});
      }
    }
  return faces;
}

/// Checks arc multiplicities, connectivity, orientation and planarity.
inline void validate_pd(const PDCode& pd) {
  std::map<int, int> count;
  for (const auto& x : pd.crossings)
    for (int a : x) {
      if (a <= 0) throw ParseError("PD arc labels must be positive, found " + std::to_string(a));
      ++count[a];
    }
  for (auto [arc, k] : count)
    if (k != 2)
      throw ParseError("PD arc " + std::to_string(arc) + " appears " + std::to_string(k) +
                       " times, expected 2");
  if (pd.crossings.empty()) return;
  walk_pd(pd);
  std::size_t f = pd_face_count(pd);
  if (f != pd.crossings.size() + 2)
    throw ParseError("PD code is not planar (" + std::to_string(f) + " faces, expected " +
                     std::to_string(pd.crossings.size() + 2) + ")");
}

/// Parses `X[a,b,c,d] ...` or `PD[X[...], ...]`.
inline PDCode parse_pd(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ','))
      ++pos;
  };
  auto expect = [&](char ch) {
    skip();
    if (pos >= text.size() || text[pos] != ch)
      throw ParseError(std::string("expected '") + ch + "'", pos);
    ++pos;
  };
  auto number = [&] {
    skip();
    std::size_t begin = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (begin == pos) throw ParseError("expected a positive arc label", begin);
    if (pos - begin > 9) throw ParseError("arc label too large", begin);
    return std::atoi(std::string(text.substr(begin, pos - begin)).c_str());
  };

  PDCode pd;
  skip();
  bool wrapped = false;
  if (text.substr(pos, 2) == "PD") {
    pos += 2;
    expect('[');
    wrapped = true;
  }
  for (;;) {
    skip();
    if (pos >= text.size() || text[pos] == ']') break;
    if (text[pos] != 'X') throw ParseError("expected 'X['", pos);
    ++pos;
    expect('[');
    std::array<int, 4> x{};
    for (int k = 0; k < 4; ++k) x[k] = number();
    expect(']');
    pd.crossings.push_back(x);
  }
  if (wrapped) expect(']');
  skip();
  if (pos != text.size()) throw ParseError("unexpected trailing input", pos);
  validate_pd(pd);
  return pd;
}

/// Parses a DT sequence (signed even integers separated by spaces or commas,
/// optional surrounding brackets or parentheses).
inline std::vector<int> parse_dt_sequence(std::string_view text) {
  std::vector<int> seq;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char ch = text[pos];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',' || ch == '[' || ch == ']' ||
        ch == '(' || ch == ')') {
      ++pos;
      continue;
    }
    std::size_t begin = pos;
    if (ch == '-' || ch == '+') ++pos;
    std::size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (digits == pos) throw ParseError("expected an integer", begin);
    if (pos - digits > 9) throw ParseError("DT entry too large", begin);
    int v = std::atoi(std::string(text.substr(begin, pos - begin)).c_str());
    if (v % 2 != 0) throw ParseError("DT entries must be even, found " + std::to_string(v), begin);
    if (v == 0) throw ParseError("DT entries must be nonzero", begin);
    seq.push_back(v);
  }
  return seq;
}

namespace detail {

/// PD of a DT code for one choice of crossing signs (bit k set = crossing k negative).
/// Passage p (1-based) enters along arc p-1 (arc 2n for p = 1) and leaves along arc p.
inline PDCode dt_candidate(const std::vector<int>& dt, unsigned long signs) {
  const int n = static_cast<int>(dt.size());
  auto in_arc = [&](int p) { return p == 1 ? 2 * n : p - 1; };
  PDCode pd;
  for (int k = 0; k < n; ++k) {
    int odd = 2 * k + 1, even = std::abs(dt[k]);
    // positive entry: the even passage is the under-strand
    int under = dt[k] > 0 ? even : odd, over = dt[k] > 0 ? odd : even;
    bool negative = (signs >> k) & 1UL;
    if (!negative)
      pd.crossings.push_back({in_arc(under), over, under, in_arc(over)});
    else
      pd.crossings.push_back({in_arc(under), in_arc(over), under, over});
  }
  return pd;
}

}  // namespace detail

/// Realizes a DT code as a PD code. Crossing signs are found by searching for
/// the planar choice; the first crossing is taken negative to fix the mirror.
inline PDCode parse_dt(std::string_view text) {
  std::vector<int> dt = parse_dt_sequence(text);
  const std::size_t n = dt.size();
  if (n == 0) return {};
  std::set<int> seen;
  for (int v : dt) {
    int a = std::abs(v);
    if (a > static_cast<int>(2 * n))
      throw ParseError("DT entry " + std::to_string(v) + " exceeds 2n = " + std::to_string(2 * n));
    if (!seen.insert(a).second) throw ParseError("DT entry " + std::to_string(a) + " repeated");
  }
  if (n > 24) throw ParseError("DT codes above 24 crossings are not supported; use PD input");
  for (unsigned long signs = 0; signs < (1UL << (n - 1)); ++signs) {
    PDCode pd = detail::dt_candidate(dt, (signs << 1) | 1UL);
    if (pd_face_count(pd) == n + 2) {
      validate_pd(pd);
      return pd;
    }
  }
  throw ParseError("DT code is not realizable by a planar diagram");
}

}  // namespace rho1

namespace rho1 {

/// PD code of the closure of a braid word (generator k > 0 is sigma_k, k < 0 its
/// inverse; strands numbered 1..strands). Used to generate test corpora.
inline PDCode braid_closure_pd(int strands, const std::vector<int>& word) {
  int fresh = 1;
  std::vector<int> bottom, arcs;
  for (int k = 0; k < strands; ++k) bottom.push_back(fresh++);
  arcs = bottom;
  PDCode pd;
  for (int g : word) {
    int i = std::abs(g) - 1;
    if (g == 0 || i + 1 >= strands) throw ParseError("braid generator out of range");
    int left_in = arcs[i], right_in = arcs[i + 1];
    int left_out = fresh++, right_out = fresh++;
    if (g > 0)  // over strand runs from position i to i+1
      pd.crossings.push_back({right_in, right_out, left_out, left_in});
    else
      pd.crossings.push_back({left_in, right_in, right_out, left_out});
    arcs[i] = left_out;
    arcs[i + 1] = right_out;
  }
  std::map<int, int> rename;
  for (int k = 0; k < strands; ++k) rename[arcs[k]] = bottom[k];
  std::set<int> used;
  for (auto& x : pd.crossings)
    for (int& a : x) {
      if (auto it = rename.find(a); it != rename.end()) a = it->second;
      used.insert(a);
    }
  std::map<int, int> compact;
  for (int a : used) compact[a] = static_cast<int>(compact.size()) + 1;
  for (auto& x : pd.crossings)
    for (int& a : x) a = compact[a];
  return pd;
}

}  // namespace rho1

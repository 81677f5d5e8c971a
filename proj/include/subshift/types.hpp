#pragma once

// Finite forbidden-pattern presentations of multidimensional subshifts:
// alphabets, patterns, SFT definitions, letter maps, and the validators
// shared by every construction in the library.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"

namespace subshift {

using letter_t = std::int32_t;

struct Alphabet {
    std::vector<std::string> letters;  // ids are positions

    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names) : letters(std::move(names)) {}

    int size() const { return static_cast<int>(letters.size()); }

    letter_t id(const std::string& name) const {
        for (size_t i = 0; i < letters.size(); ++i)
            if (letters[i] == name) return static_cast<letter_t>(i);
        throw error("unknown letter: " + name);
    }
    const std::string& name(letter_t id) const { return letters.at(static_cast<size_t>(id)); }

    bool operator==(const Alphabet& o) const { return letters == o.letters; }
};

struct Coord {
    int x = 0;
    int y = 0;
    auto operator<=>(const Coord&) const = default;
};

// Finite pattern: letters on a finite support. Kept sorted by coordinate so
// equality and serialization are canonical.
struct Pattern {
    std::vector<std::pair<Coord, letter_t>> cells;

    Pattern() = default;
    Pattern(std::initializer_list<std::pair<Coord, letter_t>> c) : cells(c) { normalize_order(); }
    explicit Pattern(std::vector<std::pair<Coord, letter_t>> c) : cells(std::move(c)) { normalize_order(); }

    void normalize_order() { std::sort(cells.begin(), cells.end()); }

    bool empty() const { return cells.empty(); }

    int min_x() const { return minmax(true, true); }
    int max_x() const { return minmax(true, false); }
    int min_y() const { return minmax(false, true); }
    int max_y() const { return minmax(false, false); }
    int width() const { return max_x() - min_x() + 1; }
    int height() const { return max_y() - min_y() + 1; }

    // Translate so the minimal coordinates are (0, 0).
    Pattern anchored() const {
        Pattern p = *this;
        int dx = min_x(), dy = min_y();
        for (auto& [c, l] : p.cells) { c.x -= dx; c.y -= dy; }
        p.normalize_order();
        return p;
    }

    auto operator<=>(const Pattern&) const = default;

  private:
    int minmax(bool use_x, bool want_min) const {
        if (cells.empty()) throw error("empty pattern has no extent");
        int v = use_x ? cells[0].first.x : cells[0].first.y;
        for (auto& [c, l] : cells) {
            int w = use_x ? c.x : c.y;
            v = want_min ? std::min(v, w) : std::max(v, w);
        }
        return v;
    }
};

struct SftDef {
    int dimension = 2;
    Alphabet alphabet;
    std::vector<Pattern> forbidden;
};

// Letter-to-letter maps are the workhorse; radius-r maps are representable
// but the measurement pipeline expects letter_to_letter (precompose a
// higher-block recoding to reduce the general case).
struct FactorMap {
    Alphabet source;
    Alphabet target;
    bool letter_to_letter = true;
    std::vector<letter_t> table;  // source id -> target id when letter_to_letter

    static FactorMap identity(const Alphabet& a) {
        FactorMap f;
        f.source = a;
        f.target = a;
        f.table.resize(static_cast<size_t>(a.size()));
        for (letter_t i = 0; i < a.size(); ++i) f.table[static_cast<size_t>(i)] = i;
        return f;
    }

    static FactorMap from_table(const Alphabet& src, const Alphabet& dst, std::vector<letter_t> tab) {
        FactorMap f;
        f.source = src;
        f.target = dst;
        f.table = std::move(tab);
        if (f.table.size() != static_cast<size_t>(src.size()))
            throw error("factor table size mismatch");
        return f;
    }

    letter_t apply(letter_t src_id) const { return table.at(static_cast<size_t>(src_id)); }
};

struct Basis2D {
    std::array<int, 2> u1{1, 0};
    std::array<int, 2> u2{0, 1};

    int determinant() const { return u1[0] * u2[1] - u1[1] * u2[0]; }
    bool unimodular() const { int d = determinant(); return d == 1 || d == -1; }
};

struct Diagnostic {
    std::string invariant;
    int pattern_index = -1;  // offending pattern, -1 when not pattern-specific
    std::string detail;
};

inline std::vector<Diagnostic> validate_sft(const SftDef& sft) {
    std::vector<Diagnostic> out;
    if (sft.alphabet.size() < 1)
        out.push_back({"alphabet non-empty", -1, "alphabet has no letters"});
    {
        std::set<std::string> seen;
        for (auto& n : sft.alphabet.letters)
            if (!seen.insert(n).second)
                out.push_back({"letter names unique", -1, "duplicate letter: " + n});
    }
    if (sft.dimension < 1)
        out.push_back({"dimension >= 1", -1, "dimension " + std::to_string(sft.dimension)});
    for (size_t i = 0; i < sft.forbidden.size(); ++i) {
        const Pattern& p = sft.forbidden[i];
        if (p.empty()) {
            out.push_back({"pattern support non-empty", static_cast<int>(i), "empty support"});
            continue;
        }
        std::set<Coord> support;
        for (auto& [c, l] : p.cells) {
            if (!support.insert(c).second)
                out.push_back({"letters defined exactly on support", static_cast<int>(i),
                               "duplicate cell (" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"});
            if (l < 0 || l >= sft.alphabet.size())
                out.push_back({"letter out of range", static_cast<int>(i),
                               "letter id " + std::to_string(l)});
        }
    }
    return out;
}

inline void require_valid(const SftDef& sft, const std::string& who) {
    auto diags = validate_sft(sft);
    if (!diags.empty())
        throw validation_error(who + ": " + diags.front().invariant + " — " + diags.front().detail);
}

// Finite rectangular letter array, row-major; rows[y][x], y increasing upward.
struct Grid2D {
    int width = 0;
    int height = 0;
    std::vector<letter_t> cells;

    Grid2D() = default;
    Grid2D(int w, int h, letter_t fill = 0) : width(w), height(h), cells(static_cast<size_t>(w) * h, fill) {}

    letter_t& at(int x, int y) { return cells[static_cast<size_t>(y) * width + x]; }
    letter_t at(int x, int y) const { return cells[static_cast<size_t>(y) * width + x]; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
};

struct Violation {
    int pattern_index;
    Coord position;  // translation applied to the anchored pattern
};

// Every placement of every forbidden pattern inside the array is tested.
inline std::vector<Violation> check_pattern_free(const Grid2D& grid, const SftDef& sft) {
    std::vector<Violation> out;
    for (size_t pi = 0; pi < sft.forbidden.size(); ++pi) {
        Pattern p = sft.forbidden[pi].anchored();
        int pw = p.width(), ph = p.height();
        if (pw > grid.width || ph > grid.height) continue;
        for (int oy = 0; oy + ph <= grid.height; ++oy) {
            for (int ox = 0; ox + pw <= grid.width; ++ox) {
                bool match = true;
                for (auto& [c, l] : p.cells) {
                    if (grid.at(ox + c.x, oy + c.y) != l) { match = false; break; }
                }
                if (match) out.push_back({static_cast<int>(pi), {ox, oy}});
            }
        }
    }
    return out;
}

inline std::string word_to_string(const Alphabet& a, const std::vector<letter_t>& w) {
    std::string s;
    bool multi = false;
    for (auto& n : a.letters)
        if (n.size() != 1) multi = true;
    for (size_t i = 0; i < w.size(); ++i) {
        if (multi && i) s += ' ';
        s += a.name(w[i]);
    }
    return s;
}

inline std::vector<letter_t> string_to_word(const Alphabet& a, const std::string& s) {
    std::vector<letter_t> w;
    bool multi = false;
    for (auto& n : a.letters)
        if (n.size() != 1) multi = true;
    if (!multi) {
        for (char c : s) w.push_back(a.id(std::string(1, c)));
    } else {
        std::string cur;
        for (char c : s) {
            if (c == ' ') {
                if (!cur.empty()) w.push_back(a.id(cur));
                cur.clear();
            } else cur += c;
        }
        if (!cur.empty()) w.push_back(a.id(cur));
    }
    return w;
}

}  // namespace subshift

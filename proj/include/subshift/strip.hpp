#pragma once

// Width-n approximation strips of a 2D SFT, their transfer graphs, and
// language enumeration of the projected central row.
//
// The strip of half-height n is the 1D SFT over columns of height 2n+1; it
// is presented as a de Bruijn graph on r-tuples of columns, where r is the
// maximal horizontal extent of the forbidden patterns. Since every pattern
// fits inside an r-window, edges are pure (r-1)-overlaps.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "types.hpp"

namespace subshift {

struct Column {
    std::vector<letter_t> letters;  // index 0 = offset -n, index 2n = offset +n
    auto operator<=>(const Column&) const = default;
};

struct LanguageSet {
    int k = 0;
    std::vector<std::vector<letter_t>> words;  // sorted, unique
    bool upper_approximation = false;  // set when derived from a truncated forbidden list

    bool contains(const std::vector<letter_t>& w) const {
        return std::binary_search(words.begin(), words.end(), w);
    }
    bool operator==(const LanguageSet& o) const { return k == o.k && words == o.words; }
};

struct StripGraph {
    SftDef sft;
    int n = 0;        // half-height; strip rows span [-n, n]
    int r = 1;        // window width
    int height = 1;   // 2n+1
    std::vector<Column> columns;                 // deduped, lexicographic ids
    std::vector<std::vector<std::int32_t>> vertices;  // r-tuples of column ids, sorted
    std::vector<std::vector<std::int32_t>> out;       // adjacency by vertex id
    std::vector<std::int32_t> in_degree;
    bool trimmed = false;

    letter_t central_letter(std::int32_t column_id) const {
        return columns[static_cast<size_t>(column_id)].letters[static_cast<size_t>(n)];
    }
    // Label of an edge into `target`: the newly exposed column is the last one.
    std::int32_t new_column(std::int32_t target_vertex) const {
        return vertices[static_cast<size_t>(target_vertex)].back();
    }
    std::uint64_t edge_count() const {
        std::uint64_t e = 0;
        for (auto& a : out) e += a.size();
        return e;
    }
};

namespace detail {

struct PreparedPattern {
    Pattern anchored;
    int w = 0;
    int h = 0;
};

inline std::vector<PreparedPattern> prepare_patterns(const SftDef& sft, int height) {
    std::vector<PreparedPattern> out;
    for (const Pattern& p : sft.forbidden) {
        PreparedPattern pp{p.anchored(), 0, 0};
        pp.w = pp.anchored.width();
        pp.h = pp.anchored.height();
        if (pp.h > height) continue;  // cannot occur inside the strip
        out.push_back(std::move(pp));
    }
    return out;
}

// Rows are w-tuples of letters; the DFS keeps the last (maxh-1) rows and
// checks every pattern placement whose top row is the freshly added row.
struct WindowEnumerator {
    const SftDef& sft;
    int w;
    int height;
    std::vector<PreparedPattern> pats;
    int maxh = 1;
    std::uint64_t budget;
    std::vector<std::vector<letter_t>> result;  // flat windows, column-major: col*height + y

    WindowEnumerator(const SftDef& s, int w, int height, std::uint64_t budget)
        : sft(s), w(w), height(height), pats(prepare_patterns(s, height)), budget(budget) {
        for (auto& p : pats) maxh = std::max(maxh, p.h);
    }

    void run() {
        std::vector<letter_t> rows;  // row-major scratch: rows[y*w + x]
        rows.assign(static_cast<size_t>(height) * w, 0);
        extend(rows, 0);
    }

  private:
    bool placements_ok(const std::vector<letter_t>& rows, int top_row) const {
        for (const auto& pp : pats) {
            if (pp.w > w) continue;
            int oy = top_row - pp.h + 1;
            if (oy < 0) continue;
            for (int ox = 0; ox + pp.w <= w; ++ox) {
                bool match = true;
                for (auto& [c, l] : pp.anchored.cells) {
                    if (rows[static_cast<size_t>(oy + c.y) * w + (ox + c.x)] != l) { match = false; break; }
                }
                if (match) return false;
            }
        }
        return true;
    }

    void extend(std::vector<letter_t>& rows, int y) {
        if (y == height) {
            if (result.size() >= budget)
                throw budget_error("strip budget exceeded", result.size() + 1, budget);
            std::vector<letter_t> flat(static_cast<size_t>(w) * height);
            for (int x = 0; x < w; ++x)
                for (int yy = 0; yy < height; ++yy)
                    flat[static_cast<size_t>(x) * height + yy] = rows[static_cast<size_t>(yy) * w + x];
            result.push_back(std::move(flat));
            return;
        }
        fill_row(rows, y, 0);
    }

    void fill_row(std::vector<letter_t>& rows, int y, int x) {
        if (x == w) {
            if (!placements_ok(rows, y)) return;
            extend(rows, y + 1);
            return;
        }
        for (letter_t l = 0; l < sft.alphabet.size(); ++l) {
            rows[static_cast<size_t>(y) * w + x] = l;
            // cheap incremental prune: patterns lying fully in filled area with
            // right edge at x and top row at y
            if (row_prefix_ok(rows, y, x)) fill_row(rows, y, x + 1);
        }
        rows[static_cast<size_t>(y) * w + x] = 0;
    }

    bool row_prefix_ok(const std::vector<letter_t>& rows, int y, int x) const {
        for (const auto& pp : pats) {
            if (pp.w > x + 1 || pp.h > y + 1) continue;
            int ox = x - pp.w + 1, oy = y - pp.h + 1;
            bool match = true;
            for (auto& [c, l] : pp.anchored.cells) {
                if (rows[static_cast<size_t>(oy + c.y) * w + (ox + c.x)] != l) { match = false; break; }
            }
            if (match) return false;
        }
        return true;
    }
};

struct VecHash {
    size_t operator()(const std::vector<std::int32_t>& v) const {
        size_t h = 1469598103934665603ull;
        for (auto x : v) { h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull; h *= 1099511628211ull; }
        return h;
    }
};

}  // namespace detail

inline int window_width(const SftDef& sft) {
    int r = 1;
    for (const Pattern& p : sft.forbidden) r = std::max(r, p.width());
    return r;
}

// Untrimmed transfer graph of the width-n strip.
inline StripGraph build_strip(const SftDef& sft, int n) {
    require_valid(sft, "build_strip");
    if (sft.dimension != 2) throw error("build_strip: dimension 2 required");

    StripGraph g;
    g.sft = sft;
    g.n = n;
    g.height = 2 * n + 1;
    g.r = window_width(sft);

    const auto& budget = budgets::global();
    detail::WindowEnumerator we(sft, g.r, g.height, budget.max_vertices);
    we.run();

    // Dedupe columns, translate windows to column-id tuples.
    std::map<Column, std::int32_t> colid;
    std::vector<std::vector<std::int32_t>> winids;
    winids.reserve(we.result.size());
    for (auto& flat : we.result) {
        std::vector<std::int32_t> ids(static_cast<size_t>(g.r));
        for (int c = 0; c < g.r; ++c) {
            Column col;
            col.letters.assign(flat.begin() + static_cast<size_t>(c) * g.height,
                               flat.begin() + static_cast<size_t>(c + 1) * g.height);
            auto [it, fresh] = colid.emplace(std::move(col), 0);
            if (fresh) it->second = -1;  // placeholder, renumber below
            ids[static_cast<size_t>(c)] = 0;
        }
        winids.push_back(std::move(ids));
    }
    {
        std::int32_t next = 0;
        for (auto& [col, id] : colid) id = next++;
        g.columns.reserve(colid.size());
        for (auto& [col, id] : colid) g.columns.push_back(col);
        // second pass now that ids are final
        size_t wi = 0;
        for (auto& flat : we.result) {
            for (int c = 0; c < g.r; ++c) {
                Column col;
                col.letters.assign(flat.begin() + static_cast<size_t>(c) * g.height,
                                   flat.begin() + static_cast<size_t>(c + 1) * g.height);
                winids[wi][static_cast<size_t>(c)] = colid.at(col);
            }
            ++wi;
        }
    }
    std::sort(winids.begin(), winids.end());
    winids.erase(std::unique(winids.begin(), winids.end()), winids.end());
    g.vertices = std::move(winids);

    // Edges: (r-1)-overlap. Group vertices by prefix key.
    std::unordered_map<std::vector<std::int32_t>, std::vector<std::int32_t>, detail::VecHash> by_prefix;
    for (std::int32_t v = 0; v < static_cast<std::int32_t>(g.vertices.size()); ++v) {
        std::vector<std::int32_t> pre(g.vertices[static_cast<size_t>(v)].begin(),
                                      g.vertices[static_cast<size_t>(v)].end() - 1);
        by_prefix[pre].push_back(v);
    }
    g.out.assign(g.vertices.size(), {});
    g.in_degree.assign(g.vertices.size(), 0);
    for (std::int32_t v = 0; v < static_cast<std::int32_t>(g.vertices.size()); ++v) {
        std::vector<std::int32_t> suf(g.vertices[static_cast<size_t>(v)].begin() + 1,
                                      g.vertices[static_cast<size_t>(v)].end());
        auto it = by_prefix.find(suf);
        if (it == by_prefix.end()) continue;
        g.out[static_cast<size_t>(v)] = it->second;  // already sorted (vertex ids ascend)
        for (auto t : it->second) g.in_degree[static_cast<size_t>(t)]++;
    }
    return g;
}

// Fixpoint of deleting vertices with in-degree 0 or out-degree 0. The result's
// k-edge path labels equal the length-k language of the strip subshift.
inline StripGraph trim_essential(const StripGraph& g0) {
    StripGraph g = g0;
    size_t nv = g.vertices.size();
    std::vector<char> dead(nv, 0);
    std::vector<std::int32_t> outdeg(nv), indeg(nv);
    for (size_t v = 0; v < nv; ++v) outdeg[v] = static_cast<std::int32_t>(g.out[v].size());
    indeg.assign(g.in_degree.begin(), g.in_degree.end());

    // reverse adjacency for peeling
    std::vector<std::vector<std::int32_t>> rin(nv);
    for (size_t v = 0; v < nv; ++v)
        for (auto t : g.out[v]) rin[static_cast<size_t>(t)].push_back(static_cast<std::int32_t>(v));

    std::vector<std::int32_t> stack;
    for (size_t v = 0; v < nv; ++v)
        if (outdeg[v] == 0 || indeg[v] == 0) { dead[v] = 1; stack.push_back(static_cast<std::int32_t>(v)); }
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto t : g.out[static_cast<size_t>(v)]) {
            if (dead[static_cast<size_t>(t)]) continue;
            if (--indeg[static_cast<size_t>(t)] == 0) { dead[static_cast<size_t>(t)] = 1; stack.push_back(t); }
        }
        for (auto s : rin[static_cast<size_t>(v)]) {
            if (dead[static_cast<size_t>(s)]) continue;
            if (--outdeg[static_cast<size_t>(s)] == 0) { dead[static_cast<size_t>(s)] = 1; stack.push_back(s); }
        }
    }

    std::vector<std::int32_t> remap(nv, -1);
    StripGraph t;
    t.sft = g.sft;
    t.n = g.n;
    t.r = g.r;
    t.height = g.height;
    t.columns = g.columns;
    t.trimmed = true;
    for (size_t v = 0; v < nv; ++v) {
        if (dead[v]) continue;
        remap[v] = static_cast<std::int32_t>(t.vertices.size());
        t.vertices.push_back(g.vertices[v]);
    }
    t.out.assign(t.vertices.size(), {});
    t.in_degree.assign(t.vertices.size(), 0);
    for (size_t v = 0; v < nv; ++v) {
        if (dead[v]) continue;
        for (auto tgt : g.out[v]) {
            if (dead[static_cast<size_t>(tgt)]) continue;
            t.out[static_cast<size_t>(remap[v])].push_back(remap[static_cast<size_t>(tgt)]);
            t.in_degree[static_cast<size_t>(remap[static_cast<size_t>(tgt)])]++;
        }
    }
    return t;
}

// All length-k words spelled by k-edge paths of the trimmed graph, projected
// through a letter-to-letter factor. Canonically ordered; independent of
// traversal order by construction.
inline LanguageSet strip_language(const StripGraph& g, const FactorMap& factor, int k) {
    if (!g.trimmed) throw error("strip_language: graph must be trimmed first");
    if (!factor.letter_to_letter) throw error("strip_language: letter-to-letter factor required");
    LanguageSet out;
    out.k = k;
    if (g.vertices.empty()) return out;
    const auto& budget = budgets::global();

    // prefix word -> set of reachable vertices
    std::map<std::vector<letter_t>, std::vector<std::int32_t>> layer;
    {
        std::vector<std::int32_t> all(g.vertices.size());
        for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::int32_t>(i);
        layer.emplace(std::vector<letter_t>{}, std::move(all));
    }
    for (int step = 0; step < k; ++step) {
        std::map<std::vector<letter_t>, std::vector<std::int32_t>> next;
        for (auto& [word, verts] : layer) {
            std::map<letter_t, std::vector<std::int32_t>> by_label;
            for (auto v : verts)
                for (auto tgt : g.out[static_cast<size_t>(v)])
                    by_label[factor.apply(g.central_letter(g.new_column(tgt)))].push_back(tgt);
            for (auto& [l, tgts] : by_label) {
                std::sort(tgts.begin(), tgts.end());
                tgts.erase(std::unique(tgts.begin(), tgts.end()), tgts.end());
                auto w = word;
                w.push_back(l);
                auto [it, fresh] = next.emplace(std::move(w), std::move(tgts));
                if (!fresh) {
                    auto& dst = it->second;
                    auto merged = dst;
                    merged.insert(merged.end(), tgts.begin(), tgts.end());
                    std::sort(merged.begin(), merged.end());
                    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
                    dst = std::move(merged);
                }
            }
            if (next.size() > budget.max_language)
                throw budget_error("language budget exceeded", next.size(), budget.max_language);
        }
        layer = std::move(next);
    }
    out.words.reserve(layer.size());
    for (auto& [word, verts] : layer) out.words.push_back(word);
    return out;
}

// k-scoped deterministic word classifier used for membership products when
// languages are too large to materialize. `accept_at_k` is evaluated only on
// states reached after exactly k letters.
struct WordDfa {
    int letters = 0;
    std::vector<std::vector<std::int32_t>> delta;  // state -> letter -> state
    std::vector<char> accept_at_k;
    std::int32_t start = 0;

    std::int32_t step(std::int32_t s, letter_t l) const {
        return delta[static_cast<size_t>(s)][static_cast<size_t>(l)];
    }
    bool accepts(const std::vector<letter_t>& w) const {
        std::int32_t s = start;
        for (auto l : w) s = step(s, l);
        return accept_at_k[static_cast<size_t>(s)] != 0;
    }
};

// Lexicographically smallest length-k word realized by the strip but rejected
// by the classifier; nullopt when the strip language is contained in it.
inline std::optional<std::vector<letter_t>> strip_word_outside(
    const StripGraph& g, const FactorMap& factor, const WordDfa& dfa, int k) {
    if (!g.trimmed) throw error("strip_word_outside: graph must be trimmed first");
    if (g.vertices.empty()) return std::nullopt;

    // can a rejecting state be reached from s in exactly d letters?
    size_t ns = dfa.delta.size();
    std::vector<std::vector<char>> can_reject(static_cast<size_t>(k) + 1, std::vector<char>(ns, 0));
    for (size_t s = 0; s < ns; ++s) can_reject[static_cast<size_t>(k)][s] = !dfa.accept_at_k[s];
    for (int d = k - 1; d >= 0; --d)
        for (size_t s = 0; s < ns; ++s)
            for (int l = 0; l < dfa.letters && !can_reject[static_cast<size_t>(d)][s]; ++l)
                if (can_reject[static_cast<size_t>(d) + 1][static_cast<size_t>(dfa.delta[s][static_cast<size_t>(l)])])
                    can_reject[static_cast<size_t>(d)][s] = 1;
    if (!can_reject[0][static_cast<size_t>(dfa.start)]) return std::nullopt;

    std::vector<letter_t> word;
    std::vector<std::int32_t> verts(g.vertices.size());
    for (size_t i = 0; i < verts.size(); ++i) verts[i] = static_cast<std::int32_t>(i);

    std::function<bool(std::int32_t, std::vector<std::int32_t>&, int)> dfs =
        [&](std::int32_t state, std::vector<std::int32_t>& vs, int depth) -> bool {
        if (depth == k) return !dfa.accept_at_k[static_cast<size_t>(state)];
        std::map<letter_t, std::vector<std::int32_t>> by_label;
        for (auto v : vs)
            for (auto tgt : g.out[static_cast<size_t>(v)])
                by_label[factor.apply(g.central_letter(g.new_column(tgt)))].push_back(tgt);
        for (auto& [l, tgts] : by_label) {
            auto s2 = dfa.step(state, l);
            if (!can_reject[static_cast<size_t>(depth) + 1][static_cast<size_t>(s2)]) continue;
            std::sort(tgts.begin(), tgts.end());
            tgts.erase(std::unique(tgts.begin(), tgts.end()), tgts.end());
            word.push_back(l);
            if (dfs(s2, tgts, depth + 1)) return true;
            word.pop_back();
        }
        return false;
    };
    if (dfs(dfa.start, verts, 0)) return word;
    return std::nullopt;
}

}  // namespace subshift

#pragma once

#include <array>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bientropy/bitstring.hpp"
#include "bientropy/entropy.hpp"
#include "bientropy/errors.hpp"
#include "bientropy/stats.hpp"

namespace bientropy {

/// 7x5 dot-matrix glyph; cells[row][col], row 0 at the top.
struct GlyphGrid {
    std::string name;
    std::array<std::array<std::uint8_t, 5>, 7> cells{};
};

enum class Orientation { horizontal, vertical };

inline const char* to_string(Orientation o) {
    return o == Orientation::horizontal ? "horizontal" : "vertical";
}

/// 35-bit raster scan. Horizontal reads rows top-to-bottom, each left-to-right;
/// vertical reads columns left-to-right, each top-to-bottom.
inline BitString raster(const GlyphGrid& g, Orientation o) {
    BitString s(35);
    std::size_t i = 0;
    if (o == Orientation::horizontal) {
        for (std::size_t r = 0; r < 7; ++r)
            for (std::size_t c = 0; c < 5; ++c) s.set_bit(i++, g.cells[r][c] != 0);
    } else {
        for (std::size_t c = 0; c < 5; ++c)
            for (std::size_t r = 0; r < 7; ++r) s.set_bit(i++, g.cells[r][c] != 0);
    }
    return s;
}

/// Parses a glyph file: per glyph a "name: LABEL" line followed by 7 rows of
/// 5 characters from {0,1,.,#} ('.' = 0, '#' = 1); glyphs separated by blank
/// lines. Names must be unique.
inline std::vector<GlyphGrid> parse_glyph_file(std::string_view text) {
    std::vector<GlyphGrid> out;
    std::set<std::string> seen;

    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (end == text.size()) break;
        pos = end + 1;
    }

    auto is_blank = [](std::string_view l) {
        return l.find_first_not_of(" \t") == std::string_view::npos;
    };

    std::size_t li = 0;
    while (li < lines.size()) {
        if (is_blank(lines[li])) {
            ++li;
            continue;
        }
        std::string_view header = lines[li];
        if (header.substr(0, 5) != "name:")
            throw DataError("glyph block must start with a 'name:' line, got: " +
                            std::string(header));
        GlyphGrid g;
        std::string_view label = header.substr(5);
        while (!label.empty() && (label.front() == ' ' || label.front() == '\t'))
            label.remove_prefix(1);
        while (!label.empty() && (label.back() == ' ' || label.back() == '\t'))
            label.remove_suffix(1);
        if (label.empty()) throw DataError("glyph with empty name");
        g.name = std::string(label);
        if (!seen.insert(g.name).second) throw DataError("duplicate glyph name: " + g.name);
        ++li;

        std::size_t row = 0;
        while (row < 7) {
            if (li >= lines.size() || is_blank(lines[li]))
                throw DataError("glyph '" + g.name + "': expected 7 rows, got " +
                                std::to_string(row));
            std::string_view rl = lines[li];
            if (rl.size() != 5)
                throw DataError("glyph '" + g.name + "' row " + std::to_string(row + 1) +
                                ": expected 5 cells, got " + std::to_string(rl.size()));
            for (std::size_t c = 0; c < 5; ++c) {
                const char ch = rl[c];
                if (ch == '1' || ch == '#')
                    g.cells[row][c] = 1;
                else if (ch == '0' || ch == '.')
                    g.cells[row][c] = 0;
                else
                    throw DataError("glyph '" + g.name + "': invalid cell character '" +
                                    std::string(1, ch) + "'");
            }
            ++row;
            ++li;
        }
        if (li < lines.size() && !is_blank(lines[li]))
            throw DataError("glyph '" + g.name + "': more than 7 rows");
        out.push_back(std::move(g));
    }
    if (out.empty()) throw DataError("glyph file contains no glyphs");
    return out;
}

/// Renders glyphs back to the file format ('.'/'#' cells).
inline std::string render_glyph_file(std::span<const GlyphGrid> glyphs) {
    std::string out;
    for (const auto& g : glyphs) {
        out += "name: " + g.name + "\n";
        for (const auto& row : g.cells) {
            for (std::uint8_t c : row) out += c ? '#' : '.';
            out += '\n';
        }
        out += '\n';
    }
    return out;
}

struct CharsetReport {
    Orientation orientation = Orientation::horizontal;
    Metric metric = Metric::bien;
    std::vector<std::pair<std::string, double>> scores;  // per glyph, file order
    SampleStats stats;
};

/// Per-glyph scores under one scan orientation and metric, with set statistics.
inline CharsetReport charset_report(std::span<const GlyphGrid> glyphs, Orientation orientation,
                                    Metric metric) {
    if (glyphs.empty()) throw std::invalid_argument("charset_report: empty glyph list");
    CharsetReport rep;
    rep.orientation = orientation;
    rep.metric = metric;
    std::vector<double> values;
    values.reserve(glyphs.size());
    for (const auto& g : glyphs) {
        const double v = score(raster(g, orientation), metric);
        rep.scores.emplace_back(g.name, v);
        values.push_back(v);
    }
    rep.stats = summarize(values);
    return rep;
}

}  // namespace bientropy

#include "pda/format.hpp"

#include <charconv>
#include <optional>
#include <sstream>
#include <vector>

namespace pda {

std::string render(const Grid& g) {
    std::string out = "#PDA v1\n";
    const auto z = g.column_star_count();
    out += "K=" + std::to_string(g.cols()) + " F=" + std::to_string(g.rows()) +
           " Z=" + (z ? std::to_string(*z) : std::string("-")) + " S=" + std::to_string(g.s_bound()) +
           "\n";
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c) {
            if (c > 0) {
                out += ' ';
            }
            const Cell cell = g.at(r, c);
            out += cell.is_star() ? std::string("*") : std::to_string(cell.value());
        }
        out += '\n';
    }
    return out;
}

namespace {

std::size_t parse_count(std::string_view tok, std::string_view what) {
    std::size_t v = 0;
    const auto* end = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (tok.empty() || ec != std::errc{} || ptr != end) {
        throw ParseError("bad " + std::string(what) + " value '" + std::string(tok) + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> toks;
    for (std::string t; is >> t;) {
        toks.push_back(t);
    }
    return toks;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

Grid parse(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || split(line) != std::vector<std::string>{"#PDA", "v1"}) {
        throw ParseError("missing '#PDA v1' header");
    }
    if (!std::getline(in, line)) {
        throw ParseError("missing parameter line");
    }
    const auto fields = split(line);
    if (fields.size() != 4) {
        throw ParseError("parameter line must be 'K=<int> F=<int> Z=<int|-> S=<int>'");
    }
    const char* names[] = {"K=", "F=", "Z=", "S="};
    for (std::size_t i = 0; i < 4; ++i) {
        if (fields[i].rfind(names[i], 0) != 0) {
            throw ParseError("expected field " + std::string(names[i]) + " in parameter line");
        }
    }
    const std::size_t k = parse_count(std::string_view(fields[0]).substr(2), "K");
    const std::size_t f = parse_count(std::string_view(fields[1]).substr(2), "F");
    const std::string_view z_text = std::string_view(fields[2]).substr(2);
    std::optional<std::size_t> z;
    if (z_text != "-") {
        z = parse_count(z_text, "Z");
    }
    const std::size_t s = parse_count(std::string_view(fields[3]).substr(2), "S");
    if (f == 0) {
        throw ParseError("F must be at least 1");
    }

    std::vector<Cell> cells;
    cells.reserve(f * k);
    std::size_t rows_read = 0;
    while (std::getline(in, line)) {
        if (blank(line)) {
            continue;
        }
        if (rows_read == f) {
            throw ParseError("more than F=" + std::to_string(f) + " rows");
        }
        const auto toks = split(line);
        if (toks.size() != k) {
            throw ParseError("row " + std::to_string(rows_read) + " has " +
                             std::to_string(toks.size()) + " tokens, expected " + std::to_string(k));
        }
        for (const auto& t : toks) {
            if (t == "*") {
                cells.push_back(kStar);
                continue;
            }
            const std::size_t v = parse_count(t, "symbol");
            if (v >= s) {
                throw ParseError("symbol " + t + " outside [0," + std::to_string(s) + ")");
            }
            cells.push_back(Cell::symbol(static_cast<Symbol>(v)));
        }
        ++rows_read;
    }
    if (k > 0 && rows_read != f) {
        throw ParseError("expected " + std::to_string(f) + " rows, found " + std::to_string(rows_read));
    }

    Grid g(f, k, s, std::move(cells));
    if (z) {
        if (*z > f) {
            throw ParseError("Z=" + std::to_string(*z) + " exceeds F=" + std::to_string(f));
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (g.stars_in_column(c) != *z) {
                throw ParseError("column " + std::to_string(c) + " has " +
                                 std::to_string(g.stars_in_column(c)) + " stars, header says Z=" +
                                 std::to_string(*z));
            }
        }
    }
    return g;
}

Grid parse(std::string_view text) {
    std::istringstream is{std::string(text)};
    return parse(is);
}

nlohmann::json to_json(const Grid& g) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < g.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (const Cell c : g.row(r)) {
            if (c.is_star()) {
                row.push_back("*");
            } else {
                row.push_back(c.value());
            }
        }
        rows.push_back(std::move(row));
    }
    const auto z = g.column_star_count();
    return {{"k", g.cols()},
            {"f", g.rows()},
            {"z", z ? nlohmann::json(*z) : nlohmann::json(nullptr)},
            {"s", g.s_bound()},
            {"rows", std::move(rows)}};
}

Grid from_json(const nlohmann::json& j) {
    try {
        const auto k = j.at("k").get<std::size_t>();
        const auto f = j.at("f").get<std::size_t>();
        const auto s = j.at("s").get<std::size_t>();
        const auto& rows = j.at("rows");
        if (f == 0 || rows.size() != f) {
            throw ParseError("rows length must equal f >= 1");
        }
        std::vector<Cell> cells;
        for (const auto& row : rows) {
            if (row.size() != k) {
                throw ParseError("row length must equal k");
            }
            for (const auto& v : row) {
                if (v.is_string() && v.get<std::string>() == "*") {
                    cells.push_back(kStar);
                } else if (v.is_number_unsigned() && v.get<std::size_t>() < s) {
                    cells.push_back(Cell::symbol(v.get<Symbol>()));
                } else {
                    throw ParseError("cell must be \"*\" or a symbol in [0,s): " + v.dump());
                }
            }
        }
        Grid g(f, k, s, std::move(cells));
        if (j.contains("z") && !j.at("z").is_null()) {
            const auto z = j.at("z").get<std::size_t>();
            for (std::size_t c = 0; c < k; ++c) {
                if (g.stars_in_column(c) != z) {
                    throw ParseError("column " + std::to_string(c) + " does not have z stars");
                }
            }
        }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed PDA json: ") + e.what());
    }
}

}  // namespace pda

#include "pda/verify.hpp"

#include <sstream>

namespace pda {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string describe(const Violation& v) {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const RowRepeat& r) {
                       os << "RowRepeat(row " << r.row << ", symbol " << r.symbol << ", cols "
                          << r.col1 << "," << r.col2 << ")";
                   },
                   [&](const ColRepeat& c) {
                       os << "ColRepeat(col " << c.col << ", symbol " << c.symbol << ", rows "
                          << c.row1 << "," << c.row2 << ")";
                   },
                   [&](const CornerViolation& c) {
                       os << "CornerViolation(symbol " << c.symbol << ", (" << c.cell_a.first
                          << "," << c.cell_a.second << "), (" << c.cell_b.first << ","
                          << c.cell_b.second << "), corner (" << c.offending_corner.first << ","
                          << c.offending_corner.second << "))";
                   },
                   [&](const StarCountMismatch& s) {
                       os << "StarCountMismatch(col " << s.col << ", found " << s.found
                          << ", expected " << s.expected << ")";
                   },
               },
               v);
    return os.str();
}

VerificationReport verify(const Grid& grid, std::optional<std::size_t> expected_z) {
    VerificationReport report;
    const std::size_t rows = grid.rows();
    const std::size_t cols = grid.cols();
    const std::size_t s = grid.s_bound();

    std::vector<std::vector<CellPos>> occurrences(s);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const Cell cell = grid.at(r, c);
            if (cell.is_symbol()) {
                occurrences[cell.value()].emplace_back(r, c);
            }
        }
    }

    report.multiplicity.resize(s);
    report.missing_rows.resize(s);
    for (Symbol x = 0; x < s; ++x) {
        const auto& occ = occurrences[x];
        report.multiplicity[x] = occ.size();
        std::vector<bool> present(rows, false);
        for (const auto& [r, c] : occ) {
            present[r] = true;
        }
        for (std::size_t r = 0; r < rows; ++r) {
            if (!present[r]) {
                report.missing_rows[x].push_back(r);
            }
        }

        // Occurrences are in row-major order, so a.first <= b.first.
        for (std::size_t i = 0; i < occ.size(); ++i) {
            for (std::size_t j = i + 1; j < occ.size(); ++j) {
                const auto [ra, ca] = occ[i];
                const auto [rb, cb] = occ[j];
                if (ra == rb) {
                    report.violations.push_back(RowRepeat{ra, x, ca, cb});
                    continue;
                }
                if (ca == cb) {
                    report.violations.push_back(ColRepeat{ca, x, ra, rb});
                    continue;
                }
                if (!grid.at(ra, cb).is_star()) {
                    report.violations.push_back(CornerViolation{x, occ[i], occ[j], {ra, cb}});
                }
                if (!grid.at(rb, ca).is_star()) {
                    report.violations.push_back(CornerViolation{x, occ[i], occ[j], {rb, ca}});
                }
            }
        }
    }

    if (expected_z) {
        for (std::size_t c = 0; c < cols; ++c) {
            const std::size_t found = grid.stars_in_column(c);
            if (found != *expected_z) {
                report.violations.push_back(StarCountMismatch{c, found, *expected_z});
            }
        }
    }

    report.valid = report.violations.empty();
    return report;
}

}  // namespace pda

#include "e2rc/bit_matrix.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace e2rc {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : row_support_(rows), col_support_(cols) {}

BitMatrix BitMatrix::from_columns(std::size_t rows,
                                  const std::vector<std::vector<std::size_t>>& columns) {
    BitMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (std::size_t r : columns[c]) m.add_entry(r, c);
    return m;
}

bool BitMatrix::at(std::size_t r, std::size_t c) const {
    const auto& rs = col_support_.at(c);
    return std::binary_search(rs.begin(), rs.end(), r);
}

void BitMatrix::add_entry(std::size_t r, std::size_t c) {
    if (r >= rows() || c >= cols()) throw std::invalid_argument("entry out of range");
    auto& rs = col_support_[c];
    auto it = std::lower_bound(rs.begin(), rs.end(), r);
    if (it != rs.end() && *it == r) throw std::invalid_argument("duplicate entry");
    rs.insert(it, r);
    auto& cs = row_support_[r];
    cs.insert(std::lower_bound(cs.begin(), cs.end(), c), c);
    ++nonzeros_;
}

void BitMatrix::validate() const {
    std::size_t seen = 0;
    for (std::size_t c = 0; c < cols(); ++c) {
        const auto& rs = col_support_[c];
        for (std::size_t i = 0; i < rs.size(); ++i) {
            if (rs[i] >= rows() || (i > 0 && rs[i] <= rs[i - 1]))
                throw std::logic_error("column support corrupt");
            const auto& cs = row_support_[rs[i]];
            if (!std::binary_search(cs.begin(), cs.end(), c))
                throw std::logic_error("row view missing entry");
        }
        seen += rs.size();
    }
    std::size_t seen_rows = 0;
    for (const auto& cs : row_support_) {
        for (std::size_t i = 1; i < cs.size(); ++i)
            if (cs[i] <= cs[i - 1]) throw std::logic_error("row support corrupt");
        seen_rows += cs.size();
    }
    if (seen != nonzeros_ || seen_rows != nonzeros_)
        throw std::logic_error("nonzero count mismatch");
}

namespace {

struct TokenReader {
    const std::string& text;
    std::size_t pos = 0;
    std::size_t line = 1;

    explicit TokenReader(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error("alist parse error at line " + std::to_string(line) + ": " + what);
    }

    bool skip_space() {
        while (pos < text.size() &&
               (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r' || text[pos] == '\n')) {
            if (text[pos] == '\n') ++line;
            ++pos;
        }
        return pos < text.size();
    }

    long next_int(const char* what) {
        if (!skip_space()) fail(std::string("expected ") + what + ", got end of input");
        std::size_t start = pos;
        if (text[pos] == '-') ++pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        long value = 0;
        auto [p, ec] = std::from_chars(text.data() + start, text.data() + pos, value);
        if (ec != std::errc() || p != text.data() + pos || pos == start)
            fail(std::string("malformed ") + what);
        return value;
    }

    std::size_t next_count(const char* what) {
        long v = next_int(what);
        if (v < 0) fail(std::string(what) + " is negative");
        return static_cast<std::size_t>(v);
    }
};

}  // namespace

BitMatrix from_alist(const std::string& text) {
    TokenReader in(text);
    std::size_t n = in.next_count("column count");
    std::size_t m = in.next_count("row count");
    std::size_t max_col = in.next_count("max column degree");
    std::size_t max_row = in.next_count("max row degree");

    std::vector<std::size_t> col_deg(n), row_deg(m);
    for (auto& d : col_deg) {
        d = in.next_count("column degree");
        if (d > max_col) in.fail("column degree exceeds declared maximum");
    }
    for (auto& d : row_deg) {
        d = in.next_count("row degree");
        if (d > max_row) in.fail("row degree exceeds declared maximum");
    }

    BitMatrix mat(m, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t slot = 0; slot < max_col; ++slot) {
            long v = in.next_int("column entry");
            if (slot < col_deg[c]) {
                if (v < 1 || static_cast<std::size_t>(v) > m) in.fail("row index out of range");
                if (mat.at(static_cast<std::size_t>(v) - 1, c)) in.fail("duplicate entry in column list");
                mat.add_entry(static_cast<std::size_t>(v) - 1, c);
            } else if (v != 0) {
                in.fail("nonzero padding in column list");
            }
        }
    }
    for (std::size_t r = 0; r < m; ++r) {
        std::size_t got = 0;
        for (std::size_t slot = 0; slot < max_row; ++slot) {
            long v = in.next_int("row entry");
            if (slot < row_deg[r]) {
                if (v < 1 || static_cast<std::size_t>(v) > n) in.fail("column index out of range");
                if (!mat.at(r, static_cast<std::size_t>(v) - 1))
                    in.fail("row list disagrees with column lists");
                ++got;
            } else if (v != 0) {
                in.fail("nonzero padding in row list");
            }
        }
        if (got != mat.row(r).size()) in.fail("row degree disagrees with column lists");
    }
    if (in.skip_space()) in.fail("trailing tokens");
    return mat;
}

std::string to_alist(const BitMatrix& m) {
    std::size_t max_col = 0, max_row = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) max_col = std::max(max_col, m.col(c).size());
    for (std::size_t r = 0; r < m.rows(); ++r) max_row = std::max(max_row, m.row(r).size());

    std::ostringstream out;
    out << m.cols() << ' ' << m.rows() << '\n';
    out << max_col << ' ' << max_row << '\n';
    for (std::size_t c = 0; c < m.cols(); ++c)
        out << m.col(c).size() << (c + 1 < m.cols() ? ' ' : '\n');
    if (m.cols() == 0) out << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r)
        out << m.row(r).size() << (r + 1 < m.rows() ? ' ' : '\n');
    if (m.rows() == 0) out << '\n';

    auto emit = [&out](const std::vector<std::size_t>& support, std::size_t width) {
        for (std::size_t slot = 0; slot < width; ++slot) {
            if (slot) out << ' ';
            out << (slot < support.size() ? support[slot] + 1 : 0);
        }
        out << '\n';
    };
    for (std::size_t c = 0; c < m.cols(); ++c) emit(m.col(c), max_col);
    for (std::size_t r = 0; r < m.rows(); ++r) emit(m.row(r), max_row);
    return out.str();
}

BitVec mod2_syndrome(const BitMatrix& m, const BitVec& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("vector length does not match columns");
    BitVec s(m.rows(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::uint8_t acc = 0;
        for (std::size_t c : m.row(r)) acc ^= (v[c] & 1u);
        s[r] = acc;
    }
    return s;
}

DegreeHistograms degree_histograms(const BitMatrix& m) {
    DegreeHistograms h;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        std::size_t d = m.col(c).size();
        if (d >= h.column.size()) h.column.resize(d + 1, 0);
        ++h.column[d];
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::size_t d = m.row(r).size();
        if (d >= h.row.size()) h.row.resize(d + 1, 0);
        ++h.row[d];
    }
    return h;
}

CycleSearch cycle_free_within_columns(const BitMatrix& m, const std::vector<std::size_t>& columns) {
    const std::size_t nrows = m.rows();
    std::vector<char> selected(m.cols(), 0);
    for (std::size_t c : columns) {
        if (c >= m.cols()) throw std::invalid_argument("column index out of range");
        selected[c] = 1;
    }

    std::vector<std::size_t> row_deg(nrows, 0), col_deg(m.cols(), 0);
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (!selected[c]) continue;
        col_deg[c] = m.col(c).size();
        for (std::size_t r : m.col(c)) ++row_deg[r];
    }

    // Peel to the 2-core. Removing a vertex with at most one remaining edge
    // can never break a cycle, and every vertex left at the fixed point has
    // two or more residual edges, so a nonempty residual contains a cycle.
    std::vector<char> row_gone(nrows, 0), col_gone(m.cols(), 0);
    std::vector<std::size_t> work;
    for (std::size_t r = 0; r < nrows; ++r)
        if (row_deg[r] <= 1) work.push_back(2 * r);
    for (std::size_t c : columns)
        if (col_deg[c] <= 1) work.push_back(2 * c + 1);

    while (!work.empty()) {
        std::size_t v = work.back();
        work.pop_back();
        if ((v & 1) == 0) {
            std::size_t r = v / 2;
            if (row_gone[r] || row_deg[r] > 1) continue;
            row_gone[r] = 1;
            for (std::size_t c : m.row(r)) {
                if (!selected[c] || col_gone[c]) continue;
                if (--col_deg[c] <= 1) work.push_back(2 * c + 1);
            }
        } else {
            std::size_t c = v / 2;
            if (col_gone[c] || col_deg[c] > 1) continue;
            col_gone[c] = 1;
            for (std::size_t r : m.col(c)) {
                if (row_gone[r]) continue;
                if (--row_deg[r] <= 1) work.push_back(2 * r);
            }
        }
    }

    CycleSearch result;
    std::size_t start_col = m.cols();
    for (std::size_t c : columns)
        if (!col_gone[c] && col_deg[c] >= 2) { start_col = c; break; }
    if (start_col == m.cols()) return result;

    result.cycle_free = false;

    // Walk the residual: each residual vertex keeps degree >= 2, so stepping
    // away from the previous vertex always succeeds and must eventually
    // revisit a vertex on the path. Vertices alternate column, row, ...
    std::vector<std::size_t> path;                       // encoded as 2r / 2c+1
    std::vector<std::size_t> pos(2 * std::max(nrows, m.cols()) + 2, SIZE_MAX);
    std::size_t current = 2 * start_col + 1, previous = SIZE_MAX;
    for (;;) {
        if (pos[current] != SIZE_MAX) break;
        pos[current] = path.size();
        path.push_back(current);
        std::size_t next = SIZE_MAX;
        if (current & 1) {
            for (std::size_t r : m.col(current / 2)) {
                if (row_gone[r]) continue;
                if (2 * r != previous) { next = 2 * r; break; }
            }
        } else {
            for (std::size_t c : m.row(current / 2)) {
                if (!selected[c] || col_gone[c]) continue;
                if (2 * c + 1 != previous) { next = 2 * c + 1; break; }
            }
        }
        if (next == SIZE_MAX) throw std::logic_error("residual vertex lost its edges");
        previous = current;
        current = next;
    }
    for (std::size_t i = pos[current]; i < path.size(); ++i) {
        if (path[i] & 1)
            result.witness_cols.push_back(path[i] / 2);
        else
            result.witness_rows.push_back(path[i] / 2);
    }
    // Rotate so the witness starts on a column: the cycle is even and
    // alternating, so the two lists already have equal length.
    if ((path[pos[current]] & 1) == 0) {
        std::rotate(result.witness_rows.begin(), result.witness_rows.begin() + 1,
                    result.witness_rows.end());
    }
    return result;
}

BitMatrix submatrix_columns(const BitMatrix& m, std::size_t first, std::size_t last) {
    if (first > last || last > m.cols()) throw std::invalid_argument("bad column range");
    BitMatrix out(m.rows(), last - first);
    for (std::size_t c = first; c < last; ++c)
        for (std::size_t r : m.col(c)) out.add_entry(r, c - first);
    return out;
}

}  // namespace e2rc

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace e2rc {

using BitVec = std::vector<std::uint8_t>;

// Sparse binary matrix held as dual adjacency views: every nonzero entry
// appears both in its column's row list and in its row's column list, and
// each list is kept strictly increasing. Matrices are built once and then
// treated as immutable, so they can be shared read-only across threads.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix from_columns(std::size_t rows,
                                  const std::vector<std::vector<std::size_t>>& columns);

    std::size_t rows() const { return row_support_.size(); }
    std::size_t cols() const { return col_support_.size(); }
    std::size_t nonzeros() const { return nonzeros_; }

    const std::vector<std::size_t>& row(std::size_t r) const { return row_support_[r]; }
    const std::vector<std::size_t>& col(std::size_t c) const { return col_support_[c]; }

    bool at(std::size_t r, std::size_t c) const;
    void add_entry(std::size_t r, std::size_t c);

    bool operator==(const BitMatrix&) const = default;

    // Throws std::logic_error if the two views disagree or a list is not
    // strictly increasing.
    void validate() const;

private:
    std::vector<std::vector<std::size_t>> row_support_;
    std::vector<std::vector<std::size_t>> col_support_;
    std::size_t nonzeros_ = 0;
};

// alist interchange format: "N M" header, max column/row degree line, column
// degree list, row degree list, then per-column and per-row 1-indexed support
// lines padded with zeros. Parsing accepts any whitespace; writing emits the
// fixed single-space layout.
BitMatrix from_alist(const std::string& text);
std::string to_alist(const BitMatrix& m);

// Per-row mod-2 sums of v over the row supports. |v| must equal cols().
BitVec mod2_syndrome(const BitMatrix& m, const BitVec& v);

struct DegreeHistograms {
    std::vector<std::size_t> column;  // column[d] = number of columns of degree d
    std::vector<std::size_t> row;
};
DegreeHistograms degree_histograms(const BitMatrix& m);

struct CycleSearch {
    bool cycle_free = true;
    // Alternating witness: row witness_rows[i] joins witness_cols[i] and
    // witness_cols[i+1 mod s]. Empty when cycle_free.
    std::vector<std::size_t> witness_cols;
    std::vector<std::size_t> witness_rows;
};

// True iff the bipartite graph induced by the given columns (against all
// rows) is acyclic. Detection peels the graph to its 2-core: any vertex with
// at most one remaining edge is removed until nothing changes, and a nonempty
// residual is exactly the set of vertices lying on cycles.
CycleSearch cycle_free_within_columns(const BitMatrix& m, const std::vector<std::size_t>& columns);

// Copy of columns [first, last) with the row count preserved.
BitMatrix submatrix_columns(const BitMatrix& m, std::size_t first, std::size_t last);

}  // namespace e2rc

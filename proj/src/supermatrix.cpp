#include "smf/supermatrix.hpp"

#include <random>
#include <string>

#include "smf/detail/random.hpp"
#include "smf/errors.hpp"

namespace smf {

namespace {

std::string dim_string(const Layout& rows, const Layout& cols) {
    return "(" + std::to_string(rows.even) + "|" + std::to_string(rows.odd) +
           ") x (" + std::to_string(cols.even) + "|" + std::to_string(cols.odd) + ")";
}

// Laplace expansion along the first row.  Only used on small all-nilpotent
// remainders where Bareiss has no invertible pivot left.
GrassmannElement determinant_expansion(const std::vector<GrassmannElement>& m,
                                       const std::vector<int>& rows,
                                       const std::vector<int>& cols, int n,
                                       int num_generators) {
    const int size = static_cast<int>(rows.size());
    if (size == 0) return GrassmannElement::scalar(1, num_generators);
    GrassmannElement det(num_generators);
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    for (int j = 0; j < size; ++j) {
        const GrassmannElement& entry = m[rows[0] * n + cols[j]];
        if (entry.is_zero()) continue;
        std::vector<int> sub_cols;
        sub_cols.reserve(size - 1);
        for (int c = 0; c < size; ++c) {
            if (c != j) sub_cols.push_back(cols[c]);
        }
        GrassmannElement minor =
            determinant_expansion(m, sub_rows, sub_cols, n, num_generators);
        GrassmannElement term = entry * minor;
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

}  // namespace

SuperMatrix::SuperMatrix(Layout rows, Layout cols, int num_generators)
    : rows_(rows), cols_(cols), num_generators_(num_generators) {
    if (rows.even < 0 || rows.odd < 0 || cols.even < 0 || cols.odd < 0) {
        fail(ErrorKind::MalformedInput, "supermatrix", "negative layout counts");
    }
    entries_.assign(static_cast<std::size_t>(num_rows()) * num_cols(),
                    GrassmannElement::zero(num_generators));
}

SuperMatrix SuperMatrix::identity(Layout layout, int num_generators) {
    SuperMatrix m(layout, layout, num_generators);
    for (int i = 0; i < m.num_rows(); ++i) {
        m.set(i, i, GrassmannElement::scalar(1, num_generators));
    }
    return m;
}

const GrassmannElement& SuperMatrix::at(int row, int col) const {
    return entries_[static_cast<std::size_t>(row) * num_cols() + col];
}

void SuperMatrix::set(int row, int col, GrassmannElement value) {
    if (value.num_generators() != num_generators_) {
        fail(ErrorKind::GeneratorMismatch, "supermatrix",
             "entry generator count differs from the matrix context");
    }
    entries_[static_cast<std::size_t>(row) * num_cols() + col] = std::move(value);
}

Parity SuperMatrix::row_parity(int row) const {
    return row < rows_.even ? Parity::Even : Parity::Odd;
}

Parity SuperMatrix::col_parity(int col) const {
    return col < cols_.even ? Parity::Even : Parity::Odd;
}

SuperMatrix SuperMatrix::multiply(const SuperMatrix& other) const {
    if (!(cols_ == other.rows_)) {
        fail(ErrorKind::LayoutMismatch, "supermatrix",
             "cannot multiply " + dim_string(rows_, cols_) + " by " +
                 dim_string(other.rows_, other.cols_));
    }
    if (num_generators_ != other.num_generators_) {
        fail(ErrorKind::GeneratorMismatch, "supermatrix",
             "multiply: operands have different generator counts");
    }
    SuperMatrix result(rows_, other.cols_, num_generators_);
    for (int i = 0; i < num_rows(); ++i) {
        for (int j = 0; j < other.num_cols(); ++j) {
            GrassmannElement sum(num_generators_);
            for (int k = 0; k < num_cols(); ++k) {
                const GrassmannElement& a = at(i, k);
                const GrassmannElement& b = other.at(k, j);
                if (a.is_zero() || b.is_zero()) continue;
                sum = sum + a * b;
            }
            result.set(i, j, std::move(sum));
        }
    }
    return result;
}

SuperMatrix SuperMatrix::subtract(const SuperMatrix& other) const {
    SuperMatrix result(rows_, cols_, num_generators_);
    for (int i = 0; i < num_rows(); ++i) {
        for (int j = 0; j < num_cols(); ++j) {
            result.set(i, j, at(i, j) - other.at(i, j));
        }
    }
    return result;
}

SuperMatrix SuperMatrix::add(const SuperMatrix& other) const {
    SuperMatrix result(rows_, cols_, num_generators_);
    for (int i = 0; i < num_rows(); ++i) {
        for (int j = 0; j < num_cols(); ++j) {
            result.set(i, j, at(i, j) + other.at(i, j));
        }
    }
    return result;
}

ParityReport SuperMatrix::validate_parity() const {
    ParityReport report;
    for (int i = 0; i < num_rows(); ++i) {
        for (int j = 0; j < num_cols(); ++j) {
            const Parity expected = row_parity(i) == col_parity(j)
                                        ? Parity::Even
                                        : Parity::Odd;
            if (!at(i, j).is_homogeneous(expected)) {
                report.valid = false;
                report.violations.emplace_back(i, j);
            }
        }
    }
    return report;
}

GrassmannElement determinant_even(std::vector<GrassmannElement> m, int n,
                                  int num_generators) {
    if (n == 0) return GrassmannElement::scalar(1, num_generators);
    std::vector<int> rows(n), cols(n);
    for (int i = 0; i < n; ++i) rows[i] = cols[i] = i;

    int sign = 1;
    GrassmannElement prev = GrassmannElement::scalar(1, num_generators);
    for (int step = 0; step < n; ++step) {
        // Full pivoting restricted to invertible-body entries.
        int pivot_r = -1, pivot_c = -1;
        for (int i = step; i < n && pivot_r < 0; ++i) {
            for (int j = step; j < n; ++j) {
                if (!is_zero(m[rows[i] * n + cols[j]].body())) {
                    pivot_r = i;
                    pivot_c = j;
                    break;
                }
            }
        }
        if (pivot_r < 0) {
            // Every remaining entry is nilpotent.  The remainder's entries are
            // (step+1)-minors, so Sylvester's identity rescales its expansion
            // back to the full determinant: det = det(R) / prev^(size-1).
            std::vector<int> sub_rows(rows.begin() + step, rows.end());
            std::vector<int> sub_cols(cols.begin() + step, cols.end());
            GrassmannElement rest = determinant_expansion(m, sub_rows, sub_cols, n,
                                                          num_generators);
            const int size = n - step;
            GrassmannElement scale = GrassmannElement::scalar(1, num_generators);
            const GrassmannElement prev_inv = prev.inverse();
            for (int k = 0; k < size - 1; ++k) scale = scale * prev_inv;
            GrassmannElement det = rest * scale;
            return sign > 0 ? det : -det;
        }
        if (pivot_r != step) {
            std::swap(rows[pivot_r], rows[step]);
            sign = -sign;
        }
        if (pivot_c != step) {
            std::swap(cols[pivot_c], cols[step]);
            sign = -sign;
        }
        if (step == n - 1) break;

        const GrassmannElement& pivot = m[rows[step] * n + cols[step]];
        const GrassmannElement prev_inv = prev.inverse();
        for (int i = step + 1; i < n; ++i) {
            for (int j = step + 1; j < n; ++j) {
                GrassmannElement& target = m[rows[i] * n + cols[j]];
                GrassmannElement value = target * pivot -
                                         m[rows[i] * n + cols[step]] *
                                             m[rows[step] * n + cols[j]];
                // Exact: the numerator is divisible by the previous pivot as a
                // polynomial identity, and prev has invertible body.
                target = value * prev_inv;
            }
        }
        prev = pivot;
    }
    GrassmannElement det = m[rows[n - 1] * n + cols[n - 1]];
    return sign > 0 ? det : -det;
}

GrassmannElement SuperMatrix::berezinian() const {
    if (!(rows_ == cols_)) {
        fail(ErrorKind::NotSquare, "berezinian",
             "matrix is not square: " + dim_string(rows_, cols_));
    }
    ParityReport parity = validate_parity();
    if (!parity.valid) {
        fail(ErrorKind::ParityViolation, "berezinian",
             "matrix is not an even supermatrix (" +
                 std::to_string(parity.violations.size()) + " bad entries)");
    }
    const int p = rows_.even;
    const int q = rows_.odd;

    // det D and D^{-1}-free solve are only needed when an odd block exists.
    if (q == 0) {
        std::vector<GrassmannElement> a(entries_.begin(), entries_.end());
        return determinant_even(std::move(a), p, num_generators_);
    }

    std::vector<GrassmannElement> d;
    d.reserve(static_cast<std::size_t>(q) * q);
    for (int i = 0; i < q; ++i) {
        for (int j = 0; j < q; ++j) {
            d.push_back(at(p + i, p + j));
        }
    }
    GrassmannElement det_d = determinant_even(d, q, num_generators_);
    if (is_zero(det_d.body())) {
        fail(ErrorKind::SingularOddBlock, "berezinian",
             "odd-odd block determinant has zero body");
    }
    if (p == 0) {
        return det_d.inverse();
    }

    // Solve D X = C by Gauss-Jordan with invertible-body pivots, then form
    // the Schur complement A - B X.  All entries of D (and X's solve steps)
    // lie in the commutative even subring.
    std::vector<GrassmannElement> work = d;
    std::vector<GrassmannElement> x;
    x.reserve(static_cast<std::size_t>(q) * p);
    for (int i = 0; i < q; ++i) {
        for (int j = 0; j < p; ++j) {
            x.push_back(at(p + i, j));
        }
    }
    std::vector<int> row_index(q);
    for (int i = 0; i < q; ++i) row_index[i] = i;
    for (int col = 0; col < q; ++col) {
        int pivot = -1;
        for (int i = col; i < q; ++i) {
            if (!is_zero(work[row_index[i] * q + col].body())) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) {
            // Unreachable when det D has invertible body.
            fail(ErrorKind::SingularOddBlock, "berezinian",
                 "odd-odd block lost its invertible pivot");
        }
        std::swap(row_index[pivot], row_index[col]);
        const int pr = row_index[col];
        const GrassmannElement inv = work[pr * q + col].inverse();
        for (int j = 0; j < q; ++j) work[pr * q + j] = work[pr * q + j] * inv;
        for (int j = 0; j < p; ++j) x[pr * p + j] = x[pr * p + j] * inv;
        for (int i = 0; i < q; ++i) {
            const int r = row_index[i];
            if (r == pr) continue;
            const GrassmannElement factor = work[r * q + col];
            if (factor.is_zero()) continue;
            for (int j = 0; j < q; ++j) {
                work[r * q + j] = work[r * q + j] - factor * work[pr * q + j];
            }
            for (int j = 0; j < p; ++j) {
                x[r * p + j] = x[r * p + j] - factor * x[pr * p + j];
            }
        }
    }
    // Rows of X follow row_index; undo the permutation.
    std::vector<GrassmannElement> solved(static_cast<std::size_t>(q) * p,
                                         GrassmannElement(num_generators_));
    for (int i = 0; i < q; ++i) {
        for (int j = 0; j < p; ++j) {
            solved[i * p + j] = x[row_index[i] * p + j];
        }
    }

    std::vector<GrassmannElement> schur;
    schur.reserve(static_cast<std::size_t>(p) * p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            GrassmannElement value = at(i, j);
            for (int k = 0; k < q; ++k) {
                value = value - at(i, p + k) * solved[k * p + j];
            }
            schur.push_back(std::move(value));
        }
    }
    GrassmannElement det_s = determinant_even(std::move(schur), p, num_generators_);
    return det_s * det_d.inverse();
}

SuperMatrix SuperMatrix::left_inverse() const {
    const int m = num_rows();
    const int n = num_cols();
    if (m < n) {
        fail(ErrorKind::DimensionMismatch, "left_inverse",
             "matrix has fewer rows than columns");
    }

    // Row-reduce [body(M) | I_m] with minimal-pivot selection: the first
    // untouched row with a nonzero entry wins.  Deterministic by design.
    std::vector<Rational> body(static_cast<std::size_t>(m) * n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            body[i * n + j] = at(i, j).body();
        }
    }
    std::vector<Rational> transform(static_cast<std::size_t>(m) * m, Rational(0));
    for (int i = 0; i < m; ++i) transform[i * m + i] = 1;

    std::vector<int> pivot_row_of_col(n, -1);
    std::vector<bool> used(m, false);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int i = 0; i < m; ++i) {
            if (!used[i] && !is_zero(body[i * n + col])) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) {
            fail(ErrorKind::BodyRankDeficient, "left_inverse",
                 "body matrix lacks full column rank (column " +
                     std::to_string(col) + ")");
        }
        used[pivot] = true;
        pivot_row_of_col[col] = pivot;
        const Rational inv = 1 / body[pivot * n + col];
        for (int j = 0; j < n; ++j) body[pivot * n + j] *= inv;
        for (int j = 0; j < m; ++j) transform[pivot * m + j] *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == pivot) continue;
            const Rational factor = body[i * n + col];
            if (is_zero(factor)) continue;
            for (int j = 0; j < n; ++j) body[i * n + j] -= factor * body[pivot * n + j];
            for (int j = 0; j < m; ++j) {
                transform[i * m + j] -= factor * transform[pivot * m + j];
            }
        }
    }

    // L0 body-level left inverse: row j of L0 is the transform row of column
    // j's pivot.
    SuperMatrix l0(cols_, rows_, num_generators_);
    for (int j = 0; j < n; ++j) {
        const int pr = pivot_row_of_col[j];
        for (int k = 0; k < m; ++k) {
            if (!is_zero(transform[pr * m + k])) {
                l0.set(j, k, GrassmannElement::scalar(transform[pr * m + k],
                                                      num_generators_));
            }
        }
    }

    // Neumann correction: with N = M - body(M), (I + L0 N)^{-1} L0 is an
    // exact left inverse; L0 N has nilpotent entries so the series ends.
    SuperMatrix nilpotent(rows_, cols_, num_generators_);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            nilpotent.set(i, j, at(i, j).soul());
        }
    }
    const SuperMatrix t = l0.multiply(nilpotent);
    SuperMatrix series = SuperMatrix::identity(cols_, num_generators_);
    SuperMatrix power = SuperMatrix::identity(cols_, num_generators_);
    for (int k = 1; k <= num_generators_; ++k) {
        power = power.multiply(t);
        bool all_zero = true;
        for (int i = 0; i < n && all_zero; ++i) {
            for (int j = 0; j < n; ++j) {
                if (!power.at(i, j).is_zero()) {
                    all_zero = false;
                    break;
                }
            }
        }
        if (all_zero) break;
        series = (k % 2 == 1) ? series.subtract(power) : series.add(power);
    }
    return series.multiply(l0);
}

SuperMatrix SuperMatrix::left_inverse_randomized(std::uint64_t seed) const {
    const SuperMatrix base = left_inverse();
    std::mt19937_64 rng(seed);

    // R must be an even supermatrix of shape cols(M) x rows(M), otherwise the
    // perturbation would break parity of everything assembled from it.
    SuperMatrix r(cols_, rows_, num_generators_);
    for (int i = 0; i < r.num_rows(); ++i) {
        for (int j = 0; j < r.num_cols(); ++j) {
            if (r.row_parity(i) == r.col_parity(j)) {
                r.set(i, j, GrassmannElement::scalar(detail::draw_rational(rng),
                                                     num_generators_));
            } else {
                r.set(i, j, detail::draw_odd_element(rng, num_generators_));
            }
        }
    }

    const SuperMatrix residual =
        SuperMatrix::identity(rows_, num_generators_).subtract(multiply(base));
    SuperMatrix perturbed = base;
    const SuperMatrix delta = r.multiply(residual);
    for (int i = 0; i < perturbed.num_rows(); ++i) {
        for (int j = 0; j < perturbed.num_cols(); ++j) {
            perturbed.set(i, j, perturbed.at(i, j) + delta.at(i, j));
        }
    }
    return perturbed;
}

bool SuperMatrix::operator==(const SuperMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           num_generators_ == other.num_generators_ && entries_ == other.entries_;
}

}  // namespace smf

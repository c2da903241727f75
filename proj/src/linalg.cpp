#include "wittkit/linalg.hpp"

#include "wittkit/error.hpp"

namespace wittkit {

namespace {

using IntMatrix = std::vector<std::vector<Integer>>;

IntMatrix clear_denominators(const Matrix& m) {
    IntMatrix out;
    out.reserve(m.size());
    for (const auto& row : m) {
        Integer l = 1;
        for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        std::vector<Integer> r;
        r.reserve(row.size());
        for (const auto& x : row) r.push_back(x.get_num() * (l / x.get_den()));
        out.push_back(std::move(r));
    }
    return out;
}

// In-place fraction-free echelon form; returns the pivot column of each pivot row.
std::vector<std::size_t> bareiss(IntMatrix& a, std::size_t cols) {
    std::vector<std::size_t> pivots;
    const std::size_t rows = a.size();
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                Integer t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::vector<std::vector<Scalar>> null_space(const Matrix& m, std::size_t cols) {
    for (const auto& row : m)
        if (row.size() != cols) raise(Errc::InvalidArgument, "ragged matrix");
    IntMatrix a = clear_denominators(m);
    const auto pivots = bareiss(a, cols);

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Scalar>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(cols, 0);
        v[f] = 1;
        for (std::size_t r = pivots.size(); r-- > 0;) {
            const std::size_t c = pivots[r];
            Scalar acc = 0;
            for (std::size_t j = c + 1; j < cols; ++j)
                if (a[r][j] != 0 && v[j] != 0) acc += Scalar(a[r][j]) * v[j];
            v[c] = -acc / Scalar(a[r][c]);
        }
        basis.push_back(std::move(v));
    }

    for (const auto& v : basis)
        for (const auto& x : mat_vec(m, v))
            if (x != 0) raise(Errc::Internal, "null space vector failed verification");
    return basis;
}

std::size_t rank(const Matrix& m) {
    if (m.empty()) return 0;
    IntMatrix a = clear_denominators(m);
    return bareiss(a, m.front().size()).size();
}

std::vector<Scalar> mat_vec(const Matrix& m, const std::vector<Scalar>& v) {
    std::vector<Scalar> out;
    out.reserve(m.size());
    for (const auto& row : m) {
        Scalar acc = 0;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0 && v[j] != 0) acc += row[j] * v[j];
        out.push_back(acc);
    }
    return out;
}

}  // namespace wittkit

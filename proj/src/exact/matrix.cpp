#include "qsg/matrix.hpp"

#include <sstream>

namespace qsg {

IntMatrix int_matrix(const std::vector<std::vector<long long>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("ragged integer matrix");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rows[i][j]);
    }
    return m;
}

RationalMatrix to_rational(const IntMatrix& m) {
    RationalMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

bool is_integral(const RationalMatrix& m) {
    for (const auto& x : m.entries())
        if (!is_integer(x)) return false;
    return true;
}

IntMatrix to_integral(const RationalMatrix& m) {
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!is_integer(m(i, j)))
                throw std::domain_error("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                        ") = " + to_string(m(i, j)) + " is not an integer");
            r(i, j) = m(i, j).get_num();
        }
    return r;
}

Rational determinant(const RationalMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
    RationalMatrix a = m;
    const std::size_t n = a.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            a.swap_rows(p, c);
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a(r, c) == 0) continue;
            Rational f = -a(r, c) / a(c, c);
            a.add_row_multiple(r, c, f);
        }
    }
    return det;
}

Integer determinant(const IntMatrix& m) { return to_integer(determinant(to_rational(m))); }

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix a = m;
    RationalMatrix inv = RationalMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return std::nullopt;
        a.swap_rows(p, c);
        inv.swap_rows(p, c);
        const Rational pivot = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= pivot;
            inv(c, j) /= pivot;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c) == 0) continue;
            const Rational f = -a(r, c);
            a.add_row_multiple(r, c, f);
            inv.add_row_multiple(r, c, f);
        }
    }
    return inv;
}

std::string to_string(const IntMatrix& m) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).get_str();
        os << ']';
    }
    os << ']';
    return os.str();
}

}  // namespace qsg

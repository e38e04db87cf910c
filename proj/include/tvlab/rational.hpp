#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "tvlab/error.hpp"

namespace tvlab {

/// Exact rational; GMP keeps every value canonical (den > 0, reduced, 0 == 0/1).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Vector = std::vector<Rational>;

/// Parses "p", "p/q" or "-p/q". Rejects zero denominators and anything else.
inline Rational parse_rational(std::string_view text)
{
    auto parse_int = [&](std::string_view s) -> Integer {
        std::size_t i = 0;
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) throw InputError("malformed rational '" + std::string(text) + "'");
        for (std::size_t j = i; j < s.size(); ++j)
            if (s[j] < '0' || s[j] > '9')
                throw InputError("malformed rational '" + std::string(text) + "'");
        std::string digits(s[0] == '+' ? s.substr(1) : s);
        return Integer(digits);
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    Integer num = parse_int(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
        throw InputError("malformed rational '" + std::string(text) + "'");
    Integer den = parse_int(den_text);
    if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q)
{
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational dot(const Vector& a, const Vector& b)
{
    if (a.size() != b.size()) throw InputError("dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Dense row-major rational matrix.
class RationalMatrix
{
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries))
    {
        if (data_.size() != rows_ * cols_) throw InputError("RationalMatrix: entry count != rows*cols");
    }
    /// Builds from nested rows; all rows must have equal length.
    static RationalMatrix from_rows(const std::vector<Vector>& rows)
    {
        std::size_t cols = rows.empty() ? 0 : rows.front().size();
        RationalMatrix m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) throw InputError("RationalMatrix: ragged rows");
            for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
        }
        return m;
    }
    static RationalMatrix identity(std::size_t n)
    {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    const std::vector<Rational>& entries() const { return data_; }

    Vector row(std::size_t r) const
    {
        return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                      data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    }
    Vector col(std::size_t c) const
    {
        Vector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    Vector operator*(const Vector& x) const
    {
        if (x.size() != cols_) throw InputError("matrix-vector product: length mismatch");
        Vector y(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) y[r] += (*this)(r, c) * x[c];
        return y;
    }

    /// Entrywise (Frobenius) inner product.
    friend Rational pairing(const RationalMatrix& a, const RationalMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("pairing: shape mismatch");
        Rational s = 0;
        for (std::size_t i = 0; i < a.data_.size(); ++i) s += a.data_[i] * b.data_[i];
        return s;
    }

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

}  // namespace tvlab

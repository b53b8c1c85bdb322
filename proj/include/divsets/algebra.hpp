#ifndef DIVSETS_ALGEBRA_HPP
#define DIVSETS_ALGEBRA_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace divsets {

/// Arbitrary precision integer used for every counting quantity.
using Int = boost::multiprecision::cpp_int;
/// Exact rational in lowest terms with positive denominator.
using Rat = boost::multiprecision::cpp_rational;

Int ipow(const Int& base, unsigned exponent);

/// The Gaussian number [v;1]_q = (q^v - 1)/(q - 1), i.e. the number of points
/// of GF(q)^v. Throws std::invalid_argument for q < 2.
Int gauss_number(const Int& q, unsigned v);

Int floor_div(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);
Int floor(const Rat& x);
Int ceil(const Rat& x);
/// floor(sqrt(x)) for x >= 0.
Int isqrt(const Int& x);

/// Field element, encoded as the integer sum c_i p^i of its coefficient
/// vector over GF(p) in the polynomial basis 1, x, ..., x^{e-1}.
using Elem = std::uint32_t;

/// Dense polynomial over some field, coefficients from the constant term up.
using Poly = std::vector<Elem>;

/// GF(q) for a prime power q = p^e. Immutable; copies share lookup tables.
class Field {
public:
    /// Throws std::invalid_argument if q is not a prime power (or too large).
    explicit Field(std::uint64_t q);

    std::uint64_t order() const noexcept;
    std::uint64_t characteristic() const noexcept;
    unsigned degree() const noexcept;
    /// Monic irreducible of degree e over GF(p); empty for prime fields.
    const Poly& modulus() const noexcept;
    bool is_prime() const noexcept { return degree() == 1; }

    Elem zero() const noexcept { return 0; }
    Elem one() const noexcept { return 1; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    /// Throws std::domain_error on zero.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    /// Coefficient vector over GF(p) of length e, constant term first.
    std::vector<std::uint32_t> coefficients(Elem a) const;
    Elem from_coefficients(std::span<const std::uint32_t> c) const;

    friend bool operator==(const Field& a, const Field& b) noexcept {
        return a.order() == b.order();
    }

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// Factors q and selects the modulus deterministically.
Field field_context(std::uint64_t q);

/// Lexicographically smallest monic irreducible polynomial of the given degree
/// over `f`. Candidates are ordered by the integer sum c_i |f|^i of their lower
/// coefficients, so higher coefficients are compared first.
Poly smallest_irreducible(const Field& f, unsigned degree);
bool is_irreducible(const Field& f, const Poly& p);

/// Row-major dense matrix over GF(q).
class GFMatrix {
public:
    GFMatrix(Field f, std::size_t rows, std::size_t cols);
    GFMatrix(Field f, std::size_t rows, std::size_t cols, std::vector<Elem> data);

    static GFMatrix identity(Field f, std::size_t n);

    const Field& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    const std::vector<Elem>& data() const noexcept { return data_; }

    bool is_zero() const;

    friend bool operator==(const GFMatrix& a, const GFMatrix& b) {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Elem> data_;
};

GFMatrix operator+(const GFMatrix& a, const GFMatrix& b);
GFMatrix operator-(const GFMatrix& a, const GFMatrix& b);
GFMatrix operator*(const GFMatrix& a, const GFMatrix& b);

/// Vertical concatenation; both operands share field and column count.
GFMatrix vstack(const GFMatrix& top, const GFMatrix& bottom);
/// Horizontal concatenation; both operands share field and row count.
GFMatrix hstack(const GFMatrix& left, const GFMatrix& right);
GFMatrix top_rows(const GFMatrix& m, std::size_t count);
GFMatrix select_columns(const GFMatrix& m, std::span<const std::size_t> columns);

struct RrefResult {
    GFMatrix matrix;
    std::size_t rank;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Pivot columns are taken left to right; within a
/// column the topmost remaining row with a nonzero entry is swapped up.
/// Zero rows end up at the bottom.
RrefResult rref(const GFMatrix& m);
std::size_t rank(const GFMatrix& m);

/// GF(q^n) over GF(q) in the polynomial basis 1, x, ..., x^{n-1}.
class ExtensionField {
public:
    /// Coefficient vector over the base field, length n, constant term first.
    using Element = std::vector<Elem>;

    static constexpr std::uint64_t default_max_elements = std::uint64_t{1} << 20;

    /// Throws std::length_error when q^n exceeds max_elements.
    ExtensionField(Field base, unsigned degree,
                   std::uint64_t max_elements = default_max_elements);

    const Field& base() const noexcept { return base_; }
    unsigned degree() const noexcept { return degree_; }
    const Poly& modulus() const noexcept { return modulus_; }
    std::uint64_t size() const noexcept { return size_; }

    /// Elements are enumerated by the integer sum c_i q^i.
    Element element(std::uint64_t index) const;
    std::uint64_t index_of(const Element& a) const;

    Element add(const Element& a, const Element& b) const;
    Element mul(const Element& a, const Element& b) const;
    /// Multiplication by the generator x.
    Element shift(const Element& a) const;

private:
    Field base_;
    unsigned degree_;
    Poly modulus_;
    std::uint64_t size_;
};

/// Matrix of y -> alpha*y over the base field. Row j holds the coordinates of
/// alpha*x^j, so M(1) = I and M(alpha*beta) = M(alpha)*M(beta).
GFMatrix mult_matrix(const ExtensionField& ext, const ExtensionField::Element& alpha);

}  // namespace divsets

#endif  // DIVSETS_ALGEBRA_HPP

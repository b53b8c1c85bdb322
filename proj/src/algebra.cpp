#include "divsets/algebra.hpp"

#include <algorithm>
#include <string>

namespace divsets {

Int ipow(const Int& base, unsigned exponent) {
    Int result = 1;
    Int b = base;
    while (exponent > 0) {
        if (exponent & 1u) result *= b;
        exponent >>= 1;
        if (exponent > 0) b *= b;
    }
    return result;
}

Int gauss_number(const Int& q, unsigned v) {
    if (q < 2) throw std::invalid_argument("gauss_number: q must be at least 2");
    return (ipow(q, v) - 1) / (q - 1);
}

Int floor_div(const Int& a, const Int& b) {
    if (b == 0) throw std::domain_error("floor_div: division by zero");
    Int quotient = a / b;  // truncates toward zero
    if (quotient * b != a && ((a < 0) != (b < 0))) --quotient;
    return quotient;
}

Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

Int floor(const Rat& x) {
    return floor_div(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
}

Int ceil(const Rat& x) {
    return ceil_div(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
}

Int isqrt(const Int& x) {
    if (x < 0) throw std::domain_error("isqrt: negative argument");
    return boost::multiprecision::sqrt(x);
}

// ---------------------------------------------------------------------------
// GF(q)

namespace {

constexpr std::uint64_t max_field_order = std::uint64_t{1} << 31;
constexpr std::uint64_t table_limit = 256;

bool is_prime_number(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Trims trailing zero coefficients.
void normalize(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Field& f, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
    }
    normalize(out);
    return out;
}

// Remainder of a modulo a monic polynomial m.
Poly poly_mod_monic(const Field& f, Poly a, const Poly& m) {
    normalize(a);
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const Elem lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = f.sub(a[shift + i], f.mul(lead, m[i]));
        normalize(a);
    }
    return a;
}

// Monic polynomial of the given degree whose lower coefficients are the
// base-|f| digits of index.
Poly monic_from_index(const Field& f, unsigned degree, std::uint64_t index) {
    Poly p(degree + 1, 0);
    for (unsigned i = 0; i < degree; ++i) {
        p[i] = static_cast<Elem>(index % f.order());
        index /= f.order();
    }
    p[degree] = 1;
    return p;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exponent, std::uint64_t cap) {
    std::uint64_t result = 1;
    for (unsigned i = 0; i < exponent; ++i) {
        if (result > cap / base) return cap + 1;
        result *= base;
    }
    return result;
}

}  // namespace

struct Field::Impl {
    std::uint64_t q = 0;
    std::uint64_t p = 0;
    unsigned e = 1;
    Poly modulus;
    // Only populated for small extension fields.
    std::vector<Elem> mul_table;
    std::vector<Elem> inv_table;

    Elem add(Elem a, Elem b) const {
        if (e == 1) return static_cast<Elem>((std::uint64_t{a} + b) % p);
        Elem out = 0;
        std::uint64_t scale = 1;
        for (unsigned i = 0; i < e; ++i) {
            out += static_cast<Elem>(((a % p + b % p) % p) * scale);
            a /= static_cast<Elem>(p);
            b /= static_cast<Elem>(p);
            scale *= p;
        }
        return out;
    }

    Elem neg(Elem a) const {
        if (e == 1) return a == 0 ? 0 : static_cast<Elem>(p - a);
        Elem out = 0;
        std::uint64_t scale = 1;
        for (unsigned i = 0; i < e; ++i) {
            const Elem d = a % p;
            out += static_cast<Elem>(((p - d) % p) * scale);
            a /= static_cast<Elem>(p);
            scale *= p;
        }
        return out;
    }

    Elem mul_slow(Elem a, Elem b) const {
        if (e == 1) return static_cast<Elem>((std::uint64_t{a} * b) % p);
        // Schoolbook product of coefficient vectors, reduced by the modulus.
        std::vector<std::uint64_t> ca(e), cb(e), prod(2 * e - 1, 0);
        for (unsigned i = 0; i < e; ++i) {
            ca[i] = a % p;
            cb[i] = b % p;
            a /= static_cast<Elem>(p);
            b /= static_cast<Elem>(p);
        }
        for (unsigned i = 0; i < e; ++i)
            for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
        for (std::size_t d = prod.size() - 1; d >= e; --d) {
            const std::uint64_t lead = prod[d];
            if (lead == 0) continue;
            for (unsigned i = 0; i <= e; ++i) {
                const std::size_t pos = d - e + i;
                prod[pos] = (prod[pos] + (p - lead) * modulus[i]) % p;
            }
        }
        Elem out = 0;
        std::uint64_t scale = 1;
        for (unsigned i = 0; i < e; ++i) {
            out += static_cast<Elem>(prod[i] * scale);
            scale *= p;
        }
        return out;
    }

    Elem mul(Elem a, Elem b) const {
        if (!mul_table.empty()) return mul_table[a * q + b];
        return mul_slow(a, b);
    }

    Elem pow(Elem a, std::uint64_t k) const {
        Elem result = 1;
        while (k > 0) {
            if (k & 1u) result = mul(result, a);
            a = mul(a, a);
            k >>= 1;
        }
        return result;
    }
};

Field::Field(std::uint64_t q) {
    if (q < 2) throw std::invalid_argument("field order q = " + std::to_string(q) + " is below 2");
    if (q > max_field_order)
        throw std::invalid_argument("field order q = " + std::to_string(q) + " exceeds the supported range");
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = q;
    unsigned e = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1 || !is_prime_number(p))
        throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");

    auto impl = std::make_shared<Impl>();
    impl->q = q;
    impl->p = p;
    impl->e = e;
    if (e > 1) {
        impl->modulus = smallest_irreducible(Field(p), e);
        if (q <= table_limit) {
            impl->mul_table.resize(q * q);
            for (std::uint64_t a = 0; a < q; ++a)
                for (std::uint64_t b = 0; b < q; ++b)
                    impl->mul_table[a * q + b] = impl->mul_slow(static_cast<Elem>(a), static_cast<Elem>(b));
            impl->inv_table.assign(q, 0);
            for (std::uint64_t a = 1; a < q; ++a)
                for (std::uint64_t b = 1; b < q; ++b)
                    if (impl->mul_table[a * q + b] == 1) impl->inv_table[a] = static_cast<Elem>(b);
        }
    }
    impl_ = std::move(impl);
}

std::uint64_t Field::order() const noexcept { return impl_->q; }
std::uint64_t Field::characteristic() const noexcept { return impl_->p; }
unsigned Field::degree() const noexcept { return impl_->e; }
const Poly& Field::modulus() const noexcept { return impl_->modulus; }

Elem Field::add(Elem a, Elem b) const { return impl_->add(a, b); }
Elem Field::neg(Elem a) const { return impl_->neg(a); }
Elem Field::sub(Elem a, Elem b) const { return impl_->add(a, impl_->neg(b)); }
Elem Field::mul(Elem a, Elem b) const { return impl_->mul(a, b); }

Elem Field::inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero in GF(" + std::to_string(order()) + ")");
    if (!impl_->inv_table.empty()) return impl_->inv_table[a];
    return impl_->pow(a, impl_->q - 2);
}

std::vector<std::uint32_t> Field::coefficients(Elem a) const {
    std::vector<std::uint32_t> c(degree());
    for (auto& digit : c) {
        digit = static_cast<std::uint32_t>(a % impl_->p);
        a /= static_cast<Elem>(impl_->p);
    }
    return c;
}

Elem Field::from_coefficients(std::span<const std::uint32_t> c) const {
    if (c.size() != degree()) throw std::invalid_argument("coefficient vector has wrong length");
    Elem out = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] >= impl_->p) throw std::invalid_argument("coefficient out of range");
        out = static_cast<Elem>(out * impl_->p + c[i]);
    }
    return out;
}

Field field_context(std::uint64_t q) { return Field(q); }

bool is_irreducible(const Field& f, const Poly& p) {
    Poly m = p;
    normalize(m);
    if (m.size() < 2) return false;
    const unsigned degree = static_cast<unsigned>(m.size() - 1);
    if (m.back() != 1) {
        const Elem lead_inv = f.inv(m.back());
        for (auto& c : m) c = f.mul(c, lead_inv);
    }
    for (unsigned d = 1; 2 * d <= degree; ++d) {
        const std::uint64_t count = checked_pow(f.order(), d, std::uint64_t{1} << 40);
        for (std::uint64_t index = 0; index < count; ++index) {
            if (poly_mod_monic(f, m, monic_from_index(f, d, index)).empty()) return false;
        }
    }
    return true;
}

Poly smallest_irreducible(const Field& f, unsigned degree) {
    if (degree == 0) throw std::invalid_argument("irreducible polynomial of degree 0 requested");
    const std::uint64_t count = checked_pow(f.order(), degree, std::uint64_t{1} << 40);
    for (std::uint64_t index = 0; index < count; ++index) {
        Poly candidate = monic_from_index(f, degree, index);
        if (is_irreducible(f, candidate)) return candidate;
    }
    throw std::logic_error("no irreducible polynomial found");
}

// ---------------------------------------------------------------------------
// Matrices

GFMatrix::GFMatrix(Field f, std::size_t rows, std::size_t cols)
    : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

GFMatrix::GFMatrix(Field f, std::size_t rows, std::size_t cols, std::vector<Elem> data)
    : field_(std::move(f)), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("GFMatrix: data size mismatch");
    for (Elem x : data_)
        if (x >= field_.order()) throw std::invalid_argument("GFMatrix: entry outside the field");
}

GFMatrix GFMatrix::identity(Field f, std::size_t n) {
    GFMatrix m(std::move(f), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool GFMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Elem x) { return x == 0; });
}

namespace {

void require_same_shape(const GFMatrix& a, const GFMatrix& b) {
    if (!(a.field() == b.field()) || a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix shape or field mismatch");
}

}  // namespace

GFMatrix operator+(const GFMatrix& a, const GFMatrix& b) {
    require_same_shape(a, b);
    GFMatrix out(a.field(), a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a.field().add(a(r, c), b(r, c));
    return out;
}

GFMatrix operator-(const GFMatrix& a, const GFMatrix& b) {
    require_same_shape(a, b);
    GFMatrix out(a.field(), a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a.field().sub(a(r, c), b(r, c));
    return out;
}

GFMatrix operator*(const GFMatrix& a, const GFMatrix& b) {
    if (!(a.field() == b.field()) || a.cols() != b.rows())
        throw std::invalid_argument("matrix product shape or field mismatch");
    const Field& f = a.field();
    GFMatrix out(f, a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const Elem x = a(r, i);
            if (x == 0) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) = f.add(out(r, c), f.mul(x, b(i, c)));
        }
    return out;
}

GFMatrix vstack(const GFMatrix& top, const GFMatrix& bottom) {
    if (!(top.field() == bottom.field()) || top.cols() != bottom.cols())
        throw std::invalid_argument("vstack: shape or field mismatch");
    std::vector<Elem> data = top.data();
    data.insert(data.end(), bottom.data().begin(), bottom.data().end());
    return GFMatrix(top.field(), top.rows() + bottom.rows(), top.cols(), std::move(data));
}

GFMatrix hstack(const GFMatrix& left, const GFMatrix& right) {
    if (!(left.field() == right.field()) || left.rows() != right.rows())
        throw std::invalid_argument("hstack: shape or field mismatch");
    GFMatrix out(left.field(), left.rows(), left.cols() + right.cols());
    for (std::size_t r = 0; r < left.rows(); ++r) {
        std::copy(left.row(r).begin(), left.row(r).end(), out.row(r).begin());
        std::copy(right.row(r).begin(), right.row(r).end(), out.row(r).begin() + left.cols());
    }
    return out;
}

GFMatrix top_rows(const GFMatrix& m, std::size_t count) {
    if (count > m.rows()) throw std::invalid_argument("top_rows: not enough rows");
    return GFMatrix(m.field(), count, m.cols(),
                    std::vector<Elem>(m.data().begin(), m.data().begin() + count * m.cols()));
}

GFMatrix select_columns(const GFMatrix& m, std::span<const std::size_t> columns) {
    GFMatrix out(m.field(), m.rows(), columns.size());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t j = 0; j < columns.size(); ++j) out(r, j) = m(r, columns[j]);
    return out;
}

RrefResult rref(const GFMatrix& m) {
    GFMatrix a = m;
    const Field& f = a.field();
    std::vector<std::size_t> pivots;
    std::size_t lead_row = 0;
    for (std::size_t col = 0; col < a.cols() && lead_row < a.rows(); ++col) {
        std::size_t pivot = lead_row;
        while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
        if (pivot == a.rows()) continue;
        if (pivot != lead_row) std::swap_ranges(a.row(pivot).begin(), a.row(pivot).end(), a.row(lead_row).begin());
        const Elem scale = f.inv(a(lead_row, col));
        for (auto& x : a.row(lead_row)) x = f.mul(x, scale);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == lead_row) continue;
            const Elem factor = a(r, col);
            if (factor == 0) continue;
            for (std::size_t c = col; c < a.cols(); ++c)
                a(r, c) = f.sub(a(r, c), f.mul(factor, a(lead_row, c)));
        }
        pivots.push_back(col);
        ++lead_row;
    }
    return {std::move(a), pivots.size(), std::move(pivots)};
}

std::size_t rank(const GFMatrix& m) { return rref(m).rank; }

// ---------------------------------------------------------------------------
// Extension fields

ExtensionField::ExtensionField(Field base, unsigned degree, std::uint64_t max_elements)
    : base_(std::move(base)), degree_(degree) {
    if (degree == 0) throw std::invalid_argument("extension degree must be positive");
    size_ = checked_pow(base_.order(), degree, max_elements);
    if (size_ > max_elements)
        throw std::length_error("GF(" + std::to_string(base_.order()) + "^" + std::to_string(degree) +
                                ") exceeds the element cap of " + std::to_string(max_elements));
    modulus_ = smallest_irreducible(base_, degree);
}

ExtensionField::Element ExtensionField::element(std::uint64_t index) const {
    if (index >= size_) throw std::out_of_range("extension element index out of range");
    Element a(degree_);
    for (auto& c : a) {
        c = static_cast<Elem>(index % base_.order());
        index /= base_.order();
    }
    return a;
}

std::uint64_t ExtensionField::index_of(const Element& a) const {
    if (a.size() != degree_) throw std::invalid_argument("extension element has wrong length");
    std::uint64_t index = 0;
    for (std::size_t i = a.size(); i-- > 0;) index = index * base_.order() + a[i];
    return index;
}

ExtensionField::Element ExtensionField::add(const Element& a, const Element& b) const {
    Element out(degree_);
    for (unsigned i = 0; i < degree_; ++i) out[i] = base_.add(a[i], b[i]);
    return out;
}

ExtensionField::Element ExtensionField::shift(const Element& a) const {
    // x * a, then reduce x^n = -(m_0 + ... + m_{n-1} x^{n-1}).
    Element out(degree_, 0);
    const Elem top = a[degree_ - 1];
    for (unsigned i = degree_ - 1; i > 0; --i) out[i] = a[i - 1];
    for (unsigned i = 0; i < degree_; ++i) out[i] = base_.sub(out[i], base_.mul(top, modulus_[i]));
    return out;
}

ExtensionField::Element ExtensionField::mul(const Element& a, const Element& b) const {
    Poly pa(a.begin(), a.end());
    Poly pb(b.begin(), b.end());
    normalize(pa);
    normalize(pb);
    Poly prod = poly_mod_monic(base_, poly_mul(base_, pa, pb), modulus_);
    prod.resize(degree_, 0);
    return prod;
}

GFMatrix mult_matrix(const ExtensionField& ext, const ExtensionField::Element& alpha) {
    const unsigned n = ext.degree();
    GFMatrix m(ext.base(), n, n);
    ExtensionField::Element row = alpha;
    for (unsigned j = 0; j < n; ++j) {
        std::copy(row.begin(), row.end(), m.row(j).begin());
        if (j + 1 < n) row = ext.shift(row);
    }
    return m;
}

}  // namespace divsets

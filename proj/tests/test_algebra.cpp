#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "divsets/algebra.hpp"
#include "oracles.hpp"

using namespace divsets;

namespace {

GFMatrix mat(const Field& f, std::size_t rows, std::size_t cols, std::vector<Elem> data) {
    return GFMatrix(f, rows, cols, std::move(data));
}

}  // namespace

TEST_CASE("gauss numbers") {
    CHECK(gauss_number(2, 6) == 63);
    CHECK(gauss_number(2, 0) == 0);
    CHECK(gauss_number(3, 3) == 13);
    CHECK_THROWS_AS(gauss_number(1, 3), std::invalid_argument);
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u})
        for (unsigned v = 0; v <= 12; ++v) CHECK(gauss_number(q, v) == oracle::points(q, v));
}

TEST_CASE("q-Pascal") {
    for (unsigned q : {2u, 3u, 4u, 5u})
        for (unsigned a = 0; a <= 8; ++a)
            for (unsigned b = 0; b <= 8; ++b)
                CHECK(gauss_number(q, a + b) == gauss_number(q, a) + ipow(q, a) * gauss_number(q, b));
}

TEST_CASE("integer helpers") {
    CHECK(floor_div(7, 2) == 3);
    CHECK(floor_div(-7, 2) == -4);
    CHECK(ceil_div(7, 2) == 4);
    CHECK(ceil_div(-7, 2) == -3);
    CHECK(floor(Rat(31, 3)) == 10);
    CHECK(ceil(Rat(31, 3)) == 11);
    CHECK(floor(Rat(-1, 2)) == -1);
    CHECK(ceil(Rat(-1, 2)) == 0);
    for (int x = 0; x < 2000; ++x) {
        const Int s = isqrt(x);
        CHECK(s * s <= x);
        CHECK((s + 1) * (s + 1) > x);
    }
    CHECK(isqrt(833) == 28);
}

TEST_CASE("field context") {
    const Field f7 = field_context(7);
    CHECK(f7.characteristic() == 7);
    CHECK(f7.degree() == 1);
    CHECK(f7.is_prime());

    const Field f4 = field_context(4);
    CHECK(f4.characteristic() == 2);
    CHECK(f4.degree() == 2);
    CHECK(f4.modulus() == Poly{1, 1, 1});

    CHECK(field_context(8).modulus() == Poly{1, 1, 0, 1});
    CHECK(field_context(9).modulus() == Poly{1, 0, 1});
    CHECK_THROWS_AS(field_context(6), std::invalid_argument);
    CHECK_THROWS_AS(field_context(1), std::invalid_argument);
    CHECK_THROWS_AS(field_context(12), std::invalid_argument);
}

TEST_CASE("smallest irreducible is the first irreducible in scan order") {
    // Degree-2 monics over GF(2): x^2, x^2+1, x^2+x, x^2+x+1; only the last has no root.
    const Field f2(2);
    CHECK(smallest_irreducible(f2, 2) == Poly{1, 1, 1});
    CHECK(is_irreducible(f2, Poly{1, 1, 1}));
    CHECK_FALSE(is_irreducible(f2, Poly{1, 0, 1}));
    CHECK(smallest_irreducible(f2, 5) == Poly{1, 0, 1, 0, 0, 1});
    // Over GF(3) the candidate x^2 + 1 has no root.
    CHECK(smallest_irreducible(Field(3), 2) == Poly{1, 0, 1});
}

TEST_CASE("field axioms on small fields") {
    for (std::uint64_t q : {2u, 3u, 4u, 5u, 8u, 9u, 16u, 25u, 27u}) {
        CAPTURE(q);
        const Field f(q);
        const auto n = static_cast<Elem>(q);
        for (Elem a = 0; a < n; ++a) {
            CHECK(f.add(a, f.neg(a)) == 0);
            CHECK(f.mul(a, 1) == a);
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
            CHECK(f.from_coefficients(f.coefficients(a)) == a);
            for (Elem b = 0; b < n; ++b) {
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                CHECK(f.sub(f.add(a, b), b) == a);
                for (Elem c = 0; c < n; c += 3) {
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                    CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
                }
            }
        }
        CHECK_THROWS_AS(f.inv(0), std::domain_error);
    }
}

TEST_CASE("rref examples") {
    const Field f2(2);
    const auto id = GFMatrix::identity(f2, 4);
    CHECK(rref(id).matrix == id);
    CHECK(rref(id).rank == 4);

    const auto m = mat(f2, 2, 3, {1, 1, 0, 0, 1, 1});
    const auto r = rref(m);
    CHECK(r.matrix == mat(f2, 2, 3, {1, 0, 1, 0, 1, 1}));
    CHECK(r.rank == 2);
    CHECK(r.pivots == std::vector<std::size_t>{0, 1});

    const GFMatrix zero(f2, 3, 4);
    CHECK(rref(zero).matrix == zero);
    CHECK(rref(zero).rank == 0);
}

TEST_CASE("rref is idempotent and rank counts nonzero rows") {
    for (std::uint64_t q : {2u, 3u, 4u}) {
        const Field f(q);
        std::uint64_t seed = 12345;
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t rows = 1 + trial % 5;
            const std::size_t cols = 1 + (trial / 5) % 6;
            std::vector<Elem> data(rows * cols);
            for (auto& x : data) {
                seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
                x = static_cast<Elem>((seed >> 33) % q);
            }
            const GFMatrix m(f, rows, cols, data);
            const auto r = rref(m);
            CHECK(rref(r.matrix).matrix == r.matrix);
            std::size_t nonzero = 0;
            for (std::size_t i = 0; i < rows; ++i) {
                bool any = false;
                for (Elem x : r.matrix.row(i)) any = any || x != 0;
                nonzero += any;
            }
            CHECK(nonzero == r.rank);
            CHECK(rank(m) == r.rank);
            if (f.is_prime()) {
                oracle::Rows plain;
                for (std::size_t i = 0; i < rows; ++i) plain.emplace_back(m.row(i).begin(), m.row(i).end());
                CHECK(oracle::rank_mod(plain, static_cast<unsigned>(q)) == r.rank);
            }
        }
    }
}

TEST_CASE("matrix operations") {
    const Field f3(3);
    const auto a = mat(f3, 2, 2, {1, 2, 0, 1});
    const auto b = mat(f3, 2, 2, {2, 2, 1, 0});
    CHECK(a + b == mat(f3, 2, 2, {0, 1, 1, 1}));
    CHECK(a - b == mat(f3, 2, 2, {2, 0, 2, 1}));
    CHECK(a * b == mat(f3, 2, 2, {1, 2, 1, 0}));
    CHECK(hstack(a, b) == mat(f3, 2, 4, {1, 2, 2, 2, 0, 1, 1, 0}));
    CHECK(vstack(a, b) == mat(f3, 4, 2, {1, 2, 0, 1, 2, 2, 1, 0}));
    CHECK(top_rows(b, 1) == mat(f3, 1, 2, {2, 2}));
    const std::vector<std::size_t> cols{1};
    CHECK(select_columns(a, cols) == mat(f3, 2, 1, {2, 1}));
    CHECK_THROWS(a + GFMatrix(f3, 3, 2));
    CHECK_THROWS(a * GFMatrix(f3, 3, 3));
}

TEST_CASE("multiplication matrices") {
    const ExtensionField gf4(Field(2), 2);
    const auto x = gf4.element(2);
    CHECK(mult_matrix(gf4, x) == mat(Field(2), 2, 2, {0, 1, 1, 1}));
    CHECK(mult_matrix(gf4, gf4.element(1)) == GFMatrix::identity(Field(2), 2));
    CHECK(mult_matrix(gf4, gf4.element(0)).is_zero());
}

TEST_CASE("distinct multiplication matrices over GF(32) differ in full rank") {
    const ExtensionField ext(Field(2), 5);
    std::vector<GFMatrix> ms;
    for (std::uint64_t i = 0; i < ext.size(); ++i) ms.push_back(mult_matrix(ext, ext.element(i)));
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = i + 1; j < ms.size(); ++j) CHECK(rank(ms[i] - ms[j]) == 5);
}

TEST_CASE("mult_matrix is a ring homomorphism") {
    struct Case {
        std::uint64_t q;
        unsigned n;
    };
    // GF(4), GF(8) and GF(9) over their prime fields, and GF(16) over GF(4).
    for (const Case c : {Case{2, 2}, Case{2, 3}, Case{3, 2}, Case{4, 2}}) {
        CAPTURE(c.q);
        CAPTURE(c.n);
        const ExtensionField ext(Field(c.q), c.n);
        for (std::uint64_t i = 0; i < ext.size(); ++i) {
            const auto a = ext.element(i);
            CHECK(ext.index_of(a) == i);
            const auto ma = mult_matrix(ext, a);
            for (std::uint64_t j = 0; j < ext.size(); ++j) {
                const auto b = ext.element(j);
                const auto mb = mult_matrix(ext, b);
                CHECK(mult_matrix(ext, ext.add(a, b)) == ma + mb);
                CHECK(mult_matrix(ext, ext.mul(a, b)) == ma * mb);
            }
        }
    }
}

TEST_CASE("extension field guard") {
    CHECK_THROWS_AS(ExtensionField(Field(2), 30, 1u << 20), std::length_error);
    const ExtensionField ext(Field(3), 3);
    CHECK(ext.size() == 27);
    CHECK(ext.shift(ext.element(1)) == ext.element(3));
}

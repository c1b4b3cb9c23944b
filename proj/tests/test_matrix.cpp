#include <random>
#include <sstream>
#include <vector>

#include "catch_amalgamated.hpp"
#include "support/brute_fix.hpp"
#include "support/naive_star.hpp"
#include "support/reference_matrix.hpp"
#include "uted/cubic.hpp"
#include "uted/matrix_laws.hpp"
#include "uted/matrix_model.hpp"
#include "uted/matrix_product.hpp"
#include "uted/random_tree.hpp"

using namespace uted;
using uted::testing::ReferenceMatrix;

namespace {

template <class M>
void require_same(const M& m, const ReferenceMatrix& ref) {
    for (int i = 0; i <= m.side() + 1; ++i) {
        for (int j = 0; j <= m.side() + 1; ++j) {
            INFO("cell " << i << "," << j);
            REQUIRE(m.value(i, j) == ref.value(i, j));
        }
    }
}

// Monotone matrix with zero diagonal (updates stay off it) and values in [0, bound].
template <class M>
M random_monotone(std::mt19937_64& rng, int side, int window, int bound, int updates) {
    typename M::Builder b(side, window);
    for (int t = 1; t <= side; ++t) {
        b.rangemax(t, t, 0);
    }
    for (int u = 0; u < updates; ++u) {
        int i = uniform_int(rng, 1, side - 1);
        int j = uniform_int(rng, i + 1, std::min(side, i + window));
        b.rangemax(i, j, uniform_int(rng, 0, bound));
    }
    return b.build();
}

template <class M>
void require_equal_to(const M& m, const std::vector<std::vector<Score>>& expect) {
    for (int i = 1; i <= m.side(); ++i) {
        for (int j = i; j <= std::min(m.side(), i + m.window()); ++j) {
            INFO("cell " << i << "," << j);
            REQUIRE(m.value(i, j) == expect[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
    }
}

}  // namespace

TEMPLATE_TEST_CASE("fresh matrix is -inf with no hits", "", DenseSimMatrix, PersistentSimMatrix) {
    TestType m(8, 4);
    CHECK(m.side() == 8);
    CHECK(m.window() == 4);
    for (int i = 1; i <= 8; ++i) {
        for (int j = 1; j <= 8; ++j) {
            CHECK(m.value(i, j) == kNegInf);
        }
        CHECK(m.mincol(i, 0) == kNotFound);
        CHECK(m.maxrow(i, 0) == kNotFound);
    }
}

TEMPLATE_TEST_CASE("rangemax and queries agree with the reference model", "", DenseSimMatrix, PersistentSimMatrix) {
    std::mt19937_64 rng(2024);
    long ops = 0;
    for (int round = 0; round < 60; ++round) {
        int m = uniform_int(rng, 1, 6);
        int side = 4 * m;
        int window = 2 * m;
        ReferenceMatrix ref(side, window);
        TestType cur(side, window);
        while (ops < 12000 * (round + 1) / 60) {
            int batch = uniform_int(rng, 1, 4);
            typename TestType::Builder b(cur);
            for (int u = 0; u < batch; ++u, ++ops) {
                int i = uniform_int(rng, -1, side + 2);
                int j = uniform_int(rng, -1, side + 2);
                Score x = uniform_int(rng, 0, 9) == 0 ? kNegInf : uniform_int(rng, 0, 20);
                b.rangemax(i, j, x);
                ref.rangemax(i, j, x);
            }
            cur = b.build();
            for (int q = 0; q < 6; ++q, ++ops) {
                int t = uniform_int(rng, -1, side + 2);
                Score x = uniform_int(rng, -2, 22);
                INFO("query " << t << " threshold " << x);
                REQUIRE(cur.mincol(t, x) == ref.mincol(t, x));
                REQUIRE(cur.maxrow(t, x) == ref.maxrow(t, x));
            }
        }
        require_same(cur, ref);
    }
    CHECK(ops >= 10000);
}

TEMPLATE_TEST_CASE("builds leave earlier versions untouched", "", DenseSimMatrix, PersistentSimMatrix) {
    std::mt19937_64 rng(77);
    const int side = 16;
    const int window = 8;
    std::vector<TestType> versions{TestType(side, window)};
    std::vector<ReferenceMatrix> refs{ReferenceMatrix(side, window)};
    for (int step = 0; step < 40; ++step) {
        auto base = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(versions.size()) - 1));
        ReferenceMatrix ref = refs[base];
        typename TestType::Builder b(versions[base]);
        for (int u = 0; u < 3; ++u) {
            int i = uniform_int(rng, 1, side);
            int j = uniform_int(rng, 1, side);
            Score x = uniform_int(rng, 0, 12);
            b.rangemax(i, j, x);
            ref.rangemax(i, j, x);
        }
        versions.push_back(b.build());
        refs.push_back(ref);
    }
    for (std::size_t v = 0; v < versions.size(); ++v) {
        require_same(versions[v], refs[v]);
    }
}

TEMPLATE_TEST_CASE("a builder can keep going after build", "", DenseSimMatrix, PersistentSimMatrix) {
    typename TestType::Builder b(8, 4);
    b.rangemax(3, 5, 2);
    TestType first = b.build();
    b.rangemax(4, 4, 7);
    TestType second = b.build();
    CHECK(first.value(3, 5) == 2);
    CHECK(first.value(4, 4) == kNegInf);
    CHECK(second.value(3, 5) == 7);
    CHECK(second.value(4, 4) == 7);
    CHECK(second.value(1, 5) == 7);
    CHECK(second.value(1, 6) == kNegInf);
}

TEST_CASE("zero matrix, conversion and csv") {
    auto z = zero_matrix<DenseSimMatrix>(4, 2);
    std::ostringstream out;
    write_csv(out, z);
    CHECK(out.str() == ",1,2,3,4\n1,0,0,0,-inf\n2,-inf,0,0,0\n3,-inf,-inf,0,0\n4,-inf,-inf,-inf,0\n");
    auto p = convert<PersistentSimMatrix>(z);
    CHECK(equal_valid(p, z));
    auto q = rangemax(p, 2, 3, 1);
    CHECK(first_valid_mismatch(q, z) == Cell{1, 3});
    CHECK(first_valid_mismatch(z, zero_matrix<DenseSimMatrix>(8, 4)) == Cell{0, 0});
    CHECK(is_valid_cell(8, 4, 2, 6));
    CHECK_FALSE(is_valid_cell(8, 4, 2, 7));
    CHECK_FALSE(is_valid_cell(8, 4, 3, 2));
}

TEMPLATE_TEST_CASE("mul_bounded matches the definition", "", DenseSimMatrix, PersistentSimMatrix) {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 150; ++it) {
        int m = uniform_int(rng, 1, 5);
        int side = 4 * m;
        int window = 2 * m;
        int ta = uniform_int(rng, 0, 8);
        int tb = uniform_int(rng, 0, 8);
        auto a = random_monotone<TestType>(rng, side, window, ta, uniform_int(rng, 0, 12));
        auto b = random_monotone<TestType>(rng, side, window, tb, uniform_int(rng, 0, 12));
        auto expect = testing::naive_star(a, b);
        require_equal_to(mul_bounded(a, b, ta, tb), expect);
        require_equal_to(star_similarity(a, b, naive_backend()), expect);
    }
}

TEMPLATE_TEST_CASE("mul_bounded rejects operands over the bound", "", DenseSimMatrix, PersistentSimMatrix) {
    auto z = zero_matrix<TestType>(8, 4);
    auto a = rangemax(z, 2, 4, 5);
    CHECK_THROWS_AS(mul_bounded(a, z, 4, 0), BoundViolation);
    CHECK_THROWS_AS(mul_bounded(z, a, 0, 4), BoundViolation);
    CHECK_NOTHROW(mul_bounded(a, z, 5, 0));
    CHECK_THROWS_AS(mul_bounded(z, zero_matrix<TestType>(4, 2), 0, 0), std::invalid_argument);
}

TEMPLATE_TEST_CASE("star_similarity requires a zero diagonal", "", DenseSimMatrix, PersistentSimMatrix) {
    auto z = zero_matrix<TestType>(8, 4);
    CHECK_THROWS_AS(star_similarity(rangemax(z, 3, 3, 1), z, naive_backend()), std::logic_error);
    CHECK_THROWS_AS(star_similarity(z, TestType(8, 4), naive_backend()), std::logic_error);
}

TEST_CASE("fix_invalid matches brute force") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 60; ++it) {
        int m = uniform_int(rng, 1, 6);
        int side = 4 * m;
        auto a = random_monotone<DenseSimMatrix>(rng, side, 2 * m, 10, uniform_int(rng, 0, 20));
        auto fast = fix_invalid(a);
        CHECK(fast == testing::brute_fix_invalid(a));
        CHECK(fix_invalid(convert<PersistentSimMatrix>(a)) == fast);
    }
}

TEST_CASE("fixed similarity matrices obey the laws") {
    std::mt19937_64 rng(6);
    Alphabet names;
    for (int it = 0; it < 40; ++it) {
        auto t = random_tree(uniform_int(rng, 0, 8), TreeShape::random, 2, rng, names);
        TourContext q(random_tree(uniform_int(rng, 1, 8), TreeShape::random, 2, rng, names));
        auto s = compute_S_cubic<DenseSimMatrix>(t, q);
        auto law = check_fixed_laws(fix_invalid(s));
        INFO(law.value_or(""));
        CHECK_FALSE(law.has_value());
    }
    SquareMatrix bad(3, 0);
    CHECK(check_fixed_laws(bad).has_value());
}

TEST_CASE("bd_product_naive on small examples") {
    SquareMatrix a(2);
    a(1, 1) = 0;
    a(1, 2) = 1;
    a(2, 2) = 0;
    SquareMatrix b(2);
    b(1, 1) = 0;
    b(1, 2) = 2;
    b(2, 2) = 0;
    auto c = bd_product_naive(a, b);
    CHECK(c(1, 1) == 0);
    CHECK(c(1, 2) == 2);
    CHECK(c(2, 2) == 0);
    CHECK(c(2, 1) == kNegInf);

    SquareMatrix d(3, 1);
    auto e = bd_product_naive(d, d);
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            CHECK(e(i, j) == 2);
        }
    }
    CHECK_THROWS(bd_product_naive(a, d));
}

TEST_CASE("bd_product_naive matches an independent triple loop") {
    std::mt19937_64 rng(8);
    for (int it = 0; it < 50; ++it) {
        const int n = 8;
        SquareMatrix a(n);
        SquareMatrix b(n);
        std::vector<std::vector<Score>> ga(n, std::vector<Score>(n, kNegInf));
        std::vector<std::vector<Score>> gb = ga;
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= n; ++j) {
                if (uniform_int(rng, 0, 4) > 0) {
                    a(i, j) = ga[i - 1][j - 1] = uniform_int(rng, -5, 20);
                }
                if (uniform_int(rng, 0, 4) > 0) {
                    b(i, j) = gb[i - 1][j - 1] = uniform_int(rng, -5, 20);
                }
            }
        }
        auto c = bd_product_naive(a, b);
        auto g = testing::grid_product(ga, gb);
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= n; ++j) {
                REQUIRE(c(i, j) == g[i - 1][j - 1]);
            }
        }
    }
}

TEST_CASE("similarity laws detect broken matrices") {
    auto z = zero_matrix<DenseSimMatrix>(8, 4);
    CHECK_FALSE(check_similarity_laws(z, 0).has_value());
    CHECK(check_similarity_laws(rangemax(z, 2, 2, 1), 3).has_value());
    CHECK(check_similarity_laws(rangemax(z, 2, 4, 3), 3).has_value());
    CHECK(check_similarity_laws(rangemax(z, 2, 4, 7), 3).has_value());
    CHECK_FALSE(check_similarity_laws(rangemax(z, 2, 4, 2), 3).has_value());
}

#include <doctest.h>

#include <random>

#include "stepop/operator.hpp"
#include "stepop/oracle.hpp"

using namespace stepop;

namespace {

MultiIndex full_index(int n_dims, std::vector<int> entries) {
    return MultiIndex{DimSubset::full(n_dims), std::move(entries)};
}

bool exactly_equal(const StepOperator& a, const StepOperator& b) {
    return max_coeff_difference(a, b) == 0.0;
}

// Lemma 2, first identity: C_alpha(i,m) as the superset sum of D elements.
StepOperator c_from_d_sum(int n, int p, DimSubset alpha, const MultiIndex& i, const MultiIndex& m) {
    StepOperator sum = zero_operator(n, p);
    for_each_subset_of(alpha.complement(n), [&](DimSubset gamma) {
        const MultiIndex arg = diamond(m, restrict_to(i, gamma));
        sum = add(sum, d_basis_operator(n, p, alpha.unite(gamma), i, arg));
    });
    return sum;
}

}  // namespace

TEST_CASE("identity acts as the identity on step functions") {
    std::mt19937 rng(5);
    for (int q : {1, 2}) {
        const StepFunction u = random_integer_function(rng, 2, 2, q, -3, 3);
        const StepFunction v = apply(identity_operator(2, 2), u);
        for (std::size_t k = 0; k < u.values().size(); ++k)
            CHECK(u.values()[k] == v.values()[k]);
    }
}

TEST_CASE("zero composes to zero") {
    std::mt19937 rng(6);
    const StepOperator a = random_integer_operator(rng, 2, 2);
    CHECK(exactly_equal(compose(zero_operator(2, 2), a), zero_operator(2, 2)));
    CHECK(exactly_equal(compose(a, zero_operator(2, 2)), zero_operator(2, 2)));
}

TEST_CASE("add and scale behave coefficientwise") {
    std::mt19937 rng(7);
    const StepOperator a = random_integer_operator(rng, 2, 2);
    CHECK(exactly_equal(add(a, zero_operator(2, 2)), a));
    CHECK(approx_equal(scale(Complex{0.0}, a), zero_operator(2, 2)));
    CHECK(exactly_equal(subtract(a, a), scale(Complex{0.0}, a)));
}

TEST_CASE("integrator averages the first half-cell") {
    // p=2, N=1: the operator 2 * integral over [0,1/2) applied to
    // u = (1,2,5,7) on the quarter grid is constant (1+2)/2.
    const StepOperator b11 = integrator_generator(1, 1, 1, 2);
    StepFunction u{1, 2, 2};
    u.values() = {Complex{1.0}, Complex{2.0}, Complex{5.0}, Complex{7.0}};
    const StepFunction v = apply(b11, u);
    for (const Complex& c : v.values()) CHECK(c == Complex{1.5});
}

TEST_CASE("generator relations, single axis") {
    const int n = 1, p = 2;
    const auto a11 = multiplier_generator(1, 1, n, p);
    const auto a21 = multiplier_generator(2, 1, n, p);
    const auto b11 = integrator_generator(1, 1, n, p);
    const auto b21 = integrator_generator(2, 1, n, p);
    CHECK(exactly_equal(compose(a11, a21), zero_operator(n, p)));
    CHECK(exactly_equal(compose(b11, b21), b21));
    CHECK(exactly_equal(compose(b11, a21), zero_operator(n, p)));
}

TEST_CASE("generator relations, exhaustive sweep") {
    for (int n = 1; n <= 2; ++n)
        for (int p = 1; p <= 3; ++p) {
            for (int j = 1; j <= n; ++j)
                for (int i = 1; i <= p; ++i)
                    for (int r = 1; r <= p; ++r) {
                        const auto a_ij = multiplier_generator(i, j, n, p);
                        const auto a_rj = multiplier_generator(r, j, n, p);
                        const auto b_ij = integrator_generator(i, j, n, p);
                        const auto b_rj = integrator_generator(r, j, n, p);
                        const auto delta = (i == r) ? Complex{1.0} : Complex{0.0};
                        CHECK(exactly_equal(compose(a_ij, a_rj), scale(delta, a_ij)));
                        CHECK(exactly_equal(compose(b_ij, a_rj), scale(delta, b_ij)));
                        CHECK(exactly_equal(compose(b_ij, b_rj), b_rj));
                    }
            // different second indices commute, for every generator kind
            for (int j = 1; j <= n; ++j)
                for (int l = 1; l <= n; ++l) {
                    if (j == l) continue;
                    for (int i = 1; i <= p; ++i)
                        for (int r = 1; r <= p; ++r) {
                            const StepOperator gens_j[] = {multiplier_generator(i, j, n, p),
                                                           integrator_generator(i, j, n, p)};
                            const StepOperator gens_l[] = {multiplier_generator(r, l, n, p),
                                                           integrator_generator(r, l, n, p)};
                            for (const auto& x : gens_j)
                                for (const auto& y : gens_l)
                                    CHECK(exactly_equal(compose(x, y), compose(y, x)));
                        }
                }
        }
}

TEST_CASE("orthogonal basis at n=1, p=1") {
    // D_empty = identity - integral; idempotent, and orthogonal to D_full.
    const int n = 1, p = 1;
    const MultiIndex i = full_index(1, {1});
    const MultiIndex empty{};
    const auto d_lo = d_basis_operator(n, p, DimSubset{}, i, empty);
    const auto expected = subtract(identity_operator(n, p), integrator_generator(1, 1, n, p));
    CHECK(exactly_equal(d_lo, expected));
    CHECK(exactly_equal(compose(d_lo, d_lo), d_lo));

    const auto d_hi = d_basis_operator(n, p, DimSubset::of({1}), i, MultiIndex{DimSubset::of({1}), {1}});
    CHECK(exactly_equal(compose(d_lo, d_hi), zero_operator(n, p)));
    CHECK(exactly_equal(compose(d_hi, d_lo), zero_operator(n, p)));
}

TEST_CASE("product basis reassembles from the orthogonal basis") {
    for (int n = 1; n <= 2; ++n)
        for (int p = 1; p <= 2; ++p)
            for (DimSubset alpha : enumerate_subsets(n))
                for (const MultiIndex& i : enumerate_indices(DimSubset::full(n), p))
                    for (const MultiIndex& m : enumerate_indices(alpha, p)) {
                        const auto direct = c_basis_operator(n, p, alpha, i, m);
                        CHECK(exactly_equal(c_from_d_sum(n, p, alpha, i, m), direct));
                    }
}

TEST_CASE("orthogonal basis multiplication table") {
    // zero across different subsets or mismatched outer components, and
    // delta(m, p_alpha) D(i, r) on the matching block.
    for (int n = 1; n <= 2; ++n)
        for (int p = 1; p <= 2; ++p) {
            const auto all_full = enumerate_indices(DimSubset::full(n), p);
            for (DimSubset alpha : enumerate_subsets(n))
                for (DimSubset beta : enumerate_subsets(n))
                    for (const MultiIndex& i : all_full)
                        for (const MultiIndex& pp : all_full)
                            for (const MultiIndex& m : enumerate_indices(alpha, p))
                                for (const MultiIndex& r : enumerate_indices(beta, p)) {
                                    const auto lhs =
                                        compose(d_basis_operator(n, p, alpha, i, m),
                                                d_basis_operator(n, p, beta, pp, r));
                                    StepOperator expected = zero_operator(n, p);
                                    const DimSubset abar = alpha.complement(n);
                                    if (alpha == beta &&
                                        restrict_to(i, abar) == restrict_to(pp, abar) &&
                                        m == restrict_to(pp, alpha))
                                        expected = d_basis_operator(n, p, alpha, i, r);
                                    CHECK(exactly_equal(lhs, expected));
                                }
        }
}

TEST_CASE("identity plus integral on mean and mean-free inputs") {
    const int n = 1, p = 1;
    const StepOperator a = add(identity_operator(n, p), integrator_generator(1, 1, n, p));
    StepFunction ones{n, p, 1};
    ones.values() = {Complex{1.0}};
    const StepFunction v = apply(a, ones);
    CHECK(v.values()[0] == Complex{2.0});

    StepFunction wave{n, p, 2};
    wave.values() = {Complex{1.0}, Complex{-1.0}};
    const StepFunction w = apply(a, wave);
    CHECK(w.values()[0] == Complex{1.0});
    CHECK(w.values()[1] == Complex{-1.0});
}

TEST_CASE("apply respects composition") {
    std::mt19937 rng(9);
    for (int t = 0; t < 25; ++t) {
        const int n = 1 + static_cast<int>(rng() % 2);
        const int p = 1 + static_cast<int>(rng() % 2);
        const int q = 1 + static_cast<int>(rng() % 2);
        const StepOperator a = random_integer_operator(rng, n, p);
        const StepOperator b = random_integer_operator(rng, n, p);
        const StepFunction u = random_integer_function(rng, n, p, q);
        const StepFunction lhs = apply(compose(a, b), u);
        const StepFunction rhs = apply(a, apply(b, u));
        double worst = 0.0;
        for (std::size_t k = 0; k < lhs.values().size(); ++k)
            worst = std::max(worst, std::abs(lhs.values()[k] - rhs.values()[k]));
        const double denom = 1.0 + l2_norm(rhs);
        CHECK(worst / denom <= 1e-10);
    }
}

TEST_CASE("compose is associative and bilinear") {
    std::mt19937 rng(13);
    for (int t = 0; t < 20; ++t) {
        const int n = 1 + static_cast<int>(rng() % 2);
        const int p = 1 + static_cast<int>(rng() % 2);
        const StepOperator a = random_integer_operator(rng, n, p);
        const StepOperator b = random_integer_operator(rng, n, p);
        const StepOperator c = random_integer_operator(rng, n, p);
        CHECK(approx_equal(compose(compose(a, b), c), compose(a, compose(b, c)), 1e-10));
        CHECK(approx_equal(compose(add(a, b), c), add(compose(a, c), compose(b, c)), 1e-10));
        CHECK(approx_equal(compose(a, add(b, c)), add(compose(a, b), compose(a, c)), 1e-10));
        const Complex lambda{2.0, -1.0};
        CHECK(approx_equal(compose(scale(lambda, a), b), scale(lambda, compose(a, b)), 1e-10));
    }
}

TEST_CASE("identity is a two-sided unit") {
    std::mt19937 rng(15);
    for (int t = 0; t < 10; ++t) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const int p = 1 + static_cast<int>(rng() % 2);
        const StepOperator a = random_integer_operator(rng, n, p);
        const StepOperator id = identity_operator(n, p);
        CHECK(exactly_equal(compose(a, id), a));
        CHECK(exactly_equal(compose(id, a), a));
    }
}

TEST_CASE("apply commutes with refinement") {
    std::mt19937 rng(21);
    for (int t = 0; t < 10; ++t) {
        const int n = 1 + static_cast<int>(rng() % 2);
        const int p = 1 + static_cast<int>(rng() % 2);
        const StepOperator a = random_integer_operator(rng, n, p);
        const StepFunction u = random_integer_function(rng, n, p, 2);
        const StepFunction coarse_then_refine = refine(apply(a, u), 2);
        const StepFunction refine_then_apply = apply(a, refine(u, 2));
        for (std::size_t k = 0; k < coarse_then_refine.values().size(); ++k)
            CHECK(std::abs(coarse_then_refine.values()[k] - refine_then_apply.values()[k]) <=
                  1e-12);
    }
}

TEST_CASE("apply is linear in the function argument") {
    std::mt19937 rng(27);
    const StepOperator a = random_integer_operator(rng, 2, 2);
    const StepFunction u = random_integer_function(rng, 2, 2, 2);
    const StepFunction v = random_integer_function(rng, 2, 2, 2);
    const Complex lambda{0.5, 2.0};
    const StepFunction lhs = apply(a, fn_add(u, fn_scale(lambda, v)));
    const StepFunction rhs = fn_add(apply(a, u), fn_scale(lambda, apply(a, v)));
    for (std::size_t k = 0; k < lhs.values().size(); ++k)
        CHECK(std::abs(lhs.values()[k] - rhs.values()[k]) <= 1e-12);
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(StepOperator(0, 1), SizeGuardError);
    CHECK_THROWS_AS(StepOperator(17, 1), SizeGuardError);
    CHECK_THROWS_AS(StepOperator(16, 3), SizeGuardError);  // 3^16 > 2^20
    CHECK_THROWS_AS(StepOperator(1, 0), SizeGuardError);
    CHECK_THROWS_AS(StepFunction(1, 1 << 19, 4), SizeGuardError);
    CHECK_THROWS_AS(multiplier_generator(3, 1, 1, 2), IndexError);
    CHECK_THROWS_AS(integrator_generator(1, 2, 1, 2), IndexError);
    const StepOperator a{1, 2};
    const StepOperator b{1, 3};
    CHECK_THROWS_AS(add(a, b), ShapeError);
    StepFunction u{2, 2, 1};
    CHECK_THROWS_AS(apply(a, u), ShapeError);
}

#include <catch2/catch_amalgamated.hpp>

#include <aap/sampling.hpp>
#include <aap/transform.hpp>

using namespace aap;

namespace {

Poly sym(const char* s) { return Poly::symbol(s); }

// dense unnormalized Hadamard product, the independent transform oracle
std::vector<Rat> dense_hadamard(const std::vector<Rat>& v) {
    const std::size_t n = v.size();
    std::vector<Rat> out(n, Rat(0));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            if (parity32(std::uint32_t(r) & std::uint32_t(c)))
                out[r] -= v[c];
            else
                out[r] += v[c];
        }
    return out;
}

}  // namespace

TEST_CASE("butterfly basics") {
    std::vector<Rat> v{Rat(1), Rat(0)};
    CHECK(fwht(v) == std::vector<Rat>{Rat(1), Rat(1)});
    CHECK(fwht(std::vector<Rat>{Rat(1), Rat(1)}) == std::vector<Rat>{Rat(2), Rat(0)});
    std::vector<Rat> unit(8, Rat(0));
    unit[0] = 1;
    CHECK(fwht(unit) == std::vector<Rat>(8, Rat(1)));
    CHECK_THROWS_AS(fwht(std::vector<Rat>(3)), std::invalid_argument);
    CHECK_THROWS_AS(fwht(std::vector<Rat>{}), std::invalid_argument);
}

TEST_CASE("butterfly equals the dense transform and squares to the dimension") {
    RatSampler sampler(31);
    for (int L = 1; L <= 4; ++L) {
        std::vector<Rat> v = sampler.vector(1 << L, 20);
        CHECK(fwht(v) == dense_hadamard(v));
    }
    for (int L = 1; L <= 10; ++L) {
        std::vector<Rat> v = sampler.vector(1 << L, 9);
        std::vector<Rat> twice = fwht(fwht(v));
        for (std::size_t i = 0; i < v.size(); ++i)
            REQUIRE(twice[i] == v[i] * Rat(Int(1) << L));
    }
}

TEST_CASE("rearranged transform matches the printed sign matrix") {
    // 2^{3/2} Htilde_3 as displayed
    const int signs[8][8] = {
        {1, 1, 1, 1, 1, 1, 1, 1},   {1, 1, 1, 1, -1, -1, -1, -1},
        {1, 1, -1, -1, -1, -1, 1, 1}, {1, 1, -1, -1, 1, 1, -1, -1},
        {1, -1, -1, 1, -1, 1, 1, -1}, {1, -1, -1, 1, 1, -1, -1, 1},
        {1, -1, 1, -1, 1, -1, 1, -1}, {1, -1, 1, -1, -1, 1, -1, 1},
    };
    for (int c = 0; c < 8; ++c) {
        std::vector<Rat> unit(8, Rat(0));
        unit[std::size_t(c)] = 1;
        std::vector<Rat> col = rearranged_fwht(unit, 3);
        for (int r = 0; r < 8; ++r) REQUIRE(col[std::size_t(r)] == Rat(signs[r][c]));
    }
}

TEST_CASE("character property of the xor permutations") {
    // applying the xor-permutation by c to a transform column scales it by
    // the character sign
    for (int L = 1; L <= 6; ++L) {
        const std::size_t n = std::size_t(1) << L;
        for (std::uint32_t b = 0; b < n; ++b) {
            std::vector<Rat> unit(n, Rat(0));
            unit[b] = 1;
            std::vector<Rat> w = fwht(unit);  // column w^b of the scaled transform
            for (std::uint32_t c = 0; c < n; ++c) {
                const Rat sign = parity32(b & c) ? Rat(-1) : Rat(1);
                for (std::uint32_t i = 0; i < n; ++i)
                    REQUIRE(w[i ^ c] == sign * w[i]);
            }
        }
    }
}

TEST_CASE("projector action on rearranged columns") {
    // P_{L,j} w^{b^Delta} = -w^{(psi_{L-j+1} b)^Delta} when b_{L-j+1}=0,
    //                        +w^{b^Delta}               when b_{L-j+1}=1
    for (int L = 1; L <= 5; ++L) {
        const std::size_t n = std::size_t(1) << L;
        std::vector<std::vector<Rat>> w(n);  // w[d] = column w^d
        for (std::uint32_t d = 0; d < n; ++d) {
            std::vector<Rat> unit(n, Rat(0));
            unit[d] = 1;
            w[d] = fwht(unit);
        }
        for (int j = 1; j <= L; ++j) {
            // single projector as the jump operator with a unit rate at j
            std::vector<Rat> beta(std::size_t(L), Rat(0));
            beta[std::size_t(j - 1)] = 1;
            Matrix<Rat> proj = jump_operator(Params<Rat>(L, {}, beta));
            for (const BitState& b : all_states(L)) {
                const auto col = w[prefix_parity(b).value];
                const auto image = proj.apply(col);
                if (b.bit(L - j + 1)) {
                    REQUIRE(image == col);
                } else {
                    const auto target = w[prefix_parity(flip_pair(L - j + 1, b)).value];
                    for (std::size_t i = 0; i < n; ++i) REQUIRE(image[i] == -target[i]);
                }
            }
        }
    }
}

TEST_CASE("conjugation fixes the identity") {
    Matrix<Rat> eye = Matrix<Rat>::identity(8, Rat(1));
    CHECK(rearranged_conjugate(eye, 3) == eye);
    CHECK_THROWS_AS(rearranged_conjugate(Matrix<Rat>(4, 4), 3), std::invalid_argument);
}

TEST_CASE("jump-operator transform identity, symbolic and printed instance") {
    // L=3 with distinct symbolic rates: conjugation reverses and transposes
    std::vector<Poly> rates{sym("b"), sym("g"), sym("d")};
    CHECK(b_transform_identity_holds(3, rates));

    Params<Poly> p(3, {}, rates);
    Matrix<Poly> conj = rearranged_conjugate(jump_operator(p), 3);
    // spot-check the displayed right-hand matrix rows
    CHECK(conj.at(1, 0) == -sym("b"));
    CHECK(conj.at(1, 1) == sym("b"));
    CHECK(conj.at(3, 0) == -sym("g"));
    CHECK(conj.at(3, 3) == sym("b") + sym("g"));
    CHECK(conj.at(7, 7) == sym("b") + sym("g") + sym("d"));
    CHECK(conj.at(0, 0) == Poly());

    CHECK(b_transform_identity_holds(1, std::vector<Poly>{sym("b")}));
    for (int L = 2; L <= 5; ++L) {
        std::vector<Poly> bl;
        for (int j = 1; j <= L; ++j) bl.push_back(Poly::symbol("b" + std::to_string(j)));
        CHECK(b_transform_identity_holds(L, bl));
    }
}

TEST_CASE("jump-operator transform identity at random rates") {
    RatSampler sampler(37);
    for (int L = 1; L <= 8; ++L) CHECK(b_transform_identity_holds(L, sampler.rate_vector(L)));
}

TEST_CASE("conjugated generator is lower triangular with the stated diagonal") {
    Params<Poly> p = Params<Poly>::specialized(2, sym("a"), sym("b"));
    Matrix<Poly> conj = rearranged_conjugate(generator(p), 2);
    CHECK(conj.is_lower_triangular());
    const Poly one(Rat(1));
    CHECK(conj.at(0, 0) == Poly());
    CHECK(conj.at(1, 1) == -(one + sym("a") * Rat(2)));
    CHECK(conj.at(2, 2) == -(sym("a") * Rat(2) + sym("b")));
    CHECK(conj.at(3, 3) == -(one + sym("b")));

    RatSampler sampler(41);
    for (int L = 1; L <= 6; ++L) {
        auto [a, b] = sampler.generic_specialized_point(L);
        CHECK(rearranged_conjugate(annihilation_generator(L, a, b), L).is_lower_triangular());
    }
}

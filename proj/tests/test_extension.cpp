#include "doctest.h"

#include <stdexcept>

#include <set>

#include "nilwitness/extension.hpp"

using namespace nilwitness;

namespace {

// Q built from s = indicator of {1} and chi = delta at exponent 1 over the
// even window {0, 2, ..., 2(w-1)}.
FiniteWindowGroup standard_q(uint32_t p, size_t w) {
    std::vector<int64_t> basis;
    for (size_t i = 0; i < w; ++i) basis.push_back(static_cast<int64_t>(2 * i));
    SigmaSeq s(p, {1}, {0});
    CharacterSpec chi(p, {{1, 1}});
    return FiniteWindowGroup::from_character(chi, EtaS{s}, basis);
}

}  // namespace

TEST_SUITE("extension") {

TEST_CASE("window group pairing from a character") {
    FiniteWindowGroup q = standard_q(2, 2);
    // eta(t^0, t^2) = t^1 pairs with chi = delta_1; the reverse slot gives 0
    CHECK(q.pairing(0, 1) == 1);
    CHECK(q.pairing(1, 0) == 0);
    CHECK(q.pairing(0, 0) == 0);
}

TEST_CASE("window group: orders divide p^2, central part has exponent p") {
    for (uint32_t p : {2u, 3u}) {
        FiniteWindowGroup q = standard_q(p, 2);
        CHECK(q.order() == static_cast<size_t>(p * p * p));
        for (size_t a = 0; a < q.order(); ++a) {
            auto ga = q.decode(a);
            CHECK(q.encode(ga) == a);
            auto acc = q.identity();
            for (uint32_t i = 0; i < p * p; ++i) acc = q.mul(acc, ga);
            CHECK(acc == q.identity());
            CHECK(q.mul(ga, q.inverse(ga)) == q.identity());

            auto central = q.identity();
            central.c = ga.c;
            auto acc2 = q.identity();
            for (uint32_t i = 0; i < p; ++i) acc2 = q.mul(acc2, central);
            CHECK(acc2 == q.identity());
        }
        // associativity
        for (size_t a = 0; a < q.order(); ++a) {
            for (size_t b = 0; b < q.order(); ++b) {
                for (size_t c = 0; c < q.order(); ++c) {
                    auto lhs = q.mul(q.mul(q.decode(a), q.decode(b)), q.decode(c));
                    auto rhs = q.mul(q.decode(a), q.mul(q.decode(b), q.decode(c)));
                    CHECK(lhs == rhs);
                }
            }
        }
    }
}

TEST_CASE("semidirect multiplication: trivial duals embed Q") {
    FiniteWindowGroup q = standard_q(2, 2);
    SemidirectEnvelope e(q);
    for (size_t a = 0; a < q.order(); ++a) {
        for (size_t b = 0; b < q.order(); ++b) {
            SemidirectElement ga{std::vector<uint32_t>(2, 0), q.decode(a)};
            SemidirectElement gb{std::vector<uint32_t>(2, 0), q.decode(b)};
            SemidirectElement prod = e.mul(ga, gb);
            CHECK(prod.q == q.mul(q.decode(a), q.decode(b)));
            for (uint32_t v : prod.phi) CHECK(v == 0);
        }
    }
}

TEST_CASE("semidirect identity, inverses, associativity (exhaustive, |E| = 2^5)") {
    FiniteWindowGroup q = standard_q(2, 2);
    SemidirectEnvelope e(q);
    REQUIRE(e.order() == 32);
    for (size_t a = 0; a < e.order(); ++a) {
        SemidirectElement ga = e.decode(a);
        CHECK(e.encode(ga) == a);
        CHECK(e.mul(ga, e.identity()) == ga);
        CHECK(e.mul(e.identity(), ga) == ga);
        CHECK(e.mul(ga, e.inverse(ga)) == e.identity());
        CHECK(e.mul(e.inverse(ga), ga) == e.identity());
    }
    for (size_t a = 0; a < e.order(); ++a) {
        for (size_t b = 0; b < e.order(); ++b) {
            for (size_t c = 0; c < e.order(); ++c) {
                auto lhs = e.mul(e.mul(e.decode(a), e.decode(b)), e.decode(c));
                auto rhs = e.mul(e.decode(a), e.mul(e.decode(b), e.decode(c)));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("semidirect commutator: closed form vs literal, exhaustively") {
    for (uint32_t p : {2u, 3u}) {
        FiniteWindowGroup q = standard_q(p, p == 2 ? 2 : 1);
        SemidirectEnvelope e(q);
        REQUIRE(e.order() <= 512);
        for (size_t a = 0; a < e.order(); ++a) {
            for (size_t b = 0; b < e.order(); ++b) {
                SemidirectElement ga = e.decode(a);
                SemidirectElement gb = e.decode(b);
                CHECK(e.commutator(ga, gb) == e.commutator_literal(ga, gb));
            }
        }
        SemidirectElement g = e.decode(7 % e.order());
        CHECK(e.commutator(g, g) == e.identity());
    }
}

TEST_CASE("with trivial duals the commutator is Q's commutator") {
    FiniteWindowGroup q = standard_q(3, 2);
    SemidirectEnvelope e(q);
    for (size_t a = 0; a < q.order(); ++a) {
        for (size_t b = 0; b < q.order(); ++b) {
            SemidirectElement ga{std::vector<uint32_t>(2, 0), q.decode(a)};
            SemidirectElement gb{std::vector<uint32_t>(2, 0), q.decode(b)};
            CHECK(e.commutator(ga, gb).q == q.commutator(q.decode(a), q.decode(b)));
        }
    }
}

TEST_CASE("class-2 and center verification passes for genuine envelopes") {
    for (uint32_t p : {2u, 3u}) {
        for (size_t w = 1; w <= 3; ++w) {
            FiniteWindowGroup q = standard_q(p, w);
            SemidirectEnvelope e(q);
            VerifyReport report = verify_class2_and_center(e);
            CHECK(report.pass);
        }
    }
    // abelian Q still nests inside a class-2 envelope via the dual twists
    FiniteWindowGroup abelian(2, {0, 2}, FpMatrix(2, 2, 2));
    VerifyReport report = verify_class2_and_center(SemidirectEnvelope(abelian));
    CHECK(report.pass);
}

TEST_CASE("generator mode agrees with enumeration") {
    FiniteWindowGroup q = standard_q(3, 2);
    SemidirectEnvelope e(q);
    VerifyReport full = verify_class2_and_center(e);
    VerifyReport gens = verify_class2_and_center(e, /*enumeration_limit=*/1);
    CHECK(full.pass == gens.pass);
}

TEST_CASE("a corrupted multiplication table is detected") {
    FiniteWindowGroup q = standard_q(2, 1);
    SemidirectEnvelope e(q);
    MulTable table = build_mul_table(e);
    std::vector<bool> cbar(table.n, false);
    for (size_t i = 0; i < table.n; ++i) cbar[i] = e.in_cbar(e.decode(i));
    CHECK(verify_class2_and_center_table(table, cbar).pass);

    size_t detected = 0, mutations = 0;
    for (size_t a = 0; a < table.n; ++a) {
        for (size_t b = 0; b < table.n; ++b) {
            MulTable bad = table;
            bad.set(a, b, (table.at(a, b) + 1) % table.n);
            ++mutations;
            if (!verify_class2_and_center_table(bad, cbar).pass) ++detected;
        }
    }
    CHECK(detected == mutations);
}

TEST_CASE("omega_sigma surjectivity: smallest window by enumeration") {
    FiniteWindowGroup q = standard_q(2, 1);
    SemidirectEnvelope e(q);
    SurjectivityReport report = omega_sigma_surjective(e, 1);
    CHECK(report.pass);
    CHECK(report.image_size == 4);
    CHECK_THROWS_AS(omega_sigma_surjective(e, 0), std::invalid_argument);
}

TEST_CASE("omega_sigma: the two slices of the image") {
    uint32_t p = 3;
    FiniteWindowGroup q = standard_q(p, 2);
    SemidirectEnvelope e(q);
    size_t w = q.window_size();

    // phi-only elements give exactly the {1} x dual(A_W) slice
    std::set<std::vector<uint32_t>> slice1;
    for (size_t idx = 0; idx < 9; ++idx) {
        SemidirectElement g = e.identity();
        g.phi = {static_cast<uint32_t>(idx % 3), static_cast<uint32_t>(idx / 3)};
        // with x = 0 the functional reads (psi, y) -> u * phi(y)
        std::vector<uint32_t> f(2 * w, 0);
        for (size_t j = 0; j < w; ++j) f[w + j] = g.phi[j];
        slice1.insert(f);
    }
    CHECK(slice1.size() == 9);

    // phi_g: h -> -[g, h] makes the functional forget the y-slot
    for (size_t xi = 0; xi < 9; ++xi) {
        std::vector<uint32_t> x = {static_cast<uint32_t>(xi % 3), static_cast<uint32_t>(xi / 3)};
        std::vector<uint32_t> phi(w, 0);
        for (size_t j = 0; j < w; ++j) {
            uint32_t acc = 0;
            for (size_t i = 0; i < w; ++i) {
                uint32_t k = sub_mod(q.pairing(i, j), q.pairing(j, i), p);
                acc = add_mod(acc, mul_mod(x[i], k, p), p);
            }
            phi[j] = neg_mod(acc, p);
        }
        // functional y-part: phi(y) + x K y = 0 identically
        for (size_t j = 0; j < w; ++j) {
            uint32_t acc = phi[j];
            for (size_t i = 0; i < w; ++i) {
                uint32_t k = sub_mod(q.pairing(i, j), q.pairing(j, i), p);
                acc = add_mod(acc, mul_mod(x[i], k, p), p);
            }
            CHECK(acc == 0);
        }
    }
}

TEST_CASE("omega_sigma surjectivity across p, window sizes, and all nontrivial sigma") {
    for (uint32_t p : {2u, 3u}) {
        for (size_t w = 1; w <= 3; ++w) {
            FiniteWindowGroup q = standard_q(p, w);
            SemidirectEnvelope e(q);
            size_t expected = 1;
            for (size_t i = 0; i < 2 * w; ++i) expected *= p;
            for (uint32_t u = 1; u < p; ++u) {
                SurjectivityReport report = omega_sigma_surjective(e, u);
                CHECK(report.pass);
                CHECK(report.image_size == expected);
            }
        }
    }
}

TEST_CASE("rank mode matches enumeration for the surjectivity count") {
    FiniteWindowGroup q = standard_q(3, 2);
    SemidirectEnvelope e(q);
    SurjectivityReport by_enum = omega_sigma_surjective(e, 2);
    SurjectivityReport by_rank = omega_sigma_surjective(e, 2, /*enumeration_limit=*/1);
    CHECK(by_enum.pass == by_rank.pass);
    CHECK(by_enum.image_size == by_rank.image_size);
}

TEST_CASE("Q embeds normally in E with index p^w") {
    for (uint32_t p : {2u, 3u}) {
        FiniteWindowGroup q = standard_q(p, 2);
        SemidirectEnvelope e(q);
        size_t index = e.order() / q.order();
        size_t expected = 1;
        for (size_t i = 0; i < q.window_size(); ++i) expected *= p;
        CHECK(index == expected);

        // injective homomorphism with normal image
        std::set<size_t> image;
        for (size_t a = 0; a < q.order(); ++a) {
            SemidirectElement ga{std::vector<uint32_t>(2, 0), q.decode(a)};
            image.insert(e.encode(ga));
            for (size_t b = 0; b < q.order(); ++b) {
                SemidirectElement gb{std::vector<uint32_t>(2, 0), q.decode(b)};
                CHECK(e.mul(ga, gb).q == q.mul(q.decode(a), q.decode(b)));
            }
        }
        CHECK(image.size() == q.order());
        for (size_t g = 0; g < e.order(); ++g) {
            SemidirectElement ge = e.decode(g);
            for (size_t a : image) {
                SemidirectElement conj =
                    e.mul(e.mul(ge, e.decode(a)), e.inverse(ge));
                CHECK(image.count(e.encode(conj)) == 1);
            }
        }
    }
}

}  // TEST_SUITE

#include "toric/fan.hpp"
#include "toric/fixtures.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace toric;
namespace fx = toric::fixtures;

namespace {

bool has_error_containing(const ValidationResult& res, const std::string& text) {
    for (const auto& d : res.diagnostics)
        if (d.severity == Diagnostic::Severity::Error && d.message.find(text) != std::string::npos) return true;
    return false;
}

std::vector<std::size_t> counts(const Fan& fan) {
    std::vector<std::size_t> out;
    for (const auto& group : all_cones(fan)) out.push_back(group.size());
    return out;
}

}  // namespace

TEST(Validate, StandardFixturesAreValid) {
    for (const auto& [name, fan] : testkit::all_fixtures()) {
        SCOPED_TRACE(name);
        EXPECT_TRUE(is_complete(fan));
    }
    auto res = validate_fan({2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}}});
    EXPECT_TRUE(res.ok());
    EXPECT_TRUE(res.diagnostics.empty());
}

TEST(Validate, NonPrimitiveRay) {
    RawFan raw{2, {{2, 0}, {0, 1}}, {{0, 1}}};
    auto strict = validate_fan(raw, {false});
    EXPECT_FALSE(strict.ok());
    EXPECT_TRUE(has_error_containing(strict, "ray 0 not primitive"));

    auto lenient = validate_fan(raw);
    ASSERT_TRUE(lenient.ok());
    ASSERT_EQ(lenient.diagnostics.size(), 1U);
    EXPECT_EQ(lenient.diagnostics[0].severity, Diagnostic::Severity::Warning);
    EXPECT_EQ(lenient.fan->rays()[0], (IntVector{1, 0}));
}

TEST(Validate, ImproperIntersection) {
    auto res = validate_fan({2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 1}, {0, 2}}});
    EXPECT_FALSE(res.ok());
    EXPECT_TRUE(has_error_containing(res, "improper intersection of cones 0 and 1"));
}

TEST(Validate, NotStronglyConvex) {
    auto res = validate_fan({2, {{1, 0}, {-1, 0}, {0, 1}}, {{0, 1, 2}}});
    EXPECT_FALSE(res.ok());
    EXPECT_TRUE(has_error_containing(res, "cone 0 is not strongly convex"));
}

TEST(Validate, MalformedInput) {
    EXPECT_TRUE(has_error_containing(validate_fan({2, {{1, 0, 0}}, {{0}}}), "wrong length"));
    EXPECT_TRUE(has_error_containing(validate_fan({2, {{0, 0}}, {{0}}}), "is zero"));
    EXPECT_TRUE(has_error_containing(validate_fan({2, {{1, 0}}, {{3}}}), "missing ray 3"));
    EXPECT_TRUE(has_error_containing(validate_fan({2, {{1, 0}, {1, 0}}, {{0}, {1}}}), "coincide"));
    EXPECT_TRUE(has_error_containing(validate_fan({2, {{1, 0}, {0, 1}}, {{0}}}), "ray 1 is not used"));
    EXPECT_TRUE(has_error_containing(validate_fan({0, {}, {}}), "dimension"));
    EXPECT_TRUE(has_error_containing(validate_fan({2, {{1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}}}), "not an extreme ray"));
    EXPECT_THROW(make_fan({2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 1}, {0, 2}}}), std::invalid_argument);
}

TEST(Completeness, Examples) {
    EXPECT_TRUE(is_complete(fx::p2()));
    EXPECT_TRUE(is_complete(fx::p1xp1()));
    EXPECT_FALSE(is_complete(make_fan({2, {{1, 0}, {0, 1}}, {{0, 1}}})));
    // half-plane: two quadrants
    EXPECT_FALSE(is_complete(make_fan({2, {{1, 0}, {0, 1}, {-1, 0}}, {{0, 1}, {1, 2}}})));
}

TEST(Completeness, MonteCarloSupportAgrees) {
    // sample rational directions and test membership in some maximal cone by an
    // exact LP; complete fans must capture every sample
    testkit::Random rng(2024);
    auto fans = testkit::all_fixtures();
    fans.push_back({"quadrant", make_fan({2, {{1, 0}, {0, 1}}, {{0, 1}}})});
    fans.push_back({"upper half", make_fan({2, {{1, 0}, {0, 1}, {-1, 0}}, {{0, 1}, {1, 2}}})});
    fans.push_back({"three octants", make_fan({3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}},
                                               {{0, 1, 2}, {1, 2, 3}}})});
    for (const auto& [name, fan] : fans) {
        SCOPED_TRACE(name);
        bool all_covered = true;
        const int samples = fan.dim() == 3 ? 1000 : 1200;
        for (int s = 0; s < samples && all_covered; ++s) {
            Vector dir;
            for (int i = 0; i < fan.dim(); ++i) dir.push_back(rng.rational(-50, 50, 7));
            bool covered = false;
            for (auto c : fan.max_cones())
                if (cone_contains(fan.rays(), c, dir)) {
                    covered = true;
                    break;
                }
            all_covered = covered;
        }
        EXPECT_EQ(is_complete(fan), all_covered);
    }
}

TEST(Simplicial, Examples) {
    EXPECT_TRUE(is_simplicial(fx::p2()));
    EXPECT_TRUE(is_simplicial(fx::p1()));
    auto square = make_fan({3, {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}}, {{0, 1, 2, 3}}});
    EXPECT_FALSE(is_simplicial(square));
    EXPECT_FALSE(is_simplicial(fx::cube_faces()));
}

TEST(Subfan, Examples) {
    auto p2 = fx::p2();
    EXPECT_EQ(counts(subfan(p2, 0)), (std::vector<std::size_t>{1, 0, 0}));
    auto s01 = subfan(p2, mask_of({0, 1}));
    EXPECT_EQ(counts(s01), (std::vector<std::size_t>{1, 2, 1}));
    auto pp = fx::p1xp1();
    EXPECT_EQ(counts(subfan(pp, mask_of({0, 1}))), (std::vector<std::size_t>{1, 2, 0}));
}

TEST(Subfan, FullAndMonotone) {
    for (const auto& [name, fan] : testkit::all_fixtures()) {
        SCOPED_TRACE(name);
        EXPECT_EQ(counts(subfan(fan, fan.all_rays())), counts(fan));
        if (fan.ray_count() > 8) continue;
        for (RayMask i = 0; i <= fan.all_rays(); ++i) {
            auto small = subfan(fan, i);
            for (auto j : {fan.all_rays(), i | 1, i | ray_bit(fan.ray_count() - 1)}) {
                auto big = subfan(fan, j);
                for (const auto& c : small.cones()) {
                    bool found = false;
                    for (const auto& d : big.cones()) found = found || d.rays == c.rays;
                    EXPECT_TRUE(found);
                }
            }
        }
    }
}

TEST(AllCones, Counts) {
    EXPECT_EQ(counts(fx::p2()), (std::vector<std::size_t>{1, 3, 3}));
    EXPECT_EQ(counts(fx::p1xp1()), (std::vector<std::size_t>{1, 4, 4}));
    EXPECT_EQ(counts(fx::p1()), (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(counts(fx::p1_cubed()), (std::vector<std::size_t>{1, 6, 12, 8}));
    EXPECT_EQ(counts(fx::cube_faces()), (std::vector<std::size_t>{1, 8, 12, 6}));
}

TEST(AllCones, AgreeWithSubsetEnumeration) {
    for (const auto& [name, fan] : testkit::all_fixtures()) {
        SCOPED_TRACE(name);
        EXPECT_EQ(counts(fan), testkit::cone_counts_by_subsets(fan));
    }
}

TEST(ChiOfFan, Examples) {
    auto p2 = fx::p2();
    EXPECT_EQ(chi_of_fan(p2), 1);
    EXPECT_EQ(chi_of_fan(subfan(p2, 0)), 1);
    EXPECT_EQ(chi_of_fan(subfan(p2, mask_of({0}))), 0);
}

TEST(ChiOfFan, MatchesIndependentCountOnEverySubfan) {
    for (const auto& [name, fan] : testkit::all_fixtures()) {
        SCOPED_TRACE(name);
        for (RayMask i = 0; i <= fan.all_rays(); ++i) {
            auto sub = subfan(fan, i);
            auto c = testkit::cone_counts_by_subsets(sub);
            std::int64_t alt = 0;
            for (std::size_t j = 0; j < c.size(); ++j) alt += (j % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(c[j]);
            EXPECT_EQ(chi_of_fan(sub), alt);
        }
    }
}

TEST(Multiplicity, Examples) {
    auto a = make_fan({2, {{1, 0}, {0, 1}}, {{0, 1}}});
    EXPECT_EQ(cone_multiplicity(a, mask_of({0, 1})), 1);
    auto b = make_fan({2, {{1, 0}, {1, 2}}, {{0, 1}}});
    EXPECT_EQ(cone_multiplicity(b, mask_of({0, 1})), 2);
    auto c = make_fan({2, {{1, 1}, {1, -1}}, {{0, 1}}});
    EXPECT_EQ(cone_multiplicity(c, mask_of({0, 1})), 2);
    auto p112 = fx::p112();
    EXPECT_EQ(cone_multiplicity(p112, mask_of({2, 0})), 2);
    EXPECT_EQ(cone_multiplicity(p112, mask_of({1, 2})), 1);
}

TEST(Multiplicity, LowerDimensionalAndErrors) {
    // (1,1,0) and (1,-1,0) span an index-2 sublattice of their saturation
    auto f = make_fan({3, {{1, 1, 0}, {1, -1, 0}}, {{0, 1}}});
    EXPECT_EQ(cone_multiplicity(f, mask_of({0, 1})), 2);
    EXPECT_THROW(cone_multiplicity(fx::cube_faces(), fx::cube_faces().max_cones()[0]), PreconditionError);
}

TEST(Multiplicity, MatchesDeterminantOnFullCones) {
    for (const auto& [name, fan] : testkit::two_dim_fixtures()) {
        for (auto c : fan.max_cones()) {
            auto idx = indices_of(c);
            const auto& a = fan.rays()[idx[0]];
            const auto& b = fan.rays()[idx[1]];
            std::int64_t det = a[0] * b[1] - a[1] * b[0];
            EXPECT_EQ(cone_multiplicity(fan, c), Integer(det < 0 ? -det : det));
        }
    }
}

#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "psamp/profile.hpp"

using psamp::Profile;
using psamp::SizeCount;
using psamp::SizeVector;

TEST_CASE("empty profile") {
    Profile p;
    CHECK(p.empty());
    CHECK(p.pair_count() == 0);
    CHECK(p.pairs().empty());
    CHECK(p.total_mass().n == 0);
    CHECK(p.total_mass().k == 0);
    CHECK_THROWS_AS(p.smallest_size(), std::logic_error);
}

TEST_CASE("add accumulates and canonicalizes") {
    Profile p;
    p.add(3, 2);
    p.add(1, 4);
    p.add(3, 1);
    p.add(7, 0);  // zero count is a no-op
    const std::vector<SizeCount> want{{1, 4}, {3, 3}};
    CHECK(p.pairs() == want);
    CHECK(p.pair_count() == 2);
    CHECK(p.smallest_size() == 1);
    CHECK(p.total_mass().n == 4 + 9);
    CHECK(p.total_mass().k == 7);
}

TEST_CASE("anchored window and far sizes agree with a plain map") {
    // Mixed access pattern: cells near the anchor (sweep behavior) plus
    // scattered sizes far outside the window (base-case behavior).
    std::mt19937_64 gen(42);
    Profile p(1000);
    std::map<std::uint64_t, std::uint64_t> ref;
    for (int i = 0; i < 5000; ++i) {
        std::uint64_t size;
        switch (gen() % 3) {
            case 0: size = 990 + gen() % 20; break;
            case 1: size = gen() % 30; break;
            default: size = 1000000 + gen() % 100; break;
        }
        const std::uint64_t count = gen() % 4;
        p.add(size, count);
        if (count > 0) ref[size] += count;
    }
    std::vector<SizeCount> want(ref.begin(), ref.end());
    CHECK(p.pairs() == want);
}

TEST_CASE("merge sums overlapping sizes") {
    Profile a(10);
    a.add(10, 3);
    a.add(11, 1);
    Profile b;
    b.add(11, 2);
    b.add(2, 5);
    a.merge(b);
    const std::vector<SizeCount> want{{2, 5}, {10, 3}, {11, 3}};
    CHECK(a.pairs() == want);
    CHECK(psamp::profile_merge(Profile{}, a) == a);
}

TEST_CASE("total_mass overflow is detected") {
    Profile p;
    p.add(std::numeric_limits<std::uint64_t>::max() / 2, 3);
    CHECK_THROWS_AS(p.total_mass(), std::overflow_error);

    Profile q;
    q.add(1, std::numeric_limits<std::uint64_t>::max());
    q.add(2, 1);
    CHECK_THROWS_AS(q.total_mass(), std::overflow_error);
}

TEST_CASE("profile_from_size_vector") {
    SizeVector sv{{3, 1, 1, 3, 0, 3}};
    CHECK(sv.n() == 11);
    CHECK(sv.k() == 6);
    const std::vector<SizeCount> want{{0, 1}, {1, 2}, {3, 3}};
    CHECK(psamp::profile_from_size_vector(sv).pairs() == want);
}

TEST_CASE("profile_validate") {
    Profile p;
    p.add(1, 2);
    p.add(2, 1);
    CHECK(!psamp::profile_validate(p, 4, 3, true).has_value());
    CHECK(psamp::profile_validate(p, 5, 3, true).has_value());   // n mismatch
    CHECK(psamp::profile_validate(p, 4, 2, true).has_value());   // k mismatch
    Profile z;
    z.add(0, 1);
    z.add(4, 1);
    CHECK(!psamp::profile_validate(z, 4, 2, false).has_value());
    CHECK(psamp::profile_validate(z, 4, 2, true).has_value());   // zero class
}

TEST_CASE("json round trip") {
    Profile p;
    p.add(1, 2);
    p.add(5, 1);
    const std::string text = psamp::profile_to_json(p);
    const psamp::ParsedProfile back = psamp::profile_from_json(text);
    CHECK(back.profile == p);
    CHECK(back.n == 7);
    CHECK(back.k == 3);
}

TEST_CASE("json parse rejects inconsistent totals and malformed text") {
    CHECK_THROWS_AS(psamp::profile_from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(psamp::profile_from_json(R"({"n":3,"k":1,"pairs":[[1,2]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(psamp::profile_from_json(R"({"n":2,"k":2,"pairs":[[1,2],[1,1]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(psamp::profile_from_json(R"({"k":1,"pairs":[[1,1]]})"),
                    std::invalid_argument);
}

TEST_CASE("csv form") {
    Profile p;
    p.add(2, 3);
    p.add(4, 1);
    CHECK(psamp::profile_to_csv(p) == "size,count\n2,3\n4,1\n");
}

#include <doctest.h>

#include "seqlab/strings.hpp"

using namespace seqlab;

TEST_CASE("string basics") {
    Alphabet bin(2);
    FinStr s = FinStr::parse(bin, "101");
    CHECK(s.length() == 3);
    CHECK(s.at(0) == 1);
    CHECK(s.str() == "101");
    CHECK(FinStr(bin).empty());
    CHECK_THROWS_AS(FinStr::parse(bin, "102"), InputError);
    CHECK_THROWS_AS(Alphabet(1), InputError);
}

TEST_CASE("prefix relations") {
    Alphabet bin(2);
    FinStr a = FinStr::parse(bin, "01");
    FinStr b = FinStr::parse(bin, "0110");
    CHECK(a.is_prefix_of(b));
    CHECK(a.is_prefix_of(a));
    CHECK(!b.is_prefix_of(a));
    CHECK(FinStr(bin).is_prefix_of(a));
    CHECK(b.prefix(2) == a);
    CHECK(b.suffix_from(2) == FinStr::parse(bin, "10"));
}

TEST_CASE("shortlex order") {
    Alphabet bin(2);
    CHECK(shortlex_less(FinStr::parse(bin, "1"), FinStr::parse(bin, "00")));
    CHECK(shortlex_less(FinStr::parse(bin, "01"), FinStr::parse(bin, "10")));
    CHECK(!shortlex_less(FinStr::parse(bin, "10"), FinStr::parse(bin, "10")));
}

TEST_CASE("eventually periodic expansion") {
    Alphabet bin(2);
    FinStr head = FinStr::parse(bin, "0");
    FinStr period = FinStr::parse(bin, "10");
    CHECK(eventually_periodic_prefix(head, period, 6).str() == "010101");
    CHECK(eventually_periodic_prefix(FinStr(bin), FinStr::parse(bin, "1"), 4).str() == "1111");
    CHECK_THROWS_AS(eventually_periodic_prefix(head, FinStr(bin), 3), InputError);
}

TEST_CASE("string enumeration is complete and ordered") {
    Alphabet tri(3);
    std::vector<std::string> seen;
    for_each_string_up_to(tri, 2, [&](const FinStr& s) { seen.push_back(s.str()); });
    CHECK(seen.size() == 1 + 3 + 9);
    CHECK(seen.front() == "");
    CHECK(seen[1] == "0");
    CHECK(seen.back() == "22");
    for (std::size_t i = 1; i < seen.size(); ++i) {
        Alphabet a(3);
        CHECK(shortlex_less(FinStr::parse(a, seen[i - 1]), FinStr::parse(a, seen[i])));
    }
}

TEST_CASE("numerals") {
    Alphabet bin(2);
    Alphabet tri(3);
    CHECK(numeral(bin, 0).str() == "0");
    CHECK(numeral(bin, 3).str() == "11");
    CHECK(numeral(bin, 4).str() == "100");
    CHECK(numeral(tri, 5).str() == "12");
    // Zigzag: 0,-1,1,-2,2 -> 0,1,2,3,4.
    CHECK(numeral_signed(bin, 0).str() == "0");
    CHECK(numeral_signed(bin, -1).str() == "1");
    CHECK(numeral_signed(bin, 1).str() == "10");
    CHECK(numeral_signed(bin, -2).str() == "11");
    CHECK(numeral_signed(bin, 2).str() == "100");
}

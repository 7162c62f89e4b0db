#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>

#include "facelat/lattice.hpp"

using namespace facelat;
using namespace facelat::lattice;

namespace {

using Set = std::set<char>;

bool subset(const Set& a, const Set& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

FiniteLattice<Set> boolean2() { return FiniteLattice<Set>::build({{}, {'a'}, {'b'}, {'a', 'b'}}, subset); }

FiniteLattice<Set> powerset(int k) {
    std::vector<Set> els;
    for (int m = 0; m < (1 << k); ++m) {
        Set s;
        for (int i = 0; i < k; ++i) {
            if (m & (1 << i)) s.insert(static_cast<char>('a' + i));
        }
        els.push_back(s);
    }
    return FiniteLattice<Set>::build(els, subset);
}

}  // namespace

TEST(FiniteLattice, BooleanLattice) {
    auto L = boolean2();
    EXPECT_EQ(L[L.bottom()], Set{});
    EXPECT_EQ(L[L.top()], (Set{'a', 'b'}));
    EXPECT_EQ(L.atoms().size(), 2u);
    EXPECT_EQ(L.coatoms().size(), 2u);
    EXPECT_EQ(L.hasse_edges().size(), 4u);
    EXPECT_TRUE(L.is_modular());
}

TEST(FiniteLattice, MissingJoinIsRejected) {
    EXPECT_THROW(FiniteLattice<Set>::build({{}, {'a'}, {'b'}}, subset), NotALattice);
}

TEST(FiniteLattice, DuplicatesAreRejected) {
    EXPECT_THROW(FiniteLattice<Set>::build({{}, {'a'}, {'a'}}, subset), DuplicateElement);
}

TEST(FiniteLattice, NonOrderIsRejected) {
    EXPECT_THROW(FiniteLattice<int>::build({0, 1, 2, 3}, [](const int& a, const int& b) {
                     return a == b || (a == 0) || (b == 3) || (a == 1 && b == 2) || (a == 2 && b == 1);
                 }),
                 NotALattice);
}

TEST(FiniteLattice, TwoChainHasNoAtomsOrCoatoms) {
    auto L = FiniteLattice<int>::build({0, 1}, [](const int& a, const int& b) { return a <= b; });
    EXPECT_TRUE(L.atoms().empty());
    EXPECT_TRUE(L.coatoms().empty());
    ASSERT_EQ(L.hasse_edges().size(), 1u);
    EXPECT_EQ(L.hasse_edges()[0], std::make_pair(std::size_t{0}, std::size_t{1}));
}

TEST(FiniteLattice, EmptyMeetAndJoin) {
    auto L = boolean2();
    EXPECT_EQ(L.meet(std::vector<std::size_t>{}), L.top());
    EXPECT_EQ(L.join(std::vector<std::size_t>{}), L.bottom());
    EXPECT_EQ(L.meet(std::vector<std::size_t>{L.top()}), L.top());
}

TEST(FiniteLattice, MeetIsIntersectionForSetLattices) {
    for (int k = 1; k <= 3; ++k) {
        auto L = powerset(k);
        for (std::size_t i = 0; i < L.size(); ++i) {
            for (std::size_t j = 0; j < L.size(); ++j) {
                Set inter;
                std::set_intersection(L[i].begin(), L[i].end(), L[j].begin(), L[j].end(),
                                      std::inserter(inter, inter.begin()));
                EXPECT_EQ(L[L.meet(i, j)], inter);
            }
        }
    }
}

TEST(FiniteLattice, AtomsAreHasseEndpointsAtBottom) {
    for (int k = 1; k <= 3; ++k) {
        auto L = powerset(k);
        std::vector<std::size_t> from_bottom, to_top;
        for (auto [a, b] : L.hasse_edges()) {
            if (a == L.bottom() && b != L.top()) from_bottom.push_back(b);
            if (b == L.top() && a != L.bottom()) to_top.push_back(a);
        }
        std::sort(from_bottom.begin(), from_bottom.end());
        std::sort(to_top.begin(), to_top.end());
        EXPECT_EQ(L.atoms(), from_bottom);
        EXPECT_EQ(L.coatoms(), to_top);
    }
}

TEST(Isomorphism, ComplementIsAntitone) {
    auto L = powerset(3);
    auto complement = [](const Set& s) {
        Set out;
        for (char c : {'a', 'b', 'c'}) {
            if (!s.count(c)) out.insert(c);
        }
        return out;
    };
    auto m = make_map(L, L, complement, Direction::Antitone);
    EXPECT_TRUE(verify_isomorphism(m).pass());
    EXPECT_TRUE(verify_isomorphism(inverse(m)).pass());
    auto wrong = make_map(L, L, complement, Direction::Isotone);
    EXPECT_FALSE(verify_isomorphism(wrong).pass());
    EXPECT_FALSE(verify_isomorphism(inverse(wrong)).pass());
}

TEST(Isomorphism, NonInjectiveMapFails) {
    auto L = powerset(2);
    auto M = boolean2();
    auto collapse = [](const Set& s) { return s.size() == 2 ? Set{'a', 'b'} : Set{}; };
    auto r = verify_isomorphism(make_map(L, M, collapse, Direction::Isotone));
    EXPECT_FALSE(r.pass());
    EXPECT_FALSE(r.injective);
    EXPECT_FALSE(verify_isomorphism(inverse(make_map(L, M, collapse, Direction::Isotone))).pass());
}

TEST(Dot, RanksAndEdges) {
    auto L = boolean2();
    std::string dot = to_dot<Set>(
        L, [](const Set& s) { return std::string(s.begin(), s.end()); },
        [](const Set& s) { return static_cast<int>(s.size()); });
    EXPECT_NE(dot.find("rank=same"), std::string::npos);
    EXPECT_EQ(std::count(dot.begin(), dot.end(), '>'), 4);
}

TEST(FiniteLattice, PentagonIsNotModular) {
    // N5: 0 < a < c < 1, 0 < b < 1.
    auto leq = [](const char& x, const char& y) {
        if (x == y || x == '0' || y == '1') return true;
        return x == 'a' && y == 'c';
    };
    auto L = FiniteLattice<char>::build({'0', 'a', 'b', 'c', '1'}, leq);
    EXPECT_FALSE(L.is_modular());
}

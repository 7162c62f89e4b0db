#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "facelat/errors.hpp"

namespace facelat::lattice {

/// Finite lattice materialized from a list of elements and an order predicate.
/// The order axioms and the existence of all binary meets and joins are verified on
/// construction (O(n^3)), so a constructed value is always a complete lattice.
template <class T>
class FiniteLattice {
public:
    using Leq = std::function<bool(const T&, const T&)>;

    static FiniteLattice build(std::vector<T> elements, const Leq& leq) {
        FiniteLattice L;
        const std::size_t n = elements.size();
        if (n == 0) throw NotALattice("no elements");
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (elements[i] == elements[j]) {
                    throw DuplicateElement("elements " + std::to_string(i) + " and " + std::to_string(j));
                }
            }
        }
        L.elems_ = std::move(elements);
        L.n_ = n;
        L.leq_.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) L.leq_[i * n + j] = leq(L.elems_[i], L.elems_[j]) ? 1 : 0;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!L.leq(i, i)) throw NotALattice("order is not reflexive at " + std::to_string(i));
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j && L.leq(i, j) && L.leq(j, i)) {
                    throw NotALattice("order is not antisymmetric at " + std::to_string(i) + "," + std::to_string(j));
                }
                for (std::size_t k = 0; k < n; ++k) {
                    if (L.leq(i, j) && L.leq(j, k) && !L.leq(i, k)) throw NotALattice("order is not transitive");
                }
            }
        }
        L.meet_.assign(n * n, 0);
        L.join_.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                auto m = L.extremal_bound(i, j, /*lower=*/true);
                auto s = L.extremal_bound(i, j, /*lower=*/false);
                if (!m) throw NotALattice("elements " + std::to_string(i) + "," + std::to_string(j) + " have no meet");
                if (!s) throw NotALattice("elements " + std::to_string(i) + "," + std::to_string(j) + " have no join");
                L.meet_[i * n + j] = L.meet_[j * n + i] = *m;
                L.join_[i * n + j] = L.join_[j * n + i] = *s;
            }
        }
        L.bottom_ = 0;
        L.top_ = 0;
        for (std::size_t i = 1; i < n; ++i) {
            L.bottom_ = L.meet(L.bottom_, i);
            L.top_ = L.join(L.top_, i);
        }
        return L;
    }

    std::size_t size() const { return n_; }
    const std::vector<T>& elements() const& { return elems_; }
    std::vector<T> elements() && { return std::move(elems_); }
    const T& operator[](std::size_t i) const { return elems_.at(i); }
    bool leq(std::size_t i, std::size_t j) const { return leq_[i * n_ + j] != 0; }
    std::size_t bottom() const { return bottom_; }
    std::size_t top() const { return top_; }

    std::optional<std::size_t> index_of(const T& x) const {
        for (std::size_t i = 0; i < n_; ++i) {
            if (elems_[i] == x) return i;
        }
        return std::nullopt;
    }

    std::size_t meet(std::size_t i, std::size_t j) const { return meet_[i * n_ + j]; }
    std::size_t join(std::size_t i, std::size_t j) const { return join_[i * n_ + j]; }

    /// Infimum of a set of indices; the empty infimum is top.
    std::size_t meet(const std::vector<std::size_t>& s) const {
        std::size_t r = top_;
        for (auto i : s) r = meet(r, i);
        return r;
    }
    /// Supremum of a set of indices; the empty supremum is bottom.
    std::size_t join(const std::vector<std::size_t>& s) const {
        std::size_t r = bottom_;
        for (auto i : s) r = join(r, i);
        return r;
    }

    /// Cover pairs (lower, upper), sorted.
    std::vector<std::pair<std::size_t, std::size_t>> hasse_edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (covers(j, i)) out.emplace_back(i, j);
            }
        }
        return out;
    }

    /// j covers i: i < j with nothing strictly between.
    bool covers(std::size_t j, std::size_t i) const {
        if (i == j || !leq(i, j)) return false;
        for (std::size_t k = 0; k < n_; ++k) {
            if (k != i && k != j && leq(i, k) && leq(k, j)) return false;
        }
        return true;
    }

    /// Proper elements covering bottom. A two-element chain has none.
    std::vector<std::size_t> atoms() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < n_; ++i) {
            if (i != top_ && covers(i, bottom_)) out.push_back(i);
        }
        return out;
    }
    /// Proper elements covered by top. A two-element chain has none.
    std::vector<std::size_t> coatoms() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < n_; ++i) {
            if (i != bottom_ && covers(top_, i)) out.push_back(i);
        }
        return out;
    }

    /// Modular law: x <= z implies x v (y ^ z) = (x v y) ^ z, for all triples.
    bool is_modular() const {
        for (std::size_t x = 0; x < n_; ++x) {
            for (std::size_t z = 0; z < n_; ++z) {
                if (!leq(x, z)) continue;
                for (std::size_t y = 0; y < n_; ++y) {
                    if (join(x, meet(y, z)) != meet(join(x, y), z)) return false;
                }
            }
        }
        return true;
    }

private:
    std::optional<std::size_t> extremal_bound(std::size_t i, std::size_t j, bool lower) const {
        std::vector<std::size_t> bounds;
        for (std::size_t k = 0; k < n_; ++k) {
            bool is_bound = lower ? (leq(k, i) && leq(k, j)) : (leq(i, k) && leq(j, k));
            if (is_bound) bounds.push_back(k);
        }
        for (auto c : bounds) {
            bool best = std::all_of(bounds.begin(), bounds.end(),
                                    [&](std::size_t b) { return lower ? leq(b, c) : leq(c, b); });
            if (best) return c;
        }
        return std::nullopt;
    }

    std::vector<T> elems_;
    std::size_t n_ = 0;
    std::vector<char> leq_;
    std::vector<std::size_t> meet_, join_;
    std::size_t bottom_ = 0, top_ = 0;
};

enum class Direction { Isotone, Antitone };

inline const char* to_string(Direction d) { return d == Direction::Isotone ? "isotone" : "antitone"; }

/// Index map between two lattices; nullopt marks an element whose image is not in the target.
template <class S, class T>
struct LatticeMap {
    const FiniteLattice<S>* source = nullptr;
    const FiniteLattice<T>* target = nullptr;
    std::vector<std::optional<std::size_t>> mapping;
    Direction direction = Direction::Isotone;
};

/// Builds the map i -> index of f(source[i]) in target.
template <class S, class T, class F>
LatticeMap<S, T> make_map(const FiniteLattice<S>& source, const FiniteLattice<T>& target, F f, Direction d) {
    LatticeMap<S, T> m{&source, &target, {}, d};
    for (const auto& x : source.elements()) m.mapping.push_back(target.index_of(f(x)));
    return m;
}

struct IsoReport {
    bool total = true;
    bool injective = true;
    bool surjective = true;
    bool preserves_order = true;  ///< i <= j implies f(i) <= f(j) (reversed when antitone)
    bool reflects_order = true;   ///< f(i) <= f(j) implies i <= j (reversed when antitone)
    std::vector<std::string> violations;

    bool bijective() const { return total && injective && surjective; }
    bool pass() const { return bijective() && preserves_order && reflects_order; }
    std::string summary() const {
        if (pass()) return "isomorphism";
        std::string s;
        for (std::size_t i = 0; i < violations.size() && i < 4; ++i) s += (i ? "; " : "") + violations[i];
        if (violations.size() > 4) s += "; ...";
        return s;
    }
};

/// Checks bijectivity and that both the map and its inverse respect (or reverse) the order.
/// Never throws; failures are recorded in the report.
template <class S, class T>
IsoReport verify_isomorphism(const LatticeMap<S, T>& m) {
    IsoReport r;
    const auto& src = *m.source;
    const auto& dst = *m.target;
    const std::size_t n = src.size();
    std::vector<int> hits(dst.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= m.mapping.size() || !m.mapping[i]) {
            r.total = false;
            r.violations.push_back("element " + std::to_string(i) + " has no image");
            continue;
        }
        if (++hits[*m.mapping[i]] == 2) {
            r.injective = false;
            r.violations.push_back("image " + std::to_string(*m.mapping[i]) + " is hit twice");
        }
    }
    for (std::size_t j = 0; j < dst.size(); ++j) {
        if (hits[j] == 0) {
            r.surjective = false;
            r.violations.push_back("target element " + std::to_string(j) + " is not hit");
        }
    }
    const bool anti = m.direction == Direction::Antitone;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!m.mapping[i] || !m.mapping[j]) continue;
            const std::size_t fi = *m.mapping[i], fj = *m.mapping[j];
            const bool image_leq = anti ? dst.leq(fj, fi) : dst.leq(fi, fj);
            if (src.leq(i, j) && !image_leq) {
                if (r.preserves_order) {
                    r.violations.push_back("order not " + std::string(anti ? "reversed" : "preserved") + " at " +
                                           std::to_string(i) + "<=" + std::to_string(j));
                }
                r.preserves_order = false;
            }
            if (image_leq && !src.leq(i, j)) {
                if (r.reflects_order) {
                    r.violations.push_back("inverse order fails at " + std::to_string(i) + "," + std::to_string(j));
                }
                r.reflects_order = false;
            }
        }
    }
    return r;
}

/// Inverse of a bijective map; non-injective or partial entries yield nullopt images.
template <class S, class T>
LatticeMap<T, S> inverse(const LatticeMap<S, T>& m) {
    LatticeMap<T, S> inv{m.target, m.source, std::vector<std::optional<std::size_t>>(m.target->size()), m.direction};
    std::vector<int> hits(m.target->size(), 0);
    for (std::size_t i = 0; i < m.mapping.size(); ++i) {
        if (!m.mapping[i]) continue;
        if (hits[*m.mapping[i]]++ == 0) inv.mapping[*m.mapping[i]] = i;
        else inv.mapping[*m.mapping[i]] = std::nullopt;
    }
    // A preimage hit twice gets no image, so the inverse of a non-injective map fails totality.
    return inv;
}

/// Graphviz rendering of the Hasse diagram, nodes ranked by `rank_of`.
template <class T>
std::string to_dot(const FiniteLattice<T>& L, const std::function<std::string(const T&)>& label,
                   const std::function<int(const T&)>& rank_of, const std::string& name = "lattice") {
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n";
    std::vector<int> ranks;
    for (std::size_t i = 0; i < L.size(); ++i) {
        std::string text = label(L[i]);
        std::string escaped;
        for (char c : text) {
            if (c == '"' || c == '\\') escaped.push_back('\\');
            escaped.push_back(c);
        }
        os << "  n" << i << " [label=\"" << escaped << "\"];\n";
        int r = rank_of(L[i]);
        if (std::find(ranks.begin(), ranks.end(), r) == ranks.end()) ranks.push_back(r);
    }
    std::sort(ranks.begin(), ranks.end());
    for (int r : ranks) {
        os << "  { rank=same;";
        for (std::size_t i = 0; i < L.size(); ++i) {
            if (rank_of(L[i]) == r) os << " n" << i << ";";
        }
        os << " }\n";
    }
    for (auto [a, b] : L.hasse_edges()) os << "  n" << a << " -> n" << b << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace facelat::lattice

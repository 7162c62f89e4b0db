#pragma once

// Exact rational linear algebra and polyhedral cones.
// Every quantity is an arbitrary precision rational; there is no floating point here.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "facelat/errors.hpp"
#include "facelat/rational.hpp"

namespace facelat::exactgeom {

/// Largest ambient dimension accepted for user supplied bodies.
inline constexpr std::size_t kMaxAmbientDim = 4;

/// Dense rational vector.
class RatVec {
public:
    RatVec() = default;
    explicit RatVec(std::size_t n) : c_(n, Rational(0)) {}
    RatVec(std::initializer_list<Rational> xs) : c_(xs) {}
    explicit RatVec(std::vector<Rational> xs) : c_(std::move(xs)) {}

    static RatVec unit(std::size_t n, std::size_t i) {
        RatVec v(n);
        v[i] = 1;
        return v;
    }

    std::size_t size() const { return c_.size(); }
    Rational& operator[](std::size_t i) { return c_[i]; }
    const Rational& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<Rational>& coords() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
    }

    RatVec& operator+=(const RatVec& o) {
        require_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    RatVec& operator-=(const RatVec& o) {
        require_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    RatVec& operator*=(const Rational& s) {
        for (auto& q : c_) q *= s;
        return *this;
    }
    RatVec& operator/=(const Rational& s) {
        for (auto& q : c_) q /= s;
        return *this;
    }
    friend RatVec operator+(RatVec a, const RatVec& b) { return a += b; }
    friend RatVec operator-(RatVec a, const RatVec& b) { return a -= b; }
    friend RatVec operator-(RatVec a) { return a *= Rational(-1); }
    friend RatVec operator*(RatVec a, const Rational& s) { return a *= s; }
    friend RatVec operator*(const Rational& s, RatVec a) { return a *= s; }
    friend RatVec operator/(RatVec a, const Rational& s) { return a /= s; }

    friend bool operator==(const RatVec& a, const RatVec& b) { return a.c_ == b.c_; }
    friend bool operator!=(const RatVec& a, const RatVec& b) { return !(a == b); }
    /// Lexicographic order.
    friend bool operator<(const RatVec& a, const RatVec& b) {
        return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ",";
            s += c_[i].get_str();
        }
        return s + ")";
    }

    void require_same(const RatVec& o) const {
        if (o.size() != size()) {
            throw DimensionMismatch("vectors of dimension " + std::to_string(size()) + " and " +
                                    std::to_string(o.size()));
        }
    }

private:
    std::vector<Rational> c_;
};

inline Rational dot(const RatVec& a, const RatVec& b) {
    a.require_same(b);
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RatVec zero_vec(std::size_t n) { return RatVec(n); }

/// Positive multiple with coprime integer entries. Zero maps to zero.
inline RatVec primitive(const RatVec& v) {
    if (v.is_zero()) return v;
    Integer l = 1;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v[i].get_den_mpz_t());
    }
    std::vector<Integer> ints(v.size());
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational scaled = v[i] * Rational(l);
        ints[i] = scaled.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
    }
    RatVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(ints[i] / g);
    return out;
}

/// Primitive representative of the line through v: first nonzero entry positive.
inline RatVec sign_normalized(const RatVec& v) {
    RatVec p = primitive(v);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] != 0) {
            if (p[i] < 0) p = -p;
            break;
        }
    }
    return p;
}

inline RatVec parse_vec(const std::vector<std::string>& xs) {
    RatVec v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) v[i] = parse_rational(xs[i]);
    return v;
}

inline void sort_unique(std::vector<RatVec>& vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

// ---------------------------------------------------------------------------
// Matrices (row lists) and elimination.

using Matrix = std::vector<RatVec>;

struct Echelon {
    Matrix rows;                       ///< reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;   ///< pivot column of each row
};

/// Reduced row echelon form of the rows of `m`, each of length `ncols`.
inline Echelon rref(Matrix m, std::size_t ncols) {
    for (const auto& r : m) {
        if (r.size() != ncols) throw DimensionMismatch("matrix row length mismatch");
    }
    Echelon e;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[row], m[piv]);
        Rational inv = 1 / m[row][col];
        m[row] *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r != row && m[r][col] != 0) {
                Rational f = m[r][col];
                m[r] -= m[row] * f;
            }
        }
        e.pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    e.rows = std::move(m);
    return e;
}

inline std::size_t rank(const Matrix& m, std::size_t ncols) { return rref(m, ncols).pivots.size(); }

/// Basis of {x : r.x = 0 for every row r}.
inline Matrix nullspace(const Matrix& m, std::size_t ncols) {
    Echelon e = rref(m, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    Matrix basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        RatVec v(ncols);
        v[f] = 1;
        for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
        basis.push_back(v);
    }
    return basis;
}

/// Calls f on every k-subset of {0..n-1} in lexicographic order; stops when f returns false.
inline void for_each_combination(std::size_t n, std::size_t k,
                                 const std::function<bool(const std::vector<std::size_t>&)>& f) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        if (!f(idx)) return;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// ---------------------------------------------------------------------------
// Linear and affine subspaces.

/// Linear subspace with a canonical basis: reduced echelon rows scaled to primitive integers.
class LinearSubspace {
public:
    LinearSubspace() = default;
    explicit LinearSubspace(std::size_t ambient) : n_(ambient) {}

    static LinearSubspace span(const Matrix& vs, std::size_t ambient) {
        LinearSubspace s(ambient);
        for (auto& r : rref(vs, ambient).rows) s.basis_.push_back(primitive(r));
        return s;
    }
    static LinearSubspace whole(std::size_t ambient) {
        Matrix id;
        for (std::size_t i = 0; i < ambient; ++i) id.push_back(RatVec::unit(ambient, i));
        return span(id, ambient);
    }

    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return basis_.size(); }
    const Matrix& basis() const& { return basis_; }
    Matrix basis() && { return std::move(basis_); }

    bool contains(const RatVec& x) const {
        if (x.size() != n_) throw DimensionMismatch("point dimension differs from ambient dimension");
        Matrix m = basis_;
        m.push_back(x);
        return rank(m, n_) == basis_.size();
    }

    LinearSubspace orth_complement() const {
        LinearSubspace s(n_);
        for (auto& r : rref(nullspace(basis_, n_), n_).rows) s.basis_.push_back(primitive(r));
        return s;
    }

    /// Orthogonal projection onto this subspace.
    RatVec project(const RatVec& x) const {
        if (x.size() != n_) throw DimensionMismatch("point dimension differs from ambient dimension");
        const std::size_t k = basis_.size();
        if (k == 0) return RatVec(n_);
        // Solve (B B^T) c = B x, then return B^T c.
        Matrix aug;
        for (std::size_t i = 0; i < k; ++i) {
            RatVec row(k + 1);
            for (std::size_t j = 0; j < k; ++j) row[j] = dot(basis_[i], basis_[j]);
            row[k] = dot(basis_[i], x);
            aug.push_back(row);
        }
        Echelon e = rref(aug, k + 1);
        RatVec out(n_);
        for (std::size_t i = 0; i < k; ++i) out += basis_[e.pivots[i]] * e.rows[i][k];
        return out;
    }

    friend bool operator==(const LinearSubspace& a, const LinearSubspace& b) {
        return a.n_ == b.n_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const LinearSubspace& a, const LinearSubspace& b) { return !(a == b); }
    friend bool operator<(const LinearSubspace& a, const LinearSubspace& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return a.basis_ < b.basis_;
    }

private:
    std::size_t n_ = 0;
    Matrix basis_;
};

inline LinearSubspace orth_complement(const LinearSubspace& v) { return v.orth_complement(); }

/// Orthogonal projection of x onto v.
inline RatVec project(const RatVec& x, const LinearSubspace& v) { return v.project(x); }

/// Affine subspace base + dir; the base point is the element closest to the origin.
struct AffineSubspace {
    RatVec base;
    LinearSubspace dir;

    std::size_t dim() const { return dir.dim(); }
    bool contains(const RatVec& x) const { return dir.contains(x - base); }
    friend bool operator==(const AffineSubspace& a, const AffineSubspace& b) {
        return a.base == b.base && a.dir == b.dir;
    }
};

/// Affine hull of a nonempty point list.
inline AffineSubspace aff_hull(const std::vector<RatVec>& pts) {
    if (pts.empty()) throw InvalidBody("affine hull of an empty point list");
    const std::size_t n = pts.front().size();
    Matrix diffs;
    for (const auto& p : pts) diffs.push_back(p - pts.front());
    AffineSubspace a{RatVec(n), LinearSubspace::span(diffs, n)};
    a.base = a.dir.orth_complement().project(pts.front());
    return a;
}

// ---------------------------------------------------------------------------
// Polyhedral cones.

/// Polyhedral cone pos(rays) + lin. Canonical form: lineality as a LinearSubspace,
/// rays are the extreme rays of the pointed part (orthogonal to lin), primitive and sorted.
/// Two equal cones have equal records.
struct PolyCone {
    std::size_t n = 0;
    LinearSubspace lin;
    std::vector<RatVec> rays;

    std::size_t dim() const {
        Matrix m = lin.basis();
        m.insert(m.end(), rays.begin(), rays.end());
        return rank(m, n);
    }
    bool is_zero() const { return lin.dim() == 0 && rays.empty(); }
    bool is_subspace() const { return rays.empty(); }
    bool is_whole_space() const { return rays.empty() && lin.dim() == n; }

    /// Generators with the lineality basis taken in both signs.
    Matrix generators() const {
        Matrix g = rays;
        for (const auto& b : lin.basis()) {
            g.push_back(b);
            g.push_back(-b);
        }
        return g;
    }

    std::string str() const {
        std::ostringstream os;
        os << "pos{";
        for (std::size_t i = 0; i < rays.size(); ++i) os << (i ? "," : "") << rays[i].str();
        os << "}";
        if (lin.dim() > 0) {
            os << "+lin{";
            for (std::size_t i = 0; i < lin.dim(); ++i) os << (i ? "," : "") << lin.basis()[i].str();
            os << "}";
        }
        return os.str();
    }

    friend bool operator==(const PolyCone& a, const PolyCone& b) {
        return a.n == b.n && a.lin == b.lin && a.rays == b.rays;
    }
    friend bool operator!=(const PolyCone& a, const PolyCone& b) { return !(a == b); }
    friend bool operator<(const PolyCone& a, const PolyCone& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.lin != b.lin) return a.lin < b.lin;
        return a.rays < b.rays;
    }
};

/// Inequality description of a cone inside its linear span:
/// K = { x in span : a.x >= 0 for every facet normal a }.
struct ConeHRep {
    std::size_t n = 0;
    Matrix span_complement;  ///< x in span iff x is orthogonal to all rows
    Matrix facets;           ///< inner facet normals, primitive, inside the span

    bool in_span(const RatVec& x) const {
        if (x.size() != n) throw DimensionMismatch("point dimension differs from cone dimension");
        return std::all_of(span_complement.begin(), span_complement.end(),
                           [&](const RatVec& r) { return dot(r, x) == 0; });
    }
    bool contains(const RatVec& x) const {
        return in_span(x) && std::all_of(facets.begin(), facets.end(),
                                         [&](const RatVec& a) { return dot(a, x) >= 0; });
    }
    bool ri_contains(const RatVec& x) const {
        return in_span(x) && std::all_of(facets.begin(), facets.end(),
                                         [&](const RatVec& a) { return dot(a, x) > 0; });
    }
};

namespace detail {

inline Matrix clean_generators(const Matrix& gens, std::size_t n) {
    Matrix out;
    for (const auto& g : gens) {
        if (g.size() != n) throw DimensionMismatch("generator dimension differs from ambient dimension");
        if (!g.is_zero()) out.push_back(primitive(g));
    }
    sort_unique(out);
    return out;
}

/// Facet normals of pos(gens) inside span(gens), from (k-1)-subsets of generators.
inline Matrix facet_normals(const Matrix& gens, const Matrix& span_complement, std::size_t k,
                            std::size_t n) {
    Matrix facets;
    if (k == 0) return facets;
    for_each_combination(gens.size(), k - 1, [&](const std::vector<std::size_t>& idx) {
        Matrix rows = span_complement;
        for (auto i : idx) rows.push_back(gens[i]);
        Matrix ns = nullspace(rows, n);
        if (ns.size() != 1) return true;
        const RatVec& a = ns.front();
        bool nonneg = true, nonpos = true;
        for (const auto& g : gens) {
            int s = sgn(dot(a, g));
            if (s < 0) nonneg = false;
            if (s > 0) nonpos = false;
        }
        if (nonneg && !nonpos) facets.push_back(primitive(a));
        if (nonpos && !nonneg) facets.push_back(primitive(-a));
        return true;
    });
    sort_unique(facets);
    return facets;
}

}  // namespace detail

/// Canonical cone generated by `gens` in R^n. pos of the empty list is {0}.
inline PolyCone pos_hull(const Matrix& gens, std::size_t n) {
    Matrix g = detail::clean_generators(gens, n);
    PolyCone c;
    c.n = n;
    c.lin = LinearSubspace(n);
    if (g.empty()) return c;
    const LinearSubspace span = LinearSubspace::span(g, n);
    const Matrix span_c = span.orth_complement().basis();
    const std::size_t k = span.dim();
    const Matrix facets = detail::facet_normals(g, span_c, k, n);
    Matrix lin_rows = span_c;
    lin_rows.insert(lin_rows.end(), facets.begin(), facets.end());
    c.lin = LinearSubspace::span(nullspace(lin_rows, n), n);
    const std::size_t m = k - c.lin.dim();
    for (const auto& gen : g) {
        RatVec p = gen - c.lin.project(gen);
        if (p.is_zero()) continue;
        Matrix tight;
        for (const auto& a : facets) {
            if (dot(a, p) == 0) tight.push_back(a);
        }
        if (rank(tight, n) + 1 == m) c.rays.push_back(primitive(p));
    }
    sort_unique(c.rays);
    return c;
}

inline PolyCone zero_cone(std::size_t n) { return pos_hull({}, n); }

inline PolyCone subspace_cone(const LinearSubspace& v) {
    PolyCone c;
    c.n = v.ambient_dim();
    c.lin = v;
    return c;
}

inline PolyCone whole_space(std::size_t n) { return subspace_cone(LinearSubspace::whole(n)); }

inline ConeHRep hrep(const PolyCone& k) {
    ConeHRep h;
    h.n = k.n;
    Matrix gens = k.lin.basis();
    gens.insert(gens.end(), k.rays.begin(), k.rays.end());
    const LinearSubspace span = LinearSubspace::span(gens, k.n);
    h.span_complement = span.orth_complement().basis();
    if (!k.rays.empty()) {
        // Facets contain lin and (m-1) independent extreme rays.
        const std::size_t m = span.dim() - k.lin.dim();
        Matrix base = h.span_complement;
        base.insert(base.end(), k.lin.basis().begin(), k.lin.basis().end());
        h.facets = detail::facet_normals(k.rays, base, m, k.n);
    }
    return h;
}

inline bool contains(const PolyCone& k, const RatVec& x) { return hrep(k).contains(x); }

/// x in the relative interior of k.
inline bool ri_contains(const PolyCone& k, const RatVec& x) { return hrep(k).ri_contains(x); }

/// a is a subset of b.
inline bool is_subcone(const PolyCone& a, const PolyCone& b) {
    if (a.n != b.n) throw DimensionMismatch("cones in different ambient dimensions");
    const ConeHRep h = hrep(b);
    for (const auto& g : a.generators()) {
        if (!h.contains(g)) return false;
    }
    return true;
}

/// Sum of rays plus sum of lineality basis vectors; lies in ri(k).
inline RatVec ri_point(const PolyCone& k) {
    RatVec v(k.n);
    for (const auto& r : k.rays) v += r;
    for (const auto& b : k.lin.basis()) v += b;
    return v;
}

/// Canonical cone { x : e.x = 0 for e in eqs, a.x >= 0 for a in ineqs }.
inline PolyCone cone_from_constraints(std::size_t n, const Matrix& eqs, const Matrix& ineqs_in) {
    Matrix ineqs = detail::clean_generators(ineqs_in, n);
    for (const auto& e : eqs) {
        if (e.size() != n) throw DimensionMismatch("constraint dimension differs from ambient dimension");
    }
    Matrix all = eqs;
    all.insert(all.end(), ineqs.begin(), ineqs.end());
    const LinearSubspace lin = LinearSubspace::span(nullspace(all, n), n);
    Matrix base = eqs;
    base.insert(base.end(), lin.basis().begin(), lin.basis().end());
    const std::size_t base_rank = rank(base, n);
    Matrix gens = lin.basis();
    for (const auto& b : lin.basis()) gens.push_back(-b);
    if (base_rank < n) {
        const std::size_t s = n - base_rank;
        for_each_combination(ineqs.size(), s - 1, [&](const std::vector<std::size_t>& idx) {
            Matrix rows = base;
            for (auto i : idx) rows.push_back(ineqs[i]);
            Matrix ns = nullspace(rows, n);
            if (ns.size() != 1) return true;
            for (const RatVec& r : {ns.front(), RatVec(-ns.front())}) {
                bool ok = std::all_of(ineqs.begin(), ineqs.end(),
                                      [&](const RatVec& a) { return dot(a, r) >= 0; });
                if (ok) gens.push_back(r);
            }
            return true;
        });
    }
    return pos_hull(gens, n);
}

inline PolyCone intersect_cones(const PolyCone& a, const PolyCone& b) {
    if (a.n != b.n) throw DimensionMismatch("cones in different ambient dimensions");
    const ConeHRep ha = hrep(a), hb = hrep(b);
    Matrix eqs = ha.span_complement;
    eqs.insert(eqs.end(), hb.span_complement.begin(), hb.span_complement.end());
    Matrix ineqs = ha.facets;
    ineqs.insert(ineqs.end(), hb.facets.begin(), hb.facets.end());
    return cone_from_constraints(a.n, eqs, ineqs);
}

inline PolyCone sum_cones(const PolyCone& a, const PolyCone& b) {
    if (a.n != b.n) throw DimensionMismatch("cones in different ambient dimensions");
    Matrix g = a.generators();
    Matrix gb = b.generators();
    g.insert(g.end(), gb.begin(), gb.end());
    return pos_hull(g, a.n);
}

/// All nonempty faces of k, sorted by dimension then record. Includes lin(k) and k.
inline std::vector<PolyCone> cone_faces(const PolyCone& k) {
    const ConeHRep h = hrep(k);
    const std::size_t r = k.rays.size();
    using Mask = std::vector<bool>;
    std::vector<Mask> facet_masks;
    for (const auto& a : h.facets) {
        Mask m(r);
        for (std::size_t i = 0; i < r; ++i) m[i] = dot(a, k.rays[i]) == 0;
        facet_masks.push_back(m);
    }
    std::vector<Mask> faces{Mask(r, true)};
    for (std::size_t done = 0; done < faces.size(); ++done) {
        for (const auto& fm : facet_masks) {
            Mask m(r);
            for (std::size_t i = 0; i < r; ++i) m[i] = faces[done][i] && fm[i];
            if (std::find(faces.begin(), faces.end(), m) == faces.end()) faces.push_back(m);
        }
    }
    std::vector<PolyCone> out;
    for (const auto& m : faces) {
        PolyCone f;
        f.n = k.n;
        f.lin = k.lin;
        for (std::size_t i = 0; i < r; ++i) {
            if (m[i]) f.rays.push_back(k.rays[i]);
        }
        out.push_back(f);
    }
    std::sort(out.begin(), out.end(), [](const PolyCone& a, const PolyCone& b) {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        return a < b;
    });
    return out;
}

/// The face of k containing x in its relative interior. Requires x in k.
inline PolyCone face_containing_in_ri(const PolyCone& k, const RatVec& x) {
    for (const auto& f : cone_faces(k)) {
        if (ri_contains(f, x)) return f;
    }
    throw PointNotInBody("vector " + x.str() + " is not in the cone " + k.str());
}

// ---------------------------------------------------------------------------
// Polytopes given by vertex lists, via homogenization x -> (x, 1).

namespace detail {
inline Matrix homogenize(const std::vector<RatVec>& pts) {
    Matrix out;
    for (const auto& p : pts) {
        RatVec h(p.size() + 1);
        for (std::size_t i = 0; i < p.size(); ++i) h[i] = p[i];
        h[p.size()] = 1;
        out.push_back(h);
    }
    return out;
}
inline RatVec homogenize(const RatVec& p) { return homogenize(std::vector<RatVec>{p}).front(); }
}  // namespace detail

/// x in conv(pts).
inline bool hull_contains(const std::vector<RatVec>& pts, const RatVec& x) {
    if (pts.empty()) return false;
    if (x.size() != pts.front().size()) throw DimensionMismatch("point dimension differs from polytope");
    return contains(pos_hull(detail::homogenize(pts), x.size() + 1), detail::homogenize(x));
}

/// x in ri(conv(pts)).
inline bool ri_contains(const std::vector<RatVec>& pts, const RatVec& x) {
    if (pts.empty()) return false;
    if (x.size() != pts.front().size()) throw DimensionMismatch("point dimension differs from polytope");
    return ri_contains(pos_hull(detail::homogenize(pts), x.size() + 1), detail::homogenize(x));
}

inline RatVec centroid(const std::vector<RatVec>& pts) {
    if (pts.empty()) throw InvalidBody("centroid of an empty point list");
    RatVec c(pts.front().size());
    for (const auto& p : pts) c += p;
    return c / Rational(static_cast<long>(pts.size()));
}

}  // namespace facelat::exactgeom

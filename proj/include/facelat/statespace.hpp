#pragma once

// Floating point state spaces of finite dimensional C*-algebras (block diagonal complex
// matrices). Faces are described by support projections, normal cones by maximal
// projections. Every verdict here is numeric and tolerance driven; nothing in this header
// claims exact lattice equalities.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "facelat/errors.hpp"

namespace facelat::statespace {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

struct Tolerances {
    double sym = 1e-10;
    double proj = 1e-10;
    double psd = 1e-10;
    double trace = 1e-10;
    double rank = 1e-8;
    double gap = 1e-8;
    double flat = 1e-6;
};

/// Self-adjoint matrix; the stored value is exactly hermitian (symmetrized on entry).
class HermMat {
public:
    HermMat() = default;
    explicit HermMat(const Matrix& m, double tau_sym = Tolerances{}.sym) {
        if (m.rows() != m.cols() || m.rows() == 0) throw InvalidMatrix("not a nonempty square matrix");
        if ((m - m.adjoint()).norm() > tau_sym * std::max(1.0, m.norm())) throw InvalidMatrix("not self-adjoint");
        m_ = (m + m.adjoint()) / 2.0;
    }

    const Matrix& matrix() const { return m_; }
    Eigen::Index size() const { return m_.rows(); }

private:
    Matrix m_;
};

/// Real inner product <a, b> = tr(a b) on self-adjoint matrices.
inline double trace_inner(const Matrix& a, const Matrix& b) { return (a * b).trace().real(); }

struct Spectrum {
    Eigen::VectorXd values;  ///< ascending
    Matrix vectors;
};

inline Spectrum spectrum(const HermMat& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix());
    if (es.info() != Eigen::Success) throw EigenFailure("eigen decomposition did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

inline double lambda_max(const HermMat& a) { return spectrum(a).values.maxCoeff(); }
inline double lambda_min(const HermMat& a) { return spectrum(a).values.minCoeff(); }

/// Orthogonal projection p = p^2 = p^*.
class OrthProj {
public:
    OrthProj() = default;
    explicit OrthProj(const Matrix& m, const Tolerances& tol = {}) : m_(m, tol.sym) {
        const Matrix& p = m_.matrix();
        if ((p * p - p).norm() > tol.proj * std::max<double>(1.0, static_cast<double>(p.rows()))) {
            throw InvalidMatrix("not idempotent");
        }
    }

    const Matrix& matrix() const { return m_.matrix(); }
    int rank() const { return static_cast<int>(std::lround(m_.matrix().trace().real())); }

    /// p <= q in the projection order, i.e. q p = p.
    bool leq(const OrthProj& q, double tau) const { return (q.matrix() * matrix() - matrix()).norm() <= tau; }
    bool approx_equal(const OrthProj& q, double tau) const { return (matrix() - q.matrix()).norm() <= tau; }

private:
    HermMat m_;
};

/// Sum of the eigenprojections of a whose eigenvalues satisfy keep(lambda).
template <class Keep>
Matrix spectral_projection(const Spectrum& s, Keep keep) {
    const Eigen::Index n = s.values.size();
    Matrix p = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (keep(s.values(i))) p += s.vectors.col(i) * s.vectors.col(i).adjoint();
    }
    return p;
}

/// Density matrix: positive semidefinite, unit trace.
class State {
public:
    State() = default;
    explicit State(const Matrix& m, const Tolerances& tol = {}) : m_(m, tol.sym) {
        if (std::abs(m_.matrix().trace().real() - 1.0) > tol.trace) throw InvalidMatrix("trace is not one");
        if (lambda_min(m_) < -tol.psd) throw InvalidMatrix("not positive semidefinite");
    }

    const HermMat& herm() const { return m_; }
    const Matrix& matrix() const { return m_.matrix(); }

private:
    HermMat m_;
};

/// s(rho): projection onto the range of rho.
inline OrthProj support_projection(const State& rho, const Tolerances& tol = {}) {
    const Spectrum s = spectrum(rho.herm());
    return OrthProj(spectral_projection(s, [&](double l) { return l > tol.rank; }), tol);
}

/// p+(u): projection onto the eigenspace of the largest eigenvalue. Eigenvalues within
/// tau_gap of the maximum are merged into that eigenspace.
inline OrthProj maximal_projection(const HermMat& u, const Tolerances& tol = {}) {
    if (u.matrix().norm() == 0.0) throw ZeroDirection("maximal projection of the zero matrix");
    const Spectrum s = spectrum(u);
    const double top = s.values.maxCoeff();
    return OrthProj(spectral_projection(s, [&](double l) { return l >= top - tol.gap; }), tol);
}

/// Support function of the state space: h(S, u) = max tr(rho u) = lambda_max(u).
inline double support_function(const HermMat& u) { return lambda_max(u); }

/// Finite dimensional C*-algebra as a direct sum of full matrix blocks Mat(C, n_i).
struct Algebra {
    std::vector<int> blocks;

    int dim() const { return std::accumulate(blocks.begin(), blocks.end(), 0); }
    /// Real dimension of the self-adjoint part.
    int real_dim() const {
        int d = 0;
        for (int b : blocks) d += b * b;
        return d;
    }

    bool is_block_diagonal(const Matrix& m, double tau) const {
        int off = 0;
        for (int b : blocks) {
            for (int i = off; i < off + b; ++i) {
                for (int j = 0; j < dim(); ++j) {
                    if ((j < off || j >= off + b) && std::abs(m(i, j)) > tau) return false;
                }
            }
            off += b;
        }
        return true;
    }

    /// Gaussian self-adjoint element.
    template <class Rng>
    Matrix random_hermitian(Rng& rng) const {
        std::normal_distribution<double> g;
        Matrix m = Matrix::Zero(dim(), dim());
        int off = 0;
        for (int b : blocks) {
            for (int i = 0; i < b; ++i) {
                for (int j = 0; j < b; ++j) m(off + i, off + j) = Complex(g(rng), g(rng));
            }
            off += b;
        }
        return (m + m.adjoint()) / 2.0;
    }

    /// Random state whose support has the given rank in each block (at least one nonzero).
    template <class Rng>
    Matrix random_density(Rng& rng, const std::vector<int>& ranks) const {
        std::normal_distribution<double> g;
        Matrix m = Matrix::Zero(dim(), dim());
        int off = 0;
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            const int b = blocks[k];
            for (int r = 0; r < ranks[k]; ++r) {
                Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim());
                for (int i = 0; i < b; ++i) v(off + i) = Complex(g(rng), g(rng));
                m += v * v.adjoint();
            }
            off += b;
        }
        return m / m.trace().real();
    }

    template <class Rng>
    std::vector<int> random_ranks(Rng& rng) const {
        std::vector<int> r(blocks.size());
        do {
            for (std::size_t k = 0; k < blocks.size(); ++k) r[k] = std::uniform_int_distribution<int>(0, blocks[k])(rng);
        } while (std::all_of(r.begin(), r.end(), [](int x) { return x == 0; }));
        return r;
    }
};

/// Exposed face F(u) = {rho : s(rho) <= p+(u)}; its relative interior is s(rho) = p+(u).
struct ExposedFaceState {
    OrthProj p;
    Tolerances tol;

    bool contains(const State& rho) const { return support_projection(rho, tol).leq(p, 1e3 * tol.proj + tol.rank); }
    bool ri_contains(const State& rho) const {
        return support_projection(rho, tol).approx_equal(p, 1e3 * tol.proj + tol.rank);
    }
    /// Real dimension: the face is the state space of p A p.
    int dim(const Algebra& a) const {
        int d = 0, off = 0;
        for (int b : a.blocks) {
            const int r = static_cast<int>(std::lround(p.matrix().block(off, off, b, b).trace().real()));
            d += r * r;
            off += b;
        }
        return d - 1;
    }
};

inline ExposedFaceState exposed_face_state(const Algebra& a, const HermMat& u, const Tolerances& tol = {}) {
    if (u.size() != a.dim() || !a.is_block_diagonal(u.matrix(), tol.sym)) {
        throw InvalidMatrix("direction is not an element of the algebra");
    }
    return {maximal_projection(u, tol), tol};
}

/// Normal cone N(rho) = {u : s(rho) <= p+(u)}; relative interior s(rho) = p+(u).
struct NormalConeState {
    OrthProj s;
    Tolerances tol;

    bool contains(const HermMat& u) const {
        if (u.matrix().norm() == 0.0) return true;
        return s.leq(maximal_projection(u, tol), 1e3 * tol.proj + tol.rank);
    }
    bool ri_contains(const HermMat& u) const {
        if (u.matrix().norm() == 0.0) return s.rank() == static_cast<int>(s.matrix().rows());
        return s.approx_equal(maximal_projection(u, tol), 1e3 * tol.proj + tol.rank);
    }
};

inline NormalConeState normal_cone_state(const Algebra& a, const State& rho, const Tolerances& tol = {}) {
    if (rho.matrix().rows() != a.dim() || !a.is_block_diagonal(rho.matrix(), tol.sym)) {
        throw InvalidMatrix("state is not an element of the algebra");
    }
    return {support_projection(rho, tol), tol};
}

struct SharpReport {
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double tau = 0;
    std::size_t sharp_normal_violations = 0;
    std::size_t sharp_exposed_violations = 0;
    std::size_t duality_violations = 0;
    std::size_t duality_positive = 0;  ///< pairs where tr(rho u) = h(S, u)
    double max_violation = 0;

    bool pass() const { return sharp_normal_violations == 0 && sharp_exposed_violations == 0 && duality_violations == 0; }
};

namespace detail {

/// Largest eigenvalue minus the next distinct one (infinity when there is none).
inline double spectral_gap(const Spectrum& s, double tau_gap) {
    const double top = s.values.maxCoeff();
    double next = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < s.values.size(); ++i) {
        if (s.values(i) < top - tau_gap) next = std::max(next, s.values(i));
    }
    return top - next;
}

/// Element commuting with p whose maximal projection is exactly p: mu on range(p) and a
/// compression of a random element strictly below mu on the complement.
template <class Rng>
Matrix element_with_top_projection(const Algebra& a, const Matrix& p, Rng& rng) {
    const Matrix q = Matrix::Identity(a.dim(), a.dim()) - p;
    const Matrix w = q * a.random_hermitian(rng) * q;
    const double top = w.norm() == 0.0 ? 0.0 : lambda_max(HermMat(w));
    return (top + 1.0) * p + w;
}

}  // namespace detail

/// Samples directions u and states rho and verifies that every nonzero u is sharp normal
/// and every rho is sharp exposed. The checks do not reuse the projection formulas alone:
/// membership in exposed faces is tested through the support function lambda_max and
/// relative interiors through explicit perturbations that must stay inside.
inline SharpReport verify_sharp_properties(const Algebra& a, std::size_t samples, double tau, std::uint64_t seed,
                                           const Tolerances& tol = {}) {
    SharpReport r;
    r.samples = samples;
    r.seed = seed;
    r.tau = tau;
    for (std::size_t i = 0; i < samples; ++i) {
        std::seed_seq ss{seed, static_cast<std::uint64_t>(i)};
        std::mt19937_64 rng(ss);

        // Sharp normal: x in ri F(u) implies u in ri N(x).
        {
            const HermMat u(a.random_hermitian(rng));
            const Spectrum su = spectrum(u);
            const OrthProj p = maximal_projection(u, tol);
            const Matrix g = a.random_density(rng, std::vector<int>(a.blocks.begin(), a.blocks.end()));
            Matrix xm = p.matrix() * g * p.matrix();
            xm /= xm.trace().real();
            const State x(xm, tol);
            double v = std::abs(trace_inner(x.matrix(), u.matrix()) - su.values.maxCoeff());
            if (!support_projection(x, tol).approx_equal(p, 1e3 * tol.proj + tol.rank)) v = std::max(v, 1.0);
            const Matrix w = detail::element_with_top_projection(a, p.matrix(), rng);
            const double eps = 0.25 * std::min(1.0, detail::spectral_gap(su, tol.gap)) /
                               (u.matrix().norm() + w.norm() + 1.0);
            const HermMat ue((1.0 + eps) * u.matrix() - eps * w);
            v = std::max(v, std::abs(lambda_max(ue) - trace_inner(x.matrix(), ue.matrix())));
            if (v > tau) ++r.sharp_normal_violations;
            r.max_violation = std::max(r.max_violation, v);
        }

        // Sharp exposed: u in ri N(rho) implies rho in ri F(u).
        {
            const State rho(a.random_density(rng, a.random_ranks(rng)), tol);
            const OrthProj s = support_projection(rho, tol);
            const HermMat u(detail::element_with_top_projection(a, s.matrix(), rng));
            const double h = support_function(u);
            double v = std::abs(trace_inner(rho.matrix(), u.matrix()) - h);
            if (!maximal_projection(u, tol).approx_equal(s, 1e3 * tol.proj + tol.rank)) v = std::max(v, 1.0);
            Matrix sg = s.matrix() * a.random_density(rng, a.blocks) * s.matrix();
            sg /= sg.trace().real();
            const Spectrum sr = spectrum(rho.herm());
            double m = std::numeric_limits<double>::infinity();
            for (Eigen::Index k = 0; k < sr.values.size(); ++k) {
                if (sr.values(k) > tol.rank) m = std::min(m, sr.values(k));
            }
            const double eps = 0.5 * m / (sg.norm() + 1.0);
            const HermMat re((1.0 + eps) * rho.matrix() - eps * sg);
            v = std::max(v, std::max(0.0, -lambda_min(re)));
            v = std::max(v, std::abs(trace_inner(re.matrix(), u.matrix()) - h));
            v = std::max(v, std::abs(re.matrix().trace().real() - 1.0));
            if (v > tau) ++r.sharp_exposed_violations;
            r.max_violation = std::max(r.max_violation, v);

            // Pointwise duality on a constructed pair (both sides true) and a random pair.
            const HermMat u2(a.random_hermitian(rng));
            for (const HermMat* dir : {&u, &u2}) {
                const bool attains = std::abs(trace_inner(rho.matrix(), dir->matrix()) - support_function(*dir)) <= tau;
                const bool below = s.leq(maximal_projection(*dir, tol), 1e3 * tol.proj + tol.rank);
                if (attains) ++r.duality_positive;
                if (attains != below) ++r.duality_violations;
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// The three-dimensional cone inside the state space of Mat(C, 2) + C.

inline Matrix pauli(int k) {
    Matrix m = Matrix::Zero(2, 2);
    if (k == 1) m << 0, 1, 1, 0;
    if (k == 2) m << 0, Complex(0, -1), Complex(0, 1), 0;
    if (k == 3) m << 1, 0, 0, -1;
    return m;
}

/// a + b as a 3x3 block diagonal matrix.
inline Matrix direct_sum(const Matrix& a, Complex b) {
    Matrix m = Matrix::Zero(3, 3);
    m.block(0, 0, 2, 2) = a;
    m(2, 2) = b;
    return m;
}

/// Orthonormal frame of the affine space of unit trace elements without sigma_3 part in
/// the first summand, centered at 1/3. The cone C is the convex hull of the equatorial
/// disk of S(2) + 0 and the point 0 + 1.
struct ConeFrame {
    std::array<Matrix, 3> basis;
    Matrix origin;
    Eigen::Vector3d apex, base_center;
    double base_radius = 0, height = 0;

    static ConeFrame build() {
        ConeFrame f;
        const std::array<Matrix, 3> raw{direct_sum(pauli(1), 0), direct_sum(pauli(2), 0),
                                        direct_sum(-Matrix::Identity(2, 2), 2)};
        for (int i = 0; i < 3; ++i) {
            Matrix v = raw[i];
            for (int j = 0; j < i; ++j) v -= trace_inner(v, f.basis[j]) * f.basis[j];
            f.basis[i] = v / std::sqrt(trace_inner(v, v));
        }
        f.origin = Matrix::Identity(3, 3) / 3.0;
        f.apex = f.coords(direct_sum(Matrix::Zero(2, 2), 1));
        f.base_center = f.coords(direct_sum(Matrix::Identity(2, 2) / 2.0, 0));
        f.base_radius = (f.coords(direct_sum((Matrix::Identity(2, 2) + pauli(1)) / 2.0, 0)) - f.base_center).norm();
        f.height = (f.apex - f.base_center).norm();
        return f;
    }

    Eigen::Vector3d coords(const Matrix& rho) const {
        return {trace_inner(rho - origin, basis[0]), trace_inner(rho - origin, basis[1]),
                trace_inner(rho - origin, basis[2])};
    }
    Matrix matrix(const Eigen::Vector3d& x) const { return origin + x(0) * basis[0] + x(1) * basis[1] + x(2) * basis[2]; }

    /// Half aperture of the cone of revolution, in degrees.
    double half_aperture_deg() const { return std::atan2(base_radius, height) * 180.0 / M_PI; }

    /// h(C, v) relative to the frame origin.
    double support(const Eigen::Vector3d& v) const {
        const double disk = v.dot(base_center) + base_radius * std::hypot(v(0), v(1));
        return std::max(v.dot(apex), disk);
    }

    bool contains(const Eigen::Vector3d& x, double tau) const {
        if (x(2) < base_center(2) - tau || x(2) > apex(2) + tau) return false;
        const double t = base_radius / height;
        return std::hypot(x(0), x(1)) <= t * (apex(2) - x(2)) + tau;
    }
};

enum class ConicType { Elliptic, Parabolic, Hyperbolic };

inline std::string to_string(ConicType c) {
    switch (c) {
        case ConicType::Elliptic: return "elliptic";
        case ConicType::Parabolic: return "parabolic";
        case ConicType::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

/// Numeric shape analysis of a planar convex body given by boundary samples.
struct ShapeReport {
    std::size_t samples = 0;
    std::size_t flat_spots = 0;          ///< segments in the boundary
    std::size_t vertices = 0;            ///< points with a normal cone of positive width
    std::size_t non_exposed_points = 0;  ///< segment endpoints where the boundary is C^1
    std::size_t corners = 0;             ///< segment endpoints where the boundary turns
    std::size_t touching_not_normal = 0; ///< boundary rays of vertex normal cones exposing only the vertex
    std::size_t exposure_checked = 0;
    std::size_t exposure_failures = 0;
    std::vector<double> flat_spot_lengths;
};

struct ConeExperimentReport {
    double phi_deg = 0;
    double critical_angle_deg = 0;  ///< transition between elliptic and hyperbolic sections
    double conic_discriminant = 0;  ///< quadratic coefficient of the section; sign gives the type
    ConicType conic = ConicType::Elliptic;
    ShapeReport projection;
    ShapeReport intersection;
    std::size_t resolution = 0;
    double tau_flat = 0;
    const char* label = "numeric";

    /// Projection has T = N at the sampled directions.
    bool projection_sharp() const { return projection.touching_not_normal == 0; }
    /// Intersection has every sampled boundary face exposed.
    bool intersection_exposed() const {
        return intersection.exposure_failures == 0 && intersection.non_exposed_points == 0;
    }
};

namespace detail {

inline Eigen::Vector2d unit(double t) { return {std::cos(t), std::sin(t)}; }

/// Support point from one-sided difference quotients of h: x = h u + h' u_perp.
template <class H>
Eigen::Vector2d support_point(const H& h, double t, double delta, int side) {
    const double d = side > 0 ? (h(t + delta) - h(t)) / delta
                   : side < 0 ? (h(t) - h(t - delta)) / delta
                              : (h(t + delta) - h(t - delta)) / (2 * delta);
    const Eigen::Vector2d u = unit(t), up{-u(1), u(0)};
    return h(t) * u + d * up;
}

/// Analysis of a planar body from its support function sampled at n directions.
/// Vertices are maximal runs of directions whose support points agree within tau_flat,
/// i.e. h is linear in u there. Flat spots are jumps of the support point, located by
/// bisection down to an angular width of 1e-9.
template <class H>
ShapeReport analyze_support(const H& h, std::size_t n, double tau_flat) {
    ShapeReport r;
    r.samples = n;
    const double dt = 2 * M_PI / static_cast<double>(n);
    // Half-step offset keeps the grid off the axis directions, where test bodies have kinks.
    auto theta = [&](std::size_t k) { return (static_cast<double>(k) + 0.5) * dt; };
    std::vector<Eigen::Vector2d> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = support_point(h, theta(k), 1e-7, 0);
    double typical = 0;
    for (std::size_t k = 0; k < n; ++k) typical = std::max(typical, std::abs(h(theta(k))));
    const double jump_tol = 1e-4 * typical;

    struct Flat {
        double t;
        Eigen::Vector2d lo, hi;
    };
    std::vector<Flat> flats;
    for (std::size_t k = 0; k < n; ++k) {
        double a = theta(k), b = theta(k) + dt;
        if ((x[(k + 1) % n] - x[k]).norm() < 10 * jump_tol) continue;
        while (b - a > 1e-9) {
            const double m = (a + b) / 2, dd = (b - a) / 8;
            // Outer one-sided limits, so a kink sitting exactly on m or an end is kept.
            const Eigen::Vector2d xa = support_point(h, a, dd, -1), xb = support_point(h, b, dd, +1);
            const Eigen::Vector2d xm_lo = support_point(h, m, dd, -1), xm_hi = support_point(h, m, dd, +1);
            if ((xm_hi - xa).norm() >= (xb - xm_lo).norm()) b = m;
            else a = m;
        }
        const Eigen::Vector2d lo = support_point(h, a, 1e-8, -1), hi = support_point(h, b, 1e-8, +1);
        if ((hi - lo).norm() > jump_tol) flats.push_back({(a + b) / 2, lo, hi});
    }
    r.flat_spots = flats.size();
    for (const auto& f : flats) r.flat_spot_lengths.push_back((f.hi - f.lo).norm());

    // Vertex windows: runs of directions sharing one support point.
    std::vector<int> window(n, -1);
    std::vector<Eigen::Vector2d> vertex_points;
    auto same = [&](std::size_t i, std::size_t j) { return (x[i] - x[j]).norm() <= tau_flat; };
    for (std::size_t k = 0; k < n; ++k) {
        if (window[k] >= 0 || !same(k, (k + 1) % n) || !same(k, (k + n - 1) % n)) continue;
        const int id = static_cast<int>(vertex_points.size());
        vertex_points.push_back(x[k]);
        for (std::size_t i = k; window[i % n] < 0 && same(k, i % n); ++i) window[i % n] = id;
        for (std::size_t i = k + n - 1; window[i % n] < 0 && same(k, i % n); --i) window[i % n] = id;
    }
    r.vertices = vertex_points.size();

    auto is_vertex = [&](const Eigen::Vector2d& p) {
        return std::any_of(vertex_points.begin(), vertex_points.end(),
                           [&](const Eigen::Vector2d& v) { return (v - p).norm() < 1e-5; });
    };
    for (const auto& f : flats) {
        for (const auto& e : {f.lo, f.hi}) {
            if (is_vertex(e)) ++r.corners;
            else ++r.non_exposed_points;
        }
    }
    // A boundary ray of a vertex window is a normal cone only if a flat spot sits there.
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t next = (k + 1) % n;
        if (window[k] == window[next]) continue;
        for (const std::size_t side : {k, next}) {
            if (window[side] < 0) continue;
            const double t = theta(k) + dt / 2;
            const bool flat_here = std::any_of(flats.begin(), flats.end(), [&](const Flat& f) {
                return std::abs(std::remainder(f.t - t, 2 * M_PI)) <= dt;
            });
            if (!flat_here) ++r.touching_not_normal;
        }
    }
    return r;
}

/// Analysis of a planar body from boundary points ordered counterclockwise.
inline ShapeReport analyze_boundary(const std::vector<Eigen::Vector2d>& y, double tau_flat) {
    ShapeReport r;
    const std::size_t n = y.size();
    r.samples = n;
    auto cross2 = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a(0) * b(1) - a(1) * b(0); };
    // turn[k]: sine of the turning angle at y[k].
    std::vector<double> turn(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Eigen::Vector2d a = (y[k] - y[(k + n - 1) % n]).normalized(), b = (y[(k + 1) % n] - y[k]).normalized();
        turn[k] = cross2(a, b);
    }
    std::vector<bool> straight(n);
    for (std::size_t k = 0; k < n; ++k) straight[k] = std::abs(turn[k]) <= tau_flat;

    std::vector<bool> on_flat(n, false);
    std::size_t start = 0;
    while (start < n && straight[start]) ++start;
    if (start == n) return r;  // degenerate
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = (start + i) % n;
        if (!straight[k] || straight[(k + n - 1) % n]) continue;
        std::size_t len = 0;
        while (straight[(k + len) % n]) ++len;
        if (len < 2) continue;
        ++r.flat_spots;
        // The run spans y[k-1] .. y[k+len]; its endpoints are where the boundary turns.
        const std::size_t first = (k + n - 1) % n, last = (k + len) % n;
        for (std::size_t j = 0; j <= len + 1; ++j) on_flat[(first + j) % n] = true;
        r.flat_spot_lengths.push_back((y[last] - y[first]).norm());
        // Curvature scale of the neighboring curved boundary.
        double scale = 0;
        for (std::size_t j = 2; j < 6; ++j) {
            scale = std::max(scale, std::abs(turn[(first + n - j) % n]));
            scale = std::max(scale, std::abs(turn[(last + j) % n]));
        }
        for (const std::size_t e : {first, last}) {
            if (std::abs(turn[e]) > 4 * scale + tau_flat) {
                ++r.corners;
                ++r.touching_not_normal;  // the ray normal to the curved side exposes only the corner
            } else {
                ++r.non_exposed_points;
            }
        }
    }
    // Exposure of every sampled boundary point: its estimated outer normal must expose it
    // alone (curved part) or the whole segment (flat part).
    for (std::size_t k = 0; k < n; ++k) {
        const Eigen::Vector2d t = y[(k + 1) % n] - y[(k + n - 1) % n];
        const Eigen::Vector2d nrm = Eigen::Vector2d(t(1), -t(0)).normalized();
        const double hk = nrm.dot(y[k]);
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t dist = std::min((j + n - k) % n, (k + n - j) % n);
            if (dist <= 1) continue;
            if (on_flat[k] && on_flat[j] && std::abs(nrm.dot(y[j]) - hk) <= 1e-9) continue;
            worst = std::max(worst, nrm.dot(y[j]) - hk);
        }
        ++r.exposure_checked;
        if (worst >= 0) ++r.exposure_failures;
    }
    return r;
}

}  // namespace detail

/// Projection and intersection of the cone C with the plane A through 1/3 whose angle
/// with the axis direction -1_2 + 2 is phi. A is spanned by e1 and sin(phi) e2 + cos(phi) e3,
/// so phi = 90 degrees is perpendicular to the axis.
inline ConeExperimentReport cone_experiment(double phi_deg, std::size_t resolution = 3600,
                                            double tau_flat = Tolerances{}.flat) {
    if (!(phi_deg > 0 && phi_deg < 90)) throw BadAngle("phi must lie strictly between 0 and 90 degrees");
    if (resolution < 16) throw BadAngle("resolution too small");
    const ConeFrame f = ConeFrame::build();
    const double phi = phi_deg * M_PI / 180.0;
    const Eigen::Vector3d f1{1, 0, 0}, f2{0, std::sin(phi), std::cos(phi)};

    ConeExperimentReport r;
    r.phi_deg = phi_deg;
    r.resolution = resolution;
    r.tau_flat = tau_flat;
    r.critical_angle_deg = f.half_aperture_deg();

    // Section of the quadric |x_12|^2 = tan^2(alpha) (x_3 - apex_3)^2 with the plane
    // x = s f1 + t f2: the coefficient of t^2 decides the conic type (s^2 has coefficient 1).
    const double tan_a = f.base_radius / f.height;
    r.conic_discriminant = f2(1) * f2(1) + f2(0) * f2(0) - tan_a * tan_a * f2(2) * f2(2);
    if (std::abs(r.conic_discriminant) <= 1e-12) r.conic = ConicType::Parabolic;
    else r.conic = r.conic_discriminant > 0 ? ConicType::Elliptic : ConicType::Hyperbolic;

    // Projection: the support function of pi_A(C) is h_C restricted to lin(A).
    auto h = [&](double t) { return f.support(std::cos(t) * f1 + std::sin(t) * f2); };
    r.projection = detail::analyze_support(h, resolution, tau_flat);

    // Intersection: radial function from the interior point 1/3.
    std::vector<Eigen::Vector2d> boundary;
    for (std::size_t k = 0; k < resolution; ++k) {
        const double psi = 2 * M_PI * (k + 0.5) / static_cast<double>(resolution);
        const Eigen::Vector3d d = std::cos(psi) * f1 + std::sin(psi) * f2;
        double lam = std::numeric_limits<double>::infinity();
        if (d(2) < 0) lam = std::min(lam, f.base_center(2) / d(2));
        const double den = std::hypot(d(0), d(1)) + tan_a * d(2);
        if (den > 0) lam = std::min(lam, tan_a * f.apex(2) / den);
        boundary.push_back(lam * detail::unit(psi));
    }
    r.intersection = detail::analyze_boundary(boundary, tau_flat);
    return r;
}

struct FrameReport {
    std::size_t samples = 0;
    double support_deviation = 0;      ///< max |h(pi(K), v) - h(C, v)|
    double containment_violation = 0;  ///< C inside K, and pi(K) inside C
    bool pass(double tau) const { return support_deviation <= tau && containment_violation <= tau; }
};

/// C = pi(K) = K cap A~ for K the state space of Mat(C, 2) + C, compared through sampled
/// support functions and sampled points.
inline FrameReport cone_frame_check(std::size_t samples, std::uint64_t seed) {
    const ConeFrame f = ConeFrame::build();
    const Algebra a{{2, 1}};
    FrameReport r;
    r.samples = samples;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> uni(0, 1);
    for (std::size_t i = 0; i < samples; ++i) {
        const Eigen::Vector3d v = Eigen::Vector3d(g(rng), g(rng), g(rng)).normalized();
        const Matrix vm = v(0) * f.basis[0] + v(1) * f.basis[1] + v(2) * f.basis[2];
        // The frame is traceless, so h(K, v) = lambda_max(v) measured from 1/3.
        r.support_deviation = std::max(r.support_deviation, std::abs(lambda_max(HermMat(vm)) - f.support(v)));

        // A random point of C is a state.
        const double ang = 2 * M_PI * uni(rng), rad = std::sqrt(uni(rng)), lam = uni(rng);
        const Eigen::Vector3d disk = f.base_center + f.base_radius * rad * Eigen::Vector3d(std::cos(ang), std::sin(ang), 0);
        const Matrix m = f.matrix((1 - lam) * disk + lam * f.apex);
        r.containment_violation = std::max(r.containment_violation, std::max(0.0, -lambda_min(HermMat(m))));

        // The projection of a random state lies in C.
        const Matrix rho = a.random_density(rng, a.random_ranks(rng));
        const Eigen::Vector3d x = f.coords(rho);
        if (!f.contains(x, 1e-12)) {
            const double t = f.base_radius / f.height;
            const double excess = std::max({f.base_center(2) - x(2), std::hypot(x(0), x(1)) - t * (f.apex(2) - x(2))});
            r.containment_violation = std::max(r.containment_violation, excess);
        }
    }
    return r;
}

}  // namespace facelat::statespace

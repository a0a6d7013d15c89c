#include "kproj/projective.hpp"

#include <algorithm>
#include <cmath>

namespace kproj {

namespace {

KVec canonical_rep(const KVec& v) {
    if (v.empty()) throw validation_error("cannot canonicalize an empty vector");
    double maxmod = 0;
    for (const auto& s : v) maxmod = std::max(maxmod, abs(s));
    if (maxmod <= 0) throw validation_error("cannot canonicalize the zero vector");
    int pivot = -1;
    for (size_t n = 0; n < v.size(); ++n) {
        if (abs(v[n]) > tol::pivot_rel * maxmod) { pivot = static_cast<int>(n); break; }
    }
    // Strip the right phase so the pivot becomes real positive, then normalize.
    const Scalar alpha = conj(v[pivot]) * (1.0 / abs(v[pivot]));
    KVec w = scale_right(v, alpha);
    const double n = norm(w);
    w = scale(w, 1.0 / n);
    w[pivot].c[1] = w[pivot].c[2] = w[pivot].c[3] = 0;  // exact phase removal
    return w;
}

}  // namespace

ProjPoint canonicalize(const KVec& v) { return ProjPoint{v.at(0).field, canonical_rep(v)}; }
DualPoint canonicalize_dual(const KVec& v) { return DualPoint{v.at(0).field, canonical_rep(v)}; }

ProjPoint basis_point(Field f, int dim, int index) {
    KVec v(dim + 1, Scalar::zero(f));
    v.at(index) = Scalar::one(f);
    return ProjPoint{f, v};
}

DualPoint basis_dual(Field f, int dim, int index) {
    KVec v(dim + 1, Scalar::zero(f));
    v.at(index) = Scalar::one(f);
    return DualPoint{f, v};
}

bool points_equal(const ProjPoint& p, const ProjPoint& q, double eps) {
    if (p.field != q.field || p.rep.size() != q.rep.size()) return false;
    return norm(sub(p.rep, q.rep)) <= eps;
}

namespace {
// sqrt(1 - |<a,b>|^2) computed as a projection residual, which stays accurate
// when the points nearly coincide.
double chordal(const KVec& a, const KVec& b) {
    const KVec r = sub(b, scale_right(a, inner(a, b)));
    return std::min(1.0, norm(r));
}
}  // namespace

double proj_distance(const ProjPoint& p, const ProjPoint& q) { return chordal(p.rep, q.rep); }
double proj_distance(const DualPoint& f, const DualPoint& g) { return chordal(f.rep, g.rep); }

Scalar pairing(const DualPoint& f, const ProjPoint& p) { return inner(f.rep, p.rep); }
double abs_pairing(const DualPoint& f, const ProjPoint& p) { return abs(inner(f.rep, p.rep)); }
bool vanishes(const DualPoint& f, const ProjPoint& p, double eps) { return abs_pairing(f, p) <= eps; }

ProjMap::ProjMap(KMatrix m) : mat(std::move(m)) {
    if (!mat.square()) throw validation_error("projective map needs a square matrix");
    const double d = det_abs(mat);
    if (!(d > 1e-250)) throw validation_error("projective map must be invertible");
    const int n_emb = (mat.field == Field::Quaternion) ? 2 * mat.rows : mat.rows;
    mat = mat * std::pow(d, -1.0 / n_emb);
}

ProjMap ProjMap::identity(Field f, int dim) { return ProjMap(KMatrix::identity(f, dim + 1)); }

ProjMap operator*(const ProjMap& x, const ProjMap& y) { return ProjMap(x.mat * y.mat); }
ProjMap inverse(const ProjMap& m) { return ProjMap(inverse(m.mat)); }

ProjPoint apply(const ProjMap& m, const ProjPoint& p) {
    KVec w = m.mat * p.rep;
    if (norm(w) <= 1e-250) throw numeric_error("projective map sent a representative to zero");
    return canonicalize(w);
}

DualPoint apply(const ProjMap& m, const DualPoint& f) {
    KVec w = m.mat * f.rep;
    if (norm(w) <= 1e-250) throw numeric_error("projective map sent a representative to zero");
    return canonicalize_dual(w);
}

ProjMap dual_map(const ProjMap& m) { return ProjMap(conj_transpose(m.mat)); }

DualPoint transport_dual(const ProjMap& phi, const DualPoint& f) {
    return apply(ProjMap(inverse(conj_transpose(phi.mat))), f);
}

ProjPoint ProjLine::point(const Scalar& s, const Scalar& t) const {
    return canonicalize(add(scale_right(e1, s), scale_right(e2, t)));
}

bool ProjLine::contains(const ProjPoint& p, double eps) const {
    KVec res = p.rep;
    res = sub(res, scale_right(e1, inner(e1, res)));
    res = sub(res, scale_right(e2, inner(e2, res)));
    return norm(res) <= eps;
}

ProjLine line_through(const ProjPoint& x, const ProjPoint& y) {
    if (points_equal(x, y)) throw validation_error("line_through needs distinct points");
    KVec e1 = x.rep;
    KVec e2 = sub(y.rep, scale_right(e1, inner(e1, y.rep)));
    const double n = norm(e2);
    if (n <= 1e-12) throw validation_error("line_through: points are numerically equal");
    e2 = scale(e2, 1.0 / n);
    return ProjLine{x, y, e1, e2};
}

EndClass make_end_class(const KMatrix& m) {
    const double n = operator_norm(m);
    if (n <= 0) throw validation_error("end class of the zero endomorphism");
    return EndClass{m * (1.0 / n)};
}

double end_distance(const EndClass& x, const EndClass& y) {
    if (x.rep.field != y.rep.field || x.rep.rows != y.rep.rows || x.rep.cols != y.rep.cols)
        throw validation_error("end_distance shape mismatch");
    // Scalar quotient: full phases for C, only +-1 for R and H.  Aligning y
    // and taking the residual norm directly keeps tiny distances resolvable.
    const Scalar ip = inner(x.rep.a, y.rep.a);
    Scalar align = Scalar::one(x.rep.field);
    if (x.rep.field == Field::Complex) {
        if (abs(ip) > 0) align = conj(ip) * (1.0 / abs(ip));
    } else if (ip.c[0] < 0) {
        align = Scalar(x.rep.field, -1);
    }
    KMatrix residual = x.rep;
    for (size_t n = 0; n < residual.a.size(); ++n) residual.a[n] = residual.a[n] - y.rep.a[n] * align;
    return frobenius_norm(residual);
}

std::vector<KVec> orthonormal_extend(Field f, const std::vector<KVec>& seed, int count) {
    if (seed.empty() && count > 0) {
        std::vector<KVec> out;
        // no seed: plain standard basis
        for (int i = 0; i < count; ++i) {
            KVec e(count, Scalar::zero(f));
            e[i] = Scalar::one(f);
            out.push_back(e);
        }
        return out;
    }
    const int n = static_cast<int>(seed.at(0).size());
    std::vector<KVec> basis;
    auto try_add = [&](KVec v, bool must) {
        for (const auto& e : basis) v = sub(v, scale_right(e, inner(e, v)));
        const double nn = norm(v);
        if (nn <= 1e-10) {
            if (must) throw validation_error("orthonormal_extend: dependent seed vectors");
            return false;
        }
        basis.push_back(scale(v, 1.0 / nn));
        return true;
    };
    for (const auto& v : seed) try_add(v, true);
    for (int i = 0; i < n && static_cast<int>(basis.size()) < count; ++i) {
        KVec e(n, Scalar::zero(f));
        e[i] = Scalar::one(f);
        try_add(e, false);
    }
    if (static_cast<int>(basis.size()) < count)
        throw numeric_error("orthonormal_extend: could not complete the basis");
    basis.resize(count);
    return basis;
}

}  // namespace kproj

#include "kproj/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>

namespace kproj {

namespace {

void check_shape(bool ok, const char* what) {
    if (!ok) throw validation_error(what);
}

double max_abs_entry(const KMatrix& m) {
    double best = 0;
    for (const auto& s : m.a) best = std::max(best, abs(s));
    return best;
}

}  // namespace

// --- vector helpers ---

Scalar inner(const KVec& v, const KVec& w) {
    if (v.size() != w.size() || v.empty()) throw validation_error("inner product size mismatch");
    Scalar acc = Scalar::zero(v[0].field);
    for (size_t n = 0; n < v.size(); ++n) acc = acc + conj(v[n]) * w[n];
    return acc;
}

double norm2(const KVec& v) {
    double acc = 0;
    for (const auto& s : v) acc += abs2(s);
    return acc;
}

double norm(const KVec& v) { return std::sqrt(norm2(v)); }

KVec scale_right(const KVec& v, const Scalar& s) {
    KVec out(v.size(), Scalar::zero(s.field));
    for (size_t n = 0; n < v.size(); ++n) out[n] = v[n] * s;
    return out;
}

KVec scale(const KVec& v, double t) {
    KVec out = v;
    for (auto& s : out) s = s * t;
    return out;
}

KVec add(const KVec& v, const KVec& w) {
    KVec out = v;
    for (size_t n = 0; n < v.size(); ++n) out[n] = out[n] + w[n];
    return out;
}

KVec sub(const KVec& v, const KVec& w) {
    KVec out = v;
    for (size_t n = 0; n < v.size(); ++n) out[n] = out[n] - w[n];
    return out;
}

// --- KMatrix basics ---

KMatrix KMatrix::identity(Field f, int n) {
    KMatrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

KMatrix KMatrix::diagonal(Field f, const KVec& d) {
    KMatrix m(f, static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

KMatrix KMatrix::from_columns(Field f, const std::vector<KVec>& cols) {
    check_shape(!cols.empty(), "from_columns: no columns");
    const int r = static_cast<int>(cols[0].size());
    KMatrix m(f, r, static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) {
        check_shape(static_cast<int>(cols[c].size()) == r, "from_columns: ragged columns");
        for (int i = 0; i < r; ++i) m.at(i, static_cast<int>(c)) = cols[c][i];
    }
    return m;
}

KVec KMatrix::column(int c) const {
    KVec v(rows, Scalar::zero(field));
    for (int r = 0; r < rows; ++r) v[r] = at(r, c);
    return v;
}

KMatrix KMatrix::block(int r0, int c0, int nr, int nc) const {
    KMatrix m(field, nr, nc);
    for (int r = 0; r < nr; ++r)
        for (int c = 0; c < nc; ++c) m.at(r, c) = at(r0 + r, c0 + c);
    return m;
}

KMatrix operator*(const KMatrix& x, const KMatrix& y) {
    check_shape(x.cols == y.rows && x.field == y.field, "matrix product shape/field mismatch");
    KMatrix out(x.field, x.rows, y.cols);
    for (int r = 0; r < x.rows; ++r)
        for (int k = 0; k < x.cols; ++k) {
            const Scalar& xrk = x.at(r, k);
            if (abs2(xrk) == 0.0) continue;
            for (int c = 0; c < y.cols; ++c) out.at(r, c) = out.at(r, c) + xrk * y.at(k, c);
        }
    return out;
}

KVec operator*(const KMatrix& m, const KVec& v) {
    check_shape(m.cols == static_cast<int>(v.size()), "matrix-vector shape mismatch");
    KVec out(m.rows, Scalar::zero(m.field));
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) out[r] = out[r] + m.at(r, c) * v[c];
    return out;
}

KMatrix operator+(const KMatrix& x, const KMatrix& y) {
    check_shape(x.rows == y.rows && x.cols == y.cols && x.field == y.field, "matrix sum shape mismatch");
    KMatrix out = x;
    for (size_t n = 0; n < out.a.size(); ++n) out.a[n] = out.a[n] + y.a[n];
    return out;
}

KMatrix operator-(const KMatrix& x, const KMatrix& y) {
    check_shape(x.rows == y.rows && x.cols == y.cols && x.field == y.field, "matrix difference shape mismatch");
    KMatrix out = x;
    for (size_t n = 0; n < out.a.size(); ++n) out.a[n] = out.a[n] - y.a[n];
    return out;
}

KMatrix operator*(const KMatrix& x, double t) {
    KMatrix out = x;
    for (auto& s : out.a) s = s * t;
    return out;
}

KMatrix conj_transpose(const KMatrix& m) {
    KMatrix out(m.field, m.cols, m.rows);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) out.at(c, r) = conj(m.at(r, c));
    return out;
}

KMatrix lie_bracket(const KMatrix& x, const KMatrix& y) {
    check_shape(x.square() && y.square() && x.rows == y.rows && x.field == y.field,
                "lie_bracket needs square matrices of equal shape");
    return x * y - y * x;
}

double frobenius_norm(const KMatrix& m) {
    double acc = 0;
    for (const auto& s : m.a) acc += abs2(s);
    return std::sqrt(acc);
}

double operator_norm(const KMatrix& m) {
    if (frobenius_norm(m) == 0.0) return 0.0;
    const KMatrix mh = conj_transpose(m);
    KVec v(m.cols, Scalar::zero(m.field));
    for (int n = 0; n < m.cols; ++n) v[n] = Scalar(m.field, 1.0 + 0.013 * n, 0);
    v = scale(v, 1.0 / norm(v));
    double last = 0;
    for (int it = 0; it < 10000; ++it) {
        const KVec mv = m * v;
        const double s = norm(mv);
        if (s == 0.0) return 0.0;
        KVec w = mh * mv;
        const double wn = norm(w);
        if (wn == 0.0) return s;
        v = scale(w, 1.0 / wn);
        if (std::abs(s - last) <= 1e-14 * s) return s;
        last = s;
    }
    return last;
}

KMatrix inverse(const KMatrix& m) {
    check_shape(m.square(), "inverse of non-square matrix");
    const int n = m.rows;
    const double scale0 = std::max(max_abs_entry(m), 1e-300);
    KMatrix aug(m.field, n, 2 * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, n + r) = Scalar::one(m.field);
    }
    for (int col = 0; col < n; ++col) {
        int p = col;
        double best = abs(aug.at(col, col));
        for (int r = col + 1; r < n; ++r) {
            const double v = abs(aug.at(r, col));
            if (v > best) { best = v; p = r; }
        }
        if (best <= 1e-14 * scale0) throw validation_error("matrix is singular (inverse)");
        if (p != col)
            for (int c = 0; c < 2 * n; ++c) std::swap(aug.at(p, c), aug.at(col, c));
        const Scalar pinv = inverse(aug.at(col, col));
        for (int c = 0; c < 2 * n; ++c) aug.at(col, c) = pinv * aug.at(col, c);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const Scalar f = aug.at(r, col);
            if (abs2(f) == 0.0) continue;
            for (int c = 0; c < 2 * n; ++c) aug.at(r, c) = aug.at(r, c) - f * aug.at(col, c);
        }
    }
    return aug.block(0, n, n, n);
}

KMatrix real_representation(const Scalar& w) {
    const double x = w.c[0], y = w.c[1], z = w.c[2], t = w.c[3];
    auto re = [](double v) { return Scalar(Field::Real, v); };
    switch (w.field) {
        case Field::Real: {
            KMatrix m(Field::Real, 1, 1);
            m.at(0, 0) = re(x);
            return m;
        }
        case Field::Complex: {
            KMatrix m(Field::Real, 2, 2);
            m.at(0, 0) = re(x); m.at(0, 1) = re(-y);
            m.at(1, 0) = re(y); m.at(1, 1) = re(x);
            return m;
        }
        case Field::Quaternion: {
            KMatrix m(Field::Real, 4, 4);
            const double rows[4][4] = {{x, -y, -z, -t}, {y, x, -t, z}, {z, t, x, -y}, {t, -z, y, x}};
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) m.at(r, c) = re(rows[r][c]);
            return m;
        }
    }
    throw validation_error("bad field tag");
}

// --- complex embedding ---

CMat complex_embedding(const KMatrix& m) {
    using C = std::complex<double>;
    if (m.field != Field::Quaternion) {
        CMat out(m.rows, m.cols);
        for (int r = 0; r < m.rows; ++r)
            for (int c = 0; c < m.cols; ++c) out(r, c) = C(m.at(r, c).c[0], m.at(r, c).c[1]);
        return out;
    }
    CMat out(2 * m.rows, 2 * m.cols);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) {
            const Scalar& q = m.at(r, c);
            const C z(q.c[0], q.c[1]), w(q.c[2], q.c[3]);
            out(2 * r, 2 * c) = z;
            out(2 * r, 2 * c + 1) = w;
            out(2 * r + 1, 2 * c) = -std::conj(w);
            out(2 * r + 1, 2 * c + 1) = std::conj(z);
        }
    return out;
}

KMatrix from_complex_embedding(const CMat& m, Field f, double tolerance) {
    if (f != Field::Quaternion) {
        KMatrix out(f, static_cast<int>(m.rows()), static_cast<int>(m.cols()));
        double residual = 0;
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) {
                if (f == Field::Real) residual = std::max(residual, std::abs(m(r, c).imag()));
                out.at(r, c) = (f == Field::Real) ? Scalar(f, m(r, c).real())
                                                  : Scalar(f, m(r, c).real(), m(r, c).imag());
            }
        if (f == Field::Real && residual > tolerance * std::max(1.0, m.norm()))
            throw numeric_error("complex matrix is not real");
        return out;
    }
    if (m.rows() % 2 != 0 || m.cols() % 2 != 0)
        throw validation_error("embedded quaternionic matrix must have even size");
    const int rows = static_cast<int>(m.rows()) / 2, cols = static_cast<int>(m.cols()) / 2;
    KMatrix out(Field::Quaternion, rows, cols);
    double res2 = 0;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const auto z = m(2 * r, 2 * c), w = m(2 * r, 2 * c + 1);
            res2 += std::norm(m(2 * r + 1, 2 * c) + std::conj(w));
            res2 += std::norm(m(2 * r + 1, 2 * c + 1) - std::conj(z));
            out.at(r, c) = Scalar(Field::Quaternion, z.real(), z.imag(), w.real(), w.imag());
        }
    if (std::sqrt(res2) > tolerance * std::max(1.0, m.norm()))
        throw numeric_error("matrix does not carry the quaternionic structure");
    return out;
}

double det_abs(const KMatrix& m) {
    check_shape(m.square(), "det of non-square matrix");
    return std::abs(complex_embedding(m).determinant());
}

// --- sigma spectrum ---

SigmaSpectrum sigma_spectrum(const KMatrix& m) {
    check_shape(m.square(), "sigma_spectrum needs a square matrix");
    const CMat e = complex_embedding(m);
    Eigen::ComplexEigenSolver<CMat> solver(e, false);
    if (solver.info() != Eigen::Success) throw numeric_error("eigenvalue computation failed");
    const auto& ev = solver.eigenvalues();
    const int n = static_cast<int>(ev.size());

    double maxmod = 0, minmod = 1e300;
    for (int i = 0; i < n; ++i) {
        maxmod = std::max(maxmod, std::abs(ev(i)));
        minmod = std::min(minmod, std::abs(ev(i)));
    }
    if (maxmod == 0.0 || minmod <= 1e-13 * maxmod)
        throw validation_error("sigma_spectrum: matrix is singular");

    SigmaSpectrum out;
    if (m.field != Field::Quaternion) {
        for (int i = 0; i < n; ++i) out.sigmas.push_back(std::abs(ev(i)));
    } else {
        // Conjugate pairs, greedy nearest match; each pair is one sigma.
        std::vector<bool> used(n, false);
        for (int i = 0; i < n; ++i) {
            if (used[i]) continue;
            used[i] = true;
            const auto target = std::conj(ev(i));
            int best = -1;
            double bestmiss = 1e300;
            for (int l = 0; l < n; ++l) {
                if (used[l]) continue;
                const double miss = std::abs(ev(l) - target);
                if (miss < bestmiss) { bestmiss = miss; best = l; }
            }
            if (best < 0) throw numeric_error("spectral pairing failed: odd count");
            const double rel = bestmiss / std::max(std::abs(ev(i)), 1e-300);
            if (rel > tol::pairing_rel)
                throw numeric_error("spectral pairing failed: conjugate mismatch " + std::to_string(rel));
            used[best] = true;
            out.pairing_residual = std::max(out.pairing_residual, rel);
            out.sigmas.push_back(std::sqrt(std::abs(ev(i)) * std::abs(ev(best))));
        }
    }

    // Scale to the det-modulus-one representative.
    double logd = 0;
    for (int i = 0; i < n; ++i) logd += std::log(std::abs(ev(i)));
    const double factor = std::exp(-logd / n);
    for (auto& s : out.sigmas) s *= factor;
    out.normalization = factor;
    std::sort(out.sigmas.begin(), out.sigmas.end());
    return out;
}

// --- KAK decomposition ---

namespace {

using CVec = Eigen::VectorXcd;

// Antilinear structure map v -> J conj(v), J = blockdiag([[0,-1],[1,0]]).
CVec jmap(const CVec& v) {
    CVec out(v.size());
    for (int b = 0; 2 * b < v.size(); ++b) {
        out(2 * b) = -std::conj(v(2 * b + 1));
        out(2 * b + 1) = std::conj(v(2 * b));
    }
    return out;
}

void project_out(CVec& v, const std::vector<CVec>& basis) {
    for (const auto& b : basis) v -= b * b.dot(v);
}

KakFactors kak_quaternionic(const KMatrix& m) {
    const CMat x = complex_embedding(m);
    Eigen::JacobiSVD<CMat> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const int n2 = static_cast<int>(s.size());
    if (s(n2 - 1) <= 1e-13 * s(0)) throw validation_error("kak_decompose: matrix is singular");

    // Singular values of an embedded matrix occur in equal pairs; group the
    // degenerate runs so the j-adapted basis can be built inside each run.
    std::vector<std::pair<int, int>> runs;
    int lo = 0;
    for (int i = 1; i <= n2; ++i) {
        if (i == n2 || s(lo) - s(i) > tol::kak_pair_rel * s(0)) {
            runs.emplace_back(lo, i);
            lo = i;
        }
    }
    CMat vt(n2, n2);
    for (const auto& [a0, b0] : runs) {
        const int size = b0 - a0;
        if (size % 2 != 0) throw numeric_error("kak_decompose: singular values failed to pair");
        std::vector<CVec> chosen;
        for (int t = 0; t < size / 2; ++t) {
            // Largest residual of the run's columns after removing what is taken.
            CVec u;
            double bestn = -1;
            for (int c = a0; c < b0; ++c) {
                CVec cand = svd.matrixV().col(c);
                project_out(cand, chosen);
                const double nn = cand.norm();
                if (nn > bestn) { bestn = nn; u = cand; }
            }
            if (bestn < 1e-8) throw numeric_error("kak_decompose: degenerate singular subspace");
            u /= u.norm();
            CVec ju = jmap(u);
            project_out(ju, chosen);
            ju -= u * u.dot(ju);
            if (ju.norm() < 1e-8) throw numeric_error("kak_decompose: j-symmetric completion failed");
            ju /= ju.norm();
            chosen.push_back(u);
            chosen.push_back(ju);
        }
        for (int c = 0; c < size; ++c) vt.col(a0 + c) = chosen[c];
    }

    CMat ut(n2, n2);
    std::vector<double> st(n2);
    for (int c = 0; c < n2; ++c) {
        CVec col = x * vt.col(c);
        st[c] = col.norm();
        if (st[c] <= 0) throw numeric_error("kak_decompose: zero singular direction");
        ut.col(c) = col / st[c];
    }

    KakFactors out;
    out.k1 = from_complex_embedding(ut, Field::Quaternion);
    out.k2 = from_complex_embedding(CMat(vt.adjoint()), Field::Quaternion);
    for (int i = 0; 2 * i < n2; ++i) out.a.push_back(std::sqrt(s(2 * i) * s(2 * i + 1)));
    return out;
}

}  // namespace

KakFactors kak_decompose(const KMatrix& m) {
    check_shape(m.square(), "kak_decompose needs a square matrix");
    if (m.field == Field::Quaternion) return kak_quaternionic(m);

    KakFactors out;
    if (m.field == Field::Real) {
        Eigen::MatrixXd x(m.rows, m.cols);
        for (int r = 0; r < m.rows; ++r)
            for (int c = 0; c < m.cols; ++c) x(r, c) = m.at(r, c).c[0];
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        if (s(s.size() - 1) <= 1e-13 * s(0)) throw validation_error("kak_decompose: matrix is singular");
        out.k1 = from_complex_embedding(svd.matrixU().cast<std::complex<double>>(), Field::Real);
        out.k2 = from_complex_embedding(
            Eigen::MatrixXd(svd.matrixV().transpose()).cast<std::complex<double>>(), Field::Real);
        out.a.assign(s.data(), s.data() + s.size());
        return out;
    }
    const CMat x = complex_embedding(m);
    Eigen::JacobiSVD<CMat> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) <= 1e-13 * s(0)) throw validation_error("kak_decompose: matrix is singular");
    out.k1 = from_complex_embedding(svd.matrixU(), Field::Complex);
    out.k2 = from_complex_embedding(CMat(svd.matrixV().adjoint()), Field::Complex);
    out.a.assign(s.data(), s.data() + s.size());
    return out;
}

// --- Hermitian congruence normalization ---

KMatrix hermitian_congruence_normalize(const KMatrix& A) {
    check_shape(A.square(), "hermitian_congruence_normalize needs a square matrix");
    const int n = A.rows;
    const double scale0 = std::max(frobenius_norm(A), 1e-300);
    if (frobenius_norm(A - conj_transpose(A)) > 1e-8 * scale0)
        throw validation_error("matrix is not K-Hermitian");

    double maxdiag = 0;
    for (int i = 0; i < n; ++i) maxdiag = std::max(maxdiag, std::abs(A.at(i, i).c[0]));
    maxdiag = std::max(maxdiag, 1e-300);

    // A = L conj(L)^t over K; pivots must stay positive.
    KMatrix L(A.field, n, n);
    for (int j = 0; j < n; ++j) {
        double dia = A.at(j, j).c[0];
        for (int k = 0; k < j; ++k) dia -= abs2(L.at(j, k));
        if (dia <= tol::cholesky_pivot * maxdiag)
            throw validation_error("matrix is not positive definite (pivot " + std::to_string(dia) + ")");
        const double ljj = std::sqrt(dia);
        L.at(j, j) = Scalar(A.field, ljj);
        for (int i = j + 1; i < n; ++i) {
            Scalar acc = A.at(i, j);
            for (int k = 0; k < j; ++k) acc = acc - L.at(i, k) * conj(L.at(j, k));
            L.at(i, j) = acc * (1.0 / ljj);
        }
    }
    return inverse(conj_transpose(L));
}

}  // namespace kproj

#include "spin7/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace spin7 {

Mat::Mat(std::initializer_list<std::initializer_list<Scalar>> rows) {
    r_ = static_cast<int>(rows.size());
    c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
    a_.reserve(static_cast<size_t>(r_) * c_);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != c_) throw std::invalid_argument("ragged matrix literal");
        for (const auto& x : row) a_.push_back(x);
    }
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::column(const std::vector<Scalar>& v) {
    Mat m(static_cast<int>(v.size()), 1);
    for (size_t i = 0; i < v.size(); ++i) m(static_cast<int>(i), 0) = v[i];
    return m;
}

Mat Mat::transpose() const {
    Mat t(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Mat Mat::adjoint() const {
    Mat t(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j).conj();
    return t;
}

Mat Mat::conj() const {
    Mat t = *this;
    for (auto& x : t.a_) x = x.conj();
    return t;
}

Mat Mat::block(int i0, int j0, int nr, int nc) const {
    Mat b(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
}

void Mat::set_block(int i0, int j0, const Mat& b) {
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
}

std::vector<Scalar> Mat::col(int j) const {
    std::vector<Scalar> v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

Mat Mat::to_float() const {
    Mat t = *this;
    for (auto& x : t.a_) x = x.to_float();
    return t;
}

bool Mat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Scalar& x) { return x.is_zero(); });
}

bool Mat::is_exact() const {
    return std::all_of(a_.begin(), a_.end(), [](const Scalar& x) { return x.is_exact(); });
}

bool Mat::is_rational() const {
    return std::all_of(a_.begin(), a_.end(), [](const Scalar& x) { return x.is_rational(); });
}

Scalar Mat::trace() const {
    Scalar t = 0;
    for (int i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
}

Mat& Mat::operator+=(const Mat& o) {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix size mismatch in +");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

Mat& Mat::operator-=(const Mat& o) {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix size mismatch in -");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

Mat& Mat::operator*=(const Scalar& s) {
    for (auto& x : a_) x *= s;
    return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix size mismatch in *");
    Mat m(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i) {
        for (int k = 0; k < a.c_; ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < b.c_; ++j) {
                if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
            }
        }
    }
    return m;
}

bool operator==(const Mat& a, const Mat& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) return false;
    for (size_t k = 0; k < a.a_.size(); ++k) {
        if (a.a_[k] != b.a_[k]) return false;
    }
    return true;
}

std::vector<Scalar> mat_vec(const Mat& a, const std::vector<Scalar>& v) {
    std::vector<Scalar> out(a.rows());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            if (!a(i, j).is_zero() && !v[j].is_zero()) out[i] += a(i, j) * v[j];
        }
    }
    return out;
}

// Pivot choice: first nonzero entry in exact mode, largest modulus otherwise.
static int find_pivot(const Mat& m, int col, int from) {
    int best = -1;
    double best_abs = 0.0;
    for (int i = from; i < m.rows(); ++i) {
        const Scalar& x = m(i, col);
        if (x.is_zero()) continue;
        if (x.is_exact()) return i;
        double a = std::abs(x.to_complex());
        if (a > best_abs) {
            best_abs = a;
            best = i;
        }
    }
    return best;
}

Echelon rref(const Mat& a) {
    Echelon e{a, {}};
    Mat& m = e.m;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = find_pivot(m, col, row);
        if (p < 0) continue;
        if (p != row) {
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        }
        Scalar inv = m(row, col).inv();
        for (int j = col; j < m.cols(); ++j) {
            if (!m(row, j).is_zero()) m(row, j) *= inv;
        }
        m(row, col) = 1;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            Scalar f = m(i, col);
            for (int j = col; j < m.cols(); ++j) {
                if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
            }
            m(i, col) = 0;
        }
        e.pivots.push_back(col);
        ++row;
    }
    return e;
}

int rank(const Mat& a) { return rref(a).rank(); }

Mat nullspace(const Mat& a) {
    Echelon e = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (int p : e.pivots) is_pivot[p] = true;
    const int n_free = a.cols() - e.rank();
    Mat k(a.cols(), n_free);
    int f = 0;
    for (int j = 0; j < a.cols(); ++j) {
        if (is_pivot[j]) continue;
        k(j, f) = 1;
        for (int r = 0; r < e.rank(); ++r) k(e.pivots[r], f) = -e.m(r, j);
        ++f;
    }
    return k;
}

Mat column_basis(const Mat& a) {
    Echelon e = rref(a);
    Mat b(a.rows(), e.rank());
    for (int k = 0; k < e.rank(); ++k) {
        for (int i = 0; i < a.rows(); ++i) b(i, k) = a(i, e.pivots[k]);
    }
    return b;
}

std::optional<Mat> solve_any(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
    Mat aug(a.rows(), a.cols() + b.cols());
    aug.set_block(0, 0, a);
    aug.set_block(0, a.cols(), b);
    Echelon e = rref(aug);
    for (int p : e.pivots) {
        if (p >= a.cols()) return std::nullopt;
    }
    Mat x(a.cols(), b.cols());
    for (int r = 0; r < e.rank(); ++r) {
        for (int j = 0; j < b.cols(); ++j) x(e.pivots[r], j) = e.m(r, a.cols() + j);
    }
    return x;
}

Mat solve(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
    Mat aug(a.rows(), a.cols() + b.cols());
    aug.set_block(0, 0, a);
    aug.set_block(0, a.cols(), b);
    Echelon e = rref(aug);
    int rank_a = 0;
    for (int p : e.pivots) {
        if (p >= a.cols()) throw SingularMatrix("solve: inconsistent system");
        ++rank_a;
    }
    if (rank_a < a.cols()) throw SingularMatrix("solve: solution not unique");
    Mat x(a.cols(), b.cols());
    for (int r = 0; r < rank_a; ++r) {
        for (int j = 0; j < b.cols(); ++j) x(e.pivots[r], j) = e.m(r, a.cols() + j);
    }
    return x;
}

Mat inverse(const Mat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
    return solve(a, Mat::identity(a.rows()));
}

Scalar det(const Mat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("det of non-square matrix");
    Mat m = a;
    const int n = m.rows();
    Scalar d = 1;
    for (int col = 0; col < n; ++col) {
        int p = find_pivot(m, col, col);
        if (p < 0) return Scalar(0);
        if (p != col) {
            for (int j = 0; j < n; ++j) std::swap(m(p, j), m(col, j));
            d = -d;
        }
        d *= m(col, col);
        Scalar inv = m(col, col).inv();
        for (int i = col + 1; i < n; ++i) {
            if (m(i, col).is_zero()) continue;
            Scalar f = m(i, col) * inv;
            for (int j = col; j < n; ++j) {
                if (!m(col, j).is_zero()) m(i, j) -= f * m(col, j);
            }
        }
    }
    return d;
}

SPoly charpoly(const Mat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("charpoly of non-square matrix");
    const int n = a.rows();
    Mat h = a;
    // Similarity reduction to upper Hessenberg form.
    for (int m = 0; m + 2 < n; ++m) {
        int p = find_pivot(h, m, m + 1);
        if (p < 0) continue;
        if (p != m + 1) {
            for (int j = 0; j < n; ++j) std::swap(h(p, j), h(m + 1, j));
            for (int i = 0; i < n; ++i) std::swap(h(i, p), h(i, m + 1));
        }
        Scalar inv = h(m + 1, m).inv();
        for (int i = m + 2; i < n; ++i) {
            if (h(i, m).is_zero()) continue;
            Scalar u = h(i, m) * inv;
            for (int j = 0; j < n; ++j) {
                if (!h(m + 1, j).is_zero()) h(i, j) -= u * h(m + 1, j);
            }
            for (int r = 0; r < n; ++r) {
                if (!h(r, i).is_zero()) h(r, m + 1) += u * h(r, i);
            }
        }
    }
    // p_k = det(x I - H[0..k, 0..k]).
    std::vector<SPoly> p(n + 1);
    p[0] = {Scalar(1)};
    for (int k = 1; k <= n; ++k) {
        const int m = k - 1;
        SPoly next(k + 1);
        for (int e = 0; e < k; ++e) {
            next[e + 1] += p[k - 1][e];
            next[e] -= h(m, m) * p[k - 1][e];
        }
        Scalar prod = 1;
        for (int i = m - 1; i >= 0; --i) {
            prod *= h(i + 1, i);
            if (prod.is_zero()) break;
            Scalar f = h(i, m) * prod;
            if (f.is_zero()) continue;
            for (size_t e = 0; e < p[i].size(); ++e) next[e] -= f * p[i][e];
        }
        p[k] = std::move(next);
    }
    return p[n];
}

// ------------------------------------------------------------ QPoly

void trim(QPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

mpq_class eval(const QPoly& p, const mpq_class& x) {
    mpq_class v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

QPoly derivative(const QPoly& p) {
    QPoly d;
    for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
    trim(d);
    return d;
}

static void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
    if (b.empty()) throw std::invalid_argument("polynomial division by zero");
    r = a;
    trim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
    while (!r.empty() && r.size() >= b.size()) {
        const size_t shift = r.size() - b.size();
        mpq_class f = r.back() / b.back();
        q[shift] = f;
        for (size_t k = 0; k < b.size(); ++k) r[shift + k] -= f * b[k];
        r.pop_back();
        trim(r);
    }
    trim(q);
}

QPoly poly_rem(const QPoly& a, const QPoly& b) {
    QPoly q, r;
    divmod(a, b, q, r);
    return r;
}

QPoly poly_div(const QPoly& a, const QPoly& b) {
    QPoly q, r;
    divmod(a, b, q, r);
    return q;
}

QPoly poly_gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        mpq_class lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

QPoly square_free(const QPoly& p) {
    QPoly g = poly_gcd(p, derivative(p));
    if (degree(g) <= 0) return p;
    return poly_div(p, g);
}

std::optional<QPoly> to_qpoly(const SPoly& p) {
    QPoly q;
    for (const auto& c : p) {
        if (!c.is_rational()) return std::nullopt;
        q.push_back(c.to_rational());
    }
    trim(q);
    return q;
}

std::vector<QPoly> sturm_chain(const QPoly& p) {
    std::vector<QPoly> chain{p, derivative(p)};
    while (!chain.back().empty() && degree(chain.back()) > 0) {
        QPoly r = poly_rem(chain[chain.size() - 2], chain.back());
        for (auto& c : r) c = -c;
        if (r.empty()) break;
        chain.push_back(std::move(r));
    }
    return chain;
}

static int sign_variations(const std::vector<QPoly>& chain, const mpq_class& x) {
    int count = 0, last = 0;
    for (const auto& q : chain) {
        int s = sgn(eval(q, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

int count_roots(const std::vector<QPoly>& chain, const mpq_class& lo, const mpq_class& hi) {
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

mpq_class root_bound(const QPoly& p) {
    mpq_class m = 0;
    for (size_t k = 0; k + 1 < p.size(); ++k) {
        mpq_class a = abs(p[k] / p.back());
        if (a > m) m = a;
    }
    return m + 1;
}

std::optional<RootEnclosure> largest_real_root(const QPoly& p_in, const mpq_class& tol) {
    QPoly p = p_in;
    trim(p);
    if (p.empty()) throw std::invalid_argument("largest root of the zero polynomial");
    if (degree(p) == 0) return std::nullopt;
    QPoly sf = square_free(p);
    // Integer primitive form: rational roots are m / lead with integer m.
    mpz_class den = 1;
    for (const auto& c : sf) den = lcm(den, c.get_den());
    std::vector<mpz_class> ints;
    for (const auto& c : sf) ints.push_back(mpz_class(c * den));
    const mpz_class lead = abs(ints.back());

    auto chain = sturm_chain(sf);
    mpq_class bound = root_bound(sf);
    mpq_class lo = -bound, hi = bound;
    if (count_roots(chain, lo, hi) == 0) return std::nullopt;
    const mpq_class half = mpq_class(1, 2);
    auto bisect = [&]() {
        mpq_class mid = (lo + hi) * half;
        if (count_roots(chain, mid, hi) >= 1) lo = mid; else hi = mid;
    };
    const mpq_class step = mpq_class(1) / mpq_class(lead);
    while (count_roots(chain, lo, hi) > 1 || hi - lo >= step) bisect();
    // (lo, hi] holds exactly one root and at most one candidate m/lead.
    mpz_class m;
    mpq_class scaled = hi * mpq_class(lead);
    mpz_fdiv_q(m.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    mpq_class cand(m, lead);
    cand.canonicalize();
    if (cand > lo && sgn(eval(sf, cand)) == 0) return RootEnclosure{cand, cand, true};
    while (hi - lo > tol) bisect();
    return RootEnclosure{lo, hi, false};
}

RootSigns real_root_signs(const SPoly& p) {
    RootSigns rs;
    size_t first = 0;
    while (first < p.size() && p[first].is_zero()) ++first;
    rs.zero = static_cast<int>(first);
    auto variations = [&](bool negate_odd) {
        int count = 0, last = 0;
        for (size_t k = first; k < p.size(); ++k) {
            if (p[k].is_zero()) continue;
            int s = p[k].sign();
            if (negate_odd && (k % 2 == 1)) s = -s;
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    };
    rs.positive = variations(false);
    rs.negative = variations(true);
    return rs;
}

}  // namespace spin7

#include "vpl/semilinear.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace vpl {

// ---------------------------------------------------------------- UpSet

UpSet UpSet::point(long n) {
    UpSet s;
    s.t = n + 1;
    s.p = 1;
    s.bits.assign(static_cast<std::size_t>(n + 2), 0);
    s.bits[static_cast<std::size_t>(n)] = 1;
    s.canonicalize();
    return s;
}

UpSet UpSet::progression(long base, long period) {
    if (period <= 0) return point(base);
    UpSet s;
    s.t = base;
    s.p = period;
    s.bits.assign(static_cast<std::size_t>(base + period), 0);
    s.bits[static_cast<std::size_t>(base)] = 1;
    s.canonicalize();
    return s;
}

bool UpSet::contains(long x) const {
    if (x < 0) return false;
    if (x < t + p) return bits[static_cast<std::size_t>(x)] != 0;
    return bits[static_cast<std::size_t>(t + (x - t) % p)] != 0;
}

bool UpSet::is_empty() const {
    return std::none_of(bits.begin(), bits.end(), [](char c) { return c != 0; });
}

std::optional<long> UpSet::min() const {
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) return static_cast<long>(i);
    return std::nullopt;
}

std::optional<long> UpSet::single() const {
    std::optional<long> found;
    for (long i = 0; i < t; ++i)
        if (bits[static_cast<std::size_t>(i)]) {
            if (found) return std::nullopt;
            found = i;
        }
    for (long i = t; i < t + p; ++i)
        if (bits[static_cast<std::size_t>(i)]) return std::nullopt;
    return found;
}

std::vector<long> UpSet::elements_upto(long n) const {
    std::vector<long> out;
    for (long x = 0; x <= n; ++x)
        if (contains(x)) out.push_back(x);
    return out;
}

void UpSet::canonicalize() {
    // Smallest period of the tail.
    long best = p;
    for (long d = 1; d < p; ++d) {
        if (p % d) continue;
        bool ok = true;
        for (long i = 0; i < p && ok; ++i)
            if (bits[static_cast<std::size_t>(t + i)] != bits[static_cast<std::size_t>(t + (i % d))]) ok = false;
        if (ok) {
            best = d;
            break;
        }
    }
    p = best;
    while (t > 0 && bits[static_cast<std::size_t>(t - 1)] == bits[static_cast<std::size_t>(t - 1 + p)]) --t;
    bits.resize(static_cast<std::size_t>(t + p));
}

UpSet UpSet::unite(const UpSet& o) const {
    UpSet r;
    r.p = std::lcm(p, o.p);
    r.t = std::max(t, o.t);
    r.bits.assign(static_cast<std::size_t>(r.t + r.p), 0);
    for (long x = 0; x < r.t + r.p; ++x) r.bits[static_cast<std::size_t>(x)] = contains(x) || o.contains(x);
    r.canonicalize();
    return r;
}

UpSet UpSet::add(const UpSet& o) const {
    if (is_empty() || o.is_empty()) return empty();
    UpSet r;
    r.p = std::lcm(p, o.p);
    r.t = t + o.t + r.p;
    long n = r.t + r.p;
    std::vector<long> mine;
    for (long x = 0; x < n; ++x)
        if (contains(x)) mine.push_back(x);
    r.bits.assign(static_cast<std::size_t>(n), 0);
    for (long x = 0; x < n; ++x)
        for (long y : mine) {
            if (y > x) break;
            if (o.contains(x - y)) {
                r.bits[static_cast<std::size_t>(x)] = 1;
                break;
            }
        }
    r.canonicalize();
    return r;
}

UpSet UpSet::star() const {
    std::vector<long> gens;
    for (long x = 1; x < t + 2 * p; ++x)
        if (contains(x)) gens.push_back(x);
    if (gens.empty()) return zero();
    long g = 0;
    for (long x : gens) g = std::gcd(g, x);
    long mx = gens.back();
    long bound = mx * mx + t + 2 * p + 1;
    std::vector<long> all;
    for (long x = 1; x < bound; ++x)
        if (contains(x)) all.push_back(x);
    std::vector<char> in(static_cast<std::size_t>(bound), 0);
    in[0] = 1;
    for (long x = 1; x < bound; ++x)
        for (long y : all) {
            if (y > x) break;
            if (in[static_cast<std::size_t>(x - y)]) {
                in[static_cast<std::size_t>(x)] = 1;
                break;
            }
        }
    UpSet r;
    r.t = bound;
    r.p = g;
    r.bits.assign(static_cast<std::size_t>(bound + g), 0);
    for (long x = 0; x < bound; ++x) r.bits[static_cast<std::size_t>(x)] = in[static_cast<std::size_t>(x)];
    r.bits[static_cast<std::size_t>(bound + ((g - bound % g) % g))] = 1;
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------- linear sets

namespace {

bool leq(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
}

Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec plus(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

long norm(const Vec& v) { return std::accumulate(v.begin(), v.end(), 0L); }

// Is v a nonnegative combination of periods[i..]?
bool in_monoid(const Vec& v, const std::vector<Vec>& periods, std::size_t i,
               std::map<std::pair<Vec, std::size_t>, bool>& memo) {
    if (is_zero(v)) return true;
    if (i == periods.size()) return false;
    auto key = std::make_pair(v, i);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool ok = false;
    Vec cur = v;
    while (true) {
        if (in_monoid(cur, periods, i + 1, memo)) {
            ok = true;
            break;
        }
        if (!leq(periods[i], cur)) break;
        cur = sub(cur, periods[i]);
    }
    memo.emplace(std::move(key), ok);
    return ok;
}

// Two-dimensional case without allocation.
bool in_monoid2(long x, long y, const std::vector<Vec>& periods, std::size_t i) {
    if (x == 0 && y == 0) return true;
    if (i == periods.size()) return false;
    long px = periods[i][0], py = periods[i][1];
    if (px == 0 && py == 0) return in_monoid2(x, y, periods, i + 1);
    while (true) {
        if (in_monoid2(x, y, periods, i + 1)) return true;
        if (px > x || py > y) return false;
        x -= px;
        y -= py;
    }
}

bool in_monoid(const Vec& v, const std::vector<Vec>& periods) {
    for (long x : v)
        if (x < 0) return false;
    if (v.size() == 2 && periods.size() <= 6) return in_monoid2(v[0], v[1], periods, 0);
    std::map<std::pair<Vec, std::size_t>, bool> memo;
    return in_monoid(v, periods, 0, memo);
}

}  // namespace

bool LinearSet::operator<(const LinearSet& o) const {
    long a = norm(base), b = norm(o.base);
    if (a != b) return a < b;
    if (base != o.base) return base < o.base;
    return periods < o.periods;
}

bool LinearSet::contains(const Vec& v) const {
    if (!leq(base, v)) return false;
    return in_monoid(sub(v, base), periods);
}

// ---------------------------------------------------------------- SemilinearSet

SemilinearSet SemilinearSet::zero(int dim) { return point(Vec(static_cast<std::size_t>(dim), 0)); }

SemilinearSet SemilinearSet::point(const Vec& v) {
    SemilinearSet s(static_cast<int>(v.size()));
    s.comps_.push_back({v, {}});
    return s;
}

SemilinearSet SemilinearSet::linear(const Vec& base, const std::vector<Vec>& periods) {
    SemilinearSet s(static_cast<int>(base.size()));
    s.comps_.push_back({base, periods});
    s.normalize();
    return s;
}

SemilinearSet SemilinearSet::from_up(const UpSet& u, int axis, int dim) {
    SemilinearSet s(dim);
    auto at = [&](long x) {
        Vec v(static_cast<std::size_t>(dim), 0);
        v[static_cast<std::size_t>(axis)] = x;
        return v;
    };
    for (long x = 0; x < u.t; ++x)
        if (u.contains(x)) s.comps_.push_back({at(x), {}});
    for (long x = u.t; x < u.t + u.p; ++x)
        if (u.contains(x)) s.comps_.push_back({at(x), {at(u.p)}});
    s.normalize();
    return s;
}

void SemilinearSet::add_component(LinearSet c) {
    if (c.base.size() != static_cast<std::size_t>(dim_)) throw InvalidInput("semilinear: dimension mismatch");
    comps_.push_back(std::move(c));
}

void SemilinearSet::normalize() {
    for (auto& c : comps_) {
        std::vector<Vec> ps;
        for (auto& p : c.periods)
            if (!is_zero(p)) ps.push_back(p);
        std::sort(ps.begin(), ps.end(), [](const Vec& a, const Vec& b) {
            long na = norm(a), nb = norm(b);
            return na != nb ? na < nb : a < b;
        });
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        // Drop periods generated by the others (largest first).
        for (std::size_t i = ps.size(); i-- > 0;) {
            std::vector<Vec> rest;
            for (std::size_t j = 0; j < ps.size(); ++j)
                if (j != i) rest.push_back(ps[j]);
            if (in_monoid(ps[i], rest)) ps.erase(ps.begin() + static_cast<long>(i));
        }
        c.periods = std::move(ps);
    }
    std::sort(comps_.begin(), comps_.end());
    comps_.erase(std::unique(comps_.begin(), comps_.end()), comps_.end());
    bool changed = true;
    while (changed) {
        changed = false;
        // (b, P) with (b + q, P + {q}) becomes (b, P + {q}).
        for (std::size_t i = 0; i < comps_.size() && !changed; ++i)
            for (std::size_t j = 0; j < comps_.size() && !changed; ++j) {
                if (i == j) continue;
                const auto& a = comps_[i];
                const auto& b = comps_[j];
                if (b.periods.size() != a.periods.size() + 1 || !leq(a.base, b.base)) continue;
                Vec q = sub(b.base, a.base);
                std::vector<Vec> ext = a.periods;
                ext.push_back(q);
                std::vector<Vec> bs = b.periods;
                std::sort(ext.begin(), ext.end());
                std::sort(bs.begin(), bs.end());
                if (ext != bs) continue;
                comps_[i].periods = b.periods;
                comps_.erase(comps_.begin() + static_cast<long>(j));
                changed = true;
            }
        // Subsumed components, removed in one sweep.
        if (!changed) {
            std::vector<char> gone(comps_.size(), 0);
            for (std::size_t i = 0; i < comps_.size(); ++i)
                for (std::size_t j = 0; j < comps_.size(); ++j) {
                    if (i == j || gone[j]) continue;
                    const auto& a = comps_[i];
                    const auto& b = comps_[j];
                    if (!b.contains(a.base)) continue;
                    bool all = std::all_of(a.periods.begin(), a.periods.end(),
                                           [&](const Vec& p) { return in_monoid(p, b.periods); });
                    if (!all) continue;
                    gone[i] = 1;
                    changed = true;
                    break;
                }
            if (changed) {
                std::vector<LinearSet> kept;
                for (std::size_t i = 0; i < comps_.size(); ++i)
                    if (!gone[i]) kept.push_back(std::move(comps_[i]));
                comps_ = std::move(kept);
            }
        }
        if (changed) {
            for (auto& c : comps_) {
                auto& ps = c.periods;
                std::sort(ps.begin(), ps.end(), [](const Vec& a, const Vec& b) {
                    long na = norm(a), nb = norm(b);
                    return na != nb ? na < nb : a < b;
                });
                for (std::size_t i = ps.size(); i-- > 0;) {
                    std::vector<Vec> rest;
                    for (std::size_t j = 0; j < ps.size(); ++j)
                        if (j != i) rest.push_back(ps[j]);
                    if (in_monoid(ps[i], rest)) ps.erase(ps.begin() + static_cast<long>(i));
                }
            }
            std::sort(comps_.begin(), comps_.end());
            comps_.erase(std::unique(comps_.begin(), comps_.end()), comps_.end());
        }
    }
}

SemilinearSet SemilinearSet::unite(const SemilinearSet& o) const {
    SemilinearSet r = *this;
    for (const auto& c : o.comps_) r.comps_.push_back(c);
    r.normalize();
    return r;
}

SemilinearSet SemilinearSet::add(const SemilinearSet& o) const {
    SemilinearSet r(dim_);
    for (const auto& a : comps_)
        for (const auto& b : o.comps_) {
            LinearSet c{plus(a.base, b.base), a.periods};
            c.periods.insert(c.periods.end(), b.periods.begin(), b.periods.end());
            r.comps_.push_back(std::move(c));
        }
    r.normalize();
    return r;
}

SemilinearSet SemilinearSet::star() const {
    SemilinearSet r = zero(dim_);
    for (const auto& c : comps_) {
        SemilinearSet s(dim_);
        if (is_zero(c.base)) {
            s.comps_.push_back(c);
        } else {
            s.comps_.push_back({Vec(static_cast<std::size_t>(dim_), 0), {}});
            LinearSet l = c;
            l.periods.push_back(c.base);
            s.comps_.push_back(std::move(l));
        }
        s.normalize();
        r = r.add(s);
    }
    return r;
}

SemilinearSet SemilinearSet::shifted(const Vec& v) const {
    SemilinearSet r = *this;
    for (auto& c : r.comps_) c.base = plus(c.base, v);
    r.normalize();
    return r;
}

bool SemilinearSet::contains(const Vec& v) const {
    if (v.size() != static_cast<std::size_t>(dim_)) throw InvalidInput("semilinear: dimension mismatch");
    return std::any_of(comps_.begin(), comps_.end(), [&](const LinearSet& c) { return c.contains(v); });
}

std::vector<Vec> SemilinearSet::members_upto(long n) const {
    std::set<Vec> out;
    for (const auto& c : comps_) {
        if (norm(c.base) > n) continue;
        std::vector<Vec> frontier = {c.base};
        std::set<Vec> seen = {c.base};
        while (!frontier.empty()) {
            Vec v = frontier.back();
            frontier.pop_back();
            out.insert(v);
            for (const auto& p : c.periods) {
                Vec w = plus(v, p);
                if (norm(w) <= n && seen.insert(w).second) frontier.push_back(w);
            }
        }
    }
    return {out.begin(), out.end()};
}

std::optional<Vec> SemilinearSet::min_member() const {
    std::optional<Vec> best;
    for (const auto& c : comps_)
        if (!best || norm(c.base) < norm(*best) || (norm(c.base) == norm(*best) && c.base < *best)) best = c.base;
    return best;
}

std::string SemilinearSet::to_string() const {
    std::ostringstream o;
    auto vec = [&](const Vec& v) {
        o << '(';
        for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
        o << ')';
    };
    if (comps_.empty()) return "{}";
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        if (i) o << " | ";
        vec(comps_[i].base);
        for (const auto& p : comps_[i].periods) {
            o << "+N";
            vec(p);
        }
    }
    return o.str();
}

bool semilinear_member(const SemilinearSet& s, const Vec& v) { return s.contains(v); }

// ---------------------------------------------------------------- Diophantine

DiophantineSolutions diophantine_solve(const std::vector<Vec>& A, const Vec& b, std::size_t budget) {
    // Contejean-Devie completion on the homogenized system [A | -b] (z, t) = 0, t <= 1.
    std::size_t m = A.size();
    if (b.size() != m) throw InvalidInput("diophantine: rhs size mismatch");
    std::size_t n = m ? A[0].size() : 0;
    for (const auto& row : A)
        if (row.size() != n) throw InvalidInput("diophantine: ragged matrix");
    std::size_t N = n + 1;
    auto col = [&](std::size_t j, std::size_t i) { return j < n ? A[i][j] : -b[i]; };
    auto image = [&](const Vec& z) {
        Vec r(m, 0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < N; ++j) r[i] += col(j, i) * z[j];
        return r;
    };
    bool homogeneous = is_zero(b);
    std::vector<Vec> found;
    std::set<Vec> frontier;
    for (std::size_t j = 0; j < N; ++j) {
        if (j == n && homogeneous) continue;
        Vec e(N, 0);
        e[j] = 1;
        frontier.insert(e);
    }
    std::size_t steps = 0;
    while (!frontier.empty()) {
        std::set<Vec> next;
        std::vector<Vec> level_found;
        for (const auto& z : frontier) {
            Vec az = image(z);
            if (is_zero(az)) level_found.push_back(z);
        }
        for (auto& z : level_found) found.push_back(z);
        for (const auto& z : frontier) {
            Vec az = image(z);
            if (is_zero(az)) continue;
            for (std::size_t j = 0; j < N; ++j) {
                if (j == n && (homogeneous || z[n] >= 1)) continue;
                long dot = 0;
                for (std::size_t i = 0; i < m; ++i) dot += az[i] * col(j, i);
                if (dot >= 0) continue;
                Vec y = z;
                ++y[j];
                bool dominated = std::any_of(found.begin(), found.end(), [&](const Vec& f) { return leq(f, y); });
                if (dominated) continue;
                if (++steps > budget) throw BudgetExceeded("diophantine", "more than " + std::to_string(budget) + " candidates");
                next.insert(std::move(y));
            }
        }
        frontier = std::move(next);
    }
    DiophantineSolutions out;
    for (const auto& z : found) {
        Vec x(z.begin(), z.begin() + static_cast<long>(n));
        if (z[n] == 1) out.minimal.push_back(x);
        else out.hilbert.push_back(x);
    }
    if (homogeneous) out.minimal.insert(out.minimal.begin(), Vec(n, 0));
    auto by_norm = [](const Vec& a, const Vec& c) {
        long na = norm(a), nc = norm(c);
        return na != nc ? na < nc : a < c;
    };
    std::sort(out.minimal.begin(), out.minimal.end(), by_norm);
    std::sort(out.hilbert.begin(), out.hilbert.end(), by_norm);
    return out;
}

std::optional<Vec> diophantine_nonneg(const std::vector<Vec>& A, const Vec& b, std::size_t budget) {
    auto s = diophantine_solve(A, b, budget);
    if (is_zero(b)) {
        if (s.hilbert.empty()) return std::nullopt;
        return s.hilbert.front();
    }
    if (s.minimal.empty()) return std::nullopt;
    return s.minimal.front();
}

SemilinearSet semilinear_intersect(const SemilinearSet& a, const SemilinearSet& b) {
    if (a.dim() != b.dim()) throw InvalidInput("semilinear: dimension mismatch");
    auto d = static_cast<std::size_t>(a.dim());
    SemilinearSet out(a.dim());
    for (const auto& x : a.components())
        for (const auto& y : b.components()) {
            std::size_t n1 = x.periods.size(), n2 = y.periods.size();
            std::vector<Vec> A(d, Vec(n1 + n2, 0));
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < n1; ++j) A[i][j] = x.periods[j][i];
                for (std::size_t j = 0; j < n2; ++j) A[i][n1 + j] = -y.periods[j][i];
            }
            Vec rhs = sub(y.base, x.base);
            DiophantineSolutions sol;
            if (n1 + n2 == 0) {
                if (is_zero(rhs)) out.add_component({x.base, {}});
                continue;
            }
            sol = diophantine_solve(A, rhs);
            auto image = [&](const Vec& z) {
                Vec r(d, 0);
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < n1; ++j) r[i] += x.periods[j][i] * z[j];
                return r;
            };
            std::vector<Vec> periods;
            for (const auto& h : sol.hilbert) periods.push_back(image(h));
            for (const auto& z : sol.minimal) out.add_component({plus(x.base, image(z)), periods});
        }
    out.normalize();
    return out;
}

std::optional<Vec> semilinear_intersect_nonempty(const std::vector<SemilinearSet>& sets) {
    if (sets.empty()) throw InvalidInput("semilinear: intersection of no sets");
    SemilinearSet cur = sets[0];
    for (std::size_t i = 1; i < sets.size() && !cur.is_empty(); ++i) cur = semilinear_intersect(cur, sets[i]);
    return cur.min_member();
}

std::optional<Vec> semilinear_has_unequal_coords(const SemilinearSet& s) {
    if (s.dim() != 2) throw InvalidInput("semilinear: has_unequal_coords needs dimension 2");
    std::optional<Vec> best;
    auto consider = [&](const Vec& v) {
        if (!best || norm(v) < norm(*best) || (norm(v) == norm(*best) && v < *best)) best = v;
    };
    for (const auto& c : s.components()) {
        if (c.base[0] != c.base[1]) consider(c.base);
        for (const auto& p : c.periods)
            if (p[0] != p[1]) consider(plus(c.base, p));
    }
    return best;
}

bool semilinear_all_collinear(const SemilinearSet& s) {
    if (s.dim() != 2) throw InvalidInput("semilinear: all_collinear needs dimension 2");
    std::vector<Vec> gens;
    for (const auto& c : s.components()) {
        if (c.base[0] <= 0 || c.base[1] <= 0)
            throw InvalidInput("semilinear: all_collinear needs a subset of N_{>0}^2");
        gens.push_back(c.base);
        for (const auto& p : c.periods) gens.push_back(p);
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (gens[i][0] * gens[j][1] != gens[i][1] * gens[j][0]) return false;
    return true;
}

}  // namespace vpl

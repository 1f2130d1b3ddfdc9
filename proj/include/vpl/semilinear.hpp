#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vpl/errors.hpp"

namespace vpl {

using Vec = std::vector<long>;

// Ultimately periodic subset of N: x is a member iff bits[x] for x < t + p,
// and iff bits[t + (x - t) % p] otherwise. Kept canonical (minimal p, then t).
struct UpSet {
    long t = 0;
    long p = 1;
    std::vector<char> bits = {0};

    static UpSet empty() { return {}; }
    static UpSet zero() { return point(0); }
    static UpSet point(long n);
    static UpSet progression(long base, long period);  // base + N*period

    bool contains(long x) const;
    bool is_empty() const;
    std::optional<long> min() const;
    std::optional<long> single() const;  // the element if exactly one
    std::vector<long> elements_upto(long n) const;

    UpSet unite(const UpSet& o) const;
    UpSet add(const UpSet& o) const;
    UpSet star() const;

    bool operator==(const UpSet& o) const { return t == o.t && p == o.p && bits == o.bits; }
    void canonicalize();
};

struct LinearSet {
    Vec base;
    std::vector<Vec> periods;
    bool operator==(const LinearSet& o) const { return base == o.base && periods == o.periods; }
    bool operator<(const LinearSet& o) const;
    bool contains(const Vec& v) const;
};

// Finite union of linear sets in N^dim.
class SemilinearSet {
public:
    explicit SemilinearSet(int dim = 2) : dim_(dim) {}
    static SemilinearSet empty(int dim) { return SemilinearSet(dim); }
    static SemilinearSet zero(int dim);
    static SemilinearSet point(const Vec& v);
    static SemilinearSet linear(const Vec& base, const std::vector<Vec>& periods);
    // Embeds a 1-D set along one axis.
    static SemilinearSet from_up(const UpSet& s, int axis, int dim);

    int dim() const { return dim_; }
    const std::vector<LinearSet>& components() const { return comps_; }
    bool is_empty() const { return comps_.empty(); }

    SemilinearSet unite(const SemilinearSet& o) const;
    SemilinearSet add(const SemilinearSet& o) const;
    SemilinearSet star() const;
    SemilinearSet shifted(const Vec& v) const;

    void normalize();
    void add_component(LinearSet c);

    bool contains(const Vec& v) const;
    // All members with coordinate sum <= n, sorted.
    std::vector<Vec> members_upto(long n) const;
    std::optional<Vec> min_member() const;  // least coordinate sum, then lexicographic

    bool operator==(const SemilinearSet& o) const { return dim_ == o.dim_ && comps_ == o.comps_; }
    std::string to_string() const;

private:
    int dim_;
    std::vector<LinearSet> comps_;
};

bool semilinear_member(const SemilinearSet& s, const Vec& v);

// Nonnegative solutions of A z = b. Minimal solutions plus a Hilbert basis of A z = 0.
struct DiophantineSolutions {
    std::vector<Vec> minimal;
    std::vector<Vec> hilbert;
};
DiophantineSolutions diophantine_solve(const std::vector<Vec>& A, const Vec& b, std::size_t budget = 200000);
// One minimal nonnegative solution; for b = 0 a minimal nonzero one.
std::optional<Vec> diophantine_nonneg(const std::vector<Vec>& A, const Vec& b, std::size_t budget = 200000);

SemilinearSet semilinear_intersect(const SemilinearSet& a, const SemilinearSet& b);
std::optional<Vec> semilinear_intersect_nonempty(const std::vector<SemilinearSet>& sets);
// A member (x1, x2) with x1 != x2, if any.
std::optional<Vec> semilinear_has_unequal_coords(const SemilinearSet& s);
// Whether all members lie on one ray through the origin. Requires dim 2, no zero
// vector among the bases; throws InvalidInput otherwise.
bool semilinear_all_collinear(const SemilinearSet& s);

}  // namespace vpl

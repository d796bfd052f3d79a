#include "orientcycle/regular.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace oc {

Ratio make_ratio(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    long long g = std::gcd(num, den);
    if (g == 0) g = 1;
    return Ratio{num / g, den / g};
}

BipartitePair BipartitePair::complete(int nl, int nr) {
    BipartitePair p(nl, nr);
    for (int a = 0; a < nl; ++a) p.rows[size_t(a)] = Bitset::full(nr);
    return p;
}

BipartitePair BipartitePair::random(int nl, int nr, double prob, Rng& rng) {
    BipartitePair p(nl, nr);
    for (int a = 0; a < nl; ++a)
        for (int b = 0; b < nr; ++b)
            if (uniform_real(rng) < prob) p.add_edge(a, b);
    return p;
}

long long BipartitePair::edge_count() const {
    long long e = 0;
    for (const Bitset& row : rows) e += row.count();
    return e;
}

long long BipartitePair::edges_between(const Bitset& x, const Bitset& y) const {
    long long e = 0;
    x.for_each([&](int a) { e += rows[size_t(a)].count_and(y); });
    return e;
}

int BipartitePair::right_degree(int b) const {
    int d = 0;
    for (const Bitset& row : rows) d += row.test(b);
    return d;
}

Ratio density(const BipartitePair& p) {
    if (p.left_size == 0 || p.right_size == 0)
        throw std::invalid_argument("density of a pair with an empty side");
    return make_ratio(p.edge_count(), (long long)p.left_size * p.right_size);
}

namespace {

// Deviation test on exact integers: |e(X,Y)/xy - E/ab| >= eps.
bool deviates(long long exy, long long xy, long long eab, long long ab, double eps) {
    long double lhs = std::abs((long double)exy * ab - (long double)eab * xy);
    long double rhs = (long double)eps * ab * xy;
    return lhs >= rhs - 1e-9;
}

bool qualifies(int cnt, double eps, int side) { return double(cnt) > eps * side + 1e-12; }

RegWitness make_witness(const BipartitePair& p, const Bitset& x, const Bitset& y) {
    long long xy = (long long)x.count() * y.count();
    long long ab = (long long)p.left_size * p.right_size;
    return RegWitness{x, y, double(p.edges_between(x, y)) / double(xy),
                      double(p.edge_count()) / double(ab)};
}

}  // namespace

RegularityResult is_eps_regular(const BipartitePair& p, double eps, CheckMode mode, Rng* rng,
                                int samples) {
    RegularityResult res;
    int nl = p.left_size, nr = p.right_size;
    if (nl == 0 || nr == 0) throw std::invalid_argument("regularity of a pair with an empty side");
    long long eab = p.edge_count();
    long long ab = (long long)nl * nr;

    if (mode == CheckMode::exact) {
        if (nl + nr > 24)
            throw std::invalid_argument("exact regularity check is limited to |A|+|B| <= 24");
        std::vector<int> c(size_t(nl));
        for (uint64_t ymask = 1; ymask < (uint64_t(1) << nr); ++ymask) {
            int ycnt = __builtin_popcountll(ymask);
            if (!qualifies(ycnt, eps, nr)) continue;
            Bitset y(nr);
            for (int b = 0; b < nr; ++b)
                if (ymask >> b & 1) y.set(b);
            for (int a = 0; a < nl; ++a) c[size_t(a)] = p.rows[size_t(a)].count_and(y);

            long long exy = 0;
            int xcnt = 0;
            std::vector<char> member(size_t(nl), 0);
            for (uint64_t i = 1; i < (uint64_t(1) << nl); ++i) {
                int bit = __builtin_ctzll(i);
                if (!member[size_t(bit)]) {
                    member[size_t(bit)] = 1;
                    ++xcnt;
                    exy += c[size_t(bit)];
                } else {
                    member[size_t(bit)] = 0;
                    --xcnt;
                    exy -= c[size_t(bit)];
                }
                if (!qualifies(xcnt, eps, nl)) continue;
                if (deviates(exy, (long long)xcnt * ycnt, eab, ab, eps)) {
                    Bitset x(nl);
                    for (int a = 0; a < nl; ++a)
                        if (member[size_t(a)]) x.set(a);
                    res.status = RegularityResult::Status::irregular;
                    res.witness = make_witness(p, x, y);
                    return res;
                }
            }
        }
        res.status = RegularityResult::Status::regular_certified;
        return res;
    }

    // Sampled falsifier: degree-outlier-seeded subsets at the threshold size
    // plus random subsets of a few sizes.
    Rng local = make_rng(12345);
    Rng& gen = rng ? *rng : local;

    auto seeded_sets = [&](int side, auto degree_of) {
        int thresh = int(eps * side) + 1;
        thresh = std::min(thresh, side);
        std::vector<int> order(size_t(side));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int u, int v) { return degree_of(u) < degree_of(v); });
        std::vector<Bitset> sets;
        for (int sz : {thresh, std::min(side, 2 * thresh), side}) {
            Bitset lo(side), hi(side);
            for (int i = 0; i < sz; ++i) {
                lo.set(order[size_t(i)]);
                hi.set(order[size_t(side - 1 - i)]);
            }
            sets.push_back(lo);
            sets.push_back(hi);
        }
        return std::pair<std::vector<Bitset>, int>(sets, thresh);
    };

    auto [xs, xthresh] = seeded_sets(nl, [&](int a) { return p.left_degree(a); });
    auto [ys, ythresh] = seeded_sets(nr, [&](int b) { return p.right_degree(b); });
    auto random_set = [&](int side, int sz) {
        Bitset s(side);
        while (s.count() < sz) s.set(uniform_int(gen, 0, side - 1));
        return s;
    };
    for (int i = 0; i < samples; ++i) {
        xs.push_back(random_set(nl, uniform_int(gen, xthresh, nl)));
        ys.push_back(random_set(nr, uniform_int(gen, ythresh, nr)));
    }

    for (const Bitset& x : xs) {
        if (!qualifies(x.count(), eps, nl)) continue;
        for (const Bitset& y : ys) {
            if (!qualifies(y.count(), eps, nr)) continue;
            long long exy = p.edges_between(x, y);
            if (deviates(exy, (long long)x.count() * y.count(), eab, ab, eps)) {
                res.status = RegularityResult::Status::irregular;
                res.witness = make_witness(p, x, y);
                return res;
            }
        }
    }
    res.status = RegularityResult::Status::no_counterexample_found;
    return res;
}

bool degree_floors_hold(const BipartitePair& p, double eps, double d) {
    double floor_left = (d - eps) * p.right_size;
    double floor_right = (d - eps) * p.left_size;
    for (int a = 0; a < p.left_size; ++a)
        if (double(p.left_degree(a)) < floor_left - 1e-9) return false;
    for (int b = 0; b < p.right_size; ++b)
        if (double(p.right_degree(b)) < floor_right - 1e-9) return false;
    return true;
}

bool is_super_regular(const BipartitePair& p, double eps, double d, CheckMode mode, Rng* rng,
                      int samples) {
    if (!degree_floors_hold(p, eps, d)) return false;
    RegularityResult reg = is_eps_regular(p, eps, mode, rng, samples);
    return mode == CheckMode::exact ? reg.certified() : !reg.irregular();
}

SplitCheckReport random_split_check(const BipartitePair& p, const std::vector<double>& parts_a,
                                    const std::vector<double>& parts_b, double theta, double eps,
                                    double d, int trials, Rng& rng) {
    auto sizes_of = [&](const std::vector<double>& fracs, int total) {
        if (fracs.empty()) throw std::invalid_argument("empty part list");
        double sum = 0;
        for (double f : fracs) {
            if (f <= theta)
                throw std::invalid_argument("every part fraction must exceed theta");
            sum += f;
        }
        if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("part fractions must sum to 1");
        std::vector<int> sizes(fracs.size());
        std::vector<std::pair<double, size_t>> rem;
        int assigned = 0;
        for (size_t i = 0; i < fracs.size(); ++i) {
            double exact = fracs[i] * total;
            sizes[i] = int(exact);
            assigned += sizes[i];
            rem.emplace_back(exact - sizes[i], i);
        }
        std::stable_sort(rem.begin(), rem.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        for (int i = 0; i < total - assigned; ++i) sizes[rem[size_t(i)].second]++;
        return sizes;
    };

    std::vector<int> sa = sizes_of(parts_a, p.left_size);
    std::vector<int> sb = sizes_of(parts_b, p.right_size);

    if (!is_super_regular(p, eps, d, CheckMode::sampled, &rng))
        throw std::invalid_argument("input pair failed the sampled super-regularity check");

    double sub_eps = eps / theta;
    double sub_d = d / 2.0;

    SplitCheckReport rep;
    rep.trials = trials;
    std::vector<int> left(size_t(p.left_size)), right(size_t(p.right_size));
    std::iota(left.begin(), left.end(), 0);
    std::iota(right.begin(), right.end(), 0);

    for (int t = 0; t < trials; ++t) {
        std::shuffle(left.begin(), left.end(), rng);
        std::shuffle(right.begin(), right.end(), rng);
        size_t loff = 0;
        for (int ai : sa) {
            std::vector<int> asel(left.begin() + loff, left.begin() + loff + ai);
            loff += size_t(ai);
            size_t roff = 0;
            for (int bj : sb) {
                std::vector<int> bsel(right.begin() + roff, right.begin() + roff + bj);
                roff += size_t(bj);

                BipartitePair sub(ai, bj);
                for (int x = 0; x < ai; ++x)
                    for (int y = 0; y < bj; ++y)
                        if (p.has_edge(asel[size_t(x)], bsel[size_t(y)])) sub.add_edge(x, y);

                ++rep.subpairs_total;
                if (is_super_regular(sub, sub_eps, sub_d, CheckMode::sampled, &rng, 60))
                    ++rep.subpairs_passed;
            }
        }
    }
    rep.pass_fraction =
        rep.subpairs_total == 0 ? 1.0 : double(rep.subpairs_passed) / rep.subpairs_total;
    return rep;
}

}  // namespace oc

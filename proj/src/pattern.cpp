#include "orientcycle/pattern.hpp"

#include <algorithm>
#include <cmath>

namespace oc {

Pattern::Pattern(std::string word, bool closed) : word_(std::move(word)), closed_(closed) {
    for (char c : word_)
        if (c != 'F' && c != 'B') throw std::invalid_argument("pattern letters must be F or B");
    if (closed_ && length() < 3) throw std::invalid_argument("closed patterns need length >= 3");
    if (!closed_ && length() < 1) throw std::invalid_argument("linear patterns need length >= 1");
}

Pattern Pattern::standard(int n) { return Pattern(std::string(size_t(n), 'F'), true); }

Pattern Pattern::antidirected(int n) {
    if (n % 2 != 0) throw std::invalid_argument("anti-directed cycles have even length");
    std::string w;
    for (int i = 0; i < n; ++i) w += (i % 2 == 0) ? 'F' : 'B';
    return Pattern(w, true);
}

Pattern Pattern::random_closed(int n, Rng& rng) {
    std::string w;
    for (int i = 0; i < n; ++i) w += (rng() & 1) ? 'F' : 'B';
    return Pattern(w, true);
}

Pattern Pattern::random_linear(int len, Rng& rng) {
    std::string w;
    for (int i = 0; i < len; ++i) w += (rng() & 1) ? 'F' : 'B';
    return Pattern(w, false);
}

Pattern Pattern::parse(const std::string& spec) {
    if (!spec.empty() && spec[0] == '@') {
        std::vector<std::string> parts;
        size_t pos = 1;
        while (pos <= spec.size()) {
            size_t next = spec.find(':', pos);
            if (next == std::string::npos) next = spec.size();
            parts.push_back(spec.substr(pos, next - pos));
            pos = next + 1;
        }
        if (parts.empty()) throw std::invalid_argument("empty pattern generator spec");
        const std::string& kind = parts[0];
        auto arg = [&](size_t i) {
            if (i >= parts.size())
                throw std::invalid_argument("pattern generator spec missing argument: " + spec);
            return std::stoll(parts[i]);
        };
        if (kind == "standard") return standard(int(arg(1)));
        if (kind == "antidirected") return antidirected(int(arg(1)));
        if (kind == "random") {
            Rng rng = make_rng(uint64_t(arg(2)));
            return random_closed(int(arg(1)), rng);
        }
        throw std::invalid_argument("unknown pattern generator: " + spec);
    }
    if (!spec.empty() && spec.back() == '*') return Pattern(spec.substr(0, spec.size() - 1), true);
    return Pattern(spec, false);
}

Pattern Pattern::rotated(int k) const {
    if (!closed_) throw std::invalid_argument("rotation is only defined for closed patterns");
    int n = length();
    std::string w(size_t(n), 'F');
    for (int i = 0; i < n; ++i) w[i] = at(i + k);
    return Pattern(w, true);
}

Pattern Pattern::flipped() const {
    std::string w = word_;
    for (char& c : w) c = (c == 'F') ? 'B' : 'F';
    return Pattern(w, closed_);
}

Pattern Pattern::reversed() const {
    int n = length();
    std::string w(size_t(n), 'F');
    for (int i = 0; i < n; ++i) {
        char c = closed_ ? at(n - 1 - i) : word_[n - 1 - i];
        w[i] = (c == 'F') ? 'B' : 'F';
    }
    return Pattern(w, closed_);
}

Pattern Pattern::subword(int start, int len) const {
    if (len < 1) throw std::invalid_argument("subword length must be positive");
    if (!closed_ && start + len > length()) throw std::out_of_range("subword out of range");
    std::string w(size_t(len), 'F');
    for (int i = 0; i < len; ++i) w[i] = at(start + i);
    return Pattern(w, false);
}

int neutral_pair_count(const Pattern& p) {
    int n = p.length();
    int last = p.closed() ? n : n - 1;
    int c = 0;
    for (int i = 0; i < last; ++i)
        if (p.at(i) == 'F' && p.at(i + 1) == 'B') ++c;
    return c;
}

NeutralPairSet spread_neutral_pairs(const Pattern& p) {
    if (!p.closed()) throw std::invalid_argument("spread_neutral_pairs needs a closed pattern");
    int n = p.length();
    NeutralPairSet q;
    for (int i = 0; i < n; ++i)
        if (p.at(i) == 'F' && p.at(i + 1) == 'B') q.positions.push_back(i);

    for (int pos : q.positions) {
        if (!q.selected.empty()) {
            if (pos - q.selected.back() < 3) continue;
            if (n - pos + q.selected.front() < 3) continue;  // wraparound
        }
        q.selected.push_back(pos);
    }
    return q;
}

std::vector<int> find_long_runs(const Pattern& p, int run_len, char direction) {
    if (run_len < 1) throw std::invalid_argument("run length must be >= 1");
    if (direction != 'F' && direction != 'B')
        throw std::invalid_argument("run direction must be F or B");
    int n = p.length();
    std::vector<int> next_bad(size_t(n) + 1);
    next_bad[n] = n;
    for (int i = n - 1; i >= 0; --i)
        next_bad[i] = (p.at(i) == direction) ? next_bad[i + 1] : i;

    std::vector<int> starts;
    int i = 0;
    while (i + run_len <= n) {
        if (next_bad[i] >= i + run_len) {
            starts.push_back(i);
            i += run_len + 3;
        } else {
            i = next_bad[i] + 1;
        }
    }
    if (p.closed() && starts.size() >= 2) {
        int gap = n - (starts.back() + run_len) + starts.front();
        if (gap < 3) starts.pop_back();
    }
    return starts;
}

ChopPlan chop_cycle(const Pattern& p, double alpha) {
    if (!p.closed()) throw std::invalid_argument("chop_cycle needs a closed pattern");
    if (alpha <= 0 || alpha > 4) throw std::invalid_argument("alpha must lie in (0, 4]");
    int n = p.length();

    ChopPlan plan;
    plan.n = n;
    double lg = std::log2(double(n));
    plan.s = int(std::floor(lg * lg));
    plan.r = 4 * int(std::ceil(std::log2(4.0 / alpha)));
    long long num = (long long)n - (long long)(plan.s + 1) * (plan.r - 1);
    if (plan.s < 1 || num <= 0) throw std::invalid_argument("pattern too short to chop");
    plan.t = int(num / (plan.s + 2)) - 1;
    if (plan.t < 3 * plan.r) throw std::invalid_argument("pattern too short to chop: t < 3r");
    plan.p_star_len = n - plan.s * plan.t - (plan.s + 1) * plan.r;
    if (!(2 * plan.t <= plan.p_star_len && plan.p_star_len < 3 * plan.t))
        throw std::invalid_argument("pattern too short to chop: P* out of range");

    // v*: both the half after v* and the part before it carry >= 2|Q|/5 of
    // the spread neutral pairs.
    NeutralPairSet q = spread_neutral_pairs(p);
    plan.v_star = 0;
    plan.v_star_valid = q.selected.empty();
    if (!q.selected.empty()) {
        std::vector<char> isq(size_t(n), 0);
        for (int pos : q.selected) isq[pos] = 1;
        int half = n / 2;
        long long total = (long long)q.selected.size();
        long long cnt = 0;
        for (int i = 0; i < half; ++i) cnt += isq[i];
        for (int v = 0; v < n; ++v) {
            if (5 * cnt >= 2 * total && 5 * (total - cnt) >= 2 * total) {
                plan.v_star = v;
                plan.v_star_valid = true;
                break;
            }
            cnt -= isq[v];
            cnt += isq[(v + half) % n];
        }
    }

    int at = plan.v_star;
    auto push = [&](Segment::Role role, int index, int len) {
        plan.segments.push_back({role, index, at % n, len});
        at += len;
    };
    for (int i = 1; i <= plan.s; ++i) {
        push(Segment::Role::Q, i, plan.r);
        push(Segment::Role::P, i, plan.t);
    }
    push(Segment::Role::QStar, 0, plan.r);
    push(Segment::Role::PStar, 0, plan.p_star_len);
    return plan;
}

SplitPatterns split_A_B(const Pattern& p, const ChopPlan& plan, int n_b) {
    int n = plan.n;
    if (p.length() != n) throw std::invalid_argument("plan does not match pattern");
    int block = plan.t + plan.r;

    int s_b = -1;
    for (int cand = 1; cand <= plan.s; ++cand) {
        long long x = (long long)n_b - (long long)cand * block;
        if (1 < x && x < plan.p_star_len) {
            s_b = cand;
            break;
        }
    }
    if (s_b < 0) throw std::invalid_argument("split_A_B: no valid s_B for this n_B");

    SplitPatterns out;
    out.s_b = s_b;
    out.s_a = plan.s - s_b;
    out.pb_star_len = n_b - 1 - s_b * block;
    out.pa_star_len = plan.p_star_len - out.pb_star_len;
    out.pb_start = ((plan.v_star - out.pb_star_len) % n + n) % n;
    out.p_b = p.subword(out.pb_start, n_b - 1);
    out.p_a = p.subword((out.pb_start + n_b - 1) % n, n - (n_b - 1));
    return out;
}

}  // namespace oc

#include "marclab/stepfn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace marclab::stepfn {

namespace {

// elementary decomposition of the positioned pieces of f and g over the union
// of their breakpoints; value 0 where neither is supported
struct Cell {
    Rat lo, hi;
    Rat fval, gval;
};

std::vector<Cell> refine(const StepFunction& f, const StepFunction& g) {
    if (!f.positioned() || !g.positioned())
        throw std::invalid_argument("pointwise combination requires positioned pieces");
    std::vector<Rat> cuts;
    for (const auto& p : f.pieces()) {
        cuts.push_back(p.at->lo);
        cuts.push_back(p.at->hi);
    }
    for (const auto& p : g.pieces()) {
        cuts.push_back(p.at->lo);
        cuts.push_back(p.at->hi);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto value_at = [](const StepFunction& h, const Rat& lo, const Rat& hi) -> Rat {
        for (const auto& p : h.pieces())
            if (p.at->lo <= lo && hi <= p.at->hi) return p.value;
        return 0;
    };

    std::vector<Cell> cells;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Cell c{cuts[i], cuts[i + 1], 0, 0};
        c.fval = value_at(f, c.lo, c.hi);
        c.gval = value_at(g, c.lo, c.hi);
        cells.push_back(std::move(c));
    }
    return cells;
}

}  // namespace

StepFunction::StepFunction(std::vector<Piece> pieces, double ambient_length)
    : pieces_(std::move(pieces)), L_(ambient_length) {
    validate();
}

StepFunction StepFunction::indicator(const Interval& where, const Rat& height, double L) {
    Piece p{height, where.length(), where};
    return StepFunction({p}, L);
}

bool StepFunction::positioned() const {
    for (const auto& p : pieces_)
        if (!p.at) return false;
    return !pieces_.empty();
}

Rat StepFunction::total_measure() const {
    Rat s = 0;
    for (const auto& p : pieces_) s += p.measure;
    return s;
}

Rat StepFunction::support_measure() const {
    Rat s = 0;
    for (const auto& p : pieces_)
        if (p.value != 0) s += p.measure;
    return s;
}

Rat StepFunction::l1_norm() const {
    Rat s = 0;
    for (const auto& p : pieces_) s += rat_abs(p.value) * p.measure;
    return s;
}

Rat StepFunction::sup_norm() const {
    Rat s = 0;
    for (const auto& p : pieces_) s = std::max(s, rat_abs(p.value));
    return s;
}

StepFunction StepFunction::scaled(const Rat& c) const {
    std::vector<Piece> ps = pieces_;
    for (auto& p : ps) p.value *= c;
    return StepFunction(std::move(ps), L_);
}

void StepFunction::validate() const {
    if (!(L_ > 0)) throw std::invalid_argument("StepFunction: ambient length must be positive");
    Rat total = 0;
    std::vector<std::pair<Interval, std::size_t>> placed;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        if (!(p.measure > 0)) throw std::invalid_argument("StepFunction: measures must be positive");
        total += p.measure;
        if (p.at) {
            if (p.at->length() != p.measure)
                throw std::invalid_argument("StepFunction: position length disagrees with measure");
            if (p.at->lo < 0) throw std::invalid_argument("StepFunction: negative position");
            placed.emplace_back(*p.at, i);
        }
    }
    if (!std::isinf(L_) && total > rat_from_double(L_))
        throw std::invalid_argument("StepFunction: pieces exceed the ambient interval");
    std::sort(placed.begin(), placed.end(),
              [](const auto& a, const auto& b) { return a.first.lo < b.first.lo; });
    for (std::size_t i = 0; i + 1 < placed.size(); ++i)
        if (placed[i].first.hi > placed[i + 1].first.lo)
            throw std::invalid_argument("StepFunction: pieces " + std::to_string(placed[i].second) +
                                        " and " + std::to_string(placed[i + 1].second) +
                                        " overlap");
}

StepFunction add(const StepFunction& f, const StepFunction& g) {
    auto cells = refine(f, g);
    std::vector<Piece> ps;
    for (const auto& c : cells) {
        Rat v = c.fval + c.gval;
        if (v != 0) ps.push_back({v, c.hi - c.lo, Interval{c.lo, c.hi}});
    }
    return StepFunction(std::move(ps), std::max(f.ambient_length(), g.ambient_length()));
}

StepFunction subtract(const StepFunction& f, const StepFunction& g) {
    return add(f, g.scaled(-1));
}

StepFunction disjoint_sum(const std::vector<StepFunction>& fs) {
    std::vector<std::pair<Interval, std::size_t>> spans;
    std::vector<Piece> ps;
    double L = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (!fs[i].positioned())
            throw std::invalid_argument("disjoint_sum: input " + std::to_string(i) +
                                        " is not positioned");
        L = std::max(L, fs[i].ambient_length());
        for (const auto& p : fs[i].pieces()) {
            spans.emplace_back(*p.at, i);
            ps.push_back(p);
        }
    }
    std::sort(spans.begin(), spans.end(),
              [](const auto& a, const auto& b) { return a.first.lo < b.first.lo; });
    for (std::size_t i = 0; i + 1 < spans.size(); ++i)
        if (spans[i].first.hi > spans[i + 1].first.lo && spans[i].second != spans[i + 1].second)
            throw std::invalid_argument("disjoint_sum: supports of inputs " +
                                        std::to_string(spans[i].second) + " and " +
                                        std::to_string(spans[i + 1].second) + " overlap");
    return StepFunction(std::move(ps), L);
}

Rat essinf_abs_on(const StepFunction& f, const Interval& E) {
    if (!(E.length() > 0)) throw std::invalid_argument("essinf_abs_on: empty interval");
    if (!f.positioned()) throw std::invalid_argument("essinf_abs_on: unpositioned function");
    Rat covered = 0;
    Rat inf = -1;
    for (const auto& p : f.pieces()) {
        Rat lo = std::max(E.lo, p.at->lo), hi = std::min(E.hi, p.at->hi);
        if (hi <= lo) continue;
        covered += hi - lo;
        Rat a = rat_abs(p.value);
        if (inf < 0 || a < inf) inf = a;
    }
    if (covered < E.length()) return 0;  // a positive-measure gap carries value 0
    return inf < 0 ? Rat(0) : inf;
}

Rat average_abs_on(const StepFunction& f, const Interval& E) {
    if (!(E.length() > 0)) throw std::invalid_argument("average_abs_on: empty interval");
    if (!f.positioned()) throw std::invalid_argument("average_abs_on: unpositioned function");
    Rat integral = 0;
    for (const auto& p : f.pieces()) {
        Rat lo = std::max(E.lo, p.at->lo), hi = std::min(E.hi, p.at->hi);
        if (hi <= lo) continue;
        integral += rat_abs(p.value) * (hi - lo);
    }
    return integral / E.length();
}

DecreasingProfile rearrangement(const StepFunction& f) {
    std::map<Rat, Rat, std::greater<Rat>> by_value;  // |value| -> total measure
    for (const auto& p : f.pieces()) {
        Rat a = rat_abs(p.value);
        if (a != 0) by_value[a] += p.measure;
    }
    DecreasingProfile d;
    Rat acc = 0;
    for (const auto& [v, mu] : by_value) {
        acc += mu;
        d.values.push_back(v);
        d.breaks.push_back(acc);
    }
    return d;
}

MaximalProfile maximal_rearrangement(const StepFunction& f) {
    MaximalProfile m;
    m.base = rearrangement(f);
    Rat acc = 0, prev = 0;
    for (std::size_t k = 0; k < m.base.values.size(); ++k) {
        m.cums.push_back(acc);
        acc += m.base.values[k] * (m.base.breaks[k] - prev);
        prev = m.base.breaks[k];
    }
    m.cums.push_back(acc);  // total integral, used past the support
    return m;
}

double DecreasingProfile::eval(double t) const { return to_double(eval_rat(rat_from_double(t))); }

double DecreasingProfile::left_limit(double t) const {
    return to_double(left_limit_rat(rat_from_double(t)));
}

Rat DecreasingProfile::eval_rat(const Rat& t) const {
    if (!(t > 0)) throw std::domain_error("profile: argument must be positive");
    for (std::size_t k = 0; k < breaks.size(); ++k)
        if (t < breaks[k]) return values[k];
    return 0;
}

Rat DecreasingProfile::left_limit_rat(const Rat& t) const {
    if (!(t > 0)) throw std::domain_error("profile: argument must be positive");
    for (std::size_t k = 0; k < breaks.size(); ++k)
        if (t <= breaks[k]) return values[k];
    return 0;
}

Rat DecreasingProfile::integral_to(const Rat& t) const {
    if (!(t >= 0)) throw std::domain_error("profile: argument must be nonnegative");
    Rat acc = 0, prev = 0;
    for (std::size_t k = 0; k < breaks.size(); ++k) {
        if (t <= breaks[k]) {
            acc += values[k] * (t - prev);
            return acc;
        }
        acc += values[k] * (breaks[k] - prev);
        prev = breaks[k];
    }
    return acc;
}

Rat DecreasingProfile::total_integral() const {
    return breaks.empty() ? Rat(0) : integral_to(breaks.back());
}

Rat DecreasingProfile::total_measure() const { return breaks.empty() ? Rat(0) : breaks.back(); }

StepFunction DecreasingProfile::as_step_function(double L) const {
    std::vector<Piece> ps;
    Rat prev = 0;
    for (std::size_t k = 0; k < breaks.size(); ++k) {
        ps.push_back({values[k], breaks[k] - prev, Interval{prev, breaks[k]}});
        prev = breaks[k];
    }
    return StepFunction(std::move(ps), L);
}

double MaximalProfile::eval(double t) const { return to_double(eval_rat(rat_from_double(t))); }

Rat MaximalProfile::eval_rat(const Rat& t) const {
    if (!(t > 0)) throw std::domain_error("profile: argument must be positive");
    return base.integral_to(std::min(t, base.total_measure())) / t;
}

InequalityReport verify_rearrangement_inequalities(const StepFunction& f, const StepFunction& g,
                                                   std::span<const Rat> sample_ts) {
    InequalityReport rep;
    StepFunction sum = add(f, g);
    auto fs = rearrangement(f), gs = rearrangement(g), hs = rearrangement(sum);
    auto fss = maximal_rearrangement(f), gss = maximal_rearrangement(g),
         hss = maximal_rearrangement(sum);

    auto record = [&rep](bool ok, const std::string& what) {
        ++rep.checked;
        if (!ok) {
            ++rep.failures;
            rep.notes.push_back(what);
        }
    };

    const std::size_t n = sample_ts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Rat& t = sample_ts[i];
        if (!(t > 0)) continue;
        record(hss.eval_rat(t) <= fss.eval_rat(t) + gss.eval_rat(t),
               "running-average subadditivity failed at t=" + rat_to_string(t));
        const Rat& s = sample_ts[(i * 7 + 3) % n];
        if (s > 0)
            record(hs.eval_rat(s + t) <= fs.eval_rat(s) + gs.eval_rat(t),
                   "two-variable subadditivity failed at (s,t)=(" + rat_to_string(s) + "," +
                       rat_to_string(t) + ")");
    }

    // disjoint-support lower bound, applicable only when the supports are
    // tracked and disjoint
    bool disjoint = true;
    try {
        disjoint_sum({f, g});
    } catch (const std::exception&) {
        disjoint = false;
    }
    if (disjoint) {
        for (const Rat& t : sample_ts) {
            if (!(t > 0)) continue;
            Rat lhs = hs.eval_rat(2 * t);
            Rat rhs = std::min(fs.eval_rat(t), gs.eval_rat(t));
            record(lhs >= rhs, "disjoint lower bound failed at t=" + rat_to_string(t));
        }
    }
    return rep;
}

InequalityReport verify_disjoint_lower_bound(const std::vector<StepFunction>& fs,
                                             std::span<const Rat> sample_ts) {
    InequalityReport rep;
    StepFunction sum = disjoint_sum(fs);
    auto sums = rearrangement(sum);
    std::vector<DecreasingProfile> singles;
    for (const auto& f : fs) singles.push_back(rearrangement(f));
    const int N = static_cast<int>(fs.size());
    for (const Rat& t : sample_ts) {
        if (!(t > 0)) continue;
        Rat rhs = singles.front().eval_rat(t);
        for (const auto& s : singles) rhs = std::min(rhs, s.eval_rat(t));
        ++rep.checked;
        if (!(sums.eval_rat(N * t) >= rhs)) {
            ++rep.failures;
            rep.notes.push_back("disjoint lower bound failed at t=" + rat_to_string(t));
        }
    }
    return rep;
}

AltOracleResult fstar_alt_oracle(std::span<const Rat> atom_values, const Rat& atom_width,
                                 int t_atoms) {
    const int n = static_cast<int>(atom_values.size());
    if (n > 20) throw std::invalid_argument("fstar_alt_oracle: at most 20 atoms");
    if (t_atoms < 1 || t_atoms > n)
        throw std::invalid_argument("fstar_alt_oracle: subset size out of range");
    if (!(atom_width > 0)) throw std::invalid_argument("fstar_alt_oracle: width must be positive");

    AltOracleResult best{Rat(-1), Rat(-1)};
    std::vector<Rat> abs(atom_values.begin(), atom_values.end());
    for (auto& a : abs) a = rat_abs(a);

    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != t_atoms) continue;
        Rat mn = -1, sum = 0;
        for (int i = 0; i < n; ++i) {
            if (!(mask & (1u << i))) continue;
            if (mn < 0 || abs[i] < mn) mn = abs[i];
            sum += abs[i];
        }
        if (mn > best.essinf_sup) best.essinf_sup = mn;
        if (sum > best.integral_sup) best.integral_sup = sum;
    }
    best.integral_sup *= atom_width;
    return best;
}

}  // namespace marclab::stepfn

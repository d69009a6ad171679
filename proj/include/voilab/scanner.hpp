/**
 * @file scanner.hpp
 * @brief Exact scans of the interaction over the simplex.
 *
 * grid_scan evaluates delta_voi on every barycentric lattice point k/N.
 *
 * ray_scan follows b(t) = origin + t * direction, t in [0, t_max], and
 * recovers the interaction as an exact piecewise-affine function of t. It
 * uses the expansion
 *
 *     delta_voi = F_ij - F_i - F_j + V,
 *     F_k(b)    = sum_o max_a sum_s R(a, s) P(o | s, k) b(s),
 *
 * where F_ij is taken over the product channel. Each max term is a max of
 * affine functions of t, so every breakpoint is a solution of one linear
 * equation between two actions for one outcome. All candidates are
 * enumerated, and only those where some argmax actually changes are kept.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "voilab/bayes.hpp"
#include "voilab/interaction.hpp"
#include "voilab/localization.hpp"

namespace voilab {

/// slope * t + intercept
struct Affine {
    Rational slope;
    Rational intercept;

    Rational at(const Rational& t) const { return slope * t + intercept; }

    Affine& operator+=(const Affine& o) {
        slope += o.slope;
        intercept += o.intercept;
        return *this;
    }
    Affine& operator-=(const Affine& o) {
        slope -= o.slope;
        intercept -= o.intercept;
        return *this;
    }
    friend Affine operator+(Affine a, const Affine& b) { return a += b; }
    friend Affine operator-(Affine a, const Affine& b) { return a -= b; }
    friend bool operator==(const Affine&, const Affine&) = default;
};

// ---------------------------------------------------------------------------
// Grid scan

struct GridRow {
    Belief belief;
    Rational delta_voi;
    Rational complement_force;
    Rational substitute_force;
    Regime regime;
    ActionSet argmax_actions;
    bool on_kink;
    bool stays_interior;
};

struct GridScan {
    std::size_t denominator;
    std::vector<std::string> action_names;
    std::vector<GridRow> rows;
};

/// Integer compositions of n into k nonnegative parts, lexicographic.
inline std::vector<std::vector<std::size_t>> lattice_points(std::size_t k, std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(k, 0);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
        if (pos + 1 == k) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (std::size_t v = 0; v <= left; ++v) {
            cur[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    if (k > 0) rec(rec, 0, n);
    return out;
}

inline GridRow grid_row(const DecisionProblem& prob, const Channel& ch_i, const Channel& ch_j,
                        const Belief& b) {
    InteractionReport r = delta_voi(prob, ch_i, ch_j, b);
    LocalizationVerdict v = assess(r);
    bool kink = r.prior_on_kink;
    return GridRow{b, r.delta_voi, r.complement_force, r.substitute_force, v.regime,
                   r.argmax_actions, kink, v.stays_interior};
}

/// Rows are computed on up to `threads` workers; order is always lexicographic.
inline GridScan grid_scan(const DecisionProblem& prob, const Channel& ch_i, const Channel& ch_j,
                          std::size_t n, unsigned threads = 1) {
    if (n < 1) throw ValidationError("grid_scan: denominator N must be >= 1");
    require_states(prob.num_states(), ch_i.num_states(), "grid_scan: channel i");
    require_states(prob.num_states(), ch_j.num_states(), "grid_scan: channel j");

    const auto points = lattice_points(prob.num_states(), n);
    std::vector<std::optional<GridRow>> rows(points.size());
    const Rational denom(static_cast<unsigned long>(n));

    auto work = [&](std::atomic<std::size_t>& next) {
        for (std::size_t k = next++; k < points.size(); k = next++) {
            std::vector<Rational> probs;
            for (std::size_t c : points[k]) probs.push_back(Rational(static_cast<unsigned long>(c)) / denom);
            rows[k] = grid_row(prob, ch_i, ch_j, Belief(std::move(probs)));
        }
    };
    std::atomic<std::size_t> next{0};
    threads = std::max(1u, threads);
    if (threads == 1) {
        work(next);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back([&] { work(next); });
    }

    GridScan scan{n, prob.action_names(), {}};
    scan.rows.reserve(rows.size());
    for (auto& r : rows) scan.rows.push_back(std::move(*r));
    return scan;
}

// ---------------------------------------------------------------------------
// Ray scan

enum class BoundaryKind { breakpoint, decision, interaction, decision_and_interaction, end };

inline std::string_view to_string(BoundaryKind k) {
    switch (k) {
    case BoundaryKind::breakpoint: return "breakpoint";
    case BoundaryKind::decision: return "decision";
    case BoundaryKind::interaction: return "interaction";
    case BoundaryKind::decision_and_interaction: return "decision+interaction";
    case BoundaryKind::end: return "end";
    }
    return "?";
}

struct RaySegment {
    Rational t_lo;
    Rational t_hi;
    Affine delta_voi;
    Affine complement_force;
    Affine substitute_force;
    BoundaryKind kind_at_hi;
};

struct RayScan {
    Belief origin;
    std::vector<Rational> direction;
    Rational t_max;
    std::vector<Rational> breakpoints;          // argmax changes, sorted, in (0, t_max)
    std::vector<RaySegment> segments;           // split at breakpoints and crossings
    std::vector<Rational> decision_boundary_ts; // argmax of V changes
    std::vector<Rational> interaction_crossings;
};

inline Belief point_on_ray(const Belief& origin, const std::vector<Rational>& direction,
                           const Rational& t) {
    std::vector<Rational> p(origin.size());
    for (std::size_t s = 0; s < p.size(); ++s) p[s] = origin[s] + t * direction[s];
    return Belief(std::move(p));
}

namespace detail {

/// One max term: max over actions of an affine function of t.
using MaxTerm = std::vector<Affine>;

/// Sum of max terms (one per outcome), i.e. F_k restricted to the ray.
struct RayExpression {
    std::vector<MaxTerm> terms;
};

inline RayExpression ray_expression(const DecisionProblem& prob, const Channel& ch,
                                    const Belief& origin, const std::vector<Rational>& dir) {
    RayExpression e;
    const std::size_t k = prob.num_states();
    for (std::size_t o = 0; o < ch.num_outcomes(); ++o) {
        MaxTerm term;
        for (std::size_t a = 0; a < prob.num_actions(); ++a) {
            Affine f;
            for (std::size_t s = 0; s < k; ++s) {
                Rational coef = prob.rewards()[a][s] * ch.likelihood(o, s);
                f.intercept += coef * origin[s];
                f.slope += coef * dir[s];
            }
            term.push_back(std::move(f));
        }
        e.terms.push_back(std::move(term));
    }
    return e;
}

inline ActionSet term_argmax(const MaxTerm& term, const Rational& t) {
    ActionSet best;
    Rational top;
    for (std::size_t a = 0; a < term.size(); ++a) {
        Rational v = term[a].at(t);
        if (best.empty() || v > top) {
            top = v;
            best.assign(1, a);
        } else if (v == top) {
            best.push_back(a);
        }
    }
    return best;
}

/// The affine piece of the expression active at t (lowest-index tie break).
inline Affine active_piece(const RayExpression& e, const Rational& t) {
    Affine total;
    for (const auto& term : e.terms) total += term[term_argmax(term, t).front()];
    return total;
}

inline void collect_candidates(const RayExpression& e, const Rational& t_max,
                               std::vector<Rational>& out) {
    for (const auto& term : e.terms)
        for (std::size_t a = 0; a < term.size(); ++a)
            for (std::size_t b = a + 1; b < term.size(); ++b) {
                Rational ds = term[a].slope - term[b].slope;
                if (sgn(ds) == 0) continue;
                Rational t = (term[b].intercept - term[a].intercept) / ds;
                if (sgn(t) > 0 && t < t_max) out.push_back(std::move(t));
            }
}

/// True iff some term's argmax differs between the two sample points.
inline bool pattern_changes(const RayExpression& e, const Rational& left, const Rational& right) {
    for (const auto& term : e.terms)
        if (term_argmax(term, left) != term_argmax(term, right)) return true;
    return false;
}

inline void sort_unique(std::vector<Rational>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace detail

inline RayScan ray_scan(const DecisionProblem& prob, const Channel& ch_i, const Channel& ch_j,
                        const Belief& origin, std::vector<Rational> direction,
                        const Rational& t_max) {
    const std::size_t k = prob.num_states();
    require_states(k, origin.size(), "ray_scan: origin");
    require_states(k, direction.size(), "ray_scan: direction");
    require_states(k, ch_i.num_states(), "ray_scan: channel i");
    require_states(k, ch_j.num_states(), "ray_scan: channel j");
    if (std::all_of(direction.begin(), direction.end(), [](const Rational& d) { return sgn(d) == 0; }))
        throw ValidationError("ray_scan: zero direction");
    if (sum(direction) != 0)
        throw ValidationError("ray_scan: direction entries sum to " + to_string(sum(direction)) +
                              ", expected 0");
    if (sgn(t_max) < 0) throw ValidationError("ray_scan: t_max must be >= 0");
    for (std::size_t s = 0; s < k; ++s)
        if (sgn(origin[s] + t_max * direction[s]) < 0)
            throw ValidationError("ray_scan: ray exits the simplex (state index " +
                                  std::to_string(s) + " negative at t_max)");

    const Channel joint = product_channel(ch_i, ch_j);
    const Channel unit = Channel::uninformative(k);
    const detail::RayExpression v_expr = detail::ray_expression(prob, unit, origin, direction);
    const detail::RayExpression fi = detail::ray_expression(prob, ch_i, origin, direction);
    const detail::RayExpression fj = detail::ray_expression(prob, ch_j, origin, direction);
    const detail::RayExpression fij = detail::ray_expression(prob, joint, origin, direction);
    const detail::RayExpression* all[] = {&v_expr, &fi, &fj, &fij};

    std::vector<Rational> cand;
    for (const auto* e : all) detail::collect_candidates(*e, t_max, cand);
    detail::sort_unique(cand);

    RayScan scan{origin, direction, t_max, {}, {}, {}, {}};
    for (std::size_t c = 0; c < cand.size(); ++c) {
        const Rational left = ((c == 0 ? Rational(0) : cand[c - 1]) + cand[c]) / 2;
        const Rational right = (cand[c] + (c + 1 == cand.size() ? t_max : cand[c + 1])) / 2;
        bool any = false;
        for (const auto* e : all) any = any || detail::pattern_changes(*e, left, right);
        if (!any) continue;
        scan.breakpoints.push_back(cand[c]);
        if (detail::pattern_changes(v_expr, left, right)) scan.decision_boundary_ts.push_back(cand[c]);
    }

    struct Piece {
        Rational lo, hi;
        Affine dvoi, comp, sub;
    };
    std::vector<Piece> pieces;
    std::vector<Rational> cuts{Rational(0)};
    cuts.insert(cuts.end(), scan.breakpoints.begin(), scan.breakpoints.end());
    cuts.push_back(t_max);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const Rational mid = (cuts[c] + cuts[c + 1]) / 2;
        Affine v = detail::active_piece(v_expr, mid);
        Affine a_i = detail::active_piece(fi, mid);
        Affine a_j = detail::active_piece(fj, mid);
        Affine a_ij = detail::active_piece(fij, mid);
        Affine dvoi = a_ij - a_i - a_j + v;
        Affine comp = a_ij - a_j;
        Affine sub = a_i - v;
        // split where the affine interaction crosses zero strictly inside
        if (sgn(dvoi.slope) != 0) {
            Rational root = -dvoi.intercept / dvoi.slope;
            if (root > cuts[c] && root < cuts[c + 1]) {
                pieces.push_back({cuts[c], root, dvoi, comp, sub});
                pieces.push_back({root, cuts[c + 1], dvoi, comp, sub});
                continue;
            }
        }
        pieces.push_back({cuts[c], cuts[c + 1], dvoi, comp, sub});
    }

    const auto mid_sign = [](const Piece& p) { return sgn(p.dvoi.at((p.lo + p.hi) / 2)); };
    for (std::size_t p = 0; p + 1 < pieces.size(); ++p) {
        const Rational& t = pieces[p].hi;
        if (sgn(pieces[p].dvoi.at(t)) != 0) continue;
        int before = mid_sign(pieces[p]);
        int after = mid_sign(pieces[p + 1]);
        if (before != 0 && after != 0 && before != after) scan.interaction_crossings.push_back(t);
    }

    for (std::size_t p = 0; p < pieces.size(); ++p) {
        const Rational& t = pieces[p].hi;
        BoundaryKind kind = BoundaryKind::breakpoint;
        if (p + 1 == pieces.size()) {
            kind = BoundaryKind::end;
        } else {
            bool dec = std::binary_search(scan.decision_boundary_ts.begin(),
                                          scan.decision_boundary_ts.end(), t);
            bool inter = std::binary_search(scan.interaction_crossings.begin(),
                                            scan.interaction_crossings.end(), t);
            if (dec && inter) kind = BoundaryKind::decision_and_interaction;
            else if (dec) kind = BoundaryKind::decision;
            else if (inter) kind = BoundaryKind::interaction;
        }
        scan.segments.push_back({pieces[p].lo, pieces[p].hi, pieces[p].dvoi, pieces[p].comp,
                                 pieces[p].sub, kind});
    }
    return scan;
}

/// Checks every segment against direct evaluation of delta_voi at both ends
/// and the midpoint (affinity), and every crossing for an exact zero.
/// Returns a description of each failure; empty means certified.
inline std::vector<std::string> certify_ray_scan(const DecisionProblem& prob, const Channel& ch_i,
                                                 const Channel& ch_j, const RayScan& scan) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < scan.segments.size(); ++k) {
        const auto& seg = scan.segments[k];
        const Rational mid = (seg.t_lo + seg.t_hi) / 2;
        const InteractionReport lo = delta_voi(prob, ch_i, ch_j, point_on_ray(scan.origin, scan.direction, seg.t_lo));
        const InteractionReport hi = delta_voi(prob, ch_i, ch_j, point_on_ray(scan.origin, scan.direction, seg.t_hi));
        const InteractionReport md = delta_voi(prob, ch_i, ch_j, point_on_ray(scan.origin, scan.direction, mid));
        const std::string where = "segment " + std::to_string(k) + " [" + to_string(seg.t_lo) + ", " +
                                  to_string(seg.t_hi) + "]";
        const auto check = [&](const char* name, const Affine& f, const Rational& vlo,
                               const Rational& vhi, const Rational& vmid) {
            if (vmid * 2 != vlo + vhi) out.push_back(where + ": " + name + " not affine (midpoint test)");
            if (f.at(seg.t_lo) != vlo || f.at(seg.t_hi) != vhi || f.at(mid) != vmid)
                out.push_back(where + ": " + name + " coefficients disagree with direct evaluation");
        };
        check("delta_voi", seg.delta_voi, lo.delta_voi, hi.delta_voi, md.delta_voi);
        check("complement_force", seg.complement_force, lo.complement_force, hi.complement_force,
              md.complement_force);
        check("substitute_force", seg.substitute_force, lo.substitute_force, hi.substitute_force,
              md.substitute_force);
    }
    for (const auto& t : scan.interaction_crossings)
        if (sgn(delta_voi(prob, ch_i, ch_j, point_on_ray(scan.origin, scan.direction, t)).delta_voi) != 0)
            out.push_back("crossing at t = " + to_string(t) + " is not an exact zero");
    return out;
}

// ---------------------------------------------------------------------------
// CSV

namespace detail {

inline std::string join_actions(const ActionSet& set, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t a : set) {
        if (!out.empty()) out += ';';
        out += names.at(a);
    }
    return out;
}

inline void check_sink(const std::ostream& os) {
    if (!os) throw Error("emit_csv: write to output failed");
}

} // namespace detail

/// Columns: b{k}_frac..., b{k}_dec..., then the interaction columns. With
/// three states this is exactly
/// b1_frac,b2_frac,b3_frac,b1_dec,b2_dec,b3_dec,delta_voi_frac,... ,on_kink.
inline void emit_csv(const GridScan& scan, std::ostream& os) {
    const std::size_t k = scan.rows.empty() ? 0 : scan.rows.front().belief.size();
    for (std::size_t s = 0; s < k; ++s) os << 'b' << s + 1 << "_frac,";
    for (std::size_t s = 0; s < k; ++s) os << 'b' << s + 1 << "_dec,";
    os << "delta_voi_frac,delta_voi_dec,comp_force_frac,comp_force_dec,sub_force_frac,"
          "sub_force_dec,regime,argmax_actions,on_kink\n";
    for (const auto& r : scan.rows) {
        for (std::size_t s = 0; s < k; ++s) os << to_string(r.belief[s]) << ',';
        for (std::size_t s = 0; s < k; ++s) os << to_decimal(r.belief[s]) << ',';
        os << to_string(r.delta_voi) << ',' << to_decimal(r.delta_voi) << ','
           << to_string(r.complement_force) << ',' << to_decimal(r.complement_force) << ','
           << to_string(r.substitute_force) << ',' << to_decimal(r.substitute_force) << ','
           << to_string(r.regime) << ',' << detail::join_actions(r.argmax_actions, scan.action_names)
           << ',' << (r.on_kink ? "true" : "false") << '\n';
    }
    detail::check_sink(os);
}

inline void emit_csv(const RayScan& scan, std::ostream& os) {
    os << "t_lo_frac,t_hi_frac,dvoi_slope_frac,dvoi_intercept_frac,comp_slope_frac,"
          "comp_intercept_frac,sub_slope_frac,sub_intercept_frac,boundary_kind_at_hi\n";
    for (const auto& s : scan.segments) {
        os << to_string(s.t_lo) << ',' << to_string(s.t_hi) << ',' << to_string(s.delta_voi.slope)
           << ',' << to_string(s.delta_voi.intercept) << ',' << to_string(s.complement_force.slope)
           << ',' << to_string(s.complement_force.intercept) << ','
           << to_string(s.substitute_force.slope) << ',' << to_string(s.substitute_force.intercept)
           << ',' << to_string(s.kind_at_hi) << '\n';
    }
    detail::check_sink(os);
}

} // namespace voilab

/**
 * @file cli.hpp
 * @brief Commands behind the voi-lab executable.
 *
 * Each command writes its report to `out`, diagnostics to `err`, and
 * returns the process exit code: 0 success, 1 assertion or theorem
 * violation, 2 usage or validation error.
 */
#pragma once

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "voilab/fuzz.hpp"
#include "voilab/instance_io.hpp"
#include "voilab/interaction.hpp"
#include "voilab/localization.hpp"
#include "voilab/reference_instance.hpp"
#include "voilab/scanner.hpp"

namespace voilab::cli {

enum ExitCode : int { ok = 0, violation = 1, usage = 2 };

/// Worker count: VOI_LAB_THREADS if set to a positive integer, else the
/// hardware concurrency.
inline unsigned thread_budget() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("VOI_LAB_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return hw;
}

inline ProblemInstance load_instance(const std::string& path) {
    if (path.empty()) return reference::instance();
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open instance file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

inline std::string signed_string(const Rational& r) {
    return sgn(r) > 0 ? "+" + to_string(r) : to_string(r);
}

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson belief_json(const Belief& b) {
    auto a = ojson::array();
    for (const auto& p : b.probs()) a.push_back(to_string(p));
    return a;
}

inline ojson actions_json(const ActionSet& set, const DecisionProblem& prob) {
    auto a = ojson::array();
    for (std::size_t x : set) a.push_back(prob.action_names()[x]);
    return a;
}

inline std::string actions_text(const ActionSet& set, const DecisionProblem& prob) {
    std::string out = "{";
    for (std::size_t k = 0; k < set.size(); ++k) out += (k ? "," : "") + prob.action_names()[set[k]];
    return out + "}";
}

inline void print_table(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (width.size() <= c) width.push_back(0);
            width[c] = std::max(width[c], r[c].size());
        }
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t c = 0; c < r.size(); ++c) {
            line += r[c];
            if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
        }
        os << line << '\n';
    }
}

} // namespace detail

inline nlohmann::ordered_json report_json(const DecisionProblem& prob, const Channel& ch_i,
                                          const Channel& ch_j, const InteractionReport& r,
                                          const LocalizationVerdict& v) {
    using detail::ojson;
    ojson doc;
    doc["channel_i"] = ch_i.name();
    doc["channel_j"] = ch_j.name();
    doc["belief"] = detail::belief_json(r.belief);
    doc["value"] = to_string(r.value);
    doc["argmax_actions"] = detail::actions_json(r.argmax_actions, prob);
    doc["prior_on_kink"] = r.prior_on_kink;
    doc["voi_i"] = to_string(r.voi_i);
    doc["voi_j"] = to_string(r.voi_j);
    doc["voi_j_after_i"] = to_string(r.voi_j_after_i);
    doc["complement_force"] = to_string(r.complement_force);
    doc["substitute_force"] = to_string(r.substitute_force);
    doc["delta_voi"] = to_string(r.delta_voi);
    auto outcomes = ojson::array();
    for (const auto& d : r.per_outcome) {
        ojson o;
        o["outcome"] = d.outcome;
        o["marginal"] = to_string(d.marginal);
        o["posterior"] = detail::belief_json(d.posterior);
        o["value"] = to_string(d.value);
        o["argmax_actions"] = detail::actions_json(d.argmax_actions, prob);
        o["voi_j"] = to_string(d.voi_j);
        o["regret_of_prior_action"] = to_string(d.regret_of_prior_action);
        outcomes.push_back(std::move(o));
    }
    doc["per_outcome"] = std::move(outcomes);
    ojson loc;
    loc["regime"] = std::string(to_string(v.regime));
    loc["stays_interior"] = v.stays_interior;
    loc["theorem2_applicable"] = v.theorem2_applicable;
    loc["crossing_outcomes"] = v.crossing_outcomes;
    loc["theorem3_witness"] = v.theorem3_witness ? ojson(*v.theorem3_witness) : ojson(nullptr);
    doc["localization"] = std::move(loc);
    return doc;
}

// ---------------------------------------------------------------------------
// demo

inline int cmd_demo(bool json, std::ostream& out, std::ostream& err) {
    const ProblemInstance inst = reference::instance();
    const auto& prob = inst.problem();
    const Channel& ch_i = inst.channel("i");
    const Channel& ch_j = inst.channel("j");

    std::vector<std::string> mismatches;
    const auto expect = [&](std::string_view col, std::string_view what, const Rational& got,
                            std::string_view want) {
        if (got != parse_rational(want))
            mismatches.push_back(std::string(col) + " " + std::string(what) + ": got " +
                                 to_string(got) + ", expected " + std::string(want));
    };

    std::vector<std::vector<std::string>> table{
        {""}, {"VoI(i)"}, {"VoI(j)"}, {"VoI(j|i)"}, {"E[D_g]"}, {"E[D_h]"}, {"dVoI"},
        {"regime"}, {"posteriors stay in region"}, {"crossing outcomes"}};
    auto cols = detail::ojson::array();

    for (const auto& ref : reference::reference_table) {
        const Belief b = parse_belief(ref.belief, prob.num_states());
        const InteractionReport r = delta_voi(prob, ch_i, ch_j, b);
        const LocalizationVerdict v = classify(prob, ch_i, ch_j, b);

        expect(ref.label, "VoI(i)", r.voi_i, ref.voi_i);
        expect(ref.label, "VoI(j)", r.voi_j, ref.voi_j);
        expect(ref.label, "VoI(j|i)", r.voi_j_after_i, ref.voi_j_after_i);
        expect(ref.label, "dVoI", r.delta_voi, ref.delta_voi);
        if (!ref.on_kink) {
            expect(ref.label, "E[D_g]", r.complement_force, ref.complement_force);
            expect(ref.label, "E[D_h]", r.substitute_force, ref.substitute_force);
        }
        if (r.prior_on_kink != ref.on_kink)
            mismatches.push_back(std::string(ref.label) + " kink flag differs from reference");

        const std::string comp = r.prior_on_kink ? "---" : to_string(r.complement_force);
        const std::string sub = r.prior_on_kink ? "---" : to_string(r.substitute_force);
        std::string crossing;
        for (auto o : v.crossing_outcomes) crossing += (crossing.empty() ? "o=" : ",o=") + std::to_string(o);
        table[0].push_back(std::string(ref.label) + " = " + to_string(b));
        table[1].push_back(to_string(r.voi_i));
        table[2].push_back(to_string(r.voi_j));
        table[3].push_back(to_string(r.voi_j_after_i));
        table[4].push_back(comp);
        table[5].push_back(sub);
        table[6].push_back(signed_string(r.delta_voi));
        table[7].push_back(std::string(to_string(v.regime)));
        table[8].push_back(v.stays_interior ? "yes" : "no");
        table[9].push_back(crossing.empty() ? "none" : crossing);

        detail::ojson c;
        c["label"] = ref.label;
        c["belief"] = detail::belief_json(b);
        c["voi_i"] = to_string(r.voi_i);
        c["voi_j"] = to_string(r.voi_j);
        c["voi_j_after_i"] = to_string(r.voi_j_after_i);
        c["complement_force"] = comp;
        c["substitute_force"] = sub;
        c["delta_voi"] = to_string(r.delta_voi);
        c["on_kink"] = r.prior_on_kink;
        c["jensen_gaps"] = {{"complement", to_string(r.complement_force)},
                            {"substitute", to_string(r.substitute_force)}};
        c["regime"] = std::string(to_string(v.regime));
        c["stays_interior"] = v.stays_interior;
        c["crossing_outcomes"] = v.crossing_outcomes;
        cols.push_back(std::move(c));
    }

    if (json) {
        detail::ojson doc;
        doc["columns"] = std::move(cols);
        doc["matches_reference"] = mismatches.empty();
        out << doc.dump(2) << '\n';
    } else {
        out << "Interaction of channel j after channel i, built-in 3-state example\n\n";
        detail::print_table(out, table);
        out << "\n--- : forces not separately defined at a kink of V "
               "(Jensen gaps available via --json)\n";
    }
    for (const auto& m : mismatches) err << "demo: mismatch: " << m << '\n';
    return mismatches.empty() ? ok : violation;
}

// ---------------------------------------------------------------------------
// eval

inline int cmd_eval(const std::string& path, const std::string& belief_text, const std::string& i_name,
                    const std::string& j_name, bool json, std::ostream& out) {
    const ProblemInstance inst = load_instance(path);
    const auto& prob = inst.problem();
    const Channel& ch_i = inst.channel(i_name);
    const Channel& ch_j = inst.channel(j_name);
    const Belief b = parse_belief(belief_text, prob.num_states());

    const InteractionReport r = delta_voi(prob, ch_i, ch_j, b);
    const LocalizationVerdict v = classify(prob, ch_i, ch_j, b);

    if (json) {
        out << report_json(prob, ch_i, ch_j, r, v).dump(2) << '\n';
        return ok;
    }
    out << "belief      " << to_string(b) << '\n'
        << "V(b)        " << to_string(r.value) << "  argmax " << detail::actions_text(r.argmax_actions, prob)
        << (r.prior_on_kink ? "  (kink)" : "") << "\n\n";
    detail::print_table(out, {
        {"VoI(" + ch_i.name() + ")", to_string(r.voi_i)},
        {"VoI(" + ch_j.name() + ")", to_string(r.voi_j)},
        {"VoI(" + ch_j.name() + "|" + ch_i.name() + ")", to_string(r.voi_j_after_i)},
        {"complement force E[D_g]", to_string(r.complement_force)},
        {"substitute force E[D_h]", to_string(r.substitute_force)},
        {"dVoI", signed_string(r.delta_voi)},
    });
    out << "\noutcomes of " << ch_i.name() << ":\n";
    std::vector<std::vector<std::string>> rows{
        {"o", "P(o|b)", "posterior", "V", "argmax", "VoI(" + ch_j.name() + ")", "regret"}};
    for (const auto& d : r.per_outcome)
        rows.push_back({std::to_string(d.outcome), to_string(d.marginal), to_string(d.posterior),
                        to_string(d.value), detail::actions_text(d.argmax_actions, prob),
                        to_string(d.voi_j), to_string(d.regret_of_prior_action)});
    detail::print_table(out, rows);
    std::string crossing;
    for (auto o : v.crossing_outcomes) crossing += (crossing.empty() ? "" : ",") + std::to_string(o);
    out << "\nregime            " << to_string(v.regime) << '\n'
        << "stays interior    " << (v.stays_interior ? "yes" : "no") << '\n'
        << "crossing outcomes " << (crossing.empty() ? "none" : crossing) << '\n';
    if (v.theorem3_witness) out << "crossing witness  o=" << *v.theorem3_witness << '\n';
    return ok;
}

// ---------------------------------------------------------------------------
// scan

struct ScanOptions {
    std::string instance_path; // empty: built-in example
    std::string i_name = "i";
    std::string j_name = "j";
    std::string out_path;      // empty: stdout
    std::size_t n = 120;
    std::string origin = std::string(reference::ray_origin);
    std::string direction = std::string(reference::ray_direction);
    std::string t_max = std::string(reference::ray_t_max);
};

inline int write_output(const ScanOptions& opt, std::ostream& out,
                        const std::function<void(std::ostream&)>& emit) {
    if (opt.out_path.empty()) {
        emit(out);
        return ok;
    }
    std::ofstream file(opt.out_path, std::ios::binary);
    if (!file) throw Error("cannot open output file '" + opt.out_path + "'");
    emit(file);
    return ok;
}

inline int cmd_scan_grid(const ScanOptions& opt, std::ostream& out, std::ostream& err) {
    const ProblemInstance inst = load_instance(opt.instance_path);
    if (opt.n < 1) throw ValidationError("scan grid: --n must be >= 1");
    const GridScan scan = grid_scan(inst.problem(), inst.channel(opt.i_name), inst.channel(opt.j_name),
                                    opt.n, thread_budget());
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& r : scan.rows) ++counts[static_cast<int>(r.regime)];
    err << "grid: N=" << opt.n << " rows=" << scan.rows.size() << " complement=" << counts[0]
        << " substitute=" << counts[1] << " neutral=" << counts[2] << '\n';
    return write_output(opt, out, [&](std::ostream& os) { emit_csv(scan, os); });
}

inline std::vector<Rational> parse_vector(const std::string& text) {
    std::vector<Rational> v;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        v.push_back(parse_rational(std::string_view(text).substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return v;
}

inline int cmd_scan_ray(const ScanOptions& opt, std::ostream& out, std::ostream& err) {
    const ProblemInstance inst = load_instance(opt.instance_path);
    const auto& prob = inst.problem();
    const Belief origin = parse_belief(opt.origin, prob.num_states());
    const RayScan scan = ray_scan(prob, inst.channel(opt.i_name), inst.channel(opt.j_name), origin,
                                  parse_vector(opt.direction), parse_rational(opt.t_max));
    const auto list = [](const std::vector<Rational>& ts) {
        std::string s;
        for (const auto& t : ts) s += (s.empty() ? "" : ", ") + to_string(t) + " (~" + to_decimal(t, 6) + ")";
        return s.empty() ? std::string("none") : s;
    };
    err << "ray: segments=" << scan.segments.size() << " breakpoints=" << scan.breakpoints.size() << '\n'
        << "ray: decision boundary t = " << list(scan.decision_boundary_ts) << '\n'
        << "ray: interaction crossing t = " << list(scan.interaction_crossings) << '\n';
    return write_output(opt, out, [&](std::ostream& os) { emit_csv(scan, os); });
}

// ---------------------------------------------------------------------------
// verify

inline nlohmann::ordered_json verify_json(const VerifyReport& rep) {
    using detail::ojson;
    ojson doc;
    doc["seed"] = rep.config.seed;
    doc["cases_run"] = rep.cases_run;
    doc["bounds"] = {{"max_states", rep.config.max_states},
                     {"max_actions", rep.config.max_actions},
                     {"max_outcomes", rep.config.max_outcomes},
                     {"denom_bound", rep.config.denom_bound}};
    doc["checks"] = std::vector<std::string>(fuzz_checks.begin(), fuzz_checks.end());
    doc["violations"] = rep.violations;
    doc["gap_witnesses"] = rep.gap_witnesses;
    doc["interior_cases"] = rep.interior_cases;
    doc["kink_priors"] = rep.kink_priors;
    ojson hist;
    for (const char* k : {"complement", "substitute", "neutral"}) hist[k] = rep.regime_histogram.at(k);
    doc["regime_histogram"] = std::move(hist);
    auto details = ojson::array();
    for (const auto& v : rep.details)
        details.push_back({{"case", v.case_index}, {"check", v.check},
                           {"reproducer", ojson::parse(v.reproducer)}});
    doc["failures"] = std::move(details);
    return doc;
}

/// The report on `out` is a deterministic function of the config; timing
/// goes to `err`.
inline int cmd_verify(const FuzzConfig& cfg, bool json, std::ostream& out, std::ostream& err) {
    const VerifyReport rep = run_verify(cfg, thread_budget());
    if (json) {
        out << verify_json(rep).dump(2) << '\n';
    } else {
        out << "seed           " << rep.config.seed << '\n'
            << "cases run      " << rep.cases_run << '\n'
            << "checks         " << fuzz_checks.size() << " per case\n"
            << "violations     " << rep.violations << '\n'
            << "gap witnesses  " << rep.gap_witnesses << " (crossing outcome and complement)\n"
            << "interior cases " << rep.interior_cases << '\n'
            << "kink priors    " << rep.kink_priors << '\n'
            << "regimes        complement=" << rep.regime_histogram.at("complement")
            << " substitute=" << rep.regime_histogram.at("substitute")
            << " neutral=" << rep.regime_histogram.at("neutral") << '\n';
        for (const auto& v : rep.details)
            out << "\nVIOLATION case " << v.case_index << " check " << v.check << "\nreproducer:\n"
                << v.reproducer << '\n';
    }
    err << "verify: elapsed " << std::fixed << std::setprecision(2) << rep.elapsed_seconds << " s\n";
    return rep.violations == 0 ? ok : violation;
}

} // namespace voilab::cli

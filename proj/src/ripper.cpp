// ripper.cpp
//
// RIPPER rule induction. Classes are processed in ascending training
// frequency; for each class an IREP*-style loop grows rules by FOIL gain on
// a grow split, prunes them by (p - n)/(p + n) on a prune split, and stops
// on a description-length criterion (new total DL more than 64 bits above
// the best seen, or prune-set error above 50%). Optimization passes then pit
// a grown-from-scratch replacement and a grown revision against each rule,
// judged by total description length, followed by a residual mop-up and a
// deletion sweep. The most frequent class becomes the default.

#include <algorithm>
#include <cmath>
#include <limits>

#include "mibwarden/errors.hpp"
#include "mibwarden/learners.hpp"
#include "mibwarden/rng.hpp"

#include "learner_util.hpp"

namespace mibwarden {

namespace {

using detail::index_list;

constexpr double kDlSlackBits = 64.0;

struct stage_data {
    const dataset *ds = nullptr;
    traffic_class pos_class = traffic_class::normal;
    double n_possible_conditions = 1.0; // candidate-condition count for theory DL
};

bool covers(const dataset &ds, const rule &ru, std::uint32_t row) {
    static const std::vector<bin_cuts> no_cuts;
    return ru.matches(ds.records()[row], no_cuts);
}

bool is_positive(const stage_data &st, std::uint32_t row) {
    return *st.ds->records()[row].label == st.pos_class;
}

// ---- description length ------------------------------------------------

double subset_dl(double t, double k, double p) {
    double bits = 0.0;
    if (k > 0.0) {
        const double pp = std::clamp(p, 1e-12, 1.0);
        bits -= k * std::log2(pp);
    }
    if (t - k > 0.0) {
        const double q = std::clamp(1.0 - p, 1e-12, 1.0);
        bits -= (t - k) * std::log2(q);
    }
    return bits;
}

double theory_dl(const stage_data &st, std::size_t condition_count) {
    if (condition_count == 0)
        return 0.0;
    const double k = static_cast<double>(condition_count);
    const double total = std::max(st.n_possible_conditions, k);
    double bits = std::log2(k);
    if (condition_count > 1 && bits > 0.0)
        bits += 2.0 * std::log2(bits);
    bits += subset_dl(total, k, k / total);
    return 0.5 * bits; // redundancy factor
}

// exceptions: errors among covered and uncovered instances, expected false
// positives weighted at one half of all errors
double data_dl(double cover, double uncover, double fp, double fn) {
    double bits = std::log2(cover + uncover + 1.0);
    const double exp_err = 0.5 * (fp + fn);
    if (cover > uncover) {
        if (cover > 0.0)
            bits += subset_dl(cover, fp, exp_err / cover);
        if (uncover > 0.0)
            bits += subset_dl(uncover, fn, fn / uncover);
    } else {
        if (cover > 0.0)
            bits += subset_dl(cover, fp, fp / cover);
        if (uncover > 0.0)
            bits += subset_dl(uncover, fn, exp_err / uncover);
    }
    return bits;
}

// total DL of a ruleset against the full stage data
double total_dl(const stage_data &st, const std::vector<rule> &rules, const index_list &pos,
                const index_list &neg) {
    double cover = 0.0, uncover = 0.0, fp = 0.0, fn = 0.0;
    auto tally = [&](const index_list &rows, bool positive) {
        for (const auto row : rows) {
            bool matched = false;
            for (const auto &ru : rules) {
                if (covers(*st.ds, ru, row)) {
                    matched = true;
                    break;
                }
            }
            if (matched) {
                cover += 1.0;
                fp += positive ? 0.0 : 1.0;
            } else {
                uncover += 1.0;
                fn += positive ? 1.0 : 0.0;
            }
        }
    };
    tally(pos, true);
    tally(neg, false);

    double bits = data_dl(cover, uncover, fp, fn);
    for (const auto &ru : rules)
        bits += theory_dl(st, ru.conditions.size());
    return bits;
}

// ---- growing -------------------------------------------------------------

struct candidate {
    condition cond;
    double gain = 0.0;
    bool found = false;
};

// best FOIL-gain condition over the currently covered grow rows; ties keep
// the first candidate in (attribute, threshold, <= before >) order
candidate best_condition(const stage_data &st, const index_list &pos, const index_list &neg) {
    candidate best;
    const double p0 = static_cast<double>(pos.size());
    const double n0 = static_cast<double>(neg.size());
    if (p0 == 0.0)
        return best;
    const double prior = std::log2(p0 / (p0 + n0));

    const std::size_t n_attrs = st.ds->get_schema().size();
    std::vector<std::pair<double, bool>> column; // (value, is_positive)
    for (std::size_t a = 0; a < n_attrs; ++a) {
        column.clear();
        for (const auto row : pos)
            column.emplace_back(st.ds->records()[row].values[a], true);
        for (const auto row : neg)
            column.emplace_back(st.ds->records()[row].values[a], false);
        std::sort(column.begin(), column.end());

        double p_leq = 0.0, n_leq = 0.0;
        for (std::size_t i = 0; i < column.size(); ++i) {
            (column[i].second ? p_leq : n_leq) += 1.0;
            if (i + 1 >= column.size() || column[i].first == column[i + 1].first)
                continue;
            const double threshold = (column[i].first + column[i + 1].first) / 2.0;
            const double sides[2][2] = {{p_leq, n_leq}, {p0 - p_leq, n0 - n_leq}};
            for (int side = 0; side < 2; ++side) {
                const double p = sides[side][0], n = sides[side][1];
                if (p <= 0.0)
                    continue;
                const double gain = p * (std::log2(p / (p + n)) - prior);
                if (!best.found || gain > best.gain) {
                    best.found = true;
                    best.gain = gain;
                    best.cond.attribute_index = a;
                    best.cond.test = side == 0 ? condition::kind::leq : condition::kind::gt;
                    best.cond.threshold = threshold;
                }
            }
        }
    }
    return best;
}

void filter_covered(const stage_data &st, const condition &cond, index_list &rows) {
    static const std::vector<bin_cuts> no_cuts;
    index_list kept;
    kept.reserve(rows.size());
    for (const auto row : rows) {
        if (cond.matches(st.ds->records()[row], no_cuts))
            kept.push_back(row);
    }
    rows.swap(kept);
}

// grow conditions until no negatives remain or no condition helps
rule grow_rule(const stage_data &st, index_list grow_pos, index_list grow_neg,
               std::vector<condition> from = {}) {
    rule ru;
    ru.consequent = st.pos_class;
    ru.conditions = std::move(from);
    for (const auto &cond : ru.conditions) {
        filter_covered(st, cond, grow_pos);
        filter_covered(st, cond, grow_neg);
    }
    while (!grow_neg.empty() && !grow_pos.empty()) {
        const candidate c = best_condition(st, grow_pos, grow_neg);
        if (!c.found || c.gain <= 0.0)
            break;
        ru.conditions.push_back(c.cond);
        filter_covered(st, c.cond, grow_pos);
        filter_covered(st, c.cond, grow_neg);
    }
    return ru;
}

// ---- pruning -------------------------------------------------------------

rule truncated(const rule &ru, std::size_t keep) {
    rule out;
    out.consequent = ru.consequent;
    out.conditions.assign(ru.conditions.begin(), ru.conditions.begin() + keep);
    return out;
}

std::pair<double, double> prune_coverage(const stage_data &st, const rule &ru,
                                         const index_list &pos, const index_list &neg) {
    double p = 0.0, n = 0.0;
    for (const auto row : pos)
        p += covers(*st.ds, ru, row) ? 1.0 : 0.0;
    for (const auto row : neg)
        n += covers(*st.ds, ru, row) ? 1.0 : 0.0;
    return {p, n};
}

// keep the prefix maximizing (p - n)/(p + n) on the prune split; never prune
// to an empty rule, and ties keep the longer prefix
rule prune_rule(const stage_data &st, const rule &grown, const index_list &prune_pos,
                const index_list &prune_neg) {
    if (grown.conditions.size() <= 1 || (prune_pos.empty() && prune_neg.empty()))
        return grown;
    double best_worth = -std::numeric_limits<double>::infinity();
    std::size_t best_keep = grown.conditions.size();
    for (std::size_t keep = grown.conditions.size(); keep >= 1; --keep) {
        const rule candidate_rule = truncated(grown, keep);
        const auto [p, n] = prune_coverage(st, candidate_rule, prune_pos, prune_neg);
        const double worth = p + n > 0.0 ? (p - n) / (p + n) : -1.0;
        if (worth > best_worth) { // scanning long-to-short keeps the longest on ties
            best_worth = worth;
            best_keep = keep;
        }
    }
    return truncated(grown, best_keep);
}

// prune a variant rule to maximize whole-ruleset accuracy on the prune split
rule prune_for_ruleset(const stage_data &st, std::vector<rule> rules, std::size_t slot,
                       const rule &grown, const index_list &prune_pos,
                       const index_list &prune_neg) {
    auto ruleset_accuracy = [&](const rule &candidate_rule) {
        rules[slot] = candidate_rule;
        double correct = 0.0;
        for (const auto row : prune_pos) {
            bool matched = false;
            for (const auto &ru : rules)
                matched = matched || covers(*st.ds, ru, row);
            correct += matched ? 1.0 : 0.0;
        }
        for (const auto row : prune_neg) {
            bool matched = false;
            for (const auto &ru : rules)
                matched = matched || covers(*st.ds, ru, row);
            correct += matched ? 0.0 : 1.0;
        }
        return correct;
    };

    if (grown.conditions.size() <= 1 || (prune_pos.empty() && prune_neg.empty()))
        return grown;
    double best_correct = -1.0;
    std::size_t best_keep = grown.conditions.size();
    for (std::size_t keep = grown.conditions.size(); keep >= 1; --keep) {
        const double correct = ruleset_accuracy(truncated(grown, keep));
        if (correct > best_correct) {
            best_correct = correct;
            best_keep = keep;
        }
    }
    return truncated(grown, best_keep);
}

// ---- stage driver ----------------------------------------------------------

struct grow_prune_split {
    index_list grow_pos, grow_neg, prune_pos, prune_neg;
};

grow_prune_split make_split(index_list pos, index_list neg, std::size_t folds, rng &gen) {
    grow_prune_split out;
    gen.shuffle(pos);
    gen.shuffle(neg);
    const std::size_t pos_prune = pos.size() / folds;
    const std::size_t neg_prune = neg.size() / folds;
    out.grow_pos.assign(pos.begin(), pos.end() - pos_prune);
    out.prune_pos.assign(pos.end() - pos_prune, pos.end());
    out.grow_neg.assign(neg.begin(), neg.end() - neg_prune);
    out.prune_neg.assign(neg.end() - neg_prune, neg.end());
    return out;
}

double count_possible_conditions(const dataset &ds, const index_list &rows) {
    double total = 0.0;
    std::vector<double> column;
    for (std::size_t a = 0; a < ds.get_schema().size(); ++a) {
        column.clear();
        for (const auto row : rows)
            column.push_back(ds.records()[row].values[a]);
        std::sort(column.begin(), column.end());
        const std::size_t distinct =
            static_cast<std::size_t>(std::unique(column.begin(), column.end()) - column.begin());
        if (distinct > 1)
            total += 2.0 * static_cast<double>(distinct - 1);
    }
    return std::max(total, 1.0);
}

// IREP* loop: appends accepted rules for the stage's positive class
void grow_ruleset(const stage_data &st, std::vector<rule> &rules, index_list &pos,
                  index_list &neg, const index_list &pos0, const index_list &neg0,
                  const jrip_params &params, rng &gen) {
    double min_dl = total_dl(st, rules, pos0, neg0);
    while (!pos.empty()) {
        const grow_prune_split split = make_split(pos, neg, params.folds, gen);
        const rule grown = grow_rule(st, split.grow_pos, split.grow_neg);
        if (grown.conditions.empty())
            break;
        const rule pruned = prune_rule(st, grown, split.prune_pos, split.prune_neg);

        // prune-set error above 50% rejects the rule and ends the stage
        const auto [pp, pn] = prune_coverage(st, pruned, split.prune_pos, split.prune_neg);
        if (pp + pn > 0.0 && pn / (pp + pn) > 0.5)
            break;

        // acceptance requires min_covered positives among what remains
        std::size_t covered_pos = 0;
        for (const auto row : pos)
            covered_pos += covers(*st.ds, pruned, row) ? 1 : 0;
        if (covered_pos < params.min_covered)
            break;

        rules.push_back(pruned);
        const double dl = total_dl(st, rules, pos0, neg0);
        if (dl > min_dl + kDlSlackBits) {
            rules.pop_back();
            break;
        }
        min_dl = std::min(min_dl, dl);

        index_list next_pos, next_neg;
        for (const auto row : pos)
            if (!covers(*st.ds, pruned, row))
                next_pos.push_back(row);
        for (const auto row : neg)
            if (!covers(*st.ds, pruned, row))
                next_neg.push_back(row);
        pos.swap(next_pos);
        neg.swap(next_neg);
    }
}

index_list uncovered_by(const stage_data &st, const std::vector<rule> &rules,
                        const index_list &rows) {
    index_list out;
    for (const auto row : rows) {
        bool matched = false;
        for (const auto &ru : rules)
            matched = matched || covers(*st.ds, ru, row);
        if (!matched)
            out.push_back(row);
    }
    return out;
}

std::vector<rule> learn_class_rules(const dataset &ds, traffic_class pos_class,
                                    const index_list &pos0, const index_list &neg0,
                                    const jrip_params &params, rng &gen) {
    stage_data st;
    st.ds = &ds;
    st.pos_class = pos_class;

    index_list stage_rows = pos0;
    stage_rows.insert(stage_rows.end(), neg0.begin(), neg0.end());
    st.n_possible_conditions = count_possible_conditions(ds, stage_rows);

    std::vector<rule> rules;
    index_list pos = pos0, neg = neg0;
    grow_ruleset(st, rules, pos, neg, pos0, neg0, params, gen);

    for (std::size_t pass = 0; pass < params.optimizations; ++pass) {
        for (std::size_t i = 0; i < rules.size(); ++i) {
            const grow_prune_split split = make_split(pos0, neg0, params.folds, gen);

            // residual rows rule i is responsible for: not covered by others
            std::vector<rule> others = rules;
            others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
            const index_list res_gp = uncovered_by(st, others, split.grow_pos);
            const index_list res_gn = uncovered_by(st, others, split.grow_neg);

            const double original_dl = total_dl(st, rules, pos0, neg0);

            const rule replacement = prune_for_ruleset(
                st, rules, i, grow_rule(st, res_gp, res_gn), split.prune_pos, split.prune_neg);
            const rule revision =
                prune_for_ruleset(st, rules, i, grow_rule(st, res_gp, res_gn, rules[i].conditions),
                                  split.prune_pos, split.prune_neg);

            std::vector<rule> with_replacement = rules;
            with_replacement[i] = replacement;
            std::vector<rule> with_revision = rules;
            with_revision[i] = revision;

            // original wins ties, then replacement
            double best = original_dl;
            const double replacement_dl =
                replacement.conditions.empty() ? std::numeric_limits<double>::infinity()
                                               : total_dl(st, with_replacement, pos0, neg0);
            const double revision_dl = revision.conditions.empty()
                                           ? std::numeric_limits<double>::infinity()
                                           : total_dl(st, with_revision, pos0, neg0);
            if (replacement_dl < best) {
                best = replacement_dl;
                rules[i] = replacement;
            }
            if (revision_dl < best)
                rules[i] = revision;
        }

        // mop up residual positives with fresh IREP* rounds
        index_list res_pos = uncovered_by(st, rules, pos0);
        index_list res_neg = uncovered_by(st, rules, neg0);
        if (!res_pos.empty())
            grow_ruleset(st, rules, res_pos, res_neg, pos0, neg0, params, gen);
    }

    return rules;
}

} // namespace

rule_model train_jrip(const dataset &train, const jrip_params &params) {
    if (train.size() == 0)
        throw config_error("train_jrip: empty training set");
    if (params.folds < 2)
        throw config_error("train_jrip: folds must be >= 2");
    if (params.min_covered < 1)
        throw config_error("train_jrip: min_covered must be >= 1");
    if (!train.fully_labeled())
        throw data_format_error("train_jrip: training set has unlabeled records");

    const auto histogram = class_histogram(train);
    std::vector<std::size_t> present;
    for (std::size_t c = 0; c < traffic_class_count; ++c) {
        if (histogram[c] > 0)
            present.push_back(c);
    }
    if (present.size() < 2)
        throw config_error("train_jrip: need at least 2 classes, got " +
                           std::to_string(present.size()));

    // ascending frequency; canonical order breaks ties
    std::stable_sort(present.begin(), present.end(), [&histogram](std::size_t a, std::size_t b) {
        return histogram[a] < histogram[b];
    });

    rule_model model;
    model.learner = learner_id::jrip;
    model.schema_fingerprint = train.get_schema().fingerprint();
    model.params["folds"] = std::to_string(params.folds);
    model.params["min_covered"] = std::to_string(params.min_covered);
    model.params["optimizations"] = std::to_string(params.optimizations);
    model.params["seed"] = std::to_string(params.seed);
    model.default_class = all_traffic_classes()[present.back()];

    rng gen(params.seed);
    index_list remaining = detail::all_indices(train);
    for (std::size_t k = 0; k + 1 < present.size(); ++k) {
        const traffic_class pos_class = all_traffic_classes()[present[k]];
        index_list pos, neg;
        for (const auto row : remaining)
            (*train.records()[row].label == pos_class ? pos : neg).push_back(row);
        if (pos.empty())
            continue;

        const std::vector<rule> rules =
            learn_class_rules(train, pos_class, pos, neg, params, gen);
        for (const auto &ru : rules)
            model.ordered_rules.push_back(ru);

        index_list carried;
        for (const auto row : remaining) {
            bool matched = false;
            for (const auto &ru : rules)
                matched = matched || covers(train, ru, row);
            if (!matched)
                carried.push_back(row);
        }
        remaining.swap(carried);
    }

    // replay guard: every rule must still cover min_covered of its class in
    // sequence; rules that lost their support to optimization edits go
    {
        index_list rows = detail::all_indices(train);
        std::vector<rule> kept;
        for (const auto &ru : model.ordered_rules) {
            std::size_t covered_pos = 0;
            for (const auto row : rows) {
                if (covers(train, ru, row) && *train.records()[row].label == ru.consequent)
                    ++covered_pos;
            }
            if (covered_pos < params.min_covered)
                continue;
            kept.push_back(ru);
            index_list next;
            for (const auto row : rows)
                if (!covers(train, ru, row))
                    next.push_back(row);
            rows.swap(next);
        }
        model.ordered_rules = std::move(kept);
    }

    return model;
}

} // namespace mibwarden

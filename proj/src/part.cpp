// part.cpp
//
// PART: separate-and-conquer rule learning without global optimization. Each
// round builds a partial C4.5 tree over the remaining records — splitting on
// maximum gain ratio, expanding subsets in ascending-entropy order, applying
// pessimistic-error subtree replacement while backtracking, and stopping as
// soon as a subtree refuses to collapse — then converts the expanded leaf
// with the largest coverage into a rule and discards the tree.

#include <algorithm>
#include <cmath>
#include <memory>

#include "mibwarden/csv.hpp"
#include "mibwarden/errors.hpp"
#include "mibwarden/learners.hpp"

#include "learner_util.hpp"

namespace mibwarden {

namespace {

using detail::index_list;

// inverse standard normal CDF (Acklam's rational approximation)
double normal_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1.0 - plow;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > phigh) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5, r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// C4.5's pessimistic additional-error count for a leaf with n records and e
// observed errors, at confidence cf
double added_errors(double n, double e, double cf) {
    if (e < 1.0) {
        const double base = n * (1.0 - std::pow(cf, 1.0 / n));
        if (e == 0.0)
            return base;
        return base + e * (added_errors(n, 1.0, cf) - base);
    }
    if (e + 0.5 >= n)
        return std::max(n - e, 0.0);
    const double z = normal_quantile(1.0 - cf);
    const double f = (e + 0.5) / n;
    const double r =
        (f + z * z / (2.0 * n) + z * std::sqrt(f / n - f * f / n + z * z / (4.0 * n * n))) /
        (1.0 + z * z / n);
    return r * n - e;
}

struct pnode {
    enum class kind : std::uint8_t { leaf, internal, frontier };
    kind k = kind::frontier;

    // leaf
    traffic_class cls = traffic_class::normal;
    std::size_t coverage = 0;
    double pessimistic_errors = 0.0; // observed + added, summed over leaves

    // internal
    std::size_t attr = 0;
    double threshold = 0.0;
    std::unique_ptr<pnode> lo, hi; // lo: value <= threshold
};

struct split_choice {
    bool found = false;
    std::size_t attr = 0;
    double threshold = 0.0;
};

class tree_builder {
public:
    tree_builder(const dataset &ds, const part_params &params) : ds_(ds), params_(params) {}

    std::unique_ptr<pnode> expand(const index_list &rows) {
        const auto counts = detail::count_classes(ds_, rows);
        const traffic_class majority = detail::majority_class(counts);
        const std::size_t errors = rows.size() - counts[class_index(majority)];

        auto leaf = [&]() {
            auto node = std::make_unique<pnode>();
            node->k = pnode::kind::leaf;
            node->cls = majority;
            node->coverage = rows.size();
            node->pessimistic_errors =
                static_cast<double>(errors) +
                added_errors(static_cast<double>(rows.size()), static_cast<double>(errors),
                             params_.confidence);
            return node;
        };

        if (errors == 0 || rows.size() < 2 * params_.min_leaf)
            return leaf();
        const split_choice split = best_split(rows, counts);
        if (!split.found)
            return leaf();

        index_list lo_rows, hi_rows;
        for (const auto row : rows)
            (ds_.records()[row].values[split.attr] <= split.threshold ? lo_rows : hi_rows)
                .push_back(row);

        auto node = std::make_unique<pnode>();
        node->k = pnode::kind::internal;
        node->attr = split.attr;
        node->threshold = split.threshold;
        node->lo = std::make_unique<pnode>();
        node->hi = std::make_unique<pnode>();

        // expand the lower-entropy subset first; stop expanding as soon as a
        // subtree comes back unstably internal
        const double lo_entropy = detail::entropy_of(detail::count_classes(ds_, lo_rows), lo_rows.size());
        const double hi_entropy = detail::entropy_of(detail::count_classes(ds_, hi_rows), hi_rows.size());
        const bool lo_first = lo_entropy <= hi_entropy;

        const index_list &first_rows = lo_first ? lo_rows : hi_rows;
        const index_list &second_rows = lo_first ? hi_rows : lo_rows;
        auto &first_child = lo_first ? node->lo : node->hi;
        auto &second_child = lo_first ? node->hi : node->lo;

        first_child = expand(first_rows);
        if (first_child->k != pnode::kind::leaf)
            return node; // frontier sibling stays unexpanded

        second_child = expand(second_rows);
        if (second_child->k != pnode::kind::leaf)
            return node;

        // both children are leaves: consider collapsing this node
        const double leaf_errors =
            static_cast<double>(errors) +
            added_errors(static_cast<double>(rows.size()), static_cast<double>(errors),
                         params_.confidence);
        const double subtree_errors =
            node->lo->pessimistic_errors + node->hi->pessimistic_errors;
        if (leaf_errors <= subtree_errors + 0.1)
            return leaf();
        return node;
    }

private:
    split_choice best_split(const index_list &rows,
                            const std::array<std::size_t, traffic_class_count> &counts) {
        split_choice best;
        double best_ratio = 0.0;
        const double total = static_cast<double>(rows.size());
        const double parent_entropy = detail::entropy_of(counts, rows.size());

        std::vector<std::pair<double, std::uint8_t>> column;
        for (std::size_t a = 0; a < ds_.get_schema().size(); ++a) {
            column.clear();
            for (const auto row : rows)
                column.emplace_back(ds_.records()[row].values[a],
                                    static_cast<std::uint8_t>(class_index(*ds_.records()[row].label)));
            std::sort(column.begin(), column.end());

            std::array<std::size_t, traffic_class_count> left{};
            std::size_t left_n = 0;
            for (std::size_t i = 0; i + 1 < column.size(); ++i) {
                ++left[column[i].second];
                ++left_n;
                if (column[i].first == column[i + 1].first)
                    continue;
                const std::size_t right_n = rows.size() - left_n;
                if (left_n < params_.min_leaf || right_n < params_.min_leaf)
                    continue;

                std::array<std::size_t, traffic_class_count> right{};
                for (std::size_t c = 0; c < traffic_class_count; ++c)
                    right[c] = counts[c] - left[c];
                const double ln = static_cast<double>(left_n);
                const double rn = static_cast<double>(right_n);
                const double gain = parent_entropy -
                                    (ln * detail::entropy_of(left, left_n) +
                                     rn * detail::entropy_of(right, right_n)) /
                                        total;
                if (gain <= 1e-12)
                    continue;
                const double split_info =
                    -(ln / total) * std::log2(ln / total) - (rn / total) * std::log2(rn / total);
                const double ratio = gain / split_info;
                if (!best.found || ratio > best_ratio) {
                    best.found = true;
                    best_ratio = ratio;
                    best.attr = a;
                    best.threshold = (column[i].first + column[i + 1].first) / 2.0;
                }
            }
        }
        return best;
    }

    const dataset &ds_;
    const part_params &params_;
};

struct best_leaf {
    const pnode *leaf = nullptr;
    std::vector<condition> path;
};

// depth-first over expanded nodes (lo branch first); largest coverage wins,
// first visit wins ties
void find_best_leaf(const pnode &node, std::vector<condition> &path, best_leaf &best) {
    if (node.k == pnode::kind::leaf) {
        if (!best.leaf || node.coverage > best.leaf->coverage) {
            best.leaf = &node;
            best.path = path;
        }
        return;
    }
    if (node.k != pnode::kind::internal)
        return;
    path.push_back(condition{node.attr, condition::kind::leq, node.threshold, 0});
    find_best_leaf(*node.lo, path, best);
    path.back() = condition{node.attr, condition::kind::gt, node.threshold, 0};
    find_best_leaf(*node.hi, path, best);
    path.pop_back();
}

} // namespace

rule_model train_part(const dataset &train, const part_params &params) {
    if (train.size() == 0)
        throw config_error("train_part: empty training set");
    if (!train.fully_labeled())
        throw data_format_error("train_part: training set has unlabeled records");
    if (params.min_leaf < 1)
        throw config_error("train_part: min_leaf must be >= 1");
    if (!(params.confidence > 0.0 && params.confidence < 1.0))
        throw config_error("train_part: confidence must lie in (0, 1)");

    rule_model model;
    model.learner = learner_id::part;
    model.schema_fingerprint = train.get_schema().fingerprint();
    model.params["confidence"] = format_double(params.confidence);
    model.params["min_leaf"] = std::to_string(params.min_leaf);
    model.params["seed"] = std::to_string(params.seed);
    model.default_class = detail::majority_class(class_histogram(train));

    tree_builder builder(train, params);
    index_list remaining = detail::all_indices(train);
    static const std::vector<bin_cuts> no_cuts;

    while (!remaining.empty()) {
        const std::unique_ptr<pnode> tree = builder.expand(remaining);
        if (tree->k == pnode::kind::leaf) {
            // the remnant collapsed; it becomes the default prediction
            model.default_class = tree->cls;
            break;
        }

        best_leaf best;
        std::vector<condition> path;
        find_best_leaf(*tree, path, best);

        rule ru;
        ru.conditions = best.path;
        ru.consequent = best.leaf->cls;
        model.ordered_rules.push_back(ru);

        index_list next;
        next.reserve(remaining.size() - best.leaf->coverage);
        for (const auto row : remaining)
            if (!ru.matches(train.records()[row], no_cuts))
                next.push_back(row);
        remaining.swap(next);
    }

    return model;
}

} // namespace mibwarden

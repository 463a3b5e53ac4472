// zeror.cpp

#include "mibwarden/errors.hpp"
#include "mibwarden/learners.hpp"

#include "learner_util.hpp"

namespace mibwarden {

rule_model train_zeror(const dataset &train) {
    if (train.size() == 0)
        throw config_error("train_zeror: empty training set");

    rule_model model;
    model.learner = learner_id::zeror;
    model.schema_fingerprint = train.get_schema().fingerprint();
    model.default_class = detail::majority_class(class_histogram(train));
    return model;
}

} // namespace mibwarden
